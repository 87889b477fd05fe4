"""
Telemetry and result output modules.
Experiment records, cache savings and summaries.
"""
from .records import CACHE_SAVE_FIELDS, RECORD_FIELDS, RecordSink

__all__ = ["RecordSink", "RECORD_FIELDS", "CACHE_SAVE_FIELDS"]
