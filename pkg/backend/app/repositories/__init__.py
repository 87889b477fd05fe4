"""
Repository layer modules.
Task-set persistence and retrieval.
"""
from .taskset_repository import TaskSetRepository

__all__ = ["TaskSetRepository"]
