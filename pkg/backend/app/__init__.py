"""
CoPart library: schedulability analysis, cache-aware allocation search,
baseline allocators, task-set generation and the experiment harness.
"""
