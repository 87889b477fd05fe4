"""
HTTP routes for the CoPart service (solve, analysis, verify).
"""
