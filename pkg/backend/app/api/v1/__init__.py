"""
API version 1 routes.
Solve, analysis and verification endpoints.
"""
