"""
Uniprocessor schedulability tests for CoPart.
Every test judges one core (its tasks and its partition grant) and can be
plugged into any allocator.
"""
from typing import Union

from .base import BaseSchedulabilityTest, CoreAssignment, CoreTask, ResponseReport, core_utilization
from .npfp import (
    NPFPTest,
    npfp_is_schedulable_with,
    npfp_response_times,
    npfp_schedulable,
    priority_order,
    strict_ceil_div,
)
from .edf import NPEDFTest, PEDFTest, npedf_is_schedulable, pedf_is_schedulable
from app.models import Policy

# Test registry for easy access
TEST_REGISTRY = {
    Policy.NPFP.value: NPFPTest,
    Policy.NPEDF.value: NPEDFTest,
    Policy.PEDF.value: PEDFTest,
}


def get_test(policy: Union[str, Policy]) -> BaseSchedulabilityTest:
    """Get a schedulability test instance by policy name"""
    key = policy.value if isinstance(policy, Policy) else str(policy).lower()
    if key not in TEST_REGISTRY:
        raise ValueError(f"Unknown policy: {policy}. Available policies: {list(TEST_REGISTRY.keys())}")
    return TEST_REGISTRY[key]()


def list_available_tests() -> dict:
    """List all available schedulability tests with descriptions"""
    return {name: cls().description for name, cls in TEST_REGISTRY.items()}


__all__ = [
    "BaseSchedulabilityTest",
    "CoreAssignment",
    "CoreTask",
    "ResponseReport",
    "core_utilization",
    "NPFPTest",
    "NPEDFTest",
    "PEDFTest",
    "priority_order",
    "strict_ceil_div",
    "npfp_response_times",
    "npfp_schedulable",
    "npfp_is_schedulable_with",
    "npedf_is_schedulable",
    "pedf_is_schedulable",
    "TEST_REGISTRY",
    "get_test",
    "list_available_tests",
]
