"""
Allocators for CoPart.
The co-optimizing search (COMP, CASE) and the comparison baselines (IA3, PDPA, CaM).
"""
from typing import Union

from .base_allocator import BaseAllocator, minimal_grant
from .proposed_allocator import CaseAllocator, CompAllocator, ProposedAllocator
from .ia3_allocator import IA3Allocator, run_ia3
from .pdpa_allocator import PDPAAllocator, run_pdpa, select_critical_tasks
from .cam_allocator import CaMAllocator, first_fit, proportional_split, run_cam, run_first_fit
from .cache_minimizer import minimize_cache
from app.models import AlgorithmName

# Allocator registry for easy access
ALLOCATOR_REGISTRY = {
    AlgorithmName.COMP.value: CompAllocator,
    AlgorithmName.CASE.value: CaseAllocator,
    AlgorithmName.IA3.value: IA3Allocator,
    AlgorithmName.PDPA.value: PDPAAllocator,
    AlgorithmName.CAM.value: CaMAllocator,
}


def get_allocator(name: Union[str, AlgorithmName]) -> BaseAllocator:
    """Get an allocator instance by name"""
    key = name.value if isinstance(name, AlgorithmName) else str(name).lower()
    if key not in ALLOCATOR_REGISTRY:
        raise ValueError(f"Unknown algorithm: {name}. Available algorithms: {list(ALLOCATOR_REGISTRY.keys())}")
    return ALLOCATOR_REGISTRY[key]()


def list_available_allocators() -> dict:
    """List all available allocators with descriptions"""
    return {name: cls().description for name, cls in ALLOCATOR_REGISTRY.items()}


__all__ = [
    "BaseAllocator",
    "ProposedAllocator",
    "CompAllocator",
    "CaseAllocator",
    "IA3Allocator",
    "PDPAAllocator",
    "CaMAllocator",
    "run_ia3",
    "run_pdpa",
    "run_cam",
    "run_first_fit",
    "first_fit",
    "proportional_split",
    "select_critical_tasks",
    "minimize_cache",
    "minimal_grant",
    "ALLOCATOR_REGISTRY",
    "get_allocator",
    "list_available_allocators",
]
