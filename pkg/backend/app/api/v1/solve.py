"""
API routes for solving allocation instances.
"""
import time
from typing import Optional

from fastapi import APIRouter, HTTPException
from fastapi.concurrency import run_in_threadpool

from app.models import AlgorithmName, AllocationResult, SolveRequest
from app.core.exceptions import AllocationTimeout, PreconditionViolation
from app.core.logging import api_logger
from app.analysis import get_test
from app.allocators import get_allocator, list_available_allocators, minimize_cache
from .common import parse_task_set

router = APIRouter()


def _solve(request: SolveRequest, task_set) -> AllocationResult:
    test = get_test(request.policy)
    deadline: Optional[float] = time.monotonic() + request.timeout_s if request.timeout_s else None
    try:
        result = get_allocator(request.algorithm).allocate(task_set, test, deadline=deadline)
    except AllocationTimeout:
        return AllocationResult(algorithm=request.algorithm, policy=request.policy, timed_out=True)
    if request.minimize and result.solution is not None:
        result = result.model_copy(update={"solution": minimize_cache(result.solution, task_set, test)})
    return result


@router.post("", response_model=AllocationResult)
async def solve(request: SolveRequest):
    """Allocate one task set with one algorithm"""
    if request.algorithm == AlgorithmName.BOTH:
        raise HTTPException(status_code=400, detail="'both' is a report row, pick comp or case")
    task_set = parse_task_set(request.task_set)
    try:
        api_logger.info(f"🧮 Solving {task_set.n_tasks} tasks with {request.algorithm.value} under {request.policy.value}")
        result = await run_in_threadpool(_solve, request, task_set)
        api_logger.info(f"✅ {request.algorithm.value}: schedulable={result.schedulable}")
        return result
    except PreconditionViolation as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.get("/algorithms")
async def list_algorithms():
    """Allocators available to /v1/solve"""
    return list_available_allocators()
