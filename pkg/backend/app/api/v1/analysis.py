"""
API routes for single-core schedulability queries.
"""
from fastapi import APIRouter, HTTPException
from fastapi.concurrency import run_in_threadpool

from app.models import CoreRequest
from app.core.exceptions import PreconditionViolation
from app.core.logging import api_logger
from app.analysis import CoreAssignment, CoreTask, core_utilization, get_test, npfp_response_times

router = APIRouter()


def _assignment(request: CoreRequest) -> CoreAssignment:
    ids = [t.task_id if t.task_id is not None else k for k, t in enumerate(request.tasks)]
    if len(set(ids)) != len(ids):
        raise PreconditionViolation(f"duplicate task ids {ids}")
    return CoreAssignment(tuple(CoreTask(i, t.period, t.exec) for i, t in zip(ids, request.tasks)), mu=1)


@router.post("/response-times")
async def response_times(request: CoreRequest):
    """Worst-case NP-FP response times of one core"""
    try:
        assignment = _assignment(request)
        report = await run_in_threadpool(npfp_response_times, assignment)
        api_logger.info(f"📐 Response times for {len(assignment)} tasks: schedulable={report.schedulable}")
        return report.to_dict()
    except PreconditionViolation as e:
        raise HTTPException(status_code=400, detail=str(e))


@router.post("/schedulable")
async def schedulable(request: CoreRequest):
    """Verdict of the requested policy's test for one core"""
    try:
        assignment = _assignment(request)
        verdict = await run_in_threadpool(get_test(request.policy).is_schedulable, assignment)
        utilization = core_utilization(assignment)
        return {
            "policy": request.policy.value,
            "schedulable": verdict,
            "utilization": float(utilization),
        }
    except PreconditionViolation as e:
        raise HTTPException(status_code=400, detail=str(e))
