"""
API route for exhaustive ground truth on small instances.
"""
from fastapi import APIRouter, HTTPException
from fastapi.concurrency import run_in_threadpool

from app.models import OracleVerdict, VerifyRequest
from app.core.exceptions import PreconditionViolation
from app.core.logging import api_logger
from app.analysis import get_test
from app.oracle import exhaustive_search
from .common import parse_task_set

router = APIRouter()


@router.post("", response_model=OracleVerdict)
async def verify(request: VerifyRequest):
    """Whether any allocation of the task set is schedulable"""
    task_set = parse_task_set(request.task_set)
    try:
        verdict = await run_in_threadpool(exhaustive_search, task_set, get_test(request.policy))
        api_logger.info(f"🔎 Exhaustive search over {verdict.explored} candidates: {verdict.exists_schedulable}")
        return verdict
    except PreconditionViolation as e:
        raise HTTPException(status_code=400, detail=str(e))
