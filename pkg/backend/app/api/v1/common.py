"""
Request helpers shared by the v1 routes.
"""
from typing import Any, Dict

from fastapi import HTTPException
from pydantic import ValidationError

from app.models import TaskSet


def parse_task_set(document: Dict[str, Any]) -> TaskSet:
    """Task-set document to TaskSet; malformed documents are a 422"""
    try:
        return TaskSet.from_document(document)
    except ValidationError as e:
        raise HTTPException(status_code=422, detail=e.errors(include_url=False, include_context=False))
    except (KeyError, TypeError) as e:
        raise HTTPException(status_code=422, detail=f"Malformed task-set document: missing or invalid {e}")
