"""Service layer: pydantic request/response models, handlers, FastAPI app."""

from .handlers import ServiceError

__all__ = ["ServiceError"]
