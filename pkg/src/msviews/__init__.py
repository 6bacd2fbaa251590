"""Service-view and data-view reconstruction for microservice systems."""

from msviews.model import (
    CallSite,
    DataEntity,
    Endpoint,
    EntityRef,
    Field,
    HttpMethod,
    Microservice,
    Parameter,
    Persistence,
    Relationship,
    SystemModel,
    validate_system,
)

__all__ = [
    "CallSite",
    "DataEntity",
    "Endpoint",
    "EntityRef",
    "Field",
    "HttpMethod",
    "Microservice",
    "Parameter",
    "Persistence",
    "Relationship",
    "SystemModel",
    "validate_system",
]
