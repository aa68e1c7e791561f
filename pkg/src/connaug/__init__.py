"""Subset k-connectivity augmentation: approximation pipeline, verifiers and exact oracle."""

from .instance import (
    Instance,
    InstanceError,
    InfeasibleError,
    Solution,
    format_instance,
    normalize,
    parse_instance,
    serialize_solution,
)

__all__ = [
    "Instance",
    "InstanceError",
    "InfeasibleError",
    "Solution",
    "format_instance",
    "normalize",
    "parse_instance",
    "serialize_solution",
]
