"""Exact support varieties and generic dimensions for small quantum group
modules, computed from root-system and affine Weyl group combinatorics."""

from ._core import (
    CapacityLimit,
    Context,
    InvalidInput,
    InvariantViolation,
    RootSystem,
    build,
    __version__,
)

__all__ = [
    "CapacityLimit",
    "Context",
    "InvalidInput",
    "InvariantViolation",
    "RootSystem",
    "build",
    "__version__",
]
