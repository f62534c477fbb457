"""Exact formed-space linear algebra with combinatorial and spectral verifiers."""

__version__ = "0.1.0"

from .errors import FormedError
from .scalars import Base, Epsilon, FieldSpec, Involution, Scalar

__all__ = [
    "__version__",
    "FormedError",
    "Base",
    "Epsilon",
    "FieldSpec",
    "Involution",
    "Scalar",
]
