"""Finite-dimensional calculus of linear relations and a theorem checker."""

__version__ = "0.1.0"

from .numkernel import DEFAULT_POLICY, EXACT, FLOAT, TolerancePolicy  # noqa: E402
from .relation import LinearRelation  # noqa: E402
from .subspace import Subspace  # noqa: E402

__all__ = ["DEFAULT_POLICY", "EXACT", "FLOAT", "LinearRelation", "Subspace", "TolerancePolicy", "__version__"]
