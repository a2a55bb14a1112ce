"""Exact-arithmetic workbench for finite-dimensional (metric) Leibniz algebras.

Scalars live in Q(i); every computation (identities, invariant forms,
Leibniz cohomology, deformations and their obstructions) is exact.
"""

from .algebra import Algebra, check_identity, identity_summary, invariants, transport
from .cohomology import Cochain, cohomology, is_cocycle
from .deformation import deform, leibniz_defect, scan_metric_deformations
from .exactnum import I, ONE, ZERO, Scalar, TPoly
from .forms import BilinearForm, is_metric, verify_form
from .linalg import Matrix

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "BilinearForm",
    "Cochain",
    "I",
    "Matrix",
    "ONE",
    "Scalar",
    "TPoly",
    "ZERO",
    "check_identity",
    "cohomology",
    "deform",
    "identity_summary",
    "invariants",
    "is_cocycle",
    "is_metric",
    "leibniz_defect",
    "scan_metric_deformations",
    "transport",
    "verify_form",
]
