"""Exact real and complex Waring ranks of binary forms, and real rank maps of plane curves."""

__version__ = "0.1.0"

from .apolarity import apolar_ideal, catalecticant, complex_rank, recover_decomposition
from .constructions import (
    PencilPoint,
    SpaceCurveP3,
    join_rank,
    projected_complex_rank,
    projected_real_rank,
    veronese_power,
)
from .errors import (
    DegenerateInputError,
    DegreeError,
    InconclusiveError,
    RealRankError,
    SingularCurveError,
    ZeroPolynomialError,
)
from .kernels import BACKEND
from .poly_core import BinaryForm, UniPoly
from .real_rank import interlaces, is_hyperbolic, pencil_hyperbolic, real_rank

__all__ = [
    "__version__", "BACKEND",
    "BinaryForm", "UniPoly",
    "apolar_ideal", "catalecticant", "complex_rank", "recover_decomposition",
    "is_hyperbolic", "interlaces", "pencil_hyperbolic", "real_rank",
    "PencilPoint", "SpaceCurveP3", "veronese_power", "join_rank",
    "projected_real_rank", "projected_complex_rank",
    "RealRankError", "ZeroPolynomialError", "DegreeError", "DegenerateInputError",
    "InconclusiveError", "SingularCurveError",
]
