from .scalars import Quad, quad, as_scalar, sqrt_scalar, scalar_str
from .laurent import LPoly, lpoly_gcd, lpoly_divexact
from .coeff import CoeffElem, normalize, ZERO, ONE, U, V

__all__ = [
    "Quad",
    "quad",
    "as_scalar",
    "sqrt_scalar",
    "scalar_str",
    "LPoly",
    "lpoly_gcd",
    "lpoly_divexact",
    "CoeffElem",
    "normalize",
    "ZERO",
    "ONE",
    "U",
    "V",
]
