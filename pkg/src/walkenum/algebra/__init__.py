from .series import SeriesPrefix, format_rational, parse_rational
from .polynomials import BiPoly, RatFun, UniPoly
from .mpoly import MPoly
from .linsolve import linear_solve
from .groebner import buchberger, groebner_eliminate, normal_form
from .roots import isolate_positive_roots, refine_root, smallest_positive_real_root

__all__ = [
    "BiPoly",
    "MPoly",
    "RatFun",
    "SeriesPrefix",
    "UniPoly",
    "buchberger",
    "format_rational",
    "groebner_eliminate",
    "isolate_positive_roots",
    "linear_solve",
    "normal_form",
    "parse_rational",
    "refine_root",
    "smallest_positive_real_root",
]
