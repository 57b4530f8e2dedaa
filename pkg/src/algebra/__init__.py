from .exact_arith import TAU, CycloQ6, cyclo_eval_numeric, cyclo_inv, cyclo_mul, format_rational, parse_rational
from .laurent import CenteredLaurentPoly, NotDivisibleError, sigma

__all__ = [
    "TAU",
    "CycloQ6",
    "cyclo_eval_numeric",
    "cyclo_inv",
    "cyclo_mul",
    "format_rational",
    "parse_rational",
    "CenteredLaurentPoly",
    "NotDivisibleError",
    "sigma",
]
