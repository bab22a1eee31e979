"""Exact arithmetic: real algebraic numbers and cyclotomic numbers."""
from .algebraic import (
    AlgebraicReal,
    Ordering,
    alg_arith,
    alg_compare,
    alg_from_integer,
    alg_is_integer,
    alg_sqrt_integer,
    arith,
    compare,
)
from .cyclotomic import Cyclotomic, cyc_arith
