"""Exact rational arithmetic: the coefficient field for everything in this package.

All computation here is exact; floating point is never used.  ``Rat`` is an
arbitrary-precision rational, always reduced to lowest terms with a positive
denominator (gmpy2's mpq when available, else the stdlib Fraction).
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    Rat = Fraction

#: zero and one in the coefficient field
ZERO = Rat(0)
ONE = Rat(1)

#: types accepted wherever a scalar is expected
SCALARS = (int, type(Rat(0)), Fraction)


def as_rat(x):
    """Coerce an int / Fraction / Rat to Rat; reject floats outright."""
    if isinstance(x, float):
        raise TypeError("floating point is not allowed in exact arithmetic")
    return Rat(x)


def rat_str(x):
    """Canonical text for a rational: 'a' or 'a/b' with b > 0."""
    return str(x)
