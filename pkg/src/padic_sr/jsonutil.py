"""Exact-rational JSON helpers.

All numeric payloads in this package's interfaces are strings "num/den" (or
"num" when the denominator is 1); floats never appear in any interface.
"""

from fractions import Fraction


def ratstr(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))
