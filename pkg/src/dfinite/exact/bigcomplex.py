"""Arbitrary-precision complex helpers built on mpmath."""

from __future__ import annotations

from fractions import Fraction

import mpmath


def to_mpc(v, prec: int | None = None):
    """Convert Fraction, int, NFElem, complex or mpmath numbers to mpc."""
    if hasattr(v, "to_mpc"):
        return v.to_mpc(prec or mpmath.mp.prec)
    if isinstance(v, Fraction):
        return mpmath.mpc(mpmath.mpf(v.numerator) / v.denominator)
    return mpmath.mpc(v)


def to_mpf(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def digits_to_bits(digits: int) -> int:
    return int(digits * 3.3219280948873626) + 1


def bits_to_digits(bits: int) -> int:
    return int(bits / 3.3219280948873626)


def rel_error(a, b):
    """|a - b| / max(|b|, tiny)."""
    a, b = mpmath.mpc(a), mpmath.mpc(b)
    den = abs(b)
    if den == 0:
        return abs(a)
    return abs(a - b) / den


def fmt(z, digits: int = 15) -> str:
    z = mpmath.mpc(z)
    if z.imag == 0:
        return mpmath.nstr(z.real, digits)
    return mpmath.nstr(z, digits)


def mpc_to_json(z, digits: int = 40) -> list[str]:
    z = mpmath.mpc(z)
    return [mpmath.nstr(z.real, digits), mpmath.nstr(z.imag, digits)]


def mpc_from_json(data):
    return mpmath.mpc(mpmath.mpf(data[0]), mpmath.mpf(data[1]))
