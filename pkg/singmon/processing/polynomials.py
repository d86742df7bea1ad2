"""Integer polynomials and truncated power series.

IntPoly values are converted to ``sympy.Poly`` over ZZ for exact division and
multiplication; series arithmetic is done on plain Python integers.
"""
import logging
from typing import List, Tuple

import numpy as np
from sympy import Poly, ZZ, symbols

from singmon.models import IntPoly, PowerSeries

logger = logging.getLogger("singmon.polynomials")

T = symbols("t")


def to_sympy(p: IntPoly) -> Poly:
    if p.is_zero():
        return Poly(0, T, domain=ZZ)
    return Poly(list(reversed(p.coeffs)), T, domain=ZZ)


def from_sympy(poly: Poly) -> IntPoly:
    return IntPoly(coeffs=[int(c) for c in reversed(poly.all_coeffs())])


def one_minus_t_power(m: int) -> Poly:
    """The polynomial 1 - t^m."""
    return Poly(1 - T**m, T, domain=ZZ)


def even_part(p: IntPoly) -> Tuple[IntPoly, List[int]]:
    """Split p(t) into q(s) with p(t) = q(t^2) plus the list of odd degrees present."""
    odd = [k for k, c in enumerate(p.coeffs) if c and k % 2]
    return IntPoly(coeffs=p.coeffs[::2]), odd


def evaluate(p: IntPoly, x: complex) -> complex:
    if p.is_zero():
        return 0j
    return complex(np.polyval(np.array(list(reversed(p.coeffs)), dtype=complex), x))


def series_quotient(num: IntPoly, den: IntPoly, order: int) -> PowerSeries:
    """Power series of num/den up to t^order; den(0) must be +1 or -1."""
    d = den.coeffs
    if not d or d[0] not in (1, -1):
        raise ValueError("denominator must have constant term +1 or -1")
    a = num.coeffs
    out: List[int] = []
    for k in range(order + 1):
        s = a[k] if k < len(a) else 0
        for j in range(1, min(k, len(d) - 1) + 1):
            s -= d[j] * out[k - j]
        out.append(s * d[0])
    return PowerSeries(coeffs=out, order=order)


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    order = min(a.order, b.order)
    out = [0] * (order + 1)
    for i, x in enumerate(a.coeffs[: order + 1]):
        if x == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += x * b.coeffs[j]
    return PowerSeries(coeffs=out, order=order)


def recompose(series: PowerSeries, nu: int) -> PowerSeries:
    """Substitute t -> t^nu, keeping the same truncation order."""
    if nu < 1:
        raise ValueError("nu must be positive")
    out = [0] * (series.order + 1)
    for k, c in enumerate(series.coeffs):
        if k * nu > series.order:
            break
        out[k * nu] = c
    return PowerSeries(coeffs=out, order=series.order)
