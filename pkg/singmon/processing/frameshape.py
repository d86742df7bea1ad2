"""Frame shapes: rational functions prod (1 - t^m)^chi_m with roots of unity as zeros and poles.

A shape is stored as its exponent map only (see `singmon.models.FrameShape`). The
product is normalized by (1 - t^m); the monic convention prod (t^m - 1)^chi_m differs
by `monic_sign`.
"""
import logging
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Mapping, Tuple, Union

import numpy as np
from sympy import Poly, ZZ, cyclotomic_poly, divisors, mobius, totient

from singmon.errors import (
    NonDivisorPeriod,
    NonIntegralExponent,
    NotAPolynomial,
    NotCyclotomicProduct,
    ParseError,
)
from singmon.models import FrameShape, IntPoly, PowerSeries
from singmon.processing.polynomials import T, from_sympy, one_minus_t_power, to_sympy

logger = logging.getLogger("singmon.frameshape")

TRIVIAL_TOKEN = "1^0"

Rational = Union[int, Fraction]


def shape(chi: Mapping[int, int]) -> FrameShape:
    return FrameShape(chi=dict(chi))


# --- arithmetic -------------------------------------------------------------


def fs_mul(a: FrameShape, b: FrameShape) -> FrameShape:
    merged = dict(a.chi)
    for m, c in b.chi.items():
        merged[m] = merged.get(m, 0) + c
    return FrameShape(chi=merged)


def fs_inverse(a: FrameShape) -> FrameShape:
    return FrameShape(chi={m: -c for m, c in a.chi.items()})


def fs_power(a: FrameShape, k: int) -> FrameShape:
    return FrameShape(chi={m: k * c for m, c in a.chi.items()})


def fs_div(a: FrameShape, b: FrameShape) -> FrameShape:
    return fs_mul(a, fs_inverse(b))


def degree(phi: FrameShape) -> int:
    return phi.degree


def level(phi: FrameShape) -> int:
    """Least common multiple of the support (1 for the trivial shape)."""
    h = 1
    for m in phi.chi:
        h = h * m // gcd(h, m)
    return h


def saito_dual(phi: FrameShape, h: int) -> FrameShape:
    """Dual shape with chi*_k = -chi_{h/k}."""
    if h < 1:
        raise NonDivisorPeriod(f"level must be positive, got {h}")
    bad = [m for m in phi.chi if h % m]
    if bad:
        raise NonDivisorPeriod(f"periods {bad} do not divide level {h}")
    return FrameShape(chi={h // m: -c for m, c in phi.chi.items()})


def saito_dual_auto(phi: FrameShape) -> FrameShape:
    return saito_dual(phi, level(phi))


def monic_sign(phi: FrameShape) -> int:
    """Sign relating prod (1 - t^m)^chi_m to prod (t^m - 1)^chi_m."""
    return -1 if sum(phi.chi.values()) % 2 else 1


# --- power sums --------------------------------------------------------------


def newton_sum(phi: FrameShape, k: int) -> int:
    return sum(m * c for m, c in phi.chi.items() if k % m == 0)


def chi_from_newton_sums(lambdas: Mapping[int, Rational], d: int) -> FrameShape:
    """Invert Lambda_k = sum_{m|k} m chi_m on the divisors of d by Moebius inversion."""
    chi: Dict[int, int] = {}
    for m in divisors(d):
        total = Fraction(0)
        for j in divisors(m):
            if j not in lambdas:
                raise NonIntegralExponent(f"power sum Lambda_{j} missing for level {d}")
            total += int(mobius(m // j)) * Fraction(lambdas[j])
        value = total / m
        if value.denominator != 1:
            raise NonIntegralExponent(f"chi_{m} = {value} is not an integer")
        chi[int(m)] = int(value)
    return FrameShape(chi=chi)


def cyclotomic_multiplicities(phi: FrameShape) -> Dict[int, int]:
    """Order of vanishing e_d of phi along the primitive d-th roots of unity (up to sign).

    (1 - t^m) = -prod_{d|m} Phi_d(t), hence e_d = sum_{d|m} chi_m.
    """
    e: Dict[int, int] = {}
    for m, c in phi.chi.items():
        for d in divisors(m):
            e[int(d)] = e.get(int(d), 0) + c
    return {d: e[d] for d in sorted(e) if e[d]}


def shape_from_cyclotomic_multiplicities(e: Mapping[int, int]) -> FrameShape:
    if not e:
        return FrameShape()
    top = max(e)
    chi: Dict[int, int] = {}
    for m in range(1, top + 1):
        value = sum(int(mobius(n // m)) * e.get(n, 0) for n in range(m, top + 1, m))
        if value:
            chi[m] = int(value)
    return FrameShape(chi=chi)


def is_polynomial_shape(phi: FrameShape) -> bool:
    return all(v >= 0 for v in cyclotomic_multiplicities(phi).values())


# --- expansions --------------------------------------------------------------


def expand_series(phi: FrameShape, order: int) -> PowerSeries:
    """Truncated Taylor expansion at t = 0; negative exponents via 1/(1 - t^m) = sum t^{mj}."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    a = [0] * (order + 1)
    a[0] = 1
    for m, c in phi.chi.items():
        if m > order:
            continue
        for _ in range(abs(c)):
            if c > 0:
                for k in range(order, m - 1, -1):
                    a[k] -= a[k - m]
            else:
                for k in range(m, order + 1):
                    a[k] += a[k - m]
    return PowerSeries(coeffs=a, order=order)


def numerator_denominator(phi: FrameShape) -> Tuple[Poly, Poly]:
    num = Poly(1, T, domain=ZZ)
    den = Poly(1, T, domain=ZZ)
    for m, c in phi.chi.items():
        if c > 0:
            num *= one_minus_t_power(m) ** c
        else:
            den *= one_minus_t_power(m) ** (-c)
    return num, den


def to_polynomial(phi: FrameShape) -> IntPoly:
    num, den = numerator_denominator(phi)
    q, r = num.div(den)
    if not r.is_zero:
        raise NotAPolynomial(f"{fs_format(phi)} has poles at roots of unity")
    return from_sympy(q)


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> Poly:
    return cyclotomic_poly(d, T, polys=True).set_domain(ZZ)


def _may_vanish(coeffs: np.ndarray, scale: float, d: int) -> bool:
    zeta = np.exp(2j * np.pi / d)
    return abs(np.polyval(coeffs, zeta)) <= 1e-7 * scale


def _candidate_bound(n: int) -> int:
    """Upper bound on d with phi(d) <= n, from phi(d) >= sqrt(d/2)."""
    return 2 * n * n


def factor_cyclotomic(p: IntPoly) -> FrameShape:
    """Write +-p as a Frame shape by trial division with cyclotomic polynomials."""
    if p.is_zero() or p.coeffs[0] not in (1, -1):
        raise NotCyclotomicProduct("polynomial must be nonzero with constant term +-1")
    remaining = to_sympy(p)
    e: Dict[int, int] = {}
    d = 1
    while remaining.degree() > 0 and d <= _candidate_bound(remaining.degree()):
        if int(totient(d)) <= remaining.degree():
            values = np.array([float(c) for c in remaining.all_coeffs()], dtype=complex)
            scale = max(1.0, float(np.abs(values).sum()))
            while remaining.degree() > 0 and _may_vanish(values, scale, d):
                q, r = remaining.div(_cyclotomic(d))
                if not r.is_zero:
                    break
                remaining = q.set_domain(ZZ)
                e[d] = e.get(d, 0) + 1
                values = np.array([float(c) for c in remaining.all_coeffs()], dtype=complex)
        d += 1
    if remaining.degree() != 0:
        raise NotCyclotomicProduct(f"non-cyclotomic factor of degree {remaining.degree()} remains")
    logger.debug("cyclotomic multiplicities %s", e)
    return shape_from_cyclotomic_multiplicities(e)


def fs_evaluate(phi: FrameShape, t: complex) -> complex:
    value = 1 + 0j
    for m, c in phi.chi.items():
        value *= (1 - complex(t) ** m) ** c
    return value


def roots_power_sum_numeric(phi: FrameShape, k: int) -> complex:
    """Sum of k-th powers of the roots of a polynomial shape, computed in floating point."""
    e = cyclotomic_multiplicities(phi)
    if any(v < 0 for v in e.values()):
        raise NotAPolynomial(f"{fs_format(phi)} is not a polynomial")
    total = 0j
    for d, mult in e.items():
        js = np.array([j for j in range(1, d + 1) if gcd(j, d) == 1])
        total += mult * np.exp(2j * np.pi * js * k / d).sum()
    return complex(total)


# --- text form ---------------------------------------------------------------

_INT = re.compile(r"[1-9][0-9]*")
_EXP = re.compile(r"0|[1-9][0-9]*")


def _parse_product(text: str, pos: int, sign: int) -> Tuple[Dict[int, int], int]:
    chi: Dict[int, int] = {}
    trivial = False
    factors = 0
    while True:
        start = pos
        m = _INT.match(text, pos)
        if m is None:
            raise ParseError("expected a positive integer", pos, text)
        base = int(m.group())
        pos = m.end()
        exp = 1
        if pos < len(text) and text[pos] == "^":
            x = _EXP.match(text, pos + 1)
            if x is None:
                raise ParseError("expected an exponent", pos + 1, text)
            exp = int(x.group())
            pos = x.end()
        if exp == 0:
            if base != 1 or factors:
                raise ParseError("exponent 0 is only allowed in the trivial factor 1^0", start, text)
            trivial = True
        elif trivial:
            raise ParseError("the trivial factor 1^0 must stand alone", start, text)
        else:
            chi[base] = chi.get(base, 0) + sign * exp
        factors += 1
        if pos < len(text) and text[pos] == "*":
            if trivial:
                raise ParseError("the trivial factor 1^0 must stand alone", pos, text)
            pos += 1
            continue
        return chi, pos


def fs_parse(text: str) -> FrameShape:
    """Parse ``num("/"den)?`` where each side is ``m[^k]*...``; "1^0" is the empty product."""
    text = text.strip()
    chi, pos = _parse_product(text, 0, 1)
    if pos < len(text) and text[pos] == "/":
        den, pos = _parse_product(text, pos + 1, -1)
        for m, c in den.items():
            chi[m] = chi.get(m, 0) + c
    if pos != len(text):
        raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
    return FrameShape(chi=chi)


def _render(items) -> str:
    return "*".join(str(m) if c == 1 else f"{m}^{c}" for m, c in items)


def fs_format(phi: FrameShape) -> str:
    num = [(m, c) for m, c in phi.chi.items() if c > 0]
    den = [(m, -c) for m, c in phi.chi.items() if c < 0]
    top = _render(num) if num else TRIVIAL_TOKEN
    if not den:
        return top
    return f"{top}/{_render(den)}"


def fs_to_json(phi: FrameShape) -> dict:
    return phi.model_dump(mode="json")


def fs_from_json(data: dict) -> FrameShape:
    return FrameShape.model_validate(data)
