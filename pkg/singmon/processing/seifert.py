"""Orbit invariants, Seifert data, Poincare series and residues of quasihomogeneous surfaces."""
import cmath
import logging
from fractions import Fraction
from math import comb, gcd
from typing import Dict, List, Optional, Sequence

import numpy as np

from singmon.config import get_settings
from singmon.errors import (
    InvalidGeometry,
    NotCoprime,
    NotSimplePole,
    RootOfUnityExponent,
    SingmonError,
    ZeroExponent,
)
from singmon.models import (
    FrameShape,
    IntPoly,
    PoincareBundle,
    ResidueResult,
    SeifertData,
    SeifertPair,
    VerificationReport,
    WeightSystem,
)
from singmon.processing.frameshape import (
    cyclotomic_multiplicities,
    fs_format,
    fs_mul,
    fs_power,
    numerator_denominator,
)
from singmon.processing.polynomials import evaluate, from_sympy

logger = logging.getLogger("singmon.seifert")

TOLERANCE = 1e-9
ONE_MINUS_T = FrameShape(chi={1: 1})


def weight_system(q1: int, q2: int, q3: int, d: int) -> WeightSystem:
    return WeightSystem(weights=[q1, q2, q3], degrees=[d])


def poincare_series(w: WeightSystem) -> FrameShape:
    chi: Dict[int, int] = {}
    for d in w.degrees:
        chi[d] = chi.get(d, 0) + 1
    for q in w.weights:
        chi[q] = chi.get(q, 0) - 1
    return FrameShape(chi=chi)


def exponent(w: WeightSystem) -> int:
    """R = sum of degrees minus sum of weights (d - q1 - q2 - q3 for hypersurfaces)."""
    return sum(w.degrees) - sum(w.weights)


# Pair-column numerators of the orbit-invariant table, one row per pattern of
# denominators v1 <= v2 <= v3; columns are (q2,q3), (q1,q3), (q1,q2).
def _pair_numerators(row: int, d: int, q: Sequence[int]) -> List[int]:
    q1, q2, q3 = q
    if row == 1:
        return [d, d, d]
    if row == 2:
        return [d - q2, d - q1, d]
    if row == 3:
        return [d - q2 - q3, d - q1, d - q1]
    return [d - q2 - q3, d - q1 - q3, d - q1 - q2]


_PAIRS = ((1, 2), (0, 2), (0, 1))
# singleton columns q3, q2, q1 marked in each row
_SINGLETONS = {1: (), 2: (2,), 3: (2, 1), 4: (2, 1, 0)}


def orbit_invariants(q1: int, q2: int, q3: int, d: int) -> List[int]:
    """Multiset of exceptional orbit orders alpha >= 2 of a hypersurface singularity."""
    weights = (q1, q2, q3)
    if gcd(gcd(q1, q2), q3) != 1:
        raise InvalidGeometry(f"weights {weights} are not normalized")
    v = [Fraction(d, q).denominator for q in weights]
    order = sorted(range(3), key=lambda i: v[i])
    q = [weights[i] for i in order]
    vs = [v[i] for i in order]
    if vs[0] > 1:
        row = 4
    elif vs[1] > 1:
        row = 3
    elif vs[2] > 1:
        row = 2
    else:
        row = 1
    alphas: List[int] = []
    for (a, b), numerator in zip(_PAIRS, _pair_numerators(row, d, q)):
        alpha = gcd(q[a], q[b])
        if alpha < 2:
            continue
        lcm = q[a] * q[b] // alpha
        if numerator < 0 or numerator % lcm:
            raise InvalidGeometry(
                f"multiplicity {numerator}/{lcm} of alpha={alpha} is not a nonnegative integer"
            )
        alphas.extend([alpha] * (numerator // lcm))
    for i in _SINGLETONS[row]:
        if q[i] >= 2:
            alphas.append(q[i])
    logger.debug("orbit invariants of %s/%s: row %s, alphas %s", weights, d, row, alphas)
    return sorted(alphas)


def genus(q1: int, q2: int, q3: int, d: int, alphas: Sequence[int]) -> int:
    """Genus of the quotient curve from 2g - 2 + r - sum 1/alpha = R d / (q1 q2 q3)."""
    R = d - q1 - q2 - q3
    r = len(alphas)
    value = (Fraction(R * d, q1 * q2 * q3) + 2 - r + sum(Fraction(1, a) for a in alphas)) / 2
    if value.denominator != 1 or value < 0:
        raise InvalidGeometry(f"genus {value} is not a nonnegative integer")
    return int(value)


def seifert_completion(alphas: Sequence[int], R: int, g: int) -> SeifertData:
    if R == 0:
        raise ZeroExponent("beta and b are not determined when R = 0")
    bad = [a for a in alphas if gcd(R, a) != 1]
    if bad:
        raise NotCoprime(f"R={R} is not coprime to {bad}")
    betas = [pow(R, -1, a) for a in alphas]
    r = len(alphas)
    vdeg = (2 - 2 * g - r + sum((Fraction(1, a) for a in alphas), Fraction(0))) / R
    b = sum((Fraction(beta, a) for beta, a in zip(betas, alphas)), Fraction(0)) - vdeg
    if b.denominator != 1:
        raise InvalidGeometry(f"b = {b} is not an integer")
    return SeifertData(
        genus=g,
        b=int(b),
        exponent=R,
        pairs=[SeifertPair(alpha=a, beta=beta) for a, beta in zip(alphas, betas)],
    )


def seifert_data(q1: int, q2: int, q3: int, d: int) -> SeifertData:
    """Orbit invariants of a hypersurface, completed with beta and b whenever R != 0."""
    alphas = orbit_invariants(q1, q2, q3, d)
    g = genus(q1, q2, q3, d, alphas)
    R = d - q1 - q2 - q3
    if R == 0:
        return SeifertData(genus=g, exponent=R, pairs=[SeifertPair(alpha=a) for a in alphas])
    return seifert_completion(alphas, R, g)


def bundle_from_orbit(w: WeightSystem, g: int, alphas: Sequence[int]) -> PoincareBundle:
    """p_A, psi_A = (1-t)^{2-r} prod (1-t^alpha), phi_A = p_A psi_A, phi~_A = phi_A/(1-t)^{2g}."""
    p = poincare_series(w)
    chi: Dict[int, int] = {1: 2 - len(alphas)}
    for a in alphas:
        chi[a] = chi.get(a, 0) + 1
    psi = FrameShape(chi=chi)
    phi = fs_mul(p, psi)
    phi_tilde = fs_mul(phi, fs_power(ONE_MINUS_T, -2 * g))
    return PoincareBundle(p=p, psi=psi, phi=phi, phi_tilde=phi_tilde)


def bundle(q1: int, q2: int, q3: int, d: int) -> PoincareBundle:
    alphas = orbit_invariants(q1, q2, q3, d)
    g = genus(q1, q2, q3, d, alphas)
    return bundle_from_orbit(weight_system(q1, q2, q3, d), g, alphas)


# --- residues and partial fractions ----------------------------------------------


def _root(order: int, index: int = 1) -> complex:
    return cmath.exp(2j * cmath.pi * index / order)


def _exact_order(order: int, index: int) -> int:
    return order // gcd(order, index)


def residue_exact(p: FrameShape, alpha: int, index: int = 1) -> ResidueResult:
    """Residue of p at exp(2 pi i index/alpha), which must be a simple pole.

    Near xi every vanishing factor behaves like 1 - t^m ~ -m xi^{-1} (t - xi); the
    remaining factors are evaluated at xi.
    """
    xi = _root(alpha, index)
    e = _exact_order(alpha, index)
    ledger = {m: c for m, c in p.chi.items() if m % e == 0}
    pole_order = -sum(ledger.values())
    if pole_order != 1:
        raise NotSimplePole(f"{fs_format(p)} has a pole of order {pole_order} at exp(2 pi i {index}/{alpha})")
    value = 1 + 0j
    for m, c in p.chi.items():
        if m in ledger:
            value *= (-m / xi) ** c
        else:
            value *= (1 - xi**m) ** c
    return ResidueResult(
        alpha=alpha, index=index, real=value.real, imag=value.imag, pole_order=pole_order, ledger=ledger
    )


def _series_mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(a, b)[:n]


def _series_inv(a: np.ndarray, n: int) -> np.ndarray:
    a = np.concatenate([a, np.zeros(max(0, n - len(a)), dtype=complex)])
    out = np.zeros(n, dtype=complex)
    out[0] = 1 / a[0]
    for k in range(1, n):
        out[k] = -out[0] * np.dot(a[1 : k + 1], out[:k][::-1])
    return out


def _factor_taylor(m: int, xi: complex, n: int, vanishing: bool) -> np.ndarray:
    """Taylor coefficients in u = t - xi of 1 - t^m, divided by u when it vanishes at xi."""
    length = n + 1 if vanishing else n
    coeffs = np.zeros(length, dtype=complex)
    for i in range(min(m, length - 1) + 1):
        coeffs[i] = -comb(m, i) * xi ** (m - i)
    coeffs[0] += 1
    return coeffs[1:] if vanishing else coeffs


def principal_part(p: FrameShape, order: int, index: int = 1) -> List[complex]:
    """Coefficients c_1..c_k of c_s (t - xi)^{-s} in the Laurent expansion of p at xi."""
    xi = _root(order, index)
    e = _exact_order(order, index)
    k = -sum(c for m, c in p.chi.items() if m % e == 0)
    if k <= 0:
        return []
    g = np.zeros(k, dtype=complex)
    g[0] = 1
    for m, c in p.chi.items():
        factor = _factor_taylor(m, xi, k, m % e == 0)
        if c < 0:
            factor = _series_inv(factor, k)
        for _ in range(abs(c)):
            g = _series_mul(g, factor, k)
    return [complex(g[k - s]) for s in range(1, k + 1)]


def polynomial_part(p: FrameShape) -> IntPoly:
    num, den = numerator_denominator(p)
    q, _ = num.div(den)
    return from_sympy(q)


def partial_fraction_eval(p: FrameShape, t: complex) -> complex:
    """Evaluate p(t) as polynomial part plus the principal parts at every pole."""
    value = evaluate(polynomial_part(p), t)
    for d, mult in cyclotomic_multiplicities(p).items():
        if mult >= 0:
            continue
        for j in range(1, d + 1):
            if gcd(j, d) != 1:
                continue
            xi = _root(d, j)
            for s, c in enumerate(principal_part(p, d, j), start=1):
                value += c / (t - xi) ** s
    return value


def residue_formula(alphas: Sequence[int], R: int, alpha: int, interpretation: Optional[str] = None) -> complex:
    """Residue of p_A at exp(2 pi i/alpha) as a sum over the alpha_j divisible by alpha."""
    interpretation = interpretation or get_settings().residue_numerator
    xi = _root(alpha)
    if R % alpha == 0:
        raise RootOfUnityExponent(f"alpha={alpha} divides R={R}, so xi^R = 1 and the formula is undefined")
    numerator = xi * xi**R if interpretation == "printed" else xi**R
    return sum((numerator / (a * (1 - xi**R)) for a in alphas if a % alpha == 0), 0j)


def residue_rhs(q: Sequence[int], d: int, alpha: int) -> Optional[complex]:
    """Case-wise residue value read off the weights; None if alpha divides none or all of them."""
    xi = _root(alpha)
    dividing = [x for x in q if x % alpha == 0]
    rest = [x for x in q if x % alpha != 0]
    if len(dividing) == 1:
        return -xi * (1 - xi**d) / (dividing[0] * (1 - xi ** rest[0]) * (1 - xi ** rest[1]))
    if len(dividing) == 2:
        return -d * xi / (dividing[0] * dividing[1] * (1 - xi ** rest[0]))
    return None


def wagreich3_check(q1: int, q2: int, q3: int, d: int, data: SeifertData) -> VerificationReport:
    """Evaluate the conditions under which (1-t^d)/prod(1-t^{q_i}) is the Poincare series."""
    q = (q1, q2, q3)
    R = data.exponent
    report = VerificationReport(subject=f"{q1},{q2},{q3}/{d}")
    report.checks["a"] = gcd(gcd(q1, q2), q3) == 1

    lhs = 2 * data.genus - 2 + data.r - sum((Fraction(1, a) for a in data.alphas), Fraction(0))
    rhs = Fraction(R * d, q1 * q2 * q3)
    report.checks["b"] = lhs == rhs
    report.details["b"] = {"lhs": str(lhs), "rhs": str(rhs)}

    report.checks["d"] = all(d % gcd(q[i], q[j]) == 0 for i in range(3) for j in range(i + 1, 3))
    report.checks["e"] = d == q1 + q2 + q3 + R

    interpretation = get_settings().residue_numerator
    p = poincare_series(weight_system(q1, q2, q3, d)) if report.checks["a"] else None
    residues = {}
    c_ok = True
    for alpha in sorted(set(data.alphas)):
        entry: Dict[str, object] = {}
        expected = residue_rhs(q, d, alpha)
        if expected is None or p is None:
            report.not_applicable.append(f"c[{alpha}]")
            continue
        try:
            actual = residue_exact(p, alpha).value
        except SingmonError as exc:
            entry["error"] = str(exc)
            c_ok = False
            residues[str(alpha)] = entry
            continue
        agrees = abs(actual - expected) < TOLERANCE
        c_ok = c_ok and agrees
        entry.update(exact=[actual.real, actual.imag], rhs=[expected.real, expected.imag])
        try:
            formula = residue_formula(data.alphas, R, alpha, interpretation)
        except RootOfUnityExponent:
            formula = None
        if formula is not None:
            entry["formula"] = [formula.real, formula.imag]
            entry["formula_agrees"] = abs(formula - actual) < TOLERANCE
            if not entry["formula_agrees"]:
                logger.warning(
                    "residue formula (%s) differs from the exact residue at alpha=%s for %s",
                    interpretation,
                    alpha,
                    report.subject,
                )
        residues[str(alpha)] = entry
    report.checks["c"] = c_ok
    report.details["c"] = {"interpretation": interpretation, "residues": residues}
    return report
