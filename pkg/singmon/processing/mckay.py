"""Root systems of type A, D, E, McKay matrices and Coxeter characteristic polynomials.

Vertex 0 is always the affine vertex of the extended Dynkin diagram. For A_{2n-1}
the cycle is numbered bipartitely: positions 2j and 2j+1 on the cycle carry the
labels j and n+j.
"""
import logging
import re
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, ZZ, eye
from sympy.polys.matrices import DomainMatrix

from singmon.errors import InvalidGeometry, NonIntegralDims, OddPowerPresent, UnsupportedLabel
from singmon.models import FrameShape, IntPoly, RepVector, RootSystemSpec, VerificationReport
from singmon.processing.frameshape import expand_series, factor_cyclotomic, fs_div, fs_format, saito_dual
from singmon.processing.polynomials import T, even_part, from_sympy, recompose, series_quotient
from singmon.processing.seifert import bundle, poincare_series, weight_system

logger = logging.getLogger("singmon.mckay")

_LABEL = re.compile(r"^([ADE])_?\{?(\d+)\}?$")


def parse_label(label: str) -> Tuple[str, int]:
    m = _LABEL.match(label.strip())
    if m is None:
        raise UnsupportedLabel(f"cannot read root system label {label!r}")
    family, rank = m.group(1), int(m.group(2))
    if (family == "A" and rank < 1) or (family == "D" and rank < 4) or (family == "E" and rank not in (6, 7, 8)):
        raise UnsupportedLabel(f"no root system {family}{rank}")
    return family, rank


def _edges(family: str, rank: int) -> List[Tuple[int, int]]:
    if family == "A":
        if rank % 2:
            n = (rank + 1) // 2
            labels = [j if pos % 2 == 0 else n + j for pos in range(rank + 1) for j in [pos // 2]]
        else:
            labels = list(range(rank + 1))
        return [(labels[i], labels[(i + 1) % (rank + 1)]) for i in range(rank + 1)]
    if family == "D":
        chain = list(range(4, rank + 1))
        edges = [(0, 4), (1, 4), (2, rank), (3, rank)]
        edges += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
        return edges
    if rank == 6:
        return [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]
    if rank == 7:
        return [(i, i + 1) for i in range(6)] + [(3, 7)]
    return [(i, i + 1) for i in range(7)] + [(5, 8)]


@lru_cache(maxsize=None)
def _build(family: str, rank: int) -> RootSystemSpec:
    size = rank + 1
    b = [[0] * size for _ in range(size)]
    for i, j in _edges(family, rank):
        b[i][j] += 1
        b[j][i] += 1
    c = [[(2 if i == j else 0) - b[i][j] for j in range(size)] for i in range(size)]
    return RootSystemSpec(
        label=f"{family}{rank}",
        family=family,
        rank=rank,
        cartan=[row[1:] for row in c[1:]],
        affine_cartan=c,
        mckay=b,
    )


def build_root_system(label: str) -> RootSystemSpec:
    return _build(*parse_label(label))


def is_a_even(spec: RootSystemSpec) -> bool:
    return spec.family == "A" and spec.rank % 2 == 0


def kleinian_label_parameters(label: str) -> Tuple[str, Optional[int]]:
    """Catalog family and parameter of the Kleinian singularity attached to a root system."""
    family, rank = parse_label(label)
    if family == "A":
        return ("A_{2n}", rank // 2) if rank % 2 == 0 else ("A_{2n-1}", (rank + 1) // 2)
    if family == "D":
        return "D_l", rank
    return f"E{rank}", None


# --- Coxeter elements ----------------------------------------------------------------


def _zz_matrix(rows: Sequence[Sequence[int]]) -> DomainMatrix:
    return DomainMatrix([[ZZ(x) for x in row] for row in rows], (len(rows), len(rows)), ZZ)


def coxeter_matrix(spec: RootSystemSpec, order: Optional[Sequence[int]] = None) -> DomainMatrix:
    """Product of the simple reflections s_i(alpha_j) = alpha_j - C_ji alpha_i, in the given order."""
    l = spec.rank
    cartan = spec.cartan
    order = list(order) if order is not None else list(range(l))
    if sorted(order) != list(range(l)):
        raise ValueError(f"order must be a permutation of 0..{l - 1}")
    product = _zz_matrix([[int(i == j) for j in range(l)] for i in range(l)])
    for i in order:
        s = [[int(r == j) for j in range(l)] for r in range(l)]
        for j in range(l):
            s[i][j] -= cartan[j][i]
        product = product * _zz_matrix(s)
    return product


def coxeter_charpoly(spec: RootSystemSpec, order: Optional[Sequence[int]] = None) -> FrameShape:
    coeffs = [int(c) for c in coxeter_matrix(spec, order).charpoly()]
    return factor_cyclotomic(IntPoly(coeffs=list(reversed(coeffs))))


def _poly_ring_matrix(spec: RootSystemSpec, skip_first: bool = False) -> DomainMatrix:
    ring = ZZ[T]
    b = spec.mckay
    start = 1 if skip_first else 0
    size = len(b)
    rows = [
        [ring.from_sympy((1 + T**2 if i == j else 0) - T * b[i][j]) for j in range(start, size)]
        for i in range(start, size)
    ]
    return DomainMatrix(rows, (size - start, size - start), ring)


def _det(matrix: DomainMatrix) -> IntPoly:
    if matrix.shape[0] == 0:
        return IntPoly(coeffs=[1])
    value = matrix.domain.to_sympy(matrix.det())
    return from_sympy(Poly(value, T, domain=ZZ))


def det_m_polynomial(spec: RootSystemSpec) -> IntPoly:
    """D(t) = det((1 + t^2) I - t B), by fraction-free elimination over ZZ[t]."""
    value = _det(_poly_ring_matrix(spec))
    logger.debug("det M(t) for %s: %s", spec.label, value.coeffs)
    return value


def affine_coxeter_charpoly(spec: RootSystemSpec) -> FrameShape:
    even, odd = even_part(det_m_polynomial(spec))
    if odd:
        raise OddPowerPresent(f"det M(t) of {spec.label} has odd degrees {odd}")
    return factor_cyclotomic(even)


# --- representation series -----------------------------------------------------------


def pg_series(spec: RootSystemSpec, order: int) -> List[RepVector]:
    """v_0 = e_0 and v_{m+1} = B v_m - v_{m-1}: multiplicities of the irreducibles in S^m."""
    b = spec.mckay
    size = len(b)
    prev = [0] * size
    cur = [1] + [0] * (size - 1)
    out = [RepVector(v=cur)]
    for _ in range(order):
        nxt = [sum(b[i][j] * cur[j] for j in range(size)) - prev[i] for i in range(size)]
        prev, cur = cur, nxt
        out.append(RepVector(v=cur))
    return out


def pg0_closed_form(spec: RootSystemSpec) -> Tuple[IntPoly, IntPoly]:
    """(det M_0(t), det M(t)); M_0 is M with column 0 replaced by e_0."""
    return _det(_poly_ring_matrix(spec, skip_first=True)), det_m_polynomial(spec)


def kac_dims(spec: RootSystemSpec) -> List[int]:
    b = Matrix(spec.mckay)
    basis = (b - 2 * eye(b.shape[0])).nullspace()
    if len(basis) != 1 or basis[0][0] == 0:
        raise NonIntegralDims(f"kernel of B - 2I for {spec.label} is not a line through e_0")
    x = basis[0] / basis[0][0]
    if any(not v.is_integer or v <= 0 for v in x):
        raise NonIntegralDims(f"dimension vector {list(x)} of {spec.label} is not positive integral")
    return [int(v) for v in x]


def mckay_verify(spec: RootSystemSpec, q1: int, q2: int, q3: int, d: int, order: int) -> VerificationReport:
    """Series identity p_A(t^nu) = P_G(t)_0 and the Coxeter/affine Coxeter identities."""
    R = d - q1 - q2 - q3
    if R not in (-1, -2):
        raise InvalidGeometry(f"exponent R={R} is not Kleinian")
    nu = -2 // R
    report = VerificationReport(subject=spec.label)
    num, den = pg0_closed_form(spec)
    closed = series_quotient(num, den, order).coeffs
    recursion = [v.v[0] for v in pg_series(spec, order)]
    p_a = poincare_series(weight_system(q1, q2, q3, d))
    recomposed = recompose(expand_series(p_a, order), nu).coeffs
    report.checks["closed_form_equals_recursion"] = closed == recursion
    report.checks["recursion_equals_poincare"] = recursion == recomposed
    report.details.update(nu=nu, order=order, series_head=recursion[:13])

    b = bundle(q1, q2, q3, d)
    if is_a_even(spec):
        report.not_applicable += ["coxeter", "affine_coxeter", "quotient"]
        report.checks["phi_A_not_self_dual"] = saito_dual(b.phi, d) != b.phi
    else:
        cox = coxeter_charpoly(spec)
        aff = affine_coxeter_charpoly(spec)
        report.checks["coxeter"] = cox == b.phi
        report.checks["affine_coxeter"] = aff == b.psi
        report.checks["quotient"] = fs_div(cox, aff) == b.p
        report.details.update(coxeter=fs_format(cox), affine_coxeter=fs_format(aff))
    return report
