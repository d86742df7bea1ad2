import pytest
from sympy import cyclotomic_poly, totient

from singmon.errors import NonDivisorPeriod, NonIntegralExponent, NotAPolynomial, NotCyclotomicProduct, ParseError
from singmon.models import FrameShape, IntPoly
from singmon.processing.catalog import entries
from singmon.processing.frameshape import (
    _candidate_bound,
    chi_from_newton_sums,
    cyclotomic_multiplicities,
    expand_series,
    factor_cyclotomic,
    fs_div,
    fs_format,
    fs_from_json,
    fs_mul,
    fs_parse,
    fs_power,
    fs_to_json,
    is_polynomial_shape,
    level,
    monic_sign,
    newton_sum,
    roots_power_sum_numeric,
    saito_dual,
    saito_dual_auto,
    to_polynomial,
)
from singmon.processing.monodromy import charpoly_hypersurface
from singmon.processing.polynomials import T


def test_parse_table_shapes(e8_shape):
    assert e8_shape.chi == {1: -1, 2: 1, 3: 1, 5: 1, 6: -1, 10: -1, 15: -1, 30: 1}
    assert fs_parse("2^4/1").chi == {1: -1, 2: 4}
    assert fs_parse("1^0").is_trivial()


def test_format_is_canonical(e8_shape):
    assert fs_format(e8_shape) == "2*3*5*30/1*6*10*15"
    assert fs_format(FrameShape()) == "1^0"
    assert fs_format(FrameShape(chi={1: -2})) == "1^0/1^2"
    assert fs_parse("1^0/1^2") == FrameShape(chi={1: -2})
    # repeated factors merge
    assert fs_format(fs_parse("2*2/1")) == "2^2/1"


@pytest.mark.parametrize(
    "text, position",
    [("2*x", 2), ("2/", 2), ("0", 0), ("2^", 2), ("1^0*2", 3), ("2 3", 1), ("2^0", 0)],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(ParseError) as info:
        fs_parse(text)
    assert info.value.position == position


def test_json_forms(e8_shape):
    data = fs_to_json(fs_parse("2^4/1"))
    assert data == {"chi": [[1, -1], [2, 4]]}
    assert fs_from_json(data) == fs_parse("2^4/1")
    assert fs_from_json(fs_to_json(e8_shape)) == e8_shape
    assert IntPoly(coeffs=[1, 0, 2, 0, 0]).model_dump() == {"coeffs": [1, 0, 2]}


def test_model_rejects_bad_period():
    with pytest.raises(ValueError):
        FrameShape(chi={0: 1})


def test_saito_dual_of_elliptic_shape():
    assert fs_format(saito_dual(fs_parse("6/1*2*3"), 6)) == "2*3*6/1"
    assert saito_dual_auto(fs_parse("6/1*2*3")) == fs_parse("2*3*6/1")


def test_saito_dual_needs_divisor_level():
    with pytest.raises(NonDivisorPeriod):
        saito_dual(fs_parse("4/1"), 6)


def test_level_and_sign():
    assert level(fs_parse("4*6/1")) == 12
    assert level(FrameShape()) == 1
    assert monic_sign(fs_parse("2/1")) == 1
    assert monic_sign(fs_parse("2^2/1")) == -1


def test_newton_sums():
    assert newton_sum(fs_parse("2/1"), 2) == 1
    assert newton_sum(fs_parse("3/1"), 3) == 2
    assert newton_sum(fs_parse("2*3*5*30/1*6*10*15"), 30) == 8


def test_chi_from_newton_sums_roundtrip(e8_shape):
    lambdas = {k: newton_sum(e8_shape, k) for k in (1, 2, 3, 5, 6, 10, 15, 30)}
    assert chi_from_newton_sums(lambdas, 30) == e8_shape


def test_chi_from_newton_sums_rejects_fractional():
    with pytest.raises(NonIntegralExponent):
        chi_from_newton_sums({1: 0, 2: 1}, 2)
    with pytest.raises(NonIntegralExponent):
        chi_from_newton_sums({1: 0}, 2)


def test_expand_series():
    # A1: (1 - t^2)/(1 - t)^3 = sum (2k + 1) t^k
    assert expand_series(fs_parse("2/1^3"), 6).coeffs == [1, 3, 5, 7, 9, 11, 13]
    assert expand_series(FrameShape(), 3).coeffs == [1, 0, 0, 0]
    assert expand_series(fs_parse("3"), 4).coeffs == [1, 0, 0, -1, 0]


def test_to_polynomial():
    assert to_polynomial(fs_parse("2*3*5*30/1*6*10*15")).coeffs == [1, 1, 0, -1, -1, -1, 0, 1, 1]
    assert to_polynomial(fs_parse("1*6/2*3")).coeffs == [1, -1, 1]
    assert to_polynomial(FrameShape()).coeffs == [1]
    with pytest.raises(NotAPolynomial):
        to_polynomial(fs_parse("1^0/1"))


def test_factor_cyclotomic(e8_shape):
    assert factor_cyclotomic(IntPoly(coeffs=[1, 1, 0, -1, -1, -1, 0, 1, 1])) == e8_shape
    assert factor_cyclotomic(IntPoly(coeffs=[1, 1])) == fs_parse("2/1")
    assert factor_cyclotomic(IntPoly(coeffs=[1, -1])) == fs_parse("1")
    assert factor_cyclotomic(IntPoly(coeffs=[1])) == FrameShape()


@pytest.mark.parametrize("coeffs", [[1, 3, 1], [2, 1], [], [1, 0, 0, 2]])
def test_factor_cyclotomic_rejects(coeffs):
    with pytest.raises(NotCyclotomicProduct):
        factor_cyclotomic(IntPoly(coeffs=coeffs))


def test_cyclotomic_multiplicities():
    assert cyclotomic_multiplicities(fs_parse("2/1")) == {2: 1}
    assert cyclotomic_multiplicities(fs_parse("1^0/1^2")) == {1: -2}
    assert is_polynomial_shape(fs_parse("2*3*5*30/1*6*10*15"))
    assert not is_polynomial_shape(fs_parse("2/1^3"))


@pytest.mark.parametrize(
    "text, k, expected",
    [("2/1", 2, 1), ("3/1", 3, 2), ("2*3*5*30/1*6*10*15", 30, 8)],
)
def test_numeric_power_sums(text, k, expected):
    value = roots_power_sum_numeric(fs_parse(text), k)
    assert abs(value - expected) < 1e-9


def test_numeric_power_sum_needs_polynomial():
    with pytest.raises(NotAPolynomial):
        roots_power_sum_numeric(fs_parse("1^0/1"), 1)


def test_newton_sums_match_numeric_on_catalog():
    shapes = []
    for entry in entries(8):
        if entry.weights.n == 3:
            q1, q2, q3 = entry.weights.weights
            shapes.append(charpoly_hypersurface(q1, q2, q3, entry.weights.degrees[0]).charpoly)
        if is_polynomial_shape(entry.pi_A):
            shapes.append(entry.pi_A)
    for phi in shapes:
        for k in range(1, 61):
            assert abs(roots_power_sum_numeric(phi, k) - newton_sum(phi, k)) < 1e-9


def test_multiplication_adds_exponents():
    assert fs_mul(fs_parse("2/1"), fs_parse("1*3")) == fs_parse("2*3")


def test_power_scales_exponents():
    phi = fs_parse("2^4/1")
    assert fs_power(phi, 3) == fs_parse("2^12/1^3")
    assert fs_power(phi, -1) == fs_parse("1/2^4")
    assert fs_power(phi, 0) == FrameShape()
    assert fs_div(phi, fs_power(phi, 2)) == fs_power(phi, -1)


def test_candidate_bound_covers_every_cyclotomic_index():
    for d in range(1, 5001):
        assert d <= _candidate_bound(int(totient(d)))


def test_factor_primorial_cyclotomic():
    phi_210 = cyclotomic_poly(210, T, polys=True) * cyclotomic_poly(1, T, polys=True)
    p = IntPoly(coeffs=[int(c) for c in reversed(phi_210.all_coeffs())])
    assert cyclotomic_multiplicities(factor_cyclotomic(p)) == {1: 1, 210: 1}
