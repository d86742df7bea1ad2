import cmath
import random
from fractions import Fraction

import pytest

from singmon.errors import InvalidGeometry, NotCoprime, NotSimplePole, RootOfUnityExponent, ZeroExponent
from singmon.models import FrameShape, SeifertData, SeifertPair, WeightSystem
from singmon.processing.frameshape import fs_evaluate, fs_parse
from singmon.processing.seifert import (
    bundle,
    bundle_from_orbit,
    exponent,
    genus,
    orbit_invariants,
    partial_fraction_eval,
    poincare_series,
    polynomial_part,
    principal_part,
    residue_exact,
    residue_formula,
    residue_rhs,
    seifert_completion,
    seifert_data,
    wagreich3_check,
    weight_system,
)


@pytest.mark.parametrize(
    "weights, degree, alphas",
    [
        ((6, 10, 15), 30, [2, 3, 5]),
        ((4, 6, 9), 18, [2, 3, 4]),
        ((3, 4, 6), 12, [2, 3, 3]),
        ((2, 2, 3), 6, [2, 2, 2]),
        ((2, 3, 3), 6, [3, 3]),
        ((1, 2, 2), 4, [2, 2]),
        ((1, 1, 1), 2, []),
        ((1, 2, 3), 6, []),
    ],
)
def test_orbit_invariants(weights, degree, alphas):
    assert orbit_invariants(*weights, degree) == alphas


def test_orbit_invariants_do_not_depend_on_weight_order():
    assert orbit_invariants(15, 6, 10, 30) == orbit_invariants(6, 10, 15, 30)
    assert orbit_invariants(9, 4, 6, 18) == [2, 3, 4]


def test_orbit_invariants_need_normalized_weights():
    with pytest.raises(InvalidGeometry):
        orbit_invariants(2, 4, 6, 12)


def test_genus_and_exponent():
    assert genus(6, 10, 15, 30, [2, 3, 5]) == 0
    assert genus(1, 2, 3, 6, []) == 1
    assert exponent(weight_system(6, 10, 15, 30)) == -1
    assert exponent(WeightSystem(weights=[1, 1, 1, 1], degrees=[2, 2])) == 0


def test_seifert_completion_e8():
    data = seifert_completion([2, 3, 5], -1, 0)
    assert data.b == 2
    assert [(p.alpha, p.beta) for p in data.pairs] == [(2, 1), (3, 2), (5, 4)]
    assert data.vdeg == Fraction(-1, 30)


def test_seifert_data_of_a_even():
    data = seifert_data(2, 3, 3, 6)
    assert data.exponent == -2
    assert data.b == 1
    assert [(p.alpha, p.beta) for p in data.pairs] == [(3, 1), (3, 1)]


def test_seifert_completion_errors():
    with pytest.raises(ZeroExponent):
        seifert_completion([], 0, 1)
    with pytest.raises(NotCoprime):
        seifert_completion([2, 4], -2, 0)


def test_seifert_data_leaves_b_open_when_r_is_zero():
    data = seifert_data(1, 2, 3, 6)
    assert data.genus == 1
    assert data.b is None
    assert data.pairs == []


def test_seifert_models_validate_congruences():
    with pytest.raises(ValueError):
        SeifertData(genus=0, b=2, exponent=-1, pairs=[SeifertPair(alpha=3, beta=1)])
    with pytest.raises(ValueError):
        SeifertPair(alpha=4, beta=2)
    assert SeifertData(genus=0, exponent=-1, pairs=[SeifertPair(alpha=5), SeifertPair(alpha=2)]).alphas == [2, 5]


def test_poincare_series():
    assert poincare_series(weight_system(6, 10, 15, 30)) == fs_parse("30/6*10*15")
    w = WeightSystem(weights=[1, 1, 1, 1], degrees=[2, 2])
    assert poincare_series(w) == fs_parse("2^2/1^4")


def test_bundle_e8():
    b = bundle(6, 10, 15, 30)
    assert b.psi == fs_parse("2*3*5/1")
    assert b.phi == fs_parse("2*3*5*30/1*6*10*15")
    assert b.phi_tilde == b.phi


def test_bundle_simply_elliptic():
    b = bundle(1, 2, 3, 6)
    assert b.psi == FrameShape(chi={1: 2})
    assert b.phi == fs_parse("1*6/2*3")
    # phi~ drops (1 - t)^2 for genus one
    assert b.phi_tilde == fs_parse("6/1*2*3")


def test_bundle_from_orbit_for_icis():
    w = WeightSystem(weights=[1, 1, 1, 1], degrees=[2, 2])
    b = bundle_from_orbit(w, 1, [])
    assert b.phi == fs_parse("2^2/1^2")
    assert b.phi_tilde == fs_parse("2^2/1^4")


def test_residue_at_simple_pole():
    result = residue_exact(fs_parse("1^0/2"), 2)
    assert result.value == pytest.approx(0.5)
    assert result.ledger == {2: -1}
    assert result.pole_order == 1


def test_residue_e8_matches_case_formula():
    p = poincare_series(weight_system(6, 10, 15, 30))
    xi = cmath.exp(2j * cmath.pi / 5)
    value = residue_exact(p, 5).value
    assert abs(value - (-xi / (5 * (1 - xi)))) < 1e-9
    assert abs(value - residue_rhs((6, 10, 15), 30, 5)) < 1e-9


def test_residue_requires_simple_pole():
    p = poincare_series(weight_system(6, 10, 15, 30))
    with pytest.raises(NotSimplePole):
        residue_exact(p, 7)
    with pytest.raises(NotSimplePole):
        residue_exact(p, 1)


def test_residue_rhs_cases():
    assert residue_rhs((6, 10, 15), 30, 7) is None
    # alpha = 3 divides only 6 and 15
    xi = cmath.exp(2j * cmath.pi / 3)
    expected = -30 * xi / (6 * 15 * (1 - xi**10))
    assert abs(residue_rhs((6, 10, 15), 30, 3) - expected) < 1e-12


def test_residue_formula_interpretations():
    printed = residue_formula([2, 3, 5], -1, 5, "printed")
    xi = cmath.exp(2j * cmath.pi / 5)
    assert abs(printed - xi * xi**-1 / (5 * (1 - xi**-1))) < 1e-12
    alt = residue_formula([2, 3, 5], -1, 5, "xi_power_r")
    assert abs(alt - xi**-1 / (5 * (1 - xi**-1))) < 1e-12


def test_residue_formula_rejects_alpha_dividing_r():
    with pytest.raises(RootOfUnityExponent, match="xi\\^R = 1"):
        residue_formula([2, 2], -2, 2)
    # R = 0 is the degenerate case of the same condition
    with pytest.raises(RootOfUnityExponent):
        residue_formula([3], 0, 3)
    assert not issubclass(RootOfUnityExponent, ZeroExponent)


def test_residue_formula_uses_configured_interpretation(settings_env):
    settings_env(residue_numerator="xi_power_r")
    assert residue_formula([2, 3, 5], -1, 5) == residue_formula([2, 3, 5], -1, 5, "xi_power_r")


def test_principal_part_double_pole():
    # (1 + t)^2/(1 - t)^2 = 4/(t - 1)^2 + 4/(t - 1) + 1
    phi = fs_parse("2^2/1^4")
    c1, c2 = principal_part(phi, 1)
    assert c1 == pytest.approx(4)
    assert c2 == pytest.approx(4)
    assert polynomial_part(phi).coeffs == [1]


@pytest.mark.parametrize(
    "weights, degree",
    [((6, 10, 15), 30), ((2, 3, 3), 6), ((1, 2, 3), 6), ((1, 1, 2), 4), ((3, 4, 6), 12)],
)
def test_partial_fractions_reconstruct_poincare_series(weights, degree):
    p = poincare_series(weight_system(*weights, degree))
    rng = random.Random(7)
    for _ in range(20):
        t = cmath.rect(rng.uniform(0.3, 0.7), rng.uniform(0, 2 * cmath.pi))
        assert abs(partial_fraction_eval(p, t) - fs_evaluate(p, t)) < 1e-7


def test_partial_fractions_for_icis():
    p = fs_parse("2^2/1^4")
    for t in (0.3, 0.5j, -0.6 + 0.1j):
        assert abs(partial_fraction_eval(p, t) - fs_evaluate(p, t)) < 1e-7


@pytest.mark.parametrize("weights, degree", [((6, 10, 15), 30), ((4, 6, 9), 18), ((3, 4, 6), 12), ((2, 2, 3), 6)])
def test_three_generator_conditions_hold_for_kleinian(weights, degree):
    report = wagreich3_check(*weights, degree, seifert_data(*weights, degree))
    assert report.passed, report.checks
    assert set(report.checks) == {"a", "b", "c", "d", "e"}


def test_three_generator_conditions_fail_for_wrong_data():
    data = SeifertData(genus=0, b=2, exponent=-1, pairs=[SeifertPair(alpha=2, beta=1), SeifertPair(alpha=3, beta=2)])
    report = wagreich3_check(6, 10, 15, 30, data)
    assert not report.checks["b"]
    assert not report.passed
