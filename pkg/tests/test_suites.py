import pytest

from singmon.processing.suites import SUITES, run_suite


def test_theorem4_suite():
    (report,) = run_suite("theorem4")
    assert report.subject == "theorem4:D~5"
    assert report.passed, report.checks
    assert report.checks["4b_rejects_mismatch"]
    assert report.checks["4a_rejects_perturbed"]


def test_kleinian_suite_is_sorted_and_passes():
    reports = run_suite("kleinian", max_index=4)
    subjects = [r.subject for r in reports]
    assert subjects == sorted(subjects)
    assert "kleinian:E8" in subjects
    assert all(r.passed for r in reports), [r.subject for r in reports if not r.passed]


def test_a_even_is_not_self_dual_in_kleinian_suite():
    reports = {r.subject: r for r in run_suite("kleinian", max_index=2)}
    assert reports["kleinian:A2"].details["phi_A_self_dual"] is False
    assert reports["kleinian:A2"].checks["self_duality_as_expected"]


def test_elliptic_suite():
    reports = run_suite("elliptic")
    assert [r.subject for r in reports] == ["elliptic:D~5", "elliptic:E~6", "elliptic:E~7", "elliptic:E~8"]
    assert all(r.passed for r in reports)


def test_theorem1_suite_on_corpus(settings_env):
    settings_env(corpus_size=10, workers=2)
    reports = run_suite("theorem1", max_index=3, seed=5)
    corpus = [r for r in reports if "brieskorn" in r.subject]
    assert len(corpus) == 10
    assert all(r.passed for r in reports)
    again = run_suite("theorem1", max_index=3, seed=5)
    assert [r.subject for r in again] == [r.subject for r in reports]


def test_mckay_suite(settings_env):
    settings_env(series_order=60)
    reports = run_suite("mckay", max_index=4)
    assert len(reports) == 4 + 1 + 3
    assert all(r.passed for r in reports), [r.subject for r in reports if not r.passed]


def test_unknown_suite():
    assert "all" in SUITES
    with pytest.raises(ValueError):
        run_suite("everything")
