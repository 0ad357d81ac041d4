from fractions import Fraction

import wordperim as wp
from wordperim import cross_moments as xm
from wordperim import verification as ver


def test_small_sweep_passes():
    checks = wp.run_verification(k_max=4, p_list=[Fraction(1, 2)], n_max=8, random_words=300)
    assert all(c.passed for c in checks)
    report = wp.format_report(checks)
    assert "FAIL" not in report
    assert f"{len(checks)}/{len(checks)} identities pass" in report


def test_instance_counts_are_reported():
    checks = wp.run_verification(k_max=2, p_list=[Fraction(1, 2)], n_max=5, random_words=50)
    assert all(c.instances > 0 for c in checks)
    by_name = {c.name: c for c in checks}
    random_chk = by_name["perimeter identity, randomized larger words"]
    assert random_chk.instances == 50


def test_mu3_zero_at_k_two():
    # the sweep covers k=2 where every mu3 route is exactly 0
    checks = wp.run_verification(k_max=2, p_list=[], n_max=5, random_words=10)
    by_name = {c.name: c for c in checks}
    assert by_name[
        "mu3* routes: uncentered combination, centered combination, closed"
    ].passed


def test_corrupted_closed_form_is_caught(monkeypatch):
    broken = dict(xm.UNIFORM_CLOSED)
    broken[xm.MomentIndex(0, 2, 0, 0)] = lambda m: Fraction(1, 9)
    monkeypatch.setattr(xm, "UNIFORM_CLOSED", broken)
    check = ver.check_cross_moments_uniform(k_max=4)
    assert not check.passed
    assert any("T(0, 2, 0, 0)" in f for f in check.failures)
    report = wp.format_report([check])
    assert "FAIL" in report and "cross-moment closed forms vs oracle (uniform)" in report


def test_close_comparison_uses_relative_deviation():
    chk = ver.IdentityCheck("demo")
    chk.close(Fraction(1000000, 1), Fraction(1000001, 1), "big values")  # rel 1e-6
    assert not chk.passed
    chk2 = ver.IdentityCheck("demo2")
    chk2.close(1.0 + 1e-12, 1.0, "tiny dev")
    assert chk2.passed
