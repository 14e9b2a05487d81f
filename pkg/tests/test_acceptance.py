"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; the assertions enforce every stated tolerance.
"""

import math
import os
import time
from fractions import Fraction

import numpy as np
import pytest

from deltasieve import arith, characters, density, expsum, oscint, sieve, suites

THREADS = min(8, os.cpu_count() or 1)


def _report(num, ok, detail):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def expsum_report():
    return suites.suite_expsum(0)


@pytest.fixture(scope="module")
def oscint_report():
    return suites.suite_oscint(0)


@pytest.fixture(scope="module")
def sieve_report():
    return suites.suite_sieve(0, deep=True, threads=THREADS)


def _checks(report):
    return {c.name: c for c in report.checks}


def test_criterion_01_local_densities():
    t0 = time.time()
    ok = density.sigma(4).sigma == 8
    ok &= density.sigma(9).sigma == 27
    ok &= density.sigma(25).sigma == 45
    third = (Fraction(1) - Fraction(density.sigma(4).sigma, 16)) * (
        Fraction(1) - Fraction(density.sigma(9).sigma, 81)
    )
    ok &= third == Fraction(1, 3)
    bad = [
        p
        for p in arith.primes_up_to(100)
        if p > 3 and density.sigma(p * p).sigma != 2 * p * p - p
    ]
    ok &= not bad
    el = time.time() - t0
    ok &= el < 30
    _report(1, ok, f"sigma(4,9,25)=(8,27,45), 1/3 factor exact, sigma(p^2)=2p^2-p for 3<p<=100 ({el:.1f}s)")


def test_criterion_02_constant_agreement():
    t0 = time.time()
    e1 = density.euler_product(1, 10**5)
    e2 = density.euler_product(2, 10**5)
    w1, w2 = e1.hi - e1.lo, e2.hi - e2.lo
    ok = w1 < 1e-9 and w2 < 1e-9
    ok &= e1.lo <= e2.hi and e2.lo <= e1.hi
    ok &= all(density.per_prime_identity(p) for p in arith.primes_up_to(10**4) if p > 3)
    el = time.time() - t0
    ok &= el < 30
    _report(2, ok, f"C={e2.value:.12f}, widths=({w1:.2e},{w2:.2e}), per-prime identity p<=1e4 exact ({el:.1f}s)")


def test_criterion_03_expsum_identity_suite(expsum_report):
    ch = _checks(expsum_report)
    need = [
        "exptrans_exhaustive_l15",
        "explicit_E_vs_brute_l30",
        "gauss_f_vs_E0c_q50",
        "kloosterman_flip_exact_40",
        "lemma3_500_random",
        "crt_splits_100_frames",
    ]
    ok = all(ch[n].ok for n in need)
    dev = max(ch[n].deviation for n in need)
    _report(3, ok, f"exptrans/explicit-E/gauss_f/Kloosterman/Lemma3/CRT all pass, max dev {dev:.2e}")


def test_criterion_04_loxton_schmidt_bound(expsum_report):
    c = _checks(expsum_report)["loxton_1000_random_cubics"]
    _report(4, c.ok and c.deviation == 0, f"1000 random cubic phases Q<=500, violations={int(c.deviation)} ({c.detail})")


def test_criterion_05_poisson_two_sided():
    t0 = time.time()
    rep = suites.suite_poisson(0)
    ch = _checks(rep)
    ok = rep.ok
    el = time.time() - t0
    ok &= el < 120
    _report(
        5,
        ok,
        "selfdual<1e-10 "
        f"(dev {ch['gaussian_selfdual_1d'].deviation:.1e}), frames (l=5,X=2) rel "
        f"{ch['poisson_frame_l5_X2'].deviation:.1e}, (l=7,X=3) rel "
        f"{ch['poisson_frame_l7_X3'].deviation:.1e} ({el:.1f}s)",
    )


def test_criterion_06_oscillatory_integrals(oscint_report):
    ch = _checks(oscint_report)
    need = [
        "I_beta_to_0_gaussian_limit",
        "I1_vs_finite_difference",
        "G_zero_for_alpha_nonneg",
        "station_envelope_10x_median",
        "omega_decay_regime_below_1e-6",
    ]
    ok = all(ch[n].ok for n in need)
    _report(
        6,
        ok,
        f"Gaussian limit dev {ch['I_beta_to_0_gaussian_limit'].deviation:.1e}, FD dev "
        f"{ch['I1_vs_finite_difference'].deviation:.1e}, station max/median "
        f"{ch['station_envelope_10x_median'].deviation:.2f}, |Omega| decay regime "
        f"{ch['omega_decay_regime_below_1e-6'].deviation:.1e}",
    )


def test_criterion_07_characters():
    t0 = time.time()
    rep = suites.suite_characters(0)
    ch = _checks(rep)
    need = [
        "orthogonality_q60",
        "tau_primitive_sqrtq_200",
        "decomposition_identity_q20_r12",
    ]
    ok = all(ch[n].ok for n in need)
    el = time.time() - t0
    ok &= el < 180
    _report(
        7,
        ok,
        f"orthogonality q<=60, |tau|=sqrt(q) dev {ch['tau_primitive_sqrtq_200'].deviation:.1e}, "
        f"decomposition dev {ch['decomposition_identity_q20_r12'].deviation:.1e} ({el:.1f}s)",
    )


def test_criterion_08_counting(sieve_report):
    ch = _checks(sieve_report)
    need = [
        "oracle_equality_X_1234",
        "mobius_sieve_identity_X123",
        "exact_count_X1_is_4",
        "worker_determinism_1_4_16",
    ]
    ok = all(ch[n].ok for n in need)
    _report(
        8,
        ok,
        f"oracle equality X=1..4 exact, Mobius identity X<=3 exact, count(1)=4, "
        f"bit-identical over 1/4/16 workers ({ch['worker_determinism_1_4_16'].detail})",
    )


def test_criterion_09_main_term_trend(sieve_report):
    ch = _checks(sieve_report)
    ok = ch["main_term_trend_X6_vs_X3"].ok and ch["residual_over_X7_bounded"].ok
    _report(
        9,
        ok,
        f"{ch['main_term_trend_X6_vs_X3'].detail}; {ch['residual_over_X7_bounded'].detail}",
    )


def test_criterion_10_exponent_balancer():
    t0 = time.time()
    res = density.paper_balance()
    ok = res.exponent == Fraction(184, 27) == Fraction(7) - Fraction(5, 27)
    ok &= res.t == Fraction(124, 27) and res.kappa == Fraction(16, 31)
    ok &= res.grid_best >= 184 / 27 - 1e-6
    el = time.time() - t0
    ok &= el < 60
    _report(10, ok, f"preset paper -> 184/27 at (124/27, 16/31); grid floor {res.grid_best:.9f} ({el:.1f}s)")


def test_remaining_module_invariants(expsum_report, oscint_report, sieve_report):
    """Everything else the suites assert beyond the numbered criteria."""
    for rep in (
        expsum_report,
        oscint_report,
        sieve_report,
        suites.suite_arith(0),
    ):
        fail = rep.first_failure()
        assert fail is None, f"{rep.suite}.{fail.name}: {fail.detail}"
