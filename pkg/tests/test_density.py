from fractions import Fraction

import pytest

from deltasieve import density as dn


def test_sigma_examples():
    assert dn.sigma(4).sigma == 8
    assert dn.sigma(9).sigma == 27
    assert dn.sigma(25).sigma == 45
    assert dn.sigma(1).sigma == 1
    assert dn.sigma(25).density == Fraction(45, 25**4)


def test_sigma_against_pair_loop():
    for q in (2, 3, 4, 6, 9, 12, 25, 49, 100):
        assert dn.sigma(q).sigma == dn.sigma_pair_bruteforce(q).sigma


def test_sigma_structured_path():
    for p in (5, 7, 11, 13, 31, 37, 101):
        s = dn.sigma_prime_square_structured(p).sigma
        assert s == 2 * p * p - p
        if p <= 100:
            assert s == dn.sigma(p * p).sigma
    with pytest.raises(ValueError):
        dn.sigma_prime_square_structured(3)


def test_sigma_multiplicative():
    for q1, q2 in ((4, 9), (4, 25), (9, 25), (8, 27), (5, 49)):
        assert dn.sigma(q1 * q2).sigma == dn.sigma(q1).sigma * dn.sigma(q2).sigma


def test_one_third_factor():
    f = (Fraction(1) - Fraction(dn.sigma(4).sigma, 16)) * (
        Fraction(1) - Fraction(dn.sigma(9).sigma, 81)
    )
    assert f == Fraction(1, 3)


def test_per_prime_identity():
    assert dn.per_prime_identity(5)
    lhs = (Fraction(1) - Fraction(5, 121)) * (Fraction(1) - Fraction(4, 125))
    assert lhs == Fraction(116, 125) == Fraction(1) - Fraction(9, 125)
    for p in (7, 11, 101, 9973):
        assert dn.per_prime_identity(p)


def test_euler_product_intervals():
    e1 = dn.euler_product(1, 10**4)
    e2 = dn.euler_product(2, 10**4)
    assert e1.lo <= e1.value <= e1.hi
    assert e1.hi - e1.lo < 1e-9
    assert e1.lo <= e2.hi and e2.lo <= e1.hi
    wide = dn.euler_product(2, 5)
    assert wide.lo <= e2.value <= wide.hi
    assert wide.hi - wide.lo > e2.hi - e2.lo
    with pytest.raises(ValueError):
        dn.euler_product(3, 100)
    with pytest.raises(ValueError):
        dn.euler_product(1, 3)


def test_mu_phi_series():
    s, prod, tail = dn.mu_phi_series(1, 10**4, 10**4)
    assert abs(s - prod) < 2e-4
    # every prime <= P dividing 6h: both sides collapse to 1
    s1, p1, _ = dn.mu_phi_series(105, 7, 100)
    assert p1 == 1.0
    assert abs(s1 - sum_series_check()) < 1e-12


def sum_series_check():
    # e coprime to 6*105 = 630, e <= 100: 11, 13, 17, ... mu phi / e^3
    import math

    from deltasieve.arith import euler_phi, mobius

    return sum(
        mobius(e) * euler_phi(e) / e**3
        for e in range(1, 101)
        if math.gcd(e, 630) == 1
    )


def test_balance_paper_point():
    res = dn.paper_balance()
    assert res.exponent == Fraction(184, 27)
    assert res.t == Fraction(124, 27) and res.kappa == Fraction(16, 31)
    assert res.grid_best >= 184 / 27 - 1e-6
    # the three active terms all equal 184/27 at the optimum
    vals = [t(dn.PAPER_T, dn.PAPER_KAPPA) for t in dn.paper_terms()]
    assert vals.count(Fraction(184, 27)) == 3
    assert max(vals) == Fraction(184, 27)


def test_balance_single_term():
    res = dn.balance_exponents([dn.ExponentTerm(Fraction(6))])
    assert res.exponent == 6


def test_balance_dropped_term_is_smaller():
    terms = dn.paper_terms()
    del terms[1]
    res = dn.balance_exponents(terms)
    assert res.grid_best < 184 / 27 - 0.5


def test_balance_empty_terms():
    with pytest.raises(ValueError):
        dn.balance_exponents([])
