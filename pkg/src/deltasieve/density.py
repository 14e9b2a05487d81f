"""Local densities sigma(q), the two Euler-product constants, the per-prime
collapse identity, and the final exponent balancer.

sigma(q) counts pairs (alpha, beta) mod q with 4 alpha^3 + 27 beta^2 = 0
(mod q).  For primes p > 3 the verified closed form is
sigma(p^2) = 2 p^2 - p, which makes the two main-term constants

    prod_p (1 - sigma(p^2)/p^4)   and   (1/3) prod_{p>3} (1 - (2p-1)/p^3)

equal (the p = 2, 3 factors contribute exactly 1/3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .arith import is_prime, mobius_table, phi_table, primes_up_to

SIGMA_CAP = 10**4
SIGMA_STRUCTURED_CAP = 500


@dataclass(frozen=True)
class LocalDensity:
    q: int
    sigma: int

    @property
    def density(self) -> Fraction:
        return Fraction(self.sigma, self.q**4)


def sigma(q: int) -> LocalDensity:
    """Exact count of (alpha, beta) mod q with 4 alpha^3 + 27 beta^2 = 0 (mod q).

    Enumerates all q^2 pairs, grouped by the value of 27 beta^2 mod q.
    """
    if q < 1 or q > SIGMA_CAP:
        raise ValueError(f"q out of range [1, {SIGMA_CAP}]")
    b = np.arange(q, dtype=np.int64)
    counts = np.bincount(27 * (b * b % q) % q, minlength=q)
    a3 = (-4 * (b * b % q * b % q)) % q
    return LocalDensity(q, int(counts[a3].sum()))


def sigma_pair_bruteforce(q: int) -> LocalDensity:
    """Literal double loop over (alpha, beta) mod q; oracle for sigma()."""
    if q > 1000:
        raise ValueError("pair-loop oracle capped at q = 1000")
    n = 0
    for a in range(q):
        for b in range(q):
            if (4 * a**3 + 27 * b**2) % q == 0:
                n += 1
    return LocalDensity(q, n)


def sigma_prime_square_structured(p: int) -> LocalDensity:
    """sigma(p^2) for p > 3 via the unit/cubic-residue structure.

    Pairs with p | alpha, p | beta all satisfy the congruence (p^2 of them);
    mixed pairs never do; unit pairs are counted per unit beta by the
    number of cube roots of -27 * inv(4) * beta^2 mod p^2 (cubing is a
    bijection for p = 2 mod 3, an Euler cube test for p = 1 mod 3).
    """
    if p <= 3 or p > SIGMA_STRUCTURED_CAP or not is_prime(p):
        raise ValueError(f"need a prime 3 < p <= {SIGMA_STRUCTURED_CAP}")
    p2 = p * p
    phi = p2 - p
    if p % 3 == 2:
        unit_pairs = phi
    else:
        c0 = -27 * pow(4, -1, p2) % p2
        exp = phi // 3
        unit_pairs = 0
        for beta in range(1, p2):
            if beta % p == 0:
                continue
            t = c0 * (beta * beta % p2) % p2
            if pow(t, exp, p2) == 1:
                unit_pairs += 3
    return LocalDensity(p2, p2 + unit_pairs)


def sigma_prime_square(p: int) -> int:
    """sigma(p^2) routed by size: enumeration for p <= 100, structure beyond."""
    if p <= 100:
        return sigma(p * p).sigma
    return sigma_prime_square_structured(p).sigma


def per_prime_identity(p: int) -> bool:
    """(1 - p/(p^3-p+1)) (1 - (p-1)/p^3) = 1 - (2p-1)/p^3, exactly."""
    if p <= 3:
        raise ValueError("identity is for primes p > 3")
    lhs = (Fraction(1) - Fraction(p, p**3 - p + 1)) * (
        Fraction(1) - Fraction(p - 1, p**3)
    )
    return lhs == Fraction(1) - Fraction(2 * p - 1, p**3)


# ---------------------------------------------------------------------------
# Euler products


@dataclass(frozen=True)
class EulerProductResult:
    theorem: int
    prime_bound: int
    partial: float  # product over p <= prime_bound only
    value: float  # partial times the tail factor
    tail_bound: float  # half-width of the certified interval around value
    lo: float
    hi: float


def _tail_log_interval(P: int, dps: int) -> tuple[mp.mpf, mp.mpf]:
    """[lo, hi] enclosing -log prod_{p > P} (1 - (2p-1)/p^3).

    The first-order part 2 Z(2) - Z(3) (Z(s) = prime zeta tail past P) is
    computed to working precision; the remainder sum of x^2/2/(1-x) terms
    is enclosed by 0 and an integral bound.
    """
    z2 = mp.primezeta(2)
    z3 = mp.primezeta(3)
    for p in primes_up_to(P):
        z2 -= mp.mpf(1) / (p * p)
        z3 -= mp.mpf(1) / (p * p * p)
    main = 2 * z2 - z3
    # x_p = (2p-1)/p^3 < 2/p^2; sum_{p>P} x_p^2 / (2 (1-x_p)) <= 2.2 sum p^-4
    rem_hi = mp.mpf("2.2") * (mp.mpf(1) / (3 * P**3) + mp.mpf(P) ** -4)
    slack = mp.mpf(10) ** (5 - dps)
    return main - slack, main + rem_hi + slack


def euler_product(theorem: int, prime_bound: int, dps: int = 30) -> EulerProductResult:
    """The main-term constant as a certified interval.

    theorem 1: prod_{p <= P} (1 - sigma(p^2)/p^4), sigma by enumeration for
    p <= min(P, 100) and by the verified 2p^2 - p beyond.
    theorem 2: (1/3) prod_{3 < p <= P} (1 - (2p-1)/p^3).
    Both are completed by the same p > P tail factor.
    """
    if theorem not in (1, 2):
        raise ValueError("theorem must be 1 or 2")
    if prime_bound < 5:
        raise ValueError("prime bound must be >= 5")
    with mp.workdps(dps + 15):
        partial = mp.mpf(1) / 3 if theorem == 2 else mp.mpf(1)
        for p in primes_up_to(prime_bound):
            if theorem == 1:
                if p <= 100:
                    s = sigma(p * p).sigma
                else:
                    s = 2 * p * p - p
                partial *= 1 - mp.mpf(s) / mp.mpf(p) ** 4
            elif p > 3:
                partial *= 1 - mp.mpf(2 * p - 1) / mp.mpf(p) ** 3
        log_lo, log_hi = _tail_log_interval(prime_bound, dps)
        hi = partial * mp.e ** (-log_lo)
        lo = partial * mp.e ** (-log_hi)
        value = (lo + hi) / 2
        return EulerProductResult(
            theorem,
            prime_bound,
            float(partial),
            float(value),
            float((hi - lo) / 2),
            float(lo),
            float(hi),
        )


def mu_phi_series(h: int, P: int, T: int) -> tuple[float, float, float]:
    """(series, product, tail_bound) for sum_{(e,6h)=1} mu(e) phi(e) / e^3.

    series: truncated at e <= T; product: prod_{p <= P, p not | 6h}
    (1 - (p-1)/p^3); tail_bound: sum_{e > T} e^-2 < 1/T plus the product
    deficit past P.
    """
    if T > 10**7:
        raise ValueError("T cap is 10^7")
    mu = mobius_table(T).astype(np.float64)
    phi = phi_table(T).astype(np.float64)
    e = np.arange(T + 1, dtype=np.float64)
    e[0] = 1.0
    keep = np.gcd(np.arange(T + 1, dtype=np.int64), 6 * h) == 1
    terms = np.where(keep, mu * phi / e**3, 0.0)
    series = float(np.sum(terms[1:]))
    product = 1.0
    for p in primes_up_to(P):
        if (6 * h) % p != 0:
            product *= 1.0 - (p - 1) / p**3
    tail = 1.0 / T + 2.0 / P
    return series, product, tail


# ---------------------------------------------------------------------------
# exponent balancing


@dataclass(frozen=True)
class ExponentTerm:
    """e(t, kappa) = const + ct * t + ck * kappa + ctk * t * kappa, exact."""

    const: Fraction
    ct: Fraction = Fraction(0)
    ck: Fraction = Fraction(0)
    ctk: Fraction = Fraction(0)

    def __call__(self, t: Fraction, kappa: Fraction) -> Fraction:
        return self.const + self.ct * t + self.ck * kappa + self.ctk * t * kappa

    def as_floats(self) -> tuple[float, float, float, float]:
        return float(self.const), float(self.ct), float(self.ck), float(self.ctk)


def paper_terms() -> list[ExponentTerm]:
    """The seven competing error exponents in X (with xi = X^t):

    6, 16 - 2t, 10 - t, 4 + t(1-kappa)/2, t(2-kappa),
    t(11/6 + kappa/6) - 2, 2t - 8/3.
    """
    F = Fraction
    return [
        ExponentTerm(F(6)),
        ExponentTerm(F(16), F(-2)),
        ExponentTerm(F(10), F(-1)),
        ExponentTerm(F(4), F(1, 2), F(0), F(-1, 2)),
        ExponentTerm(F(0), F(2), F(0), F(-1)),
        ExponentTerm(F(-2), F(11, 6), F(0), F(1, 6)),
        ExponentTerm(F(-8, 3), F(2)),
    ]


PAPER_T = Fraction(124, 27)
PAPER_KAPPA = Fraction(16, 31)
PAPER_EXPONENT = Fraction(184, 27)  # = 7 - 5/27


@dataclass(frozen=True)
class BalanceResult:
    t: Fraction
    kappa: Fraction
    exponent: Fraction
    grid_best: float
    grid_t: float
    grid_kappa: float


def evaluate_max(terms: list[ExponentTerm], t: Fraction, kappa: Fraction) -> Fraction:
    return max(term(t, kappa) for term in terms)


def balance_exponents(
    terms: list[ExponentTerm] | None = None,
    t_max: Fraction = Fraction(10),
    grid_step: Fraction = Fraction(1, 1000),
    start: tuple[Fraction, Fraction] | None = None,
) -> BalanceResult:
    """Minimax of max_i e_i(t, kappa) over 0 < t <= t_max, 0 < kappa < 1.

    A float grid at ``grid_step`` locates the minimum; the winner (and the
    analytic point, when given as ``start``) is re-evaluated exactly in
    rational arithmetic.
    """
    terms = terms if terms is not None else paper_terms()
    if not terms:
        raise ValueError("need at least one term")
    step = float(grid_step)
    ts = np.arange(step, float(t_max) + step / 2, step)
    ks = np.arange(step, 1.0, step)
    best = np.full(ts.shape, np.inf)
    best_k = np.zeros(ts.shape)
    # sweep kappa; keep the best kappa per t (memory stays O(grid))
    consts = [term.as_floats() for term in terms]
    for k in ks:
        cur = np.full(ts.shape, -np.inf)
        for c0, ct, ck, ctk in consts:
            np.maximum(cur, c0 + ct * ts + ck * k + ctk * ts * k, out=cur)
        better = cur < best
        best[better] = cur[better]
        best_k[better] = k
    i = int(np.argmin(best))
    grid_best, grid_t, grid_kappa = float(best[i]), float(ts[i]), float(best_k[i])
    if start is not None:
        t0, k0 = start
    else:
        t0 = Fraction(round(grid_t / step)) * grid_step
        k0 = Fraction(round(grid_kappa / step)) * grid_step
    exact = evaluate_max(terms, t0, k0)
    return BalanceResult(t0, k0, exact, grid_best, grid_t, grid_kappa)


def paper_balance() -> BalanceResult:
    """The paper preset: exact minimax at (t, kappa) = (124/27, 16/31)."""
    return balance_exponents(start=(PAPER_T, PAPER_KAPPA))
