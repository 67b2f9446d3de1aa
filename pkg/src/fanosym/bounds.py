"""Primes above n+1, Sylow subgroups of S_k, and the quadratic bound on k."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

# Deterministic Miller-Rabin: the first 13 primes as witnesses are correct for
# every n < 3.317e24 (Sorenson and Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981
PRIME_CAP = 10**12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError("outside the deterministic Miller-Rabin range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def smallest_prime_above(x: int) -> int:
    """Least prime strictly greater than x."""
    if not 1 <= x <= PRIME_CAP:
        raise ValueError(f"x must lie in [1, {PRIME_CAP}]")
    q = x + 1
    while not is_prime(q):
        q += 1
    return q


@dataclass(frozen=True)
class SylowShape:
    """Sylow p-subgroup of S_k as a product of W_p(i)^count."""

    p: int
    k: int
    factors: tuple[tuple[int, int], ...]  # (i, count), i >= 1, nonzero counts only

    def valuation(self) -> int:
        return sum(c * (self.p**i - 1) // (self.p - 1) for i, c in self.factors)

    def nonabelian(self) -> dict[int, bool]:
        # W_p(1) is cyclic of order p; iterated wreath products are not abelian
        return {i: i >= 2 for i, _ in self.factors}

    def abelian_rank(self) -> int:
        """Copies of Z/p coming from W_p(1) factors."""
        return dict(self.factors).get(1, 0)

    def describe(self) -> str:
        return " x ".join(f"W_{self.p}({i})^{c}" for i, c in self.factors) or "trivial"


def base_digits(k: int, p: int) -> list[int]:
    """Digits of k in base p, least significant first."""
    out = []
    while k:
        k, r = divmod(k, p)
        out.append(r)
    return out


def legendre(k: int, p: int) -> int:
    v, q = 0, p
    while q <= k:
        v += k // q
        q *= p
    return v


def sylow_structure(k: int, p: int) -> SylowShape:
    if k < 1:
        raise ValueError("k must be positive")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    digits = base_digits(k, p)
    # digit i counts blocks of size p^i; blocks of size 1 contribute nothing
    factors = tuple((i, c) for i, c in enumerate(digits) if i >= 1 and c)
    return SylowShape(p, k, factors)


def jordan_quadratic_bound(n: int) -> int:
    """Upper bound p_n (n+1) - 1 on k, p_n the least prime above n+1."""
    if n < 1:
        raise ValueError("n must be positive")
    return smallest_prime_above(n + 1) * (n + 1) - 1


def asymptotic_ratio_check(n: int) -> Fraction:
    return Fraction(jordan_quadratic_bound(n), (n + 1) ** 2)


def trigger_holds(n: int, k: int) -> bool:
    """For k >= p(n+1) the Sylow p-subgroup of S_k has a W_p(i), i >= 2, or (Z/p)^(n+1)."""
    p = smallest_prime_above(n + 1)
    s = sylow_structure(k, p)
    return any(i >= 2 for i, _ in s.factors) or s.abelian_rank() >= n + 1


DUSART_THRESHOLD = 468991632


def dusart_comparison(n: int, prec: int = 80) -> bool | None:
    """Is jordan_quadratic_bound(n)/(n+1)^2 < 1 + 1/(5000 ln^2(n+1))?

    The logarithm is evaluated in outward-rounded interval arithmetic; the
    answer is None when the interval straddles the ratio.
    """
    if n < 1:
        raise ValueError("n must be positive")
    ratio = asymptotic_ratio_check(n)
    iv = mpmath.iv
    saved = iv.prec  # the interval context keeps its own precision
    iv.prec = prec
    try:
        lg = iv.log(iv.mpf(n + 1))
        rhs = 1 + 1 / (5000 * lg * lg)
        r = iv.mpf(ratio.numerator) / iv.mpf(ratio.denominator)
        if r.b < rhs.a:
            return True
        if r.a >= rhs.b:
            return False
        return None
    finally:
        iv.prec = saved
