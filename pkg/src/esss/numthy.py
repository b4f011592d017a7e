"""Two-adic number theory used by every order computation in the engine.

All arithmetic is exact: big integers and Fractions only.  The dyadic
valuation of 0 is represented by the dedicated sentinel NU_INFINITY, never
by a large integer, so torsion-order arithmetic cannot silently overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb


class _Infinity:
    """Order-absorbing sentinel for nu2(0) and for the modulus of HZ."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NU_INFINITY"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("NU_INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


NU_INFINITY = _Infinity()

# Valuations are either a nonnegative int or the sentinel.
Valuation = "int | _Infinity"


def nu2(n: int) -> int:
    """Largest e with 2^e | n, for n >= 1."""
    if n < 1:
        raise ValueError(f"nu2 requires n >= 1, got {n}; use nu2_or_infinity for n = 0")
    return (n & -n).bit_length() - 1


def nu2_or_infinity(n: int):
    """nu2 extended by nu2(0) = NU_INFINITY."""
    if n == 0:
        return NU_INFINITY
    return nu2(abs(n))


def vmin(a, b):
    """Minimum of two valuations, either of which may be NU_INFINITY."""
    if isinstance(a, _Infinity):
        return b
    if isinstance(b, _Infinity):
        return a
    return min(a, b)


def _is_odd_prime_power(q: int) -> bool:
    if q < 3 or q % 2 == 0:
        return False
    # strip the smallest prime factor repeatedly
    p = None
    for cand in range(3, q + 1, 2):
        if q % cand == 0:
            p = cand
            break
    if p is None:
        return False
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class OddPrimePower:
    """An odd prime power q >= 3; carries its residue class mod 4."""

    q: int

    def __post_init__(self):
        if not _is_odd_prime_power(self.q):
            raise ValueError(f"{self.q} is not an odd prime power >= 3")

    @property
    def residue(self) -> int:
        return self.q % 4


def s_q(q: "OddPrimePower | int", i: int) -> int:
    """The torsion-exponent function for finite-field integral coefficients.

    For q = 1 mod 4 this is nu2(q-1) + nu2(i+1); for q = 3 mod 4 it is 1 on
    even i and nu2(q^2-1) + nu2(i+1) - 1 on odd i.  Defined for i >= 0; for
    i = -1 the value is NU_INFINITY (nu2(0) convention), which is what the
    mod-2^n coefficient formulas need at the top of a tau-tower.
    """
    if isinstance(q, OddPrimePower):
        q = q.q
    elif not _is_odd_prime_power(q):
        raise ValueError(f"{q} is not an odd prime power >= 3")
    if i < -1:
        raise ValueError(f"s_q is defined for i >= -1, got {i}")
    if i == -1:
        return NU_INFINITY
    if q % 4 == 1:
        return nu2(q - 1) + nu2(i + 1)
    if i % 2 == 0:
        return 1
    return nu2(q * q - 1) + nu2(i + 1) - 1


@lru_cache(maxsize=None)
def a_q(c: int) -> int:
    """nu2(3^c - 1) for c >= 1, the torsion order of the top slice cell."""
    if c < 1:
        raise ValueError(f"a_q requires c >= 1, got {c}")
    return nu2(pow(3, c) - 1)


@lru_cache(maxsize=None)
def _bernoulli_even(k: int) -> Fraction:
    """B_{2k} as an exact Fraction, via the binomial recurrence on even indices."""
    if k == 0:
        return Fraction(1)
    acc = Fraction(2 * k + 1, -2)  # the B_1 = -1/2 term of the recurrence
    for j in range(k):
        acc += comb(2 * k + 1, 2 * j) * _bernoulli_even(j)
    return -acc / (2 * k + 1)


def bernoulli_even(k: int) -> Fraction:
    """B_{2k} as an exact Fraction, k >= 0."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return _bernoulli_even(k)


def bernoulli_denom_two_part(k: int) -> int:
    """The exact power of 2 dividing denom(B_{2k} / 4k), k >= 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    d = (bernoulli_even(k) / (4 * k)).denominator
    return 1 << nu2(d)


def _primes_up_to(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [p for p in range(2, n + 1) if sieve[p]]


def von_staudt_clausen_denom(k: int) -> int:
    """Denominator of B_{2k}: the product of primes p with (p-1) | 2k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    d = 1
    for p in _primes_up_to(2 * k + 1):
        if (2 * k) % (p - 1) == 0:
            d *= p
    return d


def bernoulli_denom_two_part_vsc(k: int) -> int:
    """2-part of denom(B_{2k}/4k) from the von Staudt-Clausen denominator.

    denom(B_{2k}) is squarefree and even, so the numerator of B_{2k} is odd
    and the 2-part of denom(B_{2k}/4k) is 2^(1 + nu2(4k)).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    assert von_staudt_clausen_denom(k) % 2 == 0
    return 1 << (1 + nu2(4 * k))
