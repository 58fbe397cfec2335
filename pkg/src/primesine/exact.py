"""Exact evaluation of s(n, x) = sum_{k<=n} sin^2(x (k-1)!/k) at x = a*pi/b.

Each term's argument is reduced in integer arithmetic before the single
floating-point sine, so no precision is lost however large (k-1)! grows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import compress
from typing import Any

from primesine import kernels
from primesine.errors import InvalidArgument, OutOfFastPath, PrecisionAmbiguity
from primesine.ntheory import PrimeTable, k0_for_b, mobius, mod_factorial, sieve, totient

# per-term rounding is a single sin^2 of a double; n * 2**-50 dominates it
SUM_ERROR_PER_TERM = 2.0**-50


@dataclass(frozen=True)
class RationalAngle:
    """x = a*pi/b with gcd(|a|, b) == 1 and b >= 1."""

    a: int
    b: int

    def __post_init__(self):
        if self.b < 1:
            raise InvalidArgument(f"denominator must be >= 1, got {self.b}")
        if math.gcd(abs(self.a), self.b) != 1:
            raise InvalidArgument(f"{self.a}/{self.b} is not reduced")

    @classmethod
    def reduced(cls, a: int, b: int) -> RationalAngle:
        if b == 0:
            raise InvalidArgument("denominator must be nonzero")
        if b < 0:
            a, b = -a, -b
        g = math.gcd(abs(a), b)
        return cls(a // g, b // g)

    def __str__(self):
        return f"{self.a}*pi/{self.b}"


HALF_PI = RationalAngle(1, 2)


@dataclass(frozen=True)
class SeriesResult:
    n: int
    angle: Any
    value: float
    error_bound: float
    terms: tuple[float, ...] | None = None


def r(k: int) -> Fraction:
    """(k-1)!/k in lowest terms."""
    if k < 1:
        raise InvalidArgument(f"k must be >= 1, got {k}")
    return Fraction(math.factorial(k - 1), k)


def _sin2_residue(m: int, modulus: int) -> float:
    s = math.sin(math.pi * m / modulus)
    return s * s


def term_rational(k: int, angle: RationalAngle) -> float:
    """sin^2(pi * m / (b k)) with m = a (k-1)! mod b k."""
    if k < 1:
        raise InvalidArgument(f"k must be >= 1, got {k}")
    modulus = angle.b * k
    m = abs(angle.a) * mod_factorial(k - 1, modulus) % modulus
    return _sin2_residue(m, modulus)


def term_rational_fast(k: int, angle: RationalAngle, table: PrimeTable, k0: int) -> float:
    """Closed-form term valid for k > k0: zero at composites, Wilson residue at primes."""
    if k <= k0:
        raise OutOfFastPath(f"k={k} is not beyond k0={k0}")
    if table.limit < k:
        raise InvalidArgument(f"prime table limit {table.limit} < k={k}")
    if not table.is_prime(k):
        return 0.0
    return kernels.prime_terms([k], abs(angle.a), angle.b)[0]


@lru_cache(maxsize=None)
def _k0(b: int) -> int:
    return k0_for_b(b)


def _neumaier(values) -> float:
    total = 0.0
    comp = 0.0
    for v in values:
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def _dense_terms(n: int, angle: RationalAngle, fast: bool, table: PrimeTable | None) -> list[float]:
    terms = [0.0] * n
    k0 = _k0(angle.b) if fast else n
    for k in range(1, min(k0, n) + 1):
        terms[k - 1] = term_rational(k, angle)
    if n > k0:
        if table is None or table.limit < n:
            table = sieve(n)
        primes = list(compress(range(k0 + 1, n + 1), table.flags[k0 + 1 : n + 1]))
        for p, t in zip(primes, kernels.prime_terms(primes, abs(angle.a), angle.b)):
            terms[p - 1] = t
    return terms


def s_rational(
    n: int,
    angle: RationalAngle,
    *,
    trace: bool = False,
    fast: bool = True,
    table: PrimeTable | None = None,
) -> SeriesResult:
    """s(n, a*pi/b); closed form beyond k0 when ``fast``, modular factorials otherwise."""
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    terms = _dense_terms(n, angle, fast, table)
    value = _neumaier(t for t in terms if t)
    return SeriesResult(
        n=n,
        angle=angle,
        value=value,
        error_bound=n * SUM_ERROR_PER_TERM,
        terms=tuple(terms) if trace else None,
    )


def partial_sums(n: int, angle: RationalAngle, table: PrimeTable | None = None) -> list[float]:
    """[s(1, x), ..., s(n, x)] from one compensated running sum."""
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    out = []
    total = comp = 0.0
    for v in _dense_terms(n, angle, True, table):
        if v:
            t = total + v
            if abs(total) >= abs(v):
                comp += (total - t) + v
            else:
                comp += (v - t) + total
            total = t
        out.append(total + comp)
    return out


def _floor_checked(value: float, bound: float) -> int:
    if abs(value - round(value)) <= bound:
        raise PrecisionAmbiguity(f"s = {value!r} is within {bound:.3g} of an integer")
    return math.floor(value)


def pi_from_formula(n: int, table: PrimeTable | None = None) -> int:
    """Prime count as the integer part of s(n, pi/2)."""
    if n < 2:
        raise InvalidArgument(f"n must be >= 2, got {n}")
    res = s_rational(n, HALF_PI, table=table)
    return _floor_checked(res.value, res.error_bound)


def delta(n: int, table: PrimeTable | None = None) -> float:
    """s(n, pi/2) - Pi(n)."""
    if n < 2:
        raise InvalidArgument(f"n must be >= 2, got {n}")
    if table is None or table.limit < n:
        table = sieve(n)
    return s_rational(n, HALF_PI, table=table).value - table.pi(n)


def delta_table(nmax: int) -> list[tuple[int, float]]:
    """(n, delta(n)) for 2 <= n <= nmax."""
    if nmax < 2:
        raise InvalidArgument(f"nmax must be >= 2, got {nmax}")
    table = sieve(nmax)
    sums = partial_sums(nmax, HALF_PI, table)
    return [(n, sums[n - 1] - table.pi(n)) for n in range(2, nmax + 1)]


def predicted_ratio(b: int) -> Fraction:
    """1/2 - mu(b) / (2 phi(b))."""
    if b < 1:
        raise InvalidArgument(f"b must be >= 1, got {b}")
    return Fraction(1, 2) - Fraction(mobius(b), 2 * totient(b))


def character_sum_ratio(b: int) -> float:
    """Mean of sin^2(pi v / b) over units v mod b."""
    if b < 2:
        raise InvalidArgument(f"b must be >= 2, got {b}")
    units = [v for v in range(1, b) if math.gcd(v, b) == 1]
    return math.fsum(_sin2_residue(v, b) for v in units) / len(units)
