"""Sieve, arithmetic functions, valuations and modular helpers."""
from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from itertools import accumulate

from primesine import kernels
from primesine.errors import InvalidArgument, NotInvertible


@dataclass(frozen=True)
class PrimeTable:
    """Primality flags and cumulative prime counts for 0..limit."""

    limit: int
    flags: bytes
    cumulative: array

    def is_prime(self, m: int) -> bool:
        return bool(self.flags[m])

    def pi(self, m: int) -> int:
        """Number of primes <= m."""
        if m < 0:
            return 0
        if m > self.limit:
            raise InvalidArgument(f"{m} exceeds sieve limit {self.limit}")
        return self.cumulative[m]

    def primes(self, lo: int = 2, hi: int | None = None) -> list[int]:
        """Primes p with lo <= p <= hi (hi defaults to the limit)."""
        hi = self.limit if hi is None else min(hi, self.limit)
        lo = max(lo, 2)
        flags = self.flags
        return [p for p in range(lo, hi + 1) if flags[p]]


def sieve(limit: int) -> PrimeTable:
    if limit < 2:
        raise InvalidArgument(f"sieve limit must be >= 2, got {limit}")
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    cumulative = array("l", accumulate(flags))
    return PrimeTable(limit, bytes(flags), cumulative)


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    for d in range(3, math.isqrt(m) + 1, 2):
        if m % d == 0:
            return False
    return True


def factorize(b: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization as increasing (prime, exponent) pairs."""
    if b < 1:
        raise InvalidArgument(f"cannot factor {b}")
    pairs = []
    d = 2
    while d * d <= b:
        if b % d == 0:
            e = 0
            while b % d == 0:
                b //= d
                e += 1
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if b > 1:
        pairs.append((b, 1))
    return tuple(pairs)


def mobius(b: int) -> int:
    if b < 1:
        raise InvalidArgument(f"mobius undefined for {b}")
    pairs = factorize(b)
    if any(e > 1 for _, e in pairs):
        return 0
    return -1 if len(pairs) % 2 else 1


def totient(b: int) -> int:
    if b < 1:
        raise InvalidArgument(f"totient undefined for {b}")
    result = b
    for p, _ in factorize(b):
        result -= result // p
    return result


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidArgument(f"{p} is not prime")


def _valuation(m: int, p: int) -> int:
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def legendre(m: int, p: int) -> int:
    """v_p(m!) by Legendre's sum."""
    total, q = 0, p
    while q <= m:
        total += m // q
        q *= p
    return total


def vp_exact(k: int, p: int) -> int:
    """Signed p-adic valuation of (k-1)!/k."""
    _require_prime(p)
    if k < 1:
        raise InvalidArgument(f"k must be >= 1, got {k}")
    return legendre(k - 1, p) - _valuation(k, p)


def vp_legendre_lower_bound(k: int, p: int) -> int:
    """Lower bound sum_l floor((k-1)/p^l) - floor(log_p k) for v_p((k-1)!/k)."""
    _require_prime(p)
    if k < 2:
        raise InvalidArgument(f"k must be >= 2, got {k}")
    log_floor, q = 0, p
    while q <= k:
        log_floor += 1
        q *= p
    return legendre(k - 1, p) - log_floor


def k0_for_b(b: int) -> int:
    """Least k0 >= 4 beyond which (k-1)!/k is divisible by b.

    Scans upward and stops after a run of 2*p*(v_p(b)+2) consecutive passes
    (maximised over p | b); k0 is the last failing k, floored at 4.
    """
    if b < 1:
        raise InvalidArgument(f"b must be >= 1, got {b}")
    pairs = factorize(b)
    if not pairs:
        return 4
    window = max(2 * p * (e + 2) for p, e in pairs)
    last_fail, run, k = 1, 0, 2
    while run < window:
        if all(legendre(k - 1, p) - _valuation(k, p) >= e for p, e in pairs):
            run += 1
        else:
            last_fail, run = k, 0
        k += 1
    return max(4, last_fail)


def mod_factorial(m: int, modulus: int) -> int:
    """m! mod modulus."""
    if modulus < 1:
        raise InvalidArgument(f"modulus must be >= 1, got {modulus}")
    if m < 0:
        raise InvalidArgument(f"m must be >= 0, got {m}")
    return kernels.mod_factorial(m, modulus)


def mod_inverse(k: int, b: int) -> int:
    if b < 2:
        raise InvalidArgument(f"modulus must be >= 2, got {b}")
    if math.gcd(k, b) != 1:
        raise NotInvertible(f"{k} is not invertible modulo {b}")
    return pow(k, -1, b)
