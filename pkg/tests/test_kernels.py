import math

import pytest

from primesine import kernels
from primesine.ntheory import sieve


def test_selected_backend_is_known():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("m,modulus", [(0, 7), (10, 1), (100, 10**9 + 7), (500, 2 * 499), (60, 2**40 + 15)])
def test_mod_factorial(backend, m, modulus):
    assert backend.mod_factorial(m, modulus) == math.factorial(m) % modulus


def test_prime_terms_match_residue_formula(backend):
    primes = sieve(5000).primes(50)
    for a, b in [(1, 2), (1, 3), (5, 7), (3, 1), (11, 30)]:
        got = backend.prime_terms(primes, a, b)
        for p, t in zip(primes, got):
            m = a * math.factorial(p - 1) % (b * p)
            assert t == math.sin(math.pi * m / (b * p)) ** 2


def test_prime_terms_empty(backend):
    assert backend.prime_terms([], 1, 3) == []


def test_backends_bitwise_equal():
    from tests.conftest import BACKENDS

    primes = sieve(200_000).primes(1000)
    for a, b in [(1, 2), (2, 3), (7, 12), (1, 997)]:
        outs = [m.prime_terms(primes, a, b) for m in BACKENDS]
        assert all(o == outs[0] for o in outs)


def test_quad_solutions_agree(backend):
    from fractions import Fraction

    rs = [Fraction(math.factorial(k - 1), k) for k in range(1, 8)]
    scale = math.lcm(*range(1, 8))
    sols = backend.quad_solutions([int(q * scale) for q in rs])
    assert len(sols) == 578
    for sol in sols:
        assert sum(s * rs[k - 1] for k, s in zip(sol[:4], sol[4:])) == 0
