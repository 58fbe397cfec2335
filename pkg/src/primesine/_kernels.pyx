# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see _pykernels for the reference semantics."""
from libc.math cimport sin, M_PI
from libc.stdint cimport int64_t, uint64_t

from array import array

from primesine import _pykernels

BACKEND = "cython"

# residue filters for quad_solutions; any moduli are sound since hits are
# re-verified with exact integers
cdef uint64_t Q1 = 2305843009213693951ULL   # 2**61 - 1
cdef uint64_t Q2 = 4611686018427387847ULL   # 2**62 - 57


def mod_factorial(m, modulus):
    if modulus >= 2 ** 32 or m >= 2 ** 62:
        return _pykernels.mod_factorial(m, modulus)
    cdef uint64_t md = modulus
    cdef uint64_t mm = m
    cdef uint64_t acc = 1 % md
    cdef uint64_t i = 2
    while i <= mm:
        acc = acc * (i % md) % md
        if acc == 0:
            return 0
        i += 1
    return acc


cdef int64_t _inverse(int64_t k, int64_t b):
    cdef int64_t r0 = b, r1 = k % b, t0 = 0, t1 = 1, q, tmp
    while r1 != 0:
        q = r0 // r1
        tmp = r0 - q * r1
        r0 = r1
        r1 = tmp
        tmp = t0 - q * t1
        t0 = t1
        t1 = tmp
    if t0 < 0:
        t0 += b
    return t0


def prime_terms(primes, a, b):
    cdef Py_ssize_t n = len(primes)
    if n == 0:
        return []
    if b * max(primes) >= 2 ** 32 or a >= 2 ** 62:
        return _pykernels.prime_terms(primes, a, b)
    cdef int64_t[:] ps = array("q", primes)
    cdef double[:] out = array("d", bytes(8 * n))
    cdef int64_t bb = b
    cdef uint64_t aa, big_n, r, u
    cdef double s
    cdef Py_ssize_t i
    for i in range(n):
        big_n = <uint64_t>(bb * ps[i])
        aa = (<uint64_t>a) % big_n
        if bb > 1:
            u = <uint64_t>_inverse(ps[i], bb)
            r = aa * (<uint64_t>ps[i] * u - 1) % big_n
        else:
            r = (big_n - aa) % big_n
        s = sin(M_PI * <double>r / <double>big_n)
        out[i] = s * s
    return list(out)


def quad_solutions(values):
    cdef Py_ssize_t n = len(values)
    cdef Py_ssize_t m = 2 * n
    cdef uint64_t[:] h1 = array("Q", bytes(8 * m))
    cdef uint64_t[:] h2 = array("Q", bytes(8 * m))
    signed = []
    for k, v in enumerate(values, start=1):
        signed.append((k, 1, v))
        signed.append((k, -1, -v))
    cdef Py_ssize_t i
    for i in range(m):
        h1[i] = signed[i][2] % Q1
        h2[i] = signed[i][2] % Q2
    cdef Py_ssize_t i1, i2, i3, i4
    cdef uint64_t a2, b2, a3, b3
    hits = []
    for i1 in range(m):
        for i2 in range(m):
            a2 = (h1[i1] + h1[i2]) % Q1
            b2 = (h2[i1] + h2[i2]) % Q2
            for i3 in range(m):
                a3 = (a2 + h1[i3]) % Q1
                b3 = (b2 + h2[i3]) % Q2
                for i4 in range(m):
                    if (a3 + h1[i4]) % Q1 == 0 and (b3 + h2[i4]) % Q2 == 0:
                        hits.append((i1, i2, i3, i4))
    found = []
    for i1, i2, i3, i4 in hits:
        e = (signed[i1], signed[i2], signed[i3], signed[i4])
        if e[0][2] + e[1][2] + e[2][2] + e[3][2] == 0:
            found.append((e[0][0], e[1][0], e[2][0], e[3][0],
                          e[0][1], e[1][1], e[2][1], e[3][1]))
    return found
