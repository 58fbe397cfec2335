"""Pure-Python hot loops.

Same contract as the compiled ``_kernels`` module; selected by
:mod:`primesine.kernels` when the extension is unavailable.
"""
import math

BACKEND = "python"


def mod_factorial(m, modulus):
    if modulus == 1:
        return 0
    acc = 1
    for i in range(2, m + 1):
        acc = acc * i % modulus
        if acc == 0:
            return 0
    return acc


def prime_terms(primes, a, b):
    # a >= 0; every p coprime to b
    out = []
    for p in primes:
        n = b * p
        u = pow(p, -1, b) if b > 1 else 0
        r = (a * (p * u - 1)) % n
        s = math.sin(math.pi * r / n)
        out.append(s * s)
    return out


def quad_solutions(values):
    """All (k1..k4, s1..s4) with sum s_i * values[k_i - 1] == 0.

    ``values`` are exact integers; tuples come out in lexicographic order
    over (k, s) pairs with s = +1 before -1.
    """
    signed = []
    for k, v in enumerate(values, start=1):
        signed.append((k, 1, v))
        signed.append((k, -1, -v))
    found = []
    for k1, s1, v1 in signed:
        for k2, s2, v2 in signed:
            t2 = v1 + v2
            for k3, s3, v3 in signed:
                t3 = t2 + v3
                for k4, s4, v4 in signed:
                    if t3 + v4 == 0:
                        found.append((k1, k2, k3, k4, s1, s2, s3, s4))
    return found
