"""Compare the compiled and pure-Python kernels on the workloads that use them.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import math
import time
from fractions import Fraction

from primesine import _pykernels
from primesine.ntheory import sieve

try:
    from primesine import _kernels
except ImportError:
    _kernels = None


def slow_path(mod):
    # modular factorials behind s(n, x) for every k <= 2000 at b = 7
    for k in range(1, 2001):
        mod.mod_factorial(k - 1, 7 * k)


def make_prime_path():
    primes = sieve(10**6).primes(20)

    def run(mod):
        mod.prime_terms(primes, 1, 7)

    return run


def make_quadruples(n):
    scale = math.lcm(*range(1, n + 1))
    values = [int(Fraction(math.factorial(k - 1), k) * scale) for k in range(1, n + 1)]

    def run(mod):
        mod.quad_solutions(values)

    return run


def best_of(fn, mod, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(mod)
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    cases = [
        ("mod_factorial, k<=2000, modulus 7k", slow_path),
        ("prime_terms, 78k primes <= 1e6, b=7", make_prime_path()),
        ("quad_solutions, n=24 (5.3M tuples)", make_quadruples(24)),
    ]
    print(f"{'workload':40s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in cases:
        py = best_of(fn, _pykernels, args.repeat)
        if _kernels is None:
            print(f"{name:40s} {py:10.4f} {'n/a':>10s}")
            continue
        cy = best_of(fn, _kernels, args.repeat)
        print(f"{name:40s} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
