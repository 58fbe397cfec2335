"""Experiment drivers: rational sweeps, random-x sampling, lacunarity,
fourth-moment counts and the W(eps) window demonstration."""
from __future__ import annotations

import math
import random
import statistics
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

from primesine import kernels
from primesine.bigfloat import RealAngleSpec, pi_fixed, plan, s_real
from primesine.errors import InvalidArgument, NotFound, ResourceError
from primesine.exact import RationalAngle, partial_sums, predicted_ratio, r, s_rational
from primesine.ntheory import k0_for_b, mobius, sieve, totient

GENERATOR = "python-random-mt19937"
MAX_QUAD_N = 24


@dataclass
class ExperimentReport:
    name: str
    parameters: dict[str, Any]
    rows: list[dict[str, Any]]
    summary: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    generator: str | None = None
    duration_s: float = 0.0


def rational_sweep(bs, n: int, a_policy: str = "one") -> ExperimentReport:
    """s(n, a*pi/b) / Pi(n) against 1/2 - mu(b)/(2 phi(b)) for each b.

    ``a_policy`` is "one" (a = 1) or "all" (every 1 <= a < b coprime to b).
    """
    if n < 100:
        raise InvalidArgument(f"n must be >= 100, got {n}")
    if a_policy not in ("one", "all"):
        raise InvalidArgument(f"unknown a_policy {a_policy!r}")
    bs = list(bs)
    if not bs or any(b < 2 for b in bs):
        raise InvalidArgument("every b must be >= 2")
    start = time.perf_counter()
    table = sieve(n)
    pi_n = table.pi(n)
    rows = []
    for b in bs:
        pred = predicted_ratio(b)
        a_values = [1] if a_policy == "one" else [a for a in range(1, b) if math.gcd(a, b) == 1]
        for a in a_values:
            s = s_rational(n, RationalAngle(a, b), table=table).value
            measured = s / pi_n
            rows.append(
                {
                    "b": b,
                    "a": a,
                    "mu": mobius(b),
                    "phi": totient(b),
                    "k0": k0_for_b(b),
                    "n": n,
                    "pi_n": pi_n,
                    "s": s,
                    "measured_ratio": measured,
                    "predicted_ratio": pred,
                    "deviation": abs(measured - float(pred)),
                }
            )
    summary = {"max_deviation": max(row["deviation"] for row in rows)}
    return ExperimentReport(
        "rational-sweep",
        {"bs": bs, "n": n, "a_policy": a_policy},
        rows,
        summary,
        duration_s=time.perf_counter() - start,
    )


def random_angle(rng: random.Random, decimals: int) -> RealAngleSpec:
    """Uniform decimal in [0, 2*pi) on the grid 10**-decimals."""
    pi = pi_fixed(math.ceil((decimals + 10) * math.log2(10)))
    limit = (2 * (pi.man - pi.err) * 10**decimals) >> pi.bits
    m = rng.randrange(limit)
    digits = str(m).rjust(decimals + 1, "0")
    literal = digits[:-decimals] + "." + digits[-decimals:]
    return RealAngleSpec.decimal(literal, len(str(m)))


def ae_sample(
    samples: int,
    n: int,
    seed: int = 0,
    digits: int | None = None,
    fixed_x: RealAngleSpec | None = None,
) -> ExperimentReport:
    """s(n, x)/n for seeded uniform x in [0, 2*pi) (or a single fixed x).

    ``digits`` overrides the planner's decimals for the sampled literals.
    """
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    start = time.perf_counter()
    decimals = plan(n).overall if digits is None else digits
    rng = random.Random(seed)
    rows = []
    for i in range(samples):
        spec = fixed_x if fixed_x is not None else random_angle(rng, decimals)
        res = s_real(n, spec)
        text = str(spec)
        rows.append(
            {
                "sample": i,
                "x": text if len(text) <= 32 else text[:32] + "...",
                "s": res.value,
                "ratio": res.value / n,
                "error_bound": res.error_bound,
            }
        )
    ratios = [row["ratio"] for row in rows]
    summary = {
        "mean_ratio": statistics.fmean(ratios),
        "stdev_ratio": statistics.stdev(ratios) if len(ratios) > 1 else 0.0,
        "min_ratio": min(ratios),
        "max_ratio": max(ratios),
    }
    params = {"samples": samples, "n": n, "decimals": decimals}
    if fixed_x is not None:
        params["x"] = str(fixed_x)
    return ExperimentReport(
        "ae-sample",
        params,
        rows,
        summary,
        seed=None if fixed_x is not None else seed,
        generator=None if fixed_x is not None else GENERATOR,
        duration_s=time.perf_counter() - start,
    )


def lacunarity_check(kmax: int) -> ExperimentReport:
    """Exact test of r(k+1) > 3 r(k) for 1 <= k < kmax."""
    if kmax < 6:
        raise InvalidArgument(f"kmax must be >= 6, got {kmax}")
    start = time.perf_counter()
    rows = []
    prev = r(1)
    for k in range(1, kmax):
        nxt = r(k + 1)
        ratio = nxt / prev
        rows.append({"k": k, "ratio": ratio, "ratio_float": float(ratio), "lacunary": nxt > 3 * prev})
        prev = nxt
    failures = [row["k"] for row in rows if not row["lacunary"]]
    summary = {
        "failures": failures,
        "failures_above_4": [k for k in failures if k > 4],
    }
    return ExperimentReport(
        "lacunarity", {"kmax": kmax}, rows, summary, duration_s=time.perf_counter() - start
    )


@lru_cache(maxsize=None)
def quad_solutions(n: int) -> tuple[tuple[int, ...], ...]:
    """Every (k1..k4, s1..s4) in [1, n]^4 x {+1,-1}^4 with sum s_i r(k_i) == 0.

    Brute force over all 16 n^4 tuples on r(k) scaled to integers by lcm(1..n);
    each hit is re-checked with exact rationals.
    """
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    if n > MAX_QUAD_N:
        raise ResourceError(f"brute force over 16*n^4 tuples is capped at n={MAX_QUAD_N}")
    rs = [r(k) for k in range(1, n + 1)]
    scale = math.lcm(*range(1, n + 1))
    values = [int(q * scale) for q in rs]
    sols = kernels.quad_solutions(values)
    for sol in sols:
        ks, ss = sol[:4], sol[4:]
        if sum(s * rs[k - 1] for k, s in zip(ks, ss)) != 0:
            raise AssertionError(f"kernel returned a non-solution {sol}")
    return tuple(sols)


def _structural_ok(sol: tuple[int, ...]) -> bool:
    """Largest index occurs at least twice, with both signs among its occurrences."""
    ks, ss = sol[:4], sol[4:]
    top = max(ks)
    signs = {s for k, s in zip(ks, ss) if k == top}
    return ks.count(top) >= 2 and signs == {1, -1}


def cancellation_count(n: int) -> ExperimentReport:
    """N(n), the number of signed index quadruples cancelling exactly."""
    start = time.perf_counter()
    sols = quad_solutions(n)
    by_top = Counter(max(sol[:4]) for sol in sols)
    bad = Counter(max(sol[:4]) for sol in sols if max(sol[:4]) > 4 and not _structural_ok(sol))
    rows = [
        {"max_index": k, "solutions": by_top[k], "structure_violations": bad[k]}
        for k in sorted(by_top)
    ]
    count = len(sols)
    summary = {
        "N": count,
        "N_over_n2": Fraction(count, n * n),
        "structure_violations": sum(bad.values()),
    }
    return ExperimentReport(
        "cancellation", {"n": n}, rows, summary, duration_s=time.perf_counter() - start
    )


def solution_counts(nmax: int) -> list[int]:
    """[N(1), ..., N(nmax)] from one brute force at nmax."""
    tops = Counter(max(sol[:4]) for sol in quad_solutions(nmax))
    out, running = [], 0
    for n in range(1, nmax + 1):
        running += tops[n]
        out.append(running)
    return out


def fourth_moment_exact(n: int) -> Fraction:
    """Haar integral of (sum_{k<=n} X_k)^4 with X_k = -(alpha_r + alpha_-r)/4.

    Characters integrate to 1 exactly when their frequencies cancel, so the
    moment is N(n)/4^4.
    """
    return Fraction(len(quad_solutions(n)), 256)


def moment_report(nmax: int) -> ExperimentReport:
    if not 1 <= nmax <= MAX_QUAD_N:
        raise ResourceError(f"nmax must be in 1..{MAX_QUAD_N}")
    start = time.perf_counter()
    rows = []
    for n, count in enumerate(solution_counts(nmax), start=1):
        moment = Fraction(count, 256)
        rows.append(
            {
                "n": n,
                "N": count,
                "moment": moment,
                "moment_float": float(moment),
                "C_n": moment / (n * n),
            }
        )
    constant = max(row["C_n"] for row in rows if row["n"] >= 2) if nmax >= 2 else rows[0]["C_n"]
    summary = {"moment": rows[-1]["moment"], "C": constant, "C_float": float(constant)}
    return ExperimentReport(
        "moment4", {"n": nmax}, rows, summary, duration_s=time.perf_counter() - start
    )


def _nearest_coprime(target: float, b: int) -> int:
    a = round(target)
    for step in range(b + 1):
        for cand in sorted({a - step, a + step}, key=lambda c: abs(c - target)):
            if math.gcd(abs(cand), b) == 1:
                return cand
    raise NotFound(f"no numerator coprime to {b}")


def weps_demo(x0: RealAngleSpec, eps: float, bmax: int, nmax: int = 100_000) -> ExperimentReport:
    """Nearest a*pi/b to x0 (b <= bmax) whose predicted ratio is within eps of 1/2,
    then an n <= nmax where 2 s(n, a*pi/b) / Pi(n) lies in [1 - eps, 1 + eps]."""
    if eps <= 0:
        raise InvalidArgument(f"eps must be positive, got {eps}")
    if bmax < 10:
        raise InvalidArgument(f"bmax must be >= 10, got {bmax}")
    start = time.perf_counter()
    if x0.kind == "pi-rational":
        target = math.pi * x0.angle.a / x0.angle.b
    else:
        target = float(x0.value())
    best = None
    for b in range(2, bmax + 1):
        if abs(2 * predicted_ratio(b) - 1) >= eps:
            continue
        a = _nearest_coprime(target * b / math.pi, b)
        dist = abs(a * math.pi / b - target)
        if best is None or dist < best[0]:
            best = (dist, a, b)
    if best is None:
        raise NotFound(f"no b <= {bmax} has |mu(b)/phi(b)| < {eps}")
    dist, a, b = best
    angle = RationalAngle(a, b)
    table = sieve(nmax)
    sums = partial_sums(nmax, angle, table)
    k0 = k0_for_b(b)
    inside = [
        n
        for n in range(max(k0 + 1, 2), nmax + 1)
        if abs(2 * sums[n - 1] / table.pi(n) - 1) <= eps
    ]
    if not inside:
        raise NotFound(f"no n <= {nmax} puts 2 s(n, {angle}) / Pi(n) within {eps} of 1")
    checkpoints = sorted({10**j for j in range(1, 8) if 10**j <= nmax} | {inside[0], inside[-1], nmax})
    rows = [
        {
            "n": n,
            "pi_n": table.pi(n),
            "s": sums[n - 1],
            "two_s_over_pi": 2 * sums[n - 1] / table.pi(n),
            "in_window": abs(2 * sums[n - 1] / table.pi(n) - 1) <= eps,
        }
        for n in checkpoints
    ]
    n_star = inside[-1]
    summary = {
        "a": a,
        "b": b,
        "distance": dist,
        "predicted_ratio": predicted_ratio(b),
        "k0": k0,
        "n": n_star,
        "two_s_over_pi": 2 * sums[n_star - 1] / table.pi(n_star),
        "first_n_in_window": inside[0],
        "fraction_in_window": len(inside) / (nmax - max(k0, 1)),
    }
    return ExperimentReport(
        "weps-demo",
        {"x0": str(x0), "eps": eps, "bmax": bmax, "nmax": nmax},
        rows,
        summary,
        duration_s=time.perf_counter() - start,
    )
