"""Squared-sine prime-counting series s(n, x) = sum_{k<=n} sin^2(x (k-1)!/k).

Exact evaluation at rational multiples of pi, rigorous big-float evaluation
for general x, and experiment drivers around both.
"""
from primesine.bigfloat import RealAngleSpec, plan, required_digits, s_real
from primesine.exact import (
    HALF_PI,
    RationalAngle,
    SeriesResult,
    delta,
    pi_from_formula,
    predicted_ratio,
    s_rational,
)
from primesine.kernels import BACKEND
from primesine.ntheory import sieve

__all__ = [
    "BACKEND",
    "HALF_PI",
    "RationalAngle",
    "RealAngleSpec",
    "SeriesResult",
    "delta",
    "pi_from_formula",
    "plan",
    "predicted_ratio",
    "required_digits",
    "s_rational",
    "s_real",
    "sieve",
]
