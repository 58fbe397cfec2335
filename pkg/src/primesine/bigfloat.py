"""Arbitrary-precision evaluation of s(n, x) for real x.

Values are binary fixed-point integers carrying an absolute error bound in
units of the last place, so every reported error is a proven upper bound.
(k-1)! is kept as an exact integer; only x and pi are ever approximated.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from primesine.errors import InvalidArgument, PrecisionError, ResourceError
from primesine.exact import RationalAngle, SeriesResult

GUARD_DIGITS = 20
TERM_ERROR_LIMIT = Fraction(1, 10**12)
MAX_PI_DIGITS = 1_000_000
# reduced arguments are never needed past ~90 digits
SIN_BITS_CAP = 320
_LOG2_10 = math.log2(10)


@dataclass(frozen=True)
class BigReal:
    """man / 2**bits, within err / 2**bits of the true value."""

    man: int
    bits: int
    err: int = 0

    @classmethod
    def from_fraction(cls, q: Fraction | int, bits: int, extra_err: Fraction | int = 0) -> BigReal:
        q = Fraction(q)
        scaled = q * (1 << bits)
        man = round(scaled)
        err = 0 if man == scaled else 1
        if extra_err:
            err += math.ceil(Fraction(extra_err) * (1 << bits))
        return cls(man, bits, err)

    @property
    def digits(self) -> int:
        """Decimal digits after the point carried by the representation."""
        return int(self.bits / _LOG2_10)

    def error(self) -> Fraction:
        return Fraction(self.err, 1 << self.bits)

    def __float__(self) -> float:
        return self.man / (1 << self.bits)

    def rescale(self, bits: int) -> BigReal:
        if bits >= self.bits:
            s = bits - self.bits
            return BigReal(self.man << s, bits, self.err << s)
        s = self.bits - bits
        return BigReal(self.man >> s, bits, -(-self.err >> s) + 1)

    def __add__(self, other: BigReal) -> BigReal:
        bits = max(self.bits, other.bits)
        a, b = self.rescale(bits), other.rescale(bits)
        return BigReal(a.man + b.man, bits, a.err + b.err)

    def mul_int(self, n: int) -> BigReal:
        return BigReal(self.man * n, self.bits, self.err * abs(n))

    def div_int(self, k: int) -> BigReal:
        if k <= 0:
            raise InvalidArgument(f"divisor must be positive, got {k}")
        return BigReal(self.man // k, self.bits, -(-self.err // k) + 1)

    def reduce_mod(self, period: BigReal) -> BigReal:
        """self - q*period with q = floor(self/period), tracking period's error."""
        if period.bits != self.bits:
            period = period.rescale(self.bits)
        q = self.man // period.man
        return BigReal(self.man - q * period.man, self.bits, self.err + abs(q) * period.err)


def _atan_inv(x: int, bits: int) -> tuple[int, int]:
    # floor(floor(y)/m) == floor(y/m), so each series term is off by < 1 ulp
    one = 1 << bits
    x2 = x * x
    power = one // x
    total, j, sign = 0, 0, 1
    while power:
        total += sign * (power // (2 * j + 1))
        power //= x2
        j += 1
        sign = -sign
    return total, j + 1


@lru_cache(maxsize=64)
def pi_fixed(bits: int) -> BigReal:
    """pi at ``bits`` fractional bits via Machin's formula."""
    a, na = _atan_inv(5, bits)
    b, nb = _atan_inv(239, bits)
    return BigReal(16 * a - 4 * b, bits, 16 * na + 4 * nb)


def _bits_for_digits(d: int) -> int:
    return math.ceil(d * _LOG2_10) + 16


def pi_digits(d: int) -> BigReal:
    """pi with absolute error below 10**-d."""
    if d < 1:
        raise InvalidArgument(f"digit count must be >= 1, got {d}")
    if d > MAX_PI_DIGITS:
        raise ResourceError(f"{d} digits of pi exceeds the limit of {MAX_PI_DIGITS}")
    pi = pi_fixed(_bits_for_digits(d))
    assert pi.error() < Fraction(1, 10**d)
    return pi


def pi_decimal_string(d: int) -> str:
    """pi truncated to d decimals, e.g. '3.14' for d=2."""
    pi = pi_digits(d + 2)
    lo = (pi.man - pi.err) * 10**d >> pi.bits
    hi = (pi.man + pi.err) * 10**d >> pi.bits
    if lo != hi:
        # truncation point falls inside the error interval; widen and retry
        pi = pi_fixed(_bits_for_digits(d + 40))
        lo = (pi.man - pi.err) * 10**d >> pi.bits
    s = str(lo)
    return s[0] + "." + s[1:]


def sin_squared(theta: BigReal) -> BigReal:
    """sin(theta)**2 with a rigorous error bound; theta should lie in [0, 4]."""
    effective = theta.bits - theta.err.bit_length()
    t = min(theta.bits, SIN_BITS_CAP, max(64, effective + 16))
    x = theta.rescale(t)
    g = 32
    w = t + g
    xm = x.man << g
    one = 1 << w
    x2 = xm * xm >> w
    term, total, j = xm, xm, 0
    while term:
        j += 1
        term = -(term * x2 >> w) // ((2 * j) * (2 * j + 1))
        total += term
    # < 3 ulps per term plus a geometric tail below 8 ulps; input error passes
    # through sin with Lipschitz constant 1
    e_sin = 3 * (j + 1) + 8 + (x.err << g)
    mag = abs(total) + e_sin
    sq = total * total >> w
    e_sq = -(-(2 * mag * e_sin) // one) + 1
    return BigReal(sq, w, e_sq)


def required_digits(k: int) -> int:
    """Decimals of x needed so sin^2(x (k-1)!/k) is determined: (k/e)^-(k-2) plus guard."""
    if k < 1:
        raise InvalidArgument(f"k must be >= 1, got {k}")
    if k <= 2:
        return GUARD_DIGITS
    return math.ceil((k - 2) * math.log10(k / math.e)) + GUARD_DIGITS


@dataclass(frozen=True)
class PrecisionBudget:
    k: int
    required_decimal_digits: int
    guard_digits: int = GUARD_DIGITS


@dataclass(frozen=True)
class PrecisionPlan:
    n: int
    budgets: tuple[PrecisionBudget, ...]
    overall: int


def plan(n: int) -> PrecisionPlan:
    """Per-term budgets and the working precision for s(n, x)."""
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    budgets = tuple(PrecisionBudget(k, required_digits(k)) for k in range(1, n + 1))
    carry = math.ceil(math.log10(n))
    return PrecisionPlan(n, budgets, max(b.required_decimal_digits for b in budgets) + carry)


_DECIMAL = re.compile(r"^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$")


@dataclass(frozen=True)
class RealAngleSpec:
    """x as a rational multiple of pi, a decimal literal, or the unit x = 1."""

    kind: str
    angle: RationalAngle | None = None
    literal: str | None = None
    stated_digits: int | None = None

    @classmethod
    def pi_rational(cls, a: int, b: int) -> RealAngleSpec:
        return cls("pi-rational", angle=RationalAngle.reduced(a, b))

    @classmethod
    def unit(cls) -> RealAngleSpec:
        return cls("unit")

    @classmethod
    def decimal(cls, literal: str, stated_digits: int | None = None) -> RealAngleSpec:
        _, digits, _ = _parse_decimal(literal)
        if stated_digits is None:
            stated_digits = max(len(digits), 1)
        if stated_digits < 1:
            raise InvalidArgument("stated digits must be positive")
        if stated_digits > max(len(digits), 1):
            raise InvalidArgument(
                f"{stated_digits} stated digits but literal {literal!r} has {len(digits)}"
            )
        return cls("decimal", literal=literal, stated_digits=stated_digits)

    def value(self) -> Fraction | None:
        """Exact value for decimal and unit specs; None for pi-rational."""
        if self.kind == "unit":
            return Fraction(1)
        if self.kind == "decimal":
            sign, digits, exp = _parse_decimal(self.literal)
            return sign * Fraction(int(digits or "0")) * Fraction(10) ** exp
        return None

    def decimals(self) -> int | None:
        """Trusted decimals after the point of a decimal literal."""
        if self.kind != "decimal":
            return None
        _, digits, exp = _parse_decimal(self.literal)
        lead = len(digits) - 1 + exp if digits else 0
        return self.stated_digits - 1 - lead

    def __str__(self):
        if self.kind == "pi-rational":
            return str(self.angle)
        if self.kind == "unit":
            return "1"
        return self.literal


def _parse_decimal(literal: str) -> tuple[int, str, int]:
    """(sign, significant digits without leading zeros, exponent of last digit)."""
    m = _DECIMAL.match(literal.strip())
    if not m or not (m.group(2) or m.group(3)):
        raise InvalidArgument(f"not a decimal literal: {literal!r}")
    sign = -1 if m.group(1) == "-" else 1
    frac = m.group(3) or ""
    exp = int(m.group(4) or 0) - len(frac)
    return sign, (m.group(2) + frac).lstrip("0"), exp


def term_real(k: int, x: BigReal, gamma_k: int, pi: BigReal | None = None) -> BigReal:
    """sin^2(x * gamma_k / k) with gamma_k == (k-1)! exactly."""
    if k < 1:
        raise InvalidArgument(f"k must be >= 1, got {k}")
    if pi is None or pi.bits != x.bits:
        pi = pi_fixed(x.bits)
    theta = x.mul_int(gamma_k).div_int(k).reduce_mod(pi)
    term = sin_squared(theta)
    if term.error() > TERM_ERROR_LIMIT:
        need = required_digits(k)
        raise PrecisionError(
            f"term k={k} is undetermined at {x.digits} digits; needs about {need}", need
        )
    return term


def _working_bits(digits: int, magnitude: float) -> int:
    return _bits_for_digits(digits + max(0, math.ceil(math.log10(magnitude + 1)))) + 16


def angle_value(spec: RealAngleSpec, bits: int) -> BigReal:
    """x as a BigReal at ``bits`` fractional bits (decimal precision not checked here)."""
    if spec.kind == "pi-rational":
        a = spec.angle
        return pi_fixed(bits).mul_int(a.a).div_int(a.b)
    if spec.kind == "decimal":
        return BigReal.from_fraction(spec.value(), bits, Fraction(10) ** -spec.decimals())
    return BigReal.from_fraction(spec.value(), bits)


def check_decimal_precision(n: int, spec: RealAngleSpec) -> None:
    if spec.kind != "decimal":
        return
    need = required_digits(n)
    have = spec.decimals()
    if have < need:
        raise PrecisionError(
            f"x = {spec.literal[:24]}{'...' if len(spec.literal) > 24 else ''} carries "
            f"{have} trusted decimals; s({n}, x) needs {need}",
            need,
        )


def s_real(n: int, spec: RealAngleSpec, digits: int | None = None, trace: bool = False) -> SeriesResult:
    """s(n, x) with a proven absolute error bound."""
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")
    check_decimal_precision(n, spec)
    d = plan(n).overall if digits is None else digits
    if spec.kind == "pi-rational":
        magnitude = math.pi * abs(spec.angle.a) / spec.angle.b
    else:
        magnitude = abs(float(spec.value()))
    bits = _working_bits(d, magnitude)
    pi = pi_fixed(bits)
    x = angle_value(spec, bits)
    total = BigReal(0, 0)
    gamma = 1
    terms = []
    for k in range(1, n + 1):
        if k > 2:
            gamma *= k - 1
        t = term_real(k, x, gamma, pi)
        total = total + t
        if trace:
            terms.append(min(1.0, max(0.0, float(t))))
    value = float(total)
    bound = math.nextafter(float(total.error()) + abs(value) * 2.0**-52, math.inf)
    if bound > n * 1e-12:
        raise PrecisionError(f"error bound {bound:.3g} exceeds n*1e-12", d)
    return SeriesResult(n, spec, value, bound, tuple(terms) if trace else None)
