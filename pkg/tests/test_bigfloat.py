import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from primesine.bigfloat import (
    GUARD_DIGITS,
    BigReal,
    RealAngleSpec,
    angle_value,
    pi_decimal_string,
    pi_digits,
    pi_fixed,
    plan,
    required_digits,
    s_real,
    sin_squared,
    term_real,
)
from primesine.errors import InvalidArgument, PrecisionError
from primesine.exact import RationalAngle, s_rational, term_rational

mpmath = pytest.importorskip("mpmath")


def test_required_digits_examples():
    assert 2350 <= required_digits(945) <= 2450
    assert required_digits(2) == required_digits(1) == GUARD_DIGITS
    assert required_digits(100) == math.ceil(98 * math.log10(100 / math.e)) + GUARD_DIGITS
    assert required_digits(100) - GUARD_DIGITS in (154, 155)


def test_required_digits_monotone():
    values = [required_digits(k) for k in range(3, 5001)]
    assert all(x <= y for x, y in zip(values, values[1:]))


def test_required_digits_cover_factorial_growth():
    # 10**-required * (k-1)!/k stays far below the 1e-12 term tolerance
    for k in range(3, 3000, 37):
        growth = math.lgamma(k) / math.log(10) - math.log10(k)
        assert growth - required_digits(k) < -15


def test_plan():
    assert 2350 <= plan(945).overall <= 2450
    assert 2400 <= plan(1000).overall <= 2600
    p3 = plan(3)
    assert p3.overall == GUARD_DIGITS + 2
    assert [b.k for b in p3.budgets] == [1, 2, 3]
    assert plan(1).overall == GUARD_DIGITS


def test_pi_digits_small():
    assert abs(float(pi_digits(1)) - 3.1) <= 0.1
    assert abs(float(pi_digits(15)) - math.pi) < 1e-15


def test_pi_digits_2400():
    pi = pi_digits(2400)
    assert pi.error() < Fraction(1, 10**2400)
    wider = pi_digits(2420)
    assert abs(Fraction(pi.man, 1 << pi.bits) - Fraction(wider.man, 1 << wider.bits)) < Fraction(2, 10**2400)
    with mpmath.workdps(2450):
        text = mpmath.nstr(+mpmath.pi, 2440, strip_zeros=False)
    assert abs(Fraction(pi.man, 1 << pi.bits) - Fraction(text)) < Fraction(1, 10**2400)
    assert pi_decimal_string(2400) == text[:2402]


def test_pi_digits_rejects_zero():
    with pytest.raises(InvalidArgument):
        pi_digits(0)


@given(
    st.fractions(min_value=-10, max_value=10, max_denominator=10**6),
    st.fractions(min_value=-10, max_value=10, max_denominator=10**6),
    st.integers(1, 10**30),
)
def test_bigreal_error_bounds(p, q, m):
    x = BigReal.from_fraction(p, 100)
    y = BigReal.from_fraction(q, 150)
    for got, exact in [
        (x + y, p + q),
        (x.mul_int(m), p * m),
        (x.div_int(m), p / m),
        (y.rescale(40), q),
    ]:
        assert abs(Fraction(got.man, 1 << got.bits) - exact) <= got.error()


@settings(max_examples=50)
@given(st.fractions(min_value=0, max_value=Fraction(314, 100), max_denominator=10**9))
def test_sin_squared_bound(theta):
    got = sin_squared(BigReal.from_fraction(theta, 200))
    with mpmath.workdps(80):
        ref = mpmath.sin(mpmath.mpf(theta.numerator) / theta.denominator) ** 2
        gap = abs(mpmath.mpf(got.man) / mpmath.mpf(2) ** got.bits - ref)
        assert gap <= mpmath.mpf(got.err) / mpmath.mpf(2) ** got.bits
    assert got.error() < Fraction(1, 10**50)


def test_term_real_examples():
    x = angle_value(RealAngleSpec.pi_rational(1, 2), 200)
    t1 = term_real(1, x, 1)
    assert abs(Fraction(t1.man, 1 << t1.bits) - 1) <= t1.error() < Fraction(1, 10**48)
    t5 = term_real(5, x, 24)
    assert float(t5) == pytest.approx(math.sin(0.4 * math.pi) ** 2, abs=1e-15)
    assert float(t5) == pytest.approx(0.904508, abs=1e-6)
    t7 = term_real(7, x, 720)
    assert float(t7) == pytest.approx(term_rational(7, RationalAngle(1, 2)), abs=1e-12)


def test_term_real_precision_error_names_digits():
    x = BigReal.from_fraction(Fraction(31416, 10000), 60, Fraction(1, 10**4))
    with pytest.raises(PrecisionError) as info:
        term_real(60, x, math.factorial(59))
    assert info.value.required_digits == required_digits(60)


def test_s_real_examples():
    res = s_real(50, RealAngleSpec.pi_rational(1, 2))
    assert abs(res.value - s_rational(50, RationalAngle(1, 2)).value) <= 1e-10
    assert s_real(1, RealAngleSpec.unit()).value == pytest.approx(math.sin(1) ** 2, abs=1e-15)
    assert s_real(1, RealAngleSpec.unit()).value == pytest.approx(0.708073, abs=1e-6)
    r300 = s_real(300, RealAngleSpec.pi_rational(1, 2))
    assert 62 + 0.5 < r300.value < 62 + 0.6  # Pi(300) = 62
    assert r300.error_bound <= 300e-12


def test_oracle_agreement_small_b():
    for b in range(1, 13):
        for a in (1, -5, 2 * b + 1):
            if math.gcd(abs(a), b) != 1:
                continue
            for n in (1, 7, 60):
                real = s_real(n, RealAngleSpec.pi_rational(a, b)).value
                assert abs(real - s_rational(n, RationalAngle(a, b)).value) <= 1e-10


def test_error_bound_sound_at_double_precision():
    rng = random.Random(11)
    specs = [RealAngleSpec.pi_rational(rng.randint(-20, 20) or 1, rng.randint(1, 40)) for _ in range(14)]
    specs += [RealAngleSpec.decimal(f"{rng.uniform(0, 6.28):.{d}f}"[:2] + "".join(rng.choice("0123456789") for _ in range(d)))
              for d in (400, 420, 450, 500, 600, 700)]
    for spec in specs:
        n = 150
        base = s_real(n, spec)
        doubled = s_real(n, spec, digits=2 * plan(n).overall)
        assert abs(base.value - doubled.value) <= base.error_bound


def test_planner_sufficiency():
    for n in (10, 100, 400):
        d = plan(n).overall
        x = angle_value(RealAngleSpec.unit(), math.ceil(d * math.log2(10)) + 32)
        gamma = 1
        for k in range(1, n + 1):
            gamma *= max(k - 1, 1)
            term_real(k, x, gamma)


def test_decimal_literal_parsing():
    spec = RealAngleSpec.decimal("3.14159", 6)
    assert spec.value() == Fraction(314159, 100000)
    assert spec.decimals() == 5
    assert RealAngleSpec.decimal("-0.00125").decimals() == 5
    assert RealAngleSpec.decimal("1.5e-3").value() == Fraction(15, 10000)
    with pytest.raises(InvalidArgument):
        RealAngleSpec.decimal("3.14", 4)
    with pytest.raises(InvalidArgument):
        RealAngleSpec.decimal("pi")


def test_insufficient_decimal_fails_fast():
    with pytest.raises(PrecisionError) as info:
        s_real(1000, RealAngleSpec.decimal("3.14159", 6))
    assert 2400 <= info.value.required_digits <= 2600
    pi100 = RealAngleSpec.decimal(pi_decimal_string(100))
    with pytest.raises(PrecisionError):
        s_real(200, pi100)
    # the same literal is fine where the planner says 100 decimals suffice
    s_real(60, pi100)


def test_decimal_pi_matches_exact():
    d = plan(120).overall
    spec = RealAngleSpec.decimal(pi_decimal_string(d + 5))
    res = s_real(120, RealAngleSpec.decimal(pi_decimal_string(d + 5)))
    exact = s_rational(120, RationalAngle(1, 1)).value
    assert abs(res.value - exact) <= 1e-10
    assert spec.decimals() == d + 5


def test_trace_terms():
    res = s_real(20, RealAngleSpec.unit(), trace=True)
    assert len(res.terms) == 20
    assert all(0 <= t <= 1 for t in res.terms)
    assert math.fsum(res.terms) == pytest.approx(res.value, abs=1e-12)


def test_pi_fixed_cached():
    assert pi_fixed(500) is pi_fixed(500)
