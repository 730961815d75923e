"""Special-function kernels against high-precision references and identities.

mpmath serves as the independent oracle; the frozen constants below were
evaluated with it at 40 digits.
"""

import cmath
import math
import random

import mpmath as mp
import pytest

from abc2d.errors import ParameterPole, PoleError
from abc2d.specfn import _taylor, arg_gamma, gamma_moduli, kummer_m, ln_gamma

mp.mp.dps = 40

LN_SQRT_PI = 0.57236494292470009
PI_OVER_SINH_PI = 0.27202905498213316
PI_OVER_COSH_PI = 0.27101495139941835
E_MINUS_1 = 1.7182818284590452
ARG_GAMMA_HALF_MINUS_I = 0.95500772434256911


class TestLnGamma:
    def test_at_one(self):
        assert abs(ln_gamma(1.0)) < 5e-15

    def test_at_half(self):
        assert ln_gamma(0.5).real == pytest.approx(LN_SQRT_PI, abs=5e-15)
        assert ln_gamma(0.5).imag == 0.0

    def test_modulus_at_i(self):
        assert abs(cmath.exp(ln_gamma(1j))) ** 2 == pytest.approx(
            PI_OVER_SINH_PI, rel=1e-13)

    @pytest.mark.parametrize("z", [0.0, -1.0, -7.0])
    def test_poles(self, z):
        with pytest.raises(PoleError):
            ln_gamma(z)

    def test_near_pole_is_not_pole(self):
        ln_gamma(-2.5)
        ln_gamma(complex(-1.0, 1e-8))

    def test_against_reference_disk(self):
        rng = random.Random(101)
        worst = 0.0
        n = 0
        while n < 400:
            z = cmath.rect(rng.uniform(0.05, 50.0), rng.uniform(-math.pi, math.pi))
            if z.imag == 0.0 and z.real <= 0.0:
                continue
            ref = complex(mp.gamma(z))
            if not abs(ref) < 1e290:
                continue
            n += 1
            worst = max(worst, abs(cmath.exp(ln_gamma(z)) - ref) / abs(ref))
        assert worst < 1e-13

    def test_reflection_identity(self):
        rng = random.Random(7)
        for _ in range(100):
            z = complex(rng.uniform(-9.0, 9.0), rng.uniform(0.05, 9.0))
            lhs = ln_gamma(z) + ln_gamma(1.0 - z)
            rhs = cmath.log(math.pi / cmath.sin(math.pi * z))
            assert abs((lhs - rhs).real) < 1e-11
            assert abs(math.remainder((lhs - rhs).imag, 2.0 * math.pi)) < 1e-11

    def test_recurrence_identity(self):
        rng = random.Random(8)
        for _ in range(100):
            z = complex(rng.uniform(-9.0, 9.0), rng.uniform(0.05, 9.0))
            d = ln_gamma(z + 1.0) - ln_gamma(z) - cmath.log(z)
            assert abs(d.real) < 1e-12
            assert abs(math.remainder(d.imag, 2.0 * math.pi)) < 1e-12


class TestArgGamma:
    def test_real_positive(self):
        assert arg_gamma(0.5) == 0.0

    def test_value(self):
        assert arg_gamma(0.5 - 1j) == pytest.approx(ARG_GAMMA_HALF_MINUS_I, abs=1e-13)

    def test_schwarz_reflection(self):
        z = 0.5 - 1j
        assert arg_gamma(z.conjugate()) == pytest.approx(-arg_gamma(z), abs=1e-13)

    def test_small_beta_limit(self):
        # Gamma(i b) ~ 1/(i b) -> phase -pi/2
        assert arg_gamma(1e-6j) == pytest.approx(-math.pi / 2, abs=1e-4)

    def test_continuity_in_beta(self):
        prev = arg_gamma(0.05j)
        for i in range(1, 200):
            cur = arg_gamma((0.05 + i * 0.05) * 1j)
            assert abs(cur - prev) < 0.5
            prev = cur


class TestGammaModuli:
    def test_closed_forms_at_one(self):
        g0, g1 = gamma_moduli(1.0)
        assert g0 == pytest.approx(PI_OVER_SINH_PI, rel=1e-15)
        assert g1 == pytest.approx(PI_OVER_COSH_PI, rel=1e-15)

    def test_zero_beta_pole(self):
        with pytest.raises(ZeroDivisionError):
            gamma_moduli(0.0)

    def test_large_beta_asymptotics(self):
        # g0 -> 2 pi e^{-pi b}/b and g1 -> 2 pi e^{-pi b}
        b = 10.0
        g0, g1 = gamma_moduli(b)
        asym = 2.0 * math.pi * math.exp(-math.pi * b)
        assert g0 * b / asym == pytest.approx(1.0, rel=1e-12)
        assert g1 / asym == pytest.approx(1.0, rel=1e-12)

    def test_matches_ln_gamma_identities(self):
        for b in (0.05, 0.3, 1.7, 6.0, 10.0):
            g0, g1 = gamma_moduli(b)
            assert abs(cmath.exp(ln_gamma(1j * b))) ** 2 == pytest.approx(g0, rel=1e-11)
            assert abs(cmath.exp(ln_gamma(0.5 + 1j * b))) ** 2 == pytest.approx(g1, rel=1e-11)


class TestKummer:
    def test_at_zero(self):
        assert kummer_m(2.3 - 1j, 0.7, 0.0) == 1.0

    def test_terminating_polynomial(self):
        assert kummer_m(-1.0, 1.0, 2.0) == pytest.approx(-1.0, abs=1e-15)

    def test_exponential_case(self):
        # M(1, 2, z) = (e^z - 1)/z
        assert kummer_m(1.0, 2.0, 1.0).real == pytest.approx(E_MINUS_1, rel=1e-14)

    @pytest.mark.parametrize("b", [0.0, -1.0, -4.0])
    def test_parameter_pole(self, b):
        with pytest.raises(ParameterPole):
            kummer_m(0.5, b, 1.0)

    def test_termination_term_count(self):
        # degree-n polynomial: leading 1 plus n products, the (n+1)-th vanishes
        for n in (0, 1, 3, 7):
            _, _, count = _taylor(complex(-n), complex(2.0), complex(1.5))
            assert count == n + 1

    def test_kummer_transformation(self):
        rng = random.Random(23)
        for _ in range(100):
            a = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            b = complex(rng.uniform(0.3, 5), rng.uniform(-2, 2))
            z = cmath.rect(rng.uniform(0.1, 20.0), rng.uniform(-math.pi, math.pi))
            lhs = kummer_m(a, b, z)
            rhs = cmath.exp(z) * kummer_m(b - a, b, -z)
            assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs))

    def test_against_reference_moderate(self):
        rng = random.Random(301)
        for _ in range(60):
            a = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            b = complex(rng.uniform(0.3, 6), rng.uniform(-2, 2))
            z = cmath.rect(rng.uniform(0.0, 15.0), rng.uniform(-math.pi, math.pi))
            ref = complex(mp.hyp1f1(a, b, z))
            assert abs(kummer_m(a, b, z) - ref) <= 1e-12 * abs(ref)

    def test_against_reference_oscillatory(self):
        # purely imaginary argument in the heavy-cancellation window; the
        # decimal re-summation path must hold 1e-12
        rng = random.Random(302)
        for _ in range(40):
            beta = rng.uniform(0.05, 4.0)
            if rng.random() < 0.5:
                a, b = 1j * beta, 0.5
            else:
                a, b = 0.5 + 1j * beta, 1.5
            y = rng.uniform(15.0, 40.0) * (1 if rng.random() < 0.5 else -1)
            ref = complex(mp.hyp1f1(a, mp.mpf(b), 1j * y))
            assert abs(kummer_m(a, b, 1j * y) - ref) <= 1e-12 * abs(ref)

    def test_against_reference_asymptotic(self):
        rng = random.Random(303)
        for _ in range(40):
            beta = rng.uniform(0.05, 4.0)
            if rng.random() < 0.5:
                a, b = 1j * beta, 0.5
            else:
                a, b = 0.5 - 1j * beta, 1.0
            y = rng.uniform(41.0, 400.0) * (1 if rng.random() < 0.5 else -1)
            ref = complex(mp.hyp1f1(a, mp.mpf(b), 1j * y))
            assert abs(kummer_m(a, b, 1j * y) - ref) <= 5e-12 * abs(ref)

    def test_polynomial_matches_explicit_horner(self):
        # explicit coefficients (-n)_j / ((b)_j j!) summed exactly
        from fractions import Fraction
        n, b, z = 5, Fraction(3, 2), Fraction(17, 2)
        coeff, acc, zp = Fraction(1), Fraction(1), Fraction(1)
        for j in range(n):
            coeff *= Fraction(-n + j) / ((b + j) * (j + 1))
            zp *= z
            acc += coeff * zp
        got = kummer_m(float(-n), float(b), float(z))
        assert got.real == pytest.approx(float(acc), rel=1e-14)
        assert got.imag == 0.0
