from decimal import Context, Decimal, localcontext
from fractions import Fraction as F

import mpmath
import pytest

from cubeint import loggamma as lg
from cubeint.errors import ConsistencyError
from cubeint.loggamma import ClosedFormValue as CFV
from cubeint.loggamma import (closed_form, closed_form_via_derivation,
                              numeric_value, r1, r2, s1_total, s2_total)
from cubeint.reduction import tk_poly

HALF_LOG_2PI = CFV.half_log_two_pi()


def test_canonical_log_basis():
    assert CFV.log(12) == CFV(log_primes={2: 2, 3: 1})
    assert CFV.log(1).is_zero()
    assert HALF_LOG_2PI == CFV(log_pi=F(1, 2)) + CFV.log(2, F(1, 2))
    assert CFV.log(6, 2) - CFV.log(2, 2) == CFV.log(3, 2)
    with pytest.raises(ValueError):
        CFV(log_primes={4: 1})
    with pytest.raises(ValueError):
        CFV.log(0)


def test_str_form():
    assert str(CFV()) == "0"
    assert str(CFV(constant=F(-3, 4)) + HALF_LOG_2PI) == "-3/4 + 1/2·logπ + 1/2·log2"
    assert str(CFV.log(3, -1)) == "-log3"


# published values for n = 2, 3, 4


def test_closed_form_n2():
    assert closed_form(2) == HALF_LOG_2PI - F(3, 4)


def test_closed_form_n3():
    assert closed_form(3) == HALF_LOG_2PI + CFV.log(2, F(4, 3)) - F(11, 6)


def test_closed_form_n4():
    expected = HALF_LOG_2PI - CFV.log(2, 2) + CFV.log(3, F(27, 8)) - F(25, 8)
    assert closed_form(4) == expected
    assert str(closed_form(4)) == "-25/8 + 1/2·logπ - 3/2·log2 + 27/8·log3"


def test_closed_form_n1_is_raabe():
    assert closed_form(1) == HALF_LOG_2PI
    with pytest.raises(ValueError):
        closed_form(0)


def test_s1_total_examples():
    assert s1_total(3) == CFV.log(2, F(4, 3))
    assert s1_total(2).is_zero()
    assert s1_total(4) == lg.s1_by_definition(4)
    with pytest.raises(ValueError):
        s1_total(1)


def test_s2_r1_r2_examples():
    assert s2_total(3) == F(1, 3) == 4 - F(11, 3)
    assert s2_total(2) == F(1, 4)
    assert r1(3) == F(11, 9)
    assert r1(2) == 0
    assert r2(3) == F(-8, 9)
    assert r2(2) == F(1, 4)
    for fn in (s2_total, r1, r2):
        with pytest.raises(ValueError):
            fn(1)


@pytest.mark.parametrize("n", range(2, 11))
def test_collapsed_sums_equal_defining_sums(n):
    assert s1_total(n) == lg.s1_by_definition(n)
    assert s2_total(n) == lg.s2_by_definition(n)
    assert r1(n) == lg.r1_by_definition(n)
    assert r2(n) == lg.r2_by_definition(n)
    assert r1(n) + r2(n) == s2_total(n)
    assert lg.r1_by_definition(n) + lg.r2_by_definition(n) == lg.s2_by_definition(n)


def test_derivation_small_n():
    t3 = closed_form_via_derivation(3)
    assert t3.final == closed_form(3)
    # 1/2 log 2pi + 2 log 2 - 2 - 1/2 (4/3 log 2 - 1/3)
    assert t3.final == (HALF_LOG_2PI + CFV.log(2, 2) - 2
                        - (CFV.log(2, F(4, 3)) - F(1, 3)) * F(1, 2))
    assert t3.tk_integral_total == CFV.log(2, F(4, 3)) - F(1, 3)
    assert closed_form_via_derivation(2).final == HALF_LOG_2PI - F(3, 4)
    with pytest.raises(ValueError):
        closed_form_via_derivation(1)


@pytest.mark.parametrize("n", range(2, 31))
def test_two_paths_agree(n):
    assert closed_form_via_derivation(n, check=False).final == closed_form(n)


def test_derivation_mismatch_is_consistency_error(monkeypatch):
    monkeypatch.setattr(lg, "r2", lambda n: F(0))
    with pytest.raises(ConsistencyError):
        closed_form_via_derivation(4)


@pytest.mark.parametrize("n", range(2, 8))
def test_tk_log_integrals_numerically(n):
    """The summed T_k log integrals equal S1 - S2 (mpmath quadrature oracle)."""
    with mpmath.workdps(30):
        total = mpmath.mpf(0)
        for k in range(1, n):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in tk_poly(n, k).coeffs]
            total += mpmath.quad(
                lambda t: mpmath.polyval(coeffs[::-1], t) * mpmath.log(t + k - 1), [0, 1])
        expected = (s1_total(n) - s2_total(n)).to_mpf(30)
        assert abs(total - expected) < mpmath.mpf(10) ** -20


def test_numeric_value_examples():
    assert numeric_value(closed_form(2), 10) == "0.1689385332"
    assert numeric_value(closed_form(1), 10) == "0.9189385332"
    assert numeric_value(CFV(), 4) == "0.0000"
    assert numeric_value(CFV(constant=F(-1, 3)), 3) == "-0.333"
    with pytest.raises(ValueError):
        numeric_value(CFV(), 0)
    with pytest.raises(ValueError):
        numeric_value(CFV(), 51)


def test_numeric_value_is_stable_in_precision():
    v = closed_form(9)
    long = Decimal(numeric_value(v, 50))
    with localcontext(Context(prec=80)):
        for d in (5, 15, 20, 35):
            assert numeric_value(v, d) == f"{long.quantize(Decimal(1).scaleb(-d)):f}"
    with mpmath.workdps(80):
        assert abs(mpmath.mpf(str(long)) - v.to_mpf(80)) <= mpmath.mpf(10) ** -50 / 2


def test_raabe_numerically():
    assert float(HALF_LOG_2PI) == pytest.approx(float(mpmath.quad(mpmath.loggamma, [0, 1])),
                                                abs=1e-14)


def test_i2_by_direct_cubature():
    with mpmath.workdps(20):
        v = mpmath.quad(lambda x, y: mpmath.loggamma(x + y), [0, 1], [0, 1])
        assert abs(v - closed_form(2).to_mpf(30)) < 1e-15


@pytest.mark.slow
def test_i3_by_direct_cubature():
    v = mpmath.quad(lambda x, y, z: mpmath.loggamma(x + y + z), [0, 1], [0, 1], [0, 1])
    assert abs(v - closed_form(3).to_mpf(30)) < 1e-12
