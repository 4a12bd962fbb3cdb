"""Exact value of the unit-cube integral of log Gamma(x1 + ... + xn).

Values live in the Q-span of {1, log pi, log p : p prime}. Every log k is
split over primes on construction, which makes ``==`` a decision procedure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal, localcontext
from fractions import Fraction
from typing import Dict, Mapping

import mpmath

from .errors import ConsistencyError
from .exact import as_rational, harmonic


def factorize(k: int) -> Dict[int, int]:
    if k < 1:
        raise ValueError(f"log of non-positive integer {k}")
    out: Dict[int, int] = {}
    p = 2
    while p * p <= k:
        while k % p == 0:
            out[p] = out.get(p, 0) + 1
            k //= p
        p += 1 if p == 2 else 2
    if k > 1:
        out[k] = out.get(k, 0) + 1
    return out


@dataclass(frozen=True)
class ClosedFormValue:
    """``constant + log_pi*log(pi) + sum log_primes[p]*log(p)``."""

    constant: Fraction = Fraction(0)
    log_pi: Fraction = Fraction(0)
    log_primes: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constant", as_rational(self.constant))
        object.__setattr__(self, "log_pi", as_rational(self.log_pi))
        primes = {}
        for p, q in self.log_primes.items():
            q = as_rational(q)
            if p < 2 or factorize(p) != {p: 1}:
                raise ValueError(f"log basis element {p} is not prime")
            if q:
                primes[p] = q
        object.__setattr__(self, "log_primes", dict(sorted(primes.items())))

    @classmethod
    def rational(cls, q) -> "ClosedFormValue":
        return cls(constant=q)

    @classmethod
    def log(cls, k: int, coeff=1) -> "ClosedFormValue":
        """``coeff * log(k)`` for a positive integer k."""
        coeff = as_rational(coeff)
        return cls(log_primes={p: coeff * e for p, e in factorize(k).items()})

    @classmethod
    def half_log_two_pi(cls) -> "ClosedFormValue":
        """Raabe's integral of log Gamma over [0, 1]."""
        return cls(log_pi=Fraction(1, 2), log_primes={2: Fraction(1, 2)})

    def is_zero(self) -> bool:
        return not self.constant and not self.log_pi and not self.log_primes

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ClosedFormValue.rational(other)
        if not isinstance(other, ClosedFormValue):
            return NotImplemented
        primes = dict(self.log_primes)
        for p, q in other.log_primes.items():
            primes[p] = primes.get(p, 0) + q
        return ClosedFormValue(self.constant + other.constant,
                               self.log_pi + other.log_pi, primes)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ClosedFormValue.rational(other)
        if not isinstance(other, ClosedFormValue):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, q):
        if not isinstance(q, (int, Fraction)):
            return NotImplemented
        return ClosedFormValue(self.constant * q, self.log_pi * q,
                               {p: c * q for p, c in self.log_primes.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClosedFormValue):
            return NotImplemented
        return (self.constant == other.constant and self.log_pi == other.log_pi
                and self.log_primes == other.log_primes)

    def __hash__(self):
        return hash((self.constant, self.log_pi, tuple(self.log_primes.items())))

    def __str__(self):
        terms = []
        if self.constant:
            terms.append((self.constant, ""))
        if self.log_pi:
            terms.append((self.log_pi, "logπ"))
        terms.extend((q, f"log{p}") for p, q in self.log_primes.items())
        if not terms:
            return "0"
        out = []
        for i, (q, sym) in enumerate(terms):
            mag = abs(q)
            body = str(mag) if not sym else (sym if mag == 1 else f"{mag}·{sym}")
            if i == 0:
                out.append(("-" if q < 0 else "") + body)
            else:
                out.append((" - " if q < 0 else " + ") + body)
        return "".join(out)

    def to_mpf(self, dps: int):
        with mpmath.workdps(dps):
            acc = mpmath.mpf(self.constant.numerator) / self.constant.denominator
            if self.log_pi:
                acc += (mpmath.mpf(self.log_pi.numerator) / self.log_pi.denominator
                        * mpmath.log(mpmath.pi))
            for p, q in self.log_primes.items():
                acc += mpmath.mpf(q.numerator) / q.denominator * mpmath.log(p)
            return +acc

    def __float__(self):
        return float(self.to_mpf(30))


def numeric_value(v: ClosedFormValue, digits: int) -> str:
    """Decimal rendering of ``v`` rounded to ``digits`` places after the point."""
    if not 1 <= digits <= 50:
        raise ValueError(f"digits must be in [1, 50], got {digits}")
    # magnitude can be large (coefficients grow like k^n/n!), so guard generously
    dps = digits + 30 + sum(len(str(abs(q.numerator))) for q in v.log_primes.values())
    x = v.to_mpf(dps)
    d = Decimal(mpmath.nstr(x, dps, min_fixed=-math.inf, max_fixed=math.inf))
    with localcontext(Context(prec=dps + 10)):
        out = d.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
    if out.is_zero():
        out = abs(out)
    return f"{out:f}"


def _sign(k: int) -> int:
    return -1 if k & 1 else 1


def closed_form(n: int) -> ClosedFormValue:
    """I(n) = 1/2 log(2pi) - (n-1)/2 H_n
              + sum_{k=2}^{n-1} (-1)^(n+k+1) k^n / n! C(n-1,k) log k."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    value = ClosedFormValue.half_log_two_pi() - Fraction(n - 1, 2) * harmonic(n)
    nfact = math.factorial(n)
    for k in range(2, n):
        coeff = Fraction(_sign(n + k + 1) * k ** n * math.comb(n - 1, k), nfact)
        value = value + ClosedFormValue.log(k, coeff)
    return value


def _need_n2(n: int) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")


def s1_total(n: int) -> ClosedFormValue:
    """sum_{k=1}^{n-1} S_1(k) in collapsed form."""
    _need_n2(n)
    value = ClosedFormValue()
    for k in range(2, n - 1):
        coeff = Fraction(math.comb(n - 1, k) * _sign(k) * (-k) ** n, n)
        value = value + ClosedFormValue.log(k, coeff)
    coeff = Fraction(math.factorial(n) * (n - 1) - (n - 1) ** n, n)
    return value + ClosedFormValue.log(n - 1, coeff)


def s2_total(n: int) -> Fraction:
    """sum_{k=1}^{n-1} S_2(k) = (n-1)!(n-1) - (n-1)/2 H_n (n-1)!."""
    _need_n2(n)
    f = math.factorial(n - 1)
    return f * (n - 1) - Fraction(n - 1, 2) * harmonic(n) * f


def r1(n: int) -> Fraction:
    _need_n2(n)
    return harmonic(n) / n * ((n - 1) ** n - Fraction(n - 1, 2) * math.factorial(n))


def r2(n: int) -> Fraction:
    _need_n2(n)
    return math.factorial(n - 1) * (n - 1) - harmonic(n) / n * (n - 1) ** n


# Defining sums, evaluated term by term. These are the oracles for the
# collapsed forms above and share no algebra with them.


def s1_by_definition(n: int) -> ClosedFormValue:
    _need_n2(n)
    total = ClosedFormValue()
    for k in range(2, n):
        for m in range(k):
            c = math.comb(n - 1, m) * _sign(m)
            total = total + ClosedFormValue.log(
                k, Fraction(c * ((k - m) ** n - (-m) ** n), n))
            total = total - ClosedFormValue.log(
                k - 1, Fraction(c * ((k - m - 1) ** n - (-m) ** n), n))
    return total


def s2_term(n: int, k: int) -> Fraction:
    """S_2(k) from its triple-sum definition."""
    acc = Fraction(0)
    for m in range(k):
        inner = sum((Fraction((k ** r - (k - 1) ** r) * math.comb(n, r) * (-m) ** (n - r), r)
                     for r in range(1, n + 1)), Fraction(0))
        acc += math.comb(n - 1, m) * _sign(m) * inner
    return acc / n


def s2_by_definition(n: int) -> Fraction:
    _need_n2(n)
    return sum((s2_term(n, k) for k in range(1, n)), Fraction(0))


def r1_by_definition(n: int) -> Fraction:
    _need_n2(n)
    outer = sum(math.comb(n - 1, k) * _sign(k) * (-k) ** n for k in range(1, n - 1))
    inner = sum((Fraction(math.comb(n, r) * _sign(r), r) for r in range(1, n + 1)),
                Fraction(0))
    return -Fraction(outer, n) * inner


def r2_by_definition(n: int) -> Fraction:
    _need_n2(n)
    acc = Fraction(0)
    for m in range(n - 1):
        inner = sum((Fraction((-m) ** (n - r) * (n - 1) ** r * math.comb(n, r), r)
                     for r in range(1, n + 1)), Fraction(0))
        acc += math.comb(n - 1, m) * _sign(m) * inner
    return acc / n


@dataclass(frozen=True)
class DerivationTrace:
    s1_total: ClosedFormValue
    s2_total: Fraction
    r1: Fraction
    r2: Fraction
    tk_integral_total: ClosedFormValue
    final: ClosedFormValue


def closed_form_via_derivation(n: int, check: bool = True) -> DerivationTrace:
    """Assemble I(n) from its intermediate sums rather than the final formula.

    I(n) = 1/2 log(2pi) + (n-1) log(n-1) - (n-1)
           - 1/(n-1)! * sum_k int_0^1 T_k(t) log(t+k-1) dt,

    the T_k integral being S1 - S2 and S2 being split as R1 + R2. With
    ``check`` the result is compared against :func:`closed_form` and a
    mismatch raises :class:`ConsistencyError`.
    """
    _need_n2(n)
    s1 = s1_total(n)
    a, b = r1(n), r2(n)
    s2 = a + b
    if s2 != s2_total(n):
        raise ConsistencyError(f"R1 + R2 = {s2} but S2 total = {s2_total(n)} at n={n}")
    tk = s1 - s2
    final = (ClosedFormValue.half_log_two_pi() + ClosedFormValue.log(n - 1, n - 1)
             - (n - 1) - tk * Fraction(1, math.factorial(n - 1)))
    expected = closed_form(n) if check else final
    if final != expected:
        raise ConsistencyError(
            f"derivation gives {final}, closed form gives {expected} at n={n}")
    return DerivationTrace(s1, s2, a, b, tk, final)
