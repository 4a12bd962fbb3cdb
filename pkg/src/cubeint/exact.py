"""Exact scalars, dense rational polynomials and combinatorial primitives.

Rationals are :class:`fractions.Fraction`; it already keeps every value
reduced with a positive denominator, so equality is field-wise.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions, floats (exactly) and ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def binomial(n: int, k: int) -> Fraction:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


def harmonic(n: int) -> Fraction:
    if n < 1:
        raise ValueError(f"harmonic number needs n >= 1, got {n}")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


class Poly:
    """Dense univariate polynomial in ``t`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``; trailing zeros are
    trimmed, so the zero polynomial has an empty coefficient tuple and
    degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def constant(cls, value) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly":
        return cls([0] * degree + [coeff])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly.constant(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"Poly({[str(c) for c in self._c]})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for i, c in enumerate(self._c):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "t" if i == 1 else f"t^{i}"
                body = var if mag == 1 else f"{mag}{var}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __neg__(self):
        return Poly(-c for c in self._c)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly(c * other for c in self._c)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if x == 0:
                continue
            for j, y in enumerate(other._c):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result, base = Poly.constant(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Exact Horner evaluation; floats are taken at their exact value."""
        x = as_rational(x)
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def shift(self, c) -> "Poly":
        """Return ``p(t + c)``."""
        c = as_rational(c)
        lin = Poly((c, 1))
        acc = Poly()
        for coeff in reversed(self._c):
            acc = acc * lin + coeff
        return acc

    def reflect(self) -> "Poly":
        """Return ``p(1 - t)``."""
        lin = Poly((1, -1))
        acc = Poly()
        for coeff in reversed(self._c):
            acc = acc * lin + coeff
        return acc

    def antiderivative(self) -> "Poly":
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self._c)])


def _as_poly(value) -> Optional[Poly]:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Poly.constant(value)
    return None


T = Poly((0, 1))


def shifted_power(c, e: int) -> Poly:
    """Binomial expansion of ``(t + c)**e``."""
    if e < 0:
        raise ValueError(f"exponent must be >= 0, got {e}")
    c = as_rational(c)
    return Poly(math.comb(e, i) * c ** (e - i) for i in range(e + 1))


def integrate_01(p: Poly) -> Fraction:
    return sum((c / (i + 1) for i, c in enumerate(p.coeffs)), Fraction(0))


# ---------------------------------------------------------------------------
# Combinatorial identities used by the log-gamma derivation.


class Identity(enum.Enum):
    ALTERNATING_PARTIAL_SUM = "a"
    """sum_{i<=m} (-1)^i C(n,i) = (-1)^m C(n-1,m), m < n"""
    FACTORIAL_DIFFERENCE = "b"
    """sum_k (-1)^k C(n,k) (x+n-k)^n = n!"""
    SHIFTED_DIFFERENCE = "c"
    """sum_k (-1)^k C(n,k) (x-k)^(n+1) = (x - n/2) (n+1)!"""
    HARMONIC_ALTERNATING = "d"
    """sum_{k>=1} (-1)^(k+1)/k C(n,k) = H_n"""
    HARMONIC_GENERATING = "e"
    """sum_{k>=1} (-1)^(k+1)/k C(n,k) [1-(1-x)^k] = sum_{k>=1} x^k/k"""
    DIFFERENCE_ANNIHILATES = "f"
    """sum_k (-1)^k C(n,k) P(k) = 0 for deg P < n"""

    @classmethod
    def parse(cls, tag) -> "Identity":
        if isinstance(tag, cls):
            return tag
        try:
            return cls(tag)
        except ValueError:
            return cls[str(tag).upper().replace("-", "_")]


@dataclass(frozen=True)
class IdentityCheck:
    """One evaluated instance of an identity."""

    identity: Identity
    n: int
    params: tuple
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityReport:
    identity: Identity
    n_range: tuple
    instances: int
    passed: bool
    witness: Optional[IdentityCheck] = None


def _alt(k: int) -> int:
    return -1 if k & 1 else 1


def check_identity(identity, n: int, x=None, poly: Optional[Poly] = None,
                   m: Optional[int] = None) -> IdentityCheck:
    """Evaluate both sides of ``identity`` exactly at ``n``.

    ``x`` is the sample point for (b), (c), (e); ``poly`` the polynomial for
    (f); ``m`` the partial-sum bound for (a).
    """
    ident = Identity.parse(identity)
    if n < 1:
        raise ValueError(f"identities are checked for n >= 1, got {n}")
    C = math.comb

    if ident is Identity.ALTERNATING_PARTIAL_SUM:
        if m is None or not 0 <= m < n:
            raise ValueError(f"identity (a) needs 0 <= m < n, got m={m}")
        lhs = Fraction(sum(_alt(i) * C(n, i) for i in range(m + 1)))
        rhs = Fraction(_alt(m) * C(n - 1, m))
        params = (m,)
    elif ident in (Identity.FACTORIAL_DIFFERENCE, Identity.SHIFTED_DIFFERENCE,
                   Identity.HARMONIC_GENERATING):
        if x is None:
            raise ValueError(f"identity ({ident.value}) needs a sample point x")
        x = as_rational(x)
        params = (x,)
        if ident is Identity.FACTORIAL_DIFFERENCE:
            lhs = sum((_alt(k) * C(n, k) * (x + n - k) ** n
                       for k in range(n + 1)), Fraction(0))
            rhs = Fraction(math.factorial(n))
        elif ident is Identity.SHIFTED_DIFFERENCE:
            lhs = sum((_alt(k) * C(n, k) * (x - k) ** (n + 1)
                       for k in range(n + 1)), Fraction(0))
            rhs = (x - Fraction(n, 2)) * math.factorial(n + 1)
        else:
            lhs = sum((Fraction(-_alt(k) * C(n, k), k) * (1 - (1 - x) ** k)
                       for k in range(1, n + 1)), Fraction(0))
            rhs = sum((x ** k / k for k in range(1, n + 1)), Fraction(0))
    elif ident is Identity.HARMONIC_ALTERNATING:
        lhs = sum((Fraction(-_alt(k) * C(n, k), k) for k in range(1, n + 1)),
                  Fraction(0))
        rhs = harmonic(n)
        params = ()
    else:
        if poly is None:
            raise ValueError("identity (f) needs a polynomial")
        if poly.degree >= n:
            raise ValueError(
                f"identity (f) needs deg P < n, got deg {poly.degree} with n={n}")
        lhs = sum((_alt(k) * C(n, k) * poly(k) for k in range(n + 1)),
                  Fraction(0))
        rhs = Fraction(0)
        params = (poly,)
    return IdentityCheck(ident, n, params, lhs, rhs)


def check_identity_range(identity, n_values: Sequence[int],
                         xs: Sequence = (), polys=None) -> IdentityReport:
    """Run ``identity`` over every n (and every sample) and summarize.

    ``polys`` maps n to a sequence of polynomials for identity (f).
    """
    ident = Identity.parse(identity)
    count = 0
    witness = None
    for n in n_values:
        if ident is Identity.ALTERNATING_PARTIAL_SUM:
            cases = [dict(m=m) for m in range(n)]
        elif ident is Identity.HARMONIC_ALTERNATING:
            cases = [{}]
        elif ident is Identity.DIFFERENCE_ANNIHILATES:
            cases = [dict(poly=p) for p in (polys(n) if polys else ())]
        else:
            cases = [dict(x=x) for x in xs]
        for kw in cases:
            count += 1
            res = check_identity(ident, n, **kw)
            if not res.holds and witness is None:
                witness = res
    n_values = list(n_values)
    return IdentityReport(ident, (min(n_values), max(n_values)), count,
                          witness is None, witness)
