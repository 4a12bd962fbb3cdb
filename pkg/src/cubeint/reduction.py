"""Weight polynomials that collapse a unit-cube integral of f(x1+...+xn).

For dimension n,

    int_[0,1]^n f(x1+...+xn) dx = 1/(n-1)! * sum_{m=1}^{n} int_0^1 G_m(t) f(t+m-1) dt

where ``G_m`` is the weight of the slab ``m-1 <= sum x <= m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import ConsistencyError
from .exact import Poly, integrate_01, shifted_power


def _check_shell(n: int, m: int) -> None:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got n={n}")
    if not 1 <= m <= n:
        raise ValueError(f"shell index must satisfy 1 <= m <= n={n}, got m={m}")


def gm_closed(n: int, m: int) -> Poly:
    """G_m(t) = sum_{i=1}^{m} (-1)^(i-1) C(n, i-1) (t+m-i)^(n-1)."""
    _check_shell(n, m)
    g = Poly()
    for i in range(1, m + 1):
        coeff = math.comb(n, i - 1) * (-1 if (i - 1) & 1 else 1)
        g = g + shifted_power(m - i, n - 1) * coeff
    return g


def gm_recursive(n: int, m: int) -> Poly:
    """G_m from the inclusion-exclusion recursion over shifted boxes.

    G_1 = t^(n-1) and G_m = (t+m-1)^(n-1) - sum_{i<m} a_i G_i with
    ``a_i = C(m+n-i-1, n-1)``, the number of boxes in the enlarged slab
    congruent to shell i. Independent of :func:`gm_closed`; used only as a
    witness against it.
    """
    _check_shell(n, m)
    memo = [None, shifted_power(0, n - 1)]
    for j in range(2, m + 1):
        g = shifted_power(j - 1, n - 1)
        for i in range(1, j):
            g = g - memo[i] * recursion_coefficient(n, j, i)
        memo.append(g)
    return memo[m]


def recursion_coefficient(n: int, m: int, i: int) -> int:
    """Multiplicity a_i of shell i inside the enlarged shell m."""
    return math.comb(m + n - i - 1, n - 1)


@dataclass(frozen=True)
class Weight:
    m: int
    shift: int
    g: Poly


@dataclass(frozen=True)
class ReductionPlan:
    n: int
    weights: Tuple[Weight, ...]
    prefactor: Fraction

    def integrate_poly_exact(self, p: Poly) -> Fraction:
        """Apply the plan to a polynomial integrand, exactly."""
        total = Fraction(0)
        for w in self.weights:
            total += integrate_01(w.g * p.shift(w.shift))
        return self.prefactor * total


def reduction_plan(n: int) -> ReductionPlan:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got n={n}")
    weights = tuple(Weight(m, m - 1, gm_closed(n, m)) for m in range(1, n + 1))
    total = Poly()
    for w in weights:
        total = total + w.g
    if total != Poly.constant(math.factorial(n - 1)):
        raise ConsistencyError(
            f"weights for n={n} sum to {total}, expected {math.factorial(n - 1)}")
    return ReductionPlan(n, weights, Fraction(1, math.factorial(n - 1)))


def _t_sum(n: int, k: int) -> Poly:
    # sum_{m=1}^{k} C(n-1, k-m) (-1)^(k-m) (t+m-1)^(n-1); zero for k = 0
    acc = Poly()
    for m in range(1, k + 1):
        c = math.comb(n - 1, k - m) * (-1 if (k - m) & 1 else 1)
        if c:
            acc = acc + shifted_power(m - 1, n - 1) * c
    return acc


def tk_poly(n: int, k: int) -> Poly:
    """T_k(t), the running sum G_1 + ... + G_k in its collapsed form."""
    if n < 2:
        raise ValueError(f"T_k needs n >= 2, got n={n}")
    if not 1 <= k <= n - 1:
        raise ValueError(f"T_k needs 1 <= k <= n-1={n - 1}, got k={k}")
    return _t_sum(n, k)


def gm_partial_sum(n: int, k: int) -> Poly:
    """sum_{m=k}^{n} G_m(t), via (n-1)! - T_{k-1}."""
    _check_shell(n, k)
    return Poly.constant(math.factorial(n - 1)) - _t_sum(n, k - 1)
