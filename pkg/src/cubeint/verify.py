"""Property suites behind ``cubeint verify``.

Each suite returns a flat list of :class:`Check` records. Oracles used here
(Eulerian recurrence, composition enumeration, defining sums) are computed
independently of the code they check.
"""
from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from . import loggamma as lg
from .exact import Identity, Poly, check_identity_range, harmonic, integrate_01
from .quadrature import (TANH_SINH, Integrand, QuadPolicy, exact_poly_cube,
                         integrate_1d, integrate_reduced, mc_cube)
from .reduction import (gm_partial_sum, gm_recursive,
                        recursion_coefficient, reduction_plan, tk_poly)

IDENTITY_SAMPLES = (Fraction(-2), Fraction(-1, 2), Fraction(0), Fraction(1, 3), Fraction(5))


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    n: Optional[int]
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"suite": self.suite, "check": self.name, "n": self.n,
                "passed": self.passed, "detail": self.detail}


def random_rational(rng: random.Random, span: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_poly(rng: random.Random, max_degree: int) -> Poly:
    deg = rng.randint(0, max_degree)
    return Poly([random_rational(rng) for _ in range(deg)] + [rng.choice([-3, -1, 1, 2, Fraction(1, 2)])])


def eulerian_number(n: int, k: int) -> int:
    """Permutations of n elements with k descents, by the standard recurrence."""
    row = [1]  # n = 0
    for size in range(1, n + 1):
        new = []
        for j in range(size):
            a = row[j] if j < len(row) else 0
            b = row[j - 1] if 0 <= j - 1 < len(row) else 0
            new.append((j + 1) * a + (size - j) * b)
        row = new
    return row[k] if 0 <= k < len(row) else 0


def count_boxes(n: int, m: int) -> Counter:
    """For the enlarged slab m, how many unit boxes are congruent to each shell s.

    Box (i1, ..., in) with entries in [1, m] is a translate of shell
    ``s = m + n - (i1 + ... + in)``.
    """
    return Counter(m + n - sum(idx) for idx in itertools.product(range(1, m + 1), repeat=n))


def power_sum_lhs(n: int) -> int:
    return sum(math.comb(n - 1, m) * (-1) ** m * (-m) ** n for m in range(n - 1))


def power_sum_rhs(n: int) -> Fraction:
    return (n - 1) ** n - Fraction(n - 1, 2) * math.factorial(n)


def double_sum_lhs(n: int) -> Fraction:
    total = Fraction(0)
    for m in range(n - 1):
        inner = sum((Fraction((m - n + 1) ** k * m ** (n - k), k) for k in range(1, n + 1)),
                    Fraction(0))
        total += math.comb(n - 1, m) * (-1) ** (m + n) * inner
    return total


def double_sum_rhs(n: int) -> Fraction:
    f = math.factorial(n)
    return f * (n - 1) - Fraction(n - 1, 2) * f * harmonic(n)


def identity_suite(n_max: int, seed: int = 0) -> List[Check]:
    rng = random.Random(seed)
    polys = {n: [random_poly(rng, n - 1) for _ in range(3)] for n in range(1, n_max + 1)}
    out = []
    for ident in Identity:
        rep = check_identity_range(ident, range(1, n_max + 1), IDENTITY_SAMPLES,
                                   polys=polys.__getitem__)
        detail = f"{rep.instances} instances, n in [1, {n_max}]"
        if rep.witness is not None:
            w = rep.witness
            detail = f"fails at n={w.n} params={[str(p) for p in w.params]}: {w.lhs} != {w.rhs}"
        out.append(Check("identities", f"identity ({ident.value}) {ident.name.lower()}",
                         None, rep.passed, detail))
    return out


def reduction_suite(n_max: int, seed: int = 0) -> List[Check]:
    rng = random.Random(seed)
    out = []
    grid = [Fraction(i, 256) for i in range(257)]
    for n in range(1, n_max + 1):
        plan = reduction_plan(n)
        gs = [w.g for w in plan.weights]
        fact = math.factorial(n - 1)

        bad = [m for m in range(1, n + 1) if gm_recursive(n, m) != gs[m - 1]]
        out.append(Check("reduction", "closed form equals recursion", n, not bad,
                         f"mismatch at m={bad[0]}" if bad else ""))

        total = sum(gs, Poly())
        out.append(Check("reduction", "weights sum to (n-1)!", n,
                         total == Poly.constant(fact), "" if total == fact else str(total)))

        bad = [m for m in range(1, n + 1) if gs[n - m].reflect() != gs[m - 1]]
        out.append(Check("reduction", "reflection symmetry", n, not bad,
                         f"mismatch at m={bad[0]}" if bad else ""))

        neg = [(m, t) for m in range(1, n + 1) for t in grid if gs[m - 1](t) < 0]
        out.append(Check("reduction", "weights nonnegative on 1/256 grid", n, not neg,
                         f"G_{neg[0][0]}({neg[0][1]}) < 0" if neg else ""))

        bad = [m for m in range(1, n + 1)
               if integrate_01(gs[m - 1]) * plan.prefactor
               != Fraction(eulerian_number(n, m - 1), math.factorial(n))]
        out.append(Check("reduction", "shell volumes are Eulerian numbers / n!", n, not bad,
                         f"mismatch at m={bad[0]}" if bad else ""))

        bad = [k for k in range(1, n + 1) if gm_partial_sum(n, k) != sum(gs[k - 1:], Poly())]
        if n >= 2:
            bad += [k for k in range(1, n) if gm_partial_sum(n, k + 1) + tk_poly(n, k) != fact]
        out.append(Check("reduction", "partial sums and T_k", n, not bad,
                         f"mismatch at k={bad[0]}" if bad else ""))

        bad = []
        for m in range(1, n + 1):
            if n + m > 12:
                break
            counts = count_boxes(n, m)
            for i in range(1, m):
                if counts[i] != recursion_coefficient(n, m, i):
                    bad.append((m, i))
        out.append(Check("reduction", "recursion coefficients count boxes", n, not bad,
                         f"mismatch at (m, i)={bad[0]}" if bad else ""))

        bad = []
        for _ in range(5):
            p = random_poly(rng, 6)
            if exact_poly_cube(n, p) != plan.integrate_poly_exact(p):
                bad.append(p)
        out.append(Check("reduction", "exact reduction of polynomial integrands", n, not bad,
                         f"mismatch for p={bad[0]}" if bad else ""))
    return out


def loggamma_suite(n_max: int, samples: int = 200_000, seed: int = 0,
                   workers: int = 1) -> List[Check]:
    out = []
    lgf = Integrand.loggamma()
    raabe = integrate_1d(lgf, 0, Poly.constant(1), QuadPolicy(TANH_SINH))
    target = float(lg.ClosedFormValue.half_log_two_pi())
    out.append(Check("loggamma", "tanh-sinh reproduces 1/2 log(2 pi)", None,
                     abs(raabe.value - target) <= 1e-12,
                     f"|diff| = {abs(raabe.value - target):.3e}"))
    for n in range(1, n_max + 1):
        cf = lg.closed_form(n)
        if n >= 2:
            trace = lg.closed_form_via_derivation(n, check=False)
            out.append(Check("loggamma", "closed form equals derivation chain", n,
                             trace.final == cf, "" if trace.final == cf else str(trace.final)))
            pairs = [
                ("S1 total equals its defining sum", lg.s1_total(n), lg.s1_by_definition(n)),
                ("S2 total equals its defining sum", lg.s2_total(n), lg.s2_by_definition(n)),
                ("R1 equals its defining sum", lg.r1(n), lg.r1_by_definition(n)),
                ("R2 equals its defining sum", lg.r2(n), lg.r2_by_definition(n)),
                ("R1 + R2 equals S2 total", lg.r1(n) + lg.r2(n), lg.s2_total(n)),
                ("alternating power sum", power_sum_lhs(n), power_sum_rhs(n)),
                ("alternating harmonic double sum", double_sum_lhs(n), double_sum_rhs(n)),
            ]
            for name, a, b in pairs:
                out.append(Check("loggamma", name, n, a == b, "" if a == b else f"{a} != {b}"))

        ref = float(lg.numeric_value(cf, 20))
        red = integrate_reduced(n, lgf)
        d = abs(red.value - ref)
        out.append(Check("loggamma", "quadrature matches closed form", n,
                         d <= 1e-10 and red.converged, f"|diff| = {d:.3e}"))
        mc = mc_cube(n, lgf, samples, seed, workers=workers)
        z = abs(mc.value - ref) / mc.error if mc.error else math.inf
        z2 = abs(mc.value - red.value) / mc.error if mc.error else math.inf
        out.append(Check("loggamma", "Monte Carlo within 4 standard errors", n,
                         z <= 4 and z2 <= 4, f"z = {z:.2f} vs closed form, {z2:.2f} vs quadrature"))
    return out


SUITES = ("identities", "reduction", "loggamma", "all")


def run_suite(suite: str, n_max: int, seed: int = 0, samples: int = 200_000,
              workers: int = 1) -> List[Check]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    checks: List[Check] = []
    if suite in ("identities", "all"):
        checks += identity_suite(n_max, seed)
    if suite in ("reduction", "all"):
        checks += reduction_suite(n_max, seed)
    if suite in ("loggamma", "all"):
        checks += loggamma_suite(n_max, samples, seed, workers)
    return checks
