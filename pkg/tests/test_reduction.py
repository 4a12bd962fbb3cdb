import itertools
import math
from fractions import Fraction as F

import pytest

from cubeint.errors import ConsistencyError
from cubeint.exact import Poly, integrate_01
from cubeint import reduction
from cubeint.reduction import (gm_closed, gm_partial_sum, gm_recursive,
                               recursion_coefficient, reduction_plan, tk_poly)


def eulerian_by_permutations(n, k):
    """Count permutations of range(n) with exactly k descents."""
    return sum(1 for p in itertools.permutations(range(n))
               if sum(p[i] > p[i + 1] for i in range(n - 1)) == k)


@pytest.mark.parametrize("n", range(1, 8))
def test_g1_is_monomial(n):
    assert gm_closed(n, 1) == Poly.monomial(n - 1)
    assert gm_recursive(n, 1) == Poly.monomial(n - 1)


def test_low_dimension_weights():
    assert gm_closed(2, 2) == Poly([1, -1])
    assert gm_closed(3, 2) == Poly([1, 2, -2])
    assert gm_closed(3, 3) == Poly([1, -2, 1])
    assert gm_recursive(3, 2) == Poly([1, 2, -2])
    assert recursion_coefficient(3, 2, 1) == 3


def test_recursion_n4_m3():
    assert gm_recursive(4, 3) == gm_closed(4, 3)


def test_shell_range_rejected():
    for bad in [(3, 0), (3, 4), (0, 1)]:
        with pytest.raises(ValueError):
            gm_closed(*bad)
        with pytest.raises(ValueError):
            gm_recursive(*bad)


@pytest.mark.parametrize("n", range(1, 13))
def test_closed_equals_recursive(n):
    for m in range(1, n + 1):
        assert gm_closed(n, m) == gm_recursive(n, m)


@pytest.mark.parametrize("n", range(1, 21))
def test_weights_partition_unity(n):
    total = sum((gm_closed(n, m) for m in range(1, n + 1)), Poly())
    assert total == Poly.constant(math.factorial(n - 1))


@pytest.mark.parametrize("n", range(1, 13))
def test_reflection_and_degree(n):
    for m in range(1, n + 1):
        g = gm_closed(n, m)
        assert g.degree == n - 1
        assert gm_closed(n, n + 1 - m).reflect() == g


@pytest.mark.parametrize("n", range(1, 13))
def test_weights_nonnegative_on_grid(n):
    for m in range(1, n + 1):
        g = gm_closed(n, m)
        assert all(g(F(i, 256)) >= 0 for i in range(257))


@pytest.mark.parametrize("n", range(1, 8))
def test_shell_volumes_against_permutation_count(n):
    plan = reduction_plan(n)
    for w in plan.weights:
        expected = F(eulerian_by_permutations(n, w.m - 1), math.factorial(n))
        assert integrate_01(w.g) * plan.prefactor == expected


def test_reduction_plan_examples():
    p1 = reduction_plan(1)
    assert p1.prefactor == 1 and len(p1.weights) == 1
    assert p1.weights[0].g == Poly.constant(1) and p1.weights[0].shift == 0
    p2 = reduction_plan(2)
    assert p2.prefactor == 1
    assert [(w.shift, w.g) for w in p2.weights] == [(0, Poly([0, 1])), (1, Poly([1, -1]))]
    p3 = reduction_plan(3)
    assert p3.prefactor == F(1, 2)
    assert [w.g for w in p3.weights] == [Poly([0, 0, 1]), Poly([1, 2, -2]), Poly([1, -2, 1])]
    assert [w.m for w in p3.weights] == [1, 2, 3]
    with pytest.raises(ValueError):
        reduction_plan(0)


def test_reduction_plan_detects_bad_weights(monkeypatch):
    monkeypatch.setattr(reduction, "gm_closed", lambda n, m: Poly.monomial(n - 1))
    with pytest.raises(ConsistencyError):
        reduction_plan(3)


def test_partial_sums_examples():
    assert gm_partial_sum(4, 1) == Poly.constant(6)
    assert gm_partial_sum(3, 3) == Poly([1, -2, 1])
    assert gm_partial_sum(3, 2) == Poly([2, 0, -1])
    assert gm_partial_sum(3, 2) == gm_closed(3, 2) + gm_closed(3, 3)
    with pytest.raises(ValueError):
        gm_partial_sum(3, 4)


def test_tk_examples():
    for n in range(2, 8):
        assert tk_poly(n, 1) == Poly.monomial(n - 1)
    assert tk_poly(3, 2) == Poly([1, 2, -1])
    with pytest.raises(ValueError):
        tk_poly(3, 3)
    with pytest.raises(ValueError):
        tk_poly(1, 1)


@pytest.mark.parametrize("n", range(2, 11))
def test_partial_sum_relations(n):
    fact = math.factorial(n - 1)
    for k in range(1, n + 1):
        brute = sum((gm_closed(n, m) for m in range(k, n + 1)), Poly())
        assert gm_partial_sum(n, k) == brute
    for k in range(1, n):
        assert gm_partial_sum(n, k + 1) + tk_poly(n, k) == fact
        # T_k is the running sum G_1 + ... + G_k
        assert tk_poly(n, k) == sum((gm_closed(n, m) for m in range(1, k + 1)), Poly())


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 11) for m in range(1, 13 - n) if m <= 12])
def test_recursion_coefficient_counts_boxes(n, m):
    hist = {}
    for idx in itertools.product(range(1, m + 1), repeat=n):
        s = m + n - sum(idx)
        hist[s] = hist.get(s, 0) + 1
    for i in range(1, m):
        assert hist.get(i, 0) == recursion_coefficient(n, m, i)


def test_plan_applied_to_constant_is_cube_volume():
    for n in range(1, 11):
        assert reduction_plan(n).integrate_poly_exact(Poly.constant(1)) == 1
