"""Exponent combinatorics: reduction, sums, footprints, hyperbolic sets."""

import itertools
import math

import pytest

from mvdmm import exponents as ex
from mvdmm.errors import InfeasibleError, ParameterError, RangeError


def brute_hyp(q, l, f):
    return sorted(
        a for a in itertools.product(range(q), repeat=l)
        if math.prod(q - x for x in a) >= f
    )


def test_reduce_q_examples():
    assert ex.reduce_q(3, 5) == 3
    assert ex.reduce_q(7, 5) == 3
    assert ex.reduce_q(2, 2) == 1
    with pytest.raises(RangeError):
        ex.reduce_q(10, 5)
    with pytest.raises(RangeError):
        ex.reduce_q(-1, 5)


@pytest.mark.parametrize("q", [2, 3, 5, 8])
def test_reduce_q_properties(q):
    for a in range(q):
        assert ex.reduce_q(a, q) == a  # idempotent on [0, q)
    for a in range(q, 2 * q - 1):
        assert 1 <= ex.reduce_q(a, q) < q  # wraps into [1, q)
    with pytest.raises(RangeError):
        ex.reduce_q(2 * q - 1, q)  # unreachable from sums of reduced exponents


def test_minkowski_sum_examples():
    origin = ex.ExponentSet.of(5, 1, [(0,)])
    b = ex.ExponentSet.of(5, 1, [(0,), (2,), (3,)])
    assert ex.minkowski_sum_q(origin, b) == b

    a = ex.ExponentSet.of(5, 1, [(0,), (1,)])
    b = ex.ExponentSet.of(5, 1, [(0,), (2,)])
    s = ex.minkowski_sum_q(a, b)
    assert s.vectors == ((0,), (1,), (2,), (3,))
    assert len(s) == len(a) * len(b)

    c = ex.ExponentSet.of(2, 2, [(0, 1)])
    assert ex.minkowski_sum_q(c, c).vectors == ((0, 1),)  # (1+1)_2 = 1

    with pytest.raises(ParameterError):
        ex.minkowski_sum_q(a, ex.ExponentSet.of(7, 1, [(0,)]))


def test_fb_examples():
    s = ex.ExponentSet.of(3, 2, [(0, 0)])
    assert ex.fb(s) == ex.FootprintValue(9, (0, 0))

    # box sums with per-coordinate counts (2, 2) x (6, 6) at q = 19
    d_a = ex.ExponentSet.of(19, 2, itertools.product(range(2), repeat=2))
    d_b = ex.ExponentSet.of(19, 2, [(2 * i, 2 * j) for i in range(6) for j in range(6)])
    summed = ex.minkowski_sum_q(d_a, d_b)
    assert ex.fb(summed).value == 64

    weights = [(1, 1, 1, 1, 0, 0, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0, 0, 0, 0, 0)]
    s2 = ex.ExponentSet.of(2, 10, weights)
    assert ex.fb(s2).value == 2**6

    with pytest.raises(ParameterError):
        ex.fb(ex.ExponentSet.of(2, 1, []))


def test_fb_witness_is_lexicographically_least():
    # two members attain the minimum 4: (0,2) and (2,0); witness must be (0,2)
    s = ex.ExponentSet.of(3, 2, [(0, 2), (2, 0), (0, 0)])
    f = ex.fb(s)
    assert f.value == 3
    assert f.witness == (0, 2)


def test_delta_examples():
    assert ex.delta(ex.ExponentSet.of(3, 2, [(0, 0)])) == 0
    d_a = ex.ExponentSet.of(19, 2, itertools.product(range(2), repeat=2))
    d_b = ex.ExponentSet.of(19, 2, [(2 * i, 2 * j) for i in range(6) for j in range(6)])
    assert ex.delta(ex.minkowski_sum_q(d_a, d_b)) == 297


def test_hyp_set_examples():
    for f in (0, 1):
        assert len(ex.hyp_set(3, 2, f)) == 9
    s = ex.hyp_set(11, 2, 53)
    assert s.vectors == tuple(brute_hyp(11, 2, 53))
    for extreme in ((6, 0), (5, 2), (2, 5), (0, 6)):
        assert extreme in s
    assert (7, 0) not in s and (3, 5) not in s
    assert ex.hyp_set(5, 2, 25).vectors == ((0, 0),)


@pytest.mark.parametrize("q,l", [(2, 3), (3, 2), (5, 2), (7, 1), (4, 3)])
def test_hyp_set_matches_brute_force(q, l):
    for f in range(0, q**l + 2):
        assert list(ex.hyp_set(q, l, f)) == brute_hyp(q, l, f)


def test_hyp_size_examples():
    assert ex.hyp_size(7, 1, 3) == 5
    assert ex.hyp_size(2, 5, 8) == 16
    assert ex.hyp_size(2, 10, 16) == 848
    assert ex.hyp_size(2, 10, 64) == 386


def test_hyp2_size_examples():
    assert ex.hyp2_size(5, 4) == 26
    assert ex.hyp2_size(10, 512) == 11
    for l in (1, 4, 9):
        assert ex.hyp2_size(l, 1) == 2**l


def test_xi_bound_examples():
    assert ex.xi_bound(19, 2, 144) == 102
    assert ex.xi_bound(2, 20, 968 * 968) == 128
    for q, l in ((3, 2), (5, 1)):
        assert ex.xi_bound(q, l, 1) == q**l
    with pytest.raises(InfeasibleError):
        ex.xi_bound(3, 2, 10)
    with pytest.raises(ParameterError):
        ex.xi_bound(3, 2, 0)


def test_xi_bound_is_tight_against_enumeration():
    for q, l in ((3, 2), (5, 2), (4, 2)):
        for target in range(1, q**l + 1):
            xi = ex.xi_bound(q, l, target)
            assert len(brute_hyp(q, l, xi)) >= target
            assert xi == q**l or len(brute_hyp(q, l, xi + 1)) < target


def test_support_examples():
    assert ex.support(ex.ExponentSet.of(2, 3, [(0, 0, 0)])) == frozenset()
    assert ex.support(ex.ExponentSet.of(2, 2, [(0, 1), (0, 0)])) == frozenset({2})
    assert ex.support(ex.hyp_set(2, 3, 2)) == frozenset({1, 2, 3})


def test_hyp_nesting_monotonicity():
    big = set(ex.hyp_set(11, 2, 8))
    mid = set(ex.hyp_set(11, 2, 24))
    small = set(ex.hyp_set(11, 2, 53))
    assert small <= mid <= big


@pytest.mark.parametrize("q,l", [(2, 2), (3, 2), (4, 2), (5, 2), (3, 3)])
def test_hyp_set_is_maximal_for_its_footprint(q, l):
    box = set(itertools.product(range(q), repeat=l))
    for f in range(1, q**l + 1):
        s = ex.hyp_set(q, l, f)
        if len(s):
            assert ex.fb(s).value >= f
        for outsider in box - set(s):
            assert math.prod(q - x for x in outsider) < f


def test_vector_text_forms():
    assert ex.format_vec((0, 3, 1)) == "(0,3,1)"
    assert ex.parse_vec("(0,3,1)") == (0, 3, 1)
    assert ex.parse_vec("2,5") == (2, 5)
    s = ex.hyp_set(3, 2, 4)
    text = s.to_text()
    assert text.endswith("\n")
    assert ex.ExponentSet.from_text(3, 2, text) == s


def test_exponent_set_rejects_out_of_range():
    with pytest.raises(RangeError):
        ex.ExponentSet.of(3, 2, [(0, 3)])
    with pytest.raises(ParameterError):
        ex.ExponentSet.of(3, 2, [(0, 1, 2)])
