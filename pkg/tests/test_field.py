"""Field arithmetic: axioms, canonical indexing, point enumeration."""

import itertools

import numpy as np
import pytest

from mvdmm.errors import CapacityError, FieldMismatchError, ParameterError, RangeError
from mvdmm.field import FieldSpec, enumerate_points


def poly_mul_divmod_oracle(a_coeffs, b_coeffs, modulus, p):
    """Naive polynomial multiplication followed by long division."""
    prod = [0] * (len(a_coeffs) + len(b_coeffs) - 1)
    for i, x in enumerate(a_coeffs):
        for j, y in enumerate(b_coeffs):
            prod[i + j] = (prod[i + j] + x * y) % p
    deg = len(modulus) - 1
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c == 0:
            continue
        for j in range(deg + 1):
            prod[i - deg + j] = (prod[i - deg + j] - c * modulus[j]) % p
    return prod[:deg]


def test_add_examples():
    gf2 = FieldSpec(2)
    assert gf2.add(1, 1) == 0
    gf19 = FieldSpec(19)
    assert gf19.add(12, 9) == 2
    gf8 = FieldSpec(2, 3, 0b1011)
    assert gf8.add(0b011, 0b110) == 0b101


def test_mul_examples():
    gf19 = FieldSpec(19)
    assert gf19.mul(7, 8) == 18
    gf8 = FieldSpec(2, 3, 0b1011)
    # oracle: naive polynomial product reduced by x^3 + x + 1
    expected = poly_mul_divmod_oracle([0, 1, 0], [0, 0, 1], [1, 1, 0, 1], 2)
    assert expected == [1, 1, 0]
    assert gf8.mul(0b010, 0b100) == 0b011
    for spec in (gf2 := FieldSpec(2), gf19, gf8, FieldSpec(5, 2)):
        for a in range(spec.q):
            assert spec.mul(a, 1) == a


def test_inv_examples():
    assert FieldSpec(19).inv(2) == 10
    assert FieldSpec(2).inv(1) == 1
    gf8 = FieldSpec(2, 3, 0b1011)
    # oracle: exhaustive search for the element whose product is 1
    wanted = [b for b in range(8) if gf8.mul(2, b) == 1]
    assert wanted == [0b101]
    assert gf8.inv(2) == 0b101
    with pytest.raises(ZeroDivisionError):
        gf8.inv(0)


def test_index_round_trip():
    gf4 = FieldSpec(2, 2)
    assert gf4.element(2).coefficients() == (0, 1)
    gf19 = FieldSpec(19)
    assert gf19.element(5).index == 5
    for spec in (gf4, gf19, FieldSpec(3, 3), FieldSpec(2, 5)):
        for i in range(spec.q):
            assert spec.element(i).index == i
    with pytest.raises(RangeError):
        gf4.element(4)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_field_axioms_exhaustive(q):
    spec = FieldSpec.of_order(q)
    elems = range(spec.q)
    for a, b in itertools.product(elems, repeat=2):
        assert spec.add(a, b) == spec.add(b, a)
        assert spec.mul(a, b) == spec.mul(b, a)
    for a, b, c in itertools.product(elems, repeat=3):
        assert spec.add(spec.add(a, b), c) == spec.add(a, spec.add(b, c))
        assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))
        assert spec.mul(a, spec.add(b, c)) == spec.add(spec.mul(a, b), spec.mul(a, c))
    for a in range(1, spec.q):
        assert spec.mul(a, spec.inv(a)) == 1


@pytest.mark.parametrize("q", [25, 27, 32, 49, 64])
def test_field_axioms_sampled(q):
    spec = FieldSpec.of_order(q)
    rng = np.random.default_rng(q)
    triples = rng.integers(0, q, size=(4000, 3))
    for a, b, c in triples:
        a, b, c = int(a), int(b), int(c)
        assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))
        assert spec.mul(a, spec.add(b, c)) == spec.add(spec.mul(a, b), spec.mul(a, c))
        assert spec.add(a, spec.neg(a)) == 0
    for a in range(1, q):
        assert spec.mul(a, spec.inv(a)) == 1


@pytest.mark.parametrize("q", [2, 3, 4, 8, 16, 19, 25, 27, 32, 49, 64, 81, 125, 128, 256])
def test_unit_group_order(q):
    spec = FieldSpec.of_order(q)
    for a in range(1, spec.q):
        assert spec.pow(a, spec.q - 1) == 1


def test_builtin_moduli_are_least_irreducible():
    # spot values: x^2+x+1 (GF4), x^3+x+1 (GF8), x^4+x+1 (GF16)
    assert FieldSpec(2, 2).modulus == (1, 1, 1)
    assert FieldSpec(2, 3).modulus == (1, 1, 0, 1)
    assert FieldSpec(2, 4).modulus == (1, 1, 0, 0, 1)


def test_user_modulus_validation():
    with pytest.raises(ParameterError):
        FieldSpec(2, 2, 0b101)  # x^2 + 1 = (x+1)^2 over GF(2)
    alt = FieldSpec(2, 3, 0b1101)  # x^3 + x^2 + 1 is irreducible
    assert alt.mul(2, alt.inv(2)) == 1
    assert alt != FieldSpec(2, 3, 0b1011)


def test_spec_text_round_trip():
    for text in ("2", "19", "2^3/11", "5^2/27"):
        spec = FieldSpec.from_string(text)
        assert FieldSpec.from_string(str(spec)) == spec
    assert str(FieldSpec(19)) == "19"
    assert str(FieldSpec(2, 3)) == "2^3/11"
    assert FieldSpec.from_string("8") == FieldSpec(2, 3)


def test_element_operator_overloads():
    gf8 = FieldSpec(2, 3)
    x = gf8.element(2)
    assert (x * x * x + x).index == gf8.add(gf8.mul(2, gf8.mul(2, 2)), 2)
    assert (x / x).index == 1
    assert (-x + x).index == 0
    assert (x**7).index == 1
    with pytest.raises(FieldMismatchError):
        _ = x + FieldSpec(2).element(1)


def test_scalar_mismatch_and_range_errors():
    with pytest.raises(ParameterError):
        FieldSpec(6)  # not prime
    with pytest.raises(ParameterError):
        FieldSpec(4)  # characteristic must be prime; use of_order for powers
    with pytest.raises(CapacityError):
        FieldSpec(2, 17)


def test_enumerate_points_order_and_sizes():
    gf2 = FieldSpec(2)
    assert enumerate_points(gf2, 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(enumerate_points(gf2, 10)) == 1024
    assert len(enumerate_points(FieldSpec(19), 2)) == 361
    with pytest.raises(CapacityError):
        enumerate_points(gf2, 12, limit=1000)
    with pytest.raises(ParameterError):
        enumerate_points(gf2, 0)


def test_vectorized_ops_match_scalar():
    rng = np.random.default_rng(0)
    for spec in (FieldSpec(2), FieldSpec(19), FieldSpec(2, 3), FieldSpec(3, 2), FieldSpec(5, 2)):
        x = rng.integers(0, spec.q, size=200)
        y = rng.integers(0, spec.q, size=200)
        adds = spec.add_arr(x, y)
        muls = spec.mul_arr(x, y)
        subs = spec.sub_arr(x, y)
        for i in range(200):
            assert int(adds[i]) == spec.add(int(x[i]), int(y[i]))
            assert int(muls[i]) == spec.mul(int(x[i]), int(y[i]))
            assert int(subs[i]) == spec.sub(int(x[i]), int(y[i]))


def test_matmul_planes_match_schoolbook():
    rng = np.random.default_rng(1)
    for spec in (FieldSpec(2, 3), FieldSpec(3, 2), FieldSpec(19)):
        a = rng.integers(0, spec.q, size=(5, 7))
        b = rng.integers(0, spec.q, size=(7, 4))
        fast = spec.matmul(a, b)
        for i in range(5):
            for j in range(4):
                acc = 0
                for k in range(7):
                    acc = spec.add(acc, spec.mul(int(a[i, k]), int(b[k, j])))
                assert acc == int(fast[i, j])
