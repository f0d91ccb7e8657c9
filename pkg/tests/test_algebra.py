import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ddnnf_topk.algebra import (
    NAT_PLUS,
    UINT64_MAX,
    UNIT_PRODUCT,
    ValueFunction,
    WeightsError,
    assignment_value,
    builtin_semigroup,
    dump_weights,
    lex_compare,
    literals_value,
    load_weights,
)

nats = st.integers(0, 2**40)
units = st.fractions(min_value=0, max_value=1, max_denominator=50)


def test_builtins_by_name():
    assert builtin_semigroup("nat-plus") is NAT_PLUS
    assert builtin_semigroup("unit-product") is UNIT_PRODUCT
    with pytest.raises(ValueError):
        builtin_semigroup("max-min")


def test_nat_plus_basics():
    assert NAT_PLUS.combine(2, 3) == 5
    assert NAT_PLUS.less(2, 3) and not NAT_PLUS.less(3, 3)
    assert NAT_PLUS.almost_strict and not NAT_PLUS.has_absorptive


def test_unit_product_basics():
    assert UNIT_PRODUCT.combine(Fraction(1, 2), Fraction(1, 3)) == Fraction(1, 6)
    assert UNIT_PRODUCT.combine(Fraction(0), Fraction(1, 2)) == 0
    assert UNIT_PRODUCT.least_absorptive == 0
    assert UNIT_PRODUCT.almost_strict


def test_nat_plus_overflow_is_an_error():
    assert NAT_PLUS.combine(UINT64_MAX - 1, 1) == UINT64_MAX
    with pytest.raises(OverflowError):
        NAT_PLUS.combine(UINT64_MAX, 1)


def test_assignment_value_example1(example1_nu):
    assert assignment_value(NAT_PLUS, example1_nu, (1, 1, 1, 0)) == 5
    assert assignment_value(NAT_PLUS, example1_nu, (1, 0, 0, 1)) == 2
    assert literals_value(NAT_PLUS, example1_nu, [1, -2, 3, -4]) == 3


def test_assignment_value_needs_variables():
    with pytest.raises(ValueError):
        assignment_value(NAT_PLUS, ValueFunction((), ()), ())
    with pytest.raises(ValueError):
        NAT_PLUS.fold([])


def test_lex_compare_examples():
    assert lex_compare(NAT_PLUS, [5, 3], [5, 2]) == 1
    assert lex_compare(NAT_PLUS, [5, 2, 2], [5, 3, 0]) == -1
    assert lex_compare(NAT_PLUS, [4, 4], [4, 4]) == 0
    with pytest.raises(ValueError):
        lex_compare(NAT_PLUS, [1], [1, 0])


def test_load_weights_examples():
    nu = load_weights(UNIT_PRODUCT, "c comment\n1 1/2\n-1 0.25\n\n2 0\n", 3)
    assert nu[1] == Fraction(1, 2)
    assert nu[-1] == Fraction(1, 4)
    assert nu[2] == 0
    assert nu[-2] == nu[3] == nu[-3] == 1
    nat = load_weights(NAT_PLUS, "", 2)
    assert nat.positive == nat.negative == (0, 0)


@pytest.mark.parametrize(
    "spec, text, line",
    [
        (NAT_PLUS, "1 2\n5 1\n", 2),
        (NAT_PLUS, "0 1\n", 1),
        (NAT_PLUS, "1 -3\n", 1),
        (NAT_PLUS, "1 2.5\n", 1),
        (NAT_PLUS, "1 2\n1 3\n", 2),
        (NAT_PLUS, "1\n", 1),
        (NAT_PLUS, "x 1\n", 1),
        (NAT_PLUS, f"1 {2**64}\n", 1),
        (UNIT_PRODUCT, "1 3/2\n", 1),
        (UNIT_PRODUCT, "1 1/0\n", 1),
        (UNIT_PRODUCT, "1 half\n", 1),
    ],
)
def test_load_weights_errors(spec, text, line):
    with pytest.raises(WeightsError) as info:
        load_weights(spec, text, 3)
    assert info.value.line == line


def test_dump_weights_roundtrip():
    nu = load_weights(UNIT_PRODUCT, "1 1/2\n-2 3/7\n", 2)
    assert load_weights(UNIT_PRODUCT, dump_weights(UNIT_PRODUCT, nu), 2) == nu


def test_value_function_rejects_bad_literal():
    nu = ValueFunction((1,), (2,))
    with pytest.raises(KeyError):
        nu[2]
    with pytest.raises(ValueError):
        ValueFunction.from_mapping(NAT_PLUS, 1, {3: 1})


@pytest.mark.parametrize("spec, values", [(NAT_PLUS, nats), (UNIT_PRODUCT, units)])
@given(data=st.data())
def test_semigroup_laws(spec, values, data):
    x, y, z = (data.draw(values) for _ in range(3))
    c, lt = spec.combine, spec.less
    assert c(x, y) == c(y, x)
    assert c(c(x, y), z) == c(x, c(y, z))
    # total order
    assert sum((lt(x, y), lt(y, x), x == y)) == 1
    if lt(x, y) and lt(y, z):
        assert lt(x, z)
    # monotony, and strictness away from the absorptive element
    if spec.leq(x, y):
        assert spec.leq(c(x, z), c(y, z))
    if lt(x, y) and z != spec.least_absorptive:
        assert lt(c(x, z), c(y, z))
    if spec.has_absorptive:
        a = spec.least_absorptive
        assert c(a, x) == a and spec.leq(a, x)
        if x != a and y != a:
            assert c(x, y) != a


@given(st.lists(units, min_size=1, max_size=6))
def test_fold_order_does_not_matter(vals):
    expected = UNIT_PRODUCT.fold(vals)
    for perm in itertools.islice(itertools.permutations(vals), 24):
        assert UNIT_PRODUCT.fold(perm) == expected


def test_sort_desc():
    assert NAT_PLUS.sort_desc([3, 1, 5, 3]) == [5, 3, 3, 1]
