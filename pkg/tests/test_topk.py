import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ddnnf_topk.algebra import NAT_PLUS, UNIT_PRODUCT, ValueFunction, literals_value
from ddnnf_topk.campaign import random_value_function
from ddnnf_topk.circuit import (
    Circuit,
    and_node,
    check_decomposability,
    check_determinism_bruteforce,
    lit_node,
    or_node,
    parse_nnf,
    truth_tables,
)
from ddnnf_topk.oracle import (
    GeneratorParams,
    _bits,
    brute_check_solutions,
    brute_check_transform,
    brute_top_values,
    enumerate_models,
    index_to_assignment,
    random_circuit,
)
from ddnnf_topk.preprocess import prepare
from ddnnf_topk.topk import (
    Concat,
    HeapFrontier,
    Leaf,
    build_top_k_circuit,
    flatten,
    simplify_circuit,
    sorted_fusion_solutions,
    sorted_fusion_values,
    sorted_product_solutions,
    sorted_product_values,
    top_solutions,
    top_values,
    transform,
)

F = Fraction


def scored(values, tag):
    return [(v, Leaf(tag * (i + 1))) for i, v in enumerate(values)]


# -- list operations -------------------------------------------------------


def test_fusion_solutions_merge():
    a = [(5, "x"), (2, "y")]
    b = [(3, "z"), (2, "w")]
    assert sorted_fusion_solutions(a, b, 3, NAT_PLUS) == [(5, "x"), (3, "z"), (2, "y")]
    assert sorted_fusion_solutions(a, b, 10, NAT_PLUS)[-2:] == [(2, "y"), (2, "w")]
    assert sorted_fusion_solutions([], b, 1, NAT_PLUS) == [(3, "z")]


def test_product_solutions_against_all_pairs():
    a = [(3, Leaf(1)), (1, Leaf(-1))]
    b = [(2, Leaf(2)), (0, Leaf(-2))]
    out = sorted_product_solutions(a, b, 4, NAT_PLUS)
    assert [v for v, _ in out] == [5, 3, 3, 1]
    assert sorted(tuple(flatten(t)) for _, t in out) == sorted(
        tuple(sorted((x, y), key=abs)) for x, y in itertools.product((1, -1), (2, -2))
    )
    assert sorted_product_solutions(a, [], 4, NAT_PLUS) == []


def test_product_ties_follow_index_order():
    a = [(3, Leaf(1)), (1, Leaf(-1))]
    b = [(2, Leaf(2)), (0, Leaf(-2))]
    # (0,1) and (1,0) both give 3; (0,1) pops first
    out = sorted_product_solutions(a, b, 3, NAT_PLUS)
    assert out[1] == (3, Concat(Leaf(1), Leaf(-2)))


def test_values_examples():
    assert sorted_product_values([3, 1], [2, 0], 4, NAT_PLUS) == [5, 3, 1]
    assert sorted_product_values([F(1, 2)], [F(0)], 3, UNIT_PRODUCT) == [0]
    assert sorted_fusion_values([5, 3], [3, 1], 3, NAT_PLUS) == [5, 3, 1]
    assert sorted_fusion_values([5, 3], [3, 1], 1, NAT_PLUS) == [5]


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(0, 20), min_size=1, max_size=8),
    st.lists(st.integers(0, 20), min_size=1, max_size=8),
    st.integers(1, 70),
)
def test_heap_frontier_pops_in_order(xs, ys, k):
    a, b = sorted(xs, reverse=True), sorted(ys, reverse=True)
    everything = sorted((x + y for x in a for y in b), reverse=True)
    f = HeapFrontier(a, b, NAT_PLUS)
    got = []
    while f and len(got) < k:
        got.append(f.pop()[0])
    assert got == everything[:k]
    assert len(f.visited) <= 2 * f.pops + 1
    assert sorted_product_values(a, b, k, NAT_PLUS) == sorted(set(everything), reverse=True)[:k]
    sols = sorted_product_solutions(scored(a, 1), scored(b, 2), k, NAT_PLUS)
    assert [v for v, _ in sols] == everything[:k]


# -- Example 1 -------------------------------------------------------------


def test_example1_top_values(example1_prepared, example1_nu):
    assert top_values(example1_prepared, NAT_PLUS, example1_nu, 1) == [5]
    assert top_values(example1_prepared, NAT_PLUS, example1_nu, 2) == [5, 3]
    assert top_values(example1_prepared, NAT_PLUS, example1_nu, 10) == [5, 3, 2]


def test_example1_top_solutions(example1, example1_prepared, example1_nu):
    one = top_solutions(example1_prepared, NAT_PLUS, example1_nu, 1)
    assert [(v, flatten(t)) for v, t in one] == [(5, [1, 2, 3, -4])]
    two = top_solutions(example1_prepared, NAT_PLUS, example1_nu, 2)
    assert [(v, flatten(t)) for v, t in two] == [(5, [1, 2, 3, -4]), (3, [1, -2, 3, -4])]
    assert brute_check_solutions(example1, NAT_PLUS, example1_nu, 2, two)
    ten = top_solutions(example1_prepared, NAT_PLUS, example1_nu, 10)
    assert [v for v, _ in ten] == [5, 3, 3, 2]
    assert brute_check_solutions(example1, NAT_PLUS, example1_nu, 10, ten)


def test_example1_transform(example1, example1_prepared, example1_nu):
    t = transform(example1_prepared, NAT_PLUS, example1_nu, 2)
    assert set(enumerate_models(t)) == {(1, 1, 1, 0), (0, 1, 1, 0), (1, 0, 1, 0)}
    assert check_decomposability(t).ok and check_determinism_bruteforce(t).ok
    t3 = transform(example1_prepared, NAT_PLUS, example1_nu, 3)
    assert enumerate_models(t3) == enumerate_models(example1)


# -- absorptive element ------------------------------------------------------


def test_absorptive_hand_built():
    c = prepare(parse_nnf(
        "nnf 9 8 3\nL 1\nL -1\nO 1 2 0 1\nL 2\nL -2\nO 2 2 3 4\nA 2 2 5\nL 3\nA 2 6 7"
    ))
    nu = ValueFunction.from_mapping(UNIT_PRODUCT, 3, {1: F(0), -1: F(1, 2), 2: F(1, 2), -2: F(0), 3: F(1, 3)})
    # models need x3; only not-x1, x2 avoids a zero: 1/2 * 1/2 * 1/3
    assert brute_top_values(c, UNIT_PRODUCT, nu, 5) == [F(1, 12), F(0)]
    for k in range(1, 6):
        assert top_values(c, UNIT_PRODUCT, nu, k) == brute_top_values(c, UNIT_PRODUCT, nu, k)
        sols = top_solutions(c, UNIT_PRODUCT, nu, k)
        assert brute_check_solutions(c, UNIT_PRODUCT, nu, k, sols)
        t = transform(c, UNIT_PRODUCT, nu, k)
        assert brute_check_transform(c, t, UNIT_PRODUCT, nu, k)
        assert check_determinism_bruteforce(t).ok
    assert len(enumerate_models(transform(c, UNIT_PRODUCT, nu, 2))) == 4
    assert enumerate_models(transform(c, UNIT_PRODUCT, nu, 1)) == [(0, 1, 1)]


def test_both_children_absorptive_stays_deterministic():
    # (x1 gadget) and (x2 gadget) with a zero on each side
    c = prepare(parse_nnf("nnf 1 0 2\nA 0"))
    nu = ValueFunction.from_mapping(UNIT_PRODUCT, 2, {1: F(0), -1: F(1, 2), 2: F(0), -2: F(1, 3)})
    t = transform(c, UNIT_PRODUCT, nu, 2)
    assert len(enumerate_models(t)) == 4
    assert check_determinism_bruteforce(t).ok
    t1 = transform(c, UNIT_PRODUCT, nu, 1)
    assert enumerate_models(t1) == [(0, 0)]


# -- circuit-level properties ------------------------------------------------


def test_simplify_examples():
    c = Circuit((lit_node(1), and_node((0,)), or_node((1,)), lit_node(2)), 2, 2)
    s = simplify_circuit(c)
    assert s.nodes == (lit_node(1),)


def test_rejects_bad_input(example1, example1_prepared, example1_nu):
    with pytest.raises(ValueError):
        top_values(example1_prepared, NAT_PLUS, example1_nu, 0)
    with pytest.raises(ValueError):
        top_solutions(parse_nnf("nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1"), NAT_PLUS, example1_nu, 1)
    with pytest.raises(ValueError):
        transform(example1_prepared, NAT_PLUS, ValueFunction((0,), (0,)), 1)
    with pytest.raises(ValueError):
        top_values(Circuit((and_node(()),), 0, 0), NAT_PLUS, ValueFunction((), ()), 1)


def test_constant_false():
    c = prepare(parse_nnf("nnf 1 0 3\nO 0 0"))
    nu = ValueFunction.from_mapping(NAT_PLUS, 3, {})
    assert top_values(c, NAT_PLUS, nu, 3) == []
    assert top_solutions(c, NAT_PLUS, nu, 3) == []
    assert transform(c, NAT_PLUS, nu, 3).root_node.kind == "F"


def random_instance(seed, n, size, spec):
    import random

    c = random_circuit(GeneratorParams(seed=seed, variable_count=n, target_nodes=size))
    return c, prepare(c), random_value_function(spec, n, random.Random(seed))


instances = st.tuples(
    st.integers(0, 2**32), st.integers(1, 9), st.integers(1, 120), st.sampled_from([NAT_PLUS, UNIT_PRODUCT])
)


@settings(max_examples=80, deadline=None)
@given(instances, st.integers(1, 16))
def test_matches_oracle(inst, k):
    seed, n, size, spec = inst
    c, p, nu = random_instance(seed, n, size, spec)
    assert top_values(p, spec, nu, k) == brute_top_values(c, spec, nu, k)
    sols = top_solutions(p, spec, nu, k)
    assert brute_check_solutions(c, spec, nu, k, sols)
    for v, tree in sols:
        assert literals_value(spec, nu, flatten(tree)) == v
    t = transform(p, spec, nu, k)
    assert brute_check_transform(c, t, spec, nu, k)
    assert check_decomposability(t).ok and check_determinism_bruteforce(t).ok


@settings(max_examples=40, deadline=None)
@given(instances, st.integers(1, 8), st.integers(1, 8))
def test_prefix_monotone(inst, k1, k2):
    seed, n, size, spec = inst
    _, p, nu = random_instance(seed, n, size, spec)
    lo, hi = sorted((k1, k2))
    small, big = top_values(p, spec, nu, lo), top_values(p, spec, nu, hi)
    assert big[: len(small)] == small
    s_small = [v for v, _ in top_solutions(p, spec, nu, lo)]
    s_big = [v for v, _ in top_solutions(p, spec, nu, hi)]
    assert s_big[: len(s_small)] == s_small


@settings(max_examples=40, deadline=None)
@given(instances, st.integers(1, 8))
def test_created_nodes_carry_one_value(inst, k):
    seed, n, size, spec = inst
    _, p, nu = random_instance(seed, n, size, spec)
    if p.root_node.kind == "F":
        return
    raw, valued = build_top_k_circuit(p, spec, nu, k)
    tables = truth_tables(raw)
    for node, v in valued.items():
        mine = raw.variables(node)
        for m in _bits(tables[node]):
            omega = index_to_assignment(m, n)
            lits = [x if omega[x - 1] else -x for x in mine]
            assert literals_value(spec, nu, lits) == v
