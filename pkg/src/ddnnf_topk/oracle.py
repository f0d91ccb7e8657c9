"""Exhaustive reference answers for small circuits, and a random d-DNNF generator.

Everything here enumerates all ``2**n`` assignments (through bit-parallel
truth tables), so it is only meant for ``n`` up to about 20.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .algebra import SemigroupSpec, ValueFunction, lex_compare
from .circuit import Circuit, CircuitBuilder, FALSE_NODE, TRUE_NODE, truth_tables

DEFAULT_CAP = 20


def _bits(table: int) -> list[int]:
    out = []
    while table:
        low = table & -table
        out.append(low.bit_length() - 1)
        table ^= low
    return out


def index_to_assignment(m: int, n: int) -> tuple[int, ...]:
    return tuple((m >> (n - v)) & 1 for v in range(1, n + 1))


def assignment_to_index(omega: Sequence[int]) -> int:
    m = 0
    for x in omega:
        m = (m << 1) | (1 if x else 0)
    return m


def model_table(c: Circuit, cap: int = DEFAULT_CAP) -> int:
    return truth_tables(c, cap)[c.root]


def enumerate_models(c: Circuit, cap: int = DEFAULT_CAP) -> list[tuple[int, ...]]:
    """All models of ``c`` as 0/1 tuples, in lexicographic order."""
    n = c.variable_count
    return [index_to_assignment(m, n) for m in _bits(model_table(c, cap))]


def _value_of_index(spec: SemigroupSpec, nu: ValueFunction, n: int):
    """Return ``f(m)`` giving the value of assignment index ``m``.

    Values of the two halves of the variables are tabulated separately and
    combined per call.
    """
    if n == 0:
        raise ValueError("the value of an assignment over no variables is undefined")

    def table(vars_: range) -> list:
        out = []
        width = len(vars_)
        for m in range(1 << width):
            bits = [(m >> (width - 1 - t)) & 1 for t in range(width)]
            out.append(spec.fold(nu[v] if b else nu[-v] for v, b in zip(vars_, bits)))
        return out

    h = max(1, n // 2)
    hi = table(range(1, h + 1))
    if h == n:
        return lambda m: hi[m]
    lo = table(range(h + 1, n + 1))
    shift = n - h
    mask = (1 << shift) - 1
    return lambda m: spec.combine(hi[m >> shift], lo[m & mask])


def model_values(c: Circuit, spec: SemigroupSpec, nu: ValueFunction, cap: int = DEFAULT_CAP) -> dict[int, Any]:
    """Assignment index -> value, for every model of ``c``."""
    models = _bits(model_table(c, cap))
    if not models:
        return {}
    value = _value_of_index(spec, nu, c.variable_count)
    return {m: value(m) for m in models}


def brute_top_values(c: Circuit, spec: SemigroupSpec, nu: ValueFunction, k: int, cap: int = DEFAULT_CAP) -> list:
    values = set(model_values(c, spec, nu, cap).values())
    return spec.sort_desc(values)[:k]


def brute_top_profile(c: Circuit, spec: SemigroupSpec, nu: ValueFunction, k: int, cap: int = DEFAULT_CAP) -> list:
    """Best achievable value profile of ``min(k, #models)`` models."""
    return spec.sort_desc(model_values(c, spec, nu, cap).values())[:k]


def _as_assignment(candidate, n: int) -> tuple[int, ...] | None:
    """Normalize an AssignmentTree, signed-literal list or 0/1 tuple; None if not total."""
    from .topk import Concat, Leaf, flatten

    if isinstance(candidate, (Leaf, Concat)):
        candidate = flatten(candidate)
    lits = list(candidate)
    if sorted(abs(x) for x in lits) == list(range(1, n + 1)):
        out = [0] * n
        for x in lits:
            out[abs(x) - 1] = 1 if x > 0 else 0
        return tuple(out)
    if len(lits) == n and all(x in (0, 1) for x in lits):
        return tuple(int(x) for x in lits)
    return None


def brute_check_solutions(
    c: Circuit,
    spec: SemigroupSpec,
    nu: ValueFunction,
    k: int,
    candidate: Iterable,
    cap: int = DEFAULT_CAP,
) -> bool:
    """Is ``candidate`` a valid set of top-k models of ``c``?

    ``candidate`` holds ``(value, assignment)`` pairs; the reported value must
    match the recomputed one.  Assignments may be AssignmentTrees or lists of
    signed literals covering every variable.
    """
    n = c.variable_count
    values = model_values(c, spec, nu, cap)
    seen = set()
    profile = []
    for reported, assignment in candidate:
        omega = _as_assignment(assignment, n)
        if omega is None:
            return False
        m = assignment_to_index(omega)
        if m not in values or m in seen:
            return False
        if reported != values[m]:
            return False
        seen.add(m)
        profile.append(values[m])
    best = spec.sort_desc(values.values())[:k]
    if len(profile) != len(best):
        return False
    return lex_compare(spec, spec.sort_desc(profile), best) == 0


def brute_check_transform(
    c: Circuit,
    transformed: Circuit,
    spec: SemigroupSpec,
    nu: ValueFunction,
    k: int,
    cap: int = DEFAULT_CAP,
) -> bool:
    """Are the models of ``transformed`` exactly the models of ``c`` with a top-k value?"""
    if transformed.variable_count != c.variable_count:
        return False
    values = model_values(c, spec, nu, cap)
    keep = set(spec.sort_desc(set(values.values()))[:k])
    expected = 0
    for m, v in values.items():
        if v in keep:
            expected |= 1 << m
    return model_table(transformed, cap) == expected


# --------------------------------------------------------------------------
# Random d-DNNF generator


@dataclass(frozen=True)
class GeneratorParams:
    """Knobs of :func:`random_circuit`.

    ``decision_ratio`` is the share of internal splits that become decision
    OR nodes (the rest are AND nodes over disjoint variable groups).
    ``constant_ratio`` injects true/false leaves and ``unary_ratio``
    single-child wrappers, so the output usually needs preprocessing.
    """

    seed: int
    variable_count: int
    target_nodes: int = 40
    decision_ratio: float = 0.55
    drop_ratio: float = 0.15
    share_ratio: float = 0.15
    constant_ratio: float = 0.04
    unary_ratio: float = 0.03
    max_arity: int = 4

    def __post_init__(self):
        if not 0 <= self.variable_count <= 16:
            raise ValueError("variable_count must be in 0..16")
        if self.target_nodes < 1:
            raise ValueError("target_nodes must be positive")


class _Gen:
    def __init__(self, p: GeneratorParams, rng: random.Random):
        self.p = p
        self.rng = rng
        self.b = CircuitBuilder(p.variable_count)
        self.cache: dict[tuple[int, ...], list[int]] = {}

    def leafish(self, vars_: list[int]) -> int:
        rng = self.rng
        if rng.random() < self.p.constant_ratio * 2:
            return self.b.add(TRUE_NODE if rng.random() < 0.7 else FALSE_NODE)
        keep = [v for v in vars_ if rng.random() >= self.p.drop_ratio] or [rng.choice(vars_)]
        lits = [self.b.literal(v if rng.random() < 0.5 else -v) for v in keep]
        return lits[0] if len(lits) == 1 else self.b.conj(lits)

    def node(self, vars_: list[int], budget: int) -> int:
        p, rng = self.p, self.rng
        if not vars_:
            return self.b.add(TRUE_NODE)
        key = tuple(vars_)
        if key in self.cache and rng.random() < p.share_ratio:
            return rng.choice(self.cache[key])
        start = len(self.b.nodes)
        if budget <= len(vars_) + 1 or (len(vars_) == 1 and budget < 5):
            out = self.leafish(vars_)
        elif len(vars_) == 1 or rng.random() < p.decision_ratio:
            out = self.decision(vars_, budget)
        else:
            out = self.conjunction(vars_, budget)
        if rng.random() < p.unary_ratio:
            out = (self.b.conj if rng.random() < 0.5 else self.b.disj)((out,))
        out = self.pad(out, budget - (len(self.b.nodes) - start))
        self.cache.setdefault(key, []).append(out)
        return out

    def pad(self, out: int, spare: int) -> int:
        # Spend budget the variables cannot absorb on redundant structure.
        b, rng = self.b, self.rng
        while spare > 0:
            r = rng.random()
            if spare == 1 or r < 0.3:
                out = (b.conj if r < 0.15 else b.disj)((out,))
                spare -= 1
            elif r < 0.65:
                out = b.conj((out, b.add(TRUE_NODE)))
                spare -= 2
            else:
                out = b.disj((b.add(FALSE_NODE), out))
                spare -= 2
        return out

    def decision(self, vars_: list[int], budget: int) -> int:
        rng = self.rng
        x = rng.choice(vars_)
        rest = [v for v in vars_ if v != x]
        sub = (budget - 5) // 2
        branches = []
        for lit in (x, -x):
            scope = [v for v in rest if rng.random() >= self.p.drop_ratio]
            if scope and rng.random() < self.p.constant_ratio:
                body = self.b.add(FALSE_NODE)
            elif scope:
                body = self.node(scope, sub)
            else:
                body = None
            leaf = self.b.literal(lit)
            branches.append(self.b.conj((leaf, body)) if body is not None else leaf)
        return self.b.disj(branches, x)

    def conjunction(self, vars_: list[int], budget: int) -> int:
        rng = self.rng
        arity = rng.randint(2, min(self.p.max_arity, len(vars_)))
        shuffled = vars_[:]
        rng.shuffle(shuffled)
        cuts = sorted(rng.sample(range(1, len(shuffled)), arity - 1))
        groups = [sorted(shuffled[i:j]) for i, j in zip([0, *cuts], [*cuts, len(shuffled)])]
        total = sum(len(g) for g in groups)
        kids = [self.node(g, max(1, (budget - 1) * len(g) // total)) for g in groups]
        if rng.random() < self.p.constant_ratio:
            kids.append(self.b.add(TRUE_NODE))
        return self.b.conj(kids)


def random_circuit(p: GeneratorParams) -> Circuit:
    """Seeded random decomposable, deterministic circuit of roughly ``target_nodes`` nodes.

    OR nodes are decision nodes on a fresh variable; AND nodes split their
    variables into disjoint groups.  Some variables are dropped (non-smooth),
    nodes are n-ary and some subcircuits are shared.  Samples outside
    +-20% of the target are redrawn from the same seeded stream; the last
    draw is kept if none fits.
    """
    rng = random.Random(p.seed)
    n = p.variable_count
    if n == 0:
        return Circuit((TRUE_NODE if rng.random() < 0.5 else FALSE_NODE,), 0, 0)
    lo, hi = 0.8 * p.target_nodes, 1.2 * p.target_nodes
    budget = p.target_nodes
    c = None
    for _ in range(64):
        g = _Gen(p, rng)
        scope = [v for v in range(1, n + 1) if rng.random() >= p.drop_ratio / 2] or [1]
        root = g.node(scope, budget)
        c = g.b.build(root)
        size = len(c.nodes)
        if lo <= size <= hi:
            return c
        # steer the budget toward the target for the next draw
        budget = max(1, round(budget * p.target_nodes / max(size, 1)))
    return c
