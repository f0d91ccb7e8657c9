"""Top-k solutions, top-k values and the top-k transformation over d-DNNF.

All three run one bottom-up sweep over a prepared circuit (see
:func:`ddnnf_topk.preprocess.prepare`), keeping a sorted list per node:
OR nodes merge their children's lists, AND nodes take the best ``k``
combinations of their children's lists through a lazy heap frontier.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Callable, Sequence, Union

from .algebra import SemigroupSpec, ValueFunction
from .circuit import (
    FALSE,
    LIT,
    OR,
    TRUE,
    Circuit,
    CircuitBuilder,
    Node,
    constant_circuit,
)
from .preprocess import is_prepared, shunt


@dataclass(frozen=True, slots=True)
class Leaf:
    literal: int


@dataclass(frozen=True, slots=True)
class Concat:
    left: "AssignmentTree"
    right: "AssignmentTree"


AssignmentTree = Union[Leaf, Concat]
ScoredList = list  # list[tuple[value, AssignmentTree]]


def flatten(tree: AssignmentTree) -> list[int]:
    """Signed literals of ``tree`` sorted by variable."""
    out = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if type(t) is Leaf:
            out.append(t.literal)
        else:
            stack.append(t.right)
            stack.append(t.left)
    out.sort(key=abs)
    return out


class _Desc:
    """Heap key inverting ``spec.less`` so heapq pops the largest value first."""

    __slots__ = ("v", "less")

    def __init__(self, v, less):
        self.v = v
        self.less = less

    def __lt__(self, other):
        return self.less(other.v, self.v)

    def __eq__(self, other):
        return not self.less(other.v, self.v) and not self.less(self.v, other.v)


class HeapFrontier:
    """Lazy best-first walk over the index grid of two sorted lists.

    Pair ``(i, j)`` stands for ``a[i] (x) b[j]``.  Starting from ``(0, 0)``,
    each pop pushes ``(i, j+1)`` and ``(i+1, 0)``; by monotony every pair is
    pushed after a pair at least as good has been popped, so pops come out in
    non-increasing order.  Ties pop in lexicographic ``(i, j)`` order.
    """

    def __init__(self, a: Sequence, b: Sequence, spec: SemigroupSpec, value: Callable[[Any], Any] = None):
        self.a, self.b = a, b
        self.spec = spec
        self.value = value or (lambda x: x)
        self.queue: list = []
        self.visited: set[tuple[int, int]] = set()
        self.pops = 0
        self._push(0, 0)

    def _push(self, i: int, j: int) -> None:
        if (i, j) in self.visited:
            return
        self.visited.add((i, j))
        v = self.spec.combine(self.value(self.a[i]), self.value(self.b[j]))
        heapq.heappush(self.queue, (_Desc(v, self.spec.less), i, j))

    def __bool__(self) -> bool:
        return bool(self.queue)

    def pop(self) -> tuple[Any, int, int]:
        key, i, j = heapq.heappop(self.queue)
        self.pops += 1
        if j + 1 < len(self.b):
            self._push(i, j + 1)
        if i + 1 < len(self.a):
            self._push(i + 1, 0)
        assert len(self.queue) <= 2 * self.pops + 1
        return key.v, i, j


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")


def _merge(a: Sequence, b: Sequence, k: int, less, value, dedupe: bool) -> list:
    out = []
    i = j = 0
    while len(out) < k and (i < len(a) or j < len(b)):
        if j >= len(b) or (i < len(a) and not less(value(a[i]), value(b[j]))):
            x = a[i]
            i += 1
        else:
            x = b[j]
            j += 1
        if dedupe and out and not less(value(x), value(out[-1])):
            continue
        out.append(x)
    return out


def _first(entry):
    return entry[0]


def _same(x):
    return x


# --------------------------------------------------------------------------
# Top-k solutions


def sorted_fusion_solutions(a: ScoredList, b: ScoredList, k: int, spec: SemigroupSpec) -> ScoredList:
    """Best ``k`` entries of two sorted lists of disjoint models; ties favour ``a``."""
    return _merge(a, b, k, spec.less, _first, dedupe=False)


def sorted_product_solutions(a: ScoredList, b: ScoredList, k: int, spec: SemigroupSpec) -> ScoredList:
    """Best ``k`` concatenations of an entry of ``a`` with an entry of ``b``."""
    if not a or not b:
        return []
    frontier = HeapFrontier(a, b, spec, _first)
    out = []
    while frontier and len(out) < k:
        v, i, j = frontier.pop()
        out.append((v, Concat(a[i][1], b[j][1])))
    return out


def _require_prepared(c: Circuit, nu: ValueFunction) -> None:
    if nu.variable_count < c.variable_count:
        raise ValueError(
            f"value function covers {nu.variable_count} variables, circuit has {c.variable_count}"
        )
    if not is_prepared(c):
        raise ValueError("circuit is not prepared (reduced, binary, smooth); run prepare() first")
    if c.variable_count == 0 and c.root_node.kind == TRUE:
        raise ValueError("constant-true circuit over no variables has no defined value")


def top_solutions(c: Circuit, spec: SemigroupSpec, nu: ValueFunction, k: int) -> ScoredList:
    """``min(k, #models)`` models of ``c`` with a lexicographically best value profile.

    Returns ``(value, AssignmentTree)`` pairs sorted by non-increasing value.
    """
    _check_k(k)
    _require_prepared(c, nu)
    if c.root_node.kind == FALSE:
        return []
    tables: list = [None] * len(c.nodes)
    for i, nd in enumerate(c.nodes):
        if nd.kind == LIT:
            tables[i] = [(nu[nd.literal], Leaf(nd.literal))]
        else:
            x, y = (tables[ch] for ch in nd.children)
            if nd.kind == OR:
                tables[i] = sorted_fusion_solutions(x, y, k, spec)
            else:
                tables[i] = sorted_product_solutions(x, y, k, spec)
    return tables[c.root]


# --------------------------------------------------------------------------
# Top-k values


def sorted_fusion_values(a: Sequence, b: Sequence, k: int, spec: SemigroupSpec) -> list:
    return _merge(a, b, k, spec.less, _same, dedupe=True)


def sorted_product_values(a: Sequence, b: Sequence, k: int, spec: SemigroupSpec) -> list:
    """``k`` largest distinct values of ``{u (x) w}``.

    Pops come out non-increasing, so a duplicate can only equal the value
    emitted last.
    """
    if not a or not b:
        return []
    frontier = HeapFrontier(a, b, spec)
    out: list = []
    less = spec.less
    while frontier and len(out) < k:
        v, _, _ = frontier.pop()
        if not out or less(v, out[-1]):
            out.append(v)
    return out


def value_labels(c: Circuit, spec: SemigroupSpec, nu: ValueFunction, k: int) -> list[list]:
    """Top-k value list of every node of a prepared circuit."""
    _check_k(k)
    _require_prepared(c, nu)
    if not spec.almost_strict:
        raise ValueError(f"semigroup {spec.name} is not almost strictly monotone")
    labels: list = [None] * len(c.nodes)
    for i, nd in enumerate(c.nodes):
        if nd.kind == LIT:
            labels[i] = [nu[nd.literal]]
        elif nd.kind == FALSE:
            labels[i] = []
        else:
            x, y = (labels[ch] for ch in nd.children)
            if nd.kind == OR:
                labels[i] = sorted_fusion_values(x, y, k, spec)
            else:
                labels[i] = sorted_product_values(x, y, k, spec)
    return labels


def top_values(c: Circuit, spec: SemigroupSpec, nu: ValueFunction, k: int) -> list:
    """The ``k`` largest values reached by models of ``c``, strictly decreasing."""
    return value_labels(c, spec, nu, k)[c.root]


# --------------------------------------------------------------------------
# Top-k transformation


def simplify_circuit(c: Circuit) -> Circuit:
    """Shunt single-child nodes and drop whatever is unreachable from the root."""
    return shunt(c)


def build_top_k_circuit(
    c: Circuit, spec: SemigroupSpec, nu: ValueFunction, k: int
) -> tuple[Circuit, dict[int, Any]]:
    """Unsimplified transformation plus the value carried by each created node.

    The returned mapping covers every node built for a (node, value) pair and
    every AND node combining two such parts; all models below such a node
    share that value.  Nodes copied verbatim from ``c`` are not in it.  The
    circuit may still hold unreachable and single-child nodes.
    """
    labels = value_labels(c, spec, nu, k)
    n = c.variable_count
    if c.root_node.kind == FALSE:
        return constant_circuit(False, n), {}
    b = CircuitBuilder(n)
    valued: dict[int, Any] = {}
    copies: dict[int, int] = {}
    leaf: dict[int, int] = {}
    absorb = spec.least_absorptive

    def leaf_of(i: int) -> int:
        if i not in leaf:
            leaf[i] = b.literal(c.nodes[i].literal)
        return leaf[i]

    def copy(i: int) -> int:
        # Untransformed copy of the subcircuit at i, built on first use and shared.
        stack = [i]
        while stack:
            j = stack[-1]
            if j in copies:
                stack.pop()
                continue
            nd = c.nodes[j]
            if nd.kind == LIT:
                copies[j] = leaf_of(j)
                stack.pop()
                continue
            todo = [ch for ch in nd.children if ch not in copies]
            if todo:
                stack.extend(todo)
                continue
            kids = tuple(copies[ch] for ch in nd.children)
            copies[j] = b.add(Node(nd.kind, 0, kids, nd.decision))
            stack.pop()
        return copies[i]

    def mark(node: int, v) -> int:
        valued[node] = v
        return node

    def disj(kids: list[int], v) -> int:
        return kids[0] if len(kids) == 1 else mark(b.disj(kids), v)

    parts: list[dict] = [None] * len(c.nodes)
    for i, nd in enumerate(c.nodes):
        lab = labels[i]
        if nd.kind == LIT:
            parts[i] = {lab[0]: mark(leaf_of(i), lab[0])}
            continue
        n0, n1 = nd.children
        p0, p1 = parts[n0], parts[n1]
        here: dict = {}
        if nd.kind == OR:
            for v in lab:
                kids = [p[v] for p in (p0, p1) if v in p]
                here[v] = disj(kids, v)
        else:
            wanted = set(lab)
            pairs = defaultdict(list)
            for u in labels[n0]:
                for w in labels[n1]:
                    v = spec.combine(u, w)
                    if v in wanted and v != absorb:
                        pairs[v].append((u, w))
            for v in lab:
                if absorb is not None and v == absorb:
                    here[v] = _absorbed_part(b, p0, p1, n0, n1, absorb, copy, disj, mark)
                else:
                    kids = [mark(b.conj((p0[u], p1[w])), v) for u, w in pairs[v]]
                    here[v] = disj(kids, v)
        parts[i] = here
    root_kids = [parts[c.root][v] for v in labels[c.root]]
    root = b.disj(root_kids) if len(root_kids) > 1 else root_kids[0]
    return Circuit(tuple(b.nodes), root, n), valued


def _absorbed_part(b, p0, p1, n0, n1, a, copy, disj, mark) -> int:
    """Node accepting every model of an AND node whose value is the absorptive ``a``.

    A model has value ``a`` iff one side does.  When both sides can reach
    ``a``, the second disjunct restricts the left side to its non-``a``
    parts so the two disjuncts stay disjoint.  ``a`` in a child's list means
    that list holds all of that child's values.
    """
    kids = []
    if a in p0:
        kids.append(mark(b.conj((p0[a], copy(n1))), a))
    if a in p1:
        if a in p0:
            rest = [node for v, node in p0.items() if v != a]
            if rest:
                left = b.disj(rest) if len(rest) > 1 else rest[0]
                kids.append(mark(b.conj((left, p1[a])), a))
        else:
            kids.append(mark(b.conj((copy(n0), p1[a])), a))
    if not kids:
        raise AssertionError("absorptive value in an AND label but in neither child's label")
    return disj(kids, a)


def transform(c: Circuit, spec: SemigroupSpec, nu: ValueFunction, k: int) -> Circuit:
    """d-DNNF whose models are the models of ``c`` with a value among the top ``k``."""
    return simplify_circuit(build_top_k_circuit(c, spec, nu, k)[0])
