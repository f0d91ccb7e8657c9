"""d-DNNF circuit data model and the c2d NNF text format.

A circuit is an immutable list of nodes in topological order: every child
index is smaller than the index of its parent, and the root is usually the
last node.  Variable sets are stored per node as Python ints used as bitsets
(bit ``v`` set means variable ``v`` occurs below the node).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

LIT = "L"
TRUE = "T"
FALSE = "F"
AND = "A"
OR = "O"

Assignment = Union[Sequence[int], Mapping[int, int]]


class NNFParseError(ValueError):
    """Malformed NNF input; ``line`` is the 1-based line number (0 if unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class NNFWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Node:
    kind: str
    literal: int = 0
    children: tuple[int, ...] = ()
    decision: int = 0  # c2d decision-variable hint on OR nodes; never relied upon

    @property
    def is_leaf(self) -> bool:
        return self.kind in (LIT, TRUE, FALSE)

    def __repr__(self) -> str:
        if self.kind == LIT:
            return f"Lit({self.literal})"
        if self.kind in (TRUE, FALSE):
            return "True" if self.kind == TRUE else "False"
        name = "And" if self.kind == AND else "Or"
        return f"{name}{self.children}"


def lit_node(lit: int) -> Node:
    return Node(LIT, literal=lit)


def and_node(children: Iterable[int]) -> Node:
    return Node(AND, children=tuple(children))


def or_node(children: Iterable[int], decision: int = 0) -> Node:
    return Node(OR, children=tuple(children), decision=decision)


TRUE_NODE = Node(TRUE)
FALSE_NODE = Node(FALSE)


@dataclass(frozen=True)
class Circuit:
    nodes: tuple[Node, ...]
    root: int
    variable_count: int
    vars_of: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        object.__setattr__(self, "nodes", nodes)
        n = self.variable_count
        if n < 0:
            raise ValueError("variable_count must be nonnegative")
        if not nodes:
            raise ValueError("a circuit needs at least one node")
        if not 0 <= self.root < len(nodes):
            raise ValueError(f"root {self.root} out of range")
        vs = []
        for i, node in enumerate(nodes):
            if node.kind == LIT:
                v = abs(node.literal)
                if v == 0 or v > n:
                    raise ValueError(f"node {i}: literal {node.literal} out of range 1..{n}")
                vs.append(1 << v)
            elif node.kind in (TRUE, FALSE):
                vs.append(0)
            elif node.kind in (AND, OR):
                acc = 0
                for ch in node.children:
                    if not 0 <= ch < i:
                        raise ValueError(f"node {i}: child {ch} breaks topological order")
                    acc |= vs[ch]
                vs.append(acc)
            else:
                raise ValueError(f"node {i}: unknown kind {node.kind!r}")
        object.__setattr__(self, "vars_of", tuple(vs))

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def root_node(self) -> Node:
        return self.nodes[self.root]

    @property
    def all_vars(self) -> int:
        """Bitset of every declared variable 1..n."""
        return ((1 << (self.variable_count + 1)) - 1) & ~1

    def variables(self, i: int) -> list[int]:
        return bitset_members(self.vars_of[i])

    def edge_count(self) -> int:
        return sum(len(nd.children) for nd in self.nodes)

    def is_constant(self) -> bool:
        return self.root_node.kind in (TRUE, FALSE)

    def reachable(self) -> list[bool]:
        seen = [False] * len(self.nodes)
        seen[self.root] = True
        for i in range(self.root, -1, -1):
            if seen[i]:
                for ch in self.nodes[i].children:
                    seen[ch] = True
        return seen


def bitset_members(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


class CircuitBuilder:
    """Append-only node list; node ids are handed out in topological order."""

    def __init__(self, variable_count: int):
        self.variable_count = variable_count
        self.nodes: list[Node] = []

    def add(self, node: Node) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def literal(self, lit: int) -> int:
        return self.add(lit_node(lit))

    def conj(self, children: Sequence[int]) -> int:
        return self.add(and_node(children))

    def disj(self, children: Sequence[int], decision: int = 0) -> int:
        return self.add(or_node(children, decision))

    def build(self, root: int | None = None) -> Circuit:
        """Freeze, keeping only nodes reachable from ``root`` (default: last)."""
        if root is None:
            root = len(self.nodes) - 1
        return compact(self.nodes, root, self.variable_count)


def compact(nodes: Sequence[Node], root: int, variable_count: int) -> Circuit:
    """Drop nodes unreachable from ``root`` and renumber the rest in order."""
    seen = [False] * len(nodes)
    seen[root] = True
    for i in range(root, -1, -1):
        if seen[i]:
            for ch in nodes[i].children:
                seen[ch] = True
    remap = {}
    out = []
    for i in range(root + 1):
        if not seen[i]:
            continue
        nd = nodes[i]
        if nd.children:
            nd = Node(nd.kind, nd.literal, tuple(remap[c] for c in nd.children), nd.decision)
        remap[i] = len(out)
        out.append(nd)
    return Circuit(tuple(out), len(out) - 1, variable_count)


def constant_circuit(value: bool, variable_count: int) -> Circuit:
    return Circuit((TRUE_NODE if value else FALSE_NODE,), 0, variable_count)


# --------------------------------------------------------------------------
# NNF text format


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise NNFParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_nnf(text: str) -> Circuit:
    """Parse c2d-style NNF text.

    ``nnf v e n`` header, then ``v`` node lines (``L l``, ``A c i1..ic``,
    ``O j c i1..ic``).  ``A 0`` is the constant true and ``O j 0`` the
    constant false.  The root is the last node.  A wrong edge count only
    triggers an :class:`NNFWarning`.
    """
    header = None
    nodes: list[Node] = []
    v = e = n = 0
    edges = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith("c"):
            continue
        if header is None:
            if tokens[0] != "nnf" or len(tokens) != 4:
                raise NNFParseError("malformed header, expected 'nnf v e n'", lineno)
            v, e, n = _ints(tokens[1:], lineno)
            if v < 0 or e < 0 or n < 0:
                raise NNFParseError("negative count in header", lineno)
            header = lineno
            continue
        idx = len(nodes)
        if idx >= v:
            raise NNFParseError(f"trailing content after {v} node lines", lineno)
        kind, args = tokens[0], _ints(tokens[1:], lineno)
        if kind == "L":
            if len(args) != 1:
                raise NNFParseError("literal line takes exactly one literal", lineno)
            lit = args[0]
            if lit == 0 or abs(lit) > n:
                raise NNFParseError(f"literal {lit} out of range 1..{n}", lineno)
            nodes.append(lit_node(lit))
            continue
        if kind == "A":
            if not args:
                raise NNFParseError("AND line needs a child count", lineno)
            count, kids = args[0], args[1:]
            decision = 0
        elif kind == "O":
            if len(args) < 2:
                raise NNFParseError("OR line needs a decision variable and a child count", lineno)
            decision, count, kids = args[0], args[1], args[2:]
            if not 0 <= decision <= n:
                raise NNFParseError(f"decision variable {decision} out of range", lineno)
        else:
            raise NNFParseError(f"unknown node type {kind!r}", lineno)
        if count != len(kids):
            raise NNFParseError(f"declared {count} children but listed {len(kids)}", lineno)
        for ch in kids:
            if not 0 <= ch < idx:
                raise NNFParseError(f"child reference {ch} is not an earlier node", lineno)
        edges += count
        if count == 0:
            nodes.append(TRUE_NODE if kind == "A" else FALSE_NODE)
        elif kind == "A":
            nodes.append(and_node(kids))
        else:
            nodes.append(or_node(kids, decision))
    if header is None:
        raise NNFParseError("missing 'nnf v e n' header", 1)
    if len(nodes) != v:
        raise NNFParseError(f"header declares {v} nodes but file has {len(nodes)}", header)
    if v == 0:
        raise NNFParseError("circuit has no nodes", header)
    if edges != e:
        warnings.warn(f"header declares {e} edges but file has {edges}", NNFWarning, stacklevel=2)
    return Circuit(tuple(nodes), v - 1, n)


def write_nnf(c: Circuit) -> str:
    """Serialize to NNF text.  The root is made last by compacting first."""
    if c.root != len(c.nodes) - 1:
        c = compact(c.nodes, c.root, c.variable_count)
    lines = [f"nnf {len(c.nodes)} {c.edge_count()} {c.variable_count}"]
    for nd in c.nodes:
        if nd.kind == LIT:
            lines.append(f"L {nd.literal}")
        elif nd.kind == TRUE:
            lines.append("A 0")
        elif nd.kind == FALSE:
            lines.append("O 0 0")
        elif nd.kind == AND:
            lines.append(" ".join(["A", str(len(nd.children)), *map(str, nd.children)]))
        else:
            lines.append(" ".join(["O", str(nd.decision), str(len(nd.children)), *map(str, nd.children)]))
    return "\n".join(lines) + "\n"


def read_nnf(path) -> Circuit:
    with open(path) as fh:
        return parse_nnf(fh.read())


# --------------------------------------------------------------------------
# Semantics


def _assignment_lookup(assignment: Assignment, n: int):
    if isinstance(assignment, Mapping):
        missing = [v for v in range(1, n + 1) if v not in assignment]
        if missing:
            raise ValueError(f"assignment misses variables {missing}")
        return lambda v: bool(assignment[v])
    if len(assignment) < n:
        raise ValueError(f"assignment covers {len(assignment)} of {n} variables")
    return lambda v: bool(assignment[v - 1])


def evaluate(c: Circuit, assignment: Assignment) -> bool:
    """Truth value of ``c`` under a total assignment.

    ``assignment`` is either a sequence whose ``i-1``-th entry is the value of
    variable ``i``, or a mapping from variable to 0/1.
    """
    value_of = _assignment_lookup(assignment, c.variable_count)
    vals = [False] * len(c.nodes)
    for i, nd in enumerate(c.nodes):
        k = nd.kind
        if k == LIT:
            vals[i] = value_of(abs(nd.literal)) == (nd.literal > 0)
        elif k == TRUE:
            vals[i] = True
        elif k == FALSE:
            vals[i] = False
        elif k == AND:
            vals[i] = all(vals[ch] for ch in nd.children)
        else:
            vals[i] = any(vals[ch] for ch in nd.children)
    return vals[c.root]


def literal_table(n: int, var: int) -> int:
    """Truth table of the positive literal ``var`` over ``2**n`` assignments.

    Bit ``m`` holds the value for the assignment whose binary expansion (variable
    1 most significant) is ``m``; ascending ``m`` is lexicographic order.
    """
    half = 1 << (n - var)
    period = half << 1
    block = ((1 << half) - 1) << half
    size = 1 << n
    # repeat the block by doubling; big-int division here is far slower
    t, width = block, period
    while width < size:
        t |= t << width
        width <<= 1
    return t


def truth_tables(c: Circuit, cap: int = 20) -> list[int]:
    """Per-node truth tables over all ``2**n`` assignments, as big-int bitmasks."""
    n = c.variable_count
    if n > cap:
        raise ValueError(f"{n} variables exceed the enumeration cap of {cap}")
    full = (1 << (1 << n)) - 1
    pos = [0] + [literal_table(n, v) for v in range(1, n + 1)]
    tables = [0] * len(c.nodes)
    for i, nd in enumerate(c.nodes):
        k = nd.kind
        if k == LIT:
            t = pos[abs(nd.literal)]
            tables[i] = t if nd.literal > 0 else full ^ t
        elif k == TRUE:
            tables[i] = full
        elif k == FALSE:
            tables[i] = 0
        elif k == AND:
            t = full
            for ch in nd.children:
                t &= tables[ch]
            tables[i] = t
        else:
            t = 0
            for ch in nd.children:
                t |= tables[ch]
            tables[i] = t
    return tables


# --------------------------------------------------------------------------
# Validation


@dataclass
class ValidationReport:
    offending: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.offending

    def __bool__(self) -> bool:
        return self.ok


def check_decomposability(c: Circuit) -> ValidationReport:
    report = ValidationReport()
    for i, nd in enumerate(c.nodes):
        if nd.kind != AND:
            continue
        seen = 0
        for ch in nd.children:
            if seen & c.vars_of[ch]:
                report.offending.append(i)
                break
            seen |= c.vars_of[ch]
    return report


def check_determinism_bruteforce(c: Circuit, cap: int = 20) -> ValidationReport:
    """Flag every OR node with two children sharing a model (exhaustive)."""
    tables = truth_tables(c, cap)
    report = ValidationReport()
    for i, nd in enumerate(c.nodes):
        if nd.kind != OR:
            continue
        seen = 0
        for ch in nd.children:
            if seen & tables[ch]:
                report.offending.append(i)
                break
            seen |= tables[ch]
    return report


def isomorphic(a: Circuit, b: Circuit) -> bool:
    """Same node kinds and ordered child structure under some renumbering."""
    if a.variable_count != b.variable_count:
        return False
    mapping: dict[int, int] = {}
    used: set[int] = set()
    stack = [(a.root, b.root)]
    while stack:
        i, j = stack.pop()
        if i in mapping:
            if mapping[i] != j:
                return False
            continue
        if j in used:
            return False
        x, y = a.nodes[i], b.nodes[j]
        if x.kind != y.kind or x.literal != y.literal or len(x.children) != len(y.children):
            return False
        mapping[i] = j
        used.add(j)
        stack.extend(zip(x.children, y.children))
    return True
