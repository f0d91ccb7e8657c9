"""Bring a d-DNNF circuit into reduced, binary, smooth form.

Each pass maps old nodes to new ones one-to-one where it can, so an input
already in normal form comes back isomorphic.
"""

from __future__ import annotations

from .circuit import (
    AND,
    FALSE,
    LIT,
    OR,
    TRUE,
    Circuit,
    CircuitBuilder,
    Node,
    bitset_members,
    compact,
    constant_circuit,
)

_T = -1  # constant markers in old->new maps
_F = -2


def reduce(c: Circuit) -> Circuit:
    """Propagate constants away and shunt single-child nodes."""
    b = CircuitBuilder(c.variable_count)
    new = [0] * len(c.nodes)
    for i, nd in enumerate(c.nodes):
        k = nd.kind
        if k == LIT:
            new[i] = b.literal(nd.literal)
        elif k == TRUE:
            new[i] = _T
        elif k == FALSE:
            new[i] = _F
        else:
            kids = [new[ch] for ch in nd.children]
            absorbing, unit = (_F, _T) if k == AND else (_T, _F)
            if absorbing in kids:
                new[i] = absorbing
                continue
            kids = [x for x in kids if x != unit]
            if not kids:
                new[i] = unit
            elif len(kids) == 1:
                new[i] = kids[0]
            elif k == AND:
                new[i] = b.conj(kids)
            else:
                new[i] = b.disj(kids, nd.decision)
    r = new[c.root]
    if r < 0:
        return constant_circuit(r == _T, c.variable_count)
    return b.build(r)


def binarize(c: Circuit) -> Circuit:
    """Replace n-ary nodes by left-leaning binary trees of the same connective."""
    b = CircuitBuilder(c.variable_count)
    new = [0] * len(c.nodes)
    for i, nd in enumerate(c.nodes):
        if nd.kind not in (AND, OR) or len(nd.children) <= 2:
            kids = tuple(new[ch] for ch in nd.children)
            new[i] = b.add(Node(nd.kind, nd.literal, kids, nd.decision))
            continue
        kids = [new[ch] for ch in nd.children]
        acc = kids[0]
        for j, ch in enumerate(kids[1:], 2):
            last = j == len(kids)
            if nd.kind == AND:
                acc = b.conj((acc, ch))
            else:
                acc = b.disj((acc, ch), nd.decision if last else 0)
        new[i] = acc
    return b.build(new[c.root])


class _Gadgets:
    """One shared (x or not-x) node per variable, plus balanced conjunctions of them."""

    def __init__(self, b: CircuitBuilder):
        self.b = b
        self.by_var: dict[int, int] = {}

    def register(self, var: int, node: int) -> int:
        return self.by_var.setdefault(var, node)

    def get(self, var: int) -> int:
        if var not in self.by_var:
            pos = self.b.literal(var)
            neg = self.b.literal(-var)
            self.by_var[var] = self.b.disj((pos, neg), var)
        return self.by_var[var]

    def cover(self, bits: int) -> int:
        nodes = [self.get(v) for v in bitset_members(bits)]
        while len(nodes) > 1:
            paired = [self.b.conj((nodes[j], nodes[j + 1])) for j in range(0, len(nodes) - 1, 2)]
            if len(nodes) % 2:
                paired.append(nodes[-1])
            nodes = paired
        return nodes[0]


def _gadget_var(c: Circuit, nd: Node) -> int:
    if nd.kind != OR or len(nd.children) != 2:
        return 0
    x, y = (c.nodes[ch] for ch in nd.children)
    if x.kind == LIT and y.kind == LIT and x.literal == -y.literal:
        return abs(x.literal)
    return 0


def smooth(c: Circuit) -> Circuit:
    """Make both children of every OR mention the same variables.

    Also completes the root to all ``variable_count`` variables.  Expects a
    reduced binary circuit.
    """
    n = c.variable_count
    if c.is_constant():
        if c.root_node.kind == FALSE or n == 0:
            return c
        b = CircuitBuilder(n)
        return b.build(_Gadgets(b).cover(c.all_vars))
    b = CircuitBuilder(n)
    gadgets = _Gadgets(b)
    new = [0] * len(c.nodes)
    vs = c.vars_of
    for i, nd in enumerate(c.nodes):
        if nd.kind == LIT:
            new[i] = b.literal(nd.literal)
        elif nd.kind == AND:
            new[i] = b.conj(tuple(new[ch] for ch in nd.children))
        elif nd.kind == OR:
            var = _gadget_var(c, nd)
            if var and var in gadgets.by_var:
                new[i] = gadgets.by_var[var]
                continue
            kids = []
            for ch in nd.children:
                missing = vs[i] & ~vs[ch]
                kids.append(b.conj((new[ch], gadgets.cover(missing))) if missing else new[ch])
            new[i] = b.disj(kids, nd.decision)
            if var:
                gadgets.register(var, new[i])
        else:
            raise ValueError(f"node {i}: constant inside a circuit; reduce first")
    root = new[c.root]
    missing = c.all_vars & ~vs[c.root]
    if missing:
        root = b.conj((root, gadgets.cover(missing)))
    return b.build(root)


def shunt(c: Circuit) -> Circuit:
    """Replace single-child internal nodes by their child; drop unreachable nodes."""
    new = [0] * len(c.nodes)
    out: list[Node] = []
    for i, nd in enumerate(c.nodes):
        if nd.kind in (AND, OR) and len(nd.children) == 1:
            new[i] = new[nd.children[0]]
            continue
        if nd.children:
            nd = Node(nd.kind, nd.literal, tuple(new[ch] for ch in nd.children), nd.decision)
        new[i] = len(out)
        out.append(nd)
    return compact(out, new[c.root], c.variable_count)


def prepare(c: Circuit) -> Circuit:
    """reduce, binarize, smooth: the normal form the top-k algorithms expect."""
    return shunt(smooth(binarize(reduce(c))))


# --------------------------------------------------------------------------
# Structural predicates


def is_reduced(c: Circuit) -> bool:
    if c.is_constant():
        return len(c.nodes) == 1
    return all(
        nd.kind not in (TRUE, FALSE) and (nd.kind == LIT or len(nd.children) >= 2)
        for nd in c.nodes
    )


def is_binary(c: Circuit) -> bool:
    return all(nd.kind not in (AND, OR) or len(nd.children) == 2 for nd in c.nodes)


def is_smooth(c: Circuit, complete_root: bool = True) -> bool:
    vs = c.vars_of
    for i, nd in enumerate(c.nodes):
        if nd.kind == OR and any(vs[ch] != vs[i] for ch in nd.children):
            return False
    if complete_root and not c.is_constant():
        return vs[c.root] == c.all_vars
    return True


def is_prepared(c: Circuit) -> bool:
    if c.is_constant():
        return len(c.nodes) == 1 and (c.root_node.kind == FALSE or c.variable_count == 0)
    return is_reduced(c) and is_binary(c) and is_smooth(c)


def gadget_counts(c: Circuit) -> dict[int, int]:
    counts: dict[int, int] = {}
    for nd in c.nodes:
        var = _gadget_var(c, nd)
        if var:
            counts[var] = counts.get(var, 0) + 1
    return counts
