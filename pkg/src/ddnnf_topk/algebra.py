"""Monotone totally ordered semigroups and literal value functions.

Two carriers ship: ``nat-plus`` (nonnegative 64-bit integers under checked
addition) and ``unit-product`` (exact rationals in [0, 1] under
multiplication, with 0 as least absorptive element).  Other semigroups plug
in by building a :class:`SemigroupSpec` directly.  Carrier values must be
hashable, and ``==`` must agree with the order (neither is less than the
other).
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

MONOTONE = "monotone"
STRICTLY_MONOTONE = "strictly_monotone"
ALMOST_STRICTLY_MONOTONE = "almost_strictly_monotone"

UINT64_MAX = (1 << 64) - 1


class WeightsError(ValueError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class SemigroupSpec:
    name: str
    combine: Callable[[Any, Any], Any]
    less: Callable[[Any, Any], bool]
    monotony: str
    default_literal_value: Any
    parse_value: Callable[[str], Any]
    format_value: Callable[[Any], str] = str
    least_absorptive: Optional[Any] = None

    @property
    def has_absorptive(self) -> bool:
        return self.least_absorptive is not None

    @property
    def almost_strict(self) -> bool:
        return self.monotony in (STRICTLY_MONOTONE, ALMOST_STRICTLY_MONOTONE)

    def leq(self, x, y) -> bool:
        return not self.less(y, x)

    def fold(self, values: Iterable):
        it = iter(values)
        try:
            acc = next(it)
        except StopIteration:
            raise ValueError("cannot aggregate an empty set of values: no neutral element") from None
        for x in it:
            acc = self.combine(acc, x)
        return acc

    def sort_desc(self, values: Iterable) -> list:
        cmp = lambda x, y: -1 if self.less(y, x) else (1 if self.less(x, y) else 0)
        return sorted(values, key=functools.cmp_to_key(cmp))


def _checked_add(x: int, y: int) -> int:
    s = x + y
    if s > UINT64_MAX:
        raise OverflowError(f"nat-plus overflow: {x} + {y} exceeds 2**64 - 1")
    return s


_NAT = re.compile(r"\d+\Z")


def _parse_nat(text: str) -> int:
    if not _NAT.match(text):
        raise ValueError(f"not a nonnegative integer: {text!r}")
    v = int(text)
    if v > UINT64_MAX:
        raise ValueError(f"{text} exceeds 2**64 - 1")
    return v


def _parse_unit(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {text!r}") from None
    if not 0 <= v <= 1:
        raise ValueError(f"{text} is outside [0, 1]")
    return v


def _lt(x, y) -> bool:
    return x < y


NAT_PLUS = SemigroupSpec(
    name="nat-plus",
    combine=_checked_add,
    less=_lt,
    monotony=STRICTLY_MONOTONE,
    default_literal_value=0,
    parse_value=_parse_nat,
)

UNIT_PRODUCT = SemigroupSpec(
    name="unit-product",
    combine=lambda x, y: x * y,
    less=_lt,
    monotony=ALMOST_STRICTLY_MONOTONE,
    default_literal_value=Fraction(1),
    parse_value=_parse_unit,
    least_absorptive=Fraction(0),
)

BUILTINS = {s.name: s for s in (NAT_PLUS, UNIT_PRODUCT)}


def builtin_semigroup(name: str) -> SemigroupSpec:
    try:
        return BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown semigroup {name!r}; choose from {sorted(BUILTINS)}") from None


@dataclass(frozen=True)
class ValueFunction:
    """Values of both polarities of variables 1..n.

    ``positive[v-1]`` is the value of literal ``v`` and ``negative[v-1]`` that
    of ``-v``.
    """

    positive: tuple
    negative: tuple

    def __post_init__(self):
        if len(self.positive) != len(self.negative):
            raise ValueError("both polarities must cover the same variables")

    @property
    def variable_count(self) -> int:
        return len(self.positive)

    def __getitem__(self, lit: int):
        if lit == 0 or abs(lit) > len(self.positive):
            raise KeyError(lit)
        return self.positive[lit - 1] if lit > 0 else self.negative[-lit - 1]

    @classmethod
    def from_mapping(cls, spec: SemigroupSpec, n: int, values: Mapping[int, Any]) -> "ValueFunction":
        for lit in values:
            if lit == 0 or abs(lit) > n:
                raise ValueError(f"literal {lit} out of range 1..{n}")
        d = spec.default_literal_value
        return cls(
            tuple(values.get(v, d) for v in range(1, n + 1)),
            tuple(values.get(-v, d) for v in range(1, n + 1)),
        )


def assignment_value(spec: SemigroupSpec, nu: ValueFunction, omega: Sequence[int]):
    """Fold of the values of the literals satisfied by ``omega``.

    ``omega[i-1]`` is the truth value of variable ``i``.
    """
    n = nu.variable_count
    if n == 0:
        raise ValueError("the value of an assignment over no variables is undefined")
    if len(omega) < n:
        raise ValueError(f"assignment covers {len(omega)} of {n} variables")
    return spec.fold(nu.positive[i] if omega[i] else nu.negative[i] for i in range(n))


def literals_value(spec: SemigroupSpec, nu: ValueFunction, literals: Iterable[int]):
    return spec.fold(nu[lit] for lit in literals)


def lex_compare(spec: SemigroupSpec, p: Sequence, q: Sequence) -> int:
    """Compare two non-increasing value profiles: 1 if ``p`` wins, -1 if ``q``."""
    if len(p) != len(q):
        raise ValueError(f"profiles of different lengths ({len(p)} vs {len(q)})")
    for x, y in zip(p, q):
        if spec.less(y, x):
            return 1
        if spec.less(x, y):
            return -1
    return 0


def load_weights(spec: SemigroupSpec, text: str, n: int) -> ValueFunction:
    """Parse ``<signed-literal> <value>`` lines into a total value function."""
    values: dict[int, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith("c"):
            continue
        if len(tokens) != 2:
            raise WeightsError("expected '<literal> <value>'", lineno)
        try:
            lit = int(tokens[0])
        except ValueError:
            raise WeightsError(f"bad literal {tokens[0]!r}", lineno) from None
        if lit == 0 or abs(lit) > n:
            raise WeightsError(f"literal {lit} out of range 1..{n}", lineno)
        if lit in values:
            raise WeightsError(f"duplicate weight for literal {lit}", lineno)
        try:
            values[lit] = spec.parse_value(tokens[1])
        except ValueError as exc:
            raise WeightsError(str(exc), lineno) from None
    return ValueFunction.from_mapping(spec, n, values)


def dump_weights(spec: SemigroupSpec, nu: ValueFunction) -> str:
    lines = []
    for v in range(1, nu.variable_count + 1):
        lines.append(f"{v} {spec.format_value(nu[v])}")
        lines.append(f"{-v} {spec.format_value(nu[-v])}")
    return "\n".join(lines) + "\n"
