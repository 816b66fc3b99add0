"""
Symmetric vertex-color constraints.

A symmetric constraint only looks at how many vertices carry each color.
Constraints are small expression trees over count atoms, so they can be
evaluated, serialized and materialized into the legal count vectors and the
legal monomial set the algebraic solvers test.

Module contents:
    - CountEq / CountGe / CountLe / And / Or / Not: the constraint DSL.
    - TRUE / FALSE: trivially true and trivially false constraints.
    - sym_eval: evaluates a constraint on a count vector.
    - legal_count_vectors / legal_terms: materialized legal sets.
    - colorings_from_symmetric: explicit coloring list for a constraint.
    - parse_constraint / constraint_to_json: JSON format both ways.
"""

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from sympy.utilities.iterables import multiset_permutations

from .config import EXPLICIT_COLORING_LIMIT
from .errors import DimensionError, InputFormatError, ResourceLimitError

CountVector = tuple[int, ...]
Monomial = tuple[int, ...]


class Constraint:
    """Base class of the constraint DSL."""

    def holds(self, counts: CountVector) -> bool:
        raise NotImplementedError

    def max_color(self) -> int:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class _CountAtom(Constraint):
    color: int
    k: int

    kind = ""

    def __post_init__(self):
        if self.color < 1:
            raise InputFormatError(f"atom color must be >= 1, got {self.color}")
        if self.k < 0:
            raise InputFormatError(f"atom count must be >= 0, got {self.k}")

    def max_color(self) -> int:
        return self.color

    def to_json(self) -> dict:
        return {"type": self.kind, "color": self.color, "k": self.k}


@dataclass(frozen=True)
class CountEq(_CountAtom):
    kind = "count_eq"

    def holds(self, counts):
        return counts[self.color - 1] == self.k


@dataclass(frozen=True)
class CountGe(_CountAtom):
    kind = "count_ge"

    def holds(self, counts):
        return counts[self.color - 1] >= self.k


@dataclass(frozen=True)
class CountLe(_CountAtom):
    kind = "count_le"

    def holds(self, counts):
        return counts[self.color - 1] <= self.k


@dataclass(frozen=True)
class And(Constraint):
    args: tuple[Constraint, ...] = ()

    def holds(self, counts):
        return all(a.holds(counts) for a in self.args)

    def max_color(self):
        return max((a.max_color() for a in self.args), default=0)

    def to_json(self):
        return {"type": "and", "args": [a.to_json() for a in self.args]}


@dataclass(frozen=True)
class Or(Constraint):
    args: tuple[Constraint, ...] = ()

    def holds(self, counts):
        return any(a.holds(counts) for a in self.args)

    def max_color(self):
        return max((a.max_color() for a in self.args), default=0)

    def to_json(self):
        return {"type": "or", "args": [a.to_json() for a in self.args]}


@dataclass(frozen=True)
class Not(Constraint):
    arg: Constraint

    def holds(self, counts):
        return not self.arg.holds(counts)

    def max_color(self):
        return self.arg.max_color()

    def to_json(self):
        return {"type": "not", "args": [self.arg.to_json()]}


TRUE = And(())
FALSE = Or(())


def check_dimension(constraint: Constraint, d: int) -> None:
    if constraint.max_color() > d:
        raise DimensionError(f"constraint mentions color {constraint.max_color()} but d = {d}")


def sym_eval(constraint: Constraint, counts: Sequence[int]) -> bool:
    """
    Evaluate a constraint on a count vector.

    Raises:
        DimensionError: the constraint names a color beyond len(counts).
    """
    check_dimension(constraint, len(counts))
    return constraint.holds(tuple(counts))


# ============================================================================
# MATERIALIZATION
# ============================================================================


def compositions(n: int, d: int):
    """All length-d non-negative integer vectors summing to n (stars and bars)."""
    if d == 0:
        if n == 0:
            yield ()
        return
    for bars in combinations(range(n + d - 1), d - 1):
        previous = -1
        parts = []
        for bar in bars:
            parts.append(bar - previous - 1)
            previous = bar
        parts.append(n + d - 1 - previous - 1)
        yield tuple(parts)


def legal_count_vectors(constraint: Constraint, n: int, d: int) -> set[CountVector]:
    """Length-d count vectors summing to n that satisfy the constraint."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    check_dimension(constraint, d)
    return {counts for counts in compositions(n, d) if constraint.holds(counts)}


def legal_terms(vectors) -> set[Monomial]:
    """Map each count vector (k_1..k_d) to the exponent vector (2k_1..2k_d)."""
    return {tuple(2 * k for k in counts) for counts in vectors}


def colorings_from_symmetric(
    constraint: Constraint, n: int, d: int, limit: int = EXPLICIT_COLORING_LIMIT
) -> list[tuple[int, ...]]:
    """
    Every vertex coloring whose count vector is legal.

    Raises:
        ResourceLimitError: the list would exceed `limit` colorings.
    """
    vectors = sorted(legal_count_vectors(constraint, n, d))
    total = sum(
        math.factorial(n) // math.prod(math.factorial(k) for k in counts) for counts in vectors
    )
    if total > limit:
        raise ResourceLimitError(f"{total} legal colorings exceed the limit of {limit}")

    colorings = []
    for counts in vectors:
        multiset = [color for color, k in enumerate(counts, start=1) for _ in range(k)]
        colorings.extend(tuple(p) for p in multiset_permutations(multiset))
    return colorings


# ============================================================================
# JSON FORMAT
# ============================================================================

_ATOMS = {"count_eq": CountEq, "count_ge": CountGe, "count_le": CountLe}


def constraint_from_obj(obj) -> Constraint:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputFormatError(f"constraint node must be an object with 'type', got {obj!r}")
    kind = obj["type"]
    if kind in _ATOMS:
        color, k = obj.get("color"), obj.get("k")
        for value in (color, k):
            if isinstance(value, bool) or not isinstance(value, int):
                raise InputFormatError(f"{kind} needs integer 'color' and 'k'")
        return _ATOMS[kind](color, k)
    if kind in ("and", "or", "not"):
        args = obj.get("args")
        if not isinstance(args, list):
            raise InputFormatError(f"{kind} needs a list of 'args'")
        children = tuple(constraint_from_obj(a) for a in args)
        if kind == "not":
            if len(children) != 1:
                raise InputFormatError("not takes exactly one argument")
            return Not(children[0])
        return And(children) if kind == "and" else Or(children)
    raise InputFormatError(f"unknown constraint type {kind!r}")


def parse_constraint(text) -> Constraint:
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"malformed constraint JSON: {exc}") from exc
    return constraint_from_obj(obj)


def constraint_to_json(constraint: Constraint) -> str:
    return json.dumps(constraint.to_json(), separators=(",", ":"))
