"""
Quantum optical circuits as bi-colored graphs.

Optical paths become vertices, photon modes become colors and every
nonlinear crystal becomes an edge whose endpoint colors are the modes it
emits into. A coincidence (one photon on every path) is then a perfect
matching, and target states translate to symmetric color-count constraints.

Module contents:
    - Crystal / CircuitSpec / parse_circuit: the circuit description.
    - circuit_to_graph: the graph of a circuit.
    - QuantumState / parse_state / state_constraint: GHZ, W, Dicke and general
      Dicke states as constraints.
    - activation_sets: crystal sets firing together in a coincidence.
    - illegal_coincidence: a coincidence whose mode pattern the state forbids.

Created on 18-10-26
"""

import json
import logging
from dataclasses import dataclass

from .brute_oracle import OracleAnswer, enumerate_pms, oracle_sym
from .constraints import And, Constraint, CountEq, Not, Or
from .errors import InputFormatError
from .graph_core import BiColoredEdge, Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Crystal:
    a: int
    b: int
    ma: int
    mb: int
    amp: float | None = None


@dataclass(frozen=True)
class CircuitSpec:
    path_count: int
    mode_count: int
    crystals: tuple[Crystal, ...] = ()

    def __post_init__(self):
        if self.path_count < 0 or self.mode_count < 1:
            raise InputFormatError("need paths >= 0 and modes >= 1")
        for index, c in enumerate(self.crystals):
            if not (1 <= c.a <= self.path_count and 1 <= c.b <= self.path_count):
                raise InputFormatError(f"path out of range 1..{self.path_count}", index, "crystal")
            if c.a == c.b:
                raise InputFormatError("crystal feeds one path twice", index, "crystal")
            if not (1 <= c.ma <= self.mode_count and 1 <= c.mb <= self.mode_count):
                raise InputFormatError(f"mode out of range 1..{self.mode_count}", index, "crystal")


def parse_circuit(text) -> CircuitSpec:
    """Parse {"paths": int, "modes": int, "crystals": [{"a", "b", "ma", "mb", "amp"?}]}."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
        crystals = []
        for index, raw in enumerate(doc["crystals"]):
            try:
                amp = raw.get("amp")
                crystals.append(
                    Crystal(int(raw["a"]), int(raw["b"]), int(raw["ma"]), int(raw["mb"]),
                            None if amp is None else float(amp))
                )
            except (KeyError, TypeError, ValueError, AttributeError) as exc:
                raise InputFormatError(f"bad crystal: {exc}", index, "crystal") from exc
        return CircuitSpec(int(doc["paths"]), int(doc["modes"]), tuple(crystals))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InputFormatError(f"malformed circuit: {exc}") from exc


def circuit_to_graph(spec: CircuitSpec) -> Graph:
    """One vertex per path, one color per mode, edge i = crystal i + 1."""
    edges = tuple(BiColoredEdge(c.a, c.b, c.ma, c.mb) for c in spec.crystals)
    return Graph(spec.path_count, spec.mode_count, edges)


# ============================================================================
# STATES
# ============================================================================


@dataclass(frozen=True)
class QuantumState:
    kind: str
    params: tuple[int, ...] = ()

    @property
    def label(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"


STATE_KINDS = ("GHZ", "W", "Dicke", "GeneralDicke")


def parse_state(name: str) -> QuantumState:
    """Parse 'GHZ', 'W', 'Dicke:k' or 'GeneralDicke:k0,k1,...'."""
    kind, _, raw = name.partition(":")
    if kind not in STATE_KINDS:
        raise InputFormatError(f"unknown state {kind!r}, expected one of {STATE_KINDS}")
    try:
        params = tuple(int(p) for p in raw.split(",")) if raw else ()
    except ValueError as exc:
        raise InputFormatError(f"bad state parameters {raw!r}") from exc
    expected = {"GHZ": 0, "W": 0, "Dicke": 1}.get(kind)
    if expected is not None and len(params) != expected:
        raise InputFormatError(f"{kind} takes {expected} parameter(s)")
    return QuantumState(kind, params)


def state_constraint(state: QuantumState, n: int, d: int) -> Constraint:
    """
    Constraint a state puts on the mode counts of a coincidence.

    GHZ: all photons in one mode. Dicke(k): n - k photons in mode 1.
    W: Dicke(1). GeneralDicke(k_0..k_{d-1}): exactly k_{i-1} photons in mode i.

    Raises:
        InputFormatError: parameters out of range.
    """
    if state.kind == "GHZ":
        return Or(tuple(CountEq(i, n) for i in range(1, d + 1)))
    if state.kind == "W":
        if n < 1:
            raise InputFormatError("W state needs at least one path")
        return CountEq(1, n - 1)
    if state.kind == "Dicke":
        (k,) = state.params
        if not 0 <= k <= n:
            raise InputFormatError(f"Dicke parameter {k} outside 0..{n}")
        return CountEq(1, n - k)
    counts = state.params
    if len(counts) != d or any(k < 0 for k in counts) or sum(counts) != n:
        raise InputFormatError(f"GeneralDicke needs {d} non-negative counts summing to {n}")
    return And(tuple(CountEq(i, k) for i, k in enumerate(counts, start=1)))


# ============================================================================
# COINCIDENCES
# ============================================================================


def activation_sets(spec: CircuitSpec) -> set[frozenset[int]]:
    """Crystals (numbered from 1) firing together in each coincidence."""
    g = circuit_to_graph(spec)
    return {frozenset(i + 1 for i in matching) for matching, _ in enumerate_pms(g)}


def illegal_coincidence(spec: CircuitSpec, state: QuantumState) -> OracleAnswer:
    """
    A coincidence whose mode pattern the state does not allow.

    Finding one shows the circuit cannot produce `state` from its
    coincidences alone.
    """
    g = circuit_to_graph(spec)
    answer = oracle_sym(g, Not(state_constraint(state, g.n, g.d)))
    if answer.found:
        logger.info("Illegal coincidence on crystals %s", sorted(i + 1 for i in answer.matching))
    return answer
