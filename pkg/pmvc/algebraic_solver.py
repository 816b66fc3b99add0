"""
Randomized algebraic decision and extraction of legal perfect matchings.

The x symbols of the adapted Tutte matrix are sampled as integers while the
color symbols y stay symbolic, so the determinant is a polynomial in d
variables whose legal-monomial coefficients flag legal perfect matchings.

Module contents:
    - build_adapted_tutte: the adapted Tutte matrix A for an x assignment.
    - build_weighted_tutte: the matrix B with 2^w edge weights used for extraction.
    - default_sample_bound / trial_count / sample_x: PIT parameters.
    - pit_trial: one evaluation-and-detect round.
    - pit_decide_sym: repeated trials plus verification, as a tri-state answer.
    - extract_pm_sym: isolating-weight extraction of a verified legal matching.
    - decide_from_determinant: shared detect-then-verify step used by the
      randomized and the planar deciders.

Created on 15-10-26
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from . import config
from .constraints import Constraint, check_dimension, legal_count_vectors, legal_terms
from .determinants import bareiss_adjugate, bareiss_det
from .errors import InexactDivisionError, InputFormatError
from .graph_core import Graph, PerfectMatching, check_perfect_matching, count_vector, inherited_coloring
from .polynomials import (
    PolyMatrix,
    coefficient,
    poly_div_exact,
    poly_ring,
    poly_sqrt_exact,
    two_adic_valuation,
)

logger = logging.getLogger(__name__)

XAssignment = Mapping[tuple[int, int], int]


# ============================================================================
# ANSWERS AND CONFIGURATION
# ============================================================================


class Verdict(str, Enum):
    NO = "no"
    YES_VERIFIED = "yes_verified"
    YES_UNVERIFIED = "yes_unverified"


@dataclass(frozen=True)
class TriStateAnswer:
    """
    Outcome of a one-sided decision procedure.

    YES_VERIFIED always carries a matching that passed check_perfect_matching
    and the constraint; YES_UNVERIFIED means a legal monomial was detected but
    no legal matching could be produced.
    """

    verdict: Verdict
    matching: PerfectMatching | None = None
    trials: int = 0

    @property
    def is_yes(self) -> bool:
        return self.verdict is not Verdict.NO


@dataclass(frozen=True)
class PitConfig:
    """
    Parameters of the randomized test.

    sample_bound=None means max(2|E|, 2n), resolved per graph.
    """

    epsilon: float = config.DEFAULT_EPSILON
    seed: int = config.DEFAULT_SEED
    sample_bound: int | None = None
    verify: bool = True
    extraction_rounds: int = config.DEFAULT_EXTRACTION_ROUNDS
    trials: int | None = None

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.sample_bound is not None and self.sample_bound < config.MIN_SAMPLE_BOUND:
            raise ValueError(f"sample_bound must be >= {config.MIN_SAMPLE_BOUND}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def stream(seed: int, kind: int, counter: int) -> np.random.Generator:
    """Independent generator for one trial or round."""
    return np.random.default_rng([seed, kind, counter])


# ============================================================================
# MATRICES
# ============================================================================


def _pair(e) -> tuple[int, int]:
    return (min(e.u, e.v), max(e.u, e.v))


def _edge_term(ring, e):
    return ring.gens[e.color_at_u - 1] * ring.gens[e.color_at_v - 1]


def build_adapted_tutte(g: Graph, x: XAssignment) -> PolyMatrix:
    """
    Adapted Tutte matrix.

    Entry (u, v) with u > v is x_uv * sum over edges e between u and v of
    y_{c_u^e} * y_{c_v^e}; entry (v, u) is its negation; the diagonal is 0.

    Raises:
        InputFormatError: x lacks a value for a pair carrying an edge.
    """
    ring = poly_ring(g.d)
    rows = [[ring.zero] * g.n for _ in range(g.n)]
    for index, e in enumerate(g.edges):
        lo, hi = _pair(e)
        if (lo, hi) not in x:
            raise InputFormatError(f"missing x value for pair {(lo, hi)}", index)
        term = x[(lo, hi)] * _edge_term(ring, e)
        rows[hi - 1][lo - 1] += term
        rows[lo - 1][hi - 1] -= term
    logger.debug("✓ Built adapted Tutte matrix (n=%d, d=%d)", g.n, g.d)
    return PolyMatrix(ring, tuple(tuple(r) for r in rows))


def build_weighted_tutte(g: Graph, weights: Sequence[int]) -> PolyMatrix:
    """Matrix B: entry (u, v), u > v, is sum of y_{c_u^e} y_{c_v^e} 2^{w_e}; skew."""
    ring = poly_ring(g.d)
    rows = [[ring.zero] * g.n for _ in range(g.n)]
    for e, w in zip(g.edges, weights):
        lo, hi = _pair(e)
        term = (1 << int(w)) * _edge_term(ring, e)
        rows[hi - 1][lo - 1] += term
        rows[lo - 1][hi - 1] -= term
    return PolyMatrix(ring, tuple(tuple(r) for r in rows))


# ============================================================================
# POLYNOMIAL IDENTITY TESTING
# ============================================================================


def default_sample_bound(g: Graph) -> int:
    return max(2 * len(g.edges), 2 * g.n, config.MIN_SAMPLE_BOUND)


def trial_count(epsilon: float) -> int:
    """ceil(log2(1/epsilon)) trials, at least one."""
    return max(1, math.ceil(math.log2(1 / epsilon)))


def sample_x(g: Graph, sample_bound: int, rng: np.random.Generator) -> dict[tuple[int, int], int]:
    pairs = g.simple_pairs()
    values = rng.integers(1, sample_bound + 1, size=len(pairs))
    return {pair: int(value) for pair, value in zip(pairs, values)}


def detected_terms(det, terms) -> list[tuple[int, ...]]:
    """Legal monomials with a nonzero coefficient in det, sorted."""
    return sorted(m for m in terms if coefficient(det, m))


def pit_trial(g: Graph, terms, sample_bound: int, rng: np.random.Generator) -> bool:
    """One raw trial: sample x, take the determinant, look for a legal monomial."""
    x = sample_x(g, sample_bound, rng)
    det = bareiss_det(build_adapted_tutte(g, x))
    return bool(detected_terms(det, terms))


def decide_from_determinant(g, constraint, det, cfg: PitConfig, trials: int) -> TriStateAnswer:
    terms = legal_terms(legal_count_vectors(constraint, g.n, g.d))
    if not detected_terms(det, terms):
        return TriStateAnswer(Verdict.NO, trials=trials)
    return _verify(g, constraint, cfg, trials)


def _verify(g, constraint, cfg: PitConfig, trials: int) -> TriStateAnswer:
    if not cfg.verify:
        return TriStateAnswer(Verdict.YES_UNVERIFIED, trials=trials)
    matching = extract_pm_sym(g, constraint, cfg.seed, cfg.extraction_rounds)
    if matching is None:
        logger.warning("⚠ Legal monomial detected but no legal matching extracted")
        return TriStateAnswer(Verdict.YES_UNVERIFIED, trials=trials)
    return TriStateAnswer(Verdict.YES_VERIFIED, matching, trials)


def pit_decide_sym(g: Graph, constraint: Constraint, cfg: PitConfig | None = None) -> TriStateAnswer:
    """
    Randomized decision of the symmetric-constraint problem.

    Steps:
        1. Materialize the legal monomials from the constraint.
        2. Per trial t, seed a generator with (seed, PIT stream, t), draw
           x_uv uniformly from 1..sample_bound and compute det(A) exactly.
        3. Stop at the first trial where a legal monomial survives
           (candidate yes); after ceil(log2(1/epsilon)) empty trials answer No.
        4. Verify a candidate yes by extraction unless cfg.verify is off.

    Args:
        g: the graph.
        constraint: symmetric constraint over colors 1..d.
        cfg: PitConfig; defaults are used when omitted.

    Returns:
        TriStateAnswer: No is wrong with probability at most epsilon when a
        legal matching exists; YES_VERIFIED is always correct.

    Raises:
        DimensionError: the constraint names a color beyond d.
    """
    cfg = cfg or PitConfig()
    check_dimension(constraint, g.d)
    terms = legal_terms(legal_count_vectors(constraint, g.n, g.d))
    bound = cfg.sample_bound or default_sample_bound(g)
    trials = cfg.trials or trial_count(cfg.epsilon)

    if not terms:
        logger.info("✓ Constraint has no legal count vector for n=%d", g.n)
        return TriStateAnswer(Verdict.NO, trials=0)
    if g.n % 2:
        return TriStateAnswer(Verdict.NO, trials=0)

    for t in range(trials):
        if pit_trial(g, terms, bound, stream(cfg.seed, config.PIT_STREAM, t)):
            logger.info("✓ Trial %d detected a legal monomial", t)
            return _verify(g, constraint, cfg, t + 1)
    logger.info("No legal monomial in %d trials", trials)
    return TriStateAnswer(Verdict.NO, trials=trials)


# ============================================================================
# EXTRACTION
# ============================================================================


def _membership(g: Graph, weights, adjugate, target, two_w: int) -> list[int]:
    """Edges whose minor coefficient, scaled by 2^w_e, is 2^{2W} times an odd number."""
    chosen = []
    for edge_id, e in enumerate(g.edges):
        reduced = list(target)
        reduced[e.color_at_u - 1] -= 1
        reduced[e.color_at_v - 1] -= 1
        if min(reduced) < 0:
            continue
        # det of B without row u and column v is +-adj(B)[v][u]
        minor_coeff = coefficient(adjugate[e.v - 1][e.u - 1], reduced)
        value = abs(minor_coeff) << int(weights[edge_id])
        if value and two_adic_valuation(value) == two_w:
            chosen.append(edge_id)
    return chosen


def _pfaffian_membership(g: Graph, weights, minors, target, w: int) -> list[int]:
    """Edges e = {u, v} with Pf(B - u - v) coefficient times 2^{w_e} of valuation exactly W."""
    chosen = []
    for edge_id, e in enumerate(g.edges):
        reduced = list(target)
        reduced[e.color_at_u - 1] -= 1
        reduced[e.color_at_v - 1] -= 1
        if min(reduced) < 0:
            continue
        value = abs(coefficient(minors(e.u, e.v), reduced)) << int(weights[edge_id])
        if value and two_adic_valuation(value) == w:
            chosen.append(edge_id)
    return chosen


def _accept(g: Graph, constraint: Constraint, chosen: list[int]) -> bool:
    if not check_perfect_matching(g, chosen):
        return False
    return constraint.holds(count_vector(inherited_coloring(g, chosen), g.d))


def _extract_from_determinant(g, constraint, weights, det, adjugate, terms) -> PerfectMatching | None:
    candidates = sorted(
        (two_adic_valuation(coefficient(det, m)), m) for m in detected_terms(det, terms)
    )
    for two_w, target in candidates:
        if two_w % 2:
            continue
        chosen = _membership(g, weights, adjugate, target, two_w)
        if _accept(g, constraint, chosen):
            return frozenset(chosen)
    return None


def _extract_from_pfaffian(g, constraint, weights, det, adjugate, vectors) -> PerfectMatching | None:
    """
    Same search on Pf(B) = sqrt(det B), where no products of two matchings mix.

    Pf(B - u - v) is recovered as adj(B)[v][u] / Pf(B) up to sign.
    """
    try:
        pfaffian = poly_sqrt_exact(det)
    except InexactDivisionError:
        logger.warning("⚠ Determinant is not a perfect square, skipping Pfaffian pass")
        return None
    cache = {}

    def minors(u: int, v: int):
        if (u, v) not in cache:
            cache[(u, v)] = poly_div_exact(adjugate[v - 1][u - 1], pfaffian)
        return cache[(u, v)]

    candidates = sorted(
        (two_adic_valuation(coefficient(pfaffian, k)), k)
        for k in vectors
        if coefficient(pfaffian, k)
    )
    for w, target in candidates:
        try:
            chosen = _pfaffian_membership(g, weights, minors, target, w)
        except InexactDivisionError:
            logger.warning("⚠ Pfaffian minor division was inexact")
            return None
        if _accept(g, constraint, chosen):
            return frozenset(chosen)
    return None


def extract_pm_sym(
    g: Graph,
    constraint: Constraint,
    seed: int = config.DEFAULT_SEED,
    max_rounds: int = config.DEFAULT_EXTRACTION_ROUNDS,
) -> PerfectMatching | None:
    """
    Construct a legal perfect matching with random isolating weights.

    Steps:
        1. Draw w_e uniformly from 1..2|E| with the (seed, EXTRACTION stream,
           round) generator and build B.
        2. Compute det(B) and adj(B) in one Gauss-Jordan pass.
        3. Order the legal monomials with nonzero coefficient by the 2-adic
           valuation 2W of that coefficient, smallest first.
        4. For each candidate monomial keep every edge e = {u, v} whose
           coefficient of m / (y_{c_u} y_{c_v}) in the (u, v) minor, times
           2^{w_e}, has valuation exactly 2W.
        5. Return the first candidate that is a perfect matching satisfying
           the constraint.
        6. Otherwise repeat 3-5 on Pf(B), the exact square root of det(B),
           with valuation W and Pfaffian minors, then move to the next round.

    Returns:
        PerfectMatching | None: a verified legal matching, or None after
        `max_rounds` rounds.
    """
    check_dimension(constraint, g.d)
    if g.n % 2:
        return None
    vectors = legal_count_vectors(constraint, g.n, g.d)
    terms = legal_terms(vectors)
    if not terms:
        return None
    if g.n == 0:
        return frozenset() if constraint.holds((0,) * g.d) else None
    if not g.edges:
        return None

    bound = 2 * len(g.edges)
    for round_index in range(max_rounds):
        rng = stream(seed, config.EXTRACTION_STREAM, round_index)
        weights = [int(w) for w in rng.integers(1, bound + 1, size=len(g.edges))]
        det, adjugate = bareiss_adjugate(build_weighted_tutte(g, weights))
        if adjugate is None:
            logger.debug("Round %d: weighted matrix is singular", round_index)
            continue
        matching = _extract_from_determinant(g, constraint, weights, det, adjugate, terms)
        if matching is None:
            matching = _extract_from_pfaffian(g, constraint, weights, det, adjugate, vectors)
        if matching is not None:
            logger.info("✓ Extracted a legal matching in round %d", round_index)
            return matching
        logger.debug("Round %d: no candidate verified", round_index)
    return None
