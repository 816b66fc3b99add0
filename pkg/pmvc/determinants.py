"""
Fraction-free determinants of polynomial matrices.

Module contents:
    - bareiss_det: Bareiss elimination with row pivoting; every interior
      division is exact.
    - bareiss_adjugate: fraction-free Gauss-Jordan elimination of [B | I]
      returning det(B) and adj(B) in one pass.

Created on 15-10-26
"""

import logging

from . import config
from .polynomials import PolyMatrix, is_homogeneous, poly_div_exact

logger = logging.getLogger(__name__)


class HomogeneityError(AssertionError):
    """A Bareiss stage produced an entry of the wrong degree."""


def _find_pivot(rows, k: int, start: int) -> int | None:
    for i in range(start, len(rows)):
        if rows[i][k]:
            return i
    return None


def bareiss_det(m: PolyMatrix, check_homogeneity: bool | None = None):
    """
    Exact determinant by Bareiss' fraction-free elimination.

    Steps:
        1. At stage k pick the first row at or below k with a nonzero entry in
           column k and swap it up (flipping the sign).
        2. Replace every a[i][j] below and right of the pivot by
           (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / previous pivot.
        3. The last diagonal entry times the sign is the determinant.

    Args:
        m: square polynomial matrix.
        check_homogeneity: assert that every stage-k entry is 0 or
            homogeneous of degree 2k. Only meaningful when all input entries
            are 0 or homogeneous of degree 2; skipped otherwise. Defaults to
            config.DEBUG_HOMOGENEITY.

    Returns:
        PolyElement: det(m).

    Raises:
        InexactDivisionError: an interior division left a remainder.
        HomogeneityError: a stage entry failed the degree check.
    """
    if check_homogeneity is None:
        check_homogeneity = config.DEBUG_HOMOGENEITY
    ring = m.ring
    n = m.size
    if n == 0:
        return ring.one

    a = [list(row) for row in m.rows]
    if check_homogeneity and not all(is_homogeneous(e, 2) for row in a for e in row):
        logger.debug("Input entries are not homogeneous of degree 2, skipping stage checks")
        check_homogeneity = False

    sign = 1
    previous = ring.one
    for k in range(n - 1):
        pivot_row = _find_pivot(a, k, k)
        if pivot_row is None:
            return ring.zero
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign

        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                numerator = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = poly_div_exact(numerator, previous)
            a[i][k] = ring.zero
        previous = pivot

        if check_homogeneity:
            stage = k + 2
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if not is_homogeneous(a[i][j], 2 * stage):
                        raise HomogeneityError(
                            f"stage {stage} entry ({i}, {j}) is not homogeneous of degree {2 * stage}"
                        )

    return sign * a[n - 1][n - 1]


def bareiss_adjugate(m: PolyMatrix):
    """
    Determinant and adjugate from one fraction-free Gauss-Jordan pass.

    Eliminating [B | I] column by column leaves [D * I | E] with E = D * B^-1
    and D the determinant of the row-permuted matrix, so det(B) = sign * D and
    adj(B) = sign * E.

    Returns:
        tuple: (det, adjugate) where adjugate is a list of rows, or
        (ring.zero, None) when B is singular.

    Raises:
        InexactDivisionError: an interior division left a remainder.
    """
    ring = m.ring
    n = m.size
    if n == 0:
        return ring.one, []

    width = 2 * n
    a = [
        list(row) + [ring.one if j == i else ring.zero for j in range(n)]
        for i, row in enumerate(m.rows)
    ]

    sign = 1
    previous = ring.one
    for k in range(n):
        pivot_row = _find_pivot(a, k, k)
        if pivot_row is None:
            return ring.zero, None
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign

        pivot = a[k][k]
        for i in range(n):
            if i == k:
                continue
            factor = a[i][k]
            for j in range(width):
                if j == k:
                    continue
                a[i][j] = poly_div_exact(pivot * a[i][j] - factor * a[k][j], previous)
            a[i][k] = ring.zero
        previous = pivot

    det = sign * previous
    adjugate = [[sign * a[i][n + j] for j in range(n)] for i in range(n)]
    return det, adjugate
