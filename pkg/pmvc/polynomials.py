"""
Exact sparse polynomials in the color symbols y_1..y_d and matrices of them.

Polynomials are sympy PolyElements over ZZ: a dict from exponent tuples to
arbitrary-precision integer coefficients, with zero terms never stored.

Module contents:
    - poly_ring: the ring ZZ[y_1..y_d] (cached per d).
    - monomial / coefficient: build a term, read a coefficient.
    - poly_mul / poly_div_exact: product and exact quotient.
    - poly_sqrt_exact: exact square root of a perfect square.
    - is_homogeneous / two_adic_valuation: degree and 2-adic helpers.
    - PolyMatrix: square matrix of polynomials sharing one ring.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy.polys.domains import ZZ
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement, PolyRing

from .errors import DimensionError, InexactDivisionError

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def poly_ring(d: int) -> PolyRing:
    """ZZ[y1, ..., yd] with lex order."""
    if d < 1:
        raise DimensionError(f"need at least one color symbol, got d = {d}")
    return PolyRing(tuple(f"y{i}" for i in range(1, d + 1)), ZZ, lex)


def monomial(ring: PolyRing, exponents: Sequence[int], coeff: int = 1) -> PolyElement:
    if len(exponents) != ring.ngens:
        raise DimensionError(f"exponent vector of length {len(exponents)} for {ring.ngens} symbols")
    return ring.from_dict({tuple(exponents): coeff})


def coefficient(p: PolyElement, exponents: Sequence[int]) -> int:
    """Integer coefficient of y^exponents in p (0 when absent)."""
    return int(p.get(tuple(exponents), 0))


def poly_mul(a: PolyElement, b: PolyElement) -> PolyElement:
    if a.ring != b.ring:
        raise DimensionError("polynomials live in different rings")
    return a * b


def poly_div_exact(a: PolyElement, b: PolyElement) -> PolyElement:
    """
    Quotient q with q * b == a.

    Raises:
        InexactDivisionError: b does not divide a in ZZ[y].
    """
    try:
        return a.exquo(b)
    except (ExactQuotientFailed, ZeroDivisionError) as exc:
        raise InexactDivisionError(f"{b} does not divide {a} exactly") from exc


def poly_sqrt_exact(p: PolyElement) -> PolyElement:
    """
    Polynomial r with r * r == p and positive leading coefficient.

    Terms of r are recovered from the top: the leading term is the square
    root of p's leading term, and each next term is LT(p - r^2) / (2 LT(r)).

    Raises:
        InexactDivisionError: p is not the square of a polynomial over ZZ.
    """
    ring = p.ring
    if not p:
        return ring.zero
    monom, coeff = p.LT
    coeff = int(coeff)
    root_coeff = math.isqrt(coeff) if coeff > 0 else -1
    if root_coeff * root_coeff != coeff or any(e % 2 for e in monom):
        raise InexactDivisionError("leading term is not a square")
    lead_monom = tuple(e // 2 for e in monom)
    lead = ring.from_dict({lead_monom: root_coeff})
    root = lead
    remainder = p - root * root
    previous = monom
    while remainder:
        monom, coeff = remainder.LT
        if ring.order(monom) >= ring.order(previous):
            raise InexactDivisionError("remainder does not shrink: not a perfect square")
        exponents = tuple(a - b for a, b in zip(monom, lead_monom))
        coeff = int(coeff)
        if min(exponents) < 0 or coeff % (2 * root_coeff):
            raise InexactDivisionError("polynomial is not a perfect square")
        term = ring.from_dict({exponents: coeff // (2 * root_coeff)})
        remainder -= (2 * root + term) * term
        root += term
        previous = monom
    return root


def is_homogeneous(p: PolyElement, degree: int) -> bool:
    """True when p is zero or every term has total degree `degree`."""
    return all(sum(m) == degree for m in p.keys())


def two_adic_valuation(value: int) -> float:
    """Exponent of 2 in |value|; +inf for 0."""
    value = abs(int(value))
    if value == 0:
        return math.inf
    return (value & -value).bit_length() - 1


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix of polynomials, rows stored as tuples."""

    ring: PolyRing
    rows: tuple[tuple[PolyElement, ...], ...]

    def __post_init__(self):
        size = len(self.rows)
        for row in self.rows:
            if len(row) != size:
                raise DimensionError(f"matrix is not square: row of length {len(row)} in {size} rows")

    @classmethod
    def from_rows(cls, ring: PolyRing, rows) -> "PolyMatrix":
        return cls(ring, tuple(tuple(ring(entry) for entry in row) for row in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: tuple[int, int]) -> PolyElement:
        i, j = index
        return self.rows[i][j]

    def minor(self, row: int, col: int) -> "PolyMatrix":
        """Matrix with the given (0-based) row and column removed."""
        return PolyMatrix(
            self.ring,
            tuple(
                tuple(entry for j, entry in enumerate(r) if j != col)
                for i, r in enumerate(self.rows)
                if i != row
            ),
        )

    def is_skew_symmetric(self) -> bool:
        n = self.size
        return all(
            self.rows[i][j] == -self.rows[j][i] for i in range(n) for j in range(i, n)
        )
