import math

import numpy as np
import pytest

from pmvc.brute_oracle import naive_det
from pmvc.determinants import HomogeneityError, bareiss_adjugate, bareiss_det
from pmvc.errors import DimensionError, InexactDivisionError, ResourceLimitError
from pmvc.polynomials import (
    PolyMatrix,
    coefficient,
    is_homogeneous,
    monomial,
    poly_div_exact,
    poly_mul,
    poly_ring,
    poly_sqrt_exact,
    two_adic_valuation,
)


@pytest.fixture
def ring():
    return poly_ring(2)


def random_matrix(ring, size, rng):
    """Dense matrix with small integer combinations of y1^2, y1*y2, y2^2."""
    y1, y2 = ring.gens
    basis = (y1**2, y1 * y2, y2**2)
    rows = []
    for _ in range(size):
        row = []
        for _ in range(size):
            weights = rng.integers(-2, 3, size=3)
            row.append(sum((int(w) * b for w, b in zip(weights, basis)), ring.zero))
        rows.append(row)
    return PolyMatrix.from_rows(ring, rows)


def random_skew_matrix(ring, size, rng):
    """Skew-symmetric matrix whose entries are small integer combinations of degree-2 monomials."""
    gens = ring.gens
    basis = [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]
    rows = [[ring.zero] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            weights = rng.integers(-2, 3, size=len(basis))
            entry = sum((int(w) * b for w, b in zip(weights, basis)), ring.zero)
            rows[i][j] = entry
            rows[j][i] = -entry
    return PolyMatrix.from_rows(ring, rows)


def check_skew_corpus(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        d = int(rng.integers(1, 4))
        size = int(rng.integers(1, 7))
        m = random_skew_matrix(poly_ring(d), size, rng)
        assert bareiss_det(m, check_homogeneity=True) == naive_det(m)


def test_ring_is_cached_and_checked():
    assert poly_ring(3) is poly_ring(3)
    with pytest.raises(DimensionError):
        poly_ring(0)


def test_monomial_and_coefficient(ring):
    p = monomial(ring, (2, 1), 5) + monomial(ring, (0, 3), -1)
    assert coefficient(p, (2, 1)) == 5
    assert coefficient(p, (0, 3)) == -1
    assert coefficient(p, (1, 2)) == 0
    with pytest.raises(DimensionError):
        monomial(ring, (1, 1, 1))


def test_exact_division(ring):
    y1, y2 = ring.gens
    product = poly_mul(y1 + 2 * y2, 3 * y1 - y2)
    assert poly_div_exact(product, y1 + 2 * y2) == 3 * y1 - y2
    with pytest.raises(InexactDivisionError):
        poly_div_exact(product, y1 + y2)
    with pytest.raises(InexactDivisionError):
        poly_div_exact(product, ring.zero)


def test_mixing_rings_is_rejected(ring):
    with pytest.raises(DimensionError):
        poly_mul(ring.gens[0], poly_ring(3).gens[0])


def test_square_root(ring):
    y1, y2 = ring.gens
    root = 8 * y1**4 - 3 * y1**2 * y2**2 + 5 * y2**4
    assert poly_sqrt_exact(root * root) == root
    assert poly_sqrt_exact((-root) * (-root)) == root
    assert poly_sqrt_exact(ring.zero) == ring.zero
    with pytest.raises(InexactDivisionError):
        poly_sqrt_exact(y1**2 + y2**2)
    with pytest.raises(InexactDivisionError):
        poly_sqrt_exact(-(y1**2))


def test_homogeneity_and_valuation(ring):
    y1, y2 = ring.gens
    assert is_homogeneous(y1**2 + 3 * y1 * y2, 2)
    assert not is_homogeneous(y1**2 + y2, 2)
    assert is_homogeneous(ring.zero, 7)
    assert two_adic_valuation(96) == 5
    assert two_adic_valuation(-1) == 0
    assert two_adic_valuation(0) == math.inf


def test_empty_matrix_determinant(ring):
    empty = PolyMatrix(ring, ())
    assert bareiss_det(empty) == ring.one
    assert bareiss_adjugate(empty) == (ring.one, [])
    assert naive_det(empty) == ring.one


def test_non_square_matrix_is_rejected(ring):
    with pytest.raises(DimensionError):
        PolyMatrix(ring, ((ring.one, ring.zero),))


def test_bareiss_agrees_with_cofactor_expansion(ring):
    rng = np.random.default_rng(7)
    for size in range(1, 6):
        for _ in range(4):
            m = random_matrix(ring, size, rng)
            assert bareiss_det(m, check_homogeneity=True) == naive_det(m)


def test_bareiss_on_skew_matrices():
    check_skew_corpus(15, 9)


@pytest.mark.slow
def test_bareiss_on_full_skew_corpus():
    check_skew_corpus(100, 10)


def test_bareiss_needs_row_pivoting(ring):
    y1, y2 = ring.gens
    m = PolyMatrix.from_rows(ring, [[0, y1**2], [y2**2, 0]])
    assert bareiss_det(m) == -(y1**2) * y2**2


def test_singular_matrix(ring):
    y1, _ = ring.gens
    m = PolyMatrix.from_rows(ring, [[y1**2, y1**2], [y1**2, y1**2]])
    assert bareiss_det(m) == ring.zero
    assert bareiss_adjugate(m) == (ring.zero, None)


def test_adjugate_inverts_up_to_determinant(ring):
    rng = np.random.default_rng(8)
    for size in range(1, 5):
        m = random_matrix(ring, size, rng)
        det, adj = bareiss_adjugate(m)
        assert det == naive_det(m)
        if adj is None:
            continue
        for i in range(size):
            for j in range(size):
                entry = sum((m[i, k] * adj[k][j] for k in range(size)), ring.zero)
                assert entry == (det if i == j else ring.zero)


def test_homogeneity_check_flags_bad_stage(ring, monkeypatch):
    y1, y2 = ring.gens
    m = PolyMatrix.from_rows(ring, [[y1**2, y2**2], [y1 * y2, y1**2]])
    assert bareiss_det(m, check_homogeneity=True) == y1**4 - y1 * y2**3

    def broken_division(a, b):
        return a.exquo(b) + ring.one

    monkeypatch.setattr("pmvc.determinants.poly_div_exact", broken_division)
    with pytest.raises(HomogeneityError):
        bareiss_det(m, check_homogeneity=True)


def test_cofactor_expansion_has_a_size_limit(ring):
    big = PolyMatrix(ring, tuple(tuple(ring.zero for _ in range(9)) for _ in range(9)))
    with pytest.raises(ResourceLimitError):
        naive_det(big)
