from fractions import Fraction
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from ricciflat.linalg import (DimensionMismatch, ExactMatrix, Subspace, determinant, image,
                              intersect, inverse, kernel, modular_rank, naive_kernel, naive_rank,
                              probabilistic_rank, rank, solve)
from ricciflat.scalars import I, QI, QI_TAG, coerce, format_scalar, parse_scalar


def test_qi_field_axioms():
    a, b = QI(1, 2), QI(mpq(-3, 4), 5)
    assert a * b == b * a
    assert (a * b) / b == a
    assert I * I == -1
    assert a * a.conjugate() == 5
    assert QI(7, 0) == 7
    with pytest.raises(ZeroDivisionError):
        a / QI(0, 0)


def test_lowest_terms_and_embedding():
    x = coerce(Fraction(6, 4))
    assert x.numerator == 3 and x.denominator == 2
    z = coerce(mpq(1, 3), QI_TAG)
    assert isinstance(z, QI) and z.im == 0 and z.re == mpq(1, 3)


@pytest.mark.parametrize("text", ["0", "-5/7", "3", "1/2+3i", "-i", "2/3-1/5i"])
def test_scalar_text_round_trip(text):
    x = parse_scalar(text)
    assert parse_scalar(format_scalar(x)) == x


def test_trivial_examples():
    assert kernel(ExactMatrix.identity(2)).dim == 0
    K = kernel(ExactMatrix.from_dense([[1, 1]]))
    assert K.dim == 1 and K.contains({0: 1, 1: -1})
    assert rank(ExactMatrix.zeros(3, 3)) == 0
    assert rank(ExactMatrix.from_dense([[1, 1, 1], [1, 2, 4], [1, 3, 9]])) == 3
    assert solve(ExactMatrix.from_dense([[2]]), {0: 1}) == {0: mpq(1, 2)}
    assert solve(ExactMatrix.from_dense([[1], [1]]), {0: 1, 1: 2}) is None
    with pytest.raises(DimensionMismatch):
        solve(ExactMatrix.identity(2), [1, 2, 3])


def test_qi_kernel():
    M = ExactMatrix.from_dense([[1, I], [I, -1]], QI_TAG)
    K = kernel(M)
    assert K.dim == 1
    v = K.basis[0]
    assert M.apply(v) == {}


def test_intersection_dimension_formula():
    A = Subspace.span([{0: 1}, {1: 1}, {2: 1, 3: 1}], 5)
    B = Subspace.span([{1: 1, 0: 1}, {3: 1}, {4: 1}], 5)
    assert intersect(A, B).dim == A.dim + B.dim - (A + B).dim


def test_inverse_and_determinant():
    M = ExactMatrix.from_dense([[2, 1, 0], [0, 1, 3], [1, 0, 1]])
    assert M @ inverse(M) == ExactMatrix.identity(3)
    assert determinant(M) == 5


def _random_matrix(rng, nrows, ncols, density, rank_cap=None):
    if rank_cap is not None and rank_cap < min(nrows, ncols):
        A = [[rng.randint(-3, 3) for _ in range(rank_cap)] for _ in range(nrows)]
        B = [[rng.randint(-3, 3) for _ in range(ncols)] for _ in range(rank_cap)]
        return [[sum(A[i][k] * B[k][j] for k in range(rank_cap)) for j in range(ncols)]
                for i in range(nrows)]
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) if rng.random() < density else 0
             for _ in range(ncols)] for _ in range(nrows)]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 40), st.integers(1, 40), st.floats(0.05, 1.0), st.integers(0, 2 ** 32),
       st.one_of(st.none(), st.integers(0, 40)))
def test_kernel_matches_naive_oracle(nrows, ncols, density, seed, rank_cap):
    rng = random.Random(seed)
    dense = _random_matrix(rng, nrows, ncols, density, rank_cap)
    M = ExactMatrix.from_dense(dense)
    K = kernel(M)
    oracle = naive_kernel(dense, ncols)
    assert K.dim == len(oracle) == ncols - naive_rank(dense)
    assert rank(M) + K.dim == ncols
    # same subspace: every oracle vector lies in K and spans have equal dims
    for v in oracle:
        assert K.contains({i: x for i, x in enumerate(v) if x})
    for b in K.basis:
        assert M.apply(b) == {}


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 25), st.integers(1, 25), st.integers(0, 2 ** 32))
def test_modular_rank_agrees_with_exact(nrows, ncols, seed):
    rng = random.Random(seed)
    M = ExactMatrix.from_dense(_random_matrix(rng, nrows, ncols, 0.5, rng.randint(0, 25)))
    r = rank(M)
    pr, primes = probabilistic_rank(M, agree=2, seed=seed)
    assert pr == r and len(primes) >= 2
    assert modular_rank(M, 1000003) <= r


def test_image_and_flatten_round_trip():
    M = ExactMatrix.from_dense([[1, 2], [2, 4], [0, 1]])
    assert image(M).dim == 2
    assert ExactMatrix.unflatten(M.flatten(), 3, 2) == M
