import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from ricciflat import split as sp
from ricciflat.linalg import ExactMatrix, determinant
from ricciflat.riccicheck import RICCI_TYPE

PAIRS = [(m, r) for m in range(1, 8) for r in range(1, 8) if m + r <= 8]


@pytest.mark.parametrize("m,r", PAIRS)
def test_mu_trace_and_symmetry(m, r):
    N = m * r
    for a in range(N):
        t = sp.mu({a: 1}, m, r)
        assert sp.mu_trace(t, N, 2) == {a: m + r}
        assert sp.mu_trace(t, N, 1) == {a: m + r}
        assert sp.is_symmetric_12(t, N)


def _matrix(draw_rows):
    return [list(r) for r in draw_rows]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 2 ** 32))
def test_mu_is_basis_independent(m, r, seed):
    rng = random.Random(seed)
    GW = [[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)]
    GU = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(r)]
    assume(determinant(ExactMatrix.from_dense(GW)) != 0)
    assume(determinant(ExactMatrix.from_dense(GU)) != 0)
    w = {i: rng.randint(-3, 3) for i in range(m * r)}
    w = {k: v for k, v in w.items() if v}
    assert sp.mu_in_bases(w, m, r, GW, GU) == sp.mu(w, m, r)


def test_mu_is_linear():
    m, r = 3, 2
    a, b = sp.mu({0: 1}, m, r), sp.mu({3: 1}, m, r)
    both = sp.mu({0: 2, 3: -1}, m, r)
    expect = {}
    for k, v in a.items():
        expect[k] = expect.get(k, 0) + 2 * v
    for k, v in b.items():
        expect[k] = expect.get(k, 0) - v
    assert both == {k: v for k, v in expect.items() if v}


@pytest.mark.parametrize("label,make,dim", [
    ("sym3", lambda: sp.sym_context(3), 6),
    ("alt5", lambda: sp.alt_context(5), 10),
    ("3x3", lambda: sp.full_context(3, 3), 9),
])
def test_p_mu_spans_prolongation(label, make, dim):
    ctx = make()
    g = sp.split_algebra(ctx)
    rep = sp.p_mu_in_g1(ctx, g)
    assert rep.equal and rep.dim_g1 == dim


def test_P_closed_form_at_3_2():
    ctx = sp.full_context(3, 2)
    P, rep = sp.P_operator(ctx)
    assert rep.scalar == 1
    assert rep.invertible and rep.wedge_eigenvalue_ok
    assert sp.sym_inverse_ok(3, 2, P)


@pytest.mark.parametrize("m,r", [(2, 2), (3, 3), (4, 2)])
def test_P_closed_form_invertible(m, r):
    P = sp.P_closed_form(m, r)
    from ricciflat.linalg import rank
    assert rank(P) == P.nrows
    assert sp.wedge_eigen_ok(m, r, P)
    assert sp.sym_inverse_ok(m, r, P)


@pytest.mark.parametrize("make", [lambda: sp.sym_context(3), lambda: sp.alt_context(5),
                                  lambda: sp.full_context(3, 3)])
def test_split_classification(make):
    sc = sp.split_classify(make())
    assert sc.h12_zero and sc.ricci_injective_on_boundary
    assert sc.verdict == RICCI_TYPE


@pytest.mark.parametrize("make,kappa", [(lambda: sp.sym_context(3), 4), (lambda: sp.alt_context(5), 4),
                                        (lambda: sp.full_context(3, 2), 5)])
def test_trace_constant(make, kappa):
    assert sp.trace_constant(make()) == kappa


def test_lemma_checks():
    ctx = sp.sym_context(3)
    for w in ctx.V_subspace.basis:
        assert sp.lemma_checks(ctx, w) == (True, True)


def test_sym_needs_square():
    with pytest.raises(ValueError):
        sp.split_context(2, 3, ("sym",))
