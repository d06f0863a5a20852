import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from ricciflat import segre
from ricciflat.linalg import kernel
from ricciflat.repcatalog import quaternion_triple
from ricciflat.spencer import boundary_K
from ricciflat.tensoralg import check_quaternion_triple, standard_complex_structure

J6 = standard_complex_structure(3)
TRIPLE8 = quaternion_triple(2)


@pytest.fixture(scope="module")
def forms():
    return segre.minimal_segre_forms()


def test_forms(forms):
    assert [(sa.rep.dim_V, sa.form) for sa in forms] == [(6, "real"), (8, "quaternionic"),
                                                         (12, "complex")]


@pytest.mark.parametrize("idx", [0, 1, 2])
def test_kernel_containment(forms, idx):
    r = segre.segre_kernel_containment(forms[idx])
    assert r.contained and r.omega_vanishes and r.witness
    assert r.counterexample is None


@pytest.mark.parametrize("idx", [0, 1, 2])
def test_triples_are_quaternionic(forms, idx):
    assert check_quaternion_triple(*forms[idx].triple.J)


@pytest.mark.parametrize("idx", [0, 1])
def test_reconstruction_and_commutator_on_K(forms, idx):
    sa = forms[idx]
    K = kernel(boundary_K(sa.rep))
    for k in K.basis[:10]:
        _, ok = segre.reconstruct(sa, k)
        assert ok
        assert segre.commutator_relation(sa, k) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_tilde_and_hat_on_random_forms(seed):
    rng = random.Random(seed)
    F = segre.random_complex_two_form(6, rng)
    T = segre.tilde_op(F, J6)
    assert segre.tilde_op(T, J6) == T
    F20, F11 = segre.type_parts(F, J6)
    assert F20 + F11 == F.to_field(F20.field)
    t20 = segre.tilde_op(F20, J6)
    assert t20.T == -t20
    t11 = segre.tilde_op(F11, J6)
    assert F11 == t11 - t11.T
    G = segre.random_complex_two_form(8, rng)
    H = segre.hat_op(G, TRIPLE8)
    assert segre.hat_op(H, TRIPLE8) == H


def test_printed_hat_sign_is_not_idempotent():
    rng = random.Random(0)
    G = segre.random_complex_two_form(8, rng)
    H = segre.hat_op_minus(G, TRIPLE8)
    assert segre.hat_op_minus(H, TRIPLE8) != H
    # it squares to a quarter of the identity instead
    assert segre.hat_op_minus(H, TRIPLE8) == G.to_field(H.field).scale(mpq(1, 4))
