import pytest

from ricciflat.linalg import ExactMatrix, kernel
from ricciflat.tensoralg import (SpaceSpec, alt_embed, alt_project, check_quaternion_triple, pairs,
                                 perm_sign, standard_complex_structure, sym_embed, sym_project,
                                 theta2, theta4)
from ricciflat.repcatalog import quaternion_triple


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((2, 0, 1)) == 1
    assert perm_sign((0, 0, 1)) == 0


def test_pairs_count():
    assert len(pairs(5)) == 10


@pytest.mark.parametrize("k,n", [(2, 3), (2, 4), (3, 4), (3, 5)])
def test_embed_project_identity(k, n):
    for emb, proj in ((alt_embed, alt_project), (sym_embed, sym_project)):
        E, P = emb(k, n), proj(k, n)
        assert P @ E == ExactMatrix.identity(E.ncols)


def test_theta4_is_involution_with_equal_eigenspaces():
    J = standard_complex_structure(2)
    assert J.shape == (4, 4)
    T = theta4(J)
    eye = ExactMatrix.identity(T.nrows)
    assert T @ T == eye
    plus = kernel(T - eye).dim
    minus = kernel(T + eye).dim
    assert (plus, minus) == (48, 48)


def test_theta2_involution():
    J = standard_complex_structure(3)
    T = theta2(J)
    assert T @ T == ExactMatrix.identity(T.nrows)


def test_space_spec_rejects_bad_structures():
    with pytest.raises(ValueError):
        SpaceSpec(2, J=ExactMatrix.identity(2))
    with pytest.raises(ValueError):
        SpaceSpec(2, eta=ExactMatrix.from_dense([[0, 1], [1, 0]]))
    with pytest.raises(ValueError):
        SpaceSpec(2, metric=ExactMatrix.from_dense([[1, 1], [1, 1]]))


@pytest.mark.parametrize("n", [1, 2])
def test_quaternion_triple_relations(n):
    J1, J2, J3 = quaternion_triple(n)
    assert check_quaternion_triple(J1, J2, J3)
    assert not check_quaternion_triple(J1, J3, J2)
