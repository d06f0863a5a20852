import json

import pytest

from ricciflat import repcatalog as rc
from ricciflat.linalg import ExactMatrix, Subspace


def _span(g):
    return Subspace.span([A.flatten() for A in g.generators], g.dim_V ** 2, g.field)


@pytest.mark.parametrize("make,dim,dim_V", [
    (lambda: rc.so_pq(3, 1), 6, 4),
    (lambda: rc.su_pq(3), 8, 6),
    (lambda: rc.sp_2n(2), 10, 4),
    (lambda: rc.gl_n(3), 9, 3),
    (lambda: rc.sl_n(3), 8, 3),
    (lambda: rc.u_n(2), 4, 4),
    (lambda: rc.sp_pq(2, 0), 10, 8),
    (lambda: rc.sl_n_H(1), 3, 4),
    (lambda: rc.co_n(3), 4, 3),
    (lambda: rc.so_n_C(3), 6, 6),
])
def test_classical_dimensions(make, dim, dim_V):
    g = make()
    assert (g.dim, g.dim_V) == (dim, dim_V)
    assert g.validate()


def test_so31_preserves_lorentz_metric():
    g = rc.so_pq(3, 1)
    eta = rc.diag([1, 1, 1, -1])
    for A in g.generators:
        assert A.T @ eta + eta @ A == ExactMatrix.zeros(4, 4)


def test_su3_commutes_with_J_and_is_trace_free():
    g = rc.su_pq(3)
    assert g.J is not None
    for A in g.generators:
        assert A @ g.J == g.J @ A
        assert A.trace() == 0


def test_sp4_preserves_eta():
    g = rc.sp_2n(2)
    eta = g.space.eta
    for A in g.generators:
        assert A.T @ eta + eta @ A == ExactMatrix.zeros(4, 4)


@pytest.mark.parametrize("p,q", [(p, q) for n in range(1, 6) for p in range(n + 1)
                                 for q in [n - p] if p >= q])
def test_metric_stabilizer_is_so_pq(p, q):
    if p + q < 2:
        pytest.skip("so(1) is the zero algebra")
    ref = rc.so_pq(p, q)
    stab = rc.stabilizer_of_tensor(p + q, ref.field, ref.preserved[0], "exact")
    assert stab.dim == ref.dim
    assert _span(stab).basis == _span(ref).basis


@pytest.mark.parametrize("make,dim,sig", [
    (rc.g2, 14, (7, 0)),
    (lambda: rc.g2(split=True), 14, (4, 3)),
    (rc.spin7, 21, (8, 0)),
    (lambda: rc.spin7(split=True), 21, (4, 4)),
])
def test_octonionic_stabilizers(make, dim, sig):
    g = make()
    assert g.dim == dim
    assert rc.metric_signature(g) == sig


def test_up_to_scale_adds_the_center():
    ref = rc.so_pq(3)
    t = rc.PreservedTensor.build(3, 2, {(0, 0): 1, (1, 1): 1, (2, 2): 1}, "sym", "up-to-scale")
    assert rc.stabilizer_of_tensor(3, ref.field, t).dim == 4


@pytest.mark.parametrize("make,dim,dim_V", [
    (lambda: rc.realify(rc.sl_n_complex(1)), 0, 2),
    (lambda: rc.realify(rc.so_n_complex(3)), 6, 6),
    (lambda: rc.realify(rc.sl_n_complex(2)), 6, 4),
])
def test_realify(make, dim, dim_V):
    g = make()
    assert (g.dim, g.dim_V) == (dim, dim_V)
    assert g.J is not None
    assert all(A @ g.J == g.J @ A for A in g.generators)


def test_derived_representations():
    assert rc.sl2_sym3().dim_V == 4
    assert rc.sym_power_rep(rc.gl_n(3), 2).dim_V == 6
    assert rc.alt_power_rep(rc.gl_n(5), 2).dim_V == 10
    assert rc.sp6_on_14().dim_V == 14
    t = rc.tensor_sum_rep(rc.sl_n(2), rc.so_pq(3))
    assert (t.dim, t.dim_V) == (6, 6)


def test_restrict_rejects_non_invariant_subspace():
    g = rc.sl_n(2)
    with pytest.raises(rc.RepError):
        rc.restrict_rep(g, Subspace.span([{0: 1}], 2))


def test_dependent_generators_rejected():
    A = rc.E(0, 1, 2)
    with pytest.raises(rc.RepError):
        rc.RepAlgebra("bad", rc.SpaceSpec(2), [A, A.scale(2)])


def test_bracket_closure_checked():
    with pytest.raises(rc.RepError):
        rc.RepAlgebra("bad", rc.SpaceSpec(2), [rc.E(0, 1, 2), rc.E(1, 0, 2)])


def test_sp_pq_quaternionic_structure():
    g = rc.sp_pq(1, 1)
    J = rc.quaternion_triple(2)
    # left quaternionic matrices commute with right multiplication
    for A in g.generators:
        for Ja in J:
            assert A @ Ja == Ja @ A


def test_generator_file_round_trip(tmp_path):
    g = rc.sl2_sym3()
    path = tmp_path / "g.json"
    rc.dump_generator_file(g, path)
    h = rc.load_generator_file(path)
    assert h.dim == g.dim and h.dim_V == g.dim_V
    assert _span(h).basis == _span(g).basis
    assert json.loads(path.read_text()) == rc.generator_data(h)


def test_generator_file_stabilizer_mode(tmp_path):
    data = {"n": 3, "generators": [],
            "preserved": [{"degree": 2, "symmetry": "sym", "mode": "exact",
                           "entries": [[0, 0, "1"], [1, 1, "1"], [2, 2, "1"]]}]}
    g = rc.load_generator_data(data)
    assert g.dim == 3


def test_generator_file_errors():
    with pytest.raises(rc.RepError):
        rc.load_generator_data({"generators": []})
    with pytest.raises(rc.RepError):
        rc.load_generator_data({"n": 2, "generators": [[["1"]]]})
    with pytest.raises(rc.RepError):
        rc.load_generator_data({"n": 2, "field": "F7", "generators": []})
