import pytest
from gmpy2 import mpq

from ricciflat import e6
from ricciflat.linalg import ExactMatrix, rank
from ricciflat.riccicheck import RICCI_TYPE


def test_dimensions(e6ctx):
    assert e6ctx.V27_star.dim == 27
    assert e6ctx.e6.dim == 79
    assert e6ctx.e6_exact.dim == 78
    assert e6ctx.e6.has_center_scaling


def test_omega_kernel_is_27_dimensional():
    M = e6.wedge_omega3_matrix()
    assert M.ncols - rank(M) == 27


def test_cubic_invariants(e6ctx):
    assert e6ctx.invariant_dim == 1
    assert e6.psi_dot_theta(e6ctx) == 27
    assert e6.psi_theta_identity(e6ctx) == ExactMatrix.identity(27)


def test_generators_preserve_theta_exactly(e6ctx):
    from ricciflat.repcatalog import PreservedTensor
    theta = PreservedTensor.build(27, 3, e6ctx.Theta_cubic, "sym", "exact", ("V",) * 3)
    psi = PreservedTensor.build(27, 3, e6ctx.Psi_cubic, "sym", "exact")
    for G in e6ctx.e6_exact.generators[::7]:
        assert theta.is_preserved_by(G)
        assert psi.is_preserved_by(G)


def test_pi_is_a_projection(e6ctx):
    Pi = e6ctx.Pi
    assert Pi @ Pi == Pi
    assert rank(Pi) == 27


def test_wedge_helpers():
    w = e6.wedge(e6.eta(0, 1), e6.eta(2, 3))
    assert w == {(0, 1, 2, 3): 1}
    assert e6.wedge(e6.eta(0, 1), e6.eta(1, 2)) == {}


def test_worked_example(e6ctx):
    w = e6.worked_example(e6ctx)
    assert w["theta_ab_zero"] and w["theta_bc_nonzero"] and w["theta_ad_is_X1X3"]
    assert w["theta_dbc"] == -1
    assert w["mu2_d_a_W"] == 1
    # frozen values of the Psi.Theta = 27 normalization
    assert w["psi_dbc"] == mpq(-1, 10)
    assert w["mu1_d_a_W"] == mpq(1, 10) == w["pi_ad_W"]


def test_mu_traces(e6ctx):
    for i in (0, 5, 26):
        v = {i: mpq(1)}
        assert e6.mu_trace(e6.mu1(e6ctx, v)) == {i: 1}
        assert e6.mu_trace(e6.mu2(e6ctx, v)) == {i: 28}


def test_mu_maps_are_not_proportional(e6ctx):
    v = {3: mpq(1)}
    a, b = e6.mu1(e6ctx, v), e6.mu2(e6ctx, v)
    assert a and b
    k = next(iter(b))
    c = a.get(k, 0) / b[k]
    assert any(a.get(x, 0) != c * b.get(x, 0) for x in set(a) | set(b))


@pytest.fixture(scope="module")
def fit(e6ctx):
    return e6.fit_lambda(e6ctx)


def test_prolongation_lies_in_the_pencil(fit):
    assert fit.dim_g1 == 27 and fit.in_pencil
    assert fit.lambda2 / fit.lambda1 == mpq(-1, 10)


def test_nu_lands_in_g_only_for_the_fitted_ratio(e6ctx):
    assert e6.nu_in_g(e6ctx, 1, mpq(-1, 10))
    assert not e6.nu_in_g(e6ctx, 1, -1)


def test_ricci_operator_closed_form(e6ctx, fit):
    rep = e6.e6_ricci_eigenvalues(e6ctx)
    assert rep.scalar == 1
    assert (rep.pi_eigenvalue, rep.complement_eigenvalue, rep.skew_eigenvalue) == \
        (mpq(13, 5), mpq(8, 5), mpq(9, 5))
    assert rep.ratio == mpq(13, 8)
    assert rep.invertible and rep.verdict == RICCI_TYPE


@pytest.mark.parametrize("l1,l2", [(1, -1), (2, 3), (1, mpq(-1, 10))])
def test_predicted_eigenvalues_formula(l1, l2):
    a, b, c = e6.predicted_eigenvalues(l1, l2)
    assert (a, b, c) == (-26 * l2, -l1 - 26 * l2, -l1 - 28 * l2)


def test_export_round_trip(e6ctx, tmp_path):
    import json
    path = tmp_path / "e6.json"
    e6.export_generators(e6ctx, path)
    data = json.loads(path.read_text())
    assert data["n"] == 27 and len(data["generators"]) == 79
