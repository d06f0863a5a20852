"""One check per acceptance criterion; each prints a single pass/fail line.

Sub-checks that disagree with exact computation are separate xfail(strict=True)
tests, so they show up as expected failures and would turn the run red if
they ever started passing.
"""

import io
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest
from gmpy2 import mpq

from ricciflat import algspec, e6, repcatalog as rc, segre, split as sp
from ricciflat.cli import main, parse_records
from ricciflat.linalg import ExactMatrix, Subspace, kernel, naive_kernel, naive_rank, probabilistic_rank, rank
from ricciflat.repcatalog import quaternion_triple
from ricciflat.riccicheck import MIXED, RICCI_TYPE, TRACE_FREE, classify
from ricciflat.spencer import (boundary_1, boundary_K, complex_split, g1_to_tensor, prolong,
                               prolong_by_intersection)
from ricciflat.symplectic import verify_symplectic
from ricciflat.tensoralg import standard_complex_structure
from ricciflat.verify import SYMPLECTIC_CASES, suite_volume

FIXTURES = Path(__file__).parent / "fixtures"


# 1 -------------------------------------------------------------------------

def test_criterion_1_catalog_verdicts(criterion):
    t0 = time.time()
    recs = {s: classify(algspec.build(s)) for s in
            ["so(3)", "so(4)", "so(3,1)", "su(3)", "sp(2)", "sl(1,H)", "g2", "spin7", "sp(4,R)",
             "sl(2,C)", "so(4,C)"]}
    bad = []
    so3 = recs["so(3)"]
    if not (so3.dim_ricci_kernel == 0 and so3.dim_ricci_image == so3.dim_K > 0
            and so3.verdict == RICCI_TYPE):
        bad.append("so(3)")
    so4 = recs["so(4)"]
    if (so4.dim_K, so4.dim_ricci_image, so4.dim_ricci_kernel, so4.verdict) != (20, 10, 10, MIXED):
        bad.append("so(4)")
    for s in ("so(3,1)", "sp(4,R)", "sl(2,C)", "so(4,C)"):
        if recs[s].verdict != MIXED:
            bad.append(s)
    for s in ("su(3)", "sp(2)", "sl(1,H)", "g2", "spin7"):
        if recs[s].verdict != TRACE_FREE or recs[s].dim_K == 0:
            bad.append(s)
    dt = time.time() - t0
    criterion(1, "catalog verdicts at minimal dimension", not bad and dt < 120,
              f"{len(recs)} algebras, {dt:.1f}s" + (f", wrong: {bad}" if bad else ""))


# 2 -------------------------------------------------------------------------

def test_criterion_2_stabilizer_dims(criterion):
    t0 = time.time()
    got = {
        "g2": (rc.g2().dim, rc.metric_signature(rc.g2())),
        "split-g2": (rc.g2(split=True).dim, rc.metric_signature(rc.g2(split=True))),
        "spin7": (rc.spin7().dim, rc.metric_signature(rc.spin7())),
        "spin(4,3)": (rc.spin7(split=True).dim, rc.metric_signature(rc.spin7(split=True))),
    }
    want = {"g2": (14, (7, 0)), "split-g2": (14, (4, 3)), "spin7": (21, (8, 0)),
            "spin(4,3)": (21, (4, 4))}
    dt = time.time() - t0
    criterion(2, "octonionic stabilizer dims and metric signatures", got == want and dt < 60,
              f"{got}, {dt:.1f}s")


# 3 -------------------------------------------------------------------------

def test_criterion_3_complex_splitting(criterion):
    t0 = time.time()
    ok = complex_split(algspec.build("so(4,C)")).dims[1] == 0
    ok &= complex_split(algspec.build("u(2)")).dims[0] == 0
    specs = ["sl(2,C)", "so(3,C)", "sl(3,C)", "so(4,C)", "sp(4,C)", "gl(2,C)", "sl(2,C)@sym3",
             "sl(2,C)*so(3,C)", "su(2)", "su(3)", "u(2)"]
    checked = 0
    for s in specs:
        g = algspec.build(s)
        if g.dim_V > 12 or not g.is_complex_linear:
            continue
        cs = complex_split(g)
        ok &= cs.dims[2] == 0 and cs.is_direct_sum and cs.dims == cs.eigen_dims
        checked += 1
    dt = time.time() - t0
    criterion(3, "K2(so(4,C)) = 0, K1(u(2)) = 0, K3 = 0 for complex-linear algebras",
              ok and checked >= 8 and dt < 120, f"{checked} algebras, {dt:.1f}s")


# 4 -------------------------------------------------------------------------

def test_criterion_4_volume_identities(criterion):
    checks = suite_volume(per_algebra=30, seed=0)
    ok = all(c.ok for c in checks)
    criterion(4, "volume trace = sigma1 (Ric - Ric^T), complex trace with sigma2",
              ok, "; ".join(c.label + " " + c.value for c in checks))


# 5 -------------------------------------------------------------------------

@pytest.fixture(scope="module")
def symplectic_reports():
    t0 = time.time()
    reps = {name: verify_symplectic(make()) for name, make in SYMPLECTIC_CASES}
    return reps, time.time() - t0


def test_criterion_5_symplectic_family(criterion, symplectic_reports):
    reps, dt = symplectic_reports
    ok = all(r.eq1 and r.eq2_holds and r.dim_K == r.dim_g and r.ric_rho_injective
             and r.verdict == RICCI_TYPE for r in reps.values())
    scales = {n: tuple(str(x) for x in r.eq2_factor_scales) for n, r in reps.items()}
    criterion(5, "first identity, quartic identity with reported pairing scales, dim K = dim g, "
                 "Ric(rho_A) injective, RicciType", ok and dt < 300, f"scales {scales}, {dt:.1f}s")


@pytest.mark.xfail(strict=True, reason="sl(2)+so(p,q) needs one pairing scale per simple factor")
@pytest.mark.parametrize("name", ["sl(2,R)*so(3)", "sl(2,R)*so(2,1)"])
def test_criterion_5_single_global_pairing_scale(criterion, symplectic_reports, name):
    r = symplectic_reports[0][name]
    criterion("5 (sub)", f"{name}: quartic identity with one global pairing scale",
              r.eq2_global_scale is not None, f"per-factor scales {r.eq2_factor_scales}",
              expected_failure=True)


# 6 -------------------------------------------------------------------------

def test_criterion_6_split_family(criterion):
    t0 = time.time()
    ok_mu = True
    for m in range(1, 8):
        for r in range(1, 9 - m):
            N = m * r
            for a in range(N):
                t = sp.mu({a: 1}, m, r)
                ok_mu &= sp.mu_trace(t, N, 2) == {a: m + r} and sp.is_symmetric_12(t, N)
    dims = []
    ok_cls = True
    for ctx in (sp.sym_context(3), sp.alt_context(5), sp.full_context(3, 3)):
        g = sp.split_algebra(ctx)
        pm = sp.p_mu_in_g1(ctx, g)
        dims.append(pm.dim_g1 if pm.equal else None)
        sc = sp.split_classify(ctx, g)
        ok_cls &= sc.h12_zero and sc.verdict == RICCI_TYPE
    P, prep = sp.P_operator(sp.full_context(3, 2))
    ok_P = prep.scalar == 1 and prep.invertible
    dt = time.time() - t0
    criterion(6, "mu trace/symmetry for m+r <= 8, p o mu(V*) = g^(1), P closed form, H^(1,2) = 0",
              ok_mu and dims == [6, 10, 9] and ok_P and ok_cls and dt < 600,
              f"g^(1) dims {dims}, P scalar {prep.scalar}, {dt:.1f}s")


# 7 -------------------------------------------------------------------------

def test_criterion_7_minimal_segre(criterion):
    t0 = time.time()
    reports = [segre.segre_kernel_containment(sa) for sa in segre.minimal_segre_forms()]
    ok = all(r.contained and r.omega_vanishes for r in reports)
    rng = random.Random(7)
    J6 = standard_complex_structure(3)
    triple = quaternion_triple(2)
    ok_forms = True
    for _ in range(100):
        F = segre.random_complex_two_form(6, rng)
        T = segre.tilde_op(F, J6)
        _, F11 = segre.type_parts(F, J6)
        t11 = segre.tilde_op(F11, J6)
        G = segre.random_complex_two_form(8, rng)
        H = segre.hat_op(G, triple)
        ok_forms &= segre.tilde_op(T, J6) == T and segre.hat_op(H, triple) == H \
            and F11 == t11 - t11.T
    dt = time.time() - t0
    criterion(7, "ker Ric in K avoids the sl(2) factor; tilde/hat idempotent, reconstruction lemma",
              ok and ok_forms and dt < 1200,
              ", ".join(f"{r.name}: dim ker {r.dim_N}" for r in reports) + f", {dt:.1f}s")


# 8 -------------------------------------------------------------------------

@pytest.fixture(scope="module")
def e6_results(e6ctx):
    t0 = time.time()
    ctx = e6ctx
    fit = e6.fit_lambda(ctx)
    g1 = prolong(ctx.e6)
    return {
        "worked": e6.worked_example(ctx),
        "fit": fit,
        "ricci": e6.e6_ricci_eigenvalues(ctx),
        "h12": e6.h12_consistency(ctx, g1, primes=2),
        "time": time.time() - t0 + sum(v for k, v in ctx.timings.items() if k == "total"),
    }


def test_criterion_8_e6_suite(criterion, e6ctx, e6_results):
    ctx, r = e6ctx, e6_results
    w = r["worked"]
    checks = {
        "dim V* = 27": ctx.V27_star.dim == 27,
        "stabilizer dim 79": ctx.e6.dim == 79,
        "unique cubic": ctx.invariant_dim == 1,
        "Psi.Theta = 27": e6.psi_dot_theta(ctx) == 27,
        "Psi Theta = Id": e6.psi_theta_identity(ctx) == ExactMatrix.identity(27),
        "Pi^2 = Pi": ctx.Pi @ ctx.Pi == ctx.Pi,
        "Theta(a,d,.) = X1^X3": w["theta_ad_is_X1X3"],
        "mu2(d)|a|W = d": w["mu2_d_a_W"] == 1,
        "dim g^(1) = 27": r["fit"].dim_g1 == 27,
        "R invertible, RicciType": r["ricci"].invertible and r["ricci"].verdict == RICCI_TYPE,
        "dim K = dim d(V* x g^(1))": r["h12"]["h12"] == 0,
    }
    bad = [k for k, v in checks.items() if not v]
    criterion(8, "E6 identities", not bad and r["time"] < 1800,
              f"{len(checks) - len(bad)}/{len(checks)} hold, dim K {r['h12']['dim_K']} "
              f"[probabilistic, primes {r['h12']['primes']}], {r['time']:.1f}s"
              + (f", failing: {bad}" if bad else ""))


@pytest.mark.xfail(strict=True, reason="Psi(d,b,c) = -1/10 under Psi.Theta = 27")
def test_criterion_8_psi_dbc(criterion, e6_results):
    v = e6_results["worked"]["psi_dbc"]
    criterion("8 (sub)", "Psi(d,b,c) = -1", v == -1, f"computed {v}", expected_failure=True)


@pytest.mark.xfail(strict=True, reason="mu1(d)|a|W = d/10 under Psi.Theta = 27")
def test_criterion_8_mu1_chain(criterion, e6_results):
    v = e6_results["worked"]["mu1_d_a_W"]
    criterion("8 (sub)", "mu1(d)|a|W = d", v == 1, f"computed {v} d", expected_failure=True)


@pytest.mark.xfail(strict=True, reason="g^(1) fit gives lambda2 = -lambda1/10")
def test_criterion_8_lambda_relation(criterion, e6_results):
    f = e6_results["fit"]
    criterion("8 (sub)", "lambda1 = -lambda2", f.lambda1 == -f.lambda2,
              f"lambda2/lambda1 = {f.lambda2 / f.lambda1}", expected_failure=True)


@pytest.mark.xfail(strict=True, reason="eigenvalues 13/5, 8/5 give the ratio 13:8")
def test_criterion_8_eigenvalue_ratio(criterion, e6_results):
    rep = e6_results["ricci"]
    criterion("8 (sub)", "symmetric-part eigenvalue ratio 26:25", rep.ratio == mpq(26, 25),
              f"computed {rep.ratio}", expected_failure=True)


# 9 -------------------------------------------------------------------------

def test_criterion_9_structural_properties(criterion):
    t0 = time.time()
    ok_dd = ok_pro = ok_mod = True
    n_mod = 0
    for row in algspec.CATALOG:
        g = algspec.build(row.spec)
        g1 = prolong(g)
        B = boundary_K(g)
        if g1.dim:
            ok_dd &= (B @ boundary_1(g, g1)).nnz() == 0
        if g.dim_V <= 8:
            lhs = Subspace.span([g1_to_tensor(g, b) for b in g1.basis], g.dim_V ** 3, g.field)
            ok_pro &= lhs.basis == prolong_by_intersection(g).basis
        for M in (B,) + ((boundary_1(g, g1),) if g1.dim else ()):
            ok_mod &= probabilistic_rank(M, agree=2, seed=n_mod)[0] == rank(M)
            n_mod += 1
    rng = random.Random(9)
    ok_naive = True
    for _ in range(100):
        nr, nc = rng.randint(1, 40), rng.randint(1, 40)
        dense = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) if rng.random() < 0.3 else 0
                  for _ in range(nc)] for _ in range(nr)]
        K = kernel(ExactMatrix.from_dense(dense))
        oracle = naive_kernel(dense, nc)
        ok_naive &= K.dim == len(oracle) == nc - naive_rank(dense) and all(
            K.contains({i: x for i, x in enumerate(v) if x}) for v in oracle)
    dt = time.time() - t0
    criterion(9, "d o d = 0, prolongation routes agree, modular = exact rank, naive oracle agrees",
              ok_dd and ok_pro and ok_mod and ok_naive,
              f"dd {ok_dd}, prolong {ok_pro}, modular {ok_mod} on {n_mod} matrices, "
              f"oracle {ok_naive}, {dt:.1f}s")


# 10 ------------------------------------------------------------------------

def _run(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


def test_criterion_10_cli_contract(criterion, tmp_path):
    code, text = _run("table", "--max-dim", "8", "--format", "records")
    recs = parse_records(text)
    ok_table = code == 0 and len(recs) == 14 and all(r["match"] is True for r in recs)
    bad_code, _ = _run("table", "--max-dim", "8", "--expectations",
                       str(FIXTURES / "corrupted_expectations.json"))
    cache = tmp_path / "cache"
    cold = _run("table", "--max-dim", "8", "--cache", str(cache))
    warm = _run("table", "--max-dim", "8", "--cache", str(cache))
    criterion(10, "table exits 0 with all rows matching, corrupted fixture exits 1, "
                  "cache cold == warm", ok_table and bad_code == 1 and cold == warm,
              f"exit {code}, corrupted exit {bad_code}, identical {cold == warm}")
