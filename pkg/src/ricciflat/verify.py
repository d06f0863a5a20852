"""Identity suites, one per family, shared by the CLI and the tests.

Each suite returns a list of :class:`Check`; ``expected`` records the value the
identity should take and ``value`` what was computed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from . import algspec
from . import repcatalog as rc
from .linalg import kernel
from .riccicheck import RICCI_TYPE, classify, complex_sigma, volume_sigma
from .spencer import boundary_K, complex_split


@dataclass(frozen=True)
class Check:
    family: str
    label: str
    ok: bool
    value: str = ""
    expected: str = ""

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        detail = f" (got {self.value}, expected {self.expected})" if not self.ok else \
            (f" ({self.value})" if self.value else "")
        return f"[{status}] {self.family}: {self.label}{detail}"


def _fmt(x) -> str:
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(_fmt(y) for y in x) + ")"
    return str(x)


def _c(family, label, value, expected) -> Check:
    return Check(family, label, value == expected, _fmt(value), _fmt(expected))


# ---------------------------------------------------------------------------

SYMPLECTIC_CASES = (
    ("sl(2,R)@sym3", rc.sl2_sym3),
    ("sl(2,R)*so(3)", lambda: rc.sl2_so_pq(3)),
    ("sl(2,R)*so(2,1)", lambda: rc.sl2_so_pq(2, 1)),
    ("sp(6,R)@prim3", rc.sp6_on_14),
)


def suite_symplectic(cases=SYMPLECTIC_CASES) -> list:
    from .symplectic import verify_symplectic
    out = []
    f = "symplectic"
    for name, make in cases:
        r = verify_symplectic(make())
        out += [
            _c(f, f"{name} first identity", r.eq1, True),
            _c(f, f"{name} u o v symmetric", r.circ_symmetric, True),
            _c(f, f"{name} quartic identity with fitted pairing {_fmt(r.eq2_factor_scales)}", r.eq2_holds, True),
            _c(f, f"{name} quartic identity with one global pairing scale",
               r.eq2_global_scale is not None, True),
            _c(f, f"{name} rho_A in K", r.rho_in_K, True),
            _c(f, f"{name} dim K = dim g", r.dim_K, r.dim_g),
            _c(f, f"{name} Ric(rho_A) = 0 only for A = 0", r.ric_rho_injective, True),
            _c(f, f"{name} verdict", r.verdict, RICCI_TYPE),
        ]
    return out


def suite_split() -> list:
    from . import split as sp
    f = "split"
    out = []
    for m, r in ((3, 2), (3, 3)):
        ctx = sp.full_context(m, r)
        ok_tr = ok_sym = True
        N = m * r
        for a in range(N):
            t = sp.mu({a: 1}, m, r)
            ok_tr &= sp.mu_trace(t, N, 2) == {a: m + r}
            ok_sym &= sp.is_symmetric_12(t, N)
        out.append(_c(f, f"({m},{r}) mu trace = (m+r) id", ok_tr, True))
        out.append(_c(f, f"({m},{r}) mu symmetric in the first two slots", ok_sym, True))
        P, rep = sp.P_operator(ctx)
        out.append(_c(f, f"({m},{r}) P closed form, global scalar", rep.scalar, 1))
        out.append(_c(f, f"({m},{r}) P invertible", rep.invertible, True))
    for label, ctx, dim in (("gl(3,R)@sym2", sp.sym_context(3), 6),
                            ("gl(5,R)@alt2", sp.alt_context(5), 10),
                            ("(R+sl(3,R)+sl(3,R))@R9", sp.full_context(3, 3), 9)):
        g = sp.split_algebra(ctx)
        pm = sp.p_mu_in_g1(ctx, g)
        out.append(_c(f, f"{label} p o mu(V*) = g^(1)", (pm.equal, pm.dim_p_mu), (True, dim)))
        sc = sp.split_classify(ctx, g)
        out.append(_c(f, f"{label} H^(1,2) = 0", sc.h12_zero, True))
        out.append(_c(f, f"{label} verdict", sc.verdict, RICCI_TYPE))
    return out


def suite_segre() -> list:
    from . import segre
    out = []
    for sa in segre.minimal_segre_forms():
        r = segre.segre_kernel_containment(sa)
        out.append(_c("segre", f"{r.name} ker Ric in Lambda^2 (x) (non-sl(2) part)", r.contained, True))
        out.append(_c("segre", f"{r.name} Omega vanishes on ker Ric", r.omega_vanishes, True))
        out.append(_c("segre", f"{r.name} some curvature has Omega != 0", r.witness, True))
    return out


def suite_e6() -> list:
    from . import e6
    f = "e6"
    ctx = e6.cached_context()
    out = [
        _c(f, "dim V* = 27", ctx.V27_star.dim, 27),
        _c(f, "stabilizer of Theta (up to scale) has dim 79", ctx.e6.dim, 79),
        _c(f, "invariant cubic is unique", ctx.invariant_dim, 1),
        _c(f, "Psi . Theta = 27", e6.psi_dot_theta(ctx), 27),
        _c(f, "Psi_jkm Theta^jkl = Id", e6.psi_theta_identity(ctx) == rc.ExactMatrix.identity(27), True),
        _c(f, "Pi^2 = Pi", ctx.Pi @ ctx.Pi == ctx.Pi, True),
    ]
    w = e6.worked_example(ctx)
    out += [
        _c(f, "Theta(a, d, .) = X^1 ^ X^3", w["theta_ad_is_X1X3"], True),
        _c(f, "Psi(d, b, c)", w["psi_dbc"], -1),
        _c(f, "mu1(d) | a | W (multiple of d)", w["mu1_d_a_W"], 1),
        _c(f, "mu2(d) | a | W (multiple of d)", w["mu2_d_a_W"], 1),
    ]
    fit = e6.fit_lambda(ctx)
    out.append(_c(f, "dim g^(1) = 27", fit.dim_g1, 27))
    out.append(_c(f, "lambda2 / lambda1", fit.lambda2 / fit.lambda1, -1))
    rep = e6.e6_ricci_eigenvalues(ctx)
    out.append(_c(f, "R matches lambda1 Pi + 2 lambda2 Sym - (lambda1 + 28 lambda2) Id", rep.scalar, 1))
    out.append(_c(f, "symmetric-part eigenvalue ratio", rep.ratio, mpq(26, 25)))
    out.append(_c(f, "R invertible, verdict", rep.verdict, RICCI_TYPE))
    return out


COMPLEX_LINEAR_SPECS = ("sl(2,C)", "so(3,C)", "sl(3,C)", "so(4,C)", "sp(4,C)", "gl(2,C)",
                        "sl(2,C)@sym3", "sl(2,C)*so(3,C)")


def suite_complex_split() -> list:
    f = "complex-split"
    out = []
    cs = complex_split(algspec.build("so(4,C)"))
    out.append(_c(f, "so(4,C): K2 = 0", cs.dims[1], 0))
    cs = complex_split(algspec.build("u(2)"))
    out.append(_c(f, "u(2): K1 = 0", cs.dims[0], 0))
    for s in COMPLEX_LINEAR_SPECS:
        g = algspec.build(s)
        cs = complex_split(g)
        out.append(_c(f, f"{s}: K3 = 0, split is direct", (cs.dims[2], cs.is_direct_sum,
                                                          cs.projections_in_K), (0, True, True)))
    return out


VOLUME_SPECS = ("gl(2,R)", "gl(3,R)", "co(3)", "so(3)", "sl(3,R)", "u(2)", "gl(2,C)",
                "sl(2,R)*so(3)+center")


def random_K_elements(g, count: int, rng: random.Random) -> list:
    K = kernel(boundary_K(g))
    out = []
    for _ in range(count):
        v = {}
        for b in K.basis:
            c = rng.randint(-3, 3)
            for k, x in b.items():
                v[k] = v.get(k, 0) + c * x
        out.append({k: x for k, x in v.items() if x})
    return out


def suite_volume(per_algebra: int = 30, seed: int = 0) -> list:
    f = "volume"
    rng = random.Random(seed)
    sig1, sig2 = set(), set()
    total = bad1 = bad2 = 0
    for s in VOLUME_SPECS:
        g = algspec.build(s)
        for k in random_K_elements(g, per_algebra, rng):
            total += 1
            c = volume_sigma(g, k)
            if c is False:
                bad1 += 1
            elif c is not None:
                sig1.add(c)
            if g.J is not None and g.is_complex_linear:
                c2 = complex_sigma(g, k)
                if c2 is False:
                    bad2 += 1
                elif c2 is not None:
                    sig2.add(c2)
    return [
        _c(f, f"volume trace = sigma1 (Ric - Ric^T) on {total} elements, sigma1 values",
           (sorted(sig1), bad1), ([-1], 0)),
        _c(f, "complex trace identity, sigma2 values", (sorted(sig2), bad2), ([-1], 0)),
    ]


SUITES = {
    "symplectic": suite_symplectic,
    "split": suite_split,
    "segre": suite_segre,
    "e6": suite_e6,
    "complex-split": suite_complex_split,
    "volume": suite_volume,
}


def table_checks(max_dim: int, expectations: dict | None = None) -> list:
    """(row, record, expected) for every catalog row with dim V <= max_dim."""
    out = []
    for row in algspec.catalog_rows(max_dim):
        exp = (expectations or {}).get(row.spec, row.expected)
        out.append((row, classify(algspec.build(row.spec)), exp))
    return out


