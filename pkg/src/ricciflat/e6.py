"""The 27-dimensional representation of C* . e6 built from sp(8), its two
invariant cubics and the Ricci trace on d(V* (x) g^(1)).

Everything here is defined over Q (the construction only uses the rational
form omega), so ranks and kernels agree with the complex ones.

Conventions: C^8 has dual basis eta_1..eta_8 (indices 0..7 in code),
omega = eta_1^eta_2 + eta_3^eta_4 + eta_5^eta_6 + eta_7^eta_8.  V* is the
kernel of wedging with omega^3 on Lambda^2 C^8*, with the basis

    eta_1^eta_2 - eta_3^eta_4, eta_1^eta_2 - eta_5^eta_6, eta_1^eta_2 - eta_7^eta_8,
    eta_a^eta_b  (a < b from different blocks {1,2},{3,4},{5,6},{7,8}).

Theta(a, b, c) is the coefficient of eta_1^...^eta_8 in a^b^c^omega, V is
the dual space with the dual basis, and Psi is the invariant cubic on V
normalized by Psi_{jkl} Theta^{jkl} = 27.
"""

from __future__ import annotations

import time
from functools import lru_cache
from dataclasses import dataclass, field as dc_field
from itertools import combinations, combinations_with_replacement, permutations
from types import SimpleNamespace

from gmpy2 import mpq

from .linalg import ExactMatrix, Subspace, kernel, probabilistic_rank, rank, solve, vec_add
from .repcatalog import (PreservedTensor, RepAlgebra, SpaceSpec, dump_generator_file,
                         invariant_forms, stabilizer_of_tensor)
from .riccicheck import RICCI_TYPE, ricci_ambient
from .spencer import BudgetExceeded, boundary_1, boundary_1_columns, boundary_K, prolong
from .tensoralg import perm_sign

N8 = 8
BLOCKS = ((0, 1), (2, 3), (4, 5), (6, 7))


class E6Error(RuntimeError):
    """An identity of the E6 construction failed."""


# ---------------------------------------------------------------------------
# forms on C^8

def _block(i: int) -> int:
    return i // 2


def wedge(*forms: dict) -> dict:
    """Wedge product of forms given as {sorted index tuple: coefficient}."""
    out = {(): mpq(1)}
    for f in forms:
        new = {}
        for a, x in out.items():
            for b, y in f.items():
                if set(a) & set(b):
                    continue
                idx = a + b
                s = perm_sign(idx)
                key = tuple(sorted(idx))
                new[key] = new.get(key, 0) + s * x * y
        out = {k: v for k, v in new.items() if v}
    return out


OMEGA = {(0, 1): mpq(1), (2, 3): mpq(1), (4, 5): mpq(1), (6, 7): mpq(1)}
VOL = tuple(range(N8))


def two_forms() -> list:
    return list(combinations(range(N8), 2))


def v27_basis() -> list:
    """The 27 basis two-forms of V*, as dicts."""
    out = [{(0, 1): mpq(1), (2, 3): mpq(-1)},
           {(0, 1): mpq(1), (4, 5): mpq(-1)},
           {(0, 1): mpq(1), (6, 7): mpq(-1)}]
    for a, b in combinations(range(N8), 2):
        if _block(a) != _block(b):
            out.append({(a, b): mpq(1)})
    return out


def eta(a: int, b: int) -> dict:
    """eta_{a+1} ^ eta_{b+1} (0-based arguments)."""
    if a == b:
        return {}
    return {(a, b): mpq(1)} if a < b else {(b, a): mpq(-1)}


def basis_index(form: dict, basis: list | None = None) -> int:
    basis = basis or v27_basis()
    for i, b in enumerate(basis):
        if b == form:
            return i
    raise KeyError(form)


def wedge_omega3_matrix() -> ExactMatrix:
    """Lambda^2 C^8* -> Lambda^8 C^8* (a 1 x 28 matrix), a -> a ^ omega^3."""
    w3 = wedge(OMEGA, OMEGA, OMEGA)
    row = {}
    for c, p in enumerate(two_forms()):
        v = wedge({p: mpq(1)}, w3).get(VOL, 0)
        if v:
            row[c] = v
    return ExactMatrix(1, 28, [row])


def form_to_vector(form: dict) -> dict:
    idx = {p: c for c, p in enumerate(two_forms())}
    return {idx[p]: v for p, v in form.items() if v}


def theta_value(a: dict, b: dict, c: dict) -> mpq:
    return wedge(a, b, c, OMEGA).get(VOL, mpq(0))


def theta_tensor(basis: list | None = None) -> dict:
    """Theta^{jkl} on sorted index triples."""
    basis = basis or v27_basis()
    out = {}
    for j, k, l in combinations_with_replacement(range(len(basis)), 3):
        v = theta_value(basis[j], basis[k], basis[l])
        if v:
            out[(j, k, l)] = v
    return out


def full_symmetric(entries: dict) -> dict:
    out = {}
    for idx, v in entries.items():
        for p in set(permutations(idx)):
            out[p] = v
    return out


def sorted_key(idx) -> tuple:
    return tuple(sorted(idx))


# ---------------------------------------------------------------------------
# context

@dataclass
class E6Context:
    omega: ExactMatrix
    V27_star: Subspace
    Theta_cubic: dict            # sorted (j,k,l) -> Theta^{jkl}
    Psi_cubic: dict              # sorted (j,k,l) -> Psi_{jkl}
    e6: RepAlgebra               # acting on V (79 generators; last one the scaling)
    e6_exact: RepAlgebra         # the 78-dimensional part preserving both cubics
    Pi: ExactMatrix              # on V* (x) V*, index x*27 + y
    basis_forms: list
    lambda1: object = None
    lambda2: object = None
    timings: dict = dc_field(default_factory=dict)
    invariant_dim: int = 1

    @property
    def n(self) -> int:
        return 27

    def theta(self, j, k, l):
        return self.Theta_cubic.get(sorted_key((j, k, l)), 0)

    def psi(self, j, k, l):
        return self.Psi_cubic.get(sorted_key((j, k, l)), 0)


def omega_matrix() -> ExactMatrix:
    rows = [{} for _ in range(N8)]
    for (a, b), v in OMEGA.items():
        rows[a][b] = v
        rows[b][a] = -v
    return ExactMatrix(N8, N8, rows)


def v27_star_subspace() -> Subspace:
    """V* inside Lambda^2 C^8* (28 coordinates), as the kernel of ^omega^3."""
    return kernel(wedge_omega3_matrix())


def _theta_preserved(theta: dict, mode: str) -> PreservedTensor:
    return PreservedTensor.build(27, 3, theta, "sym", mode)


def _contract_psi_theta(psi_full: dict, theta_full: dict) -> mpq:
    return sum((v * theta_full.get(k, 0) for k, v in psi_full.items()), mpq(0))


def build_context(verbose: bool = False) -> E6Context:
    t0 = time.time()
    timings = {}
    basis = v27_basis()
    Vs = v27_star_subspace()
    if Vs.dim != 27:
        raise E6Error(f"kernel of wedge with omega^3 has dimension {Vs.dim}")
    if Subspace.span([form_to_vector(b) for b in basis], 28) != Vs:
        raise E6Error("explicit basis does not span the kernel")
    theta = theta_tensor(basis)
    timings["theta"] = time.time() - t0

    # stabilizer of Theta up to scale, on V*
    t1 = time.time()
    stab = stabilizer_of_tensor(27, "Q", _theta_preserved(theta, "up-to-scale"),
                                name="stab(Theta)", check=False)
    timings["stabilizer"] = time.time() - t1
    if stab.dim != 79:
        raise E6Error(f"stabilizer of Theta has dimension {stab.dim}, expected 79")
    exact_vs = stabilizer_of_tensor(27, "Q", _theta_preserved(theta, "exact"),
                                    name="e6 on V*", check=False)
    if exact_vs.dim != 78:
        raise E6Error(f"exact stabilizer has dimension {exact_vs.dim}, expected 78")

    # dual action on V
    gens_exact = [-(A.T) for A in exact_vs.generators]
    scaling = ExactMatrix.identity(27)
    e6_exact = RepAlgebra("e6", SpaceSpec(27), gens_exact, check=False)
    e6 = RepAlgebra("C*.e6", SpaceSpec(27), gens_exact + [scaling], has_center_scaling=True,
                    factors=(("e6", tuple(range(78))), ("center", (78,))), check=False)

    # Psi: the invariant cubic on V
    t2 = time.time()
    inv = invariant_forms(e6_exact, "sym", 3)
    timings["psi"] = time.time() - t2
    if len(inv) != 1:
        raise E6Error(f"invariant cubic space has dimension {len(inv)}")
    psi_full = inv[0]
    theta_full = full_symmetric(theta)
    c = _contract_psi_theta(psi_full, theta_full)
    if not c:
        raise E6Error("Psi . Theta = 0")
    scale = mpq(27) / c
    psi = {k: v * scale for k, v in psi_full.items() if list(k) == sorted(k)}

    ctx = E6Context(omega_matrix(), Vs, theta, psi, e6, e6_exact, None, basis,
                    timings=timings, invariant_dim=len(inv))
    ctx.Pi = pi_matrix(ctx)
    timings["total"] = time.time() - t0
    if verbose:
        print(timings)
    return ctx


@lru_cache(maxsize=1)
def cached_context() -> E6Context:
    """One shared context per process (the build takes several seconds)."""
    return build_context()


# ---------------------------------------------------------------------------
# contractions

def theta_slices(ctx: E6Context) -> list:
    """T[j] = {(k, l): Theta^{jkl}} over all ordered (k, l)."""
    out = [dict() for _ in range(27)]
    for idx, v in full_symmetric(ctx.Theta_cubic).items():
        j, k, l = idx
        out[j][(k, l)] = v
    return out


def psi_slices(ctx: E6Context) -> list:
    out = [dict() for _ in range(27)]
    for idx, v in full_symmetric(ctx.Psi_cubic).items():
        j, k, l = idx
        out[j][(k, l)] = v
    return out


def psi_theta_identity(ctx: E6Context) -> ExactMatrix:
    """(Psi_{jkm} Theta^{jkl}) as the matrix M[l][m]."""
    T, P = theta_slices(ctx), psi_slices(ctx)
    rows = [{} for _ in range(27)]
    for j in range(27):
        for (k, l), t in T[j].items():
            for (k2, m), p in P[j].items():
                if k2 == k:
                    rows[l][m] = rows[l].get(m, 0) + t * p
    return ExactMatrix(27, 27, [{k: v for k, v in r.items() if v} for r in rows])


def psi_dot_theta(ctx: E6Context):
    full_p = full_symmetric(ctx.Psi_cubic)
    full_t = full_symmetric(ctx.Theta_cubic)
    return _contract_psi_theta(full_p, full_t)


def pi_matrix(ctx: E6Context) -> ExactMatrix:
    """(Pi S)_{pm} = Psi_{jpm} Theta^{jkl} S_{kl} on V* (x) V* (index x*27 + y)."""
    T, P = theta_slices(ctx), psi_slices(ctx)
    cols = []
    for k in range(27):
        for l in range(27):
            col = {}
            for j in range(27):
                t = T[j].get((k, l))
                if not t:
                    continue
                for (p, m), ps in P[j].items():
                    key = p * 27 + m
                    col[key] = col.get(key, 0) + t * ps
            cols.append({a: b for a, b in col.items() if b})
    return ExactMatrix.from_columns(cols, 729)


def theta_pair(ctx: E6Context, a: int, b: int) -> dict:
    """Theta(e_a, e_b, .) as an element of V (coordinates in the dual basis)."""
    return {l: ctx.theta(a, b, l) for l in range(27) if ctx.theta(a, b, l)}


# ---------------------------------------------------------------------------
# mu_1, mu_2 as elements of Sym^2 V* (x) V, stored {(l, m, r): value}

def mu1(ctx: E6Context, v: dict) -> dict:
    """mu1(v)^l_{mr} = sym_{(m,r)} sum_{j,k} v_j Theta^{jkl} Psi_{kmr}."""
    T, P = theta_slices(ctx), psi_slices(ctx)
    out = {}
    for j, vj in v.items():
        for (k, l), t in T[j].items():
            for (m, r), ps in P[k].items():
                key = (l, m, r)
                out[key] = out.get(key, 0) + vj * t * ps
    sym = {}
    half = mpq(1, 2)
    for (l, m, r), x in out.items():
        for key in ((l, m, r), (l, r, m)):
            sym[key] = sym.get(key, 0) + half * x
    return {k: x for k, x in sym.items() if x}


def mu2(ctx: E6Context, v: dict) -> dict:
    """mu2(v)^l_{jk} = v_j delta^l_k + v_k delta^l_j."""
    out = {}
    for j, vj in v.items():
        for k in range(27):
            for key in ((k, j, k), (k, k, j)):
                out[key] = out.get(key, 0) + vj
    return {k: x for k, x in out.items() if x}


def mu_trace(T: dict) -> dict:
    """Contract the upper index with the second lower one: sum_l T^l_{ml}."""
    out = {}
    for (l, m, r), x in T.items():
        if l == r:
            out[m] = out.get(m, 0) + x
    return {k: x for k, x in out.items() if x}


def contract_upper(T: dict, w: dict) -> dict:
    """T^l_{mr} w_l as {(m, r): value} (w in V*)."""
    out = {}
    for (l, m, r), x in T.items():
        if l in w:
            out[(m, r)] = out.get((m, r), 0) + x * w[l]
    return {k: x for k, x in out.items() if x}


def contract_lower(S: dict, W: dict) -> dict:
    """S_{mr} W^m as {r: value} (W in V)."""
    out = {}
    for (m, r), x in S.items():
        if m in W:
            out[r] = out.get(r, 0) + x * W[m]
    return {k: x for k, x in out.items() if x}


def pair_to_vec(S: dict) -> dict:
    return {m * 27 + r: x for (m, r), x in S.items() if x}


def vec_to_pair(v: dict) -> dict:
    return {divmod(k, 27): x for k, x in v.items() if x}


def outer(v: dict, w: dict) -> dict:
    """v (x) w in V* (x) V* (index x*27 + y)."""
    return {a * 27 + b: x * y for a, x in v.items() for b, y in w.items() if x * y}


def sym_half(v: dict, w: dict) -> dict:
    """v . w = (v (x) w + w (x) v) / 2."""
    return vec_add({k: x / 2 for k, x in outer(v, w).items()},
                   {k: x / 2 for k, x in outer(w, v).items()})


# ---------------------------------------------------------------------------
# g^(1) and the (mu_1, mu_2) pencil

def tensor_to_g1_coords(ctx: E6Context, T: dict) -> dict | None:
    """Sym^2 V* (x) V element T^l_{mr} as t in V* (x) g (t(e_m) = (T^l_{mr})_{l,r})."""
    g = ctx.e6
    d = g.dim
    by_m = {}
    for (l, m, r), x in T.items():
        by_m.setdefault(m, {})[l * 27 + r] = x
    out = {}
    for m, vec in by_m.items():
        c = g.coords(vec)
        if c is None:
            return None
        for i, x in c.items():
            out[m * d + i] = x
    return out


def g1_to_tensor(ctx: E6Context, t: dict) -> dict:
    g = ctx.e6
    d = g.dim
    out = {}
    for col, c in t.items():
        m, i = divmod(col, d)
        for l, row in enumerate(g.generators[i].rows):
            for r, x in row.items():
                key = (l, m, r)
                out[key] = out.get(key, 0) + c * x
    return {k: x for k, x in out.items() if x}


def _flat(T: dict) -> dict:
    return {(l * 27 + m) * 27 + r: x for (l, m, r), x in T.items()}


@dataclass
class LambdaFit:
    lambda1: object
    lambda2: object
    dim_g1: int
    in_pencil: bool


def fit_lambda(ctx: E6Context, g1: Subspace | None = None) -> LambdaFit:
    """Write each basis element of g^(1) as mu1(v1) + mu2(v2) and read off the
    common ratio v2 = (lambda2/lambda1) v1."""
    g1 = g1 if g1 is not None else prolong(ctx.e6)
    units = [{j: mpq(1)} for j in range(27)]
    cols = [_flat(mu1(ctx, u)) for u in units] + [_flat(mu2(ctx, u)) for u in units]
    M = ExactMatrix.from_columns(cols, 27 ** 3)
    ratio = None
    for t in g1.basis:
        sol = solve(M, _flat(g1_to_tensor(ctx, t)))
        if sol is None:
            raise E6Error("g^(1) element outside the mu1/mu2 pencil")
        v1 = {j: sol.get(j, 0) for j in range(27)}
        v2 = {j: sol.get(27 + j, 0) for j in range(27)}
        j0 = next((j for j in range(27) if v1[j]), None)
        if j0 is None:
            raise E6Error("g^(1) element with no mu1 component")
        q = v2[j0] / v1[j0]
        if any(v2[j] != q * v1[j] for j in range(27)):
            raise E6Error("g^(1) element not of the form nu(v)")
        if ratio is None:
            ratio = q
        elif q != ratio:
            raise E6Error("inconsistent lambda ratio across g^(1)")
    ctx.lambda1, ctx.lambda2 = mpq(1), ratio
    return LambdaFit(mpq(1), ratio, g1.dim, True)


def nu(ctx: E6Context, v: dict) -> dict:
    """lambda1 mu1(v) + lambda2 mu2(v) in V* (x) g coordinates."""
    T = {}
    for k, x in mu1(ctx, v).items():
        T[k] = T.get(k, 0) + ctx.lambda1 * x
    for k, x in mu2(ctx, v).items():
        T[k] = T.get(k, 0) + ctx.lambda2 * x
    T = {k: x for k, x in T.items() if x}
    c = tensor_to_g1_coords(ctx, T)
    if c is None:
        raise E6Error("nu(v) does not take values in g")
    return c


# ---------------------------------------------------------------------------
# the Ricci operator on V* (x) V*

def R_operator(ctx: E6Context) -> ExactMatrix:
    """R(w (x) v) = Ric(d(w (x) nu(v))), column w*27 + v, row x*27 + y."""
    g = ctx.e6
    Ric = ricci_ambient(g)
    cols = []
    nus = [nu(ctx, {v: mpq(1)}) for v in range(27)]
    per_v = [boundary_1_columns(g, SimpleNamespace(basis=[t])) for t in nus]
    for w in range(27):
        for v in range(27):
            cols.append(Ric.apply(per_v[v][w]))
    return ExactMatrix.from_columns(cols, 729)


def R_closed_form(ctx: E6Context, lambda1=None, lambda2=None) -> ExactMatrix:
    """lambda1 Pi(w . v) + 2 lambda2 w . v - (lambda1 + 28 lambda2) w (x) v, with
    w . v the half-sum.  The last coefficient comes from the traces of mu1, mu2."""
    l1 = ctx.lambda1 if lambda1 is None else lambda1
    l2 = ctx.lambda2 if lambda2 is None else lambda2
    Pi = ctx.Pi
    cols = []
    for w in range(27):
        for v in range(27):
            s = sym_half({w: mpq(1)}, {v: mpq(1)})
            col = {k: l1 * x for k, x in Pi.apply(s).items()}
            col = vec_add(col, s, 2 * l2)
            col = vec_add(col, {w * 27 + v: mpq(1)}, -(l1 + 28 * l2))
            cols.append(col)
    return ExactMatrix.from_columns(cols, 729)


def predicted_eigenvalues(lambda1, lambda2) -> tuple:
    """Eigenvalues of the closed form on Pi(Sym), (1 - Pi)(Sym) and Lambda^2."""
    return (-26 * lambda2, -lambda1 - 26 * lambda2, -lambda1 - 28 * lambda2)


@dataclass
class E6RicciReport:
    scalar: object
    pi_eigenvalue: object
    complement_eigenvalue: object
    skew_eigenvalue: object
    invertible: bool
    verdict: str

    @property
    def ratio(self):
        if self.pi_eigenvalue is None or not self.complement_eigenvalue:
            return None
        return self.pi_eigenvalue / self.complement_eigenvalue


def _common_eigenvalue(R: ExactMatrix, vectors) -> object:
    lam = None
    for v in vectors:
        if not v:
            continue
        Rv = R.apply(v)
        k0 = next(iter(v))
        q = Rv.get(k0, 0) / v[k0]
        if Rv != {k: q * x for k, x in v.items() if q * x}:
            return None
        if lam is None:
            lam = q
        elif lam != q:
            return None
    return lam


def e6_ricci_eigenvalues(ctx: E6Context, R: ExactMatrix | None = None) -> E6RicciReport:
    from .split import global_scalar
    if ctx.lambda1 is None:
        fit_lambda(ctx)
    R = R if R is not None else R_operator(ctx)
    scalar = global_scalar(R, R_closed_form(ctx))
    Pi = ctx.Pi
    sym_vecs, skew_vecs = [], []
    for a in range(27):
        for b in range(a, 27):
            sym_vecs.append(sym_half({a: mpq(1)}, {b: mpq(1)}))
            if a != b:
                skew_vecs.append({a * 27 + b: mpq(1), b * 27 + a: mpq(-1)})
    pi_part = [Pi.apply(s) for s in sym_vecs]
    rest = [vec_add(s, p, -1) for s, p in zip(sym_vecs, pi_part)]
    lam_pi = _common_eigenvalue(R, pi_part)
    lam_rest = _common_eigenvalue(R, rest)
    lam_skew = _common_eigenvalue(R, skew_vecs)
    if scalar != 1 or (lam_pi, lam_rest, lam_skew) != predicted_eigenvalues(ctx.lambda1, ctx.lambda2):
        raise E6Error("Ricci operator disagrees with its closed form")
    inv = rank(R) == 729
    verdict = RICCI_TYPE if inv else "not RicciType"
    return E6RicciReport(scalar, lam_pi, lam_rest, lam_skew, inv, verdict)


def nu_in_g(ctx: E6Context, lambda1, lambda2, v: int = 0) -> bool:
    """Whether lambda1 mu1(e_v) + lambda2 mu2(e_v) takes values in g."""
    T = {}
    for k, x in mu1(ctx, {v: mpq(1)}).items():
        T[k] = T.get(k, 0) + lambda1 * x
    for k, x in mu2(ctx, {v: mpq(1)}).items():
        T[k] = T.get(k, 0) + lambda2 * x
    return tensor_to_g1_coords(ctx, {k: x for k, x in T.items() if x}) is not None


# ---------------------------------------------------------------------------
# the worked example

def worked_example(ctx: E6Context) -> dict:
    """a = eta4^eta6, b = eta1^eta4, c = eta3^eta6, d = eta2^eta5, W = X^4^X^6.

    Vector-valued results are returned as multiples of d (None if not parallel).
    """
    B = ctx.basis_forms
    ia, ib, ic, id_ = (basis_index(eta(3, 5), B), basis_index(eta(0, 3), B),
                       basis_index(eta(2, 5), B), basis_index(eta(1, 4), B))
    z13 = basis_index(eta(0, 2), B)
    W = {ia: mpq(1)}                     # X^4 ^ X^6 pairs to 1 with a, 0 with the rest
    a, d = {ia: mpq(1)}, {id_: mpq(1)}

    def along_d(vec):
        if set(vec) - {id_}:
            return None
        return vec.get(id_, mpq(0))

    mu1_d = contract_lower(contract_upper(mu1(ctx, d), a), W)
    mu2_d = contract_lower(contract_upper(mu2(ctx, d), a), W)
    pi_ad = contract_lower(vec_to_pair(ctx.Pi.apply(outer(a, d))), W)
    return {
        "theta_abc": ctx.theta(ia, ib, ic),
        "theta_dbc": ctx.theta(id_, ib, ic),
        "theta_ab_zero": not theta_pair(ctx, ia, ib),
        "theta_bc_nonzero": bool(theta_pair(ctx, ib, ic)),
        "theta_ad_is_X1X3": theta_pair(ctx, ia, id_) == {z13: mpq(1)},
        "psi_dbc": ctx.psi(id_, ib, ic),
        "mu1_d_a_W": along_d(mu1_d),
        "mu2_d_a_W": along_d(mu2_d),
        "pi_ad_W": along_d(pi_ad),
        "indices": (ia, ib, ic, id_),
    }


# ---------------------------------------------------------------------------
# consistency check for H^{1,2}

def h12_consistency(ctx: E6Context, g1: Subspace, primes: int = 2, seed: int = 0,
                    budget: int | None = None) -> dict:
    """dim K(g) versus dim d(V* (x) g^(1)), by modular ranks (probabilistic)."""
    g = ctx.e6
    B = boundary_K(g)
    if budget is not None and B.nnz() > budget:
        raise BudgetExceeded(f"boundary matrix has {B.nnz()} nonzeros")
    rK, used = probabilistic_rank(B, agree=primes, seed=seed)
    dim_K = B.ncols - rK
    D1 = boundary_1(g, g1)
    r1, used1 = probabilistic_rank(D1, agree=primes, seed=seed + 1)
    return {"dim_K": dim_K, "dim_dK": r1, "h12": dim_K - r1, "primes": tuple(used) + tuple(used1),
            "provenance": "probabilistic"}


def export_generators(ctx: E6Context, path) -> None:
    dump_generator_file(ctx.e6, path)
