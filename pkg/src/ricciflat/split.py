"""Split representations on E = R^m (x) R^r: the map mu, the projection p and
the operator P = Ric o d o (Id (x) mu).

E has basis X_k (x) Y_j at index ``k*r + j``; E* is identified with E through
the standard inner product, so an element of E* is an m x r matrix W with
W(C (x) D) = C^T W D.  In matrix form

    mu(W)(X, Y) = Y W^T X + X W^T Y,

which is the symmetric E-valued bilinear form obtained from
mu(ab) = a y^j (x) x^k b (x) X_k Y_j + x^k b (x) a y^j (x) X_k Y_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from types import SimpleNamespace
from typing import Sequence

from gmpy2 import mpq

from .linalg import (ExactMatrix, Subspace, inverse, kernel, rank, vec_add, vec_scale)
from .repcatalog import RepAlgebra, SpaceSpec, E as unit_matrix
from .riccicheck import RICCI_TYPE, ClassificationRecord, classify, ricci_ambient
from .spencer import boundary_1_columns, prolong, spencer_modules
from .tensoralg import TensorSpaceIndex


class SplitError(RuntimeError):
    """A structural identity of the split construction failed."""


# ---------------------------------------------------------------------------
# dense helpers (E is small)

def _zeros(a: int, b: int) -> list:
    return [[mpq(0)] * b for _ in range(a)]


def _mat(W) -> list:
    return [[mpq(x) for x in row] for row in W]


def _mul(A: list, B: list) -> list:
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), mpq(0)) for j in range(len(B[0]))]
            for i in range(len(A))]


def _T(A: list) -> list:
    return [list(col) for col in zip(*A)]


def to_matrix(v: dict, m: int, r: int) -> list:
    """E-vector (sparse, index k*r + j) -> m x r matrix."""
    M = _zeros(m, r)
    for idx, x in v.items():
        k, j = divmod(idx, r)
        M[k][j] = mpq(x)
    return M


def to_vector(M: list) -> dict:
    r = len(M[0])
    return {k * r + j: x for k, row in enumerate(M) for j, x in enumerate(row) if x}


# ---------------------------------------------------------------------------
# context

@dataclass
class SplitContext:
    m: int
    r: int
    E_space: TensorSpaceIndex
    V_subspace: Subspace
    p_matrix: ExactMatrix
    kind: str = "full"
    conditions: tuple = dc_field(default=(), repr=False)

    @property
    def N(self) -> int:
        return self.m * self.r

    @property
    def dim_V(self) -> int:
        return self.V_subspace.dim

    def V_basis_matrices(self) -> list:
        return [to_matrix(b, self.m, self.r) for b in self.V_subspace.basis]

    def project(self, w: dict) -> dict:
        return self.p_matrix.apply(w)

    def V_coords(self, v: dict) -> list | None:
        return self.V_subspace.coordinates(v)

    def covector_coords(self, w: dict) -> list:
        """Coordinates of w in V* relative to the dual of V's stored basis: w(b_a)."""
        return [sum((x * w.get(i, 0) for i, x in b.items()), mpq(0)) for b in self.V_subspace.basis]


def _swap_matrix(n: int) -> ExactMatrix:
    return ExactMatrix.from_columns([{(i % n) * n + i // n: 1} for i in range(n * n)], n * n)


def _complex_pair_matrix(J1: ExactMatrix, J2: ExactMatrix) -> ExactMatrix:
    """J1 (x) J2 acting on E (first factor W = R^m, second U = R^r)."""
    from .linalg import kron
    return kron(J1, J2)


def _orthogonal_projection(S: Subspace, n: int) -> ExactMatrix:
    if S.dim == 0:
        return ExactMatrix.zeros(n, n)
    B = S.basis_matrix()
    G = inverse(B.T @ B)
    return B @ G @ B.T


def split_context(m: int, r: int, conditions: Sequence = (), kind: str | None = None) -> SplitContext:
    """V is the intersection of the given conditions, each one of

    * ``"sym"`` / ``"alt"`` (requires m = r): symmetric / skew tensors,
    * ``("J", JW, JU)``: span of a (x) b - JW a (x) JU b, i.e. the -1 eigenspace of JW (x) JU.
    """
    n = m * r
    ident = ExactMatrix.identity(n)
    V = Subspace.full(n)
    for c in conditions:
        if c in ("sym", "alt"):
            if m != r:
                raise ValueError("symmetric/skew parts need m = r")
            sw = _swap_matrix(m)
            M = (sw - ident) if c == "sym" else (sw + ident)
        elif isinstance(c, tuple) and c[0] == "J":
            _, JW, JU = c
            if JW.nrows != m or JU.nrows != r:
                raise ValueError("complex structures have the wrong sizes")
            M = _complex_pair_matrix(JW, JU) + ident
        else:
            raise ValueError(f"unknown condition {c!r}")
        V = V.intersect(kernel(M))
    if kind is None:
        kind = "full" if not conditions else "+".join(c if isinstance(c, str) else "J" for c in conditions)
    space = TensorSpaceIndex(max(m, r), ("V", "V"))
    return SplitContext(m, r, space, V, _orthogonal_projection(V, n), kind, tuple(conditions))


def full_context(m: int, r: int) -> SplitContext:
    return split_context(m, r, (), "full")


def sym_context(n: int) -> SplitContext:
    return split_context(n, n, ("sym",), "sym")


def alt_context(n: int) -> SplitContext:
    return split_context(n, n, ("alt",), "alt")


# ---------------------------------------------------------------------------
# the maximal split algebra of a context

def split_algebra(ctx: SplitContext, name: str | None = None) -> RepAlgebra:
    """Stabilizer of V inside gl(m) (x) 1 + 1 (x) gl(r), restricted to V
    (coordinates of V's stored basis)."""
    from .linalg import kron
    m, r, n = ctx.m, ctx.r, ctx.N
    Im, Ir = ExactMatrix.identity(m), ExactMatrix.identity(r)
    big = [kron(unit_matrix(i, j, m), Ir) for i in range(m) for j in range(m)]
    big += [kron(Im, unit_matrix(i, j, r)) for i in range(r) for j in range(r)
            if (i, j) != (r - 1, r - 1)]
    Q = ExactMatrix.identity(n) - ctx.p_matrix
    # condition: Q (sum c_i A_i) b = 0 for every basis vector b of V
    V = ctx.V_subspace
    cols = []
    for A in big:
        col = {}
        for bi, b in enumerate(V.basis):
            for row, x in Q.apply(A.apply(b)).items():
                col[bi * n + row] = x
        cols.append(col)
    C = ExactMatrix.from_columns(cols, max(1, V.dim) * n)
    stab = kernel(C)
    restricted = []
    for coeffs in stab.basis:
        A = ExactMatrix.zeros(n, n)
        for i, c in coeffs.items():
            A = A + big[i].scale(c)
        mcols = []
        for b in V.basis:
            c = V.coordinates(A.apply(b))
            if c is None:
                raise SplitError("stabilizer element leaves V")
            mcols.append({i: x for i, x in enumerate(c) if x})
        restricted.append(ExactMatrix.from_columns(mcols, V.dim))
    # the restriction need not be faithful; keep an independent set
    span = Subspace.span([M.flatten() for M in restricted], V.dim * V.dim)
    gens = [ExactMatrix.unflatten(v, V.dim, V.dim) for v in span.basis]
    center = span.contains(ExactMatrix.identity(V.dim).flatten())
    return RepAlgebra(name or f"split({ctx.m},{ctx.r};{ctx.kind})", SpaceSpec(V.dim), gens,
                      has_center_scaling=center)


# ---------------------------------------------------------------------------
# mu

def mu_bilinear(W: list, X: list, Y: list) -> list:
    """mu(W)(X, Y) = Y W^T X + X W^T Y as an m x r matrix."""
    Wt = _T(W)
    a = _mul(_mul(Y, Wt), X)
    b = _mul(_mul(X, Wt), Y)
    return [[a[i][j] + b[i][j] for j in range(len(a[0]))] for i in range(len(a))]


def mu(w: dict, m: int, r: int) -> dict:
    """mu(w) in E* (x) E* (x) E, index (alpha*N + beta)*N + gamma."""
    N = m * r
    W = to_matrix(w, m, r)
    out = {}
    # mu(w)_{(c,d),(c',d')} = W[c][d'] e(c',d) + W[c'][d] e(c,d')
    for c in range(m):
        for d in range(r):
            al = c * r + d
            for c2 in range(m):
                for d2 in range(r):
                    be = c2 * r + d2
                    x = W[c][d2]
                    if x:
                        k = (al * N + be) * N + c2 * r + d
                        out[k] = out.get(k, 0) + x
                    y = W[c2][d]
                    if y:
                        k = (al * N + be) * N + c * r + d2
                        out[k] = out.get(k, 0) + y
    return {k: v for k, v in out.items() if v}


def mu_in_bases(w: dict, m: int, r: int, GW: list, GU: list) -> dict:
    """mu(w) from the defining sum over a*y^j (x) x^k*b (x) X_k Y_j using the
    bases X_k = columns of GW, Y_j = columns of GU and their dual bases.

    w is decomposed into elementary tensors of the standard dual bases; the
    result is in standard coordinates."""
    N = m * r
    GWi, GUi = _inv(GW), _inv(GU)
    X = [[GW[i][k] for i in range(m)] for k in range(m)]     # X_k
    Y = [[GU[i][j] for i in range(r)] for j in range(r)]     # Y_j
    x = [GWi[k] for k in range(m)]                           # x^k
    y = [GUi[j] for j in range(r)]                           # y^j

    def outer(u, v):
        return [u[i] * v[j] for i in range(len(u)) for j in range(len(v))]

    out = {}
    for idx, coef in w.items():
        a0, b0 = divmod(idx, r)
        a = [mpq(int(i == a0)) for i in range(m)]
        b = [mpq(int(j == b0)) for j in range(r)]
        for k in range(m):
            xb = outer(x[k], b)
            for j in range(r):
                ay = outer(a, y[j])
                XY = outer(X[k], Y[j])
                for first, second in ((ay, xb), (xb, ay)):
                    for al, s1 in enumerate(first):
                        if not s1:
                            continue
                        for be, s2 in enumerate(second):
                            if not s2:
                                continue
                            s = coef * s1 * s2
                            for ga, s3 in enumerate(XY):
                                if s3:
                                    key = (al * N + be) * N + ga
                                    out[key] = out.get(key, 0) + s * s3
    return {k: v for k, v in out.items() if v}


def _inv(G: list) -> list:
    return inverse(ExactMatrix.from_dense(G)).dense()


def mu_trace(tensor: dict, N: int, slot: int = 1) -> dict:
    """Contract E* slot ``slot`` (1 or 2) with the E slot; the other E* slot remains."""
    out = {}
    for k, v in tensor.items():
        ab, g = divmod(k, N)
        a, b = divmod(ab, N)
        if slot == 2:
            a, b = b, a
        if a == g:
            out[b] = out.get(b, 0) + v
    return {k: v for k, v in out.items() if v}


def is_symmetric_12(tensor: dict, N: int) -> bool:
    for k, v in tensor.items():
        ab, g = divmod(k, N)
        a, b = divmod(ab, N)
        if tensor.get((b * N + a) * N + g, 0) != v:
            return False
    return True


def apply_slot1(tensor: dict, M: ExactMatrix, N: int) -> dict:
    """Apply a map E* -> E* (given on E* coordinates) to the first slot."""
    out = {}
    cols = M.columns()
    for k, v in tensor.items():
        ab, g = divmod(k, N)
        a, b = divmod(ab, N)
        for a2, x in cols[a].items():
            key = (a2 * N + b) * N + g
            out[key] = out.get(key, 0) + x * v
    return {k: v for k, v in out.items() if v}


def evaluate_slot1(tensor: dict, v: dict, N: int) -> dict:
    """Contract the first slot with an E-vector: element of E* (x) E, index b*N + g."""
    out = {}
    for k, x in tensor.items():
        ab, g = divmod(k, N)
        a, b = divmod(ab, N)
        if a in v:
            key = b * N + g
            out[key] = out.get(key, 0) + x * v[a]
    return {k: x for k, x in out.items() if x}


# ---------------------------------------------------------------------------
# p o mu and g^(1)

def p_mu_element(ctx: SplitContext, g: RepAlgebra, w: dict) -> dict:
    """p o mu(w) as an element of V* (x) g (column a*dim g + i)."""
    m, r = ctx.m, ctx.r
    Vb = ctx.V_basis_matrices()
    W = to_matrix(w, m, r)
    d = g.dim
    out = {}
    for a, Xa in enumerate(Vb):
        cols = []
        for Yc in Vb:
            img = to_vector(mu_bilinear(W, Xa, Yc))
            c = ctx.V_coords(img)
            if c is None:
                raise SplitError("mu(w)(v, v') left V")
            cols.append({i: x for i, x in enumerate(c) if x})
        A = ExactMatrix.from_columns(cols, ctx.dim_V)
        co = g.coords(A)
        if co is None:
            raise SplitError("mu(V*) evaluated on V is not in g")
        for i, x in co.items():
            out[a * d + i] = x
    return out


@dataclass
class PMuReport:
    name: str
    dim_V: int
    dim_g1: int
    dim_p_mu: int
    contained: bool
    counterexample: dict | None = None

    @property
    def equal(self) -> bool:
        return self.contained and self.dim_p_mu == self.dim_g1


def p_mu_in_g1(ctx: SplitContext, g: RepAlgebra) -> PMuReport:
    g1 = prolong(g)
    elems = [p_mu_element(ctx, g, w) for w in ctx.V_subspace.basis]
    bad = next((e for e in elems if not g1.contains(e)), None)
    S = Subspace.span(elems, g.dim_V * g.dim)
    return PMuReport(g.name, ctx.dim_V, g1.dim, S.dim, bad is None, bad)


def lemma_checks(ctx: SplitContext, w: dict) -> tuple:
    """(evaluation, trace): p o mu(w) agrees with mu(w) after evaluating the
    first slot on V, and after contracting the last two slots."""
    N = ctx.N
    t = mu(w, ctx.m, ctx.r)
    pt = apply_slot1(t, ctx.p_matrix.T, N)
    ev = all(evaluate_slot1(t, v, N) == evaluate_slot1(pt, v, N) for v in ctx.V_subspace.basis)
    tr = mu_trace(t, N, 2) == mu_trace(pt, N, 2)
    return ev, tr


# ---------------------------------------------------------------------------
# the operator P

def P_closed_form(m: int, r: int) -> ExactMatrix:
    """P(cd (x) ab) = ad (x) cb + cb (x) ad - (m+r) cd (x) ab on E* (x) E*
    (index alpha*N + beta with alpha = c*r + d the first factor)."""
    N = m * r
    cols = []
    for c in range(m):
        for d in range(r):
            for a in range(m):
                for b in range(r):
                    col = {}
                    ad, cb = a * r + d, c * r + b
                    for key in (ad * N + cb, cb * N + ad):
                        col[key] = col.get(key, 0) + 1
                    key = (c * r + d) * N + a * r + b
                    col[key] = col.get(key, 0) - (m + r)
                    cols.append({k: v for k, v in col.items() if v})
    return ExactMatrix.from_columns(cols, N * N)


def _ricci_of_boundary(g: RepAlgebra, alpha: Sequence, t: dict) -> dict:
    """Ric(d(alpha (x) t)) for alpha in V* coordinates and t in V* (x) g."""
    cols = boundary_1_columns(g, SimpleNamespace(basis=[t]))
    k = {}
    for b, x in enumerate(alpha):
        if x:
            k = vec_add(k, cols[b], x)
    return ricci_ambient(g).apply(k)


def P_computed(ctx: SplitContext, g: RepAlgebra) -> ExactMatrix:
    """Ric o d o (Id (x) p o mu) on V* (x) V*, in the basis (b_alpha (x) b_beta)
    of V's stored basis vectors used as covectors; output in V-coordinates x*n + y."""
    D = ctx.dim_V
    cols = []
    ts = [p_mu_element(ctx, g, w) for w in ctx.V_subspace.basis]
    alphas = [ctx.covector_coords(w) for w in ctx.V_subspace.basis]
    for al in range(D):
        for be in range(D):
            cols.append(_ricci_of_boundary(g, alphas[al], ts[be]))
    return ExactMatrix.from_columns(cols, D * D)


def trace_constant(ctx: SplitContext):
    """kappa with trace_V(z -> mu(w)(z, y)) = kappa * w(y) for w in V*, y in V.

    Equals m + r when V = E; None if no single constant works."""
    Vb = ctx.V_basis_matrices()
    kappa = None
    for w in ctx.V_subspace.basis:
        W = to_matrix(w, ctx.m, ctx.r)
        wc = ctx.covector_coords(w)
        for yi, Y in enumerate(Vb):
            tr = mpq(0)
            for a, Z in enumerate(Vb):
                c = ctx.V_coords(to_vector(mu_bilinear(W, Z, Y)))
                if c is None:
                    return None
                tr += c[a]
            if wc[yi] == 0:
                if tr != 0:
                    return None
                continue
            q = tr / wc[yi]
            if kappa is None:
                kappa = q
            elif q != kappa:
                return None
    return kappa


def P_closed_form_on_V(ctx: SplitContext, kappa=None) -> ExactMatrix:
    """The closed form applied to pairs of V-covectors and evaluated on V x V.

    ``kappa`` replaces the coefficient m + r of the last term (the trace of
    mu over V rather than over E); by default m + r is kept."""
    N, D = ctx.N, ctx.dim_V
    s = ctx.m + ctx.r
    kappa = s if kappa is None else kappa
    P = P_closed_form(ctx.m, ctx.r)
    basis = ctx.V_subspace.basis
    coords = [ctx.covector_coords(w) for w in basis]
    cols = []
    for ia, wa in enumerate(basis):
        for ib, wb in enumerate(basis):
            src = {}
            for i, x in wa.items():
                for j, y in wb.items():
                    src[i * N + j] = x * y
            out = P.apply(src)
            col = {}
            for X, vx in enumerate(basis):
                for Y, vy in enumerate(basis):
                    val = sum((vx[i] * vy[j] * z for key, z in out.items()
                               for i, j in [divmod(key, N)] if i in vx and j in vy), mpq(0))
                    val += (s - kappa) * coords[ia][X] * coords[ib][Y]
                    if val:
                        col[X * D + Y] = val
            cols.append(col)
    return ExactMatrix.from_columns(cols, D * D)


def global_scalar(A: ExactMatrix, B: ExactMatrix):
    """The c with A = c B (entrywise on all columns), or None."""
    if A.shape != B.shape:
        return None
    c = None
    for i, (ra, rb) in enumerate(zip(A.rows, B.rows)):
        for j in set(ra) | set(rb):
            x, y = ra.get(j, 0), rb.get(j, 0)
            if y == 0:
                if x != 0:
                    return None
                continue
            q = mpq(x) / mpq(y)
            if c is None:
                c = q
            elif q != c:
                return None
    return c


@dataclass
class POperatorReport:
    m: int
    r: int
    scalar: object
    kappa: object
    scalar_with_E_trace: object
    invertible: bool
    wedge_eigenvalue_ok: bool
    rank: int
    size: int

    @property
    def ok(self) -> bool:
        return self.scalar is not None and self.scalar != 0 and self.invertible and self.wedge_eigenvalue_ok


def wedge_eigen_ok(m: int, r: int, P: ExactMatrix | None = None) -> bool:
    """P(cd ^ ab) = -(m+r) cd ^ ab for all pairs."""
    P = P or P_closed_form(m, r)
    N = m * r
    for al in range(N):
        for be in range(al + 1, N):
            v = {al * N + be: 1, be * N + al: -1}
            if P.apply(v) != vec_scale(v, -(m + r)):
                return False
    return True


def sym_inverse_ok(m: int, r: int, P: ExactMatrix | None = None) -> bool:
    """2/(4-(m+r)^2) (P(ad . cb) + (m+r)/2 P(cd . ab)) = cd . ab."""
    P = P or P_closed_form(m, r)
    N, s = m * r, m + r
    if s == 2:
        return False
    f = mpq(2, 4 - s * s)

    def sym(x, y):
        v = {x * N + y: 1}
        v[y * N + x] = v.get(y * N + x, 0) + 1
        return v

    for c in range(m):
        for d in range(r):
            for a in range(m):
                for b in range(r):
                    lhs = vec_add(P.apply(sym(a * r + d, c * r + b)),
                                  P.apply(sym(c * r + d, a * r + b)), mpq(s, 2))
                    if vec_scale(lhs, f) != sym(c * r + d, a * r + b):
                        return False
    return True


def P_operator(ctx: SplitContext, g: RepAlgebra | None = None) -> tuple:
    """(P, report).  P is the closed form on E* (x) E*; the report carries the
    global scalar relating it to the computed Ric o d o (Id (x) p o mu) on
    V* (x) V*, both with the E-trace coefficient m + r and with the V-trace
    coefficient kappa."""
    m, r = ctx.m, ctx.r
    if m + r <= 2:
        raise ValueError("P is only defined for m + r > 2")
    P = P_closed_form(m, r)
    g = g or split_algebra(ctx)
    comp = P_computed(ctx, g)
    kappa = trace_constant(ctx)
    c_E = global_scalar(comp, P_closed_form_on_V(ctx))
    c = c_E if kappa is None else global_scalar(comp, P_closed_form_on_V(ctx, kappa))
    rk = rank(P)
    rep = POperatorReport(m, r, c, kappa, c_E, rk == P.nrows, wedge_eigen_ok(m, r, P), rk, P.nrows)
    if not rep.invertible:
        raise SplitError(f"P is singular at (m, r) = ({m}, {r})")
    return P, rep


# ---------------------------------------------------------------------------
# classification

@dataclass
class SplitClassification:
    record: ClassificationRecord
    h12_zero: bool
    ricci_injective_on_boundary: bool

    @property
    def verdict(self) -> str:
        return self.record.verdict


def split_classify(ctx: SplitContext, g: RepAlgebra | None = None) -> SplitClassification:
    """Route 1: H^{1,2} = 0 and Ric o d o (Id (x) p o mu) injective on V* (x) V*.
    Route 2: the direct Ricci-kernel computation.  Both must say RicciType."""
    g = g or split_algebra(ctx)
    sm = spencer_modules(g)
    comp = P_computed(ctx, g)
    inj = rank(comp) == ctx.dim_V ** 2
    route1 = sm.h12_dim == 0 and inj
    rec = classify(g)
    route2 = rec.verdict == RICCI_TYPE
    if route1 != route2:
        raise SplitError(f"{g.name}: P-argument says {route1}, direct computation says {rec.verdict}")
    return SplitClassification(rec, sm.h12_dim == 0, inj)
