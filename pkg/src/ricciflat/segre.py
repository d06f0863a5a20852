"""Minimal Segre algebras: the sl(2)-factor components of a curvature tensor.

For g = (center +) sl(m)-factor + sl(2)-factor on W (x) U with dim U = 2 (or
H^1), a g-valued 2-form k splits as k' + sum_a Omega^a J_a where (J_1, J_2,
J_3) is a quaternion triple spanning the sl(2)-factor over C and k' takes
values in the rest.  The module-level statement checked here: every k in
K(g) with Ric(k) = 0 has all Omega^a(k) = 0, i.e. values in the non-sl(2)
factors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .linalg import ExactMatrix, kron
from .repcatalog import (RepAlgebra, SpaceSpec, _realify_matrix, quaternion_triple, realify,
                         sl_n, sl_n_complex, sp_pq, tensor_sum_rep)
from .riccicheck import ricci_kernel
from .scalars import I, QI, QI_TAG, Q, coerce
from .spencer import K_to_ambient, spencer_modules
from .tensoralg import pairs


# the triple on C^2: J1 J2 = J3
J2x2 = (
    ExactMatrix.from_dense([[I, 0], [0, -I]], QI_TAG),
    ExactMatrix.from_dense([[0, 1], [-1, 0]], QI_TAG),
    ExactMatrix.from_dense([[0, I], [I, 0]], QI_TAG),
)


@dataclass
class OmegaTriple:
    """J_1, J_2, J_3 on V (possibly complex matrices acting on V (x) C) and,
    for realified complex algebras, the complex structure i of V."""

    J: tuple
    i_structure: ExactMatrix | None = None
    m: int = 0

    @property
    def n(self) -> int:
        return self.J[0].nrows

    def norm(self, a: int):
        """Tr(J_a J_a); -4m for a realified complex sl(m) + sl(2)."""
        return (self.J[a] @ self.J[a]).trace()

    def iJ(self, a: int) -> ExactMatrix:
        return self.i_structure @ self.J[a]


@dataclass
class SegreAlgebra:
    rep: RepAlgebra
    triple: OmegaTriple
    sl2_label: str
    form: str

    @property
    def sl2_indices(self) -> tuple:
        return self.rep.factor_indices(self.sl2_label)


# ---------------------------------------------------------------------------
# the three minimal forms

def _kron_id(m: int, B: ExactMatrix) -> ExactMatrix:
    return kron(ExactMatrix.identity(m, B.field), B)


def segre_real(m: int = 3) -> SegreAlgebra:
    """R + sl(m,R) + sl(2,R) on R^m (x) R^2; the triple lives on V (x) C."""
    g = tensor_sum_rep(sl_n(m), sl_n(2), f"R+sl({m},R)+sl(2,R)", center=True)
    triple = OmegaTriple(tuple(_kron_id(m, J) for J in J2x2), None, m)
    return SegreAlgebra(g, triple, g.factors[1][0], "real")


def segre_complex(m: int = 3) -> SegreAlgebra:
    """sl(m,C) + sl(2,C) on C^m (x) C^2, realified to R^(4m)."""
    g = realify(tensor_sum_rep(sl_n_complex(m), sl_n_complex(2)), name=f"sl({m},C)+sl(2,C)")
    Js = tuple(_realify_matrix(_kron_id(m, J)) for J in J2x2)
    triple = OmegaTriple(Js, g.J, m)
    return SegreAlgebra(g, triple, g.factors[1][0], "complex")


def segre_quaternionic(n: int = 2) -> SegreAlgebra:
    """sp(1) + sp(n) on H^n: sp(n) by left quaternionic matrices, sp(1) by
    right multiplication by imaginary quaternions."""
    base = sp_pq(n, 0)
    triple = quaternion_triple(n)
    gens = list(base.generators) + list(triple)
    d = base.dim
    factors = ((base.name, tuple(range(d))), ("sp(1)", (d, d + 1, d + 2)))
    g = RepAlgebra(f"sp(1)+sp({n})", SpaceSpec(4 * n, Q, quaternion_triple=triple), gens,
                   factors=factors)
    return SegreAlgebra(g, OmegaTriple(triple, None, n), "sp(1)", "quaternionic")


def minimal_segre_forms() -> list:
    return [segre_real(3), segre_quaternionic(2), segre_complex(3)]


# ---------------------------------------------------------------------------
# Omega extraction

def _trace_product(A: ExactMatrix, B: ExactMatrix):
    """Tr(A B) without forming the product."""
    s = mpq(0)
    for i, row in enumerate(A.rows):
        for k, a in row.items():
            b = B.rows[k].get(i)
            if b:
                s = s + a * b
    return s


def _generator_traces(g: RepAlgebra, M: ExactMatrix) -> list:
    return [_trace_product(G, M) for G in g.generators]


def omega_parts(sa: SegreAlgebra, k: dict, a: int) -> tuple:
    """(Omega', Omega'') for k in Lambda^2 V* (x) g (column p*dim g + i).

    Omega' = Tr(k J_a) / Tr(J_a^2) and, when V carries a complex structure i,
    Omega'' = -Tr(k i J_a) / Tr(J_a^2); with Tr(J_a^2) = -4m these are the
    real traces -Tr(k J_a)/(4m) and Tr(k iJ_a)/(4m).  Both are dicts over the
    pairs p."""
    g, t = sa.rep, sa.triple
    d = g.dim
    nrm = t.norm(a)
    tr1 = _generator_traces(g, t.J[a])
    tr2 = _generator_traces(g, t.iJ(a)) if t.i_structure is not None else None
    re, im = {}, {}
    for col, c in k.items():
        p, i = divmod(col, d)
        if tr1[i]:
            re[p] = re.get(p, 0) + c * tr1[i]
        if tr2 is not None and tr2[i]:
            im[p] = im.get(p, 0) + c * tr2[i]
    re = {p: v / nrm for p, v in re.items() if v}
    im = {p: -v / nrm for p, v in im.items() if v}
    return re, im


def omega_extract(sa: SegreAlgebra, k: dict, a: int) -> dict:
    """Omega^a = Omega' + i Omega'' as a dict of (possibly complex) values over pairs."""
    re, im = omega_parts(sa, k, a)
    out = {}
    for p in set(re) | set(im):
        v = coerce(re.get(p, 0), QI_TAG) + I * coerce(im.get(p, 0), QI_TAG)
        if v:
            out[p] = v.re if not v.im else v
    return out


def omega_all(sa: SegreAlgebra, k: dict) -> tuple:
    return tuple(omega_extract(sa, k, a) for a in range(3))


def _pair_matrices(g: RepAlgebra, k: dict) -> dict:
    """k as {p: End(V) matrix}."""
    d = g.dim
    out = {}
    for col, c in k.items():
        p, i = divmod(col, d)
        M = g.generators[i].scale(c)
        out[p] = out[p] + M if p in out else M
    return out


def omega_term(sa: SegreAlgebra, k: dict) -> dict:
    """sum_a Omega^a J_a as {p: matrix}; real for the realified and
    quaternionic forms (Omega'' pairs with i J_a)."""
    t = sa.triple
    out = {}
    for a in range(3):
        re, im = omega_parts(sa, k, a)
        for p, v in re.items():
            M = t.J[a].scale(v)
            out[p] = out[p] + M if p in out else M
        for p, v in im.items():
            M = t.iJ(a).scale(v)
            out[p] = out[p] + M if p in out else M
    return out


def reconstruct(sa: SegreAlgebra, k: dict) -> tuple:
    """(k', ok): k' = k - sum Omega^a J_a per pair, and whether every k'(p)
    lies in the span of the non-sl(2) generators."""
    g = sa.rep
    km = _pair_matrices(g, k)
    om = omega_term(sa, k)
    rest = set(sa.sl2_indices)
    kp = {}
    ok = True
    for p in set(km) | set(om):
        M = km.get(p, ExactMatrix.zeros(g.dim_V, g.dim_V))
        if p in om:
            M = M - om[p]
        M = _realify_if_real(M)
        kp[p] = M
        c = g.coords(M)
        if c is None or any(c.get(i, 0) for i in rest):
            ok = False
    return kp, ok


def _realify_if_real(M: ExactMatrix) -> ExactMatrix:
    if M.field != QI_TAG:
        return M
    if any(coerce(v, QI_TAG).im for row in M.rows for v in row.values()):
        return M
    return ExactMatrix(M.nrows, M.ncols, [{j: coerce(v, QI_TAG).re for j, v in row.items()}
                                          for row in M.rows], Q)


def _omega_times_J(sa: SegreAlgebra, parts: list, c: int, b: int, p: int) -> ExactMatrix:
    """Omega^c(p) J_b as an operator: Omega' J_b + Omega'' (i J_b) for realified
    forms, the complex product on V (x) C otherwise."""
    t = sa.triple
    re, im = parts[c]
    M = t.J[b].to_field(QI_TAG).scale(coerce(re.get(p, 0), QI_TAG))
    if t.i_structure is not None and im.get(p):
        M = M + t.iJ(b).to_field(QI_TAG).scale(coerce(im[p], QI_TAG))
    return M


def commutator_relation(sa: SegreAlgebra, k: dict) -> int | None:
    """The sign s with [k, J_a] = 2 s (Omega^c J_b - Omega^b J_c) for every
    cyclic (a, b, c), or None if neither sign works."""
    g, t = sa.rep, sa.triple
    km = _pair_matrices(g, k)
    parts = [omega_parts(sa, k, a) for a in range(3)]
    zero = ExactMatrix.zeros(g.dim_V, g.dim_V, QI_TAG)
    signs = set()
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        Ja = t.J[a].to_field(QI_TAG)
        for p in range(len(pairs(g.dim_V))):
            M = km.get(p)
            lhs = M.to_field(QI_TAG).bracket(Ja) if M is not None else zero
            rhs = (_omega_times_J(sa, parts, c, b, p) - _omega_times_J(sa, parts, b, c, p)).scale(2)
            if lhs.is_zero() and rhs.is_zero():
                continue
            if lhs == rhs:
                signs.add(1)
            elif lhs == -rhs:
                signs.add(-1)
            else:
                return None
    if len(signs) > 1:
        return None
    return signs.pop() if signs else 1


# ---------------------------------------------------------------------------
# tilde and hat

def tilde_op(F: ExactMatrix, i_structure: ExactMatrix) -> ExactMatrix:
    """F~(X, Y) = (F(X, Y) - i F(X, iY)) / 2, forms as matrices F(X,Y) = X^T F Y."""
    F = F.to_field(QI_TAG)
    return (F - (F @ i_structure.to_field(QI_TAG)).scale(I)).scale(mpq(1, 2))


def hat_op(F: ExactMatrix, triple: tuple) -> ExactMatrix:
    """F^(X, Y) = (F(X, Y) + sum_k F(J_k X, J_k Y)) / 4.

    The plus sign makes this a projection: with S(F) = sum_k J_k^T F J_k one
    has S^2 = 3 + 2S, so (1 + S)/4 is idempotent while (1 - S)/4 squares to 1/4."""
    F = F.to_field(QI_TAG)
    S = F
    for Jk in triple:
        Jq = Jk.to_field(QI_TAG)
        S = S + Jq.T @ F @ Jq
    return S.scale(mpq(1, 4))


def hat_op_minus(F: ExactMatrix, triple: tuple) -> ExactMatrix:
    """(F - sum_k F(J_k., J_k.)) / 4, kept for the idempotence comparison."""
    F = F.to_field(QI_TAG)
    S = F
    for Jk in triple:
        Jq = Jk.to_field(QI_TAG)
        S = S - Jq.T @ F @ Jq
    return S.scale(mpq(1, 4))


def type_parts(F: ExactMatrix, i_structure: ExactMatrix) -> tuple:
    """(F20, F11): parts with F(iX, iY) = -F(X, Y) and = F(X, Y)."""
    F = F.to_field(QI_TAG)
    Jq = i_structure.to_field(QI_TAG)
    G = Jq.T @ F @ Jq
    half = mpq(1, 2)
    return (F - G).scale(half), (F + G).scale(half)


def random_complex_two_form(n: int, rng: random.Random, bound: int = 5) -> ExactMatrix:
    rows = [{} for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            v = QI(rng.randint(-bound, bound), rng.randint(-bound, bound))
            if v:
                rows[a][b] = v
                rows[b][a] = -v
    return ExactMatrix(n, n, rows, QI_TAG)


# ---------------------------------------------------------------------------
# kernel containment

@dataclass
class SegreReport:
    name: str
    form: str
    dim_K: int
    dim_N: int
    contained: bool
    omega_vanishes: bool
    witness: bool
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.contained and self.omega_vanishes


def segre_kernel_containment(sa: SegreAlgebra) -> SegreReport:
    """N = ker(Ric) on K(g); checks that every element of N has no component
    along the sl(2)-factor, both by generator coordinates and by Omega traces,
    and that some element of K has Omega != 0."""
    g = sa.rep
    sm = spencer_modules(g)
    K = sm.K
    N = ricci_kernel(g, K)
    d = g.dim
    sl2 = set(sa.sl2_indices)
    bad = None
    for k in N:
        if any(col % d in sl2 for col in k):
            bad = k
            break
    omega_zero = all(not any(omega_all(sa, k)) for k in N)
    witness = any(any(omega_all(sa, k)) for k in K.basis)
    return SegreReport(g.name, sa.form, K.dim, len(N), bad is None, omega_zero, witness, bad)


def total_omega(sa: SegreAlgebra, k: dict) -> ExactMatrix:
    """Omega(X, Y) = sum_a Omega^a(X, J_a Y) as a matrix (complex values)."""
    n = sa.rep.dim_V
    out = ExactMatrix.zeros(n, n, QI_TAG)
    for a in range(3):
        om = omega_extract(sa, k, a)
        F = ExactMatrix.zeros(n, n, QI_TAG)
        rows = [{} for _ in range(n)]
        for p, v in om.items():
            x, y = pairs(n)[p]
            rows[x][y] = v
            rows[y][x] = -v
        F = ExactMatrix(n, n, rows, QI_TAG)
        out = out + F @ sa.triple.J[a].to_field(QI_TAG)
    return out


def omega_from_ambient(sa: SegreAlgebra, amb: dict, a: int) -> tuple:
    """Omega parts from an element of Lambda^2 V* (x) End(V) (index (p*n+i)*n+j)."""
    t = sa.triple
    n = t.n
    nn = n * n
    Jd = t.J[a].dense()
    iJd = t.iJ(a).dense() if t.i_structure is not None else None
    nrm = t.norm(a)
    re, im = {}, {}
    for key, v in amb.items():
        p, rest = divmod(key, nn)
        i, j = divmod(rest, n)
        # Tr(k J) = sum k[i][j] J[j][i]
        if Jd[j][i]:
            re[p] = re.get(p, 0) + v * Jd[j][i]
        if iJd is not None and iJd[j][i]:
            im[p] = im.get(p, 0) + v * iJd[j][i]
    return ({p: x / nrm for p, x in re.items() if x},
            {p: -x / nrm for p, x in im.items() if x})


def to_ambient(sa: SegreAlgebra, k: dict) -> dict:
    return K_to_ambient(sa.rep, k)
