"""Symplectic subalgebras: invariant pairing, u o v, rho_A and their identities.

The base pairing on g is (X, Y) = -tr(XY)/2, which is -B_sp/(4n+4) for the
Killing form B_sp of sp(V) with dim V = 2n, restricted to g.  The quartic
identity for u o v fixes the pairing only up to one scale per simple factor;
:func:`fit_eq2_scales` finds those scales.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from gmpy2 import mpq

from .linalg import ExactMatrix, Subspace, inverse, kernel, rank, solve
from .repcatalog import RepAlgebra
from .riccicheck import RICCI_TYPE, classify, ricci_ambient
from .spencer import boundary_K
from .tensoralg import pairs

# Sign of the u o v terms in rho_A relative to the eta(u,v)A term, for u o v
# defined by (A, u o v) = eta(Au, v) with matrices acting on column vectors.
CIRC_SIGN = -1


class SymplecticError(ValueError):
    pass


def killing_form(g: RepAlgebra) -> ExactMatrix:
    """B(X, Y) = tr(ad X ad Y) in the generator basis."""
    d = g.dim
    ads = []
    for A in g.generators:
        cols = []
        for B in g.generators:
            c = g.coords(A.bracket(B))
            if c is None:
                raise SymplecticError("generators do not close under bracket")
            cols.append(c)
        ads.append(ExactMatrix.from_columns(cols, d, g.field))
    return ExactMatrix.from_dense([[(ads[i] @ ads[j]).trace() for j in range(d)] for i in range(d)])


def trace_form(g: RepAlgebra) -> ExactMatrix:
    d = g.dim
    return ExactMatrix.from_dense([[(g.generators[i] @ g.generators[j]).trace() for j in range(d)]
                                   for i in range(d)])


def proportionality(A: ExactMatrix, B: ExactMatrix):
    """c with A = c B, or None."""
    ea = dict(A.entries())
    eb = dict(B.entries())
    if not eb:
        return None
    k0 = next(iter(eb))
    c = ea.get(k0, 0) / eb[k0]
    if all(ea.get(k, 0) == c * eb.get(k, 0) for k in set(ea) | set(eb)):
        return c
    return None


def factor_blocks(rep: RepAlgebra) -> list:
    blocks = [tuple(idx) for _, idx in rep.factors]
    covered = sorted(i for b in blocks for i in b)
    if covered != list(range(rep.dim)):
        return [tuple(range(rep.dim))]
    return blocks


class SymplecticRep:
    """A symplectic representation with its pairing and the u o v table."""

    def __init__(self, rep: RepAlgebra, factor_scales=None):
        if rep.space.eta is None:
            raise SymplecticError(f"{rep.name}: no symplectic form registered")
        self.rep = rep
        self.n = rep.dim_V
        self.d = rep.dim
        self.eta = rep.space.eta
        self.eta_d = self.eta.dense()
        for A in rep.generators:
            if A.T @ self.eta + self.eta @ A != ExactMatrix.zeros(self.n, self.n):
                raise SymplecticError(f"{rep.name}: generator does not preserve eta")
        self.base_pairing = trace_form(rep).scale(mpq(-1, 2))
        self.blocks = factor_blocks(rep)
        self.factor_scales = tuple(factor_scales) if factor_scales else (1,) * len(self.blocks)
        w = {}
        for b, sc in zip(self.blocks, self.factor_scales):
            for i in b:
                w[i] = sc
        self.pairing = ExactMatrix(self.d, self.d,
                                   [{j: v * w[i] for j, v in r.items()}
                                    for i, r in enumerate(self.base_pairing.rows)])
        if rank(self.pairing) != self.d:
            raise SymplecticError(f"{rep.name}: pairing is degenerate")
        self._pinv = inverse(self.pairing)

    @cached_property
    def killing(self) -> ExactMatrix:
        return killing_form(self.rep)

    def killing_ratio(self):
        """c with pairing = c * (intrinsic Killing form), or None when no single c works."""
        return proportionality(self.pairing, self.killing)

    def pair(self, X: dict, Y: dict):
        s = 0
        for i, x in X.items():
            for j, v in self.pairing.row(i).items():
                y = Y.get(j)
                if y:
                    s += x * v * y
        return s

    def eta_val(self, u: int, v: int):
        return self.eta_d[u][v]

    @cached_property
    def _gen_dense(self):
        return [G.dense() for G in self.rep.generators]

    def _rhs(self, u: int, v: int) -> list:
        """eta(G_i e_u, e_v) for each generator."""
        out = []
        for G in self._gen_dense:
            out.append(sum(G[w][u] * self.eta_d[w][v] for w in range(self.n)))
        return out

    @cached_property
    def circ_table(self) -> dict:
        """(u, v) -> generator coordinates of e_u o e_v."""
        table = {}
        for u in range(self.n):
            for v in range(self.n):
                b = self._rhs(u, v)
                x = {}
                for i in range(self.d):
                    s = sum(self._pinv[i, j] * b[j] for j in range(self.d) if b[j])
                    if s:
                        x[i] = s
                table[(u, v)] = x
        return table

    def circ(self, u, v) -> dict:
        """u o v for basis indices or coordinate dicts."""
        if isinstance(u, int) and isinstance(v, int):
            return self.circ_table[(u, v)]
        u = {u: 1} if isinstance(u, int) else u
        v = {v: 1} if isinstance(v, int) else v
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                for i, c in self.circ_table[(a, b)].items():
                    out[i] = out.get(i, 0) + x * y * c
        return {k: c for k, c in out.items() if c}

    def check_eq1(self) -> bool:
        """(A, u o v) = eta(Au, v) for every generator and basis pair."""
        for u in range(self.n):
            for v in range(self.n):
                x = self.circ_table[(u, v)]
                b = self._rhs(u, v)
                for i in range(self.d):
                    if self.pair({i: 1}, x) != b[i]:
                        return False
        return True

    def circ_symmetric(self) -> bool:
        return all(self.circ_table[(u, v)] == self.circ_table[(v, u)]
                   for u in range(self.n) for v in range(u + 1, self.n))

    def apply_gen(self, A: dict, u: int) -> dict:
        """(sum_i A_i G_i) e_u as a coordinate dict."""
        out = {}
        for i, a in A.items():
            for w, x in self.rep.generators[i].column(u).items():
                out[w] = out.get(w, 0) + a * x
        return {k: v for k, v in out.items() if v}

    def rho(self, A: dict) -> dict:
        """rho_A(u, v) = 2 eta(u,v) A - s (u o (Av) - v o (Au)) with s = CIRC_SIGN,
        in Lambda^2 V* (x) g coordinates."""
        d = self.d
        out = {}
        for p, (a, b) in enumerate(pairs(self.n)):
            val = {}
            e = self.eta_d[a][b]
            if e:
                for i, x in A.items():
                    val[i] = 2 * e * x
            for i, x in self.circ(a, self.apply_gen(A, b)).items():
                val[i] = val.get(i, 0) - CIRC_SIGN * x
            for i, x in self.circ(b, self.apply_gen(A, a)).items():
                val[i] = val.get(i, 0) + CIRC_SIGN * x
            for i, x in val.items():
                if x:
                    out[p * d + i] = x
        return out

    def eq2_scale(self):
        """Find c with (uov, sot) - (uot, sov) = c (2 eta(u,s)eta(v,t) + eta(u,t)eta(v,s)
        + eta(u,v)eta(s,t)) on all basis quadruples.

        Returns (c, counterexample-or-None)."""
        n = self.n
        et = self.eta_d
        c = None
        for u in range(n):
            for v in range(n):
                for s in range(n):
                    for t in range(n):
                        lhs = self.pair(self.circ_table[(u, v)], self.circ_table[(s, t)]) - \
                            self.pair(self.circ_table[(u, t)], self.circ_table[(s, v)])
                        rhs = 2 * et[u][s] * et[v][t] + et[u][t] * et[v][s] + et[u][v] * et[s][t]
                        if rhs == 0:
                            if lhs != 0:
                                return None, (u, v, s, t)
                            continue
                        if c is None:
                            c = lhs / rhs
                        elif lhs != c * rhs:
                            return c, (u, v, s, t)
        return c, None

    def lemma_constant(self, K: Subspace):
        """c with Ric(k)(x, y) = c * eta(k(eta^-1) x, y) for all basis k of K, or None."""
        n, d = self.n, self.d
        Qinv = inverse(self.eta).dense()
        R = ricci_ambient(self.rep)
        c = None
        for k in K.basis:
            # k(eta^-1) = sum_{a<b} (Q[a][b] - Q[b][a]) k(e_a, e_b)
            M = [[0] * n for _ in range(n)]
            for col, x in k.items():
                p, i = divmod(col, d)
                a, b = pairs(n)[p]
                w = (Qinv[a][b] - Qinv[b][a]) * x
                if w:
                    G = self._gen_dense[i]
                    for r in range(n):
                        for s in range(n):
                            if G[r][s]:
                                M[r][s] += w * G[r][s]
            L = {}
            for x in range(n):
                for y in range(n):
                    val = sum(M[z][x] * self.eta_d[z][y] for z in range(n) if M[z][x])
                    if val:
                        L[x * n + y] = val
            ric = R.apply(k)
            if not L:
                if ric:
                    return None
                continue
            k0 = next(iter(L))
            cc = ric.get(k0, 0) / L[k0]
            if c is None:
                c = cc
            if cc != c or any(ric.get(key, 0) != c * L.get(key, 0) for key in set(ric) | set(L)):
                return None
        return c

    def act_on_curvature(self, B: int, k: dict) -> dict:
        """(G_B . k)(x, y) = [G_B, k(x,y)] - k(G_B x, y) - k(x, G_B y)."""
        n, d = self.n, self.d
        rep = self.rep
        G = rep.generators[B]
        # dense representation k[(a,b)] -> g-coord dict, antisymmetric
        vals = {}
        for col, x in k.items():
            p, i = divmod(col, d)
            vals.setdefault(pairs(n)[p], {})[i] = x
        def kv(a, b):
            if a == b:
                return {}
            if a < b:
                return vals.get((a, b), {})
            return {i: -x for i, x in vals.get((b, a), {}).items()}
        out = {}
        for p, (a, b) in enumerate(pairs(n)):
            acc = {}
            for i, x in kv(a, b).items():
                for j, y in rep.coords(G.bracket(rep.generators[i])).items():
                    acc[j] = acc.get(j, 0) + x * y
            for w, gx in G.column(a).items():
                for i, x in kv(w, b).items():
                    acc[i] = acc.get(i, 0) - gx * x
            for w, gx in G.column(b).items():
                for i, x in kv(a, w).items():
                    acc[i] = acc.get(i, 0) - gx * x
            for i, x in acc.items():
                if x:
                    out[p * d + i] = x
        return out


def _eq2_rhs(et, u, v, s, t):
    return 2 * et[u][s] * et[v][t] + et[u][t] * et[v][s] + et[u][v] * et[s][t]


def fit_eq2_scales(rep: RepAlgebra, per_factor: bool = True):
    """Scales w_f (pairing = w_f * base pairing on factor f) making the quartic
    identity exact on all basis quadruples; None when no such scales exist.

    With ``per_factor`` False a single global scale is sought.
    """
    base = SymplecticRep(rep)
    n = base.n
    blocks = base.blocks if per_factor else [tuple(range(base.d))]
    pinv = base._pinv
    bvec = {(u, v): base._rhs(u, v) for u in range(n) for v in range(n)}
    et = base.eta_d
    rows, rhs = [], []

    def part(x, y, idx):
        return sum(x[i] * pinv[i, j] * y[j] for i in idx if x[i] for j in idx if y[j])

    for u in range(n):
        for v in range(n):
            for s_ in range(n):
                for t in range(n):
                    row = {}
                    for f, idx in enumerate(blocks):
                        val = part(bvec[(u, v)], bvec[(s_, t)], idx) - part(bvec[(u, t)], bvec[(s_, v)], idx)
                        if val:
                            row[f] = val
                    r = _eq2_rhs(et, u, v, s_, t)
                    if row or r:
                        rows.append(row)
                        rhs.append(r)
    M = ExactMatrix(len(rows), len(blocks), rows)
    x = solve(M, rhs)
    if x is None or any(not x.get(f) for f in range(len(blocks))):
        return None
    return tuple(1 / x[f] for f in range(len(blocks)))


@dataclass
class SymplecticReport:
    name: str
    dim_g: int
    dim_K: int
    eq1: bool
    circ_symmetric: bool
    eq2_global_scale: object
    eq2_factor_scales: object
    eq2_holds: bool
    rho_in_K: bool
    rho_injective: bool
    ric_rho_injective: bool
    lemma_constant: object
    killing_ratio: object
    verdict: str
    equivariant: bool = True

    @property
    def ok(self) -> bool:
        """Every identity holds once the pairing is fitted per simple factor."""
        return (self.eq1 and self.circ_symmetric and self.eq2_holds and self.rho_in_K
                and self.rho_injective and self.ric_rho_injective
                and self.lemma_constant is not None and self.dim_K == self.dim_g
                and self.verdict == RICCI_TYPE and self.equivariant)


def verify_symplectic(rep: RepAlgebra, equivariance_samples: int = 3, seed: int = 0) -> SymplecticReport:
    glob = fit_eq2_scales(rep, per_factor=False)
    scales = fit_eq2_scales(rep, per_factor=True)
    sr = SymplecticRep(rep, scales)
    dK = boundary_K(rep)
    K = kernel(dK)
    rhos = [sr.rho({i: 1}) for i in range(sr.d)]
    in_K = all(not dK.apply(r) for r in rhos)
    rho_span = Subspace.span(rhos, dK.ncols, rep.field)
    R = ricci_ambient(rep)
    ric_rank = rank(ExactMatrix.from_columns([R.apply(r) for r in rhos], R.nrows, rep.field))
    rng = random.Random(seed)
    equiv = True
    for _ in range(equivariance_samples):
        a = rng.randrange(sr.d)
        b = rng.randrange(sr.d)
        lhs = sr.rho(rep.coords(rep.generators[b].bracket(rep.generators[a])))
        if lhs != sr.act_on_curvature(b, rhos[a]):
            equiv = False
    c, bad = sr.eq2_scale()
    rec = classify(rep)
    return SymplecticReport(rep.name, sr.d, K.dim, sr.check_eq1(), sr.circ_symmetric(), glob, scales,
                            scales is not None and c == 1 and bad is None, in_K,
                            rho_span.dim == sr.d, ric_rank == sr.d, sr.lemma_constant(K),
                            SymplecticRep(rep).killing_ratio(), rec.verdict, equiv)
