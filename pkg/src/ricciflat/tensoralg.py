"""Index schemes for tensor spaces over V and V*, symmetry maps, contractions,
and the operators induced by a complex structure J.

Flat indices are row-major in factor order.  A Lambda^k block is indexed by
strictly increasing multi-indices and a Sym^k block by non-decreasing ones,
both in lexicographic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Sequence

from gmpy2 import mpq

from .linalg import ExactMatrix
from .scalars import Q


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple:
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict:
    return {p: i for i, p in enumerate(pairs(n))}


@lru_cache(maxsize=None)
def triples(n: int) -> tuple:
    return tuple(combinations(range(n), 3))


@lru_cache(maxsize=None)
def triple_index(n: int) -> dict:
    return {t: i for i, t in enumerate(triples(n))}


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if it has repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# structures on V

def standard_complex_structure(n: int) -> ExactMatrix:
    """J on the realification of a complex n-space, basis (e_1..e_n, ie_1..ie_n)."""
    rows = [{} for _ in range(2 * n)]
    for k in range(n):
        rows[k][n + k] = -1
        rows[n + k][k] = 1
    return ExactMatrix(2 * n, 2 * n, rows)


def check_quaternion_triple(J1: ExactMatrix, J2: ExactMatrix, J3: ExactMatrix) -> bool:
    """J_a J_b = -delta_ab Id + eps_abc J_c."""
    Js = (J1, J2, J3)
    n = J1.nrows
    eye = ExactMatrix.identity(n, J1.field)
    for a in range(3):
        for b in range(3):
            prod_ab = Js[a] @ Js[b]
            if a == b:
                expected = -eye
            else:
                c = 3 - a - b
                expected = Js[c].scale(perm_sign((a, b, c)))
            if prod_ab != expected:
                return False
    return True


@dataclass(frozen=True)
class SpaceSpec:
    dim_V: int
    field: str = Q
    J: ExactMatrix | None = None
    quaternion_triple: tuple | None = None
    eta: ExactMatrix | None = None
    metric: ExactMatrix | None = None

    def __post_init__(self):
        n = self.dim_V
        eye = ExactMatrix.identity(n, self.field)
        if self.J is not None and self.J @ self.J != -eye:
            raise ValueError("J does not square to -Id")
        if self.quaternion_triple is not None and not check_quaternion_triple(*self.quaternion_triple):
            raise ValueError("quaternion triple violates J_a J_b = -delta Id + eps J")
        if self.eta is not None:
            if self.eta.T != -self.eta:
                raise ValueError("eta is not antisymmetric")
            from .linalg import rank
            if rank(self.eta) != n:
                raise ValueError("eta is degenerate")
        if self.metric is not None:
            if self.metric.T != self.metric:
                raise ValueError("metric is not symmetric")
            from .linalg import rank
            if rank(self.metric) != n:
                raise ValueError("metric is degenerate")

    def with_(self, **kw) -> "SpaceSpec":
        d = dict(dim_V=self.dim_V, field=self.field, J=self.J,
                 quaternion_triple=self.quaternion_triple, eta=self.eta, metric=self.metric)
        d.update(kw)
        return SpaceSpec(**d)


# ---------------------------------------------------------------------------
# index schemes

@dataclass(frozen=True)
class TensorSpaceIndex:
    """Factors are "V" or "V*"; blocks are (start, length, "sym"|"alt") runs of
    equal-type consecutive factors."""

    n: int
    factors: tuple
    blocks: tuple = ()
    _units: tuple = dc_field(default=(), compare=False, repr=False)

    def __post_init__(self):
        for f in self.factors:
            if f not in ("V", "V*"):
                raise ValueError(f"bad factor {f!r}")
        covered = {}
        for start, length, kind in self.blocks:
            if kind not in ("sym", "alt"):
                raise ValueError(f"bad block kind {kind!r}")
            seg = self.factors[start:start + length]
            if len(seg) != length or len(set(seg)) != 1:
                raise ValueError("block must cover consecutive factors of one type")
            for s in range(start, start + length):
                if s in covered:
                    raise ValueError("overlapping blocks")
                covered[s] = (start, length, kind)
        units = []
        i = 0
        while i < len(self.factors):
            if i in covered:
                start, length, kind = covered[i]
                units.append((start, length, kind))
                i += length
            else:
                units.append((i, 1, None))
                i += 1
        object.__setattr__(self, "_units", tuple(units))

    @property
    def units(self) -> tuple:
        return self._units

    def unit_basis(self, u: int) -> list:
        _, length, kind = self._units[u]
        if kind is None:
            return [(i,) for i in range(self.n)]
        if kind == "alt":
            return list(combinations(range(self.n), length))
        return list(combinations_with_replacement(range(self.n), length))

    def unit_dims(self) -> list:
        out = []
        for _, length, kind in self._units:
            if kind is None:
                out.append(self.n)
            elif kind == "alt":
                out.append(math.comb(self.n, length))
            else:
                out.append(math.comb(self.n + length - 1, length))
        return out

    @property
    def dim(self) -> int:
        return math.prod(self.unit_dims())

    def _unit_maps(self):
        return [{m: i for i, m in enumerate(self.unit_basis(u))} for u in range(len(self._units))]

    def linearize(self, multi: Sequence[tuple]) -> int:
        """Flat index of a basis tensor given one multi-index per unit."""
        maps = self._unit_maps()
        dims = self.unit_dims()
        flat = 0
        for u, m in enumerate(multi):
            flat = flat * dims[u] + maps[u][tuple(m)]
        return flat

    def delinearize(self, flat: int) -> tuple:
        dims = self.unit_dims()
        if not 0 <= flat < self.dim:
            raise IndexError(flat)
        out = []
        for u in reversed(range(len(dims))):
            flat, r = divmod(flat, dims[u])
            out.append(self.unit_basis(u)[r])
        return tuple(reversed(out))

    def expand(self, flat: int) -> list:
        """Basis tensor as a list of (full factor index tuple, coefficient)
        using the integer embeddings (no 1/k!)."""
        terms = [((), 1)]
        for u, m in enumerate(self.delinearize(flat)):
            kind = self._units[u][2]
            if kind is None:
                pieces = [(m, 1)]
            elif kind == "alt":
                pieces = [(p, perm_sign(p)) for p in permutations(m)]
            else:
                pieces = [(p, 1) for p in sorted(set(permutations(m)))]
            terms = [(t + p, c * s) for t, c in terms for p, s in pieces]
        return terms


def plain_space(n: int, factors: Sequence[str]) -> TensorSpaceIndex:
    return TensorSpaceIndex(n, tuple(factors))


# ---------------------------------------------------------------------------
# symmetry embeddings and projections

def alt_embed(k: int, n: int) -> ExactMatrix:
    if k > n:
        raise ValueError("k > n for exterior power")
    basis = list(combinations(range(n), k))
    cols = []
    for m in basis:
        col = {}
        for p in permutations(m):
            col[_flat(p, n)] = perm_sign(p)
        cols.append(col)
    return ExactMatrix.from_columns(cols, n ** k)


def sym_embed(k: int, n: int) -> ExactMatrix:
    basis = list(combinations_with_replacement(range(n), k))
    cols = []
    for m in basis:
        cols.append({_flat(p, n): 1 for p in set(permutations(m))})
    return ExactMatrix.from_columns(cols, n ** k)


def alt_project(k: int, n: int) -> ExactMatrix:
    """Left inverse of :func:`alt_embed`: e_sigma(I) -> sgn(sigma)/k! e_I."""
    basis = {m: i for i, m in enumerate(combinations(range(n), k))}
    rows = [{} for _ in basis]
    w = mpq(1, math.factorial(k))
    for idx in product(range(n), repeat=k):
        s = perm_sign(idx)
        if s:
            rows[basis[tuple(sorted(idx))]][_flat(idx, n)] = s * w
    return ExactMatrix(len(basis), n ** k, rows)


def sym_project(k: int, n: int) -> ExactMatrix:
    basis = {m: i for i, m in enumerate(combinations_with_replacement(range(n), k))}
    rows = [{} for _ in basis]
    for idx in product(range(n), repeat=k):
        m = tuple(sorted(idx))
        count = len(set(permutations(m)))
        rows[basis[m]][_flat(idx, n)] = mpq(1, count)
    return ExactMatrix(len(basis), n ** k, rows)


def _flat(idx: Sequence[int], n: int) -> int:
    f = 0
    for i in idx:
        f = f * n + i
    return f


# ---------------------------------------------------------------------------
# contraction

def contraction(space: TensorSpaceIndex, slot_v: int, slot_vstar: int) -> tuple:
    """Matrix of the trace pairing a V slot with a V* slot.

    Returns ``(matrix, reduced_space)``; both slots must be unblocked factors.
    """
    f = space.factors
    if f[slot_v] != "V" or f[slot_vstar] != "V*":
        raise ValueError("contraction needs a V slot and a V* slot")
    unit_of = {}
    for u, (start, length, kind) in enumerate(space.units):
        for s in range(start, start + length):
            unit_of[s] = (u, kind)
    if unit_of[slot_v][1] is not None or unit_of[slot_vstar][1] is not None:
        raise ValueError("contracted slots must not lie in symmetry blocks")
    drop = {slot_v, slot_vstar}
    keep = [i for i in range(len(f)) if i not in drop]
    remap = {old: new for new, old in enumerate(keep)}
    new_blocks = tuple((remap[s], l, k) for s, l, k in space.blocks)
    reduced = TensorSpaceIndex(space.n, tuple(f[i] for i in keep), new_blocks)
    uv = unit_of[slot_v][0]
    us = unit_of[slot_vstar][0]
    kept_units = [u for u in range(len(space.units)) if u not in (uv, us)]
    rows_count = reduced.dim
    cols = []
    red_maps = reduced._unit_maps()
    red_dims = reduced.unit_dims()
    for flat in range(space.dim):
        multi = space.delinearize(flat)
        if multi[uv] != multi[us]:
            cols.append({})
            continue
        r = 0
        for j, u in enumerate(kept_units):
            r = r * red_dims[j] + red_maps[j][multi[u]]
        cols.append({r: 1})
    return ExactMatrix.from_columns(cols, rows_count), reduced


# ---------------------------------------------------------------------------
# bilinear forms stored on Lambda^2 V*

def alt2_to_matrix(vec: dict, n: int) -> list:
    """Coordinates on Lambda^2 V* (basis e^a^e^b, a<b) -> antisymmetric matrix."""
    W = [[mpq(0)] * n for _ in range(n)]
    pl = pairs(n)
    for p, v in vec.items():
        a, b = pl[p]
        W[a][b] = v
        W[b][a] = -v
    return W


def matrix_to_alt2(W: Sequence[Sequence], n: int) -> dict:
    out = {}
    for p, (a, b) in enumerate(pairs(n)):
        if W[a][b]:
            out[p] = W[a][b]
    return out


def _dense(M: ExactMatrix) -> list:
    return M.dense()


def theta2(J: ExactMatrix) -> ExactMatrix:
    """omega -> omega(J., J.) on Lambda^2 V*."""
    n = J.nrows
    Jd = _dense(J)
    pi = pair_index(n)
    cols = []
    for a, b in pairs(n):
        # (J^T W J)[c][d] with W = E_ab - E_ba
        col = {}
        for c in range(n):
            for d in range(c + 1, n):
                v = Jd[a][c] * Jd[b][d] - Jd[b][c] * Jd[a][d]
                if v:
                    col[pi[(c, d)]] = v
        cols.append(col)
    return ExactMatrix.from_columns(cols, len(pairs(n)))


def theta4(J: ExactMatrix) -> ExactMatrix:
    """T -> J T(J., J., J.) on Lambda^2 V* (x) V* (x) V.

    Flat index ((pair * n) + w) * n + z for the component T(e_a, e_b, e_w)^z.
    """
    n = J.nrows
    Jd = _dense(J)
    th2 = theta2(J)
    cols = []
    npairs = len(pairs(n))
    for p in range(npairs):
        tp = th2.column(p)
        for w in range(n):
            for z in range(n):
                col = {}
                for q, c2 in tp.items():
                    for w2 in range(n):
                        jw = Jd[w][w2]
                        if not jw:
                            continue
                        for z2 in range(n):
                            jz = Jd[z2][z]
                            if jz:
                                k = (q * n + w2) * n + z2
                                col[k] = col.get(k, 0) + c2 * jw * jz
                cols.append({k: v for k, v in col.items() if v})
    return ExactMatrix.from_columns(cols, npairs * n * n)


def ambient_index(n: int, p: int, i: int, j: int) -> int:
    """Flat index in Lambda^2 V* (x) End(V): pair-major, then row, then column."""
    return (p * n + i) * n + j


def theta2_ambient(J: ExactMatrix) -> ExactMatrix:
    """theta2 (x) Id on Lambda^2 V* (x) End(V)."""
    n = J.nrows
    th2 = theta2(J)
    cols = []
    for p in range(len(pairs(n))):
        tp = th2.column(p)
        for ij in range(n * n):
            cols.append({q * n * n + ij: v for q, v in tp.items()})
    return ExactMatrix.from_columns(cols, len(pairs(n)) * n * n)


def tau_ambient(J: ExactMatrix) -> ExactMatrix:
    """k -> J^{-1} k(J., .), antisymmetrized, on Lambda^2 V* (x) End(V).

    On the -1 eigenspace of theta2 the bilinear map (x, y) -> k(Jx, y) is
    already antisymmetric, so there this is exactly J^{-1} k(J x, y).
    """
    n = J.nrows
    Jd = _dense(J)
    Jinv = [[-x for x in row] for row in Jd]
    pi = pair_index(n)
    half = mpq(1, 2)
    cols = []
    for a, b in pairs(n):
        # B(x, y) = k(Jx, y) for k = e^a^e^b (x) E: B = J[a][x] d_by - J[b][x] d_ay
        form = {}
        for x in range(n):
            for y, coef in ((b, Jd[a][x]), (a, -Jd[b][x])):
                if coef and x != y:
                    key, s = ((x, y), 1) if x < y else ((y, x), -1)
                    form[key] = form.get(key, 0) + half * s * coef
        form = {pi[k]: v for k, v in form.items() if v}
        for i in range(n):
            for j in range(n):
                col = {}
                for q, v in form.items():
                    for r in range(n):
                        c = Jinv[r][i]
                        if c:
                            col[(q * n + r) * n + j] = v * c
                cols.append(col)
    return ExactMatrix.from_columns(cols, len(pairs(n)) * n * n)
