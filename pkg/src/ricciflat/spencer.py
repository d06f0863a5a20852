"""Prolongations, the Spencer boundary maps and the formal curvature module.

Coordinates:

* ``Lambda^2 V* (x) g``: column ``p * dim g + i`` is e^a^e^b (x) G_i for the
  p-th pair a<b.
* ``V* (x) g``: column ``a * dim g + i`` is e^a (x) G_i, i.e. the map t with
  t(e_a) = G_i.
* ``Lambda^3 V* (x) V``: row ``q * n + w`` for the q-th triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product


from .linalg import (ExactMatrix, Subspace, kernel, probabilistic_rank)
from .repcatalog import RepAlgebra
from .tensoralg import (ambient_index, pair_index, pairs, tau_ambient, theta2_ambient,
                        triple_index, triples)


class BudgetExceeded(RuntimeError):
    """An exact computation would exceed the configured size budget."""


def boundary_K(g: RepAlgebra) -> ExactMatrix:
    """(dk)(x,y,z) = k(x,y)z + k(y,z)x + k(z,x)y from Lambda^2 V* (x) g to Lambda^3 V* (x) V."""
    n, d = g.dim_V, g.dim
    ti = triple_index(n)
    gcols = [G.columns() for G in g.generators]
    cols = []
    for a, b in pairs(n):
        for i in range(d):
            col = {}
            gc = gcols[i]
            for c in range(n):
                if c == a or c == b:
                    continue
                if c > b:
                    t, s = (a, b, c), 1
                elif c < a:
                    t, s = (c, a, b), 1
                else:
                    t, s = (a, c, b), -1
                base = ti[t] * n
                for w, v in gc[c].items():
                    col[base + w] = s * v
            cols.append(col)
    return ExactMatrix.from_columns(cols, len(ti) * n, g.field)


def prolong_matrix(g: RepAlgebra) -> ExactMatrix:
    """t -> (x, y -> t(x)y - t(y)x) from V* (x) g to Lambda^2 V* (x) V."""
    n, d = g.dim_V, g.dim
    pi = pair_index(n)
    gcols = [G.columns() for G in g.generators]
    cols = []
    for a in range(n):
        for i in range(d):
            col = {}
            gc = gcols[i]
            for y in range(a + 1, n):
                base = pi[(a, y)] * n
                for z, v in gc[y].items():
                    col[base + z] = col.get(base + z, 0) + v
            for x in range(a):
                base = pi[(x, a)] * n
                for z, v in gc[x].items():
                    col[base + z] = col.get(base + z, 0) - v
            cols.append({k: v for k, v in col.items() if v})
    return ExactMatrix.from_columns(cols, len(pi) * n, g.field)


def prolong(g: RepAlgebra) -> Subspace:
    """g^(1) as a subspace of V* (x) g."""
    if g.dim == 0:
        return Subspace.zero(0, g.field)
    return kernel(prolong_matrix(g))


# --- tensor form of prolongations -------------------------------------------

def g1_to_tensor(g: RepAlgebra, vec: dict) -> dict:
    """Element of V* (x) g as the tensor T^z_{ab} = t(e_a)[z][b], index (z*n + a)*n + b."""
    n, d = g.dim_V, g.dim
    out = {}
    for col, c in vec.items():
        a, i = divmod(col, d)
        for z, row in enumerate(g.generators[i].rows):
            for b, v in row.items():
                k = (z * n + a) * n + b
                out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _sym_tail_subspace(n: int, k: int, field: str) -> Subspace:
    """V (x) Sym^k V* inside V (x) (V*)^k, flat index z*n^k + multi."""
    vecs = []
    seen = set()
    for z in range(n):
        for m in product(range(n), repeat=k):
            key = (z, tuple(sorted(m)))
            if key in seen:
                continue
            seen.add(key)
            v = {}
            for p in set(permutations(m)):
                f = z
                for i in p:
                    f = f * n + i
                v[f] = 1
            vecs.append(v)
    return Subspace.span(vecs, n ** (k + 1), field)


def g_as_tensors(g: RepAlgebra) -> Subspace:
    n = g.dim_V
    return Subspace.span([G.flatten() for G in g.generators], n * n, g.field)


def prolong_tensor(g: RepAlgebra, k: int = 1) -> Subspace:
    """g^(k) = (g^(k-1) (x) V*) cap (V (x) Sym^(k+1) V*) in V (x) (V*)^(k+1).

    The new V* slot is inserted directly after the V slot.
    """
    n = g.dim_V
    cur = g_as_tensors(g)
    for level in range(1, k + 1):
        # cur lives in V (x) (V*)^level with flat z*n^level + rest
        nl = n ** level
        vecs = []
        for b in cur.basis:
            for a in range(n):
                v = {}
                for f, x in b.items():
                    z, rest = divmod(f, nl)
                    v[(z * n + a) * nl + rest] = x
                vecs.append(v)
        tensor_side = Subspace.span(vecs, n ** (level + 2), g.field)
        cur = tensor_side.intersect(_sym_tail_subspace(n, level + 1, g.field))
        if cur.dim == 0:
            break
    return cur


def prolong_by_intersection(g: RepAlgebra) -> Subspace:
    return prolong_tensor(g, 1)


# --- boundary on V* (x) g^(1) -----------------------------------------------

def boundary_1_columns(g: RepAlgebra, g1: Subspace) -> list:
    """Images d(e^b (x) t) for every b and every basis element t of g^(1)."""
    n, d = g.dim_V, g.dim
    pi = pair_index(n)
    cols = []
    for t in g1.basis:
        by_arg = {}
        for col, c in t.items():
            a, i = divmod(col, d)
            by_arg.setdefault(a, {})[i] = c
        for b in range(n):
            col = {}
            for y in range(b + 1, n):
                for i, c in by_arg.get(y, {}).items():
                    col[pi[(b, y)] * d + i] = c
            for x in range(b):
                for i, c in by_arg.get(x, {}).items():
                    k = pi[(x, b)] * d + i
                    col[k] = col.get(k, 0) - c
            cols.append({k: v for k, v in col.items() if v})
    return cols


def boundary_1(g: RepAlgebra, g1: Subspace) -> ExactMatrix:
    """(d(alpha (x) h))(x, y) = alpha(x) h(y) - alpha(y) h(x), columns indexed (t, b)."""
    n, d = g.dim_V, g.dim
    return ExactMatrix.from_columns(boundary_1_columns(g, g1), len(pairs(n)) * d, g.field)


# --- bundles ------------------------------------------------------------------

@dataclass
class SpencerModules:
    g1: Subspace | None
    K: Subspace | None
    dK_image: Subspace | None
    h12_dim: int
    dim_g1: int
    dim_K: int
    dim_dK: int
    provenance: str = "exact"
    primes: tuple = ()


def boundary_size(g: RepAlgebra) -> int:
    n = g.dim_V
    return len(triples(n)) * n * len(pairs(n)) * g.dim


def spencer_modules(g: RepAlgebra, budget: int | None = None, probabilistic: bool = False,
                    primes: int = 2, seed: int = 0) -> SpencerModules:
    size = boundary_size(g)
    if budget is not None and size > budget:
        if not probabilistic:
            raise BudgetExceeded(f"{g.name}: boundary matrix has {size} entries > budget {budget}")
        return _spencer_modular(g, primes, seed)
    g1 = prolong(g)
    dK = boundary_K(g)
    K = kernel(dK)
    dK_image = Subspace.span(boundary_1_columns(g, g1), K.ambient_dim, g.field) if g1.dim else \
        Subspace.zero(K.ambient_dim, g.field)
    return SpencerModules(g1, K, dK_image, K.dim - dK_image.dim, g1.dim, K.dim, dK_image.dim)


def _spencer_modular(g: RepAlgebra, primes: int, seed: int) -> SpencerModules:
    g1 = prolong(g)
    dK = boundary_K(g)
    r, used = probabilistic_rank(dK, agree=primes, seed=seed)
    dim_K = dK.ncols - r
    if g1.dim:
        B1 = boundary_1(g, g1)
        r1, used1 = probabilistic_rank(B1, agree=primes, seed=seed + 1)
    else:
        r1, used1 = 0, []
    return SpencerModules(g1, None, None, dim_K - r1, g1.dim, dim_K, r1, "probabilistic",
                          tuple(used) + tuple(used1))


# --- embedding into Lambda^2 V* (x) End(V) ---------------------------------------

def K_to_ambient(g: RepAlgebra, vec: dict) -> dict:
    """Element of Lambda^2 V* (x) g as a component dict on Lambda^2 V* (x) End(V)."""
    n, d = g.dim_V, g.dim
    out = {}
    for col, c in vec.items():
        p, i = divmod(col, d)
        for r, row in enumerate(g.generators[i].rows):
            for s, v in row.items():
                k = ambient_index(n, p, r, s)
                out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def ambient_to_K(g: RepAlgebra, amb: dict) -> dict | None:
    """Inverse of :func:`K_to_ambient`, or None if some value leaves g."""
    n, d = g.dim_V, g.dim
    nn = n * n
    by_pair = {}
    for k, v in amb.items():
        p, rest = divmod(k, nn)
        by_pair.setdefault(p, {})[rest] = v
    out = {}
    for p, vec in by_pair.items():
        c = g.coords(vec)
        if c is None:
            return None
        for i, x in c.items():
            out[p * d + i] = x
    return out


# --- complex splitting -----------------------------------------------------------

@dataclass
class ComplexSplit:
    K1: Subspace
    K2: Subspace
    K3: Subspace
    dim_K: int
    projections_in_K: bool
    eigen_dims: tuple  # dims of the three pieces computed as eigenspaces inside K

    @property
    def dims(self) -> tuple:
        return (self.K1.dim, self.K2.dim, self.K3.dim)

    @property
    def is_direct_sum(self) -> bool:
        return sum(self.dims) == self.dim_K


def complex_split(g: RepAlgebra, K: Subspace | None = None) -> ComplexSplit:
    """Split K(g) by theta2 (x) Id and tau.

    K2 is the +1 part of theta2; the -1 part splits into K1 (tau = +1) and
    K3 (tau = -1).  Each piece is computed twice: as the span of the
    projections p_j(K), and as a joint eigenspace of the operators restricted
    to K.  Both must agree.
    """
    if g.J is None:
        raise ValueError(f"{g.name}: complex structure J missing")
    J = g.J
    for G in g.generators:
        if G @ J != J @ G:
            raise ValueError(f"{g.name}: generator does not commute with J")
    if K is None:
        K = kernel(boundary_K(g))
    n = g.dim_V
    amb_dim = len(pairs(n)) * n * n
    th = theta2_ambient(J)
    ta = tau_ambient(J)
    kv = [K_to_ambient(g, b) for b in K.basis]
    Kamb = Subspace.span(kv, amb_dim, g.field)
    p1s, p2s, p3s = [], [], []
    for v in kv:
        tv = th.apply(v)
        m = _half(v, tv, -1)
        tm = ta.apply(m)
        p1s.append(_half(m, tm, 1))
        p2s.append(_half(v, tv, 1))
        p3s.append(_half(m, tm, -1))
    inside = all(Kamb.contains(x) for x in p1s + p2s + p3s)
    K1 = Subspace.span(p1s, amb_dim, g.field)
    K2 = Subspace.span(p2s, amb_dim, g.field)
    K3 = Subspace.span(p3s, amb_dim, g.field)
    # eigen route on K coordinates
    B = ExactMatrix.from_columns(kv, amb_dim, g.field)
    thB = th @ B
    taB = ta @ B
    e2 = kernel(thB - B).dim
    e1 = kernel((thB + B).vstack(taB - B)).dim
    e3 = kernel((thB + B).vstack(taB + B)).dim
    return ComplexSplit(K1, K2, K3, K.dim, inside, (e1, e2, e3))


def _half(a: dict, b: dict, sign: int) -> dict:
    """(a + sign * b) / 2."""
    out = {k: v / 2 for k, v in a.items()}
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v / 2
    return {k: v for k, v in out.items() if v}
