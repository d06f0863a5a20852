"""Matrix Lie algebras acting on V: classical families, tensor stabilizers,
derived representations, and generator files."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Mapping, Sequence

from gmpy2 import mpq

from .linalg import ExactMatrix, Subspace, kernel
from .scalars import I as IMAG, QI, QI_TAG, Q, coerce, format_scalar, parse_scalar
from .tensoralg import SpaceSpec, perm_sign, standard_complex_structure


class RepError(ValueError):
    pass


def E(i: int, j: int, n: int, v=1, field: str = Q) -> ExactMatrix:
    rows = [{} for _ in range(n)]
    rows[i][j] = v
    return ExactMatrix(n, n, rows, field)


def diag(values: Sequence, field: str | None = None) -> ExactMatrix:
    n = len(values)
    return ExactMatrix(n, n, [{i: v} if v else {} for i, v in enumerate(values)], field)


# ---------------------------------------------------------------------------
# preserved tensors

@dataclass(frozen=True)
class PreservedTensor:
    """A tensor on V stored with every index ordering spelled out.

    ``variance[k]`` is "V*" for a covariant slot and "V" for a contravariant one.
    """

    n: int
    entries: Mapping  # full index tuple -> scalar
    degree: int
    symmetry: str = "none"
    mode: str = "exact"
    variance: tuple = ()

    @classmethod
    def build(cls, n: int, degree: int, entries: Mapping, symmetry: str = "none",
              mode: str = "exact", variance: Sequence[str] | None = None) -> "PreservedTensor":
        """Expand ``entries`` (one representative per orbit for sym/alt) to full form."""
        if symmetry not in ("sym", "alt", "none"):
            raise RepError(f"bad symmetry {symmetry!r}")
        if mode not in ("exact", "up-to-scale"):
            raise RepError(f"bad mode {mode!r}")
        full: dict = {}
        for idx, v in entries.items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 0 <= i < n for i in idx):
                raise RepError(f"bad index {idx}")
            if not v:
                continue
            if symmetry == "none":
                full[idx] = full.get(idx, 0) + v
                continue
            base = perm_sign(idx) if symmetry == "alt" else 1
            if symmetry == "alt" and base == 0:
                continue
            for p in set(permutations(idx)):
                s = perm_sign(p) * base if symmetry == "alt" else 1
                full[p] = full.get(p, 0) + s * v
        full = {k: v for k, v in full.items() if v}
        if variance is None:
            variance = ("V*",) * degree
        return cls(n, full, degree, symmetry, mode, tuple(variance))

    def canonical_rows(self) -> list:
        """Index tuples that carry independent components."""
        n, k = self.n, self.degree
        if self.symmetry == "sym" and len(set(self.variance)) == 1:
            return list(combinations_with_replacement(range(n), k))
        if self.symmetry == "alt" and len(set(self.variance)) == 1:
            return list(combinations(range(n), k))
        return list(product(range(n), repeat=k))

    def act(self, A: ExactMatrix) -> dict:
        """Full-index components of A.T (derivation action)."""
        out: dict = {}
        rows = A.rows
        cols = A.columns()
        for idx, t in self.entries.items():
            for s, var in enumerate(self.variance):
                j = idx[s]
                if var == "V*":
                    # (A.T)_{..i..} -= A[j][i] T_{..j..}
                    for i, a in rows[j].items():
                        key = idx[:s] + (i,) + idx[s + 1:]
                        out[key] = out.get(key, 0) - a * t
                else:
                    for i, a in cols[j].items():
                        key = idx[:s] + (i,) + idx[s + 1:]
                        out[key] = out.get(key, 0) + a * t
        return {k: v for k, v in out.items() if v}

    def is_preserved_by(self, A: ExactMatrix) -> bool:
        act = self.act(A)
        if self.mode == "exact" or not act:
            return not act
        # up to scale: act = c * T
        k0 = next(iter(self.entries))
        c = act.get(k0, 0) / self.entries[k0]
        return all(act.get(k, 0) == c * v for k, v in self.entries.items()) and \
            all(k in self.entries for k in act)

    def as_matrix(self) -> ExactMatrix:
        if self.degree != 2:
            raise RepError("as_matrix needs a 2-tensor")
        return ExactMatrix.from_entries(self.n, self.n, self.entries)


def tensor_from_matrix(M: ExactMatrix, symmetry: str = "none", mode: str = "exact") -> PreservedTensor:
    return PreservedTensor(M.nrows, dict(M.entries()), 2, symmetry, mode, ("V*", "V*"))


# ---------------------------------------------------------------------------
# generator bases

class GeneratorBasis:
    """Coordinates of matrices with respect to an independent generator list."""

    def __init__(self, generators: Sequence[ExactMatrix], n: int, field: str):
        d = len(generators)
        self.d = d
        self.n = n
        aug = []
        for i, g in enumerate(generators):
            v = {d + k: x for k, x in g.flatten().items()}
            v[i] = 1
            aug.append(v)
        sub = Subspace.span(aug, d + n * n, field)
        if any(p < d for p in sub.pivots):
            raise RepError("generators are linearly dependent")
        self._pivots = [p - d for p in sub.pivots]
        self._rows = [({k - d: x for k, x in b.items() if k >= d},
                       {k: x for k, x in b.items() if k < d}) for b in sub.basis]
        self.span = Subspace(n * n, [r[0] for r in self._rows], self._pivots, field)

    def coords(self, X) -> dict | None:
        """Sparse generator coordinates of X, or None when X is not in the span."""
        v = X.flatten() if isinstance(X, ExactMatrix) else X
        out: dict = {}
        acc = dict(v)
        for p, (b, t) in zip(self._pivots, self._rows):
            c = acc.get(p)
            if c:
                for k, x in b.items():
                    nv = acc.get(k, 0) - c * x
                    if nv:
                        acc[k] = nv
                    else:
                        acc.pop(k, None)
                for i, x in t.items():
                    nv = out.get(i, 0) + c * x
                    if nv:
                        out[i] = nv
                    else:
                        out.pop(i, None)
        if acc:
            return None
        return out


# ---------------------------------------------------------------------------
# algebras

@dataclass(frozen=True, eq=False)
class RepAlgebra:
    name: str
    space: SpaceSpec
    generators: tuple
    preserved: tuple = ()
    has_center_scaling: bool = False
    is_complex_linear: bool = False
    is_quaternionic: bool = False
    factors: tuple = ()  # ((label, (generator indices...)), ...)
    check: bool = dc_field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "preserved", tuple(self.preserved))
        for g in self.generators:
            if g.shape != (self.dim_V, self.dim_V):
                raise RepError(f"generator shape {g.shape} on V of dim {self.dim_V}")
        if self.check:
            self.validate()

    @property
    def dim_V(self) -> int:
        return self.space.dim_V

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def field(self) -> str:
        return self.space.field

    @property
    def J(self):
        return self.space.J

    @cached_property
    def basis(self) -> GeneratorBasis:
        return GeneratorBasis(self.generators, self.dim_V, self.field)

    def coords(self, X) -> dict | None:
        return self.basis.coords(X)

    def factor_indices(self, label: str) -> tuple:
        for name, idx in self.factors:
            if name == label:
                return tuple(idx)
        raise KeyError(label)

    def validate(self):
        if self.generators:
            self.basis  # raises when dependent
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if self.coords(gens[i].bracket(gens[j])) is None:
                    raise RepError(f"{self.name}: bracket of generators {i},{j} leaves the span")
        for t in self.preserved:
            for g in gens:
                if not t.is_preserved_by(g):
                    raise RepError(f"{self.name}: a preserved tensor is not invariant")
        if self.is_complex_linear:
            if self.J is None:
                raise RepError("complex-linear algebra without J")
            for g in gens:
                if g @ self.J != self.J @ g:
                    raise RepError(f"{self.name}: generator does not commute with J")
        return True

    def renamed(self, name: str) -> "RepAlgebra":
        return RepAlgebra(name, self.space, self.generators, self.preserved,
                          self.has_center_scaling, self.is_complex_linear,
                          self.is_quaternionic, self.factors, check=False)

    def __repr__(self):
        return f"RepAlgebra({self.name!r}, dim={self.dim}, dim_V={self.dim_V})"


def _space(n: int, field: str = Q, **kw) -> SpaceSpec:
    return SpaceSpec(n, field, **kw)


# ---------------------------------------------------------------------------
# stabilizers and invariants

def stabilizer_of_tensor(n: int, field: str, T, mode: str | None = None,
                         name: str = "stab", extra: Sequence = (), check: bool = True,
                         space: SpaceSpec | None = None) -> RepAlgebra:
    """{A in gl(n) : A.T = 0} (exact) or {A : A.T in span T} (up-to-scale).

    ``T`` may be a single :class:`PreservedTensor` or a list of them; all
    conditions are imposed simultaneously.
    """
    tensors = [T] if isinstance(T, PreservedTensor) else list(T)
    tensors += list(extra)
    nn = n * n
    scale_cols = {}
    for t in tensors:
        m = t.mode if mode is None else mode
        if m == "up-to-scale":
            scale_cols[id(t)] = nn + len(scale_cols)
    ncols = nn + len(scale_cols)
    rows = []
    for t in tensors:
        block: dict = {}
        for idx, v in t.entries.items():
            for s, var in enumerate(t.variance):
                j = idx[s]
                for i in range(n):
                    key = idx[:s] + (i,) + idx[s + 1:]
                    if var == "V*":
                        col, c = j * n + i, -v
                    else:
                        col, c = i * n + j, v
                    row = block.setdefault(key, {})
                    row[col] = row.get(col, 0) + c
        if id(t) in scale_cols:
            sc = scale_cols[id(t)]
            for idx, v in t.entries.items():
                block.setdefault(idx, {})[sc] = block.get(idx, {}).get(sc, 0) - v
        keep = set(t.canonical_rows())
        for key in sorted(block):
            if key in keep:
                r = {c: x for c, x in block[key].items() if x}
                if r:
                    rows.append(r)
    M = ExactMatrix(len(rows), ncols, rows, field)
    ker = kernel(M)
    gens = []
    for b in ker.basis:
        a = {k: x for k, x in b.items() if k < nn}
        gens.append(ExactMatrix.unflatten(a, n, n, field))
    gens = _nice_basis(gens, n, field)
    preserved = tuple(t if mode is None else PreservedTensor(t.n, t.entries, t.degree, t.symmetry,
                                                             mode, t.variance) for t in tensors)
    return RepAlgebra(name, space or _space(n, field), gens, preserved, check=check)


def _nice_basis(gens: list, n: int, field: str) -> list:
    """Scale each generator to integer entries with content 1."""
    from .linalg import _to_int_row
    out = []
    for g in gens:
        if field == Q and g.nnz():
            v = _to_int_row(g.flatten())
            k0 = min(v)
            if v[k0] < 0:
                v = {k: -x for k, x in v.items()}
            out.append(ExactMatrix.unflatten(v, n, n, field))
        else:
            out.append(g)
    return out


def invariant_forms(rep: RepAlgebra, kind: str = "sym", degree: int = 2,
                    exact: bool = True) -> list:
    """Basis of g-invariant covariant tensors of the given symmetry type.

    Returns a list of full-entry dicts.
    """
    n = rep.dim_V
    basis = (list(combinations_with_replacement(range(n), degree)) if kind == "sym"
             else list(combinations(range(n), degree)))
    rows = []
    for A in rep.generators:
        block: dict = {}
        for c, m in enumerate(basis):
            t = PreservedTensor.build(n, degree, {m: 1}, kind)
            act = t.act(A)
            for key, v in act.items():
                if (kind == "sym" and list(key) == sorted(key)) or \
                        (kind == "alt" and all(key[x] < key[x + 1] for x in range(degree - 1))):
                    block.setdefault(key, {})[c] = v
        rows.extend(block[k] for k in sorted(block))
    M = ExactMatrix(len(rows), len(basis), rows, rep.field)
    ker = kernel(M)
    out = []
    for b in ker.basis:
        ent = {basis[c]: v for c, v in b.items()}
        out.append(PreservedTensor.build(n, degree, ent, kind).entries)
    return out


def signature(M: ExactMatrix) -> tuple:
    """(positive, negative) inertia of a rational symmetric matrix."""
    n = M.nrows
    a = [list(r) for r in M.dense()]
    pos = neg = 0
    for i in range(n):
        if a[i][i] == 0:
            j = next((j for j in range(i + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[i], a[j] = a[j], a[i]
                for r in a:
                    r[i], r[j] = r[j], r[i]
            else:
                j = next((j for j in range(i + 1, n) if a[i][j] != 0), None)
                if j is None:
                    continue
                # e_i -> e_i + e_j
                for k in range(n):
                    a[i][k] += a[j][k]
                for k in range(n):
                    a[k][i] += a[k][j]
        p = a[i][i]
        if p == 0:
            continue
        if p > 0:
            pos += 1
        else:
            neg += 1
        for r in range(i + 1, n):
            f = a[r][i] / p
            if f:
                for k in range(i, n):
                    a[r][k] -= f * a[i][k]
        for r in range(i + 1, n):
            a[i][r] = mpq(0)
            a[r][i] = mpq(0)
    return pos, neg


def invariant_metric(rep: RepAlgebra) -> ExactMatrix:
    forms = invariant_forms(rep, "sym", 2)
    if len(forms) != 1:
        raise RepError(f"expected a unique invariant metric, found {len(forms)}")
    return ExactMatrix.from_entries(rep.dim_V, rep.dim_V, forms[0], rep.field)


# ---------------------------------------------------------------------------
# classical algebras (standard representations)

def gl_n(n: int, field: str = "R") -> RepAlgebra:
    if field == "C":
        return realify(gl_n_complex(n), name=f"gl({n},C)")
    gens = [E(i, j, n) for i in range(n) for j in range(n)]
    return RepAlgebra(f"gl({n},R)", _space(n), gens, has_center_scaling=True)


def gl_n_complex(n: int) -> RepAlgebra:
    gens = [E(i, j, n, QI(1), QI_TAG) for i in range(n) for j in range(n)]
    return RepAlgebra(f"gl({n},C)", _space(n, QI_TAG), gens, has_center_scaling=True)


def _sl_gens(n: int, field: str = Q, one=1) -> list:
    gens = [E(i, j, n, one, field) for i in range(n) for j in range(n) if i != j]
    for i in range(n - 1):
        gens.append(diag([one if k == i else (-one if k == i + 1 else 0) for k in range(n)], field))
    return gens


def sl_n(n: int, field: str = "R") -> RepAlgebra:
    if n < 1:
        raise RepError("n >= 1 required")
    if field == "C":
        return realify(sl_n_complex(n), name=f"sl({n},C)")
    vol = PreservedTensor.build(n, n, {tuple(range(n)): 1}, "alt")
    return RepAlgebra(f"sl({n},R)", _space(n), _sl_gens(n), (vol,))


def sl_n_complex(n: int) -> RepAlgebra:
    return RepAlgebra(f"sl({n},C)", _space(n, QI_TAG), _sl_gens(n, QI_TAG, QI(1)))


def co_n(n: int) -> RepAlgebra:
    so = so_pq(n, 0)
    gens = list(so.generators) + [ExactMatrix.identity(n)]
    metric = PreservedTensor(n, so.preserved[0].entries, 2, "sym", "up-to-scale", ("V*", "V*"))
    return RepAlgebra(f"co({n},R)", _space(n), gens, (metric,), has_center_scaling=True)


def _signature_diag(p: int, q: int) -> list:
    return [1] * p + [-1] * q


def so_pq(p: int, q: int = 0) -> RepAlgebra:
    if p < 0 or q < 0 or p + q < 1:
        raise RepError(f"invalid signature ({p},{q})")
    n = p + q
    h = _signature_diag(p, q)
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            # A = E_ij - h_i h_j E_ji preserves diag(h)
            gens.append(E(i, j, n) - E(j, i, n, h[i] * h[j]))
    g = diag(h)
    metric = tensor_from_matrix(g, "sym")
    name = f"so({p})" if q == 0 else f"so({p},{q})"
    return RepAlgebra(name, _space(n, metric=g), gens, (metric,))


def so_n_complex(n: int) -> RepAlgebra:
    gens = [E(i, j, n, QI(1), QI_TAG) - E(j, i, n, QI(1), QI_TAG)
            for i in range(n) for j in range(i + 1, n)]
    g = ExactMatrix.identity(n, QI_TAG)
    return RepAlgebra(f"so({n},C)", _space(n, QI_TAG), gens, (tensor_from_matrix(g, "sym"),))


def so_n_C(n: int) -> RepAlgebra:
    """so(n,C) on C^n, realified to R^2n."""
    return realify(so_n_complex(n), name=f"so({n},C)")


def _hermitian_form(p: int, q: int) -> ExactMatrix:
    return diag([QI(x) for x in _signature_diag(p, q)], QI_TAG)


def u_pq_complex(p: int, q: int = 0, special: bool = False) -> RepAlgebra:
    """u(p,q) or su(p,q) as a real algebra of complex matrices on C^(p+q)."""
    n = p + q
    h = _signature_diag(p, q)
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            s = h[i] * h[j]
            gens.append(E(i, j, n, QI(1), QI_TAG) - E(j, i, n, QI(s), QI_TAG))
            gens.append(E(i, j, n, IMAG, QI_TAG) + E(j, i, n, IMAG * s, QI_TAG))
    if special:
        for i in range(n - 1):
            gens.append(diag([IMAG if k == i else (-IMAG if k == i + 1 else QI(0))
                              for k in range(n)], QI_TAG))
    else:
        for i in range(n):
            gens.append(E(i, i, n, IMAG, QI_TAG))
    nm = ("su" if special else "u") + (f"({p})" if q == 0 else f"({p},{q})")
    return RepAlgebra(nm, _space(n, QI_TAG), gens)


def su_pq(p: int, q: int = 0) -> RepAlgebra:
    if p + q < 1 or p < 0 or q < 0:
        raise RepError(f"invalid signature ({p},{q})")
    return realify(u_pq_complex(p, q, special=True), complex_algebra=False)


def u_n(n: int) -> RepAlgebra:
    return realify(u_pq_complex(n, 0, special=False), complex_algebra=False)


def _standard_eta(n: int, field: str = Q) -> ExactMatrix:
    """eta(e_i, f_i) = 1 on basis (e_1..e_n, f_1..f_n)."""
    one = coerce(1, field)
    rows = [{} for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = one
        rows[n + i][i] = -one
    return ExactMatrix(2 * n, 2 * n, rows, field)


def _sp_gens(n: int, field: str = Q) -> list:
    one = coerce(1, field)
    N = 2 * n
    gens = []
    # A in gl(n): diag(A, -A^T)
    for i in range(n):
        for j in range(n):
            gens.append(E(i, j, N, one, field) - E(n + j, n + i, N, one, field))
    # symmetric off-diagonal blocks
    for i in range(n):
        for j in range(i, n):
            B = E(i, n + j, N, one, field)
            C = E(n + i, j, N, one, field)
            if i != j:
                B = B + E(j, n + i, N, one, field)
                C = C + E(n + j, i, N, one, field)
            gens.append(B)
            gens.append(C)
    return gens


def sp_2n(n: int, field: str = "R") -> RepAlgebra:
    """sp(2n) on R^2n or (realified) C^2n; argument is the half-dimension."""
    if field == "C":
        return realify(sp_2n_complex(n), name=f"sp({2 * n},C)")
    eta = _standard_eta(n)
    return RepAlgebra(f"sp({2 * n},R)", _space(2 * n, eta=eta), _sp_gens(n),
                      (tensor_from_matrix(eta, "alt"),))


def sp_2n_complex(n: int) -> RepAlgebra:
    eta = _standard_eta(n, QI_TAG)
    return RepAlgebra(f"sp({2 * n},C)", _space(2 * n, QI_TAG), _sp_gens(n, QI_TAG),
                      (tensor_from_matrix(eta, "alt"),))


# ---------------------------------------------------------------------------
# quaternions

QUAT_UNITS = ("1", "i", "j", "k")


def _quat_mul_table():
    # e_a e_b = sign * e_c
    t = {}
    t[(0, 0)] = (1, 0)
    for a in (1, 2, 3):
        t[(0, a)] = (1, a)
        t[(a, 0)] = (1, a)
        t[(a, a)] = (-1, 0)
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        t[(a, b)] = (1, c)
        t[(b, a)] = (-1, c)
    return t


QMUL = _quat_mul_table()


def quat_left(q: Sequence) -> list:
    """4x4 rational matrix of x -> q x on H = R^4 (basis 1, i, j, k)."""
    M = [[mpq(0)] * 4 for _ in range(4)]
    for a in range(4):
        if not q[a]:
            continue
        for b in range(4):
            s, c = QMUL[(a, b)]
            M[c][b] += s * q[a]
    return M


def quat_right(q: Sequence) -> list:
    M = [[mpq(0)] * 4 for _ in range(4)]
    for a in range(4):
        if not q[a]:
            continue
        for b in range(4):
            s, c = QMUL[(b, a)]
            M[c][b] += s * q[a]
    return M


def quat_matrix(entries: Mapping, n: int) -> ExactMatrix:
    """Realify an n x n quaternionic matrix {(s,t): (a,b,c,d)} acting on the left."""
    rows = [{} for _ in range(4 * n)]
    for (s, t), q in entries.items():
        L = quat_left(q)
        for r in range(4):
            for c in range(4):
                if L[r][c]:
                    rows[4 * s + r][4 * t + c] = rows[4 * s + r].get(4 * t + c, 0) + L[r][c]
    return ExactMatrix(4 * n, 4 * n, rows)


def quaternion_triple(n: int) -> tuple:
    """J_1, J_2, J_3 = -(right multiplication by i, j, k) on H^n."""
    out = []
    for a in (1, 2, 3):
        q = [0, 0, 0, 0]
        q[a] = -1
        R = quat_right(q)
        rows = [{} for _ in range(4 * n)]
        for s in range(n):
            for r in range(4):
                for c in range(4):
                    if R[r][c]:
                        rows[4 * s + r][4 * s + c] = R[r][c]
        out.append(ExactMatrix(4 * n, 4 * n, rows))
    return tuple(out)


def _unit(a: int) -> tuple:
    q = [0, 0, 0, 0]
    q[a] = 1
    return tuple(q)


def sp_pq(p: int, q: int = 0) -> RepAlgebra:
    """sp(p,q): quaternionic matrices with A* H + H A = 0, H = diag(1^p, -1^q), on H^(p+q)."""
    n = p + q
    if n < 1 or p < 0 or q < 0:
        raise RepError(f"invalid signature ({p},{q})")
    h = _signature_diag(p, q)
    gens = []
    for s in range(n):
        for a in (1, 2, 3):
            gens.append(quat_matrix({(s, s): _unit(a)}, n))
    for s in range(n):
        for t in range(s + 1, n):
            eps = h[s] * h[t]
            for a in range(4):
                u = _unit(a)
                conj = tuple(-x if k else x for k, x in enumerate(u))
                gens.append(quat_matrix({(s, t): u, (t, s): tuple(-eps * x for x in conj)}, n))
    triple = quaternion_triple(n)
    nm = f"sp({p})" if q == 0 else f"sp({p},{q})"
    return RepAlgebra(nm, _space(4 * n, quaternion_triple=triple), gens, is_quaternionic=True)


def sl_n_H(n: int) -> RepAlgebra:
    gens = []
    for s in range(n):
        for t in range(n):
            for a in range(4):
                if s == t and a == 0:
                    continue
                gens.append(quat_matrix({(s, t): _unit(a)}, n))
    for s in range(n - 1):
        gens.append(quat_matrix({(s, s): _unit(0), (s + 1, s + 1): (-1, 0, 0, 0)}, n))
    return RepAlgebra(f"sl({n},H)", _space(4 * n, quaternion_triple=quaternion_triple(n)), gens,
                      is_quaternionic=True)


def gl_n_H(n: int) -> RepAlgebra:
    gens = [quat_matrix({(s, t): _unit(a)}, n) for s in range(n) for t in range(n) for a in range(4)]
    return RepAlgebra(f"gl({n},H)", _space(4 * n, quaternion_triple=quaternion_triple(n)), gens,
                      has_center_scaling=True, is_quaternionic=True)


# ---------------------------------------------------------------------------
# octonionic forms

ASSOCIATIVE_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 7, 5), (3, 7, 4), (3, 6, 5))


def _wick(entries: Mapping, rotated: set) -> dict:
    out = {}
    for idx, v in entries.items():
        k = sum(1 for i in idx if i in rotated)
        if k % 2:
            raise RepError("odd number of rotated indices")
        out[idx] = v * (-1) ** (k // 2)
    return out


def associative_form(split: bool = False) -> dict:
    """The 3-form phi on R^7 (indices 0..6), compact or split."""
    ent = {}
    for t in ASSOCIATIVE_TRIPLES:
        idx = tuple(sorted(i - 1 for i in t))
        ent[idx] = perm_sign([i - 1 for i in t])
    if split:
        ent = _wick(ent, {3, 4, 5, 6})
    return ent


def _hodge7(ent3: Mapping) -> dict:
    out = {}
    for idx, v in ent3.items():
        comp = tuple(i for i in range(7) if i not in idx)
        out[comp] = out.get(comp, 0) + v * perm_sign(tuple(idx) + comp)
    return out


def cayley_form(split: bool = False) -> dict:
    """Phi = e^0 ^ phi + *phi on R^8; split via a rotation of four axes."""
    phi = associative_form(False)
    ent = {}
    for idx, v in phi.items():
        ent[(0,) + tuple(i + 1 for i in idx)] = v
    for idx, v in _hodge7(phi).items():
        ent[tuple(i + 1 for i in idx)] = v
    if split:
        ent = _wick(ent, {4, 5, 6, 7})
    return ent


def _form_stabilizer(n: int, ent: Mapping, name: str, field: str = Q) -> RepAlgebra:
    deg = len(next(iter(ent)))
    ent = {k: coerce(v, field) for k, v in ent.items()}
    T = PreservedTensor.build(n, deg, ent, "alt")
    rep = stabilizer_of_tensor(n, field, T, "exact", name=name)
    return rep


def _with_metric(rep: RepAlgebra) -> RepAlgebra:
    g = invariant_metric(rep)
    return RepAlgebra(rep.name, rep.space.with_(metric=g), rep.generators,
                      rep.preserved + (tensor_from_matrix(g, "sym"),), check=False)


def g2(split: bool = False) -> RepAlgebra:
    rep = _form_stabilizer(7, associative_form(split), "g2~" if split else "g2")
    return _with_metric(rep)


def spin7(split: bool = False) -> RepAlgebra:
    rep = _form_stabilizer(8, cayley_form(split), "spin(4,3)" if split else "spin(7)")
    return _with_metric(rep)


def g2_C() -> RepAlgebra:
    rep = _form_stabilizer(7, associative_form(False), "g2(C)", QI_TAG)
    return realify(rep, name="g2(C)")


def spin7_C() -> RepAlgebra:
    rep = _form_stabilizer(8, cayley_form(False), "spin(7,C)", QI_TAG)
    return realify(rep, name="spin(7,C)")


def metric_signature(rep: RepAlgebra) -> tuple:
    """Sorted (larger, smaller) inertia of the unique invariant metric."""
    p, q = signature(invariant_metric(rep))
    return (max(p, q), min(p, q))


# ---------------------------------------------------------------------------
# derived representations

def _realify_matrix(A: ExactMatrix) -> ExactMatrix:
    n = A.nrows
    rows = [{} for _ in range(2 * n)]
    for i, r in enumerate(A.rows):
        for j, v in r.items():
            v = coerce(v, QI_TAG)
            if v.re:
                rows[i][j] = v.re
                rows[n + i][n + j] = v.re
            if v.im:
                rows[i][n + j] = -v.im
                rows[n + i][j] = v.im
    return ExactMatrix(2 * n, 2 * n, rows, Q)


def realify(rep: RepAlgebra, complex_algebra: bool = True, name: str | None = None) -> RepAlgebra:
    """View a representation on C^n as one on R^2n with J registered.

    With ``complex_algebra`` the algebra is treated as complex, so both A
    and iA become real generators.
    """
    if rep.field != QI_TAG:
        raise RepError("realify needs an algebra over Q(i)")
    n = rep.dim_V
    gens = []
    index_map = {}
    for k, A in enumerate(rep.generators):
        index_map[k] = [len(gens)]
        gens.append(_realify_matrix(A))
        if complex_algebra:
            index_map[k].append(len(gens))
            gens.append(_realify_matrix(A.scale(IMAG)))
    J = standard_complex_structure(n)
    factors = tuple((lab, tuple(x for i in idx for x in index_map[i])) for lab, idx in rep.factors)
    return RepAlgebra(name or rep.name, SpaceSpec(2 * n, Q, J=J), gens, (),
                      rep.has_center_scaling, True if complex_algebra or _commutes(gens, J) else False,
                      False, factors)


def _commutes(gens, J) -> bool:
    return all(g @ J == J @ g for g in gens)


def dual_rep(rep: RepAlgebra, name: str | None = None) -> RepAlgebra:
    gens = [-(g.T) for g in rep.generators]
    return RepAlgebra(name or rep.name + "*", SpaceSpec(rep.dim_V, rep.field), gens,
                      has_center_scaling=rep.has_center_scaling, factors=rep.factors, check=False)


def tensor_sum_rep(g1: RepAlgebra, g2_: RepAlgebra, name: str | None = None,
                   center: bool = False) -> RepAlgebra:
    """g1 (+) g2 acting on W (x) U by A (x) Id + Id (x) B, optionally with scalings."""
    from .linalg import kron
    if g1.field != g2_.field:
        raise RepError("field mismatch")
    w, u = g1.dim_V, g2_.dim_V
    Iw = ExactMatrix.identity(w, g1.field)
    Iu = ExactMatrix.identity(u, g1.field)
    gens = [kron(A, Iu) for A in g1.generators]
    n1 = len(gens)
    gens += [kron(Iw, B) for B in g2_.generators]
    factors = [(g1.name, tuple(range(n1))), (g2_.name, tuple(range(n1, len(gens))))]
    if center:
        factors.append(("center", (len(gens),)))
        gens.append(ExactMatrix.identity(w * u, g1.field))
    nm = name or f"{g1.name}*{g2_.name}" + ("+center" if center else "")
    return RepAlgebra(nm, SpaceSpec(w * u, g1.field), gens, has_center_scaling=center,
                      factors=tuple(factors))


def direct_sum_algebra(parts: Sequence[RepAlgebra], name: str) -> RepAlgebra:
    """Union of generator lists acting on the same V (a sum of commuting subalgebras)."""
    gens = []
    factors = []
    for p in parts:
        factors.append((p.name, tuple(range(len(gens), len(gens) + p.dim))))
        gens.extend(p.generators)
    return RepAlgebra(name, parts[0].space, gens, factors=tuple(factors))


def power_matrix(A: ExactMatrix, k: int, kind: str) -> ExactMatrix:
    """Derivation action of A on Sym^k or Lambda^k (monomial basis)."""
    n = A.nrows
    basis = (list(combinations_with_replacement(range(n), k)) if kind == "sym"
             else list(combinations(range(n), k)))
    idx = {m: c for c, m in enumerate(basis)}
    cols_A = A.columns()
    cols = []
    for m in basis:
        col: dict = {}
        for s in range(k):
            for i, a in cols_A[m[s]].items():
                new = m[:s] + (i,) + m[s + 1:]
                if kind == "alt":
                    sg = perm_sign(new)
                    if not sg:
                        continue
                    key = idx[tuple(sorted(new))]
                    col[key] = col.get(key, 0) + sg * a
                else:
                    key = idx[tuple(sorted(new))]
                    col[key] = col.get(key, 0) + a
        cols.append({c: v for c, v in col.items() if v})
    return ExactMatrix.from_columns(cols, len(basis), A.field)


def sym_power_rep(rep: RepAlgebra, k: int, name: str | None = None) -> RepAlgebra:
    gens = [power_matrix(A, k, "sym") for A in rep.generators]
    return RepAlgebra(name or f"{rep.name}@sym{k}", SpaceSpec(gens[0].nrows, rep.field), gens,
                      has_center_scaling=rep.has_center_scaling, factors=rep.factors)


def alt_power_rep(rep: RepAlgebra, k: int, name: str | None = None) -> RepAlgebra:
    gens = [power_matrix(A, k, "alt") for A in rep.generators]
    return RepAlgebra(name or f"{rep.name}@alt{k}", SpaceSpec(gens[0].nrows, rep.field), gens,
                      has_center_scaling=rep.has_center_scaling, factors=rep.factors)


def restrict_rep(rep: RepAlgebra, S: Subspace, name: str | None = None) -> RepAlgebra:
    """Action on an invariant subspace, in the coordinates of its canonical basis."""
    if S.ambient_dim != rep.dim_V:
        raise RepError("subspace ambient dimension differs from V")
    gens = []
    for A in rep.generators:
        cols = []
        for b in S.basis:
            c = S.coordinates(A.apply(b))
            if c is None:
                raise RepError("subspace is not invariant")
            cols.append({i: x for i, x in enumerate(c) if x})
        gens.append(ExactMatrix.from_columns(cols, S.dim, rep.field))
    return RepAlgebra(name or f"{rep.name}|{S.dim}", SpaceSpec(S.dim, rep.field), gens,
                      has_center_scaling=rep.has_center_scaling, factors=rep.factors)


def add_center(rep: RepAlgebra, name: str | None = None) -> RepAlgebra:
    n = rep.dim_V
    gens = list(rep.generators) + [ExactMatrix.identity(n, rep.field)]
    factors = tuple(rep.factors) + (("center", (len(gens) - 1,)),)
    return RepAlgebra(name or rep.name + "+center", rep.space, gens,
                      tuple(PreservedTensor(t.n, t.entries, t.degree, t.symmetry, "up-to-scale", t.variance)
                            for t in rep.preserved),
                      True, rep.is_complex_linear, rep.is_quaternionic, factors)


def add_complex_center(rep: RepAlgebra, name: str | None = None) -> RepAlgebra:
    """Adjoin Id and J (the complex scalings) to a realified algebra."""
    if rep.J is None:
        raise RepError("complex center needs J")
    n = rep.dim_V
    gens = list(rep.generators) + [ExactMatrix.identity(n), rep.J]
    factors = tuple(rep.factors) + (("center", (len(gens) - 2, len(gens) - 1)),)
    return RepAlgebra(name or rep.name + "+C", rep.space, gens, (), True, rep.is_complex_linear,
                      False, factors)


# ---------------------------------------------------------------------------
# symplectic-family representations

def sl2_sym3() -> RepAlgebra:
    """sl(2,R) on Sym^3 R^2 with its invariant symplectic form."""
    rep = sym_power_rep(sl_n(2), 3, name="sl(2,R)@sym3")
    return with_invariant_eta(rep)


def sl2_sym3_C() -> RepAlgebra:
    rep = sym_power_rep(sl_n_complex(2), 3, name="sl(2,C)@sym3")
    return with_invariant_eta(realify(rep, name="sl(2,C)@sym3"))


def sl2_so_pq(p: int, q: int = 0) -> RepAlgebra:
    rep = tensor_sum_rep(sl_n(2), so_pq(p, q),
                         name=f"sl(2,R)*so({p},{q})" if q else f"sl(2,R)*so({p})")
    return with_invariant_eta(rep)


def sl2_so_n_C(n: int) -> RepAlgebra:
    rep = tensor_sum_rep(sl_n_complex(2), so_n_complex(n))
    return with_invariant_eta(realify(rep, name=f"sl(2,C)*so({n},C)"))


def primitive_three_forms(n: int = 3) -> Subspace:
    """Kernel of contraction with omega on Lambda^3 R^2n (basis e_i, f_i)."""
    N = 2 * n
    basis = list(combinations(range(N), 3))
    # contraction: e_a^e_b^e_c -> sum over slot pairs of omega(x,y) times remaining vector
    omega = _standard_eta(n).dense()
    rows = [{} for _ in range(N)]
    for c, m in enumerate(basis):
        for s, t in ((0, 1), (0, 2), (1, 2)):
            w = omega[m[s]][m[t]]
            if w:
                rest = [m[k] for k in range(3) if k not in (s, t)][0]
                sign = perm_sign((m[s], m[t], rest))
                rows[rest][c] = rows[rest].get(c, 0) + sign * w
    M = ExactMatrix(N, len(basis), rows)
    return kernel(M)


def sp6_on_14() -> RepAlgebra:
    big = alt_power_rep(sp_2n(3), 3, name="sp(6,R)@alt3")
    S = primitive_three_forms(3)
    rep = restrict_rep(big, S, name="sp(6,R)@prim3")
    return with_invariant_eta(rep)


def with_invariant_eta(rep: RepAlgebra) -> RepAlgebra:
    """Register the invariant 2-form.  For a realified complex rep the real
    invariant forms are Re and Im of the complex one; either is the real part of
    a complex symplectic form, so the first basis element is taken."""
    forms = invariant_forms(rep, "alt", 2)
    if rep.J is not None and rep.is_complex_linear and len(forms) == 2:
        forms = forms[:1]
    if len(forms) != 1:
        raise RepError(f"{rep.name}: expected one invariant 2-form, found {len(forms)}")
    eta = ExactMatrix.from_entries(rep.dim_V, rep.dim_V, forms[0], rep.field)
    return RepAlgebra(rep.name, rep.space.with_(eta=eta), rep.generators,
                      rep.preserved + (tensor_from_matrix(eta, "alt"),),
                      rep.has_center_scaling, rep.is_complex_linear, rep.is_quaternionic,
                      rep.factors, check=False)


# ---------------------------------------------------------------------------
# generator files

def _fmt(x) -> str:
    return format_scalar(x)


def load_generator_data(data: Mapping, name: str = "stab") -> RepAlgebra:
    """Build an algebra from the generator-file structure.

    With an empty generator list and preserved tensors present, the algebra
    is the stabilizer of those tensors.
    """
    try:
        n = int(data["n"])
        field = data.get("field", Q)
        if field not in (Q, QI_TAG):
            raise RepError(f"bad field {field!r}")
        gens = []
        for g in data.get("generators", []):
            if len(g) != n or any(len(r) != n for r in g):
                raise RepError("generator has the wrong shape")
            gens.append(ExactMatrix.from_dense([[coerce(parse_scalar(str(x)), field) for x in r]
                                                for r in g], field))
        preserved = []
        for t in data.get("preserved", []):
            deg = int(t["degree"])
            ent = {}
            for e in t["entries"]:
                idx = tuple(int(i) for i in e[:deg])
                ent[idx] = coerce(parse_scalar(str(e[deg])), field)
            variance = t.get("variance")
            if variance is not None:
                variance = tuple("V" if v in ("V", "up", "upper") else "V*" for v in variance)
            preserved.append(PreservedTensor.build(n, deg, ent, t.get("symmetry", "none"),
                                                   t.get("mode", "exact"), variance))
    except (KeyError, TypeError) as exc:
        raise RepError(f"malformed generator data: {exc}") from exc
    if not gens and preserved:
        return stabilizer_of_tensor(n, field, preserved, None, name=name)
    return RepAlgebra(name, SpaceSpec(n, field), gens, tuple(preserved))


def load_generator_file(path, name: str | None = None) -> RepAlgebra:
    with open(path) as fh:
        data = json.load(fh)
    return load_generator_data(data, name or f"stab({path})")


def generator_data(rep: RepAlgebra) -> dict:
    data = {
        "n": rep.dim_V,
        "field": rep.field,
        "generators": [[[_fmt(x) for x in r] for r in g.dense()] for g in rep.generators],
        "preserved": [],
    }
    for t in rep.preserved:
        if t.symmetry == "sym":
            keys = [k for k in t.entries if list(k) == sorted(k)]
        elif t.symmetry == "alt":
            keys = [k for k in t.entries if list(k) == sorted(k)]
        else:
            keys = list(t.entries)
        data["preserved"].append({
            "degree": t.degree,
            "symmetry": t.symmetry,
            "mode": t.mode,
            "variance": list(t.variance),
            "entries": [list(k) + [_fmt(t.entries[k])] for k in sorted(keys)],
        })
    return data


def dump_generator_file(rep: RepAlgebra, path) -> None:
    with open(path, "w") as fh:
        json.dump(generator_data(rep), fh, indent=1, sort_keys=True)
        fh.write("\n")
