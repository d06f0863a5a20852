"""Sparse exact linear algebra over Q and Q(i).

Matrices keep one ``{col: value}`` dict per row.  Over Q, echelon forms are
computed fraction-free: rows are scaled to primitive integer vectors and
combined by cross-multiplication, with the content divided out after each
step.  Over Q(i) ordinary field elimination with unit pivots is used.

A :class:`Subspace` stores its basis in a canonical reduced echelon form in
which every basis vector carries a unit pivot at its *last* nonzero
coordinate and all other basis vectors vanish there.  That form is unique,
so subspace equality is equality of stored bases, and a kernel read off a
reduced row echelon form is already canonical.

``naive_rref`` / ``naive_kernel`` / ``naive_rank`` are a deliberately
separate dense Gaussian elimination over :class:`fractions.Fraction`, kept
as a test oracle.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import gcd, invert, mpq, mpz, next_prime

from .scalars import QI, QI_TAG, Q, coerce, common_field, field_of, format_scalar

Vec = dict  # sparse vector: {index: nonzero scalar}


class BadPrime(ArithmeticError):
    """A denominator is divisible by the chosen prime; draw another one."""


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# sparse vector helpers

def vec_add(a: Mapping, b: Mapping, scale=1) -> Vec:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + scale * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def vec_scale(a: Mapping, s) -> Vec:
    if not s:
        return {}
    return {k: v * s for k, v in a.items()}


def vec_clean(a: Mapping) -> Vec:
    return {k: v for k, v in a.items() if v}


def vec_from_dense(values: Sequence, field: str = Q) -> Vec:
    out = {}
    for i, v in enumerate(values):
        v = coerce(v, field)
        if v:
            out[i] = v
    return out


def vec_to_dense(v: Mapping, n: int, zero=None) -> list:
    z = mpq(0) if zero is None else zero
    out = [z] * n
    for k, x in v.items():
        out[k] = x
    return out


def vec_dot(a: Mapping, b: Mapping):
    if len(a) > len(b):
        a, b = b, a
    s = 0
    for k, v in a.items():
        w = b.get(k)
        if w is not None:
            s = s + v * w
    return s


# ---------------------------------------------------------------------------
# matrices

class ExactMatrix:
    """Immutable sparse matrix over Q or Q(i)."""

    __slots__ = ("nrows", "ncols", "field", "_rows", "_cols")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping] | None = None,
                 field: str | None = None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        if rows is None:
            rows = [{} for _ in range(self.nrows)]
        if len(rows) != self.nrows:
            raise DimensionMismatch("row count does not match nrows")
        if field is None:
            field = Q
            for r in rows:
                for v in r.values():
                    if isinstance(v, QI):
                        field = QI_TAG
                        break
                if field == QI_TAG:
                    break
        self.field = field
        self._rows = [{c: coerce(v, field) for c, v in r.items() if v} for r in rows]
        self._cols = None

    # construction -------------------------------------------------------
    @classmethod
    def from_dense(cls, data: Sequence[Sequence], field: str | None = None) -> "ExactMatrix":
        data = [list(r) for r in data]
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        if field is None:
            field = Q
            for r in data:
                for x in r:
                    if isinstance(x, QI) or (isinstance(x, str) and "i" in x):
                        field = QI_TAG
        rows = [vec_from_dense(r, field) for r in data]
        return cls(nrows, ncols, rows, field)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping], nrows: int,
                     field: str | None = None) -> "ExactMatrix":
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(nrows, len(columns), rows, field)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Mapping, field: str | None = None):
        rows = [{} for _ in range(nrows)]
        for (i, j), v in entries.items():
            if v:
                rows[i][j] = v
        return cls(nrows, ncols, rows, field)

    @classmethod
    def identity(cls, n: int, field: str = Q) -> "ExactMatrix":
        return cls(n, n, [{i: 1} for i in range(n)], field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: str = Q) -> "ExactMatrix":
        return cls(nrows, ncols, None, field)

    # access ---------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i: int) -> Mapping:
        return self._rows[i]

    @property
    def rows(self) -> list:
        return self._rows

    def columns(self) -> list:
        if self._cols is None:
            cols = [{} for _ in range(self.ncols)]
            for i, r in enumerate(self._rows):
                for j, v in r.items():
                    cols[j][i] = v
            self._cols = cols
        return self._cols

    def column(self, j: int) -> Mapping:
        return self.columns()[j]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, self.zero)

    @property
    def zero(self):
        return QI(0) if self.field == QI_TAG else mpq(0)

    def entries(self):
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                yield (i, j), v

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def dense(self) -> list:
        return [vec_to_dense(r, self.ncols, self.zero) for r in self._rows]

    def is_zero(self) -> bool:
        return all(not r for r in self._rows)

    def to_field(self, field: str) -> "ExactMatrix":
        if field == self.field:
            return self
        return ExactMatrix(self.nrows, self.ncols, self._rows, field)

    # algebra --------------------------------------------------------------
    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.ncols, self.nrows, [dict(c) for c in self.columns()], self.field)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            orows = other._rows
            out = []
            for r in self._rows:
                acc = {}
                for k, a in r.items():
                    for j, b in orows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.append(vec_clean(acc))
            return ExactMatrix(self.nrows, other.ncols, out,
                               common_field(self.field, other.field))
        return self.apply(other)

    def apply(self, v: Mapping) -> Vec:
        """Matrix times sparse vector."""
        if len(v) * 4 < self.ncols:
            acc = {}
            cols = self.columns()
            for k, x in v.items():
                for i, a in cols[k].items():
                    acc[i] = acc.get(i, 0) + a * x
            return vec_clean(acc)
        out = {}
        for i, r in enumerate(self._rows):
            s = vec_dot(r, v)
            if s:
                out[i] = s
        return out

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return ExactMatrix(self.nrows, self.ncols,
                           [vec_add(a, b) for a, b in zip(self._rows, other._rows)],
                           common_field(self.field, other.field))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return ExactMatrix(self.nrows, self.ncols,
                           [vec_add(a, b, -1) for a, b in zip(self._rows, other._rows)],
                           common_field(self.field, other.field))

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def scale(self, s) -> "ExactMatrix":
        field = common_field(self.field, field_of(s))
        return ExactMatrix(self.nrows, self.ncols, [vec_scale(r, s) for r in self._rows], field)

    def __mul__(self, s):
        if isinstance(s, ExactMatrix):
            return self @ s
        return self.scale(s)

    __rmul__ = scale

    def bracket(self, other: "ExactMatrix") -> "ExactMatrix":
        return self @ other - other @ self

    def trace(self):
        s = self.zero
        for i, r in enumerate(self._rows):
            s = s + r.get(i, 0)
        return s

    def flatten(self) -> Vec:
        """Row-major flattening into a sparse vector of length nrows*ncols."""
        n = self.ncols
        return {i * n + j: v for i, r in enumerate(self._rows) for j, v in r.items()}

    @classmethod
    def unflatten(cls, v: Mapping, nrows: int, ncols: int, field: str | None = None):
        rows = [{} for _ in range(nrows)]
        for k, x in v.items():
            rows[k // ncols][k % ncols] = x
        return cls(nrows, ncols, rows, field)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.nrows != other.nrows:
            raise DimensionMismatch("hstack row mismatch")
        off = self.ncols
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for j, v in b.items():
                r[j + off] = v
            rows.append(r)
        return ExactMatrix(self.nrows, self.ncols + other.ncols, rows,
                           common_field(self.field, other.field))

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("vstack column mismatch")
        return ExactMatrix(self.nrows + other.nrows, self.ncols, self._rows + other._rows,
                           common_field(self.field, other.field))

    def submatrix_columns(self, cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix.from_columns([self.column(j) for j in cols], self.nrows, self.field)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self._rows, other._rows))

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted((k, hash(v)) for k, v in r.items()))
                                       for r in self._rows)))

    def __repr__(self):
        if self.nrows * self.ncols <= 64:
            body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.dense())
            return f"ExactMatrix({self.nrows}x{self.ncols}, {self.field}: [{body}])"
        return f"ExactMatrix({self.nrows}x{self.ncols}, {self.field}, nnz={self.nnz()})"


def as_rows(M) -> tuple[list, int, str]:
    if isinstance(M, ExactMatrix):
        return M.rows, M.ncols, M.field
    raise TypeError(f"expected ExactMatrix, got {type(M).__name__}")


def block_diag(*mats: ExactMatrix) -> ExactMatrix:
    rows = []
    off = 0
    field = common_field(*(m.field for m in mats)) if mats else Q
    for m in mats:
        for r in m.rows:
            rows.append({j + off: v for j, v in r.items()})
        off += m.ncols
    return ExactMatrix(len(rows), off, rows, field)


def kron(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    rows = []
    for ra in A.rows:
        for rb in B.rows:
            r = {}
            for ja, a in ra.items():
                base = ja * B.ncols
                for jb, b in rb.items():
                    r[base + jb] = a * b
            rows.append(r)
    return ExactMatrix(A.nrows * B.nrows, A.ncols * B.ncols, rows,
                       common_field(A.field, B.field))


# ---------------------------------------------------------------------------
# elimination kernels

def _to_int_row(row: Mapping) -> dict:
    den = mpz(1)
    for v in row.values():
        d = mpq(v).denominator
        if d != 1:
            den = den * d // gcd(den, d)
    out = {}
    g = mpz(0)
    for k, v in row.items():
        x = mpq(v) * den
        iv = x.numerator
        out[k] = iv
        g = gcd(g, iv)
    if g > 1:
        for k in out:
            out[k] //= g
    return out


def _echelon_int(rows: Iterable[Mapping]) -> dict:
    """Fraction-free echelon over Z.  Returns {pivot_col: primitive row}.

    Every stored row has its pivot at its minimal column, with a positive
    pivot entry, so the pivot set equals the set of leading columns of the
    row space.
    """
    pivots: dict = {}
    for src in rows:
        if not src:
            continue
        r = _to_int_row(src)
        while r:
            c = min(r)
            pr = pivots.get(c)
            if pr is None:
                break
            a = r[c]
            p = pr[c]
            g = gcd(a, p)
            if g != 1:
                a //= g
                p //= g
            if p != 1:
                new = {k: v * p for k, v in r.items()}
            else:
                new = r
            for k, v in pr.items():
                nv = new.get(k, 0) - a * v
                if nv:
                    new[k] = nv
                else:
                    del new[k]
            if new:
                cg = mpz(0)
                for v in new.values():
                    cg = gcd(cg, v)
                    if cg == 1:
                        break
                if cg > 1:
                    new = {k: v // cg for k, v in new.items()}
            r = new
        if r:
            c = min(r)
            if r[c] < 0:
                r = {k: -v for k, v in r.items()}
            pivots[c] = r
    return pivots


def _echelon_field(rows: Iterable[Mapping], field: str) -> dict:
    """Echelon over a field with unit pivots at the minimal column."""
    pivots: dict = {}
    for src in rows:
        if not src:
            continue
        r = {k: coerce(v, field) for k, v in src.items() if v}
        while r:
            c = min(r)
            pr = pivots.get(c)
            if pr is None:
                break
            a = r[c]
            for k, v in pr.items():
                nv = r.get(k, 0) - a * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if r:
            c = min(r)
            inv = 1 / r[c]
            pivots[c] = {k: v * inv for k, v in r.items()}
    return pivots


def _echelon_mod(rows: Iterable[Mapping], p: int) -> dict:
    pivots: dict = {}
    for r in rows:
        r = {k: v for k, v in r.items() if v}
        while r:
            c = min(r)
            pr = pivots.get(c)
            if pr is None:
                break
            a = r[c]
            for k, v in pr.items():
                nv = (r.get(k, 0) - a * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if r:
            c = min(r)
            inv = int(invert(r[c], p))
            pivots[c] = {k: v * inv % p for k, v in r.items()}
    return pivots


def _echelon(rows, field: str) -> dict:
    if field == Q:
        return _echelon_int(rows)
    return _echelon_field(rows, field)


def _rref_from_echelon(pivots: dict, field: str) -> dict:
    """Back-substitute an echelon form into reduced row echelon form."""
    reduced: dict = {}
    for pc in sorted(pivots, reverse=True):
        r = pivots[pc]
        lead = r[pc]
        if field == Q:
            inv = mpq(1, lead)
            r = {k: mpq(v) * inv for k, v in r.items()} if lead != 1 else {k: mpq(v) for k, v in r.items()}
        elif lead != 1:
            inv = 1 / lead
            r = {k: v * inv for k, v in r.items()}
        else:
            r = dict(r)
        for c in [k for k in r if k != pc and k in reduced]:
            a = r.get(c)
            if not a:
                continue
            for k, v in reduced[c].items():
                nv = r.get(k, 0) - a * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        reduced[pc] = r
    return reduced


def rref_rows(rows: Iterable[Mapping], field: str = Q) -> dict:
    """Reduced row echelon form as {pivot_col: row} (leading unit pivots)."""
    return _rref_from_echelon(_echelon(rows, field), field)


def _kernel_vectors_from_rref(reduced: dict, ncols: int, field: str) -> list:
    one = QI(1) if field == QI_TAG else mpq(1)
    free = [c for c in range(ncols) if c not in reduced]
    vecs = {f: {f: one} for f in free}
    for pc, r in reduced.items():
        for c, v in r.items():
            if c != pc:
                vecs[c][pc] = -v
    return [vecs[f] for f in free]


# ---------------------------------------------------------------------------
# subspaces

class Subspace:
    """Subspace of an ambient coordinate space, canonical basis.

    Basis vectors are sparse dicts.  Vector ``i`` has a unit entry at
    ``pivots[i]``, which is its last nonzero coordinate; every other basis
    vector is zero there.  Pivots increase with ``i``.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "field", "descriptor", "_pivot_index")

    def __init__(self, ambient_dim: int, basis: Sequence[Mapping], pivots: Sequence[int],
                 field: str = Q, descriptor=None):
        self.ambient_dim = ambient_dim
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)
        self.field = field
        self.descriptor = descriptor
        self._pivot_index = {p: i for i, p in enumerate(self.pivots)}

    @classmethod
    def span(cls, vectors: Iterable[Mapping], ambient_dim: int, field: str | None = None,
             descriptor=None) -> "Subspace":
        vectors = [v for v in vectors if v]
        if field is None:
            field = Q
            for v in vectors:
                if any(isinstance(x, QI) for x in v.values()):
                    field = QI_TAG
                    break
        n = ambient_dim
        flipped = [{n - 1 - k: x for k, x in v.items()} for v in vectors]
        reduced = rref_rows(flipped, field)
        basis = []
        pivots = []
        for pc in sorted(reduced, reverse=True):
            r = reduced[pc]
            basis.append({n - 1 - k: x for k, x in r.items()})
            pivots.append(n - 1 - pc)
        return cls(n, basis, pivots, field, descriptor)

    @classmethod
    def zero(cls, ambient_dim: int, field: str = Q) -> "Subspace":
        return cls(ambient_dim, [], [], field)

    @classmethod
    def full(cls, ambient_dim: int, field: str = Q) -> "Subspace":
        one = QI(1) if field == QI_TAG else mpq(1)
        return cls(ambient_dim, [{i: one} for i in range(ambient_dim)], range(ambient_dim), field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def reduce(self, v: Mapping) -> Vec:
        """Remainder of ``v`` after subtracting its component along the basis."""
        r = dict(v)
        for p, b in zip(reversed(self.pivots), reversed(self.basis)):
            a = r.get(p)
            if a:
                for k, x in b.items():
                    nv = r.get(k, 0) - a * x
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        return r

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def __contains__(self, v):
        return self.contains(v)

    def coordinates(self, v: Mapping) -> list | None:
        """Coefficients of ``v`` in the stored basis, or ``None`` if outside."""
        coeffs = [v.get(p, 0) for p in self.pivots]
        acc = dict(v)
        for c, b in zip(coeffs, self.basis):
            if c:
                for k, x in b.items():
                    nv = acc.get(k, 0) - c * x
                    if nv:
                        acc[k] = nv
                    else:
                        acc.pop(k, None)
        if acc:
            return None
        return coeffs

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def combine(self, coeffs: Sequence) -> Vec:
        out = {}
        for c, b in zip(coeffs, self.basis):
            if c:
                out = vec_add(out, b, c)
        return out

    def basis_matrix(self) -> ExactMatrix:
        """Ambient x dim matrix whose columns are the basis vectors."""
        return ExactMatrix.from_columns(self.basis, self.ambient_dim, self.field)

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim,
                             common_field(self.field, other.field))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.field)
        # x = sum a_i s_i = sum b_j o_j; kernel of [S | -O]
        cols = list(self.basis) + [vec_scale(b, -1) for b in other.basis]
        field = common_field(self.field, other.field)
        M = ExactMatrix.from_columns(cols, self.ambient_dim, field)
        ker = kernel(M)
        vecs = []
        for k in ker.basis:
            vecs.append(self.combine([k.get(i, 0) for i in range(self.dim)]))
        return Subspace.span(vecs, self.ambient_dim, field)

    __and__ = intersect

    def image_under(self, M: ExactMatrix) -> "Subspace":
        return Subspace.span([M.apply(b) for b in self.basis], M.nrows, M.field)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.pivots == other.pivots
                and all(a == b for a, b in zip(self.basis, other.basis)))

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.field})"


# ---------------------------------------------------------------------------
# public operations

def rank(M: ExactMatrix) -> int:
    rows, _, field = as_rows(M)
    return len(_echelon(rows, field))


def kernel(M: ExactMatrix) -> Subspace:
    """Exact null space.  A 0 x n matrix has the full space as kernel."""
    rows, ncols, field = as_rows(M)
    reduced = rref_rows(rows, field)
    vecs = _kernel_vectors_from_rref(reduced, ncols, field)
    # kernel vectors read off an RREF are already in canonical trailing form
    return Subspace(ncols, vecs, [c for c in range(ncols) if c not in reduced], field)


def image(M: ExactMatrix) -> Subspace:
    return Subspace.span(M.columns(), M.nrows, M.field)


def row_space(M: ExactMatrix) -> Subspace:
    return Subspace.span(M.rows, M.ncols, M.field)


def solve(M: ExactMatrix, b) -> Vec | None:
    """One solution of ``M x = b`` or ``None`` when inconsistent."""
    if isinstance(b, Mapping):
        bv = dict(b)
        if bv and max(bv) >= M.nrows:
            raise DimensionMismatch("right-hand side longer than row count")
    else:
        b = list(b)
        if len(b) != M.nrows:
            raise DimensionMismatch(f"rhs has length {len(b)}, matrix has {M.nrows} rows")
        bv = vec_from_dense(b, common_field(M.field, *(field_of(x) for x in b)))
    field = common_field(M.field, *(field_of(x) for x in bv.values()))
    n = M.ncols
    aug = []
    for i, r in enumerate(M.rows):
        row = dict(r)
        if i in bv:
            row[n] = bv[i]
        aug.append(row)
    reduced = rref_rows(aug, field)
    if n in reduced:
        return None
    x = {}
    for pc, r in reduced.items():
        v = r.get(n)
        if v:
            x[pc] = v
    return x


def intersect(A: Subspace, B: Subspace) -> Subspace:
    return A.intersect(B)


def is_injective(M: ExactMatrix) -> bool:
    return rank(M) == M.ncols


def inverse(M: ExactMatrix) -> ExactMatrix:
    if M.nrows != M.ncols:
        raise DimensionMismatch("inverse of non-square matrix")
    n = M.nrows
    aug = [dict(r) | {n + i: 1} for i, r in enumerate(M.rows)]
    reduced = rref_rows(aug, M.field)
    if any(c not in reduced for c in range(n)):
        raise ZeroDivisionError("singular matrix")
    rows = [{k - n: v for k, v in reduced[i].items() if k >= n} for i in range(n)]
    return ExactMatrix(n, n, rows, M.field)


def determinant(M: ExactMatrix):
    """Exact determinant by unit-pivot elimination with row swaps tracked."""
    if M.nrows != M.ncols:
        raise DimensionMismatch("determinant of non-square matrix")
    field = M.field
    a = [{k: coerce(v, field) for k, v in r.items()} for r in M.rows]
    det = coerce(1, field)
    n = M.nrows
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i].get(c)), None)
        if piv is None:
            return coerce(0, field)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det = det * p
        for i in range(c + 1, n):
            f = a[i].get(c)
            if f:
                a[i] = vec_add(a[i], a[c], -f / p)
    return det


# ---------------------------------------------------------------------------
# modular ranks

def _sqrt_minus_one(p: int) -> int:
    for g in range(2, p):
        x = pow(g, (p - 1) // 4, p)
        if x * x % p == p - 1:
            return x
    raise ValueError(f"no square root of -1 mod {p}")


def _reduce_scalar(x, p: int, i_mod: int | None) -> int:
    if isinstance(x, QI):
        if i_mod is None:
            raise ValueError("Gaussian rationals need a prime = 1 mod 4")
        return (_reduce_scalar(x.re, p, None) + i_mod * _reduce_scalar(x.im, p, None)) % p
    x = mpq(x)
    d = int(x.denominator)
    if d % p == 0:
        raise BadPrime(f"denominator divisible by {p}")
    return int(x.numerator) * pow(d, -1, p) % p


def reduce_mod(M: ExactMatrix, prime: int) -> list:
    i_mod = _sqrt_minus_one(prime) if M.field == QI_TAG else None
    out = []
    for r in M.rows:
        row = {}
        for k, v in r.items():
            x = _reduce_scalar(v, prime, i_mod)
            if x:
                row[k] = x
        out.append(row)
    return out


def modular_rank(M: ExactMatrix, prime: int) -> int:
    """Rank of ``M`` reduced mod ``prime``; a lower bound for the exact rank.

    Raises :class:`BadPrime` when some denominator is not invertible.
    """
    if M.field == QI_TAG and prime % 4 != 1:
        raise BadPrime("Gaussian rationals need a prime = 1 mod 4")
    return len(_echelon_mod(reduce_mod(M, prime), prime))


def modular_kernel_dim(M: ExactMatrix, prime: int) -> int:
    return M.ncols - modular_rank(M, prime)


def random_prime(rng: random.Random, lo: int = 1 << 20, hi: int = 1 << 31,
                 residue_one_mod4: bool = False) -> int:
    while True:
        p = int(next_prime(rng.randrange(lo, hi)))
        if p >= hi:
            continue
        if residue_one_mod4 and p % 4 != 1:
            continue
        return p


def probabilistic_rank(M: ExactMatrix, agree: int = 2, seed: int = 0,
                       max_primes: int = 12) -> tuple[int, list]:
    """Rank from modular images, accepted once ``agree`` primes give the maximum.

    The modular rank never exceeds the exact rank, so the maximum seen is
    the best lower bound; it is reported together with the primes used.
    """
    rng = random.Random(seed)
    seen: list[tuple[int, int]] = []
    while len(seen) < max_primes:
        p = random_prime(rng, residue_one_mod4=(M.field == QI_TAG))
        try:
            r = modular_rank(M, p)
        except BadPrime:
            continue
        seen.append((p, r))
        best = max(x for _, x in seen)
        if sum(1 for _, x in seen if x == best) >= agree:
            return best, [q for q, x in seen if x == best]
    best = max(x for _, x in seen)
    return best, [q for q, x in seen if x == best]


# ---------------------------------------------------------------------------
# independent dense oracle (fractions.Fraction, no shared code paths)

def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    x = mpq(x)
    return Fraction(int(x.numerator), int(x.denominator))


def naive_rref(matrix: Sequence[Sequence]) -> tuple[list, list]:
    """Textbook Gauss-Jordan on a dense list-of-lists; returns (rref, pivot columns)."""
    a = [[_frac(x) for x in row] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def naive_rank(matrix: Sequence[Sequence]) -> int:
    return len(naive_rref(matrix)[1])


def naive_kernel(matrix: Sequence[Sequence], ncols: int | None = None) -> list:
    """Dense kernel basis (list of Fraction lists), one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    a, pivots = naive_rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_i, pc in enumerate(pivots):
            v[pc] = -a[row_i][f]
        basis.append(v)
    return basis
