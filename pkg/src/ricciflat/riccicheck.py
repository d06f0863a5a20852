"""Ricci trace on K(g), the classification verdict, and the trace identities."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .linalg import ExactMatrix, kernel, probabilistic_rank, rank
from .repcatalog import RepAlgebra
from .spencer import boundary_K, spencer_modules
from .tensoralg import pairs

RICCI_TYPE = "RicciType"
TRACE_FREE = "TraceFree"
MIXED = "Mixed"
FLAT_ONLY = "FlatOnly"
VERDICTS = (RICCI_TYPE, TRACE_FREE, MIXED, FLAT_ONLY)


def ricci_ambient(g: RepAlgebra) -> ExactMatrix:
    """Ric(k)(x, y) = trace(z -> k(z, x)y) on Lambda^2 V* (x) g; row x*n + y."""
    n, d = g.dim_V, g.dim
    cols = []
    for a, b in pairs(n):
        for i in range(d):
            G = g.generators[i]
            col = {}
            for y, v in G.row(a).items():
                col[b * n + y] = v
            for y, v in G.row(b).items():
                col[a * n + y] = col.get(a * n + y, 0) - v
            cols.append({k: v for k, v in col.items() if v})
    return ExactMatrix.from_columns(cols, n * n, g.field)


def ricci_matrix(g: RepAlgebra, K) -> ExactMatrix:
    """The Ricci trace restricted to K, in the coordinates of K's basis."""
    return ricci_ambient(g) @ K.basis_matrix()


def volume_trace_ambient(g: RepAlgebra) -> ExactMatrix:
    """k -> ((x, y) -> trace k(x, y)) onto Lambda^2 V*."""
    n, d = g.dim_V, g.dim
    traces = [G.trace() for G in g.generators]
    cols = []
    for p in range(len(pairs(n))):
        for i in range(d):
            cols.append({p: traces[i]} if traces[i] else {})
    return ExactMatrix.from_columns(cols, len(pairs(n)), g.field)


def ricci_tensor(g: RepAlgebra, k: dict) -> list:
    """Ric(k) as a dense n x n list."""
    n = g.dim_V
    v = ricci_ambient(g).apply(k)
    R = [[0] * n for _ in range(n)]
    for f, x in v.items():
        R[f // n][f % n] = x
    return R


def volume_trace(g: RepAlgebra, k: dict) -> dict:
    return volume_trace_ambient(g).apply(k)


def skew_ricci(g: RepAlgebra, k: dict) -> dict:
    """(x<y) -> Ric(k)(x,y) - Ric(k)(y,x)."""
    n = g.dim_V
    R = ricci_tensor(g, k)
    out = {}
    for p, (x, y) in enumerate(pairs(n)):
        s = R[x][y] - R[y][x]
        if s:
            out[p] = s
    return out


def _ratio(lhs: dict, rhs: dict):
    """The scalar c with lhs = c * rhs, None if rhs = 0 = lhs, False if none exists."""
    if not rhs:
        return None if not lhs else False
    k0 = next(iter(rhs))
    c = lhs.get(k0, 0) / rhs[k0]
    keys = set(lhs) | set(rhs)
    if all(lhs.get(k, 0) == c * rhs.get(k, 0) for k in keys):
        return c
    return False


def volume_sigma(g: RepAlgebra, k: dict):
    """The sigma with volume_trace(k) = sigma * (Ric - Ric^T); None when both vanish."""
    return _ratio(volume_trace(g, k), skew_ricci(g, k))


def _apply_form(J: ExactMatrix) -> list:
    return J.dense()


def complex_volume_trace(g: RepAlgebra, k: dict) -> tuple:
    """(re, im): re = skew part of Ric(k), im(x,y) = trace(J k(x,y))."""
    J = g.J
    if J is None:
        raise ValueError(f"{g.name}: complex structure J missing")
    d = g.dim
    jtr = [(J @ G).trace() for G in g.generators]
    im = {}
    for col, c in k.items():
        p, i = divmod(col, d)
        if jtr[i]:
            im[p] = im.get(p, 0) + c * jtr[i]
    im = {p: v for p, v in im.items() if v}
    return skew_ricci(g, k), im


def ricci_J_skew(g: RepAlgebra, k: dict) -> dict:
    """Skew part of S(x, y) = Ric(k)(x, Jy)."""
    n = g.dim_V
    R = ricci_tensor(g, k)
    Jd = g.J.dense()
    S = [[sum(R[x][z] * Jd[z][y] for z in range(n)) for y in range(n)] for x in range(n)]
    out = {}
    for p, (x, y) in enumerate(pairs(n)):
        s = S[x][y] - S[y][x]
        if s:
            out[p] = s
    return out


def complex_sigma(g: RepAlgebra, k: dict):
    _, im = complex_volume_trace(g, k)
    return _ratio(im, ricci_J_skew(g, k))


# ---------------------------------------------------------------------------
# records

@dataclass
class ClassificationRecord:
    algebra_name: str
    dim_V: int
    dim_g: int
    dim_g1: int
    dim_K: int
    dim_ricci_image: int
    dim_ricci_kernel: int
    h12_dim: int
    verdict: str
    provenance: str = "exact"
    dim_dK_image: int = 0

    def __post_init__(self):
        if self.dim_ricci_image + self.dim_ricci_kernel != self.dim_K:
            raise ValueError("Ricci image and kernel dims do not add up to dim K")
        if self.verdict != verdict_for(self.dim_K, self.dim_ricci_image, self.dim_ricci_kernel):
            raise ValueError("verdict inconsistent with dimensions")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ClassificationRecord":
        names = cls.__dataclass_fields__
        return cls(**{k: v for k, v in d.items() if k in names})


def verdict_for(dim_K: int, image: int, kernel_dim: int) -> str:
    if dim_K == 0:
        return FLAT_ONLY
    if kernel_dim == 0:
        return RICCI_TYPE
    if image == 0:
        return TRACE_FREE
    return MIXED


def classify(g: RepAlgebra, budget: int | None = None, probabilistic: bool = False,
             primes: int = 2, seed: int = 0) -> ClassificationRecord:
    """Spencer data plus Ricci image/kernel dims and the verdict.

    When the boundary matrix exceeds ``budget`` entries, ``probabilistic``
    switches to modular ranks and the record says so; otherwise
    :class:`BudgetExceeded` is raised.
    """
    sm = spencer_modules(g, budget, probabilistic, primes, seed)
    if sm.provenance == "exact":
        R = ricci_matrix(g, sm.K)
        img = rank(R)
        ker = sm.dim_K - img
    else:
        stacked = boundary_K(g).vstack(ricci_ambient(g))
        r, _ = probabilistic_rank(stacked, agree=primes, seed=seed + 2)
        ker = stacked.ncols - r
        img = sm.dim_K - ker
    return ClassificationRecord(g.name, g.dim_V, g.dim, sm.dim_g1, sm.dim_K, img, ker,
                                sm.h12_dim, verdict_for(sm.dim_K, img, ker), sm.provenance,
                                sm.dim_dK)


def ricci_kernel(g: RepAlgebra, K):
    """ker(Ric) inside K, as vectors in Lambda^2 V* (x) g coordinates."""
    R = ricci_matrix(g, K)
    N = kernel(R)
    return [K.combine([v.get(i, 0) for i in range(K.dim)]) for v in N.basis]
