"""A small text language for naming representations, and the built-in catalog.

Grammar (whitespace ignored)::

    spec    := product ("+center" | "+ccenter")?
    product := factor ("*" factor)*
    factor  := base ("@" rep)?
    base    := name "(" args ")" | name | "stab(" path ")"
    rep     := "std" | "dual" | "sym" k | "alt" k | "prim3"

Examples: ``so(3,1)``, ``su(3)``, ``sl(3,R)``, ``sp(4,C)``, ``gl(3,R)@sym2``,
``sl(6,R)@alt3``, ``sp(6,R)@prim3``, ``sl(2,R)*so(3)+center``, ``stab(g.json)``.

Complex algebras (``sl(n,C)``, ``so(n,C)``, ``sp(2n,C)``, ``g2(C)``,
``spin7(C)``) are realified after representations and products are formed,
so ``sl(2,C)*so(3,C)`` is the complex tensor product seen as a real algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import repcatalog as rc
from .riccicheck import FLAT_ONLY, MIXED, RICCI_TYPE, TRACE_FREE


class SpecError(ValueError):
    """The text does not parse or names an unknown algebra."""


@dataclass(frozen=True)
class Factor:
    name: str
    args: tuple = ()
    rep: str = "std"

    def text(self) -> str:
        if self.name == "stab":
            base = f"stab({self.args[0]})"
        elif self.args:
            base = f"{self.name}({','.join(self.args)})"
        else:
            base = self.name
        return base if self.rep == "std" else f"{base}@{self.rep}"


@dataclass(frozen=True)
class AlgebraSpec:
    factors: tuple
    center: str = ""  # "", "center" or "ccenter"

    def text(self) -> str:
        s = "*".join(f.text() for f in self.factors)
        return s + (f"+{self.center}" if self.center else "")

    def __str__(self) -> str:
        return self.text()

    def build(self) -> rc.RepAlgebra:
        return build(self)


_BASE = re.compile(r"^(?P<name>[a-z][a-z0-9_\-]*)(\((?P<args>[^()]*)\))?$")
_REP = re.compile(r"^(std|dual|sym[1-9]\d*|alt[1-9]\d*|prim3)$")
_FIELD_ARGS = {"so": ("R", "C"), "sl": ("R", "C", "H"), "gl": ("R", "C", "H"), "sp": ("R", "C")}
_INT_ONLY = {"so": (1, 2), "su": (1, 2), "u": (1, 1), "co": (1, 1), "sp": (1, 2)}
_CONSTANT = {"g2": ((), ("C",)), "split-g2": ((),), "spin7": ((), ("C",)), "e6": ((),)}


def parse(text: str) -> AlgebraSpec:
    s = "".join(text.split())
    if not s:
        raise SpecError("empty algebra spec")
    center = ""
    for c in ("ccenter", "center"):
        if s.endswith("+" + c):
            center, s = c, s[: -len(c) - 1]
            break
    if "+" in s:
        raise SpecError(f"unexpected '+' in {text!r}")
    factors = []
    for part in _split_top(s, "*"):
        factors.append(_parse_factor(part, text))
    return AlgebraSpec(tuple(factors), center)


def _split_top(s: str, sep: str) -> list:
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecError(f"unbalanced parentheses in {s!r}")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise SpecError(f"unbalanced parentheses in {s!r}")
    out.append("".join(cur))
    if any(not p for p in out):
        raise SpecError(f"empty factor in {s!r}")
    return out


def _parse_factor(part: str, text: str) -> Factor:
    rep = "std"
    if part.startswith("stab("):
        if not part.endswith(")"):
            raise SpecError(f"bad stab(...) term in {text!r}")
        return Factor("stab", (part[5:-1],))
    if "@" in part:
        part, rep = part.rsplit("@", 1)
        if not _REP.match(rep):
            raise SpecError(f"unknown representation {rep!r}")
    if part in ("spin(7)",):
        part = "spin7"
    if part in ("spin(4,3)",):
        return Factor("spin(4,3)", (), rep)
    m = _BASE.match(part)
    if not m:
        raise SpecError(f"cannot parse {part!r} in {text!r}")
    name = m.group("name")
    args = tuple(a for a in (m.group("args") or "").split(",") if a) if m.group("args") is not None else ()
    if m.group("args") is not None and not args:
        raise SpecError(f"empty argument list in {part!r}")
    f = Factor(name, args, rep)
    _validate(f)
    return f


def _validate(f: Factor) -> None:
    """Check the name and argument shape without building anything."""
    n, a = f.name, f.args
    if n in _CONSTANT:
        if a not in _CONSTANT[n]:
            raise SpecError(f"bad arguments for {f.text()!r}")
        return
    if n not in _INT_ONLY and n not in _FIELD_ARGS:
        raise SpecError(f"unknown algebra {f.text()!r}")
    if a and a[-1] in _FIELD_ARGS.get(n, ()) and len(a) == 2:
        _int(a[0])
        return
    lo, hi = _INT_ONLY.get(n, (0, -1))
    if not lo <= len(a) <= hi:
        raise SpecError(f"bad arguments for {f.text()!r}")
    for x in a:
        _int(x)


# ---------------------------------------------------------------------------
# building

def _int(a: str) -> int:
    try:
        v = int(a)
    except ValueError:
        raise SpecError(f"expected an integer, got {a!r}") from None
    if v < 0:
        raise SpecError(f"negative dimension {a!r}")
    return v


def _base_algebra(f: Factor) -> tuple:
    """(algebra, is_complex) where complex algebras are still over Q(i)."""
    n, a = f.name, f.args
    field = a[-1] if a and a[-1] in ("R", "C", "H") else None
    nums = a[:-1] if field else a
    try:
        if n == "stab":
            try:
                return rc.load_generator_file(a[0]), False
            except (OSError, ValueError) as exc:
                raise SpecError(f"cannot load {a[0]!r}: {exc}") from None
        if n in ("so", "su", "u", "sp", "sl", "gl", "co") and not a:
            raise SpecError(f"{n} needs arguments")
        if n == "so":
            if field == "C":
                return rc.so_n_complex(_int(nums[0])), True
            return rc.so_pq(*[_int(x) for x in nums]), False
        if n == "su":
            return rc.su_pq(*[_int(x) for x in nums]), False
        if n == "u":
            return rc.u_n(_int(nums[0])), False
        if n == "co":
            return rc.co_n(_int(nums[0])), False
        if n == "sl":
            k = _int(nums[0])
            if field == "C":
                return rc.sl_n_complex(k), True
            if field == "H":
                return rc.sl_n_H(k), False
            return rc.sl_n(k), False
        if n == "gl":
            k = _int(nums[0])
            if field == "C":
                return rc.gl_n_complex(k), True
            if field == "H":
                return rc.gl_n_H(k), False
            return rc.gl_n(k), False
        if n == "sp":
            if field in ("R", "C"):
                k = _int(nums[0])
                if k % 2:
                    raise SpecError(f"sp({k},{field}) needs an even size")
                if field == "C":
                    return rc.sp_2n_complex(k // 2), True
                return rc.sp_2n(k // 2), False
            return rc.sp_pq(*[_int(x) for x in nums]), False
        if n == "g2" and not a:
            return rc.g2(), False
        if n == "split-g2" and not a:
            return rc.g2(split=True), False
        if n == "spin7" and not a:
            return rc.spin7(), False
        if n == "spin(4,3)":
            return rc.spin7(split=True), False
        if n == "g2" and a == ("C",):
            return rc._form_stabilizer(7, rc.associative_form(), "g2(C)", rc.QI_TAG), True
        if n == "spin7" and a == ("C",):
            return rc._form_stabilizer(8, rc.cayley_form(), "spin(7,C)", rc.QI_TAG), True
        if n == "e6" and not a:
            from .e6 import cached_context
            return cached_context().e6, False
    except rc.RepError as exc:
        raise SpecError(str(exc)) from None
    except (TypeError, IndexError):
        raise SpecError(f"bad arguments for {f.text()!r}") from None
    raise SpecError(f"unknown algebra {f.text()!r}")


def _apply_rep(g: rc.RepAlgebra, rep: str) -> rc.RepAlgebra:
    if rep == "std":
        return g
    if rep == "dual":
        return rc.dual_rep(g)
    if rep.startswith("sym"):
        return rc.sym_power_rep(g, int(rep[3:]))
    if rep.startswith("alt"):
        return rc.alt_power_rep(g, int(rep[3:]))
    if rep == "prim3":
        if g.dim_V != 6 or g.field != rc.Q:
            raise SpecError("@prim3 is defined for sp(6,R) only")
        return rc.restrict_rep(rc.alt_power_rep(g, 3), rc.primitive_three_forms(3),
                               name=f"{g.name}@prim3")
    raise SpecError(f"unknown representation {rep!r}")


def build(spec: AlgebraSpec | str) -> rc.RepAlgebra:
    """The real RepAlgebra named by ``spec``."""
    if isinstance(spec, str):
        spec = parse(spec)
    try:
        return _build(spec)
    except rc.RepError as exc:
        raise SpecError(f"{spec.text()}: {exc}") from None


def _build(spec: AlgebraSpec) -> rc.RepAlgebra:
    parts = []
    cplx = []
    for f in spec.factors:
        g, is_c = _base_algebra(f)
        g = _apply_rep(g, f.rep)
        parts.append(g)
        cplx.append(is_c)
    if len(set(cplx)) > 1:
        raise SpecError("cannot multiply real and complex factors")
    g = parts[0]
    for h in parts[1:]:
        g = rc.tensor_sum_rep(g, h)
    if spec.center == "center" and not cplx[0]:
        g = rc.add_center(g)
    name = spec.text()
    if cplx[0]:
        if spec.center == "center":
            g = rc.add_center(g)
        g = rc.realify(g, name=name)
        if spec.center == "ccenter":
            g = rc.add_complex_center(g)
    elif spec.center == "ccenter":
        if g.J is None:
            raise SpecError("+ccenter needs a complex structure")
        g = rc.add_complex_center(g)
    return g.renamed(name)


# ---------------------------------------------------------------------------
# catalog

@dataclass(frozen=True)
class CatalogRow:
    spec: str
    dim_V: int
    expected: str
    table: str        # "must" (Ricci-flat forced) or "may"
    note: str = ""


CATALOG = (
    CatalogRow("so(3)", 3, RICCI_TYPE, "may", "Ricci map bijective, no Weyl part"),
    CatalogRow("so(4)", 4, MIXED, "may"),
    CatalogRow("so(3,1)", 4, MIXED, "may"),
    CatalogRow("su(2)", 4, TRACE_FREE, "must"),
    CatalogRow("sl(1,H)", 4, TRACE_FREE, "must"),
    CatalogRow("sl(2,C)", 4, MIXED, "may"),
    CatalogRow("sp(4,R)", 4, MIXED, "may"),
    CatalogRow("su(3)", 6, TRACE_FREE, "must"),
    CatalogRow("g2", 7, TRACE_FREE, "must"),
    CatalogRow("split-g2", 7, TRACE_FREE, "must"),
    CatalogRow("sp(2)", 8, TRACE_FREE, "must"),
    CatalogRow("spin7", 8, TRACE_FREE, "must"),
    CatalogRow("spin(4,3)", 8, TRACE_FREE, "must"),
    CatalogRow("so(4,C)", 8, MIXED, "may"),
)

TABLE_TITLES = {"must": "Holonomy algebras that must be Ricci-flat",
                "may": "Holonomy algebras that may be Ricci-flat"}

VERDICT_NAMES = (RICCI_TYPE, TRACE_FREE, MIXED, FLAT_ONLY)


def catalog_rows(max_dim: int) -> list:
    return [r for r in CATALOG if r.dim_V <= max_dim]


def expectation_for(spec_text: str) -> str | None:
    key = parse(spec_text).text()
    for r in CATALOG:
        if parse(r.spec).text() == key:
            return r.expected
    return None
