"""Exact scalars: rationals (gmpy2 ``mpq``) and Gaussian rationals ``QI``.

Everything downstream works over one of two fields, tagged ``"Q"`` or
``"Qi"``.  Rationals are plain ``mpq`` values; elements of Q(i) are ``QI``
pairs.  A rational embeds in Q(i) with zero imaginary part.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq, mpz

Q = "Q"
QI_TAG = "Qi"
FIELDS = (Q, QI_TAG)

ZERO = mpq(0)
ONE = mpq(1)


class QI:
    """An element ``re + i*im`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, QI):
            return other
        return QI(other, 0)

    def __add__(self, other):
        if isinstance(other, QI):
            return QI(self.re + other.re, self.im + other.im)
        return QI(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QI):
            return QI(self.re - other.re, self.im - other.im)
        return QI(self.re - other, self.im)

    def __rsub__(self, other):
        return QI(other - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, QI):
            return QI(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        return QI(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QI._lift(other)
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * other.conjugate()
        return QI(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return QI._lift(other) / self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        try:
            return self.im == 0 and self.re == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({format_scalar(self.re)}, {format_scalar(self.im)})"

    def __str__(self):
        return format_scalar(self)


I = QI(0, 1)


def is_zero(x) -> bool:
    return not x


def field_of(x) -> str:
    return QI_TAG if isinstance(x, QI) else Q


def common_field(*tags: str) -> str:
    return QI_TAG if QI_TAG in tags else Q


def coerce(x, field: str = Q):
    """Convert ``x`` (int, Fraction, mpq, QI, str) into the given field."""
    if isinstance(x, str):
        x = parse_scalar(x)
    if field == Q:
        if isinstance(x, QI):
            if x.im != 0:
                raise ValueError(f"{x} is not rational")
            return x.re
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)
    if field == QI_TAG:
        if isinstance(x, QI):
            return x
        if isinstance(x, Fraction):
            x = mpq(x.numerator, x.denominator)
        return QI(x, 0)
    raise ValueError(f"unknown field tag {field!r}")


_RAT = r"[+-]?\d+(?:/\d+)?"
_COMPLEX_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?=[+-]|$))?\s*(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\*?i)?\s*$"
)


def _parse_rational(text: str) -> mpq:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return mpq(int(num), int(den))
    return mpq(int(text))


def parse_scalar(text: str):
    """Parse ``"3"``, ``"-2/5"``, ``"i"``, ``"1/2-3i"`` and similar."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty scalar")
    if "i" not in text:
        return _parse_rational(text)
    m = _COMPLEX_RE.match(text)
    if m is None or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse scalar {text!r}")
    re_part = _parse_rational(m.group("re")) if m.group("re") else ZERO
    im_text = m.group("im")
    if im_text in ("", "+"):
        im_part = ONE
    elif im_text == "-":
        im_part = -ONE
    else:
        im_part = _parse_rational(im_text)
    return QI(re_part, im_part)


def format_scalar(x) -> str:
    if isinstance(x, QI):
        if x.im == 0:
            return format_scalar(x.re)
        im = format_scalar(x.im)
        if x.im == 1:
            im = ""
        elif x.im == -1:
            im = "-"
        if x.re == 0:
            return f"{im}i"
        sign = "" if im.startswith("-") else "+"
        return f"{format_scalar(x.re)}{sign}{im}i"
    x = mpq(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


def denominator_lcm(values) -> mpz:
    from gmpy2 import lcm

    d = mpz(1)
    for v in values:
        d = lcm(d, mpq(v).denominator)
    return d
