"""Exact Gaussian-rational scalars.

An exact scalar is either a ``gmpy2.mpq`` (imaginary part zero) or a
:class:`GaussianRational` whose imaginary part is nonzero.  Keeping the real
case as a bare ``mpq`` lets numpy object arrays of real data run at C speed;
:func:`gauss` is the only constructor and enforces the collapse.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "gauss",
    "to_exact",
    "re_part",
    "im_part",
    "format_exact",
    "parse_exact",
    "ExactParseError",
]


class ExactParseError(ValueError):
    pass


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return mpq(x.numerator, x.denominator) if not isinstance(x, int) else mpq(x)
    if isinstance(x, float):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"cannot make a rational from {type(x).__name__}")


def gauss(re_, im_=0):
    """Return ``re_ + im_ i`` as a canonical exact scalar."""
    r = _q(re_)
    i = _q(im_)
    if i == 0:
        return r
    return GaussianRational(r, i)


class GaussianRational:
    """Element of Q(i) with a nonzero imaginary part."""

    __slots__ = ("re", "im")

    def __init__(self, re_: mpq, im_: mpq):
        self.re = re_
        self.im = im_

    @staticmethod
    def _split(other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (mpq, int, Fraction)):
            return _q(other), mpq(0)
        if isinstance(other, complex):
            raise TypeError("refusing to mix float complex into exact arithmetic")
        return None

    def __add__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return gauss(self.re + s[0], self.im + s[1])

    __radd__ = __add__

    def __sub__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return gauss(self.re - s[0], self.im - s[1])

    def __rsub__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        return gauss(s[0] - self.re, s[1] - self.im)

    def __mul__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = s
        return gauss(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        c, d = s
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return gauss((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        s = self._split(other)
        if s is None:
            return NotImplemented
        a, b = s
        c, d = self.re, self.im
        den = c * c + d * d
        return gauss((a * c + b * d) / den, (b * c - a * d) / den)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (mpq, int, Fraction)):
            return False
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_exact(self)

    def __reduce__(self):
        return (gauss, (str(self.re), str(self.im)))


def re_part(z) -> mpq:
    return z.re if isinstance(z, GaussianRational) else _q(z)


def im_part(z) -> mpq:
    return z.im if isinstance(z, GaussianRational) else mpq(0)


def to_exact(z):
    """Convert a Python/numpy number (or exact scalar) to an exact scalar.

    Floats convert to the binary rational they denote, so the map is exact.
    """
    if isinstance(z, GaussianRational):
        return z
    if isinstance(z, (complex,)) or hasattr(z, "imag") and not isinstance(z, (int, mpq, Fraction)):
        c = complex(z)
        return gauss(mpq(c.real), mpq(c.imag))
    return _q(z)


def _fmt_q(q: mpq) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_exact(z) -> str:
    """Render as ``"p/q"`` or ``"p/q+r/s i"``."""
    r, i = re_part(z), im_part(z)
    if i == 0:
        return _fmt_q(r)
    sign = "-" if i < 0 else "+"
    return f"{_fmt_q(r)}{sign}{_fmt_q(abs(i))} i"


_RAT = r"[+-]?\d+(?:/\d+)?"
_EXACT_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})\s*)?(?:(?P<sign>[+-])?\s*(?P<im>\d+(?:/\d+)?)?\s*(?P<i>i))?\s*$"
)


def parse_exact(text: str):
    """Parse ``"p/q"``, ``"p/q+r/s i"``, ``"-r/s i"`` or ``"i"``."""
    if not isinstance(text, str):
        raise ExactParseError(f"exact scalar must be a string, got {type(text).__name__}")
    m = _EXACT_RE.match(text)
    if m is None or not text.strip():
        raise ExactParseError(f"malformed exact scalar {text!r}")
    re_s, sign, im_s, has_i = m.group("re", "sign", "im", "i")
    if re_s is None and has_i is None:
        raise ExactParseError(f"malformed exact scalar {text!r}")
    try:
        real = mpq(re_s) if re_s is not None else mpq(0)
        if has_i is None:
            return real
        if re_s is not None and sign is None:
            if im_s is not None:
                raise ExactParseError(f"malformed exact scalar {text!r}")
            # "3 i" / "-1/2 i": the leading rational is the imaginary coefficient
            return gauss(0, real)
        imag = mpq(im_s) if im_s is not None else mpq(1)
    except (ValueError, ZeroDivisionError) as exc:
        raise ExactParseError(f"malformed exact scalar {text!r}: {exc}") from None
    if sign == "-":
        imag = -imag
    return gauss(real, imag)
