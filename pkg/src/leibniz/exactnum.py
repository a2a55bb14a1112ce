"""Exact scalars over the Gaussian rationals Q(i), plus polynomials in t and
in several form-family parameters.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Everything here is immutable.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Mapping

__all__ = [
    "Scalar",
    "ZERO",
    "ONE",
    "I",
    "as_scalar",
    "parse_rational",
    "format_rational",
    "scalar_ops",
    "TPoly",
    "poly_eval",
    "MultiPoly",
]

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``["-"] digits ["/" digits]``; the fraction must already be reduced."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    num_i = int(num)
    den_i = int(den) if den is not None else 1
    if den_i == 0:
        raise ValueError(f"zero denominator in {text!r}")
    if math.gcd(num_i, den_i) != 1 or (sign and num_i == 0):
        raise ValueError(f"rational {text!r} is not in reduced form")
    return Fraction(-num_i if sign else num_i, den_i)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Scalar:
    """A Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Fraction | int = 0, im: Fraction | int = 0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.re and not other.im:
            return self
        if not self.re and not self.im:
            return other
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            if not a or not c:
                return ZERO
            return Scalar(a * c)
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def inv(self) -> Scalar:
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("inverse of zero Scalar")
            return Scalar(1 / self.re)
        norm = self.re * self.re + self.im * self.im
        return Scalar(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> Scalar:
        return Scalar(self.re, -self.im)

    # -- comparison / hashing ----------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.re, self.im)) if self.im else hash(self.re)
            object.__setattr__(self, "_hash", h)
        return h

    def is_real(self) -> bool:
        return not self.im

    # -- text -----------------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{format_rational(self.im)}i"
        if not self.re:
            return im
        sep = "" if im.startswith("-") else "+"
        return f"{format_rational(self.re)}{sep}{im}"

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, obj) -> Scalar:
        if isinstance(obj, Mapping):
            unknown = set(obj) - {"re", "im"}
            if unknown:
                raise ValueError(f"unexpected Scalar field(s) {sorted(unknown)}")
            re_, im_ = obj.get("re", "0"), obj.get("im", "0")
            if not isinstance(re_, str) or not isinstance(im_, str):
                raise ValueError("Scalar fields 're' and 'im' must be strings")
            return cls(parse_rational(re_), parse_rational(im_))
        if isinstance(obj, bool):
            raise ValueError(f"cannot read Scalar from {obj!r}")
        if isinstance(obj, int):
            return cls(obj)
        if isinstance(obj, str):
            return cls.parse(obj)
        raise ValueError(f"cannot read Scalar from {obj!r}")

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Read the compact form used on the command line: ``3``, ``-1/2``,
        ``2i``, ``1+i``, ``1/2-3/4i``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if not s.endswith("i"):
            return cls(parse_rational(s))
        body = s[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split > 0:
            re_txt, im_txt = body[:split], body[split:]
        else:
            re_txt, im_txt = "", body
        im_txt = im_txt.lstrip("+")
        if im_txt in ("", "-"):
            im_txt += "1"
        re_val = parse_rational(re_txt) if re_txt else Fraction(0)
        return cls(re_val, parse_rational(im_txt))


def _coerce(x):
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Scalar(x)
    if isinstance(x, complex):
        return Scalar(Fraction(x.real), Fraction(x.imag))
    return NotImplemented


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, complex numbers with exact parts, or strings."""
    if isinstance(x, str):
        return Scalar.parse(x)
    out = _coerce(x)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return out


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def scalar_ops(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    """Dispatch one of ``add``, ``mul``, ``inv``, ``neg``.

    ``inv`` of zero raises :class:`ZeroDivisionError`.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "neg":
        return -a
    raise ValueError(f"unknown scalar op {op!r}")


# ---------------------------------------------------------------------------
# Univariate polynomials in the deformation parameter t
# ---------------------------------------------------------------------------


class TPoly:
    """Polynomial in ``t`` with Scalar coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TPoly is immutable")

    @classmethod
    def constant(cls, c) -> TPoly:
        return cls([c])

    @classmethod
    def monomial(cls, c, power: int) -> TPoly:
        return cls([ZERO] * power + [as_scalar(c)])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def lowest_power(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, Scalar)):
            return self == TPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _tpoly(other)
        return TPoly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=ZERO))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_tpoly(other))

    def __rsub__(self, other):
        return _tpoly(other) - self

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            s = as_scalar(other)
            return TPoly(c * s for c in self.coeffs)
        other = _tpoly(other)
        if not self.coeffs or not other.coeffs:
            return TPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return TPoly(out)

    __rmul__ = __mul__

    def __call__(self, t0) -> Scalar:
        return poly_eval(self, t0)

    def truncate(self, order: int) -> TPoly:
        """Drop every term of degree above ``order``."""
        return TPoly(self.coeffs[: order + 1])

    def __repr__(self):
        return f"TPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else "t" if k == 1 else f"t^{k}"
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                cs = str(c)
                parts.append(f"({cs})*{mono}" if ("+" in cs or "-" in cs[1:]) else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _tpoly(x) -> TPoly:
    return x if isinstance(x, TPoly) else TPoly.constant(x)


def poly_eval(p: TPoly, t0) -> Scalar:
    """Horner evaluation of ``p`` at ``t0``."""
    t0 = as_scalar(t0)
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * t0 + c
    return acc


# ---------------------------------------------------------------------------
# Multivariate polynomials in lambda_1..lambda_m
# ---------------------------------------------------------------------------


def _grlex_key(exp: tuple[int, ...]):
    return (-sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables; terms keyed by exponent tuple.

    Terms iterate in graded lexicographic order (highest total degree first).
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        clean = {}
        for exp, c in (terms or {}).items():
            c = as_scalar(c)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
            if c:
                clean[tuple(exp)] = c
        ordered = dict(sorted(clean.items(), key=lambda kv: _grlex_key(kv[0])))
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", ordered)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def constant(cls, nvars: int, c) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, index: int, c=ONE) -> MultiPoly:
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, tuple(self.terms.items())))

    def __add__(self, other: MultiPoly) -> MultiPoly:
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, ZERO) + c
        return MultiPoly(self.nvars, out)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            s = as_scalar(other)
            return MultiPoly(self.nvars, {e: c * s for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def evaluate(self, point) -> Scalar:
        point = [as_scalar(x) for x in point]
        acc = ZERO
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term = term * x**e
            acc = acc + term
        return acc

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.terms.items():
            mono = "*".join(
                f"l{k + 1}" if e == 1 else f"l{k + 1}^{e}" for k, e in enumerate(exp) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"exp": list(e), "c": c.to_json()} for e, c in self.terms.items()]
