"""Exact rational polynomial arithmetic.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator). ``Poly`` is a sparse univariate polynomial in ``x`` and
``BiPoly`` is a sparse polynomial in two formal variables ``t, s`` whose
coefficients are ``Poly`` values.

Both types are immutable and hashable; zero coefficients are never stored,
so structural equality is polynomial equality.
"""

from __future__ import annotations

import json
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import ZeroPolynomial

Rational = Fraction
Scalar = Union[int, Fraction]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, an integer or a decimal string without touching floats.

    >>> parse_rational("1e-3")
    Fraction(1, 1000)
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    try:
        return Fraction(Decimal(text))
    except (InvalidOperation, ValueError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    """Render as ``"num/den"`` (the canonical serialized form)."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _clean(terms: Mapping[int, Scalar]) -> dict[int, Fraction]:
    return {d: Fraction(c) for d, c in terms.items() if c != 0}


class Poly:
    """Sparse polynomial in ``x`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        cleaned = _clean(terms or {})
        for d in cleaned:
            if not isinstance(d, int) or d < 0:
                raise ValueError(f"invalid degree {d!r}")
        self._terms = dict(sorted(cleaned.items()))
        self._hash: int | None = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> Poly:
        return cls({0: c})

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> Poly:
        return cls({degree: c})

    @classmethod
    def x(cls) -> Poly:
        return cls({1: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar]) -> Poly:
        """Dense ascending coefficient list -> Poly."""
        return cls(dict(enumerate(coeffs)))

    @staticmethod
    def _coerce(other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, degree: int) -> Fraction:
        return self._terms.get(degree, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Highest degree; -1 for the zero polynomial."""
        return max(self._terms, default=-1)

    def valuation(self) -> tuple[int, Fraction]:
        """Lowest degree with a nonzero coefficient, and that coefficient."""
        if not self._terms:
            raise ZeroPolynomial("valuation of the zero polynomial is undefined")
        d = min(self._terms)
        return d, self._terms[d]

    def __call__(self, x0: Scalar) -> Fraction:
        return self.eval(x0)

    def eval(self, x0: Scalar) -> Fraction:
        """Exact value at a rational point (Horner over the dense range)."""
        x0 = Fraction(x0)
        acc = Fraction(0)
        for d in range(self.degree, -1, -1):
            acc = acc * x0 + self._terms.get(d, 0)
        return acc

    # -- ring operations --------------------------------------------------
    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for d, c in other._terms.items():
            out[d] = out.get(d, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({d: -c for d, c in self._terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> Poly:
        return Poly({d: v * c for d, v in self._terms.items()})

    def __pow__(self, k: int) -> Poly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # -- text / json ------------------------------------------------------
    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for d, c in self._terms.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                xs = "x" if d == 1 else f"x^{d}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> dict:
        return {
            "var": "x",
            "terms": [[d, format_rational(c)] for d, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping | str) -> Poly:
        if isinstance(obj, str):
            obj = json.loads(obj)
        if obj.get("var", "x") != "x":
            raise ValueError(f"unsupported variable {obj.get('var')!r}")
        terms: dict[int, Fraction] = {}
        for degree, coeff in obj["terms"]:
            if int(degree) in terms:
                raise ValueError(f"duplicate degree {degree}")
            terms[int(degree)] = parse_rational(coeff)
        return cls(terms)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_scale(p: Poly, c: Scalar) -> Poly:
    return p.scale(c)


def poly_eval(p: Poly, x0: Scalar) -> Fraction:
    return p.eval(x0)


def poly_valuation(p: Poly) -> tuple[int, Fraction]:
    return p.valuation()


X = Poly.x()
ONE = Poly.const(1)
ZERO = Poly()


class BiPoly:
    """Sparse polynomial in ``t`` and ``s`` with :class:`Poly` coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Poly | Scalar] | None = None):
        out: dict[tuple[int, int], Poly] = {}
        for key, c in (terms or {}).items():
            p = c if isinstance(c, Poly) else Poly.const(c)
            if not p.is_zero():
                out[(int(key[0]), int(key[1]))] = p
        self._terms = dict(sorted(out.items()))

    @classmethod
    def t(cls) -> BiPoly:
        return cls({(1, 0): ONE})

    @classmethod
    def s(cls) -> BiPoly:
        return cls({(0, 1): ONE})

    @classmethod
    def const(cls, c: Poly | Scalar) -> BiPoly:
        return cls({(0, 0): c})

    @staticmethod
    def _coerce(other) -> BiPoly:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (Poly, int, Fraction)):
            return BiPoly.const(other)
        return NotImplemented

    def items(self) -> Iterator[tuple[tuple[int, int], Poly]]:
        return iter(self._terms.items())

    def coeff(self, n: int, m: int) -> Poly:
        return self._terms.get((n, m), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other) -> BiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> BiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> BiPoly:
        return (-self) + other

    def __mul__(self, other) -> BiPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], Poly] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                prod = c1 * c2
                out[k] = out[k] + prod if k in out else prod
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BiPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = BiPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{i}*s^{j}" for (i, j), c in self._terms.items())
        return f"BiPoly({body or '0'})"


def bipoly_coeff(q: BiPoly, n: int, m: int) -> Poly:
    if n < 0 or m < 0:
        raise ValueError("exponents must be nonnegative")
    return q.coeff(n, m)
