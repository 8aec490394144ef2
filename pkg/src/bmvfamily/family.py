"""The 3x3 matrix family A_x, B_x and its rank-one projection normal form.

A_x = P + 2x U and B_x = 2x V + Q, where P, U, V, Q are rank-one
orthogonal projections with rational entries. The unit vectors behind U and V
involve 1/sqrt(2), so only the projections are stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .errors import InvalidExponent
from .exact import ONE, X, ZERO, Poly
from .report import Check, check


class Mat3:
    """Immutable 3x3 matrix over any exact commutative ring (Poly, Fraction, int)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[Any]]):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs exactly 3 rows of 3 entries")
        self.rows = rows

    @classmethod
    def identity(cls, one: Any = ONE, zero: Any = ZERO) -> Mat3:
        return cls([[one if i == j else zero for j in range(3)] for i in range(3)])

    @classmethod
    def zeros(cls, zero: Any = ZERO) -> Mat3:
        return cls([[zero] * 3 for _ in range(3)])

    def __getitem__(self, ij: tuple[int, int]) -> Any:
        i, j = ij
        return self.rows[i][j]

    def map(self, fn: Callable[[Any], Any]) -> Mat3:
        return Mat3([[fn(e) for e in row] for row in self.rows])

    def __add__(self, other: Mat3) -> Mat3:
        return Mat3([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: Mat3) -> Mat3:
        return Mat3([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> Mat3:
        return self.map(lambda e: -e)

    def __mul__(self, other):
        if isinstance(other, Mat3):
            return self @ other
        return self.map(lambda e: e * other)

    def __rmul__(self, c):
        return self.map(lambda e: c * e)

    def __matmul__(self, other: Mat3) -> Mat3:
        a, b = self.rows, other.rows
        return Mat3(
            [
                [a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3)]
                for i in range(3)
            ]
        )

    def __pow__(self, k: int) -> Mat3:
        result = Mat3.identity(*self._unit())
        for _ in range(k):
            result = result @ self
        return result

    def _unit(self) -> tuple[Any, Any]:
        sample = self.rows[0][0]
        if isinstance(sample, Poly):
            return ONE, ZERO
        return Fraction(1), Fraction(0)

    def trace(self) -> Any:
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def transpose(self) -> Mat3:
        return Mat3([[self.rows[j][i] for j in range(3)] for i in range(3)])

    def det(self) -> Any:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.rows for e in row)

    def eval(self, x0) -> Mat3:
        """Substitute x = x0 into every Poly entry."""
        return self.map(lambda e: e.eval(x0) if isinstance(e, Poly) else Fraction(e))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat3):
            return NotImplemented
        return all(a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return "Mat3([" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "])"

    def to_json(self) -> list:
        def enc(e):
            return (e if isinstance(e, Poly) else Poly.const(e)).to_json()

        return [[enc(e) for e in row] for row in self.rows]

    @classmethod
    def from_json(cls, rows: list) -> Mat3:
        return cls([[Poly.from_json(e) for e in row] for row in rows])


def _poly_mat(rows) -> Mat3:
    return Mat3([[e if isinstance(e, Poly) else Poly.const(e) for e in row] for row in rows])


def build_family() -> tuple[Mat3, Mat3]:
    """Return (A_x, B_x) with Poly entries."""
    x = X
    A = _poly_mat([[1, 0, 0], [0, x, -x], [0, -x, x]])
    B = _poly_mat([[x, -x, 0], [-x, x, 0], [0, 0, 1]])
    return A, B


@dataclass(frozen=True)
class ProjectionSet:
    P: Mat3
    U: Mat3
    V: Mat3
    Q: Mat3

    def by_name(self, name: str) -> Mat3:
        return getattr(self, name)

    def as_dict(self) -> dict[str, Mat3]:
        return {"P": self.P, "U": self.U, "V": self.V, "Q": self.Q}


def _frac_mat(rows, scale=1) -> Mat3:
    return Mat3([[Fraction(e) * scale for e in row] for row in rows])


def build_projections() -> ProjectionSet:
    half = Fraction(1, 2)
    return ProjectionSet(
        P=_frac_mat([[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        U=_frac_mat([[0, 0, 0], [0, 1, -1], [0, -1, 1]], half),
        V=_frac_mat([[1, -1, 0], [-1, 1, 0], [0, 0, 0]], half),
        Q=_frac_mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]]),
    )


def as_poly_matrix(m: Mat3) -> Mat3:
    return m.map(lambda e: e if isinstance(e, Poly) else Poly.const(e))


# Pair traces that are nonzero; every other distinct pair has trace 0.
EXPECTED_OVERLAPS = {
    ("P", "V"): Fraction(1, 2),
    ("U", "Q"): Fraction(1, 2),
    ("U", "V"): Fraction(1, 4),
}


def verify_normal_form() -> list[Check]:
    """Check the normal form identities and the full pair-overlap table."""
    A, B = build_family()
    proj = build_projections()
    eps = X.scale(2)
    P, U, V, Q = (as_poly_matrix(m) for m in (proj.P, proj.U, proj.V, proj.Q))
    zero = Mat3.zeros()
    checks = [
        check("A - (P + 2x U) = 0", zero, A - (P + U * eps)),
        check("B - (2x V + Q) = 0", zero, B - (V * eps + Q)),
    ]
    names = ["P", "U", "V", "Q"]
    for name in names:
        R = proj.by_name(name)
        checks.append(check(f"{name}^2 = {name}", R, R @ R))
        checks.append(check(f"{name} symmetric", R, R.transpose()))
        checks.append(check(f"tr {name} = 1", Fraction(1), R.trace()))
    checks.append(check("P Q = 0", Mat3.zeros(Fraction(0)), proj.P @ proj.Q))
    checks.append(check("P U = 0", Mat3.zeros(Fraction(0)), proj.P @ proj.U))
    checks.append(check("V Q = 0", Mat3.zeros(Fraction(0)), proj.V @ proj.Q))
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            key = (a, b) if (a, b) in EXPECTED_OVERLAPS else (b, a)
            expected = EXPECTED_OVERLAPS.get(key, Fraction(0))
            actual = (proj.by_name(a) @ proj.by_name(b)).trace()
            checks.append(check(f"tr({a}{b})", expected, actual))
    return checks


def clustered_trace_closed(n: int, m: int) -> Poly:
    """tr(A^n B^m) = 2^(m-1) x^m + 2^(n-1) x^n + 2^(n+m-2) x^(n+m)."""
    if n < 1 or m < 1:
        raise InvalidExponent(f"need n, m >= 1, got n={n}, m={m}")
    return (
        Poly.monomial(m, 2 ** (m - 1))
        + Poly.monomial(n, 2 ** (n - 1))
        + Poly.monomial(n + m, 2 ** (n + m - 2))
    )


def clustered_trace_direct(n: int, m: int) -> Poly:
    A, B = build_family()
    return ((A**n) @ (B**m)).trace()


def commutator() -> Mat3:
    A, B = build_family()
    return A @ B - B @ A


def commutator_frobenius_sq() -> Poly:
    C = commutator()
    total = ZERO
    for row in C.rows:
        for e in row:
            total = total + e * e
    return total


def char_poly(m: Mat3) -> list:
    """Coefficients [c0, c1, c2, c3] of det(lambda I - m) = sum c_k lambda^k."""
    e1 = m.trace()
    r = m.rows
    e2 = (
        r[0][0] * r[1][1] - r[0][1] * r[1][0]
        + r[0][0] * r[2][2] - r[0][2] * r[2][0]
        + r[1][1] * r[2][2] - r[1][2] * r[2][1]
    )
    e3 = m.det()
    return [-e3, e2, -e1, ONE if isinstance(e1, Poly) else Fraction(1)]


def principal_minors(m: Mat3) -> list:
    """All 7 principal minors (3 diagonal entries, 3 of size 2, the determinant)."""
    r = m.rows
    out = [r[i][i] for i in range(3)]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        out.append(r[i][i] * r[j][j] - r[i][j] * r[j][i])
    out.append(m.det())
    return out


def is_psd_at(m: Mat3, x0) -> bool:
    """PSD test for a symmetric matrix at x = x0 via nonnegative principal minors."""
    val = m.eval(x0)
    return val == val.transpose() and all(mi >= 0 for mi in principal_minors(val))


def power_closed_A(n: int) -> Mat3:
    """A^n = P + (2x)^n U."""
    proj = build_projections()
    return as_poly_matrix(proj.P) + as_poly_matrix(proj.U) * Poly.monomial(n, 2**n)


def power_closed_B(m: int) -> Mat3:
    """B^m = (2x)^m V + Q."""
    proj = build_projections()
    return as_poly_matrix(proj.V) * Poly.monomial(m, 2**m) + as_poly_matrix(proj.Q)


__all__ = [
    "Mat3",
    "ProjectionSet",
    "build_family",
    "build_projections",
    "verify_normal_form",
    "clustered_trace_closed",
    "clustered_trace_direct",
    "commutator",
    "commutator_frobenius_sq",
    "char_poly",
    "is_psd_at",
    "power_closed_A",
    "power_closed_B",
]
