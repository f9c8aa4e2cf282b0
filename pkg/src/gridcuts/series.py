"""Exact polynomial and rational-function arithmetic for the counting series.

Coefficients are Python ints or Fractions, never floats.  The generating
function of a machine is assembled from its transfer matrix T as

    G(x) = x^2 * s (I - x^2 T)^(-1) a_even  +  x * s (I - x^2 T)^(-1) a_odd,

with s the start indicator: each symbol of a word covers two columns of the
finished board except that the final symbol of an odd-width word covers one.
The linear systems are evaluated through fraction-free (Bareiss) determinants
of integer polynomial matrices via the bordered-matrix identity

    s M^(-1) a = -det([[M, a], [s, 0]]) / det(M),

so no intermediate rational functions appear.  Rational functions are kept
normalized: numerator and denominator are coprime integer polynomials with
coprime contents and a positive leading denominator coefficient, which makes
equality of generating functions a literal coefficient comparison.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence

from .automaton import TransferMatrix

__all__ = [
    "Polynomial",
    "RationalFunction",
    "Recurrence",
    "bareiss_determinant",
    "charpoly",
    "rational_function",
    "recurrence_of",
    "resolvent_denominator_lcm",
    "resolvent_sum",
    "series_terms",
]

Coeff = int | Fraction


def _exact(value: Coeff) -> Coeff:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


class Polynomial:
    """Dense univariate polynomial; coeffs[i] is the degree-i coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff] = ()) -> None:
        items = [_exact(c) for c in coeffs]
        while items and items[-1] == 0:
            items.pop()
        object.__setattr__(self, "coeffs", tuple(items))

    @classmethod
    def monomial(cls, degree: int, coeff: Coeff = 1) -> "Polynomial":
        return cls([0] * degree + [coeff])

    ZERO: "Polynomial"
    ONE: "Polynomial"
    X: "Polynomial"

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Coeff:
        return self.coeffs[-1] if self.coeffs else 0

    def constant(self) -> Coeff:
        return self.coeffs[0] if self.coeffs else 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial | Coeff") -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Exact Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = Fraction(other.leading())
        quot = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        for i in range(len(quot) - 1, -1, -1):
            c = Fraction(rem[i + other.degree]) / lead
            if c:
                quot[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return Polynomial(quot), Polynomial(rem)

    def divexact(self, other: "Polynomial") -> "Polynomial":
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return quot

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: Coeff) -> Coeff:
        value: Coeff = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def substitute_x_squared(self) -> "Polynomial":
        """p(x) -> p(x^2)."""
        out = [0] * (2 * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return Polynomial(out)

    def shift_up(self, k: int) -> "Polynomial":
        """Multiply by x^k."""
        return Polynomial((0,) * k + self.coeffs)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = Fraction(self.leading())
        return Polynomial([Fraction(c) / lead for c in self.coeffs])

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor over the rationals."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, divmod(a, b)[1]
        return a.monic() if not a.is_zero() else a

    def primitive(self) -> tuple[Fraction, "Polynomial"]:
        """Split into content * primitive integer polynomial (positive lead)."""
        if self.is_zero():
            return Fraction(0), Polynomial()
        denom_lcm = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in self.coeffs]
        content = 0
        for c in ints:
            content = int_gcd(content, abs(c))
        sign = -1 if ints[-1] < 0 else 1
        prim = Polynomial([c // (sign * content) for c in ints])
        return Fraction(sign * content, denom_lcm), prim

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                term = xs if mag == 1 else f"{mag}*{xs}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


Polynomial.ZERO = Polynomial()
Polynomial.ONE = Polynomial([1])
Polynomial.X = Polynomial([0, 1])


def product(polys: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.ONE
    for p in polys:
        out = out * p
    return out


def bareiss_determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free determinant; every division is exact by construction."""
    size = len(matrix)
    if size == 0:
        return Polynomial.ONE
    rows = [list(row) for row in matrix]
    sign = 1
    prev = Polynomial.ONE
    for k in range(size - 1):
        if rows[k][k].is_zero():
            pivot_row = next(
                (r for r in range(k + 1, size) if not rows[r][k].is_zero()), None
            )
            if pivot_row is None:
                return Polynomial.ZERO
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]
                rows[i][j] = num.divexact(prev)
            rows[i][k] = Polynomial.ZERO
        prev = rows[k][k]
    det = rows[size - 1][size - 1]
    return det if sign == 1 else -det


@dataclass(frozen=True)
class RationalFunction:
    """Normalized ratio of integer polynomials; see `rational_function`."""

    numerator: Polynomial
    denominator: Polynomial

    def normalized(self) -> "RationalFunction":
        return rational_function(self.numerator, self.denominator)

    def __call__(self, x: Coeff) -> Fraction:
        return Fraction(self.numerator(x)) / Fraction(self.denominator(x))

    def to_json_dict(self) -> dict:
        return {
            "numerator": [int(c) for c in self.numerator.coeffs],
            "denominator": [int(c) for c in self.denominator.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "RationalFunction":
        data = json.loads(text)
        return rational_function(
            Polynomial(data["numerator"]), Polynomial(data["denominator"])
        )

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"


def rational_function(numerator: Polynomial, denominator: Polynomial) -> RationalFunction:
    """Reduce and normalize: coprime integer polys, coprime contents,
    denominator with positive leading coefficient."""
    if denominator.is_zero():
        raise ZeroDivisionError("zero denominator")
    if numerator.is_zero():
        return RationalFunction(Polynomial.ZERO, Polynomial.ONE)
    common = numerator.gcd(denominator)
    if common.degree > 0:
        numerator = numerator.divexact(common)
        denominator = denominator.divexact(common)
    num_content, num_prim = numerator.primitive()
    den_content, den_prim = denominator.primitive()
    scalar = num_content / den_content
    num_final = num_prim * scalar.numerator
    den_final = den_prim * scalar.denominator
    if den_final.leading() < 0:
        num_final, den_final = -num_final, -den_final
    return RationalFunction(num_final, den_final)


def _identity_minus(matrix: Sequence[Sequence[int]], variable: Polynomial) -> list[list[Polynomial]]:
    size = len(matrix)
    return [
        [
            (Polynomial.ONE if i == j else Polynomial.ZERO)
            - Polynomial([0, matrix[i][j]])
            for j in range(size)
        ]
        for i in range(size)
    ]


def _walk_series(matrix: Sequence[Sequence[int]], start: Sequence[int],
                 accept: Sequence[int]) -> tuple[Polynomial, Polynomial]:
    """(numerator, denominator) of s (I - yT)^(-1) a as integer polynomials."""
    size = len(matrix)
    base = _identity_minus(matrix, Polynomial.X)
    bordered = [row + [Polynomial([accept[i]])] for i, row in enumerate(base)]
    bordered.append([Polynomial([s]) for s in start] + [Polynomial.ZERO])
    num = -bareiss_determinant(bordered)
    den = bareiss_determinant(base)
    return num, den


def resolvent_sum(T: TransferMatrix) -> RationalFunction:
    """Generating function of the machine from its transfer matrix.

    A word of k symbols encodes a board of width 2k (counted by the even
    accept vector, weight x^2 per symbol) or width 2k-1 (odd accept vector,
    where the middle column contributes a single x).
    """
    even_num, den = _walk_series(T.entries, T.start_vector, T.accept_even_vector)
    odd_num, den_odd = _walk_series(T.entries, T.start_vector, T.accept_odd_vector)
    assert den == den_odd
    numerator = even_num.substitute_x_squared().shift_up(2) + odd_num.substitute_x_squared().shift_up(1)
    return rational_function(numerator, den.substitute_x_squared())


def generating_function(automaton) -> RationalFunction:
    """Machine gf over its divisor (general machines read each cut twice)."""
    from .automaton import transfer_matrix

    gf = resolvent_sum(transfer_matrix(automaton))
    if automaton.divisor == 1:
        return gf
    return rational_function(gf.numerator, gf.denominator * automaton.divisor)


def resolvent_denominator_lcm(T: TransferMatrix) -> Polynomial:
    """LCM of the reduced entry denominators of (I - xT)^(-1).

    Entry (i, j) is cofactor_ji / det, so the LCM over all entries is
    det / gcd(det, gcd of all cofactors), as a primitive positive-lead
    integer polynomial.
    """
    base = _identity_minus(T.entries, Polynomial.X)
    size = len(base)
    det = bareiss_determinant(base)
    minors_gcd = Polynomial.ZERO
    for i in range(size):
        for j in range(size):
            minor = [
                [base[r][c] for c in range(size) if c != j]
                for r in range(size) if r != i
            ]
            minors_gcd = minors_gcd.gcd(bareiss_determinant(minor))
            if minors_gcd == Polynomial.ONE:
                break
        if minors_gcd == Polynomial.ONE:
            break
    lcm = det.divexact(det.gcd(minors_gcd)) if not minors_gcd.is_zero() else det
    return lcm.primitive()[1]


def charpoly(matrix: Sequence[Sequence[int]]) -> Polynomial:
    """det(xI - M) for an integer matrix, computed fraction-free."""
    size = len(matrix)
    rows = [
        [
            Polynomial([-matrix[i][j], 1]) if i == j else Polynomial([-matrix[i][j]])
            for j in range(size)
        ]
        for i in range(size)
    ]
    return bareiss_determinant(rows)


def series_terms(G: RationalFunction, count: int) -> list[int]:
    """Exact coefficients c_1..c_count of the power series of G.

    Runs the linear recurrence given by the denominator; requires a nonzero
    constant term.  Non-integer coefficients mean a corrupted input and raise
    ArithmeticError rather than rounding.
    """
    num, den = G.numerator.coeffs, G.denominator.coeffs
    if not den or den[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    terms: list[Fraction] = []
    for n in range(count + 1):
        value = Fraction(num[n] if n < len(num) else 0)
        for k in range(1, min(n, len(den) - 1) + 1):
            value -= den[k] * terms[n - k]
        terms.append(value / den[0])
    out = []
    for n, value in enumerate(terms[1:], start=1):
        if value.denominator != 1:
            raise ArithmeticError(f"coefficient {n} is not an integer: {value}")
        out.append(int(value))
    return out


def series_terms_longdiv(G: RationalFunction, count: int) -> list[Fraction]:
    """Power-series long division, kept as an independent cross-check."""
    num, den = G.numerator.coeffs, G.denominator.coeffs
    if not den or den[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    remainder = list(num) + [0] * max(0, count + 1 - len(num))
    out = []
    for n in range(count + 1):
        c = Fraction(remainder[n]) / den[0]
        out.append(c)
        for k, d in enumerate(den):
            if n + k < len(remainder):
                remainder[n + k] -= c * d
    return out[1:]


@dataclass(frozen=True)
class Recurrence:
    """Constant-coefficient recurrence satisfied by the series of a gf.

    sum(coefficients[i] * c[n-i] for i in 0..order) == 0 for n >= valid_from,
    with c[k] = 0 for k < 0.  `initial` pins c_0 .. c_{valid_from - 1}.
    """

    order: int
    coefficients: tuple[int, ...]
    valid_from: int
    initial: tuple[int, ...]

    def terms(self, count: int) -> list[int]:
        values = list(self.initial)
        d0 = self.coefficients[0]
        for n in range(len(values), count + 1):
            acc = 0
            for i in range(1, self.order + 1):
                if n - i >= 0:
                    acc += self.coefficients[i] * values[n - i]
            if acc % d0 != 0:
                raise ArithmeticError("recurrence produced a non-integer term")
            values.append(-acc // d0)
        return values[1 : count + 1]

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "coefficients": list(self.coefficients),
            "valid_from": self.valid_from,
            "initial": list(self.initial),
        }


def format_bfile(terms: Sequence[int], start: int = 1) -> str:
    """OEIS b-file lines: "n value", consecutive n, newline-terminated."""
    return "".join(f"{n} {value}\n" for n, value in enumerate(terms, start=start))


def parse_bfile(text: str) -> list[int]:
    """Inverse of format_bfile; insists on consecutive indices from 1."""
    terms = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        index_str, value_str = line.split()
        if int(index_str) != len(terms) + 1:
            raise ValueError(f"b-file indices must run 1,2,...; saw {index_str}")
        terms.append(int(value_str))
    return terms


def recurrence_of(G: RationalFunction) -> Recurrence:
    """Recurrence read off the denominator of a normalized gf."""
    G = G.normalized()
    den = G.denominator
    if den.constant() == 0:
        raise ValueError("denominator must have a nonzero constant term")
    c0 = Fraction(G.numerator.constant()) / Fraction(den.constant())
    if c0.denominator != 1:
        raise ArithmeticError(f"coefficient 0 is not an integer: {c0}")
    valid_from = max(G.numerator.degree + 1, 1)
    return Recurrence(
        order=den.degree,
        coefficients=tuple(int(c) for c in den.coeffs),
        valid_from=valid_from,
        initial=(int(c0), *series_terms(G, valid_from - 1)),
    )
