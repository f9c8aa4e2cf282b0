"""Dominant-pole asymptotics with certified real-root isolation.

The coefficient growth of a rational generating function is controlled by
the smallest-modulus zeros of its denominator.  Roots are isolated by Sturm
sign-variation counts and refined by bisection, entirely in rational
arithmetic, so every reported interval is certified: the polynomial changes
sign across it and contains exactly one root.

Supported pole shapes: a single simple positive dominant pole z, or a simple
real pair +-z.  The amplitude at a simple pole r of N/D is -N(r)/(r D'(r)),
so the two-term estimate is

    c_n ~ amp_plus * z^(-n) + amp_minus * (-z)^(-n)
        = A (1 + B (-1)^n) z^(-n),        A = amp_plus, B = amp_minus/A.

Anything else (a repeated dominant pole, or a complex pair strictly inside
the dominant radius) raises UnsupportedPoleShape.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .series import Polynomial, RationalFunction, series_terms

__all__ = [
    "AsymptoticEstimate",
    "UnsupportedPoleShape",
    "dominant_form",
    "error_profile",
    "isolate_real_roots",
    "refine_root",
    "sturm_chain",
]

DEFAULT_WIDTH = Fraction(1, 10**12)
_REFINE_WIDTH = Fraction(1, 10**30)


class UnsupportedPoleShape(ValueError):
    """The dominant singularities are not a simple real z or pair +-z."""


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        rem = divmod(chain[-2], chain[-1])[1]
        chain.append(-rem)
    chain.pop()
    return chain


def _variations(chain: Sequence[Polynomial], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = p(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_count(chain: Sequence[Polynomial], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]."""
    return _variations(chain, lo) - _variations(chain, hi)


def _root_bound(p: Polynomial) -> Fraction:
    lead = abs(Fraction(p.leading()))
    return 1 + max(abs(Fraction(c)) for c in p.coeffs) / lead


def refine_root(p: Polynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a sign-change bracket below `width` by bisection.

    Refinement only ever subdivides, so intervals from successively smaller
    widths are nested.
    """
    flo = p(lo)
    if flo == 0:
        return lo, lo
    if p(hi) == 0:
        return hi, hi
    while hi - lo >= width:
        mid = (lo + hi) / 2
        fmid = p(mid)
        if fmid == 0:
            return mid, mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return lo, hi


def isolate_real_roots(
    p: Polynomial,
    interval: tuple[Fraction, Fraction] | None = None,
    width: Fraction = DEFAULT_WIDTH,
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one simple root of p each, all narrower
    than `width`, ordered left to right.

    Works on the squarefree part of p, so multiple roots are located once.
    """
    if p.degree < 1:
        return []
    sqf = p.divexact(p.gcd(p.derivative()))
    chain = sturm_chain(sqf)
    if interval is None:
        bound = _root_bound(sqf)
        interval = (-bound, bound)
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    # nudge endpoints off roots so variation counts are clean
    while sqf(lo) == 0:
        lo -= width / 2
    while sqf(hi) == 0:
        hi += width / 2

    found: list[tuple[Fraction, Fraction]] = []

    def split(a: Fraction, b: Fraction, count: int) -> None:
        if count == 0:
            return
        if count == 1:
            # one simple root in (a, b]: either b is the root or a sign
            # change brackets it, so plain bisection finishes the job
            found.append(refine_root(sqf, a, b, width))
            return
        mid = (a + b) / 2
        if sqf(mid) == 0:
            mid += min(b - mid, width) / 2
        left = root_count(chain, a, mid)
        split(a, mid, left)
        split(mid, b, count - left)

    split(lo, hi, root_count(chain, lo, hi))
    return found


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Two-term coefficient estimate from the dominant pole(s).

    `pole_interval` certifies z; floats are rounded from rational midpoints
    of intervals refined far below the display precision.
    """

    pole_interval: tuple[Fraction, Fraction]
    z: float
    growth: float
    amp_plus: float
    amp_minus: float
    has_mirror_pole: bool
    exact_check: bool | None = None

    @property
    def amplitude(self) -> float:
        """A in c_n ~ A (1 + B (-1)^n) growth^n."""
        return self.amp_plus

    @property
    def alternation(self) -> float:
        """B in c_n ~ A (1 + B (-1)^n) growth^n."""
        return self.amp_minus / self.amp_plus

    def predict(self, n: int) -> float:
        return (self.amp_plus + self.amp_minus * (-1) ** n) * self.growth**n

    def to_json_dict(self, errors: list[tuple[int, float]] | None = None) -> dict:
        data = {
            "z_inv": self.growth,
            "A": self.amplitude,
            "B": self.alternation,
            "exact_check": self.exact_check,
        }
        if errors is not None:
            data["errors"] = [[n, err] for n, err in errors]
        return data


def _complex_pole_guard(den: Polynomial, z: float) -> None:
    # float check only: certified isolation covers the real axis, this rules
    # out a stray complex pair sneaking inside the dominant radius
    roots = np.roots([float(c) for c in reversed(den.coeffs)])
    if np.min(np.abs(roots)) < z * (1 - 1e-9):
        raise UnsupportedPoleShape("a complex pole lies inside the dominant radius")


def dominant_form(
    G: RationalFunction,
    *,
    amplitude_reference: Callable[[Fraction], tuple[Fraction, Fraction]] | None = None,
    reference_tolerance: float = 1e-6,
) -> AsymptoticEstimate:
    """Locate the dominant pole(s) of G and compute the two-term estimate.

    When `amplitude_reference` is given (closed-form amplitudes as a function
    of z), the result carries `exact_check`: both computed amplitudes agree
    with the closed forms within `reference_tolerance`.
    """
    G = G.normalized()
    num, den = G.numerator, G.denominator
    if den.constant() == 0:
        raise UnsupportedPoleShape("pole at 0")

    sqf = den.divexact(den.gcd(den.derivative()))
    positive = isolate_real_roots(sqf, (Fraction(0), _root_bound(sqf)), _REFINE_WIDTH)
    if not positive:
        raise UnsupportedPoleShape("no positive real pole")
    lo, hi = positive[0]
    mid = (lo + hi) / 2

    multiple = den.gcd(den.derivative())
    if multiple.degree > 0 and _has_root_in(multiple, lo, hi):
        raise UnsupportedPoleShape("dominant pole is not simple")

    # -z is a pole iff z is a root of gcd(D(x), D(-x))
    mirror = den.gcd(Polynomial([c if i % 2 == 0 else -c for i, c in enumerate(den.coeffs)]))
    has_mirror = mirror.degree > 0 and _has_root_in(mirror, lo, hi)

    den_prime = den.derivative()
    amp_plus_exact = -Fraction(num(mid)) / (mid * Fraction(den_prime(mid)))
    if has_mirror:
        amp_minus_exact = -Fraction(num(-mid)) / (-mid * Fraction(den_prime(-mid)))
    else:
        amp_minus_exact = Fraction(0)

    z = float(mid)
    _complex_pole_guard(den, z)

    exact_check: bool | None = None
    if amplitude_reference is not None:
        ref_plus, ref_minus = amplitude_reference(mid)
        exact_check = (
            abs(amp_plus_exact - ref_plus) <= reference_tolerance
            and abs(amp_minus_exact - ref_minus) <= reference_tolerance
        )

    return AsymptoticEstimate(
        pole_interval=(lo, hi),
        z=z,
        growth=float(1 / mid),
        amp_plus=float(amp_plus_exact),
        amp_minus=float(amp_minus_exact),
        has_mirror_pole=has_mirror,
        exact_check=exact_check,
    )


def _has_root_in(p: Polynomial, lo: Fraction, hi: Fraction) -> bool:
    if p(lo) == 0 or p(hi) == 0:
        return True
    if lo == hi:
        return False
    sqf = p.divexact(p.gcd(p.derivative()))  # Sturm counts want simple roots
    return root_count(sturm_chain(sqf), lo, hi) > 0


def error_profile(
    G: RationalFunction, estimate: AsymptoticEstimate, count: int
) -> list[tuple[int, float]]:
    """Relative error |c_n - estimate(n)| / c_n for n = 1..count.

    Terms that are exactly zero get an infinite relative error unless the
    estimate is also zero there.
    """
    exact = series_terms(G.normalized(), count)
    out = []
    for n, c in enumerate(exact, start=1):
        approx = estimate.predict(n)
        if c == 0:
            err = 0.0 if approx == 0 else float("inf")
        else:
            err = abs(c - approx) / abs(c)
        out.append((n, err))
    return out
