"""Exact loci in the (h, r)-plane: bounding lines, triangles, gaps, missing points.

Coordinates are quotient genus h (horizontal) and branch-point count r
(vertical).  All geometry is exact over Fractions: lines are integer-coefficient
equations ``a*h + b*r = c`` in lowest terms, region membership is decided by
exact sign checks.  Triangles are closed, gaps are open; the asymmetry is
deliberate and load-bearing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .rh import SkeletalSignature

Coord = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RationalPoint:
    """Exact point; integrality is a queryable predicate, never an assumption."""

    h: Fraction
    r: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", Fraction(self.h))
        object.__setattr__(self, "r", Fraction(self.r))

    @property
    def is_integral(self) -> bool:
        return self.h.denominator == 1 and self.r.denominator == 1

    def as_skeletal(self) -> SkeletalSignature:
        if not self.is_integral:
            raise ValueError(f"point {self} is not a lattice point")
        return SkeletalSignature(int(self.h), int(self.r))

    def __str__(self) -> str:
        return f"({self.h}, {self.r})"


@dataclass(frozen=True)
class RationalLine:
    """Line a*h + b*r = c with integer coefficients, gcd 1, leading sign positive.

    Normalization makes equality of lines a plain field comparison.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        a, b, c = int(self.a), int(self.b), int(self.c)
        if (a, b) == (0, 0):
            raise ValueError("line needs a nonzero (a, b)")
        g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
        if g:
            a, b, c = a // g, b // g, c // g
        lead = a if a != 0 else b
        if lead < 0:
            a, b, c = -a, -b, -c
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def evaluate(self, point: RationalPoint) -> Fraction:
        """a*h + b*r - c; sign tells which side of the line the point is on."""
        return self.a * point.h + self.b * point.r - self.c

    def contains(self, point: RationalPoint) -> bool:
        return self.evaluate(point) == 0

    def r_at(self, h: Coord) -> Fraction:
        if self.b == 0:
            raise ValueError("vertical line has no r value at fixed h")
        return Fraction(self.c - self.a * Fraction(h), self.b)

    @property
    def slope(self) -> Fraction:
        """dr/dh of the line (b must be nonzero)."""
        if self.b == 0:
            raise ValueError("vertical line has undefined slope in r per h")
        return Fraction(-self.a, self.b)

    def __str__(self) -> str:
        return f"{self.a}h + {self.b}r = {self.c}"

    def to_json(self) -> dict:
        return {"kind": "line", "coefficients": [self.a, self.b, self.c], "equation": str(self)}


def intersect(first: RationalLine, second: RationalLine) -> RationalPoint:
    """Exact intersection of two non-parallel lines (2x2 rational solve)."""
    det = first.a * second.b - second.a * first.b
    if det == 0:
        raise ValueError(f"lines {first} and {second} are parallel")
    h = Fraction(first.c * second.b - second.c * first.b, det)
    r = Fraction(first.a * second.c - second.a * first.c, det)
    return RationalPoint(h, r)


def lower_line(sigma: int, order: int) -> RationalLine:
    """Lower bounding line of the order-N feasibility triangle: (N-1)r + 2Nh = 2(sigma-1) + 2N."""
    _check(sigma, order)
    return RationalLine(2 * order, order - 1, 2 * (sigma - 1) + 2 * order)


def upper_line(sigma: int, order: int) -> RationalLine:
    """Upper bounding line of the order-N feasibility triangle: Nr + 4Nh = 4(N + sigma - 1).

    Its slope in (h, r)-coordinates is -4 for every order.
    """
    _check(sigma, order)
    return RationalLine(4 * order, order, 4 * (order + sigma - 1))


def p_group_line(sigma: int, p: int, power: int) -> RationalLine:
    """Line carrying every skeletal signature of a group of exponent p and order p^power.

    All non-trivial elements of such a group (e.g. (C_p)^power) have order p,
    so every branching period equals p and the feasibility triangle collapses:
    2 p^power h + (p-1) p^(power-1) r = 2 p^power - 2 + 2 sigma.
    """
    if sigma < 2:
        raise ValueError(f"genus must be >= 2, got {sigma}")
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if power < 1:
        raise ValueError(f"power must be >= 1, got {power}")
    pn = p**power
    return RationalLine(2 * pn, (p - 1) * pn // p, 2 * pn - 2 + 2 * sigma)


def common_point(sigma: int) -> RationalPoint:
    """The point (sigma, 2 - 2*sigma) shared by every lower line as the order varies."""
    if sigma < 2:
        raise ValueError(f"genus must be >= 2, got {sigma}")
    return RationalPoint(sigma, 2 - 2 * sigma)


def _check(sigma: int, order: int) -> None:
    if sigma < 2:
        raise ValueError(f"genus must be >= 2, got {sigma}")
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")


@dataclass(frozen=True)
class TriangleRegion:
    """Closed region between the lower and upper lines for one group order.

    For order 2 the two lines coincide and the triangle degenerates to a
    segment; membership then means lying on that line.
    """

    sigma: int
    order: int
    lower: RationalLine
    upper: RationalLine
    apex: RationalPoint

    def member(self, point: RationalPoint) -> bool:
        if point.h < 0 or point.h > self.apex.h or point.r < 0:
            return False
        return self.lower.r_at(point.h) <= point.r <= self.upper.r_at(point.h)

    def integer_points(self) -> list[SkeletalSignature]:
        """Lattice points with h, r >= 0, in lexicographic order."""
        out: list[SkeletalSignature] = []
        for h in range(0, math.floor(self.apex.h) + 1):
            lo = self.lower.r_at(h)
            hi = self.upper.r_at(h)
            for r in range(max(math.ceil(lo), 0), math.floor(hi) + 1):
                out.append(SkeletalSignature(h, r))
        return out

    def to_json(self) -> dict:
        return {
            "kind": "triangle",
            "sigma": self.sigma,
            "N": self.order,
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json(),
            "apex": _point_json(self.apex),
        }


def triangle(sigma: int, order: int) -> TriangleRegion:
    _check(sigma, order)
    lo = lower_line(sigma, order)
    up = upper_line(sigma, order)
    apex = RationalPoint(1 + Fraction(sigma - 1, order), 0)
    if not (lo.contains(apex) and up.contains(apex)):
        raise AssertionError(f"apex {apex} must lie on both triangle lines")
    return TriangleRegion(sigma, order, lo, up, apex)


@dataclass(frozen=True)
class GapRegion:
    """Open region guaranteed free of skeletal signatures, up to a cyclic exception line.

    Bounded above (in r) by the lower line of the order-N triangle and below by
    the upper line of the next surviving triangle (N+1, or N+2 when N+1 is
    prime), to the right of their intersection corner.  When the middle order
    N+1 is prime its triangle collapses to the order-(N+1) cyclic line, which
    crosses the region: points on it are exempt from the gap guarantee.
    """

    sigma: int
    lower_index: int
    span: str  # "next" (strip to U at N+1) or "skip" (strip to U at N+2, with exception line)
    boundary_lower: RationalLine  # lower line of the order-N triangle; bounds the gap from above
    boundary_upper: RationalLine  # upper line of the order-(N+span) triangle; bounds from below
    corner: RationalPoint
    exception_line: RationalLine | None

    @property
    def upper_index(self) -> int:
        return self.lower_index + (1 if self.span == "next" else 2)

    def member_raw(self, point: RationalPoint) -> bool:
        """Strictly between the two boundary lines, strictly right of the corner."""
        if point.h <= self.corner.h:
            return False
        return self.boundary_upper.r_at(point.h) < point.r < self.boundary_lower.r_at(point.h)

    def member(self, point: RationalPoint) -> bool:
        """Raw membership minus the exception line, where the gap guarantee fails."""
        if not self.member_raw(point):
            return False
        if self.exception_line is not None and self.exception_line.contains(point):
            return False
        return True

    def integer_points_raw(self) -> list[SkeletalSignature]:
        """Lattice points with h, r >= 0 strictly inside the strip, lexicographic."""
        out: list[SkeletalSignature] = []
        h = math.floor(self.corner.h) + 1
        while True:
            top = self.boundary_lower.r_at(h)
            if top <= 0:
                break
            bottom = self.boundary_upper.r_at(h)
            r_lo = max(math.floor(bottom) + 1, 0)
            r_hi = math.ceil(top) - 1
            for r in range(r_lo, r_hi + 1):
                p = RationalPoint(h, r)
                if self.member_raw(p):
                    out.append(SkeletalSignature(h, r))
            h += 1
        return out

    def integer_points(self) -> list[SkeletalSignature]:
        """Raw lattice points with exception-line points removed."""
        return [
            s
            for s in self.integer_points_raw()
            if self.exception_line is None
            or not self.exception_line.contains(RationalPoint(s.h, s.r))
        ]

    def exception_points(self) -> list[SkeletalSignature]:
        """Lattice points of the strip lying on the exception line."""
        if self.exception_line is None:
            return []
        return [
            s
            for s in self.integer_points_raw()
            if self.exception_line.contains(RationalPoint(s.h, s.r))
        ]

    def to_json(self) -> dict:
        return {
            "kind": "gap",
            "sigma": self.sigma,
            "N": self.lower_index,
            "span": self.span,
            "upperIndex": self.upper_index,
            "boundaryLower": self.boundary_lower.to_json(),
            "boundaryUpper": self.boundary_upper.to_json(),
            "corner": _point_json(self.corner),
            "exceptionLine": None
            if self.exception_line is None
            else self.exception_line.to_json(),
        }


def gap(sigma: int, order: int) -> GapRegion:
    """Gap region to the right of the order-N triangle.

    When N+1 is composite the strip runs down to the upper line at N+1; when
    N+1 is prime the middle triangle collapses onto the order-(N+1) cyclic
    line, so the strip runs to the upper line at N+2 and carries that cyclic
    line as its exception.  Below N = 3 the order-2 triangle is degenerate and
    no gap is defined.
    """
    _check(sigma, order)
    if order < 3:
        raise ValueError(f"gaps are defined for order >= 3, got {order}")
    n = order
    lo = lower_line(sigma, n)
    if _is_prime(n + 1):
        span = "skip"
        up = upper_line(sigma, n + 2)
        corner = RationalPoint(
            Fraction(n * n - n + sigma * (n - 4), n * n - 4),
            Fraction(8 * (sigma - 1), n * n - 4),
        )
        exception = p_group_line(sigma, n + 1, 1)
    else:
        span = "next"
        up = upper_line(sigma, n + 1)
        corner = RationalPoint(
            Fraction((n - 1) ** 2 + sigma * (n - 3), (n - 2) * (n + 1)),
            Fraction(4 * (sigma - 1), (n - 2) * (n + 1)),
        )
        exception = None
    if not (lo.contains(corner) and up.contains(corner)):
        raise AssertionError(f"gap corner {corner} must lie on both boundary lines")
    return GapRegion(sigma, n, span, lo, up, corner, exception)


def gap_member(region: GapRegion, point: RationalPoint) -> bool:
    return region.member(point)


def gap_member_raw(region: GapRegion, point: RationalPoint) -> bool:
    return region.member_raw(point)


def nearest_int(x: Coord) -> int:
    """Nearest integer, with exact halves rounded away from zero.

    The in-scope inputs 2*sigma/3 - k have fractional part in {0, 1/3, 2/3},
    so the tie rule never fires there; it is fixed only for totality.
    """
    x = Fraction(x)
    if x >= 0:
        return math.floor(x + Fraction(1, 2))
    return -math.floor(-x + Fraction(1, 2))


def missing_points(sigma: int, h: int) -> list[SkeletalSignature]:
    """Lattice points at quotient genus 2 or 3 that fall in the order-4/6 gap.

    h == 2 needs sigma >= 7 and yields one point, (2, [2 sigma/3 - 4]);
    h == 3 needs sigma >= 18 and yields (3, [2 sigma/3 - 7]) and
    (3, [2 sigma/3 - 8]), plus (3, [2 sigma/3 - 6]) when sigma = 2 mod 3.
    Every returned point is asserted to pass strict gap membership (exception
    line included); genus 8 is a genuine counterexample at h == 2, where the
    candidate (2, 1) lands exactly on the order-5 cyclic line.
    """
    if h == 2:
        if sigma < 7:
            raise ValueError(f"h == 2 requires sigma >= 7, got {sigma}")
        offsets = [-4]
    elif h == 3:
        if sigma < 18:
            raise ValueError(f"h == 3 requires sigma >= 18, got {sigma}")
        offsets = [-7, -8]
        if sigma % 3 == 2:
            offsets.append(-6)
    else:
        raise ValueError(f"h must be 2 or 3, got {h}")
    region = gap(sigma, 4)
    points = [
        SkeletalSignature(h, nearest_int(Fraction(2 * sigma, 3) + k)) for k in offsets
    ]
    for s in points:
        p = RationalPoint(s.h, s.r)
        if not region.member(p):
            raise AssertionError(
                f"candidate {s} at genus {sigma} is not strictly inside the "
                f"order-4/6 gap off the exception line"
            )
    return points


def _point_json(p: RationalPoint) -> dict:
    return {
        "h": {"frac": f"{p.h.numerator}/{p.h.denominator}", "dec": float(p.h)},
        "r": {"frac": f"{p.r.numerator}/{p.r.denominator}", "dec": float(p.r)},
    }
