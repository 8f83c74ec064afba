"""Exact Riemann-Hurwitz arithmetic and Diophantine feasibility for skeletal signatures.

Everything here is computed over ``fractions.Fraction``; no operation ever
constructs a float.  A group of order N acting on a surface of genus sigma >= 2
with signature (h; n_1,...,n_r) satisfies

    sigma - 1 = N * (h - 1 + r/2 - (1/2) * sum(1/n_j)).

Feasibility searches over period lists are exhaustive within provable bounds,
so a negative answer is a certificate, not a timeout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, NamedTuple


class HyperbolicityError(ValueError):
    """Raised for skeletal inputs that force genus <= 1, where no search is meaningful."""


class SkeletalSignature(NamedTuple):
    """Quotient genus and branch-point count, stripped of the branching orders."""

    h: int
    r: int


@dataclass(frozen=True)
class OrbifoldSignature:
    """Quotient genus plus the ordered branching periods of an orbifold covering."""

    h: int
    periods: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "periods", tuple(int(n) for n in self.periods))
        if self.h < 0:
            raise ValueError(f"quotient genus must be >= 0, got {self.h}")
        for n in self.periods:
            if n < 2:
                raise ValueError(f"branching periods must be >= 2, got {n}")

    @property
    def r(self) -> int:
        return len(self.periods)

    @property
    def skeletal(self) -> SkeletalSignature:
        return SkeletalSignature(self.h, self.r)

    def __str__(self) -> str:
        return f"({self.h};{','.join(str(n) for n in self.periods)})"


@dataclass(frozen=True)
class SearchVerdict:
    """Outcome of an exhaustive search.

    ``not_exists`` is only ever produced after a provably complete enumeration;
    an interrupted search must surface as ``unknown``.
    """

    status: str
    witness: Any = None

    EXISTS = "exists"
    NOT_EXISTS = "not-exists"
    UNKNOWN = "unknown"

    @classmethod
    def exists(cls, witness: Any) -> "SearchVerdict":
        return cls(cls.EXISTS, witness)

    @classmethod
    def not_exists(cls) -> "SearchVerdict":
        return cls(cls.NOT_EXISTS)

    @classmethod
    def unknown(cls) -> "SearchVerdict":
        return cls(cls.UNKNOWN)

    @property
    def is_exists(self) -> bool:
        return self.status == self.EXISTS

    @property
    def is_not_exists(self) -> bool:
        return self.status == self.NOT_EXISTS

    @property
    def is_unknown(self) -> bool:
        return self.status == self.UNKNOWN


def _check_genus(sigma: int) -> None:
    if sigma < 2:
        raise ValueError(f"genus must be >= 2, got {sigma}")


def _check_order(order: int) -> None:
    if order < 2:
        raise ValueError(f"group order must be >= 2, got {order}")


def _check_skeletal(skel: SkeletalSignature) -> SkeletalSignature:
    skel = SkeletalSignature(int(skel[0]), int(skel[1]))
    if skel.h < 0 or skel.r < 0:
        raise ValueError(f"skeletal signature entries must be >= 0, got {skel}")
    return skel


def rh_genus(order: int, sig: OrbifoldSignature) -> Fraction:
    """Genus forced by the Riemann-Hurwitz formula, as an exact rational.

    Callers decide integrality; ``order`` == 1 is accepted so the trivial
    group composes with catalog machinery.
    """
    if order < 1:
        raise ValueError(f"group order must be >= 1, got {order}")
    recip = sum((Fraction(1, n) for n in sig.periods), Fraction(0))
    return 1 + order * (sig.h - 1 + Fraction(sig.r, 2) - recip / 2)


def rh_holds(sigma: int, order: int, sig: OrbifoldSignature) -> bool:
    """True iff the formula yields exactly ``sigma`` (exact rational comparison)."""
    _check_genus(sigma)
    return rh_genus(order, sig) == sigma


def allowed_periods(order: int, *, periods_divide_order: bool = True) -> list[int]:
    """Candidate branching periods for a group of this order, ascending.

    The default restricts to divisors of the order: element orders divide the
    group order, so this keeps feasibility a true superset of realizability
    while collapsing prime orders to a single period.  ``periods_divide_order=
    False`` gives the loose box [2, order].
    """
    _check_order(order)
    if not periods_divide_order:
        return list(range(2, order + 1))
    return [d for d in range(2, order + 1) if order % d == 0]


def _multiset_walk(
    target: Fraction, slots: int, allowed: list[int], start: int
) -> list[int] | None:
    """First non-decreasing period list (lexicographic) whose reciprocals sum to target."""
    if slots == 0:
        return [] if target == 0 else None
    if slots == 1:
        # target must be exactly 1/n for an allowed n >= allowed[start]
        if target.numerator != 1:
            return None
        n = target.denominator
        if n < allowed[start] or n > allowed[-1]:
            return None
        # membership in the tail of the ascending allowed list
        return [n] if n in allowed else None
    lo = slots * Fraction(1, allowed[-1])
    if target < lo:
        return None
    for i in range(start, len(allowed)):
        n = allowed[i]
        rec = Fraction(1, n)
        if rec * slots < target:
            break  # larger periods only shrink the achievable sum
        if rec >= target:
            continue  # remaining slots need a strictly positive share
        rest = _multiset_walk(target - rec, slots - 1, allowed, i)
        if rest is not None:
            return [n] + rest
    return None


def period_feasible(
    sigma: int,
    skel: SkeletalSignature,
    order: int,
    *,
    periods_divide_order: bool = True,
) -> SearchVerdict:
    """Search for a period list making (h; n_1..n_r) satisfy Riemann-Hurwitz at this order.

    Enumerates non-decreasing lists only (canonical multiset order) with
    branch-and-bound pruning on the reciprocal sum, so ``not_exists`` certifies
    that no multiset in the allowed box works.
    """
    _check_genus(sigma)
    _check_order(order)
    h, r = _check_skeletal(skel)
    # required value of sum(1/n_j), from sigma-1 = N(h-1+r/2-(1/2)sum)
    target = 2 * (h - 1) + r - Fraction(2 * (sigma - 1), order)
    if r == 0:
        return SearchVerdict.exists(()) if target == 0 else SearchVerdict.not_exists()
    if target <= 0:
        return SearchVerdict.not_exists()
    allowed = allowed_periods(order, periods_divide_order=periods_divide_order)
    if not allowed:
        return SearchVerdict.not_exists()
    found = _multiset_walk(target, r, allowed, 0)
    if found is None:
        return SearchVerdict.not_exists()
    return SearchVerdict.exists(tuple(found))


def order_bound(sigma: int, skel: SkeletalSignature) -> int:
    """Provable cap on group orders admitting a feasible period list at this point.

    h >= 2: the genus-minus-one bound; h == 1: the quarter bracket of a single
    period-2 branch point; h == 0: the classical 1/84 minimum of the hyperbolic
    bracket.  Degenerate skeletal inputs where every signature forces genus <= 1
    are rejected so "arithmetic says no" stays distinct from "malformed question".
    """
    _check_genus(sigma)
    h, r = _check_skeletal(skel)
    if (h, r) in ((0, 0), (0, 1), (0, 2), (1, 0)):
        raise HyperbolicityError(
            f"hyperbolicity violated: skeletal signature {(h, r)} admits no genus >= 2 action"
        )
    if h >= 2:
        return sigma - 1
    if h == 1:
        return 4 * (sigma - 1)
    return 84 * (sigma - 1)


def feasible_orders(
    sigma: int,
    skel: SkeletalSignature,
    *,
    periods_divide_order: bool = True,
) -> Iterator[tuple[int, tuple[int, ...]]]:
    """All (order, canonical periods) pairs feasible at this point, ascending in order."""
    bound = order_bound(sigma, skel)
    for order in range(2, bound + 1):
        verdict = period_feasible(
            sigma, skel, order, periods_divide_order=periods_divide_order
        )
        if verdict.is_exists:
            yield order, verdict.witness


def rh_admissible(
    sigma: int,
    skel: SkeletalSignature,
    *,
    periods_divide_order: bool = True,
) -> SearchVerdict:
    """Smallest-order Riemann-Hurwitz witness for a skeletal signature, or a certified no.

    ``not_exists`` means no order up to the provable bound admits any period
    list, so the point lies outside the admissible region entirely.
    """
    for order, periods in feasible_orders(
        sigma, skel, periods_divide_order=periods_divide_order
    ):
        return SearchVerdict.exists((order, periods))
    return SearchVerdict.not_exists()
