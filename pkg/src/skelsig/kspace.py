"""Assemble the admissible region, verify gap emptiness, and analyze sporadic points.

The admissible set (Riemann-Hurwitz feasibility over all group orders) is a
superset of the true space of skeletal signatures; the realized map (witnessed
by generating-vector search over a catalog) is a lower bound.  Reports keep
that distinction explicit: equality is never asserted, coverage is recorded.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import geometry
from .genvec import (
    DEFAULT_BUDGET,
    ExclusionReason,
    Witness,
    commutator_products,
    quaternion_vector,
    realizable,
    search,
    verify,
)
from .geometry import GapRegion, RationalPoint, gap, p_group_line, triangle
from .groups import CatalogManifest, GroupTable, _is_prime, build_cyclic
from .rh import (
    OrbifoldSignature,
    SearchVerdict,
    SkeletalSignature,
    feasible_orders,
    period_feasible,
    rh_admissible,
    rh_genus,
)


def _map_ordered(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """Deterministic map: results in input order regardless of thread count."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# admissible region


def admissible_map(
    sigma: int,
    h_max: int | None = None,
    r_max: int | None = None,
    *,
    threads: int = 1,
) -> dict[SkeletalSignature, tuple[int, ...]]:
    """Every RH-feasible lattice point in the box, with its full list of feasible orders.

    Sweeps orders from 2 up to the h = 0 cap and enumerates each order's
    triangle, so the union equals the per-point order sweep without quadratic
    cost.  Defaults: h up to sigma + 1, r up to 2*sigma + 2.
    """
    if sigma < 2:
        raise ValueError(f"genus must be >= 2, got {sigma}")
    if h_max is None:
        h_max = sigma + 1
    if r_max is None:
        r_max = 2 * sigma + 2
    cap = 84 * (sigma - 1)

    def orders_for(n: int) -> list[tuple[SkeletalSignature, int]]:
        hits = []
        tri = triangle(sigma, n)
        for pt in tri.integer_points():
            if pt.h > h_max or pt.r > r_max:
                continue
            if period_feasible(sigma, pt, n).is_exists:
                hits.append((pt, n))
        return hits

    found: dict[SkeletalSignature, list[int]] = {}
    for chunk in _map_ordered(orders_for, range(2, cap + 1), threads):
        for pt, n in chunk:
            found.setdefault(pt, []).append(n)
    return {pt: tuple(ns) for pt, ns in sorted(found.items())}


def admissible_set(
    sigma: int,
    h_max: int | None = None,
    r_max: int | None = None,
    *,
    threads: int = 1,
) -> frozenset[SkeletalSignature]:
    return frozenset(admissible_map(sigma, h_max, r_max, threads=threads))


# ---------------------------------------------------------------------------
# realized subset


@dataclass(frozen=True)
class SearchScope:
    """Honest record of what the witness search actually covered."""

    max_order: int
    budget: int
    complete_orders: tuple[int, ...]
    total_points: int
    fully_covered_points: int
    unknown_points: tuple[SkeletalSignature, ...]

    def describe(self) -> str:
        gap_n = self.total_points - self.fully_covered_points
        lines = [
            f"catalog searched through order {self.max_order} "
            f"(complete orders: {', '.join(map(str, self.complete_orders)) or 'none'})",
            f"realized map is a lower bound: {self.fully_covered_points}/{self.total_points} "
            f"admissible points have all feasible orders inside complete catalog coverage"
            + (f"; {gap_n} do not" if gap_n else ""),
        ]
        if self.unknown_points:
            lines.append(
                f"{len(self.unknown_points)} points hit the search budget ({self.budget})"
            )
        return "; ".join(lines)

    def to_json(self) -> dict:
        return {
            "maxOrder": self.max_order,
            "budget": self.budget,
            "completeOrders": list(self.complete_orders),
            "totalPoints": self.total_points,
            "fullyCoveredPoints": self.fully_covered_points,
            "unknownPoints": [list(p) for p in self.unknown_points],
            "note": self.describe(),
        }


@dataclass(frozen=True)
class KSpaceApproximation:
    """Two-sided bracket on the space of skeletal signatures at one genus."""

    sigma: int
    admissible: frozenset[SkeletalSignature]
    feasible_orders_by_point: dict[SkeletalSignature, tuple[int, ...]]
    realized: dict[SkeletalSignature, Witness]
    scope: SearchScope

    def __post_init__(self) -> None:
        if not set(self.realized) <= self.admissible:
            raise AssertionError("realized points must be admissible")


def realizable_set(
    sigma: int,
    catalog: CatalogManifest | Iterable[GroupTable],
    max_order: int,
    budget: int = DEFAULT_BUDGET,
    *,
    h_max: int | None = None,
    r_max: int | None = None,
    threads: int = 1,
) -> KSpaceApproximation:
    """Witness map over catalog groups at every admissible point.

    The result is a certified subset of the true space; the scope records how
    far catalog completeness lets it claim more.
    """
    feas = admissible_map(sigma, h_max, r_max, threads=threads)
    if isinstance(catalog, CatalogManifest):
        groups = catalog.groups(max_order=max_order)
        complete = tuple(
            sorted(o for o in range(2, max_order + 1) if catalog.is_complete_at(o))
        )
    else:
        groups = [g for g in catalog if g.order <= max_order]
        complete = ()
    groups = sorted(groups, key=lambda g: (g.order, g.name))
    points = sorted(feas)

    def attempt(pt: SkeletalSignature):
        unknown = False
        for g in groups:
            report = realizable(g, sigma, pt, budget)
            if report.verdict.is_exists:
                return pt, report.witness, False
            if report.verdict.is_unknown:
                unknown = True
        return pt, None, unknown

    realized: dict[SkeletalSignature, Witness] = {}
    unknown_pts: list[SkeletalSignature] = []
    for pt, witness, unknown in _map_ordered(attempt, points, threads):
        if witness is not None:
            realized[pt] = witness
        elif unknown:
            unknown_pts.append(pt)
    covered = sum(
        1 for pt, orders in feas.items() if all(n in complete for n in orders)
    )
    scope = SearchScope(
        max_order=max_order,
        budget=budget,
        complete_orders=complete,
        total_points=len(points),
        fully_covered_points=covered,
        unknown_points=tuple(unknown_pts),
    )
    return KSpaceApproximation(sigma, frozenset(feas), feas, realized, scope)


# ---------------------------------------------------------------------------
# point-level exclusion machinery (r = 1 arguments and catalog sweeps)


@dataclass(frozen=True)
class PointAnalysis:
    """Realizability decision for one lattice point across all feasible orders."""

    point: SkeletalSignature
    status: str  # realized | excluded | partial
    feasible: tuple[tuple[int, tuple[int, ...]], ...]
    reasons: tuple[ExclusionReason, ...]
    witness: Witness | None

    def to_json(self) -> dict:
        return {
            "point": list(self.point),
            "status": self.status,
            "feasibleOrders": [[n, list(p)] for n, p in self.feasible],
            "reasons": [e.to_json() for e in self.reasons],
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def analyze_point(
    sigma: int,
    skel: SkeletalSignature,
    catalog: CatalogManifest | None,
    budget: int = DEFAULT_BUDGET,
) -> PointAnalysis:
    """Decide a lattice point by sweeping its RH-compatible orders.

    Order-level rules close an order without group enumeration where possible:
    a single branch point whose period equals the group order forces a cyclic
    group, which the abelian obstruction then excludes.  Remaining orders are
    settled by exhaustive search over the catalog when its coverage is
    complete there; otherwise the verdict is partial, never a false no.
    """
    skel = SkeletalSignature(*skel)
    feasible = tuple(feasible_orders(sigma, skel))
    reasons: list[ExclusionReason] = []
    if not feasible:
        return PointAnalysis(
            skel,
            "excluded",
            (),
            (
                ExclusionReason(
                    "arithmetic",
                    f"no order admits a period list for {tuple(skel)} at genus {sigma}",
                ),
            ),
            None,
        )
    witness: Witness | None = None
    all_closed = True
    for order, periods in feasible:
        closed = False
        if skel.r == 1 and periods == (order,):
            reasons.append(
                ExclusionReason(
                    "cyclic-forced",
                    f"order {order}: the branch entry would have order {order} = |G|, "
                    f"forcing a cyclic (hence abelian) group, impossible with one branch point",
                )
            )
            closed = True
        if catalog is not None and catalog.is_complete_at(order):
            covered = True
            group_list = catalog.groups_of_order(order)
        elif _is_prime(order):
            # a prime order has a unique isomorphism class, no catalog needed
            covered = True
            group_list = [build_cyclic(order)]
        else:
            covered = False
            group_list = []
        if covered:
            order_closed = True
            for g in group_list:
                report = realizable(g, sigma, skel, budget)
                if report.verdict.is_exists:
                    witness = report.witness
                    order_closed = False
                    break
                if report.verdict.is_unknown:
                    order_closed = False
                else:
                    reasons.extend(report.exclusion_reasons)
            if witness is not None:
                break
            closed = closed or order_closed
        if not closed:
            all_closed = False
    if witness is not None:
        return PointAnalysis(skel, "realized", feasible, tuple(reasons), witness)
    if all_closed:
        return PointAnalysis(skel, "excluded", feasible, tuple(reasons), None)
    return PointAnalysis(skel, "partial", feasible, tuple(reasons), None)


# ---------------------------------------------------------------------------
# gap verification


@dataclass(frozen=True)
class PointReport:
    point: SkeletalSignature
    on_exception_line: bool
    rh: SearchVerdict
    analysis: PointAnalysis | None

    def to_json(self) -> dict:
        rh_json = {"status": self.rh.status}
        if self.rh.is_exists:
            order, periods = self.rh.witness
            rh_json["order"] = order
            rh_json["periods"] = list(periods)
        return {
            "point": list(self.point),
            "onExceptionLine": self.on_exception_line,
            "rh": rh_json,
            "analysis": None if self.analysis is None else self.analysis.to_json(),
        }


@dataclass(frozen=True)
class GapReport:
    region: GapRegion
    points: tuple[PointReport, ...]
    conclusion: str  # verified | refuted
    has_partial: bool

    def to_json(self) -> dict:
        return {
            "gap": self.region.to_json(),
            "points": [p.to_json() for p in self.points],
            "conclusion": self.conclusion,
            "hasPartial": self.has_partial,
        }


def verify_gap(
    sigma: int,
    order: int,
    catalog: CatalogManifest | None = None,
    budget: int = DEFAULT_BUDGET,
    *,
    threads: int = 1,
) -> GapReport:
    """Check that every non-exception lattice point of the gap is RH-infeasible.

    Exception-line points (present when the skipped middle order is prime) are
    additionally analyzed for realizability, since the gap guarantee does not
    apply to them.  The conclusion is verified iff every non-exception point
    has no Riemann-Hurwitz solution at any order.
    """
    region = gap(sigma, order)
    exc = region.exception_line

    def judge(pt: SkeletalSignature) -> PointReport:
        on_exc = exc is not None and exc.contains(RationalPoint(pt.h, pt.r))
        verdict = rh_admissible(sigma, pt)
        analysis = None
        if on_exc:
            analysis = analyze_point(sigma, pt, catalog, budget)
        return PointReport(pt, on_exc, verdict, analysis)

    points = tuple(_map_ordered(judge, region.integer_points_raw(), threads))
    bad = [p for p in points if not p.on_exception_line and not p.rh.is_not_exists]
    has_partial = any(p.analysis is not None and p.analysis.status == "partial" for p in points)
    conclusion = "verified" if not bad else "refuted"
    return GapReport(region, points, conclusion, has_partial)


# ---------------------------------------------------------------------------
# sporadic points on the r = 1 line


@dataclass(frozen=True)
class CaseRecord:
    """One divisor case of the r = 1 nonexistence argument at genus p + 1."""

    divisor: str  # which divisor of 2p the quantity n(2h-1)-1 equals
    n: int | None
    group_order: int | None
    rule: str
    detail: str
    closed: bool
    witness: Witness | None = None

    def to_json(self) -> dict:
        return {
            "divisor": self.divisor,
            "n": self.n,
            "groupOrder": self.group_order,
            "rule": self.rule,
            "detail": self.detail,
            "closed": self.closed,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


@dataclass(frozen=True)
class SporadicGenusReport:
    p: int
    sigma: int
    cases: tuple[CaseRecord, ...]
    verdict: str  # not-exists | refuted | partial

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "sigma": self.sigma,
            "cases": [c.to_json() for c in self.cases],
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class QuaternionWitnessRecord:
    n: int
    genus: int
    witness: Witness
    verified: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "genus": self.genus,
            "witness": self.witness.to_json(),
            "verified": self.verified,
        }


@dataclass(frozen=True)
class SporadicReport:
    h: int
    nonexistence: tuple[SporadicGenusReport, ...]
    witnesses: tuple[QuaternionWitnessRecord, ...]

    @property
    def complete(self) -> bool:
        return all(g.verdict == "not-exists" for g in self.nonexistence) and all(
            w.verified for w in self.witnesses
        )

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "nonexistence": [g.to_json() for g in self.nonexistence],
            "witnesses": [w.to_json() for w in self.witnesses],
            "complete": self.complete,
        }


def _close_order_2n(
    h: int, n: int, catalog: CatalogManifest | None, budget: int
) -> tuple[str, str, bool, Witness | None]:
    """Settle the |G| = 2n case by exhausting the catalog groups of that order.

    Per group, cheap sound filters run first: abelian groups fail the single
    branch entry outright, and any candidate c_1 must be an h-fold commutator
    product of order n.  A surviving candidate falls back to the full search.
    """
    order = 2 * n
    if catalog is None or not catalog.is_complete_at(order):
        return (
            "catalog-incomplete",
            f"need all groups of order {order}, catalog coverage incomplete there",
            False,
            None,
        )
    details = []
    for g in catalog.groups_of_order(order):
        if g.is_abelian:
            details.append(f"{g.name}: abelian-r1")
            continue
        order_n = [x for x in g.elements() if g.element_orders[x] == n]
        if not order_n:
            details.append(f"{g.name}: no element of order {n}")
            continue
        pool = commutator_products(g, h)
        if not any(g.inverse[c] in pool for c in order_n):
            details.append(f"{g.name}: no order-{n} element is an {h}-fold commutator product")
            continue
        verdict = search(g, OrbifoldSignature(h, (n,)), budget)
        if verdict.is_exists:
            witness = Witness(g.name, g.spec, OrbifoldSignature(h, (n,)), verdict.witness)
            return ("search-witness", f"{g.name}: vector found", False, witness)
        if verdict.is_unknown:
            return ("budget-exhausted", f"{g.name}: search budget exhausted", False, None)
        details.append(f"{g.name}: exhausted-search")
    return ("catalog-search", "; ".join(details), True, None)


def sporadic_analysis(
    h: int,
    p_list: Sequence[int],
    n_list: Sequence[int],
    catalog: CatalogManifest | None,
    budget: int = DEFAULT_BUDGET,
) -> SporadicReport:
    """Both directions of the r = 1 sporadic-point argument at quotient genus h > 1.

    Nonexistence: at genus p + 1 (p an odd prime), any group realizing (h, 1)
    with branch period n makes n(2h-1) - 1 divide 2p, leaving four divisor
    cases; two force h = 1, the 2p case forces a cyclic group, and the p case
    pins |G| = 2n, settled by exhaustive catalog search.  Existence: the
    generalized quaternion family provides (h, 1) at genus 2n(2(h-1)+1) - 1.
    """
    if h < 2:
        raise ValueError(f"quotient genus must be > 1, got {h}")
    genus_reports = []
    for p in p_list:
        if p < 3 or not _is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        sigma = p + 1
        cases: list[CaseRecord] = []
        # d = 1 and d = 2: n(2h-1) = d+1 <= 3 has no n >= 2 once h >= 2
        for d in (1, 2):
            cases.append(
                CaseRecord(
                    divisor=str(d),
                    n=None,
                    group_order=None,
                    rule="forces-h1",
                    detail=f"n(2h-1) = {d + 1} requires h = 1, contradicting h = {h}",
                    closed=True,
                )
            )
        # d = p: |G| = 2n with n = (p+1)/(2h-1)
        if (p + 1) % (2 * h - 1) == 0 and (n_mid := (p + 1) // (2 * h - 1)) >= 2:
            rule, detail, closed, witness = _close_order_2n(h, n_mid, catalog, budget)
            cases.append(
                CaseRecord(
                    divisor="p",
                    n=n_mid,
                    group_order=2 * n_mid,
                    rule=rule,
                    detail=detail,
                    closed=closed,
                    witness=witness,
                )
            )
        else:
            cases.append(
                CaseRecord(
                    divisor="p",
                    n=None,
                    group_order=None,
                    rule="arithmetic",
                    detail=f"(p+1)/(2h-1) = {p + 1}/{2 * h - 1} is not an integer >= 2",
                    closed=True,
                )
            )
        # d = 2p: |G| = n, which must contain an element of its own order
        if (2 * p + 1) % (2 * h - 1) == 0 and (n_last := (2 * p + 1) // (2 * h - 1)) >= 2:
            cases.append(
                CaseRecord(
                    divisor="2p",
                    n=n_last,
                    group_order=n_last,
                    rule="cyclic-forced",
                    detail=f"|G| = {n_last} with an element of order {n_last} is cyclic, "
                    f"hence abelian, impossible with one branch point",
                    closed=True,
                )
            )
        else:
            cases.append(
                CaseRecord(
                    divisor="2p",
                    n=None,
                    group_order=None,
                    rule="arithmetic",
                    detail=f"(2p+1)/(2h-1) = {2 * p + 1}/{2 * h - 1} is not an integer >= 2",
                    closed=True,
                )
            )
        if any(c.witness is not None for c in cases):
            verdict = "refuted"
        elif all(c.closed for c in cases):
            verdict = "not-exists"
        else:
            verdict = "partial"
        genus_reports.append(SporadicGenusReport(p, sigma, tuple(cases), verdict))
    witness_records = []
    for n in n_list:
        group, sig, vec = quaternion_vector(n, h)
        genus_fraction = rh_genus(group.order, sig)
        expected = 2 * n * (2 * (h - 1) + 1) - 1
        ok = verify(group, vec, sig) and genus_fraction == expected
        witness_records.append(
            QuaternionWitnessRecord(
                n=n,
                genus=expected,
                witness=Witness(group.name, group.spec, sig, vec),
                verified=ok,
            )
        )
    return SporadicReport(h, tuple(genus_reports), tuple(witness_records))


# ---------------------------------------------------------------------------
# figure dataset


@dataclass(frozen=True)
class FigureDataset:
    """Everything needed to draw the (h, r)-plane for one genus."""

    sigma: int
    lines: tuple[tuple[str, geometry.RationalLine], ...]
    gaps: tuple[GapRegion, ...]
    guide_r: int
    points: tuple[tuple[SkeletalSignature, str], ...]
    scope: SearchScope | None

    def to_csv_rows(self) -> list[tuple[int, int, str]]:
        return [(pt.h, pt.r, status) for pt, status in self.points]

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "lines": {name: line.to_json() for name, line in self.lines},
            "gaps": [g.to_json() for g in self.gaps],
            "guideR": self.guide_r,
            "points": [
                {"h": pt.h, "r": pt.r, "status": status} for pt, status in self.points
            ],
            "scope": None if self.scope is None else self.scope.to_json(),
        }


def figure_dataset(
    sigma: int,
    catalog: CatalogManifest | None = None,
    max_order: int | None = None,
    budget: int = DEFAULT_BUDGET,
    *,
    h_max: int | None = None,
    r_max: int | None = None,
    threads: int = 1,
) -> FigureDataset:
    """Point statuses plus the named line bundle for the genus-sigma plane.

    Lines: the order-2 (hyperelliptic) locus, the two boundaries of each of the
    order-3/4 and order-4/6 gaps, and the order-5 cyclic line that pierces the
    latter.  Statuses: realized / admissible for points of the feasible set,
    gap for certified-empty gap lattice points, exception-realized /
    exception-excluded for exception-line points settled by group search.
    """
    lines = (
        ("hyperelliptic", p_group_line(sigma, 2, 1)),
        ("lower-3", geometry.lower_line(sigma, 3)),
        ("upper-4", geometry.upper_line(sigma, 4)),
        ("lower-4", geometry.lower_line(sigma, 4)),
        ("upper-6", geometry.upper_line(sigma, 6)),
        ("cyclic-5", p_group_line(sigma, 5, 1)),
    )
    gaps = (gap(sigma, 3), gap(sigma, 4))
    feas = admissible_map(sigma, h_max, r_max, threads=threads)
    realized: dict[SkeletalSignature, Witness] = {}
    scope = None
    if catalog is not None:
        approx = realizable_set(
            sigma,
            catalog,
            max_order if max_order is not None else 15,
            budget,
            h_max=h_max,
            r_max=r_max,
            threads=threads,
        )
        realized = approx.realized
        scope = approx.scope
    status: dict[SkeletalSignature, str] = {}
    for pt in feas:
        status[pt] = "realized" if pt in realized else "admissible"
    for region in gaps:
        for pt in region.integer_points():
            status.setdefault(pt, "gap")
        for pt in region.exception_points():
            if catalog is not None:
                analysis = analyze_point(sigma, pt, catalog, budget)
                if analysis.status == "realized":
                    status[pt] = "exception-realized"
                elif analysis.status == "excluded":
                    status[pt] = "exception-excluded"
    points = tuple((pt, status[pt]) for pt in sorted(status))
    return FigureDataset(sigma, lines, gaps, 1, points, scope)
