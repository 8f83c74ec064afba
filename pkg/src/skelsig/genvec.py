"""Generating vectors: verification, exhaustive search, and realizability.

A group G acts on a genus-sigma surface with signature (h; n_1..n_r) iff the
Riemann-Hurwitz formula holds and G has an (h; n_1..n_r)-generating vector
(a_1, b_1, ..., a_h, b_h, c_1, ..., c_r) satisfying

  (1) the entries generate G,
  (2) c_j has order n_j,
  (3) [a_1,b_1]...[a_h,b_h] c_1...c_r = identity,

with the commutator convention [a, b] = a^-1 b^-1 a b fixed once here and in
``GroupTable.commutator``.  The search is a plain exhaustive enumeration with
three sound prunes (candidate c_j restricted by order, the last c forced by
condition (3), and an abelian shortcut for r = 1); no symmetry reduction is
applied, so a negative verdict is a certificate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .groups import GroupTable, build_cyclic, build_generalized_quaternion
from .rh import OrbifoldSignature, SearchVerdict, SkeletalSignature, rh_genus, rh_holds

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class GeneratingVector:
    """Element indices (a_i, b_i) pairs plus the branch entries c_j."""

    a_pairs: tuple[tuple[int, int], ...]
    c_list: tuple[int, ...]

    def flatten(self) -> tuple[int, ...]:
        flat: list[int] = []
        for a, b in self.a_pairs:
            flat.extend((a, b))
        flat.extend(self.c_list)
        return tuple(flat)

    def to_json(self) -> dict:
        return {"aPairs": [list(p) for p in self.a_pairs], "c": list(self.c_list)}


@dataclass(frozen=True)
class VectorCheck:
    """Per-condition diagnostics for a candidate vector."""

    generates: bool
    orders_ok: tuple[bool, ...]
    product_ok: bool

    @property
    def ok(self) -> bool:
        return self.generates and all(self.orders_ok) and self.product_ok


def check_vector(group: GroupTable, vec: GeneratingVector, sig: OrbifoldSignature) -> VectorCheck:
    if len(vec.a_pairs) != sig.h or len(vec.c_list) != sig.r:
        raise ValueError(
            f"vector shape ({len(vec.a_pairs)} pairs, {len(vec.c_list)} branch entries) "
            f"does not match signature {sig}"
        )
    orders_ok = tuple(
        group.element_order(c) == n for c, n in zip(vec.c_list, sig.periods)
    )
    prod = group.identity
    for a, b in vec.a_pairs:
        prod = group.mul(prod, group.commutator(a, b))
    for c in vec.c_list:
        prod = group.mul(prod, c)
    return VectorCheck(
        generates=group.generates(vec.flatten()),
        orders_ok=orders_ok,
        product_ok=prod == group.identity,
    )


def verify(group: GroupTable, vec: GeneratingVector, sig: OrbifoldSignature) -> bool:
    return check_vector(group, vec, sig).ok


def search(
    group: GroupTable, sig: OrbifoldSignature, budget: int = DEFAULT_BUDGET
) -> SearchVerdict:
    """Exhaustive generating-vector search; first witness in ascending index order.

    ``not_exists`` is only returned when the pruned space was fully enumerated;
    exceeding ``budget`` (counted in candidate tuples examined) yields
    ``unknown``.  Verdicts are deterministic.
    """
    h, periods = sig.h, sig.periods
    r = len(periods)
    n = group.order
    if group.is_abelian and r == 1:
        # condition (3) forces c_1 = e in an abelian group, but c_1 needs order >= 2
        return SearchVerdict.not_exists()
    candidates: list[list[int]] = []
    for p in periods:
        cand = [g for g in group.elements() if group.element_orders[g] == p]
        if not cand:
            return SearchVerdict.not_exists()
        candidates.append(cand)
    free_c = candidates[:-1] if r else []
    last_period = periods[-1] if r else None
    mul = group.mul
    orders = group.element_orders
    inv = group.inverse
    examined = 0
    for a_tuple in itertools.product(range(n), repeat=2 * h):
        comm_prod = 0
        for i in range(h):
            comm_prod = mul(comm_prod, group.commutator(a_tuple[2 * i], a_tuple[2 * i + 1]))
        for c_prefix in itertools.product(*free_c):
            examined += 1
            if examined > budget:
                return SearchVerdict.unknown()
            if r:
                prod = comm_prod
                for c in c_prefix:
                    prod = mul(prod, c)
                c_last = inv[prod]
                if orders[c_last] != last_period:
                    continue
                elements = a_tuple + c_prefix + (c_last,)
            else:
                if comm_prod != 0:
                    continue
                elements = a_tuple
            if group.generates(elements):
                pairs = tuple((a_tuple[2 * i], a_tuple[2 * i + 1]) for i in range(h))
                return SearchVerdict.exists(GeneratingVector(pairs, elements[2 * h :]))
    return SearchVerdict.not_exists()


def naive_search(group: GroupTable, sig: OrbifoldSignature) -> SearchVerdict:
    """Unpruned oracle: enumerate every tuple in G^(2h+r) and test all conditions.

    Exponentially slower than ``search``; exists so the pruned search can be
    checked against it on small groups.
    """
    h, periods = sig.h, sig.periods
    r = len(periods)
    n = group.order
    mul = group.mul
    orders = group.element_orders
    for tup in itertools.product(range(n), repeat=2 * h + r):
        ok = True
        for j in range(r):
            if orders[tup[2 * h + j]] != periods[j]:
                ok = False
                break
        if not ok:
            continue
        prod = 0
        for i in range(h):
            prod = mul(prod, group.commutator(tup[2 * i], tup[2 * i + 1]))
        for j in range(r):
            prod = mul(prod, tup[2 * h + j])
        if prod != 0:
            continue
        if group.generates(tup):
            pairs = tuple((tup[2 * i], tup[2 * i + 1]) for i in range(h))
            return SearchVerdict.exists(GeneratingVector(pairs, tup[2 * h :]))
    return SearchVerdict.not_exists()


def quaternion_vector(
    n: int, h: int
) -> tuple[GroupTable, OrbifoldSignature, GeneratingVector]:
    """Witness vector for the order-4n generalized quaternion group at quotient genus h.

    The vector is (x, y, e, ..., e, x^2): [x, y] = x^-2 under the fixed
    convention, x^2 has order n, and x, y generate, so it is an
    (h; n)-generating vector and the group acts on a surface of genus
    2n(2(h-1)+1) - 1.
    """
    if n < 2:
        raise ValueError(f"quaternion parameter must be >= 2, got {n}")
    if h < 1:
        raise ValueError(f"quotient genus must be >= 1, got {h}")
    group = build_generalized_quaternion(n)
    x, y, x_sq = 1, 2 * n, 2
    sig = OrbifoldSignature(h, (n,))
    vec = GeneratingVector(((x, y),) + ((0, 0),) * (h - 1), (x_sq,))
    if not verify(group, vec, sig):
        raise AssertionError(f"quaternion vector failed verification for n={n}, h={h}")
    return group, sig, vec


def unbranched_cyclic(
    sigma: int, order: int
) -> tuple[GroupTable, OrbifoldSignature, GeneratingVector] | None:
    """Unbranched cyclic witness at ((sigma-1)/order + 1, 0), when the order divides sigma-1.

    The vector puts a generator in a_1 and identities elsewhere; all
    commutators vanish, so the product condition is trivial.
    """
    if sigma < 2:
        raise ValueError(f"genus must be >= 2, got {sigma}")
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    if (sigma - 1) % order != 0:
        return None
    h = (sigma - 1) // order + 1
    group = build_cyclic(order)
    sig = OrbifoldSignature(h, ())
    vec = GeneratingVector(((1, 0),) + ((0, 0),) * (h - 1), ())
    if not verify(group, vec, sig):
        raise AssertionError(f"unbranched cyclic vector failed for sigma={sigma}, N={order}")
    return group, sig, vec


def all_groups_unbranched_condition(sigma: int, order: int) -> bool:
    """Sufficient condition for ((sigma-1)/N + 1, 0) to be a skeletal signature of every order-N group.

    Evaluates (sigma-1)/N + 1 >= n + 1 where n is the largest exponent of any
    prime power dividing N (generating sets of such groups have at most n + 1
    elements).  Predicate only; no search.
    """
    if sigma < 2:
        raise ValueError(f"genus must be >= 2, got {sigma}")
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    n = _max_prime_exponent(order)
    return Fraction(sigma - 1, order) + 1 >= n + 1


def _max_prime_exponent(n: int) -> int:
    best = 0
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            best = max(best, k)
        p += 1
    if m > 1:
        best = max(best, 1)
    return best


# ---------------------------------------------------------------------------
# realizability of a skeletal signature by one concrete group


def vector_words(group_spec: str | None, vec: GeneratingVector) -> dict | None:
    """Element words for the vector when the group has a usable normal form."""
    if not group_spec or not group_spec.startswith("quaternion:"):
        return None
    from .groups import quaternion_word

    n = int(group_spec.partition(":")[2])
    return {
        "aPairs": [[quaternion_word(n, a), quaternion_word(n, b)] for a, b in vec.a_pairs],
        "c": [quaternion_word(n, c) for c in vec.c_list],
    }


@dataclass(frozen=True)
class Witness:
    """Serializable record of a found action."""

    group_name: str
    group_spec: str | None
    signature: OrbifoldSignature
    vector: GeneratingVector

    def to_json(self) -> dict:
        out = {
            "group": self.group_name,
            "spec": self.group_spec,
            "signature": {"h": self.signature.h, "periods": list(self.signature.periods)},
            "vector": self.vector.to_json(),
        }
        words = vector_words(self.group_spec, self.vector)
        if words is not None:
            out["words"] = words
        return out


@dataclass(frozen=True)
class ExclusionReason:
    rule: str  # arithmetic | abelian-r1 | cyclic-forced | exhausted-search
    scope: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "scope": self.scope}


@dataclass(frozen=True)
class RealizabilityReport:
    verdict: SearchVerdict
    witness: Witness | None
    exclusion_reasons: tuple[ExclusionReason, ...]

    def __post_init__(self) -> None:
        if self.verdict.is_not_exists and not self.exclusion_reasons:
            raise AssertionError("a nonexistence report must carry at least one reason")

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.status,
            "witness": None if self.witness is None else self.witness.to_json(),
            "exclusionReasons": [e.to_json() for e in self.exclusion_reasons],
        }


def feasible_period_multisets(
    sigma: int, h: int, r: int, order: int, allowed: list[int]
) -> Iterator[tuple[int, ...]]:
    """All non-decreasing period lists over ``allowed`` satisfying Riemann-Hurwitz."""
    target = 2 * (h - 1) + r - Fraction(2 * (sigma - 1), order)
    if r == 0:
        if target == 0:
            yield ()
        return
    if target <= 0 or not allowed:
        return
    allowed = sorted(allowed)

    def walk(start: int, slots: int, t: Fraction) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            if t.numerator == 1:
                m = t.denominator
                if m >= allowed[start] and m in allowed:
                    yield (m,)
            return
        if t < slots * Fraction(1, allowed[-1]):
            return
        for i in range(start, len(allowed)):
            m = allowed[i]
            rec = Fraction(1, m)
            if rec * slots < t:
                break
            if rec >= t:
                continue
            for rest in walk(i, slots - 1, t - rec):
                yield (m,) + rest

    yield from walk(0, r, target)


def realizable(
    group: GroupTable,
    sigma: int,
    skel: SkeletalSignature,
    budget: int = DEFAULT_BUDGET,
) -> RealizabilityReport:
    """Decide whether this group realizes the skeletal signature at this genus.

    Enumerates period multisets drawn from the group's element orders that
    satisfy Riemann-Hurwitz, then searches each for a generating vector.
    Exists dominates; not-exists requires every branch exhausted; otherwise
    unknown.
    """
    h, r = SkeletalSignature(*skel)
    element_orders = sorted({k for k in group.element_orders if k >= 2})
    multisets = list(feasible_period_multisets(sigma, h, r, group.order, element_orders))
    if not multisets:
        return RealizabilityReport(
            SearchVerdict.not_exists(),
            None,
            (
                ExclusionReason(
                    "arithmetic",
                    f"no period multiset over element orders of {group.name} "
                    f"satisfies Riemann-Hurwitz at genus {sigma}",
                ),
            ),
        )
    if group.is_abelian and r == 1:
        return RealizabilityReport(
            SearchVerdict.not_exists(),
            None,
            (
                ExclusionReason(
                    "abelian-r1",
                    f"{group.name} is abelian and a single branch entry of order >= 2 "
                    f"cannot be a product of commutators",
                ),
            ),
        )
    saw_unknown = False
    for periods in multisets:
        sig = OrbifoldSignature(h, periods)
        assert rh_holds(sigma, group.order, sig)
        verdict = search(group, sig, budget)
        if verdict.is_exists:
            witness = Witness(group.name, group.spec, sig, verdict.witness)
            return RealizabilityReport(SearchVerdict.exists(witness), witness, ())
        if verdict.is_unknown:
            saw_unknown = True
    if saw_unknown:
        return RealizabilityReport(SearchVerdict.unknown(), None, ())
    return RealizabilityReport(
        SearchVerdict.not_exists(),
        None,
        (
            ExclusionReason(
                "exhausted-search",
                f"all {len(multisets)} feasible signatures for {group.name} "
                f"searched exhaustively",
            ),
        ),
    )


def commutator_products(group: GroupTable, h: int) -> frozenset[int]:
    """Values of [a_1,b_1]...[a_h,b_h] over all choices; closed under inverse.

    Padding with [e, e] makes the sets nested in h, so this is a sound filter:
    any (h; n)-vector's c_1 must be the inverse of such a product, hence lie in
    this set.
    """
    single = {group.commutator(a, b) for a in group.elements() for b in group.elements()}
    current = frozenset(single)
    for _ in range(h - 1):
        nxt = {group.mul(x, y) for x in current for y in single}
        if nxt == current:
            break
        current = frozenset(nxt)
    return current
