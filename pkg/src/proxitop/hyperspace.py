"""Hyperspace CL(X) and the hit / miss / far-miss subbase machinery.

CL(X) is the set of nonempty closed subsets, enumerated in ascending
mask order; a family of hyperpoints is then itself a bitmask with one
bit per hyperpoint. A topology on CL(X) is represented by a base (all
finite intersections of a subbase), never by its full open family, and
refinement between two bases is decided pointwise: left refines right
iff inside every right base element every hyperpoint has an interposing
left base element. On a finite hyperspace the intersection of all left
subbase members through a point is itself a base element and is the best
possible interposition, which keeps the test linear in the base size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    CapExceededError,
    DEFAULT_BASE_CAP,
    DEFAULT_EXHAUSTIVE_CAP,
    DEFAULT_HYPER_CAP,
    HyperspaceMismatchError,
    NotOpenError,
    ToolkitError,
)
from .proximity import (
    CompactnessIdeal,
    ProximityRelation,
    check_axioms,
    is_compatible,
)
from .spaces import GroundSpace
from .strong import _raw_strongly_far


def enumerate_cl(space: GroundSpace, *, cap: int = DEFAULT_HYPER_CAP) -> tuple[int, ...]:
    """All nonempty closed masks, ascending: the hyperpoints of CL(X)."""
    cl = tuple(m for m in space.closed if m != 0)
    if len(cl) > cap:
        raise CapExceededError("enumerate_cl", len(cl), cap)
    return cl


@dataclass(frozen=True)
class HyperFamily:
    """A set of hyperpoints, as a bitmask over the enumerated CL(X).

    `provenance` records which generators produced it, as (tag, parameter
    mask) pairs; families that coincide as masks are merged and keep
    every tag.
    """

    mask: int
    provenance: tuple[tuple[str, int], ...] = ()


def _require_open(space: GroundSpace, mask: int, what: str) -> None:
    if not space.is_open(mask):
        raise NotOpenError(f"{what} must be an open set, got {space.format(mask)}")


def hit_set(space: GroundSpace, v: int) -> HyperFamily:
    """{ E in CL(X) : E meets V }, for open V."""
    _require_open(space, v, "hit parameter")
    cl = enumerate_cl(space)
    mask = 0
    for idx, e in enumerate(cl):
        if e & v:
            mask |= 1 << idx
    return HyperFamily(mask, (("hit", v),))


def miss_set(space: GroundSpace, w: int) -> HyperFamily:
    """{ E in CL(X) : E inside W }, for open W."""
    _require_open(space, w, "miss parameter")
    cl = enumerate_cl(space)
    mask = 0
    for idx, e in enumerate(cl):
        if e & ~w == 0:
            mask |= 1 << idx
    return HyperFamily(mask, (("miss", w),))


def far_miss_set(prox: ProximityRelation, a: int) -> HyperFamily:
    """{ E in CL(X) : E far from X\\A }, for open A.

    With A = X the complement is empty and every hyperpoint is included,
    matching the convention that everything is far from the empty set.
    """
    space = prox.space
    _require_open(space, a, "far-miss parameter")
    cl = enumerate_cl(space)
    comp = space.complement(a)
    mask = 0
    for idx, e in enumerate(cl):
        if comp == 0 or prox.far(e, comp):
            mask |= 1 << idx
    return HyperFamily(mask, (("far-miss", a),))


def sf_miss_set(
    prox: ProximityRelation, a: int, *, cap: int = DEFAULT_EXHAUSTIVE_CAP
) -> HyperFamily:
    """{ E in CL(X) : E strongly far from X\\A }, for open A."""
    space = prox.space
    _require_open(space, a, "strongly-far-miss parameter")
    if space.n > cap:
        raise CapExceededError("sf_miss_set", space.n, cap)
    cl = enumerate_cl(space)
    comp = space.complement(a)
    mask = 0
    for idx, e in enumerate(cl):
        if comp == 0 or _raw_strongly_far(prox, e, comp) is not None:
            mask |= 1 << idx
    return HyperFamily(mask, (("sf-miss", a),))


@dataclass(frozen=True)
class HyperTopologyBase:
    """A subbase on CL(X) together with its finite-intersection base.

    `cl` is the enumerated hyperspace the family masks refer to; `base`
    is every finite intersection of subbase members (the empty
    intersection contributes the full hyperspace), ascending and deduped.
    """

    space: GroundSpace
    cl: tuple[int, ...]
    kind: str
    subbase: tuple[HyperFamily, ...]
    base: tuple[int, ...]

    @property
    def full_family(self) -> int:
        return (1 << len(self.cl)) - 1


TOPOLOGY_KINDS = ("vietoris", "fell", "hit_and_miss", "far_miss", "sf_miss")
MISS_ONLY_KINDS = ("far_miss_only", "sf_miss_only")


def _dedup_subbase(families: list[HyperFamily]) -> tuple[HyperFamily, ...]:
    merged: dict[int, list[tuple[str, int]]] = {}
    order: list[int] = []
    for fam in families:
        if fam.mask not in merged:
            merged[fam.mask] = []
            order.append(fam.mask)
        merged[fam.mask].extend(fam.provenance)
    return tuple(HyperFamily(m, tuple(merged[m])) for m in sorted(order))


def _close_under_intersection(
    subbase: tuple[HyperFamily, ...], full: int, cap: int
) -> tuple[int, ...]:
    base = {full}
    frontier = [full]
    gens = sorted({f.mask for f in subbase})
    while frontier:
        nxt = []
        for g in gens:
            for b in frontier:
                m = g & b
                if m not in base:
                    base.add(m)
                    nxt.append(m)
                    if len(base) > cap:
                        raise CapExceededError("base generation", len(base), cap)
        frontier = nxt
    return tuple(sorted(base))


def build_topology(
    space: GroundSpace,
    kind: str,
    *,
    prox: Optional[ProximityRelation] = None,
    ideal: Optional[CompactnessIdeal] = None,
    family: Optional[tuple[int, ...]] = None,
    hyper_cap: int = DEFAULT_HYPER_CAP,
    base_cap: int = DEFAULT_BASE_CAP,
) -> HyperTopologyBase:
    """Build a hit-and-miss style topology base on CL(X).

    Kinds join the hit sets of every open with a miss half:

      vietoris      miss sets of every open
      fell          miss sets of opens whose complement is in `ideal`
      hit_and_miss  miss sets of opens whose complement is in `family`
      far_miss      far-miss sets of every open (needs `prox`)
      sf_miss       strongly-far-miss sets of every open (needs `prox`)

    The `_only` variants (far_miss_only, sf_miss_only) drop the hit half,
    which is what comparing the pure miss topologies calls for.
    """
    include_hits = True
    miss_kind = kind
    if kind in MISS_ONLY_KINDS:
        include_hits = False
        miss_kind = kind[: -len("_only")]
    elif kind not in TOPOLOGY_KINDS:
        raise ToolkitError(f"unknown topology kind {kind!r}")

    cl = enumerate_cl(space, cap=hyper_cap)
    families: list[HyperFamily] = []
    if include_hits:
        families.extend(hit_set(space, v) for v in space.opens)

    if miss_kind == "vietoris":
        families.extend(miss_set(space, w) for w in space.opens)
    elif miss_kind == "fell":
        if ideal is None:
            raise ToolkitError("fell topology needs a compactness ideal")
        families.extend(
            miss_set(space, w) for w in space.opens if space.complement(w) in ideal
        )
    elif miss_kind == "hit_and_miss":
        if family is None:
            raise ToolkitError("hit_and_miss topology needs a family of closed sets")
        for c in family:
            if not space.is_closed(c):
                raise ToolkitError(f"family member {space.format(c)} is not closed")
        members = set(family)
        families.extend(
            miss_set(space, w) for w in space.opens if space.complement(w) in members
        )
    elif miss_kind == "far_miss":
        if prox is None:
            raise ToolkitError("far_miss topology needs a proximity")
        families.extend(far_miss_set(prox, a) for a in space.opens)
    elif miss_kind == "sf_miss":
        if prox is None:
            raise ToolkitError("sf_miss topology needs a proximity")
        families.extend(sf_miss_set(prox, a) for a in space.opens)

    subbase = _dedup_subbase(families)
    base = _close_under_intersection(subbase, (1 << len(cl)) - 1, base_cap)
    return HyperTopologyBase(space, cl, kind, subbase, base)


@dataclass(frozen=True)
class RefinesResult:
    refines: bool
    # on failure: (right base element, hyperpoint index) with no interposition
    witness: Optional[tuple[int, int]] = None


def _check_same_hyperspace(left: HyperTopologyBase, right: HyperTopologyBase) -> None:
    if left.cl != right.cl:
        raise HyperspaceMismatchError(
            "bases enumerate different hyperspaces "
            f"({len(left.cl)} vs {len(right.cl)} hyperpoints)"
        )


def refines(left: HyperTopologyBase, right: HyperTopologyBase) -> RefinesResult:
    """Does left's topology contain right's?

    Pointwise test: every base element G of right must, at each of its
    hyperpoints p, admit a left base element G' with p in G' inside G.
    The minimal left neighborhood of p (intersection of all left subbase
    members through p) decides existence; the witness on failure is the
    first (G, p) in ascending order.
    """
    _check_same_hyperspace(left, right)
    count = len(left.cl)
    full = (1 << count) - 1
    min_nbhd = []
    for idx in range(count):
        m = full
        bit = 1 << idx
        for fam in left.subbase:
            if fam.mask & bit:
                m &= fam.mask
        min_nbhd.append(m)
    for g in right.base:
        rest = g
        while rest:
            low = rest & -rest
            idx = low.bit_length() - 1
            rest ^= low
            if min_nbhd[idx] & ~g:
                return RefinesResult(False, (g, idx))
    return RefinesResult(True)


VERDICT_EQUAL = "equal"
VERDICT_LEFT_FINER = "left-strictly-finer"
VERDICT_RIGHT_FINER = "right-strictly-finer"
VERDICT_INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class ComparisonResult:
    verdict: str
    left_refines_right: RefinesResult
    right_refines_left: RefinesResult


def compare(left: HyperTopologyBase, right: HyperTopologyBase) -> ComparisonResult:
    """Combine both refinement directions into one verdict."""
    lr = refines(left, right)
    rl = refines(right, left)
    if lr.refines and rl.refines:
        verdict = VERDICT_EQUAL
    elif lr.refines:
        verdict = VERDICT_LEFT_FINER
    elif rl.refines:
        verdict = VERDICT_RIGHT_FINER
    else:
        verdict = VERDICT_INCOMPARABLE
    return ComparisonResult(verdict, lr, rl)


# -- inclusion laws relating the miss halves ---------------------------


@dataclass(frozen=True)
class InclusionContainmentReport:
    """Sweep of: far-miss(U) inside sf-miss(W) forces U inside W.

    Equivalently, with B = X\\U and C = X\\W closed: if every closed set
    far from B is strongly far from C, then C is contained in B. Holds
    for compatible Lodato relations; the check is skipped otherwise.
    """

    applicable: bool
    reason: str
    pairs_checked: int = 0
    violations: tuple[tuple[int, int], ...] = ()  # (U, W) open pairs

    @property
    def ok(self) -> bool:
        return self.applicable and not self.violations


def check_inclusion_containment(
    space: GroundSpace,
    prox: ProximityRelation,
    *,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> InclusionContainmentReport:
    if prox.space is not space and prox.space != space:
        return InclusionContainmentReport(False, "relation lives on a different space")
    if space.n > cap:
        raise CapExceededError("check_inclusion_containment", space.n, cap)
    report = check_axioms(prox, cap=cap)
    if not report.is_lodato:
        return InclusionContainmentReport(
            False, f"relation is {report.classification}, not lodato"
        )
    if not is_compatible(prox):
        return InclusionContainmentReport(
            False, "relation is not compatible with the topology"
        )
    far_families = {a: far_miss_set(prox, a).mask for a in space.opens}
    sf_families = {a: sf_miss_set(prox, a, cap=cap).mask for a in space.opens}
    violations = []
    checked = 0
    for u in space.opens:
        for w in space.opens:
            checked += 1
            if far_families[u] & ~sf_families[w] == 0 and u & ~w:
                violations.append((u, w))
    return InclusionContainmentReport(True, "checked", checked, tuple(violations))


@dataclass(frozen=True)
class MissHalvesReport:
    """Per-model record of: sf-miss(H) inside far-miss(E) iff H inside E.

    The backward direction holds for every basic relation; the forward
    direction can fail on small models, and failures are reported as
    scope notes rather than errors.
    """

    backward_violations: tuple[tuple[int, int], ...]  # should stay empty
    forward_failures: tuple[tuple[int, int], ...]  # informational
    pairs_checked: int


def check_miss_half_inclusions(
    prox: ProximityRelation, *, cap: int = DEFAULT_EXHAUSTIVE_CAP
) -> MissHalvesReport:
    space = prox.space
    if space.n > cap:
        raise CapExceededError("check_miss_half_inclusions", space.n, cap)
    far_families = {a: far_miss_set(prox, a).mask for a in space.opens}
    sf_families = {a: sf_miss_set(prox, a, cap=cap).mask for a in space.opens}
    backward = []
    forward = []
    checked = 0
    for h in space.opens:
        for e in space.opens:
            checked += 1
            included = sf_families[h] & ~far_families[e] == 0
            if h & ~e == 0 and not included:
                backward.append((h, e))
            if included and h & ~e:
                forward.append((h, e))
    return MissHalvesReport(tuple(backward), tuple(forward), checked)
