"""Strong inclusion, the strongly-far relation, and its topological twin.

`strongly_far(A, B)` asks for a separating subset C with A far from X\\C
and C far from B, on top of A far from B; the witness search sweeps all
2^n candidates including the degenerate ends (empty and full), which are
flagged when they win. `hat_strongly_far` is the purely topological
variant: A and B must sit inside disjoint regular-open sets.

Empty inputs get a distinguished "degenerate" verdict instead of the
vacuous one the raw definitions would produce, so theorem sweeps can
quantify over nonempty sets only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CapExceededError, DEFAULT_EXHAUSTIVE_CAP, DEFAULT_WITNESS_CAP
from .proximity import ProximityRelation, check_axioms, is_compatible
from .spaces import GroundSpace, all_masks, regular_open_hull


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of a witness search.

    `witness` is the first witness in ascending mask order (tuples
    lexicographic); replaying the defining conditions on it succeeds
    whenever `holds`. `degenerate` marks empty inputs, for which no
    search was run. `degenerate_witness` marks a winning C that is the
    empty or the full set.
    """

    holds: bool
    witness: Optional[tuple[int, ...]] = None
    degenerate: bool = False
    degenerate_witness: bool = False


def strongly_included(prox: ProximityRelation, a: int, b: int) -> bool:
    """A far from the complement of B (written A << B)."""
    return prox.far(a, prox.space.complement(b))


def _raw_strongly_far(prox: ProximityRelation, a: int, b: int) -> Optional[int]:
    """First C (mask order) with A far X\\C and C far B, requiring A far B.

    Raw definition with no special handling of empty inputs; returns the
    witness mask or None.
    """
    if prox.near(a, b):
        return None
    full = prox.space.full_mask
    for c in all_masks(prox.space.n):
        if prox.far(a, full & ~c) and prox.far(c, b):
            return c
    return None


def strongly_far(
    prox: ProximityRelation, a: int, b: int, *, cap: int = DEFAULT_WITNESS_CAP
) -> WitnessResult:
    """Is A strongly far from B, and which C shows it?"""
    if a == 0 or b == 0:
        return WitnessResult(holds=False, degenerate=True)
    if prox.space.n > cap:
        raise CapExceededError("strongly_far", prox.space.n, cap)
    c = _raw_strongly_far(prox, a, b)
    if c is None:
        return WitnessResult(holds=False)
    return WitnessResult(
        holds=True, witness=(c,), degenerate_witness=c in (0, prox.space.full_mask)
    )


def replay_strongly_far(prox: ProximityRelation, a: int, b: int, c: int) -> bool:
    """Check the defining conditions of a strongly-far witness directly."""
    full = prox.space.full_mask
    return prox.far(a, b) and prox.far(a, full & ~c) and prox.far(c, b)


def hat_strongly_far(
    space: GroundSpace, a: int, b: int, *, cap: int = DEFAULT_WITNESS_CAP
) -> WitnessResult:
    """Do disjoint regular-open hulls int(cl E), int(cl C) cover A and B?

    The naive search is over pairs (E, C); since the conditions only see
    int(cl E), candidates collapse to the distinct regular-open hulls and
    the best C for each hull is memoized. The returned witness is still
    the first raw (E, C) pair in lexicographic mask order.
    """
    if a == 0 or b == 0:
        return WitnessResult(holds=False, degenerate=True)
    n = space.n
    if n > cap:
        raise CapExceededError("hat_strongly_far", n, cap)
    hulls = [regular_open_hull(space, m) for m in all_masks(n)]
    best_c: dict[int, int] = {}
    for e in all_masks(n):
        u = hulls[e]
        if a & ~u:
            continue
        if u not in best_c:
            found = -1
            for c in all_masks(n):
                v = hulls[c]
                if b & ~v == 0 and u & v == 0:
                    found = c
                    break
            best_c[u] = found
        c = best_c[u]
        if c >= 0:
            return WitnessResult(holds=True, witness=(e, c))
    return WitnessResult(holds=False)


def replay_hat_strongly_far(space: GroundSpace, a: int, b: int, e: int, c: int) -> bool:
    u = regular_open_hull(space, e)
    v = regular_open_hull(space, c)
    return a & ~u == 0 and b & ~v == 0 and u & v == 0


def derived_near_from_sf(prox: ProximityRelation) -> ProximityRelation:
    """The relation whose far part is exactly strongly-far.

    Built on the raw definition, so empty sets stay far through P1 of the
    underlying relation and the result can be fed back to check_axioms.
    """

    def derived(a: int, b: int) -> bool:
        return _raw_strongly_far(prox, a, b) is None

    return ProximityRelation(prox.space, "derived-sf", derived, {"base": prox.kind})


@dataclass(frozen=True)
class SfImpliesHatReport:
    """Sweep of strongly_far => hat_strongly_far over nonempty pairs."""

    applicable: bool
    reason: str
    pairs_checked: int = 0
    violations: tuple[tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return self.applicable and not self.violations


def check_sf_implies_hat(
    space: GroundSpace,
    prox: ProximityRelation,
    *,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> SfImpliesHatReport:
    """Check that every strongly-far pair is hat-strongly-far.

    Precondition: the relation is Lodato and compatible with the space's
    topology (the implication leans on P4 plus topological closure); if
    not, the check is skipped and the report says why.
    """
    if prox.space is not space and prox.space != space:
        return SfImpliesHatReport(False, "relation lives on a different space")
    if space.n > cap:
        raise CapExceededError("check_sf_implies_hat", space.n, cap)
    report = check_axioms(prox, cap=cap)
    if not report.is_lodato:
        return SfImpliesHatReport(False, f"relation is {report.classification}, not lodato")
    if not is_compatible(prox):
        return SfImpliesHatReport(False, "relation is not compatible with the topology")

    violations = []
    checked = 0
    for a in all_masks(space.n):
        if a == 0:
            continue
        for b in all_masks(space.n):
            if b == 0:
                continue
            checked += 1
            if strongly_far(prox, a, b).holds and not hat_strongly_far(space, a, b).holds:
                violations.append((a, b))
    return SfImpliesHatReport(True, "checked", checked, tuple(violations))


@dataclass(frozen=True)
class FarVsSfReport:
    """Partition of the nonempty far pairs by strong farness."""

    far_and_strongly_far: int
    far_not_strongly_far: int
    examples_strongly_far: tuple[tuple[int, int], ...]
    examples_not_strongly_far: tuple[tuple[int, int], ...]

    @property
    def collapse(self) -> bool:
        """True when far and strongly-far coincide (the EF situation)."""
        return self.far_not_strongly_far == 0


def check_far_vs_sf(
    prox: ProximityRelation,
    *,
    examples_cap: int = 5,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
) -> FarVsSfReport:
    """Classify every far pair of nonempty subsets by strong farness."""
    n = prox.space.n
    if n > cap:
        raise CapExceededError("check_far_vs_sf", n, cap)
    both = 0
    far_only = 0
    ex_both: list[tuple[int, int]] = []
    ex_far: list[tuple[int, int]] = []
    for a in all_masks(n):
        if a == 0:
            continue
        for b in all_masks(n):
            if b == 0 or prox.near(a, b):
                continue
            if _raw_strongly_far(prox, a, b) is not None:
                both += 1
                if len(ex_both) < examples_cap:
                    ex_both.append((a, b))
            else:
                far_only += 1
                if len(ex_far) < examples_cap:
                    ex_far.append((a, b))
    return FarVsSfReport(both, far_only, tuple(ex_both), tuple(ex_far))
