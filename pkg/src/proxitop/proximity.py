"""Proximity relations on the power set and their axiom checkers.

A proximity is a symmetric "nearness" relation between subsets. The
checker verifies, exhaustively over bitmask-encoded subsets:

  P0  symmetry
  P1  nothing is near the empty set
  P2  overlapping sets are near
  P3  A near (B u C)  iff  A near B or A near C
  P4  A near B, and every point of B near C  =>  A near C   (Lodato)
  P5  distinct singletons are never near                     (separated)
  EF  far pairs are separated by an intermediate set E with
      A far E and X\\E far B                                  (Efremovic)

EF is also checked in its betweenness form over strong inclusions
(A << B  =>  exists C with A << C << B); the two verdicts are proved
equal by the exhaustive property tests. Classification ranks a relation
not-basic < basic (P0-P3) < lodato (+P4) < ef (P0-P3 + EF).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import CapExceededError, DEFAULT_EXHAUSTIVE_CAP, ToolkitError
from .spaces import GroundSpace, Metric, all_masks, bits_of, closure

AXIOM_NAMES = ("P0", "P1", "P2", "P3", "P4", "P5", "EF", "EF-betweenness")

CLASS_NOT_BASIC = "not-basic"
CLASS_BASIC = "basic"
CLASS_LODATO = "lodato"
CLASS_EF = "ef"


class ProximityRelation:
    """A total symmetric relation over pairs of subset masks.

    Verdicts are produced by `rule` and memoized under the unordered pair
    key, so symmetry (P0) holds structurally and repeated queries are
    dict lookups. `eval_count` counts `near` calls; the model searcher
    uses it as its budget unit. The memo behaves as a write-once cache:
    a pair's verdict never changes once computed.
    """

    __slots__ = ("space", "kind", "params", "_rule", "_memo", "eval_count")

    def __init__(
        self,
        space: GroundSpace,
        kind: str,
        rule: Callable[[int, int], bool],
        params: Optional[dict] = None,
    ):
        self.space = space
        self.kind = kind
        self.params = params or {}
        self._rule = rule
        self._memo: dict[tuple[int, int], bool] = {}
        self.eval_count = 0

    def near(self, a: int, b: int) -> bool:
        self.eval_count += 1
        key = (a, b) if a <= b else (b, a)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._rule(key[0], key[1])
            self._memo[key] = hit
        return hit

    def far(self, a: int, b: int) -> bool:
        return not self.near(a, b)

    def __repr__(self) -> str:
        return f"ProximityRelation(kind={self.kind!r}, n={self.space.n})"


# -- concrete constructors --------------------------------------------


def overlap_proximity(space: GroundSpace) -> ProximityRelation:
    """A near B iff their closures meet."""

    def rule(a: int, b: int) -> bool:
        return closure(space, a) & closure(space, b) != 0

    return ProximityRelation(space, "overlap", rule)


def gap_proximity(space: GroundSpace, metric: Metric, epsilon) -> ProximityRelation:
    """A near B iff both are nonempty and min-distance(A, B) <= epsilon."""
    if metric.n != space.n:
        raise ToolkitError("metric dimension must match the space")
    eps = epsilon if isinstance(epsilon, Fraction) else Fraction(epsilon)
    if eps < 0:
        raise ToolkitError("epsilon must be non-negative")

    def rule(a: int, b: int) -> bool:
        g = metric.gap(a, b)
        return g is not None and g <= eps

    return ProximityRelation(space, "gap", rule, {"epsilon": eps, "metric": metric})


@dataclass(frozen=True)
class CompactnessIdeal:
    """A family of closed sets standing in for "the compact sets".

    Invariants: contains the empty set, downward closed among closed
    sets, and closed under pairwise union. On a finite space this forces
    a unique maximal member, so every valid ideal is the family of
    closed subsets of one closed set.
    """

    space: GroundSpace
    members: frozenset[int]

    def __post_init__(self):
        space = self.space
        for m in self.members:
            if not space.is_closed(m):
                raise ToolkitError(f"ideal member {space.format(m)} is not closed")
        if 0 not in self.members:
            raise ToolkitError("ideal must contain the empty set")
        for m in self.members:
            for c in space.closed:
                if c & ~m == 0 and c not in self.members:
                    raise ToolkitError(
                        f"ideal not downward closed: {space.format(c)} below "
                        f"{space.format(m)} is missing"
                    )
        for a in self.members:
            for b in self.members:
                if (a | b) not in self.members:
                    raise ToolkitError(
                        f"ideal not union closed: {space.format(a)} | {space.format(b)} missing"
                    )

    @classmethod
    def principal(cls, space: GroundSpace, top: int) -> "CompactnessIdeal":
        """All closed subsets of one closed set `top`."""
        if not space.is_closed(top):
            raise ToolkitError(f"{space.format(top)} is not closed")
        return cls(space, frozenset(c for c in space.closed if c & ~top == 0))

    @classmethod
    def all_closed(cls, space: GroundSpace) -> "CompactnessIdeal":
        return cls(space, frozenset(space.closed))

    def __contains__(self, mask: int) -> bool:
        return mask in self.members

    @property
    def top(self) -> int:
        return max(self.members)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


def alexandroff_proximity(space: GroundSpace, ideal: CompactnessIdeal) -> ProximityRelation:
    """A near B iff closures meet, or both closures fall outside the ideal.

    The empty set is hard-coded far from everything; its closure lies in
    the ideal anyway, so the override only documents intent.
    """
    if ideal.space is not space and ideal.space != space:
        raise ToolkitError("ideal belongs to a different space")

    def rule(a: int, b: int) -> bool:
        if a == 0 or b == 0:
            return False
        ca, cb = closure(space, a), closure(space, b)
        if ca & cb:
            return True
        return ca not in ideal.members and cb not in ideal.members

    return ProximityRelation(space, "alexandroff", rule, {"ideal": ideal})


@dataclass(frozen=True)
class PointRelation:
    """Symmetric reflexive relation on points, stored as adjacency masks."""

    rows: tuple[int, ...]

    def __post_init__(self):
        n = len(self.rows)
        for i, row in enumerate(self.rows):
            if row >> n:
                raise ToolkitError("adjacency row uses bits beyond point count")
            if not row & (1 << i):
                raise ToolkitError(f"point relation must be reflexive at {i}")
            for j in bits_of(row):
                if not self.rows[j] & (1 << i):
                    raise ToolkitError(f"point relation must be symmetric at ({i},{j})")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "PointRelation":
        rows = [1 << i for i in range(n)]
        for i, j in pairs:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(tuple(rows))

    @classmethod
    def equality(cls, n: int) -> "PointRelation":
        return cls(tuple(1 << i for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def related(self, i: int, j: int) -> bool:
        return bool(self.rows[i] & (1 << j))

    def is_transitive(self) -> bool:
        for i, row in enumerate(self.rows):
            for j in bits_of(row):
                if self.rows[j] & ~row:
                    return False
        return True

    def pairs(self) -> list[tuple[int, int]]:
        """Off-diagonal related pairs (i < j), ascending."""
        out = []
        for i, row in enumerate(self.rows):
            for j in bits_of(row):
                if j > i:
                    out.append((i, j))
        return out


def point_generated_proximity(space: GroundSpace, relation: PointRelation) -> ProximityRelation:
    """A near B iff some a in A is point-related to some b in B.

    Always satisfies P0-P3; on a finite set this additive form is in fact
    the general shape of every basic proximity.
    """
    if relation.n != space.n:
        raise ToolkitError("point relation dimension must match the space")
    rows = relation.rows

    def rule(a: int, b: int) -> bool:
        for i in bits_of(a):
            if rows[i] & b:
                return True
        return False

    return ProximityRelation(space, "point_relation", rule, {"relation": relation})


def table_proximity(
    space: GroundSpace, near_pairs: Iterable[tuple[int, int]]
) -> ProximityRelation:
    """Explicit relation: listed pairs are near, everything else is far.

    Unlike the rule-based constructors nothing is enforced, so a table
    can violate any axiom; that is the point of loading one.
    """
    table = frozenset((a, b) if a <= b else (b, a) for a, b in near_pairs)
    full = space.full_mask
    for a, b in table:
        if a & ~full or b & ~full:
            raise ToolkitError("table pair uses bits beyond point count")

    def rule(a: int, b: int) -> bool:
        return (a, b) in table

    return ProximityRelation(space, "table", rule, {"near_pairs": table})


def constant_proximity(space: GroundSpace) -> ProximityRelation:
    """Every pair of nonempty sets is near."""
    return ProximityRelation(space, "constant", lambda a, b: a != 0 and b != 0)


# -- induced closure and compatibility ---------------------------------


def induced_closure(prox: ProximityRelation, a: int) -> int:
    """{ x : {x} near A } -- the closure operator the relation induces."""
    out = 0
    for i in range(prox.space.n):
        if prox.near(1 << i, a):
            out |= 1 << i
    return out


@dataclass(frozen=True)
class CompatibilityResult:
    compatible: bool
    witness: Optional[int] = None  # first mask where induced and topological closure differ

    def __bool__(self) -> bool:
        return self.compatible


def is_compatible(prox: ProximityRelation) -> CompatibilityResult:
    """Does the induced closure agree with the space's topology on every subset?"""
    space = prox.space
    for a in all_masks(space.n):
        if induced_closure(prox, a) != closure(space, a):
            return CompatibilityResult(False, a)
    return CompatibilityResult(True)


def kuratowski_violations(n: int, cl: Callable[[int], int]) -> list[tuple[str, tuple[int, ...]]]:
    """Check an arbitrary closure operator against the four Kuratowski axioms.

    Independent of any space or relation machinery: it only calls `cl` on
    masks over an n-point set and reports (axiom, witness) violations.
    """
    out = []
    if cl(0) != 0:
        out.append(("closure-of-empty", (0,)))
    values = {}
    for a in all_masks(n):
        ca = values[a] = cl(a)
        if a & ~ca:
            out.append(("extensive", (a,)))
    for a in all_masks(n):
        if cl(values[a]) != values[a]:
            out.append(("idempotent", (a,)))
    for a in all_masks(n):
        for b in all_masks(n):
            if values[a | b] != values[a] | values[b]:
                out.append(("additive", (a, b)))
    return out


# -- axiom checking -----------------------------------------------------


@dataclass(frozen=True)
class AxiomVerdict:
    passed: bool
    witness: Optional[tuple[int, ...]] = None  # first violation, ascending mask order


@dataclass(frozen=True)
class ProximityAxiomReport:
    verdicts: dict[str, AxiomVerdict]
    classification: str
    exhaustive: bool
    checked_axioms: tuple[str, ...] = AXIOM_NAMES
    samples: Optional[int] = None

    def passed(self, name: str) -> bool:
        return self.verdicts[name].passed

    @property
    def separated(self) -> bool:
        return self.passed("P5")

    @property
    def p4_alongside_ef(self) -> Optional[bool]:
        """When classified ef, does P4 also hold? None otherwise."""
        if self.classification != CLASS_EF:
            return None
        return self.passed("P4")

    @property
    def is_basic(self) -> bool:
        return self.classification in (CLASS_BASIC, CLASS_LODATO, CLASS_EF)

    @property
    def is_lodato(self) -> bool:
        if self.classification == CLASS_LODATO:
            return True
        return self.classification == CLASS_EF and self.passed("P4")

    @property
    def is_ef(self) -> bool:
        return self.classification == CLASS_EF


def _classify(v: dict[str, AxiomVerdict]) -> str:
    basic = all(v[p].passed for p in ("P0", "P1", "P2", "P3"))
    if not basic:
        return CLASS_NOT_BASIC
    if v["EF"].passed:
        return CLASS_EF
    if v["P4"].passed:
        return CLASS_LODATO
    return CLASS_BASIC


def check_axioms(
    prox: ProximityRelation,
    *,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    sample: Optional[int] = None,
    seed: int = 0,
    axioms: Iterable[str] = AXIOM_NAMES,
) -> ProximityAxiomReport:
    """Verify the proximity axioms, exhaustively by default.

    Exhaustive mode sweeps all pairs (P0-P2), all triples in the axiom's
    shape (P3, P4), singleton pairs (P5) and, for each far pair, all
    separating candidates (EF). Above `cap` points this raises
    CapExceededError; passing `sample` switches to randomized probing and
    the report is labeled non-exhaustive. Witnesses are the first
    violation in ascending mask order.
    """
    requested = tuple(a for a in AXIOM_NAMES if a in set(axioms))
    if not requested:
        raise ToolkitError("no axioms requested")
    n = prox.space.n
    if sample is None and n > cap:
        raise CapExceededError("check_axioms", n, cap)

    space = prox.space
    full = space.full_mask
    near = prox.near

    if sample is None:
        masks: list[int] = list(all_masks(n))
    else:
        rng = random.Random(seed)
        universe = 1 << n
        count = min(sample, universe)
        masks = sorted(rng.sample(range(universe), count)) if universe > count else list(all_masks(n))

    verdicts: dict[str, AxiomVerdict] = {}

    def record(name: str, witness: Optional[tuple[int, ...]]):
        verdicts[name] = AxiomVerdict(witness is None, witness)

    if "P0" in requested:
        w = None
        for a in masks:
            for b in masks:
                if near(a, b) != near(b, a):
                    w = (a, b)
                    break
            if w:
                break
        record("P0", w)

    if "P1" in requested:
        w = None
        for b in masks:
            if near(0, b):
                w = (0, b)
                break
        record("P1", w)

    if "P2" in requested:
        w = None
        for a in masks:
            for b in masks:
                if a & b and not near(a, b):
                    w = (a, b)
                    break
            if w:
                break
        record("P2", w)

    if "P3" in requested:
        w = None
        for a in masks:
            for b in masks:
                for c in masks:
                    if near(a, b | c) != (near(a, b) or near(a, c)):
                        w = (a, b, c)
                        break
                if w:
                    break
            if w:
                break
        record("P3", w)

    if "P4" in requested:
        w = None
        for a in masks:
            for b in masks:
                if not near(a, b):
                    continue
                for c in masks:
                    if near(a, c):
                        continue
                    if all(near(1 << i, c) for i in bits_of(b)):
                        w = (a, b, c)
                        break
                if w:
                    break
            if w:
                break
        record("P4", w)

    if "P5" in requested:
        w = None
        for i in range(n):
            for j in range(i + 1, n):
                if near(1 << i, 1 << j):
                    w = (1 << i, 1 << j)
                    break
            if w:
                break
        record("P5", w)

    if "EF" in requested:
        w = None
        for a in masks:
            for b in masks:
                if near(a, b):
                    continue
                found = False
                for e in all_masks(n):
                    if not near(a, e) and not near(full & ~e, b):
                        found = True
                        break
                if not found:
                    w = (a, b)
                    break
            if w:
                break
        record("EF", w)

    if "EF-betweenness" in requested:
        w = None
        for a in masks:
            for b in masks:
                if near(a, full & ~b):  # not a strong inclusion A << B
                    continue
                found = False
                for c in all_masks(n):
                    if not near(a, full & ~c) and not near(c, full & ~b):
                        found = True
                        break
                if not found:
                    w = (a, b)
                    break
            if w:
                break
        record("EF-betweenness", w)

    if all(p in verdicts for p in ("P0", "P1", "P2", "P3", "P4", "EF")):
        classification = _classify(verdicts)
    else:
        classification = "partial"

    return ProximityAxiomReport(
        verdicts=verdicts,
        classification=classification,
        exhaustive=sample is None,
        checked_axioms=requested,
        samples=None if sample is None else len(masks),
    )
