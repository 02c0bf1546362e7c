"""CL(X) enumeration, subbase families, topology bases and comparison."""

import pytest

from proxitop import (
    CompactnessIdeal,
    GroundSpace,
    HyperspaceMismatchError,
    Metric,
    NotOpenError,
    PointRelation,
    alexandroff_proximity,
    build_topology,
    check_axioms,
    check_inclusion_containment,
    check_miss_half_inclusions,
    compare,
    enumerate_cl,
    far_miss_set,
    gap_proximity,
    hit_set,
    miss_set,
    overlap_proximity,
    point_generated_proximity,
    refines,
    sf_miss_set,
)
from proxitop.hyperspace import HyperTopologyBase


def family_members(space, fam):
    cl = enumerate_cl(space)
    return {cl[i] for i in range(len(cl)) if fam.mask >> i & 1}


@pytest.fixture
def discrete2():
    return GroundSpace.discrete(2)


@pytest.fixture
def discrete3():
    return GroundSpace.discrete(3)


class TestEnumerateCL:
    def test_discrete2(self, discrete2):
        assert enumerate_cl(discrete2) == (0b01, 0b10, 0b11)

    def test_discrete4_count(self):
        assert len(enumerate_cl(GroundSpace.discrete(4))) == 15

    def test_indiscrete2(self):
        assert enumerate_cl(GroundSpace.indiscrete(2)) == (0b11,)


class TestHitMiss:
    def test_hit_examples(self, discrete2):
        assert family_members(discrete2, hit_set(discrete2, 0b01)) == {0b01, 0b11}
        assert hit_set(discrete2, 0).mask == 0
        assert family_members(discrete2, hit_set(discrete2, 0b11)) == {0b01, 0b10, 0b11}

    def test_miss_examples(self, discrete2):
        assert family_members(discrete2, miss_set(discrete2, 0b01)) == {0b01}
        assert family_members(discrete2, miss_set(discrete2, 0b11)) == {0b01, 0b10, 0b11}
        assert miss_set(GroundSpace.indiscrete(2), 0).mask == 0

    def test_requires_open(self):
        space = GroundSpace.create(3, [0, 0b001, 0b011, 0b111])
        with pytest.raises(NotOpenError):
            hit_set(space, 0b010)
        with pytest.raises(NotOpenError):
            miss_set(space, 0b110)


class TestFarMiss:
    def test_overlap_discrete3(self, discrete3):
        prox = overlap_proximity(discrete3)
        fam = far_miss_set(prox, 0b011)
        assert family_members(discrete3, fam) == {0b001, 0b010, 0b011}

    def test_full_open_gives_everything(self, discrete3):
        prox = overlap_proximity(discrete3)
        assert far_miss_set(prox, 0b111).mask == (1 << 7) - 1

    def test_gap_excludes_close_sets(self, discrete3):
        prox = gap_proximity(discrete3, Metric.line(3), 1)
        assert family_members(discrete3, far_miss_set(prox, 0b011)) == {0b001}

    def test_sf_miss_matches_far_miss_under_ef(self, discrete3):
        prox = overlap_proximity(discrete3)
        for a in discrete3.opens:
            assert sf_miss_set(prox, a).mask == far_miss_set(prox, a).mask

    def test_sf_miss_full_open_convention(self, discrete3):
        rel = PointRelation.from_pairs(3, [(0, 1), (1, 2)])
        prox = point_generated_proximity(discrete3, rel)
        assert sf_miss_set(prox, 0b111).mask == (1 << 7) - 1

    def test_sf_subset_of_far_everywhere(self, discrete3):
        rel = PointRelation.from_pairs(3, [(0, 1), (1, 2)])
        prox = point_generated_proximity(discrete3, rel)
        for a in discrete3.opens:
            sf = sf_miss_set(prox, a).mask
            fm = far_miss_set(prox, a).mask
            assert sf & ~fm == 0

    def test_far_miss_inside_miss_for_compatible_lodato(self):
        space = GroundSpace.from_partition([[0, 1], [2]])
        rel = PointRelation.from_pairs(3, [(0, 1)])
        prox = point_generated_proximity(space, rel)
        for a in space.opens:
            assert far_miss_set(prox, a).mask & ~miss_set(space, a).mask == 0

    def test_monotone_in_parameter(self, discrete3):
        prox = overlap_proximity(discrete3)
        opens = discrete3.opens
        for v in opens:
            for w in opens:
                if v & ~w:
                    continue
                assert hit_set(discrete3, v).mask & ~hit_set(discrete3, w).mask == 0
                assert miss_set(discrete3, v).mask & ~miss_set(discrete3, w).mask == 0
                assert far_miss_set(prox, v).mask & ~far_miss_set(prox, w).mask == 0
                assert sf_miss_set(prox, v).mask & ~sf_miss_set(prox, w).mask == 0


class TestBuildTopology:
    def test_vietoris_discrete2_isolates_hyperpoints(self, discrete2):
        topo = build_topology(discrete2, "vietoris")
        assert len(topo.cl) == 3
        for idx in range(3):
            assert (1 << idx) in topo.base  # singleton families are base elements

    def test_fell_with_full_ideal_equals_vietoris(self, discrete3):
        fell = build_topology(discrete3, "fell", ideal=CompactnessIdeal.all_closed(discrete3))
        viet = build_topology(discrete3, "vietoris")
        assert compare(fell, viet).verdict == "equal"

    def test_far_miss_overlap_equals_vietoris_on_discrete(self, discrete3):
        fm = build_topology(discrete3, "far_miss", prox=overlap_proximity(discrete3))
        viet = build_topology(discrete3, "vietoris")
        assert {f.mask for f in fm.subbase} == {f.mask for f in viet.subbase}
        assert compare(fm, viet).verdict == "equal"

    def test_hit_and_miss_family(self, discrete3):
        topo = build_topology(discrete3, "hit_and_miss", family=(0, 0b001))
        assert any(tag == "miss" for fam in topo.subbase for tag, _ in fam.provenance)

    def test_subbase_members_in_base(self, discrete3):
        topo = build_topology(discrete3, "vietoris")
        for fam in topo.subbase:
            assert fam.mask in topo.base

    def test_provenance_replays(self, discrete3):
        prox = overlap_proximity(discrete3)
        topo = build_topology(discrete3, "far_miss", prox=prox)
        for fam in topo.subbase:
            for tag, param in fam.provenance:
                if tag == "hit":
                    assert hit_set(discrete3, param).mask == fam.mask
                elif tag == "far-miss":
                    assert far_miss_set(prox, param).mask == fam.mask

    def test_unknown_kind(self, discrete3):
        from proxitop import ToolkitError

        with pytest.raises(ToolkitError):
            build_topology(discrete3, "nonsense")


def trivial_base(space):
    cl = enumerate_cl(space)
    return HyperTopologyBase(space, cl, "custom", (), ((1 << len(cl)) - 1,))


class TestRefinesCompare:
    def test_reflexive(self, discrete3):
        topo = build_topology(discrete3, "vietoris")
        assert refines(topo, topo).refines

    def test_vietoris_refines_trivial(self, discrete3):
        viet = build_topology(discrete3, "vietoris")
        triv = trivial_base(discrete3)
        assert refines(viet, triv).refines
        back = refines(triv, viet)
        assert not back.refines
        assert back.witness is not None
        result = compare(viet, triv)
        assert result.verdict == "left-strictly-finer"

    def test_incomparable_pair(self, discrete2):
        from proxitop import HyperFamily

        cl = enumerate_cl(discrete2)
        full = (1 << len(cl)) - 1
        left = HyperTopologyBase(
            discrete2, cl, "custom", (HyperFamily(0b001),), (0b001, full)
        )
        right = HyperTopologyBase(
            discrete2, cl, "custom", (HyperFamily(0b010),), (0b010, full)
        )
        assert compare(left, right).verdict == "incomparable"

    def test_transitive(self, discrete3):
        viet = build_topology(discrete3, "vietoris")
        fm = build_topology(discrete3, "far_miss", prox=overlap_proximity(discrete3))
        triv = trivial_base(discrete3)
        if refines(viet, fm).refines and refines(fm, triv).refines:
            assert refines(viet, triv).refines

    def test_mismatched_hyperspace(self, discrete2, discrete3):
        t2 = build_topology(discrete2, "vietoris")
        t3 = build_topology(discrete3, "vietoris")
        with pytest.raises(HyperspaceMismatchError):
            refines(t2, t3)

    def test_miss_only_kinds(self, discrete3):
        rel = PointRelation.from_pairs(3, [(0, 1), (1, 2)])
        prox = point_generated_proximity(discrete3, rel)
        left = build_topology(discrete3, "far_miss_only", prox=prox)
        right = build_topology(discrete3, "sf_miss_only", prox=prox)
        result = compare(left, right)
        # the non-transitive path relation strictly separates the halves
        assert result.verdict == "left-strictly-finer"


class TestInclusionContainment:
    def test_holds_on_partition_model(self):
        space = GroundSpace.from_partition([[0, 1], [2]])
        rel = PointRelation.from_pairs(3, [(0, 1)])
        prox = point_generated_proximity(space, rel)
        report = check_inclusion_containment(space, prox)
        assert report.applicable
        assert report.violations == ()
        assert report.pairs_checked == len(space.opens) ** 2

    def test_skipped_for_non_lodato(self):
        space = GroundSpace.discrete(4)
        prox = gap_proximity(space, Metric.line(4), 1)
        report = check_inclusion_containment(space, prox)
        assert not report.applicable

    def test_skipped_for_incompatible(self):
        space = GroundSpace.discrete(4)
        prox = alexandroff_proximity(space, CompactnessIdeal.principal(space, 0b0011))
        assert check_axioms(prox).is_lodato
        report = check_inclusion_containment(space, prox)
        assert not report.applicable
        assert "compatible" in report.reason


class TestMissHalfInclusions:
    def test_backward_clean_on_alexandroff(self):
        space = GroundSpace.discrete(4)
        prox = alexandroff_proximity(space, CompactnessIdeal.principal(space, 0b0011))
        report = check_miss_half_inclusions(prox)
        assert report.backward_violations == ()
        # forward failures are scope notes, not errors
        assert isinstance(report.forward_failures, tuple)

    def test_counts_all_open_pairs(self, discrete3):
        report = check_miss_half_inclusions(overlap_proximity(discrete3))
        assert report.pairs_checked == len(discrete3.opens) ** 2
