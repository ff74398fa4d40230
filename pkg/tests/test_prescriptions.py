"""Prescriptions, restrictions, and the admissibility filters."""

import itertools
import random

import pytest

from maxcross.graphs import (
    build_named,
    cycle_graph,
    delete_vertex,
    find_subgraphs,
    make_graph,
    non_incident_pairs,
    thrackle_number,
)
from maxcross.prescriptions import (
    FULL_SUITE,
    PAPER_SUITE,
    MissedPairSet,
    check_property1,
    check_property2,
    check_property3,
    check_structure_coverage,
    count_missed_between,
    host_context,
    missed_from_pairs,
    pool_masks,
    prescription_from_missed,
    restrict,
    restrict_to_edge_subset,
    run_filters,
)


def gmv():
    return delete_vertex(build_named("c3xc3"), 0).graph


def two_triangles():
    return make_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


def random_missed(rng, g, k):
    ctx = host_context(g)
    idxs = rng.sample(range(len(ctx.pairs)), k)
    return MissedPairSet(g, sum(1 << i for i in idxs))


class TestPrescription:
    def test_empty_missed_is_full_thrackle(self):
        prism = build_named("prism")
        p = prescription_from_missed(prism, MissedPairSet(prism, 0))
        assert p.total == 18
        p.validate()

    def test_three_missed_on_prism(self):
        prism = build_named("prism")
        m = random_missed(random.Random(0), prism, 3)
        assert prescription_from_missed(prism, m).total == 15

    def test_21_missed_on_c3xc3_gives_78(self):
        g = build_named("c3xc3")
        m = random_missed(random.Random(1), g, 21)
        assert prescription_from_missed(g, m).total == 78

    def test_complementarity_invariant(self):
        rng = random.Random(2)
        for g in [build_named("prism"), build_named("db531"), gmv()]:
            th = thrackle_number(g)
            for _ in range(20):
                m = random_missed(rng, g, rng.randint(0, min(th, 12)))
                p = prescription_from_missed(g, m)
                assert m.count + p.total == th
                p.validate()
                assert p.missed().mask == m.mask

    def test_bad_pair_rejected(self):
        prism = build_named("prism")
        with pytest.raises(ValueError):
            missed_from_pairs(prism, [(0, 1)])  # edges 0,1 share a vertex
        with pytest.raises(ValueError):
            prescription_from_missed(prism, MissedPairSet(prism, 1 << 60))


class TestRestriction:
    def test_full_prescription_on_c4_subgraph(self):
        g = gmv()
        p = prescription_from_missed(g, MissedPairSet(g, 0))
        c4s = find_subgraphs(g, cycle_graph(4), "C4")
        assert len(c4s) == 5
        for emb in c4s:
            assert restrict(p, emb).total == 2

    def test_db531_restriction_total(self):
        g = gmv()
        p = prescription_from_missed(g, MissedPairSet(g, 0))
        dbs = find_subgraphs(g, build_named("db531"), "DB(5,3,-1)")
        assert dbs, "G-v should contain 6-cycle-plus-chord subgraphs"
        for emb in dbs:
            assert restrict(p, emb).total == 11

    def test_restriction_consistency_random(self):
        rng = random.Random(3)
        g = gmv()
        ctx = host_context(g)
        prisms = find_subgraphs(g, build_named("prism"), "C3xP1")
        for _ in range(20):
            m = random_missed(rng, g, rng.randint(0, 12))
            p = prescription_from_missed(g, m)
            for emb in prisms:
                internal = (m.mask & ctx.internal_pair_mask(emb.edge_set)).bit_count()
                r = restrict(p, emb)
                assert r.total == thrackle_number(r.host) - internal

    def test_edge_subset_restriction(self):
        g = gmv()
        p = prescription_from_missed(g, MissedPairSet(g, 0))
        mask = sum(1 << e for e in range(6))
        sub, rp, edge_map = restrict_to_edge_subset(p, mask)
        assert len(sub.edges) == 6
        # crossing pairs of the restriction pull back to host crossing pairs
        for a, b in rp.crossing_pairs():
            ea, eb = edge_map[a], edge_map[b]
            assert p.crossings[ea] >> eb & 1


class TestCountMissedBetween:
    def test_basics(self):
        g = two_triangles()
        tri_a = 0b000111 if g.edges[0] == (0, 1) else None
        # edge masks straight from the two triangles
        ea = sum(1 << i for i, e in enumerate(g.edges) if e[0] < 3 and e[1] < 3)
        eb = sum(1 << i for i, e in enumerate(g.edges) if e[0] >= 3)
        empty = MissedPairSet(g, 0)
        assert count_missed_between(empty, ea, eb) == 0
        one = missed_from_pairs(g, [(0, 3)])
        assert count_missed_between(one, ea, eb) == 1
        assert count_missed_between(one, eb, ea) == 1
        with pytest.raises(ValueError):
            count_missed_between(one, ea, ea)


class TestProperty1:
    def test_two_triangles_need_odd(self):
        g = two_triangles()
        assert not check_property1(MissedPairSet(g, 0)).ok
        one = missed_from_pairs(g, [(0, 3)])
        assert check_property1(one).ok

    def test_gmv_empty_fails(self):
        r = check_property1(MissedPairSet(gmv(), 0))
        assert not r.ok and r.witness is not None

    def test_parity_flip_matches_straddling(self):
        rng = random.Random(4)
        g = gmv()
        ctx = host_context(g)
        for _ in range(30):
            m = random_missed(rng, g, rng.randint(0, 10))
            free = [i for i in range(len(ctx.pairs)) if not m.mask >> i & 1]
            add = rng.choice(free)
            m2 = MissedPairSet(g, m.mask | 1 << add)
            for c in ctx.parity_constraints:
                before = (m.mask & c.mask).bit_count() & 1
                after = (m2.mask & c.mask).bit_count() & 1
                straddles = bool(c.mask >> add & 1)
                assert (before != after) == straddles


class TestProperty2:
    def prism_with_internal_missed(self, k):
        prism = build_named("prism")
        ctx = host_context(prism)
        m = MissedPairSet(prism, sum(1 << i for i in range(k)))
        return prescription_from_missed(prism, m)

    def test_totals(self):
        # prism restricted to itself: total 18-k
        assert not check_property2(self.prism_with_internal_missed(0)).ok  # 18
        assert not check_property2(self.prism_with_internal_missed(4)).ok  # 14
        assert check_property2(self.prism_with_internal_missed(3)).ok      # 15
        assert check_property2(self.prism_with_internal_missed(5)).ok      # 13

    def test_witness_reports_total(self):
        r = check_property2(self.prism_with_internal_missed(4))
        assert r.witness["restricted_total"] == 14


class TestProperty3:
    def test_db_restriction(self):
        db = build_named("db531")
        full = prescription_from_missed(db, MissedPairSet(db, 0))
        assert not check_property3(full).ok  # 11 > 10
        one = prescription_from_missed(db, MissedPairSet(db, 1))
        assert check_property3(one).ok       # 10

    def test_vacuous_on_host_without_db(self):
        c4 = cycle_graph(4)
        p = prescription_from_missed(c4, MissedPairSet(c4, 0))
        assert check_property3(p).ok

    def test_monotone_under_added_missed(self):
        rng = random.Random(5)
        g = gmv()
        ctx = host_context(g)
        for _ in range(20):
            m = random_missed(rng, g, rng.randint(0, 10))
            p = prescription_from_missed(g, m)
            if check_property3(p).ok:
                free = [i for i in range(len(ctx.pairs)) if not m.mask >> i & 1]
                add = rng.choice(free)
                m2 = MissedPairSet(g, m.mask | 1 << add)
                assert check_property3(prescription_from_missed(g, m2)).ok


class TestCoverage:
    def test_c4_host(self):
        c4 = cycle_graph(4)
        assert not check_structure_coverage(MissedPairSet(c4, 0)).ok
        assert check_structure_coverage(MissedPairSet(c4, 1)).ok

    def test_bowtie_host(self):
        bt = build_named("bowtie")
        internal = missed_from_pairs(bt, [non_incident_pairs(bt)[0]])
        assert check_structure_coverage(internal).ok
        assert not check_structure_coverage(MissedPairSet(bt, 0)).ok

    def test_pools_disjoint_in_gmv(self):
        pools = pool_masks(gmv())
        assert len(pools["C4"]) == 5 and len(pools["bowtie"]) == 4
        all_pools = pools["C4"] + pools["bowtie"]
        for a, b in itertools.combinations(all_pools, 2):
            assert a & b == 0
        assert all(m.bit_count() == 2 for m in pools["C4"])
        assert all(m.bit_count() == 5 for m in pools["bowtie"])

    def test_gmv_needs_nine(self):
        g = gmv()
        pools = pool_masks(g)
        picks = [m & -m for m in pools["C4"] + pools["bowtie"]]
        nine = MissedPairSet(g, sum(picks))
        assert nine.count == 9
        assert check_structure_coverage(nine).ok
        # dropping any one pick uncovers its pool
        for drop in picks:
            assert not check_structure_coverage(MissedPairSet(g, sum(picks) ^ drop)).ok


class TestRunFilters:
    def test_empty_on_gmv_fails_coverage_suite(self):
        rep = run_filters(MissedPairSet(gmv(), 0), FULL_SUITE)
        assert not rep.passed
        assert rep.failed_at in {"property1", "coverage"}

    def test_deterministic(self):
        g = gmv()
        m = random_missed(random.Random(6), g, 10)
        a = run_filters(m, FULL_SUITE)
        b = run_filters(m, FULL_SUITE)
        assert a == b

    def test_short_circuit_records_failure(self):
        g = gmv()
        rep = run_filters(MissedPairSet(g, 0), PAPER_SUITE)
        assert not rep.passed
        assert rep.results[-1].ok is False
