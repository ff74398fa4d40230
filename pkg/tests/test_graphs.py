"""Graph core: construction, thrackle calculus, pattern counts."""

import itertools
import random

import pytest

from maxcross.graphs import (
    build_named,
    cartesian_product,
    complete_graph,
    cycle_graph,
    delete_vertex,
    disjoint_cycle_pairs,
    enumerate_cycles,
    find_subgraphs,
    format_edge_list,
    is_isomorphic,
    make_graph,
    non_incident_pairs,
    parse_edge_list,
    path_graph,
    sub_thrackle_number,
    thrackle_number,
)


def brute_subgraph_count(g, pattern):
    """Independent oracle: count distinct host edge sets over all injections."""
    found = set()
    for perm in itertools.permutations(range(g.n), pattern.n):
        edge_set = frozenset()
        ok = True
        for a, b in pattern.edges:
            if not g.has_edge(perm[a], perm[b]):
                ok = False
                break
        if ok:
            edge_set = frozenset(tuple(sorted((perm[a], perm[b]))) for a, b in pattern.edges)
            found.add(edge_set)
    return len(found)


def random_graph(rng, n, p=0.4):
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return make_graph(n, edges[:32])


class TestConstruction:
    def test_cycle3(self):
        g = cycle_graph(3)
        assert g.n == 3 and len(g.edges) == 3

    def test_c3xc3(self):
        g = build_named("c3xc3")
        assert g.n == 9 and len(g.edges) == 18
        assert all(d == 4 for d in g.degrees)

    def test_db531(self):
        g = build_named("db531")
        assert g.n == 6 and len(g.edges) == 7
        assert sorted(g.degrees, reverse=True) == [3, 3, 2, 2, 2, 2]

    def test_prism_is_c3_times_p1(self):
        prism = cartesian_product(cycle_graph(3), path_graph(1))
        assert prism.n == 6 and len(prism.edges) == 9
        assert is_isomorphic(prism, build_named("prism"))

    def test_p1_times_p1_is_c4(self):
        g = cartesian_product(path_graph(1), path_graph(1))
        assert is_isomorphic(g, cycle_graph(4))

    def test_rejects(self):
        with pytest.raises(ValueError):
            build_named("cycle", 2)
        with pytest.raises(ValueError):
            build_named("nosuch")
        with pytest.raises(ValueError):
            make_graph(3, [(0, 0)])
        with pytest.raises(ValueError):
            make_graph(3, [(0, 1), (1, 0)])
        with pytest.raises(ValueError):
            cartesian_product(cycle_graph(5), cycle_graph(5))

    def test_edge_indexing_deterministic(self):
        a = make_graph(4, [(2, 3), (0, 1), (1, 2)])
        b = make_graph(4, [(1, 2), (3, 2), (0, 1)])
        assert a == b and a.edges == ((0, 1), (1, 2), (2, 3))

    def test_edge_list_roundtrip(self):
        g = build_named("db531")
        assert parse_edge_list(format_edge_list(g)) == g


class TestDeletion:
    def test_c3xc3_minus_vertex(self):
        g = build_named("c3xc3")
        d = delete_vertex(g, 4)
        assert d.graph.n == 8 and len(d.graph.edges) == 14
        assert sorted(d.graph.degrees) == [3, 3, 3, 3, 4, 4, 4, 4]

    def test_edge_map_points_back(self):
        g = build_named("c3xc3")
        d = delete_vertex(g, 0)
        for new_idx, old_idx in enumerate(d.edge_to_host):
            a, b = d.graph.edges[new_idx]
            assert g.edges[old_idx] == tuple(sorted(
                (d.vertex_to_host[a], d.vertex_to_host[b])))

    def test_all_deletions_isomorphic(self):
        g = build_named("c3xc3")
        subs = [delete_vertex(g, v).graph for v in range(9)]
        for a, b in itertools.combinations(subs, 2):
            assert is_isomorphic(a, b)

    def test_invalid_vertex(self):
        with pytest.raises(ValueError):
            delete_vertex(cycle_graph(3), 7)


class TestThrackle:
    def test_paper_values(self):
        assert thrackle_number(build_named("prism")) == 18
        assert thrackle_number(build_named("db531")) == 11
        assert thrackle_number(build_named("c3xc3")) == 99
        gmv = delete_vertex(build_named("c3xc3"), 0).graph
        assert thrackle_number(gmv) == 55

    def test_non_incident_pair_examples(self):
        assert len(non_incident_pairs(cycle_graph(4))) == 2
        gmv = delete_vertex(build_named("c3xc3"), 0).graph
        assert len(non_incident_pairs(gmv)) == 55
        assert len(non_incident_pairs(build_named("c3xc3"))) == 99

    def test_identity_on_named(self):
        for g in [cycle_graph(4), cycle_graph(7), build_named("bowtie"),
                  build_named("db531"), build_named("prism"),
                  build_named("c3xc3"), complete_graph(4)]:
            assert thrackle_number(g) == len(non_incident_pairs(g))

    def test_identity_on_random(self):
        rng = random.Random(20240)
        for _ in range(100):
            g = random_graph(rng, rng.randint(3, 9), rng.uniform(0.2, 0.8))
            assert thrackle_number(g) == len(non_incident_pairs(g))

    def test_sub_thrackle(self):
        assert sub_thrackle_number(build_named("prism")) == 15
        assert sub_thrackle_number(cycle_graph(4)) == 1
        assert sub_thrackle_number(complete_graph(4)) == 1


class TestSubgraphs:
    def test_counts_in_g_minus_v(self):
        gmv = delete_vertex(build_named("c3xc3"), 0).graph
        assert len(find_subgraphs(gmv, cycle_graph(4), "C4")) == 5
        assert len(find_subgraphs(gmv, build_named("bowtie"), "bowtie")) == 4

    def test_counts_in_c3xc3(self):
        g = build_named("c3xc3")
        assert len(find_subgraphs(g, cycle_graph(4), "C4")) == 9
        assert len(find_subgraphs(g, cycle_graph(3), "C3")) == 6
        assert len(find_subgraphs(g, build_named("bowtie"), "bowtie")) == 9

    def test_against_brute_force(self):
        rng = random.Random(7)
        patterns = [cycle_graph(3), cycle_graph(4), build_named("bowtie")]
        for _ in range(15):
            g = random_graph(rng, rng.randint(4, 7), 0.5)
            for pat in patterns:
                assert len(find_subgraphs(g, pat)) == brute_subgraph_count(g, pat)

    def test_embedding_maps_are_consistent(self):
        gmv = delete_vertex(build_named("c3xc3"), 0).graph
        pat = build_named("bowtie")
        for emb in find_subgraphs(gmv, pat, "bowtie"):
            assert len(set(emb.vertex_map)) == pat.n
            es = 0
            for k, (a, b) in enumerate(pat.edges):
                idx = gmv.edge_id(emb.vertex_map[a], emb.vertex_map[b])
                assert emb.edge_map[k] == idx
                es |= 1 << idx
            assert es == emb.edge_set

    def test_counts_invariant_under_relabeling(self):
        rng = random.Random(99)
        g = delete_vertex(build_named("c3xc3"), 3).graph
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = make_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
        for pat in [cycle_graph(3), cycle_graph(4), build_named("bowtie")]:
            assert len(find_subgraphs(g, pat)) == len(find_subgraphs(h, pat))

    def test_bowties_span_4_of_9_deletions(self):
        g = build_named("c3xc3")
        bowties = find_subgraphs(g, build_named("bowtie"), "bowtie")
        for emb in bowties:
            vset = set(emb.vertex_map)
            containing = sum(1 for v in range(9) if v not in vset)
            assert containing == 4


class TestCycles:
    def test_small(self):
        assert len(enumerate_cycles(cycle_graph(4))) == 1
        assert len(enumerate_cycles(build_named("bowtie"))) == 2
        lengths = sorted(c.length for c in enumerate_cycles(build_named("db531")))
        assert lengths == [3, 5, 6]

    def test_k4(self):
        # 4 triangles + 3 four-cycles
        lengths = sorted(c.length for c in enumerate_cycles(complete_graph(4)))
        assert lengths == [3, 3, 3, 3, 4, 4, 4]

    def test_each_cycle_once(self):
        g = build_named("c3xc3")
        cycles = enumerate_cycles(g)
        assert len({c.edge_mask for c in cycles}) == len(cycles)
        for c in cycles:
            assert bin(c.edge_mask).count("1") == c.length
            # closed walk: every on-cycle vertex sees exactly 2 on-cycle edges
            for v in c.vertices:
                deg = sum(1 for i in range(len(g.edges))
                          if c.edge_mask >> i & 1 and v in g.edges[i])
                assert deg == 2

    def test_disjoint_pairs(self):
        assert disjoint_cycle_pairs(build_named("bowtie")) == ()
        g = build_named("c3xc3")
        tri_pairs = [(a, b) for a, b in disjoint_cycle_pairs(g)
                     if a.length == 3 and b.length == 3]
        assert len(tri_pairs) == 6
        gmv = delete_vertex(g, 0).graph
        tri_pairs = [(a, b) for a, b in disjoint_cycle_pairs(gmv)
                     if a.length == 3 and b.length == 3]
        assert len(tri_pairs) == 2
