"""Planarizations: replace prescribed crossings with degree-4 dummy vertices.

A prescription says which pairs cross but not in which order each edge meets
its partners; a :class:`CrossingOrders` pins that down (each edge's sequence
is read from its lexicographically smaller endpoint).  The planarization is
then an ordinary graph, and "some order has a planar planarization" is the
relaxed realizability test.

The wheel gadget version replaces every dummy vertex with a rigid W4 wheel
whose four rim vertices pick up the strands in alternating order.  Because
the wheel is 3-connected, a planar embedding of the gadget graph forces the
two edges to cross transversally rather than touch, which upgrades planarity
of the gadget graph to full drawing realizability.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .prescriptions import Prescription


@dataclass(frozen=True)
class CrossingOrders:
    """Per-edge sequences of crossed edges, read from the smaller endpoint."""

    host: Graph
    orders: tuple[tuple[int, ...], ...]

    def validate(self, p: Prescription) -> None:
        if len(self.orders) != len(self.host.edges):
            raise ValueError("order list length mismatch")
        for e, seq in enumerate(self.orders):
            mask = 0
            for f in seq:
                if mask >> f & 1:
                    raise ValueError(f"edge {f} repeated in order of edge {e}")
                mask |= 1 << f
            if mask != p.crossings[e]:
                raise ValueError(f"order of edge {e} does not match P({e})")


@dataclass(frozen=True)
class Planarization:
    """Derived graph: host vertices plus one degree-4 vertex per crossing."""

    host: Graph
    orders: CrossingOrders
    n: int
    edges: tuple[tuple[int, int], ...]
    segment_edge: tuple[int, ...]          # original edge of each derived edge
    crossing_vertex: dict                  # (e, f) sorted -> dummy vertex id
    crossing_pair_of: dict                 # dummy vertex id -> (e, f)
    segment_paths: tuple[tuple[int, ...], ...]  # per original edge: u, dummies..., v

    @property
    def crossing_count(self) -> int:
        return len(self.crossing_pair_of)

    def adjacency_lists(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def dummy_ids(host: Graph, p: Prescription) -> dict:
    """Deterministic dummy numbering: host.n + rank of the sorted crossing pair."""
    pairs = p.crossing_pairs()
    return {pair: host.n + i for i, pair in enumerate(pairs)}


def build_planarization(p: Prescription, orders: CrossingOrders) -> Planarization:
    orders.validate(p)
    host = p.host
    ids = dummy_ids(host, p)
    paths = []
    for e, (u, v) in enumerate(host.edges):
        mid = [ids[(min(e, f), max(e, f))] for f in orders.orders[e]]
        paths.append((u, *mid, v))
    edges = []
    segment_edge = []
    for e, path in enumerate(paths):
        for a, b in zip(path, path[1:]):
            edges.append((a, b) if a < b else (b, a))
            segment_edge.append(e)
    pair_of = {d: pair for pair, d in ids.items()}
    return Planarization(host, orders, host.n + len(ids), tuple(edges),
                         tuple(segment_edge), ids, pair_of, tuple(paths))


# ---------------------------------------------------------------------------
# Wheel gadgets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GadgetGraph:
    """Planarization with every dummy replaced by a W4 wheel.

    Segment edges keep the planarization's edge indices (wheel edges come
    after), so contracting the wheels away maps darts straight back onto the
    planarization.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    n_segment_edges: int
    wheel_edges: dict        # dummy vertex id -> (spoke ids, rim ids)
    hub_of: dict             # dummy vertex id -> hub vertex
    base_of: dict            # dummy vertex id -> first rim vertex id

    def adjacency_lists(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def build_gadget_graph(plan: Planarization) -> GadgetGraph:
    """Rims 0/2 catch the smaller edge's strands, rims 1/3 the larger's."""
    n0 = plan.host.n
    dummies = sorted(plan.crossing_pair_of)
    base = {}
    nxt = n0
    for d in dummies:
        base[d] = nxt  # rims nxt..nxt+3, hub nxt+4
        nxt += 5

    def rim(d: int, orig_edge: int, entering: bool) -> int:
        e, f = plan.crossing_pair_of[d]
        if orig_edge == e:
            return base[d] + (0 if entering else 2)
        if orig_edge == f:
            return base[d] + (1 if entering else 3)
        raise AssertionError("segment does not belong to the crossing")

    edges = []
    for e, path in enumerate(plan.segment_paths):
        for a, b in zip(path, path[1:]):
            ga = a if a < n0 else rim(a, e, entering=False)
            gb = b if b < n0 else rim(b, e, entering=True)
            edges.append((ga, gb) if ga < gb else (gb, ga))
    n_seg = len(edges)

    wheel_edges = {}
    hub_of = {}
    for d in dummies:
        r = base[d]
        hub = r + 4
        spokes = []
        rims = []
        for i in range(4):
            spokes.append(len(edges))
            edges.append((r + i, hub))
        for i in range(4):
            rims.append(len(edges))
            a, b = r + i, r + (i + 1) % 4
            edges.append((a, b) if a < b else (b, a))
        wheel_edges[d] = (tuple(spokes), tuple(rims))
        hub_of[d] = hub
    return GadgetGraph(nxt, tuple(edges), n_seg, wheel_edges, hub_of, base)
