"""Decide whether a prescription is satisfiable by a good drawing.

Two tiers, both driven by the same backtracking search over crossing orders:

* relaxed - a prescription is unrealizable if EVERY crossing order yields a
  non-planar planarization.  Sound for elimination (a drawing's own order is
  planar) but cannot certify realizability, because a planar planarization
  may still force two edges to touch instead of cross.
* exact - planarity of the wheel-gadget graph.  The W4 wheel is 3-connected,
  so its rims keep the four strands in alternating order; a planar gadget
  graph therefore certifies a genuine transversal drawing, which we extract
  by contracting the wheels back to points and repairing rotations.

The search inserts edges one at a time (most-crossed first) and places each
crossing dummy individually; every partial placement is a minor of any
completed placement extending it, so pruning on partial non-planarity is
exact, not heuristic.  Budgets are explicit; exhausting one is reported as
its own outcome, never as a verdict.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .drawings import CombinatorialDrawing, assign_coordinates, verify_drawing
from .graphs import Graph
from .planarity import is_planar, planar_embedding
from .planarize import (
    CrossingOrders,
    Planarization,
    build_gadget_graph,
    build_planarization,
    dummy_ids,
)
from .prescriptions import (
    Prescription,
    host_context,
    prescription_from_missed,
    restrict_to_edge_subset,
)
from .rotation import Rotations, from_planar_embedding

REALIZABLE = "REALIZABLE"
UNREALIZABLE = "UNREALIZABLE"
UNDECIDED = "UNDECIDED"
BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class Budget:
    max_nodes: int | None = None
    max_seconds: float | None = None


DEFAULT_BUDGET = Budget(max_nodes=5_000_000, max_seconds=600.0)


@dataclass
class SearchStats:
    nodes: int = 0
    planarity_calls: int = 0
    leaves: int = 0
    extraction_failures: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class Verdict:
    status: str
    stats: SearchStats
    drawing: CombinatorialDrawing | None = None
    orders: CrossingOrders | None = None


class _OutOfBudget(Exception):
    pass


def planarity_test(g: Graph) -> bool:
    """Planarity of a host graph (not of a planarization)."""
    adj = [[] for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    return is_planar(g.n, adj)


class _PlacementSearch:
    """Backtracking over crossing orders with partial-planarity pruning."""

    def __init__(self, p: Prescription, exact: bool, budget: Budget):
        p.validate()
        self.p = p
        self.host = p.host
        self.exact = exact
        self.budget = budget
        self.stats = SearchStats()
        m = len(self.host.edges)
        self.m = m
        self.dummy_id = dummy_ids(self.host, p)
        self.n_total = self.host.n + len(self.dummy_id)
        self.pair_of = {d: pair for pair, d in self.dummy_id.items()}
        # most-crossed edges first: their placements are the most constrained
        self.edge_order = sorted(range(m), key=lambda e: (-p.crossings[e].bit_count(), e))
        self.rank = {e: i for i, e in enumerate(self.edge_order)}
        self.partners = [
            tuple(f for f in _bits(p.crossings[e]) if self.rank[f] < self.rank[e])
            for e in range(m)
        ]
        self.seqs: list[list[int]] = [[] for _ in range(m)]
        self.t0 = time.perf_counter()
        self.found: CrossingOrders | None = None
        self.drawing: CombinatorialDrawing | None = None

    # -- plumbing -----------------------------------------------------------

    def _tick(self) -> None:
        self.stats.nodes += 1
        if self.stats.nodes & 0xFF == 0:
            b = self.budget
            if b.max_nodes is not None and self.stats.nodes > b.max_nodes:
                raise _OutOfBudget
            if b.max_seconds is not None and time.perf_counter() - self.t0 > b.max_seconds:
                raise _OutOfBudget

    def _orders(self) -> CrossingOrders:
        seq_edges = []
        for e in range(self.m):
            seq_edges.append(tuple(self.pair_of[d][0] if self.pair_of[d][1] == e
                                   else self.pair_of[d][1] for d in self.seqs[e]))
        return CrossingOrders(self.host, tuple(seq_edges))

    def _plain_adj(self, upto: int, open_edge: int | None) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n_total)]
        for i in range(upto + 1):
            e = self.edge_order[i]
            u, v = self.host.edges[e]
            path = [u, *self.seqs[e], v]
            if e == open_edge:
                path.pop()
            for a, b in zip(path, path[1:]):
                adj[a].append(b)
                adj[b].append(a)
        return adj

    def _plain_planar(self, upto: int, open_edge: int | None) -> bool:
        self.stats.planarity_calls += 1
        return is_planar(self.n_total, self._plain_adj(upto, open_edge))

    def _gadget_planar(self, upto: int) -> bool:
        """Wheel-gadget planarity of the partial planarization (inserted edges only)."""
        n0 = self.host.n
        base = {}
        nxt = n0
        placed = set()
        for i in range(upto + 1):
            placed.update(self.seqs[self.edge_order[i]])
        for d in sorted(placed):
            base[d] = nxt
            nxt += 5

        def rim(d: int, orig_edge: int, entering: bool) -> int:
            e, f = self.pair_of[d]
            if orig_edge == e:
                return base[d] + (0 if entering else 2)
            return base[d] + (1 if entering else 3)

        adj: list[list[int]] = [[] for _ in range(nxt)]

        def link(a: int, b: int) -> None:
            adj[a].append(b)
            adj[b].append(a)

        for i in range(upto + 1):
            e = self.edge_order[i]
            u, v = self.host.edges[e]
            path = [u, *self.seqs[e], v]
            for a, b in zip(path, path[1:]):
                ga = a if a < n0 else rim(a, e, entering=False)
                gb = b if b < n0 else rim(b, e, entering=True)
                link(ga, gb)
        for d in sorted(placed):
            r = base[d]
            hub = r + 4
            for j in range(4):
                link(r + j, hub)
                link(r + j, r + (j + 1) % 4)
        self.stats.planarity_calls += 1
        return is_planar(nxt, adj)

    # -- search -------------------------------------------------------------

    def run(self) -> str:
        try:
            if self._insert(0):
                return REALIZABLE if self.exact else UNDECIDED
            return UNREALIZABLE
        except _OutOfBudget:
            return BUDGET_EXHAUSTED
        finally:
            self.stats.elapsed = time.perf_counter() - self.t0

    def _insert(self, i: int) -> bool:
        if i == self.m:
            return self._leaf(i - 1)
        e = self.edge_order[i]
        return self._place(i, e, list(self.partners[e]))

    def _place(self, i: int, e: int, remaining: list[int]) -> bool:
        self._tick()
        if not remaining:
            if not self._plain_planar(i, open_edge=None):
                return False
            if self.exact and self.seqs[e] and not self._gadget_planar(i):
                return False
            return self._insert(i + 1)
        for idx, f in enumerate(remaining):
            d = self.dummy_id[(min(e, f), max(e, f))]
            rest = remaining[:idx] + remaining[idx + 1:]
            self.seqs[e].append(d)
            sf = self.seqs[f]
            for pos in range(len(sf) + 1):
                sf.insert(pos, d)
                if self._plain_planar(i, open_edge=e):
                    if self._place(i, e, rest):
                        return True
                sf.pop(pos)
            self.seqs[e].pop()
        return False

    def _leaf(self, upto: int) -> bool:
        self.stats.leaves += 1
        orders = self._orders()
        if not self.exact:
            self.found = orders
            return True
        plan = build_planarization(self.p, orders)
        drawing = extract_from_gadget(plan)
        if drawing is None:
            self.stats.extraction_failures += 1
            return False
        self.found = orders
        self.drawing = drawing
        return True


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# Gadget-embedding extraction
# ---------------------------------------------------------------------------

def extract_from_gadget(plan: Planarization) -> CombinatorialDrawing | None:
    """Turn a planar gadget embedding into a verified combinatorial drawing.

    Contracts each wheel to a point; the inherited rotation at a dummy is
    usually already alternating.  When a cut vertex let a component hide in
    a wheel face it may come out as a touching; in that case some alternating
    reassignment is still spherical, which a tiny backtracking pass finds.
    """
    gg = build_gadget_graph(plan)
    emb = planar_embedding(gg.n, gg.edges)
    if emb is None:
        return None
    rs = from_planar_embedding(emb, gg.n, list(gg.edges))

    merged = {}
    for dv, (spokes, rims) in gg.wheel_edges.items():
        survivor = None
        for k in spokes:
            survivor = rs.contract_edge(k)
        for k in rims:
            rs.delete_edge(k)
        merged[survivor] = dv

    # relabel onto planarization vertex ids
    rotation: list[tuple[int, ...] | None] = [None] * plan.n
    for v, r in enumerate(rs.rot):
        if r is None:
            continue
        pv = merged.get(v, v)
        rotation[pv] = tuple(r)

    base = Rotations(plan.n)
    for k, (a, b) in enumerate(plan.edges):
        base.new_edge(a, b)
    for pv in range(plan.n):
        base.rot[pv] = list(rotation[pv])

    dummies = sorted(plan.crossing_pair_of)
    bad = [dv for dv in dummies if not _alternating(base, plan, dv)]
    if bad and not _repair(base, plan, bad, 0):
        return None
    if not base.is_spherical():
        return None

    drawing = CombinatorialDrawing(plan.host, plan.orders,
                                   tuple(tuple(r) for r in base.rot))
    report = verify_drawing(drawing)
    if not report.ok:
        return None
    return drawing


def _alternating(rs: Rotations, plan: Planarization, dv: int) -> bool:
    owners = [plan.segment_edge[d >> 1] for d in rs.rot[dv]]
    return owners[0] != owners[1] and owners[1] != owners[2]


def _repair(rs: Rotations, plan: Planarization, bad: list[int], i: int) -> bool:
    if i == len(bad):
        return rs.is_spherical()
    dv = bad[i]
    darts = list(rs.rot[dv])
    e_darts = [d for d in darts if plan.segment_edge[d >> 1] == plan.crossing_pair_of[dv][0]]
    f_darts = [d for d in darts if plan.segment_edge[d >> 1] == plan.crossing_pair_of[dv][1]]
    saved = rs.rot[dv]
    for fd in (f_darts, f_darts[::-1]):
        rs.rot[dv] = [e_darts[0], fd[0], e_darts[1], fd[1]]
        if rs.is_spherical() and _repair(rs, plan, bad, i + 1):
            return True
    rs.rot[dv] = saved
    return False


# ---------------------------------------------------------------------------
# Public deciders
# ---------------------------------------------------------------------------

def prove_unrealizable_relaxed(p: Prescription, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """UNREALIZABLE iff no crossing order has a planar planarization."""
    search = _PlacementSearch(p, exact=False, budget=budget)
    status = search.run()
    if status == REALIZABLE:
        status = UNDECIDED
    return Verdict(status, search.stats, orders=search.found)


def decide_exact(p: Prescription, budget: Budget = DEFAULT_BUDGET) -> Verdict:
    """Complete decision including transversality, with witness drawing."""
    search = _PlacementSearch(p, exact=True, budget=budget)
    status = search.run()
    return Verdict(status, search.stats, drawing=search.drawing, orders=search.found)


def extract_drawing(p: Prescription, budget: Budget = DEFAULT_BUDGET) -> CombinatorialDrawing:
    """Witness drawing with straight-line coordinates; rejects unrealizable input."""
    v = decide_exact(p, budget)
    if v.status != REALIZABLE:
        raise ValueError(f"prescription is not realizable ({v.status})")
    return assign_coordinates(v.drawing)


# ---------------------------------------------------------------------------
# Subgraph elimination
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Elimination:
    edge_mask: int
    verdict: Verdict
    method: str = "relaxed"


def subgraph_catalog(host: Graph, max_edges: int = 10) -> list[int]:
    """Candidate edge subsets: cycles, unions of two cycles, connected subsets."""
    ctx = host_context(host)
    masks = set()
    cycles = [c.edge_mask for c in _cycles(host)]
    masks.update(cycles)
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            u = cycles[i] | cycles[j]
            if u.bit_count() <= max_edges:
                masks.add(u)
    masks.update(_connected_subsets(host, max_edges))
    del ctx
    return sorted(masks, key=lambda m: (m.bit_count(), m))


def _cycles(host: Graph):
    from .graphs import enumerate_cycles
    return enumerate_cycles(host)


def _connected_subsets(host: Graph, max_edges: int) -> set[int]:
    m = len(host.edges)
    # edge adjacency (shared endpoint)
    touch = [0] * m
    for i in range(m):
        for j in range(m):
            if i != j and set(host.edges[i]) & set(host.edges[j]):
                touch[i] |= 1 << j
    out: set[int] = set()
    seen: set[int] = set()

    def grow(mask: int, frontier: int) -> None:
        if mask in seen:
            return
        seen.add(mask)
        out.add(mask)
        if mask.bit_count() >= max_edges:
            return
        cand = frontier & ~mask
        for j in _bits(cand):
            grow(mask | 1 << j, frontier | touch[j])

    for i in range(m):
        grow(1 << i, touch[i] | 1 << i)
    return out


def _restriction_cost(p: Prescription, mask: int) -> tuple[int, float]:
    """(internal crossings, log of raw order count) without building the subgraph."""
    import math
    total = 0
    logcost = 0.0
    for e in _bits(mask):
        deg = (p.crossings[e] & mask).bit_count()
        total += deg
        logcost += math.lgamma(deg + 1)
    return total // 2, logcost


def find_unrealizable_subgraph(host: Graph, missed, catalog=None,
                               budget_per_candidate: Budget = Budget(20_000, 20.0),
                               escalation: Budget = Budget(2_000_000, 300.0),
                               min_crossings: int = 6):
    """First catalog subgraph whose restricted prescription is unrealizable.

    Candidates are ranked by estimated ordering-search cost.  Restrictions
    with very few internal crossings are almost always realizable, so a
    first pass skips them; if nothing eliminates, a fallback pass covers the
    remainder, and a final pass raises the budget on unfinished candidates.
    """
    if isinstance(missed, Prescription):
        p = missed
    else:
        p = prescription_from_missed(host, missed)
    if catalog is None:
        catalog = subgraph_catalog(host)

    ranked = []
    skipped = []
    for mask in catalog:
        cr, logcost = _restriction_cost(p, mask)
        if cr < 2:
            continue
        if cr < min_crossings:
            skipped.append((logcost, mask))
        else:
            ranked.append((logcost, mask))
    ranked.sort()
    skipped.sort()

    exhausted = []
    for batch, method in ((ranked, "relaxed"), (skipped, "relaxed")):
        for cost, mask in batch:
            sub, rp, edge_map = restrict_to_edge_subset(p, mask)
            v = prove_unrealizable_relaxed(rp, budget_per_candidate)
            if v.status == UNREALIZABLE:
                return Elimination(mask, v, method)
            if v.status == BUDGET_EXHAUSTED:
                exhausted.append((cost, mask))
    for cost, mask in exhausted:
        sub, rp, edge_map = restrict_to_edge_subset(p, mask)
        v = prove_unrealizable_relaxed(rp, escalation)
        if v.status == UNREALIZABLE:
            return Elimination(mask, v, method="relaxed-escalated")
    return None
