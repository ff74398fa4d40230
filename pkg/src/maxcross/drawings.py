"""Combinatorial drawings: rotation systems over planarizations.

A drawing is stored as (host, crossing orders, rotation), where the rotation
lists the darts of the planarization around every original and dummy vertex.
That data alone decides whether the drawing is a good drawing realizing its
prescription: the crossing set comes from the orders, transversality is the
alternation pattern at each dummy, and the whole thing is plane iff every
component satisfies Euler's formula.  Coordinates are cosmetic and optional.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .graphs import Graph, make_graph
from .planarize import CrossingOrders, Planarization, build_planarization
from .prescriptions import Prescription, prescription_from_pairs
from .rotation import Rotations, to_planar_embedding


@dataclass(frozen=True)
class CombinatorialDrawing:
    host: Graph
    orders: CrossingOrders
    rotation: tuple[tuple[int, ...], ...]   # darts around each planarization vertex
    coordinates: tuple[tuple[float, float], ...] | None = None

    def prescription(self) -> Prescription:
        pairs = []
        for e, seq in enumerate(self.orders.orders):
            for f in seq:
                if e < f:
                    pairs.append((e, f))
        return prescription_from_pairs(self.host, pairs)

    @property
    def crossing_count(self) -> int:
        return sum(len(s) for s in self.orders.orders) // 2

    def planarization(self) -> Planarization:
        return build_planarization(self.prescription(), self.orders)

    def with_coordinates(self, coords) -> "CombinatorialDrawing":
        return replace(self, coordinates=tuple(tuple(c) for c in coords))


def rotations_of(d: CombinatorialDrawing, plan: Planarization | None = None) -> Rotations:
    plan = plan or d.planarization()
    rs = Rotations(plan.n)
    for k, (a, b) in enumerate(plan.edges):
        rs.new_edge(a, b)
    for v, darts in enumerate(d.rotation):
        rs.rot[v] = list(darts)
    return rs


@dataclass(frozen=True)
class CrossingReport:
    ok: bool
    violations: tuple[str, ...]
    crossing_count: int
    crossing_pairs: tuple[tuple[int, int], ...]


def verify_drawing(d: CombinatorialDrawing, host: Graph | None = None) -> CrossingReport:
    """Recompute the crossing set and check every good-drawing constraint."""
    violations = []
    if host is not None and host != d.host:
        violations.append("host-mismatch")
        return CrossingReport(False, tuple(violations), 0, ())
    g = d.host

    pairs = set()
    for e, seq in enumerate(d.orders.orders):
        seen = set()
        for f in seq:
            if f == e:
                violations.append(f"self-crossing:{e}")
            elif f in seen:
                violations.append(f"double-crossing:{tuple(sorted((e, f)))}")
            elif not g.non_incident_edge_mask[e] >> f & 1:
                violations.append(f"incident-crossing:{tuple(sorted((e, f)))}")
            seen.add(f)
            pairs.add((min(e, f), max(e, f)))
    for e, f in sorted(pairs):
        if f not in d.orders.orders[e] or e not in d.orders.orders[f]:
            violations.append(f"asymmetric-crossing:({e},{f})")
    if violations:
        return CrossingReport(False, tuple(violations), len(pairs), tuple(sorted(pairs)))

    plan = d.planarization()
    # rotation must be a permutation of the darts actually at each vertex
    darts_at = [[] for _ in range(plan.n)]
    for k, (a, b) in enumerate(plan.edges):
        darts_at[a].append(2 * k)
        darts_at[b].append(2 * k + 1)
    if len(d.rotation) != plan.n:
        violations.append("rotation-size-mismatch")
    else:
        for v in range(plan.n):
            if sorted(d.rotation[v]) != sorted(darts_at[v]):
                violations.append(f"rotation-darts-mismatch:{v}")
    if violations:
        return CrossingReport(False, tuple(violations), len(pairs), tuple(sorted(pairs)))

    # transversality: around a dummy the two edges' segments alternate
    for dv, (e, f) in plan.crossing_pair_of.items():
        owners = [plan.segment_edge[dart >> 1] for dart in d.rotation[dv]]
        if owners[0] == owners[1] or owners[1] == owners[2]:
            violations.append(f"touching-crossing:({e},{f})")

    rs = rotations_of(d, plan)
    if not rs.is_spherical():
        violations.append("euler-check-failed")

    return CrossingReport(not violations, tuple(violations), len(pairs), tuple(sorted(pairs)))


# ---------------------------------------------------------------------------
# Coordinates (cosmetic): straight-line layout of the planarization
# ---------------------------------------------------------------------------

def assign_coordinates(d: CombinatorialDrawing) -> CombinatorialDrawing:
    """Planar straight-line coordinates realizing the drawing's rotations."""
    import networkx as nx

    plan = d.planarization()
    rs = rotations_of(d, plan)
    coords = [(0.0, 0.0)] * plan.n
    offset = 0.0
    for comp in sorted(rs.components(), key=min):
        comp_set = set(comp)
        if len(comp) == 1:
            coords[comp[0]] = (offset, 0.0)
            offset += 2.0
            continue
        sub = Rotations(plan.n)
        sub.dart_vertex = list(rs.dart_vertex)
        sub.edge_alive = [alive and rs.dart_vertex[2 * k] in comp_set
                          for k, alive in enumerate(rs.edge_alive)]
        sub.rot = [list(r) if v in comp_set else None
                   for v, r in enumerate(rs.rot)]
        emb = to_planar_embedding(sub)
        emb.check_structure()
        pos = nx.combinatorial_embedding_to_pos(emb)
        xs = [p[0] for p in pos.values()]
        span = (max(xs) - min(xs) + 1) if xs else 1
        for v, (x, y) in pos.items():
            coords[v] = (offset + float(x), float(y))
        offset += span + 2.0
    return d.with_coordinates(coords)


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------

def drawing_to_json(d: CombinatorialDrawing) -> dict:
    out = {
        "host": {"n": d.host.n, "edges": [list(e) for e in d.host.edges]},
        "orders": [list(s) for s in d.orders.orders],
        "rotation": [list(r) for r in d.rotation],
    }
    if d.coordinates is not None:
        out["coordinates"] = [list(c) for c in d.coordinates]
    return out


def drawing_from_json(obj: dict) -> CombinatorialDrawing:
    host = make_graph(obj["host"]["n"], [tuple(e) for e in obj["host"]["edges"]])
    orders = CrossingOrders(host, tuple(tuple(s) for s in obj["orders"]))
    rotation = tuple(tuple(r) for r in obj["rotation"])
    coords = obj.get("coordinates")
    return CombinatorialDrawing(
        host, orders, rotation,
        tuple(tuple(c) for c in coords) if coords is not None else None)
