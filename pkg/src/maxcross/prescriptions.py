"""Missed-pair sets, prescriptions, and admissibility filters.

A missed-pair set lives as a bit mask over the host's canonical list of
non-incident edge pairs; the prescription P is its complement, stored as a
per-edge mask of crossed edges.  The filters are necessary conditions for a
good drawing to exist:

* property 1 - for vertex-disjoint cycles of lengths n and m, the number of
  missed pairs straddling them is congruent to n*m mod 2;
* property 2 - the crossings inside any prism (C3 x P1) subgraph total 15 or
  at most 13;
* property 3 - the crossings inside any 6-cycle-plus-chord subgraph total at
  most 10;
* structure coverage - every 4-cycle and every bowtie contains at least one
  internal missed pair.

All of these evaluate as popcounts against masks cached per host graph in
:class:`HostContext`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    Graph,
    SubgraphEmbedding,
    build_named,
    cycle_graph,
    disjoint_cycle_pairs,
    find_subgraphs,
    make_graph,
    non_incident_pairs,
)


@dataclass(frozen=True)
class MissedPairSet:
    """Subset of the host's non-incident edge pairs declared non-crossing."""

    host: Graph
    mask: int

    @property
    def count(self) -> int:
        return self.mask.bit_count()

    def pairs(self) -> tuple[tuple[int, int], ...]:
        ctx = host_context(self.host)
        return tuple(ctx.pairs[i] for i in _bits(self.mask))

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.pairs()]


def missed_from_pairs(host: Graph, pairs) -> MissedPairSet:
    ctx = host_context(host)
    mask = 0
    for p in pairs:
        i, j = sorted(p)
        idx = ctx.pair_index.get((i, j))
        if idx is None:
            raise ValueError(f"({i},{j}) is not a non-incident edge pair of the host")
        mask |= 1 << idx
    return MissedPairSet(host, mask)


@dataclass(frozen=True)
class Prescription:
    """The map P: each edge to the exact set of edges it must cross."""

    host: Graph
    crossings: tuple[int, ...]  # per-edge bit mask of crossed edge indices

    @property
    def total(self) -> int:
        return sum(c.bit_count() for c in self.crossings) // 2

    def crossing_pairs(self) -> tuple[tuple[int, int], ...]:
        out = []
        for e, mask in enumerate(self.crossings):
            for f in _bits(mask >> (e + 1)):
                out.append((e, e + 1 + f))
        return tuple(out)

    def missed(self) -> MissedPairSet:
        ctx = host_context(self.host)
        mask = 0
        for idx, (i, j) in enumerate(ctx.pairs):
            if not self.crossings[i] >> j & 1:
                mask |= 1 << idx
        return MissedPairSet(self.host, mask)

    def validate(self) -> None:
        g = self.host
        for e, mask in enumerate(self.crossings):
            if mask & ~g.non_incident_edge_mask[e]:
                raise ValueError(f"P({e}) contains an incident or identical edge")
            for f in _bits(mask):
                if not self.crossings[f] >> e & 1:
                    raise ValueError(f"P not symmetric on pair ({e},{f})")


def prescription_from_missed(g: Graph, missed: MissedPairSet) -> Prescription:
    """Complement the missed pairs: everything non-incident and not missed crosses."""
    if missed.host != g:
        raise ValueError("missed-pair set belongs to a different host")
    ctx = host_context(g)
    if missed.mask >> len(ctx.pairs):
        raise ValueError("pair index out of range")
    crossings = list(g.non_incident_edge_mask)
    for idx in _bits(missed.mask):
        i, j = ctx.pairs[idx]
        crossings[i] &= ~(1 << j)
        crossings[j] &= ~(1 << i)
    return Prescription(g, tuple(crossings))


def prescription_from_pairs(g: Graph, crossing_pairs) -> Prescription:
    """Prescription with exactly the given crossing pairs."""
    crossings = [0] * len(g.edges)
    for a, b in crossing_pairs:
        if not g.non_incident_edge_mask[a] >> b & 1:
            raise ValueError(f"edges {a},{b} are incident or identical")
        crossings[a] |= 1 << b
        crossings[b] |= 1 << a
    return Prescription(g, tuple(crossings))


def restrict(p: Prescription, sub: SubgraphEmbedding) -> Prescription:
    """Keep only crossings with both edges inside the embedding, re-indexed."""
    for host_edge in sub.edge_map:
        if host_edge >= len(p.host.edges):
            raise ValueError("embedding does not live on the prescription's host")
    pattern = pattern_graph_of(sub)
    back = {host_e: k for k, host_e in enumerate(sub.edge_map)}
    crossings = [0] * len(pattern.edges)
    for k, host_e in enumerate(sub.edge_map):
        for host_f in _bits(p.crossings[host_e] & sub.edge_set):
            crossings[k] |= 1 << back[host_f]
    return Prescription(pattern, tuple(crossings))


def restrict_to_edge_subset(p: Prescription, edge_mask: int):
    """Restriction to an arbitrary edge subset, as a standalone graph.

    Returns (subgraph, prescription on it, map from its edges to host edges).
    """
    g = p.host
    kept = list(_bits(edge_mask))
    verts = sorted({v for e in kept for v in g.edges[e]})
    vmap = {v: i for i, v in enumerate(verts)}
    sub = make_graph(len(verts), [(vmap[a], vmap[b]) for a, b in (g.edges[e] for e in kept)])
    # make_graph sorts; recover the correspondence
    to_host = {}
    for e in kept:
        a, b = g.edges[e]
        to_host[(vmap[a], vmap[b]) if vmap[a] < vmap[b] else (vmap[b], vmap[a])] = e
    edge_map = tuple(to_host[e] for e in sub.edges)
    back = {host_e: k for k, host_e in enumerate(edge_map)}
    crossings = [0] * len(sub.edges)
    for k, host_e in enumerate(edge_map):
        for host_f in _bits(p.crossings[host_e] & edge_mask):
            crossings[k] |= 1 << back[host_f]
    return sub, Prescription(sub, tuple(crossings)), edge_map


def count_missed_between(missed: MissedPairSet, a: int, b: int) -> int:
    """Number of missed pairs with one edge in mask a and the other in mask b."""
    if a & b:
        raise ValueError("edge sets must be disjoint")
    ctx = host_context(missed.host)
    total = 0
    for idx in _bits(missed.mask):
        i, j = ctx.pairs[idx]
        bi, bj = 1 << i, 1 << j
        if (a & bi and b & bj) or (a & bj and b & bi):
            total += 1
    return total


# ---------------------------------------------------------------------------
# Host context: everything the filters need, precomputed once per graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParityConstraint:
    mask: int            # pair indices straddling the two cycles
    target: int          # n*m mod 2
    cycles: tuple        # the two Cycle objects, for witnesses


@dataclass(frozen=True)
class InternalConstraint:
    mask: int            # pair indices with both edges inside the subgraph
    embedding: SubgraphEmbedding


class HostContext:
    """Per-host caches: pair indexing and filter constraint masks."""

    def __init__(self, host: Graph):
        self.host = host
        self.pairs = non_incident_pairs(host)
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.all_pairs_mask = (1 << len(self.pairs)) - 1

        # pair masks touching each edge
        self.edge_pair_mask = [0] * len(host.edges)
        for idx, (i, j) in enumerate(self.pairs):
            self.edge_pair_mask[i] |= 1 << idx
            self.edge_pair_mask[j] |= 1 << idx

        self.parity_constraints = tuple(
            ParityConstraint(self._straddle_mask(a.edge_mask, b.edge_mask),
                             (a.length * b.length) & 1, (a, b))
            for a, b in disjoint_cycle_pairs(host)
        )

        prism = build_named("prism")
        db = build_named("db531")
        c4 = cycle_graph(4)
        bowtie = build_named("bowtie")
        self.prism_constraints = self._internal(prism, "C3xP1")
        self.db_constraints = self._internal(db, "DB(5,3,-1)")
        self.c4_constraints = self._internal(c4, "C4")
        self.bowtie_constraints = self._internal(bowtie, "bowtie")

    def _straddle_mask(self, a: int, b: int) -> int:
        mask = 0
        for idx, (i, j) in enumerate(self.pairs):
            bi, bj = 1 << i, 1 << j
            if (a & bi and b & bj) or (a & bj and b & bi):
                mask |= 1 << idx
        return mask

    def internal_pair_mask(self, edge_set: int) -> int:
        mask = 0
        for idx, (i, j) in enumerate(self.pairs):
            if edge_set >> i & 1 and edge_set >> j & 1:
                mask |= 1 << idx
        return mask

    def _internal(self, pattern: Graph, name: str) -> tuple[InternalConstraint, ...]:
        out = []
        for emb in find_subgraphs(self.host, pattern, name):
            out.append(InternalConstraint(self.internal_pair_mask(emb.edge_set), emb))
        return tuple(out)

    def missed_mask_of(self, p: Prescription) -> int:
        mask = 0
        for idx, (i, j) in enumerate(self.pairs):
            if not p.crossings[i] >> j & 1:
                mask |= 1 << idx
        return mask


_context_cache: dict[Graph, HostContext] = {}


def host_context(host: Graph) -> HostContext:
    ctx = _context_cache.get(host)
    if ctx is None:
        ctx = _context_cache[host] = HostContext(host)
    return ctx


def pattern_graph_of(sub: SubgraphEmbedding) -> Graph:
    return sub.pattern


# ---------------------------------------------------------------------------
# Filters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FilterResult:
    name: str
    ok: bool
    witness: dict | None = None


def check_property1(missed: MissedPairSet) -> FilterResult:
    """Disjoint-cycle crossing parity (necessary in every drawing)."""
    ctx = host_context(missed.host)
    for c in ctx.parity_constraints:
        if (missed.mask & c.mask).bit_count() & 1 != c.target:
            a, b = c.cycles
            return FilterResult("property1", False, {
                "cycle_a": list(a.vertices), "cycle_b": list(b.vertices),
                "straddling_missed": (missed.mask & c.mask).bit_count(),
                "required_parity": c.target,
            })
    return FilterResult("property1", True)


def _property2_ok(internal_missed: int) -> bool:
    # restricted total is 18 - internal_missed; allowed: 15 or <= 13
    return internal_missed == 3 or internal_missed >= 5


def check_property2(p: Prescription) -> FilterResult:
    ctx = host_context(p.host)
    missed = ctx.missed_mask_of(p)
    for c in ctx.prism_constraints:
        im = (missed & c.mask).bit_count()
        if not _property2_ok(im):
            return FilterResult("property2", False, {
                "embedding": list(c.embedding.vertex_map),
                "restricted_total": 18 - im,
            })
    return FilterResult("property2", True)


def check_property3(p: Prescription) -> FilterResult:
    ctx = host_context(p.host)
    missed = ctx.missed_mask_of(p)
    for c in ctx.db_constraints:
        im = (missed & c.mask).bit_count()
        if 11 - im > 10:
            return FilterResult("property3", False, {
                "embedding": list(c.embedding.vertex_map),
                "restricted_total": 11 - im,
            })
    return FilterResult("property3", True)


def check_structure_coverage(missed: MissedPairSet) -> FilterResult:
    """Every C4 and every bowtie needs an internal missed pair."""
    ctx = host_context(missed.host)
    for kind, constraints in (("C4", ctx.c4_constraints),
                              ("bowtie", ctx.bowtie_constraints)):
        for c in constraints:
            if not missed.mask & c.mask:
                return FilterResult("coverage", False, {
                    "kind": kind, "embedding": list(c.embedding.vertex_map),
                })
    return FilterResult("coverage", True)


PAPER_SUITE = ("property1", "property2", "property3")
FULL_SUITE = ("property1", "property2", "property3", "coverage")


@dataclass(frozen=True)
class FilterReport:
    passed: bool
    results: tuple[FilterResult, ...]

    @property
    def failed_at(self) -> str | None:
        for r in self.results:
            if not r.ok:
                return r.name
        return None


def run_filters(missed: MissedPairSet, suite=FULL_SUITE) -> FilterReport:
    """Evaluate the selected filters, short-circuiting on the first failure."""
    p = None
    results = []
    for name in suite:
        if name == "property1":
            r = check_property1(missed)
        elif name == "property2":
            p = p or prescription_from_missed(missed.host, missed)
            r = check_property2(p)
        elif name == "property3":
            p = p or prescription_from_missed(missed.host, missed)
            r = check_property3(p)
        elif name == "coverage":
            r = check_structure_coverage(missed)
        else:
            raise ValueError(f"unknown filter {name!r}")
        results.append(r)
        if not r.ok:
            break
    return FilterReport(all(r.ok for r in results), tuple(results))


def pool_masks(host: Graph) -> dict[str, list[int]]:
    """Internal-pair pools of the host's C4s and bowties."""
    ctx = host_context(host)
    return {
        "C4": [c.mask for c in ctx.c4_constraints],
        "bowtie": [c.mask for c in ctx.bowtie_constraints],
    }


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
