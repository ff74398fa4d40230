"""Small simple graphs with canonical edge indexing and pattern analysis.

Everything downstream (missed-pair indexing, filters, certificates) relies on
the edge numbering being deterministic: edges are stored sorted
lexicographically on their sorted endpoint pairs, so rebuilding the same graph
always yields identical indices.  Hosts are capped at 16 vertices / 32 edges,
which lets every set live in a machine-word bit mask.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

MAX_VERTICES = 16
MAX_EDGES = 32


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with canonical edge numbering."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Per-vertex bit set of neighbours."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def incident_edge_mask(self) -> tuple[int, ...]:
        """Per-vertex bit set of incident edge indices."""
        mask = [0] * self.n
        for i, (u, v) in enumerate(self.edges):
            mask[u] |= 1 << i
            mask[v] |= 1 << i
        return tuple(mask)

    @cached_property
    def non_incident_edge_mask(self) -> tuple[int, ...]:
        """For each edge, the bit set of edges sharing no endpoint with it."""
        all_edges = (1 << len(self.edges)) - 1
        out = []
        for i, (u, v) in enumerate(self.edges):
            out.append(all_edges & ~self.incident_edge_mask[u]
                       & ~self.incident_edge_mask[v])
        return tuple(out)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_index[(u, v) if u < v else (v, u)]

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"Graph(n={self.n}, m={len(self.edges)})"


def make_graph(n: int, edges) -> Graph:
    """Build a :class:`Graph`, canonicalising and validating the edge list."""
    if not 0 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    canon = []
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
        canon.append((u, v) if u < v else (v, u))
    canon.sort()
    for a, b in itertools.pairwise(canon):
        if a == b:
            raise ValueError(f"parallel edge {a}")
    if len(canon) > MAX_EDGES:
        raise ValueError(f"edge count {len(canon)} exceeds {MAX_EDGES}")
    return Graph(n, tuple(canon))


# ---------------------------------------------------------------------------
# Named graphs
# ---------------------------------------------------------------------------

def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(m: int) -> Graph:
    """Path with m edges (m+1 vertices)."""
    if m < 1:
        raise ValueError("path needs m >= 1 edges")
    return make_graph(m + 1, [(i, i + 1) for i in range(m)])


def bowtie_graph() -> Graph:
    """Two triangles sharing the single vertex 0."""
    return make_graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def db531_graph() -> Graph:
    """Cycle of length 6 plus the chord {0,2}, forming one triangle."""
    hexagon = [(i, (i + 1) % 6) for i in range(6)]
    return make_graph(6, hexagon + [(0, 2)])


def build_named(name: str, *params: int) -> Graph:
    name = name.lower()
    if name == "cycle":
        (n,) = params
        return cycle_graph(n)
    if name == "path":
        (m,) = params
        return path_graph(m)
    if params:
        raise ValueError(f"graph '{name}' takes no parameters")
    if name == "bowtie":
        return bowtie_graph()
    if name == "db531":
        return db531_graph()
    if name == "prism":
        return cartesian_product(cycle_graph(3), path_graph(1))
    if name == "c3xc3":
        return cartesian_product(cycle_graph(3), cycle_graph(3))
    raise ValueError(f"unknown graph name '{name}'")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: (a,x)~(b,y) iff (a=b and x~y) or (x=y and a~b)."""
    if g.n * h.n > MAX_VERTICES:
        raise ValueError(f"product has {g.n * h.n} vertices, cap is {MAX_VERTICES}")

    def vid(a: int, x: int) -> int:
        return a * h.n + x

    edges = []
    for a in range(g.n):
        for x, y in h.edges:
            edges.append((vid(a, x), vid(a, y)))
    for x in range(h.n):
        for a, b in g.edges:
            edges.append((vid(a, x), vid(b, x)))
    return make_graph(g.n * h.n, edges)


# ---------------------------------------------------------------------------
# Vertex deletion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexDeletion:
    """Result of deleting a vertex: the new graph plus index maps back to the host."""

    graph: Graph
    vertex_to_host: tuple[int, ...]
    edge_to_host: tuple[int, ...]


def delete_vertex(g: Graph, v: int) -> VertexDeletion:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} not in graph")
    old_vertices = [u for u in range(g.n) if u != v]
    new_id = {u: i for i, u in enumerate(old_vertices)}
    kept = [(i, e) for i, e in enumerate(g.edges) if v not in e]
    sub = make_graph(g.n - 1, [(new_id[a], new_id[b]) for _, (a, b) in kept])
    # make_graph re-sorts; recover which host edge each new index came from
    remap = {}
    for old_idx, (a, b) in kept:
        na, nb = new_id[a], new_id[b]
        remap[(na, nb) if na < nb else (nb, na)] = old_idx
    edge_to_host = tuple(remap[e] for e in sub.edges)
    return VertexDeletion(sub, tuple(old_vertices), edge_to_host)


# ---------------------------------------------------------------------------
# Thrackle calculus
# ---------------------------------------------------------------------------

def non_incident_pairs(g: Graph) -> tuple[tuple[int, int], ...]:
    """All unordered pairs of edges sharing no endpoint, in index order."""
    out = []
    m = len(g.edges)
    for i in range(m):
        partners = g.non_incident_edge_mask[i] >> (i + 1)
        j = i + 1
        while partners:
            if partners & 1:
                out.append((i, j))
            partners >>= 1
            j += 1
    return tuple(out)


def thrackle_number(g: Graph) -> int:
    """Sum over edges {u,v} of (|E| - d(u) - d(v) + 1)/2."""
    m = len(g.edges)
    total = sum(m - g.degrees[u] - g.degrees[v] + 1 for u, v in g.edges)
    if total % 2:
        raise AssertionError("thrackle sum must be even for a simple graph")
    return total // 2


def sub_thrackle_number(g: Graph) -> int:
    """Thrackle number minus #C4 subgraphs plus #K4 subgraphs."""
    c4 = len(find_subgraphs(g, cycle_graph(4), "C4"))
    k4 = len(find_subgraphs(g, complete_graph(4), "K4"))
    return thrackle_number(g) - c4 + k4


def complete_graph(n: int) -> Graph:
    return make_graph(n, list(itertools.combinations(range(n), 2)))


# ---------------------------------------------------------------------------
# Subgraph search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubgraphEmbedding:
    """One host subgraph isomorphic to a pattern.

    ``vertex_map[i]`` is the host vertex for pattern vertex i and ``edge_map[k]``
    the host edge index for pattern edge k; ``edge_set`` is the bit set of host
    edge indices.  Embeddings are deduplicated up to pattern automorphism, so
    each host subgraph is listed exactly once.
    """

    pattern_name: str
    vertex_map: tuple[int, ...]
    edge_set: int
    edge_map: tuple[int, ...]
    pattern: "Graph"


def find_subgraphs(g: Graph, pattern: Graph, name: str = "pattern") -> list[SubgraphEmbedding]:
    """All (not necessarily induced) copies of ``pattern`` in ``g``.

    Plain backtracking over pattern vertices with degree/adjacency pruning;
    the universe is tiny so nothing cleverer is warranted.
    """
    if pattern.n > 8:
        raise ValueError("pattern capped at 8 vertices")
    if pattern.n > g.n or len(pattern.edges) > len(g.edges):
        return []

    # visit order: highest degree first, then prefer vertices attached to
    # already-placed ones so adjacency pruning bites early
    order: list[int] = []
    placed = set()
    remaining = set(range(pattern.n))
    while remaining:
        attached = [p for p in remaining if any(pattern.adjacency[p] >> q & 1 for q in placed)]
        pool = attached if attached else list(remaining)
        nxt = max(pool, key=lambda p: (pattern.degrees[p], -p))
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    pos_in_order = {p: i for i, p in enumerate(order)}
    by_edge_set: dict[int, tuple[int, ...]] = {}
    assignment: dict[int, int] = {}
    used = [False] * g.n

    def extend(k: int) -> None:
        if k == len(order):
            vm = tuple(assignment[p] for p in range(pattern.n))
            es = 0
            for a, b in pattern.edges:
                es |= 1 << g.edge_id(assignment[a], assignment[b])
            prev = by_edge_set.get(es)
            if prev is None or vm < prev:
                by_edge_set[es] = vm
            return
        p = order[k]
        earlier = [q for q in order[:k] if pattern.adjacency[p] >> q & 1]
        for h in range(g.n):
            if used[h] or g.degrees[h] < pattern.degrees[p]:
                continue
            if any(not (g.adjacency[h] >> assignment[q] & 1) for q in earlier):
                continue
            assignment[p] = h
            used[h] = True
            extend(k + 1)
            used[h] = False
            del assignment[p]

    extend(0)

    out = []
    for es in sorted(by_edge_set):
        vm = by_edge_set[es]
        em = tuple(g.edge_id(vm[a], vm[b]) for a, b in pattern.edges)
        out.append(SubgraphEmbedding(name, vm, es, em, pattern))
    return out


# ---------------------------------------------------------------------------
# Cycle enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]
    vertex_mask: int
    edge_mask: int

    @property
    def length(self) -> int:
        return len(self.vertices)


def enumerate_cycles(g: Graph) -> tuple[Cycle, ...]:
    """Every simple cycle exactly once.

    A cycle is reported rooted at its least vertex, walked in the direction
    whose second vertex is smaller than its last, which kills both the
    rotation and the reflection duplicates.
    """
    cycles = []
    for s in range(g.n):
        path = [s]
        on_path = 1 << s

        def walk(v: int) -> None:
            nonlocal on_path
            nbrs = g.adjacency[v]
            w = 0
            while nbrs:
                if nbrs & 1:
                    if w == s and len(path) >= 3 and path[1] < path[-1]:
                        vm = on_path
                        em = 0
                        for i in range(len(path)):
                            em |= 1 << g.edge_id(path[i], path[(i + 1) % len(path)])
                        cycles.append(Cycle(tuple(path), vm, em))
                    elif w > s and not (on_path >> w & 1):
                        path.append(w)
                        on_path |= 1 << w
                        walk(w)
                        path.pop()
                        on_path &= ~(1 << w)
                nbrs >>= 1
                w += 1

        walk(s)
    cycles.sort(key=lambda c: (c.length, c.vertices))
    return tuple(cycles)


def disjoint_cycle_pairs(g: Graph) -> tuple[tuple[Cycle, Cycle], ...]:
    """All unordered pairs of vertex-disjoint simple cycles."""
    cycles = enumerate_cycles(g)
    return tuple((a, b) for a, b in itertools.combinations(cycles, 2)
                 if not a.vertex_mask & b.vertex_mask)


# ---------------------------------------------------------------------------
# Isomorphism (tiny graphs only; used for sanity checks and dedup)
# ---------------------------------------------------------------------------

def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    if sorted(g.degrees) != sorted(h.degrees):
        return False
    used = [False] * h.n
    mapping = [-1] * g.n

    def extend(u: int) -> bool:
        if u == g.n:
            return True
        for w in range(h.n):
            if used[w] or h.degrees[w] != g.degrees[u]:
                continue
            ok = True
            for q in range(u):
                if bool(g.adjacency[u] >> q & 1) != bool(h.adjacency[w] >> mapping[q] & 1):
                    ok = False
                    break
            if ok:
                mapping[u] = w
                used[w] = True
                if extend(u + 1):
                    return True
                used[w] = False
                mapping[u] = -1
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# Plain-text edge list IO
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Read a graph as "u v" pairs, one per line, 0-based."""
    edges = []
    max_v = -1
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {ln}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        max_v = max(max_v, u, v)
    return make_graph(max_v + 1, edges)


def format_edge_list(g: Graph) -> str:
    return "\n".join(f"{u} {v}" for u, v in g.edges) + "\n"
