"""Combinatorial embeddings as rotation systems over darts.

Edge k owns darts 2k and 2k+1 (one per direction); the involution is
``d ^ 1``.  A rotation system assigns each vertex the cyclic order of its
outgoing darts; faces are the orbits of d -> successor(reverse(d)).  A
connected component is spherical (drawable in the plane respecting the
rotations) iff V - E + F = 2, which is the check everything here reduces to.

Multi-edges and loops are allowed because contracting a wheel gadget down to
a point passes through them.
"""

from __future__ import annotations


class Rotations:
    """Mutable rotation system; supports surgery (contract/delete/split)."""

    def __init__(self, n: int):
        self.rot: list[list[int] | None] = [[] for _ in range(n)]
        self.dart_vertex: list[int] = []
        self.edge_alive: list[bool] = []

    @property
    def n_vertices(self) -> int:
        return sum(1 for r in self.rot if r is not None)

    @property
    def n_edges(self) -> int:
        return sum(self.edge_alive)

    def edge_ends(self, k: int) -> tuple[int, int]:
        return self.dart_vertex[2 * k], self.dart_vertex[2 * k + 1]

    def add_vertex(self) -> int:
        self.rot.append([])
        return len(self.rot) - 1

    def new_edge(self, u: int, v: int) -> int:
        """Allocate an edge; darts must then be placed with insert_dart."""
        k = len(self.edge_alive)
        self.dart_vertex.extend((u, v))
        self.edge_alive.append(True)
        return k

    def add_edge(self, u: int, v: int, after_u: int | None = None,
                 after_v: int | None = None) -> int:
        """Add edge u-v; each dart goes after the given dart (or at the end)."""
        k = self.new_edge(u, v)
        self.insert_dart(2 * k, after_u)
        self.insert_dart(2 * k + 1, after_v)
        return k

    def insert_dart(self, d: int, after: int | None) -> None:
        r = self.rot[self.dart_vertex[d]]
        if after is None:
            r.append(d)
        else:
            r.insert(r.index(after) + 1, d)

    def delete_edge(self, k: int) -> None:
        for d in (2 * k, 2 * k + 1):
            self.rot[self.dart_vertex[d]].remove(d)
        self.edge_alive[k] = False

    def contract_edge(self, k: int) -> int:
        """Merge the endpoints of edge k, keeping the cyclic order intact.

        Returns the surviving vertex.  The rotation at the merged vertex is
        u's order with dart 2k replaced by v's fan starting after dart 2k+1.
        """
        a, b = 2 * k, 2 * k + 1
        u, v = self.dart_vertex[a], self.dart_vertex[b]
        if u == v:
            raise ValueError("cannot contract a loop")
        ru, rv = self.rot[u], self.rot[v]
        ia, ib = ru.index(a), rv.index(b)
        fan = rv[ib + 1:] + rv[:ib]
        self.rot[u] = ru[:ia] + fan + ru[ia + 1:]
        for d in fan:
            self.dart_vertex[d] = u
        self.rot[v] = None
        self.edge_alive[k] = False
        return u

    def simplify_loops(self) -> None:
        """Delete all loops (deletion never raises the genus)."""
        for k, alive in enumerate(self.edge_alive):
            if alive and self.dart_vertex[2 * k] == self.dart_vertex[2 * k + 1]:
                self.delete_edge(k)

    # -- faces and Euler ---------------------------------------------------

    def _successor_map(self) -> dict[int, int]:
        succ = {}
        for r in self.rot:
            if not r:
                continue
            for i, d in enumerate(r):
                succ[d] = r[(i + 1) % len(r)]
        return succ

    def faces(self) -> list[list[int]]:
        """Face boundaries as dart cycles (orbits of d -> succ(d ^ 1))."""
        succ = self._successor_map()
        seen = set()
        out = []
        for d0 in succ:
            if d0 in seen:
                continue
            face = []
            d = d0
            while d not in seen:
                seen.add(d)
                face.append(d)
                d = succ[d ^ 1]
            out.append(face)
        return out

    def components(self) -> list[list[int]]:
        """Connected components as vertex lists (live vertices only)."""
        live = [v for v, r in enumerate(self.rot) if r is not None]
        parent = {v: v for v in live}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, alive in enumerate(self.edge_alive):
            if alive:
                a, b = find(self.dart_vertex[2 * k]), find(self.dart_vertex[2 * k + 1])
                if a != b:
                    parent[a] = b
        groups: dict[int, list[int]] = {}
        for v in live:
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def is_spherical(self) -> bool:
        """True iff every component satisfies V - E + F = 2 (genus zero)."""
        comp_of = {}
        for i, comp in enumerate(self.components()):
            for v in comp:
                comp_of[v] = i
        ncomp = len(comp_of) and max(comp_of.values()) + 1
        V = [0] * ncomp
        E = [0] * ncomp
        F = [0] * ncomp
        for v, r in enumerate(self.rot):
            if r is not None:
                V[comp_of[v]] += 1
        for k, alive in enumerate(self.edge_alive):
            if alive:
                E[comp_of[self.dart_vertex[2 * k]]] += 1
        for face in self.faces():
            F[comp_of[self.dart_vertex[face[0]]]] += 1
        for i in range(ncomp):
            if E[i] == 0:
                continue  # edgeless components are trivially fine
            if V[i] - E[i] + F[i] != 2:
                return False
        return True

    def copy(self) -> "Rotations":
        dup = Rotations(0)
        dup.rot = [list(r) if r is not None else None for r in self.rot]
        dup.dart_vertex = list(self.dart_vertex)
        dup.edge_alive = list(self.edge_alive)
        return dup


def from_adjacency_rotation(n: int, edges: list[tuple[int, int]],
                            order: list[list[int]]) -> Rotations:
    """Build from per-vertex neighbour orders (simple graphs only)."""
    rs = Rotations(n)
    index = {}
    for k, (u, v) in enumerate(edges):
        rs.new_edge(u, v)
        index[(u, v)] = 2 * k
        index[(v, u)] = 2 * k + 1
    for v in range(n):
        rs.rot[v] = [index[(v, w)] for w in order[v]]
    return rs


def from_planar_embedding(emb, n: int, edges: list[tuple[int, int]]) -> Rotations:
    """Adopt a networkx PlanarEmbedding's rotations (reflection is irrelevant)."""
    order = [list(emb.neighbors_cw_order(v)) if v in emb else [] for v in range(n)]
    return from_adjacency_rotation(n, edges, order)


def to_planar_embedding(rs: Rotations):
    """Convert to a networkx PlanarEmbedding (caller must know it is spherical)."""
    import networkx as nx

    emb = nx.PlanarEmbedding()
    for v, r in enumerate(rs.rot):
        if r is None:
            continue
        emb.add_node(v)
        prev = None
        for d in r:
            w = rs.dart_vertex[d ^ 1]
            emb.add_half_edge(v, w, cw=prev)
            prev = w
    return emb
