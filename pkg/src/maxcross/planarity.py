"""Planarity testing.

``is_planar`` is a boolean-only left-right planarity test (Brandes' variant
of de Fraysseix-Rosenstiehl) over plain adjacency lists with integer edge
ids.  It exists because order-enumeration searches call it millions of times;
it skips the embedding phase entirely and avoids per-call graph objects.
``planar_embedding`` delegates to networkx when an actual combinatorial
embedding is needed (rare: only at realizable leaves).

Verdicts are cross-validated against networkx in the test suite.
"""

from __future__ import annotations

from typing import Sequence

import networkx as nx


def is_planar(n: int, adj: Sequence[Sequence[int]]) -> bool:
    """Planarity of the simple graph with vertices 0..n-1 and adjacency lists."""
    m = sum(len(a) for a in adj) // 2
    if m <= 8:
        # every non-planar graph contains a K5 or K3,3 subdivision (>= 9 edges)
        return True
    if n > 2 and m > 3 * n - 6:
        return False
    return _lr_test(n, adj)


def planar_embedding(n: int, edges: Sequence[tuple[int, int]]):
    """networkx PlanarEmbedding for a simple graph, or None if non-planar."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    ok, emb = nx.check_planarity(g)
    return emb if ok else None


# ---------------------------------------------------------------------------
# Left-right test internals.  Oriented edges get dense integer ids during the
# orientation DFS; intervals are [low, high] lists with -1 for "none" and
# conflict pairs are [left_interval, right_interval] lists (mutated in place,
# matching the reference formulation's object identity semantics).
# ---------------------------------------------------------------------------

def _lr_test(n: int, adj: Sequence[Sequence[int]]) -> bool:
    m = sum(len(a) for a in adj) // 2

    height = [-1] * n
    parent_edge = [-1] * n

    edge_src = [0] * (2 * m)
    edge_dst = [0] * (2 * m)
    lowpt = [0] * (2 * m)
    lowpt2 = [0] * (2 * m)
    nesting = [0] * (2 * m)
    out_adj: list[list[int]] = [[] for _ in range(n)]  # oriented edge ids per source
    oriented: dict[int, int] = {}  # packed (u,v) -> edge id
    n_oriented = 0

    roots = []

    # -- phase 1: DFS orientation, lowpoints, nesting depth (iterative) --
    for root in range(n):
        if height[root] >= 0:
            continue
        height[root] = 0
        roots.append(root)
        stack = [root]
        ind = {root: 0}
        while stack:
            v = stack.pop()
            e = parent_edge[v]
            advanced = False
            while ind[v] < len(adj[v]):
                w = adj[v][ind[v]]
                key = v * n + w
                rkey = w * n + v
                vw = oriented.get(key, -1)
                if vw < 0 and rkey in oriented:
                    ind[v] += 1
                    continue  # already oriented from the other side
                if vw < 0:
                    vw = n_oriented
                    n_oriented += 1
                    oriented[key] = vw
                    edge_src[vw] = v
                    edge_dst[vw] = w
                    out_adj[v].append(vw)
                    lowpt[vw] = height[v]
                    lowpt2[vw] = height[v]
                    if height[w] < 0:  # tree edge: descend, resume v later
                        parent_edge[w] = vw
                        height[w] = height[v] + 1
                        ind[w] = 0
                        stack.append(v)
                        stack.append(w)
                        advanced = True
                        break
                    lowpt[vw] = height[w]  # back edge
                # post-processing for edge vw (tree edges reach here on resume)
                ind[v] += 1
                nesting[vw] = 2 * lowpt[vw]
                if lowpt2[vw] < height[v]:
                    nesting[vw] += 1
                if e >= 0:
                    if lowpt[vw] < lowpt[e]:
                        lowpt2[e] = min(lowpt[e], lowpt2[vw])
                        lowpt[e] = lowpt[vw]
                    elif lowpt[vw] > lowpt[e]:
                        lowpt2[e] = min(lowpt2[e], lowpt[vw])
                    else:
                        lowpt2[e] = min(lowpt2[e], lowpt2[vw])
            if advanced:
                continue

    ordered = [sorted(lst, key=nesting.__getitem__) for lst in out_adj]

    # -- phase 2: LR partition testing --
    ref = [-1] * n_oriented
    lowpt_edge = [-1] * n_oriented
    stack_bottom: list = [None] * n_oriented
    S: list[list[list[int]]] = []  # stack of [left, right] interval pairs

    def conflicting(iv: list[int], b: int) -> bool:
        return iv[1] != -1 and lowpt[iv[1]] > lowpt[b]

    def lowest(pair) -> int:
        left, right = pair
        if left[0] == -1 and left[1] == -1:
            return lowpt[right[0]]
        if right[0] == -1 and right[1] == -1:
            return lowpt[left[0]]
        return min(lowpt[left[0]], lowpt[right[0]])

    def add_constraints(ei: int, e: int) -> bool:
        p_left = [-1, -1]
        p_right = [-1, -1]
        # merge return edges of ei into p_right
        while True:
            q = S.pop()
            ql, qr = q
            if ql[0] != -1 or ql[1] != -1:
                q[0], q[1] = qr, ql
                ql, qr = qr, ql
            if ql[0] != -1 or ql[1] != -1:
                return False
            if lowpt[qr[0]] > lowpt[e]:
                if p_right[0] == -1 and p_right[1] == -1:
                    p_right[1] = qr[1]
                else:
                    ref[p_right[0]] = qr[1]
                p_right[0] = qr[0]
            else:
                ref[qr[0]] = lowpt_edge[e]
            if (S[-1] if S else None) is stack_bottom[ei]:
                break
        # merge conflicting return edges of earlier siblings into p_left
        while S and (conflicting(S[-1][0], ei) or conflicting(S[-1][1], ei)):
            q = S.pop()
            if conflicting(q[1], ei):
                q[0], q[1] = q[1], q[0]
            if conflicting(q[1], ei):
                return False
            ql, qr = q
            ref[p_right[0]] = qr[1]
            if qr[0] != -1:
                p_right[0] = qr[0]
            if p_left[0] == -1 and p_left[1] == -1:
                p_left[1] = ql[1]
            else:
                ref[p_left[0]] = ql[1]
            p_left[0] = ql[0]
        if not (p_left[0] == -1 and p_left[1] == -1
                and p_right[0] == -1 and p_right[1] == -1):
            S.append([p_left, p_right])
        return True

    def remove_back_edges(e: int) -> None:
        u = edge_src[e]
        while S and lowest(S[-1]) == height[u]:
            S.pop()
        if S:
            p = S.pop()
            pl, pr = p
            while pl[1] != -1 and edge_dst[pl[1]] == u:
                pl[1] = ref[pl[1]]
            if pl[1] == -1 and pl[0] != -1:
                ref[pl[0]] = pr[0]
                pl[0] = -1
            while pr[1] != -1 and edge_dst[pr[1]] == u:
                pr[1] = ref[pr[1]]
            if pr[1] == -1 and pr[0] != -1:
                ref[pr[0]] = pl[0]
                pr[0] = -1
            S.append(p)
        if lowpt[e] < height[u] and S:
            hl = S[-1][0][1]
            hr = S[-1][1][1]
            if hl != -1 and (hr == -1 or lowpt[hl] > lowpt[hr]):
                ref[e] = hl
            else:
                ref[e] = hr

    for root in roots:
        dfs_stack = [root]
        ind2 = [0] * n
        skip_init = [False] * n_oriented
        while dfs_stack:
            v = dfs_stack.pop()
            e = parent_edge[v]
            skip_final = False
            olist = ordered[v]
            while ind2[v] < len(olist):
                ei = olist[ind2[v]]
                w = edge_dst[ei]
                if not skip_init[ei]:
                    stack_bottom[ei] = S[-1] if S else None
                    if ei == parent_edge[w]:  # tree edge: descend first
                        dfs_stack.append(v)
                        dfs_stack.append(w)
                        skip_init[ei] = True
                        skip_final = True
                        break
                    lowpt_edge[ei] = ei
                    S.append([[-1, -1], [ei, ei]])
                if lowpt[ei] < height[v]:  # ei has a return edge
                    if ei == olist[0]:
                        lowpt_edge[e] = lowpt_edge[ei]
                    elif not add_constraints(ei, e):
                        return False
                ind2[v] += 1
            if not skip_final and e >= 0:
                remove_back_edges(e)
    return True
