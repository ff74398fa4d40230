"""Candidate enumeration, survivor elimination, and exact maxcr scans.

Enumeration is allocation-driven: every 4-cycle and every bowtie of the host
must contain a missed pair in any good drawing (neither is thrackleable), and
on C3xC3 minus a vertex those nine candidate pools are pairwise disjoint.  A
candidate set therefore decomposes into one allocated pair per pool (the
lowest-indexed pair of the set in that pool) plus free extras, which makes
the generation duplicate-free.  Filters evaluate as integer signatures:
parity flips for the disjoint-cycle conditions, cover bits for the 6-cycle-
plus-chord subgraphs, and per-prism counters.

A plain brute-force mode (ascending k-subsets, same leaf filters) exists for
cross-validation on universes small enough to afford it.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .graphs import Graph, thrackle_number
from .prescriptions import (
    FULL_SUITE,
    PAPER_SUITE,
    MissedPairSet,
    Prescription,
    host_context,
    prescription_from_missed,
)
from .realizability import (
    BUDGET_EXHAUSTED,
    REALIZABLE,
    UNREALIZABLE,
    Budget,
    Elimination,
    Verdict,
    decide_exact,
    find_unrealizable_subgraph,
    subgraph_catalog,
)


@dataclass(frozen=True)
class CandidateQuery:
    host: Graph
    k: int
    suite: tuple[str, ...] = PAPER_SUITE
    mode: str = "allocation"            # "allocation" | "brute"
    bowtie_min2: bool = False           # some bowtie with >= 2 internal missed pairs
    restrict_pairs: int | None = None   # optional pair-index universe mask

    def to_json(self) -> dict:
        return {
            "host": {"n": self.host.n, "edges": [list(e) for e in self.host.edges]},
            "k": self.k, "suite": list(self.suite), "mode": self.mode,
            "bowtie_min2": self.bowtie_min2,
            "restrict_pairs": self.restrict_pairs,
        }


@dataclass(frozen=True)
class EnumerationResult:
    query: CandidateQuery
    candidates: tuple[MissedPairSet, ...]
    explanation: str = ""

    def __len__(self) -> int:
        return len(self.candidates)


class _Signatures:
    """Per-pair filter increments so a leaf check is a few integer ops."""

    def __init__(self, host: Graph):
        ctx = host_context(host)
        n = len(ctx.pairs)
        self.n_pairs = n
        self.parity_flip = [0] * n
        for ci, c in enumerate(ctx.parity_constraints):
            for i in _bits(c.mask):
                self.parity_flip[i] |= 1 << ci
        self.parity_target = sum(c.target << ci
                                 for ci, c in enumerate(ctx.parity_constraints))
        self.db_cover = [0] * n
        for ci, c in enumerate(ctx.db_constraints):
            for i in _bits(c.mask):
                self.db_cover[i] |= 1 << ci
        self.all_db = (1 << len(ctx.db_constraints)) - 1
        self.prism_masks = [c.mask for c in ctx.prism_constraints]
        self.c4_pools = [c.mask for c in ctx.c4_constraints]
        self.bowtie_pools = [c.mask for c in ctx.bowtie_constraints]
        self.pools = self.c4_pools + self.bowtie_pools


def _leaf_ok(sig: _Signatures, suite, mask: int, bowtie_min2: bool) -> bool:
    if "property1" in suite:
        pa = 0
        for i in _bits(mask):
            pa ^= sig.parity_flip[i]
        if pa != sig.parity_target:
            return False
    if "property2" in suite:
        for pm in sig.prism_masks:
            c = (mask & pm).bit_count()
            if not (c == 3 or c >= 5):
                return False
    if "property3" in suite:
        dbu = sig.all_db
        for i in _bits(mask):
            dbu &= ~sig.db_cover[i]
        if dbu:
            return False
    if "coverage" in suite:
        for pm in sig.pools:
            if not mask & pm:
                return False
    if bowtie_min2 and not any((mask & pm).bit_count() >= 2 for pm in sig.bowtie_pools):
        return False
    return True


def enumerate_candidates(q: CandidateQuery) -> EnumerationResult:
    """All k-subsets of non-incident pairs passing the selected filters."""
    host = q.host
    th = thrackle_number(host)
    if not 0 <= q.k <= th:
        raise ValueError(f"k={q.k} outside 0..Th={th}")
    ctx = host_context(host)
    sig = _Signatures(host)
    universe = q.restrict_pairs if q.restrict_pairs is not None \
        else (1 << sig.n_pairs) - 1

    if q.mode == "brute":
        found = _enumerate_brute(q, sig, universe)
        note = "brute-force over all k-subsets"
    elif q.mode == "allocation":
        pools = [pm & universe for pm in sig.pools]
        for a, b in itertools.combinations(pools, 2):
            if a & b:
                raise ValueError("allocation mode requires pairwise disjoint pools")
        if any(pm == 0 for pm in pools) and pools:
            return EnumerationResult(q, (), "a coverage pool has no available pair")
        if q.k < len(pools):
            return EnumerationResult(
                q, (), f"k={q.k} cannot cover {len(pools)} disjoint pools "
                       "(any good drawing must miss a pair in each 4-cycle and bowtie)")
        found = _enumerate_allocation(q, sig, universe, pools)
        note = f"allocation over {len(pools)} pools plus {q.k - len(pools)} extras"
    else:
        raise ValueError(f"unknown mode {q.mode!r}")

    found.sort()
    return EnumerationResult(q, tuple(MissedPairSet(host, m) for m in found), note)


def _enumerate_brute(q: CandidateQuery, sig: _Signatures, universe: int) -> list[int]:
    idxs = list(_bits(universe))
    out = []
    for combo in itertools.combinations(idxs, q.k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if _leaf_ok(sig, q.suite, mask, q.bowtie_min2):
            out.append(mask)
    return out


def _enumerate_allocation(q: CandidateQuery, sig: _Signatures, universe: int,
                          pools: list[int]) -> list[int]:
    """Anchor = the lowest-indexed chosen pair in each pool; extras above it."""
    pool_of = {}
    for pi, pm in enumerate(pools):
        for i in _bits(pm):
            pool_of[i] = pi
    n_extra = q.k - len(pools)
    out = []

    def extras(start: int, left: int, mask: int, anchors) -> None:
        if left == 0:
            if _leaf_ok(sig, q.suite, mask, q.bowtie_min2):
                out.append(mask)
            return
        for i in range(start, sig.n_pairs):
            b = 1 << i
            if not universe & b or mask & b:
                continue
            pi = pool_of.get(i)
            if pi is not None and i < anchors[pi]:
                continue
            extras(i + 1, left - 1, mask | b, anchors)

    def core(pi: int, mask: int, anchors) -> None:
        if pi == len(pools):
            extras(0, n_extra, mask, anchors)
            return
        for i in _bits(pools[pi]):
            core(pi + 1, mask | 1 << i, anchors + [i])

    if pools:
        core(0, 0, [])
    else:
        extras(0, q.k, 0, [])
    return out


# ---------------------------------------------------------------------------
# Survivor elimination
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EliminationRecord:
    missed: MissedPairSet
    eliminator: Elimination | None
    method: str
    transferred_from: int | None = None  # orbit representative's mask


@dataclass(frozen=True)
class EliminationReport:
    records: tuple[EliminationRecord, ...]
    all_eliminated: bool
    stats: dict

    @property
    def survivors(self) -> tuple[MissedPairSet, ...]:
        return tuple(r.missed for r in self.records if r.eliminator is None)


def graph_automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """All vertex permutations preserving adjacency (tiny hosts only)."""
    auts = []
    degs = g.degrees

    def extend(mapping: list[int], used: int) -> None:
        u = len(mapping)
        if u == g.n:
            auts.append(tuple(mapping))
            return
        for w in range(g.n):
            if used >> w & 1 or degs[w] != degs[u]:
                continue
            if all(bool(g.adjacency[u] >> q & 1) == bool(g.adjacency[w] >> mapping[q] & 1)
                   for q in range(u)):
                mapping.append(w)
                extend(mapping, used | 1 << w)
                mapping.pop()

    extend([], 0)
    return auts


def _pair_permutation(g: Graph, perm) -> list[int]:
    ctx = host_context(g)
    out = []
    for i, j in ctx.pairs:
        a, b = g.edges[i], g.edges[j]
        ia = g.edge_id(perm[a[0]], perm[a[1]])
        ib = g.edge_id(perm[b[0]], perm[b[1]])
        out.append(ctx.pair_index[(min(ia, ib), max(ia, ib))])
    return out


def _edge_permutation(g: Graph, perm) -> list[int]:
    return [g.edge_id(perm[u], perm[v]) for u, v in g.edges]


def _apply_index_perm(mask: int, perm: list[int]) -> int:
    out = 0
    for i in _bits(mask):
        out |= 1 << perm[i]
    return out


def eliminate_all(candidates, catalog=None,
                  budget_per_candidate: Budget = Budget(20_000, 20.0),
                  escalation: Budget = Budget(2_000_000, 300.0),
                  use_automorphisms: bool = True) -> EliminationReport:
    """Find an unrealizable-subgraph certificate for every candidate.

    Candidates in the same orbit of the host's automorphism group share
    their eliminating subgraph (relabeling preserves unrealizability), so
    only one representative per orbit is searched.
    """
    candidates = list(candidates)
    if not candidates:
        return EliminationReport((), True, {"orbits": 0, "searched": 0})
    host = candidates[0].host
    if catalog is None:
        catalog = subgraph_catalog(host)

    pair_perms: list[list[int]] = []
    edge_perms: list[list[int]] = []
    if use_automorphisms:
        for perm in graph_automorphisms(host):
            pair_perms.append(_pair_permutation(host, perm))
            edge_perms.append(_edge_permutation(host, perm))

    by_mask = {c.mask: c for c in candidates}
    rep_of: dict[int, tuple[int, int]] = {}  # mask -> (representative, aut index)
    for mask in sorted(by_mask):
        if mask in rep_of:
            continue
        rep_of[mask] = (mask, -1)
        for ai, pp in enumerate(pair_perms):
            img = _apply_index_perm(mask, pp)
            if img in by_mask and img not in rep_of:
                rep_of[img] = (mask, ai)

    hot: list[int] = []  # recently successful eliminator masks, tried first
    found: dict[int, Elimination] = {}
    searched = 0
    t0 = time.perf_counter()
    for mask in sorted(by_mask):
        rep, _ = rep_of[mask]
        if rep != mask or rep in found:
            continue
        searched += 1
        p = prescription_from_missed(host, MissedPairSet(host, mask))
        elim = None
        for hmask in hot:
            e = _try_eliminator(p, hmask, budget_per_candidate)
            if e is not None:
                elim = e
                break
        if elim is None:
            elim = find_unrealizable_subgraph(host, p, catalog,
                                              budget_per_candidate, escalation)
            if elim is not None:
                hot.insert(0, elim.edge_mask)
                del hot[8:]
        if elim is not None:
            found[mask] = elim

    records = []
    for mask in sorted(by_mask):
        rep, ai = rep_of[mask]
        base = found.get(rep)
        if base is None:
            records.append(EliminationRecord(by_mask[mask], None, "unresolved"))
        elif mask == rep:
            records.append(EliminationRecord(by_mask[mask], base, base.method))
        else:
            moved = _apply_index_perm(base.edge_mask, _mask_edge_perm(edge_perms[ai]))
            records.append(EliminationRecord(
                by_mask[mask],
                Elimination(moved, base.verdict, "automorphism-transfer"),
                "automorphism-transfer", transferred_from=rep))
    stats = {"orbits": searched, "searched": searched,
             "elapsed": time.perf_counter() - t0}
    return EliminationReport(tuple(records), all(r.eliminator for r in records), stats)


def _mask_edge_perm(edge_perm: list[int]) -> list[int]:
    return edge_perm


def _try_eliminator(p: Prescription, edge_mask: int, budget: Budget) -> Elimination | None:
    from .prescriptions import restrict_to_edge_subset
    from .realizability import prove_unrealizable_relaxed
    sub, rp, _ = restrict_to_edge_subset(p, edge_mask)
    if rp.total == 0:
        return None
    v = prove_unrealizable_relaxed(rp, budget)
    if v.status == UNREALIZABLE:
        return Elimination(edge_mask, v, "relaxed-cached")
    return None


# ---------------------------------------------------------------------------
# Exact maximum crossing number
# ---------------------------------------------------------------------------

@dataclass
class MaxcrResult:
    value: int | None
    witness: object | None
    profile: dict
    complete: bool
    filters: tuple[str, ...]


def compute_maxcr_exact(g: Graph, budget: Budget = Budget(2_000_000, 600.0),
                        filters: tuple[str, ...] = ("property1",),
                        refute_down_to: int | None = None,
                        _per_candidate: Budget | None = None) -> MaxcrResult:
    """Largest c with a realizable (Th-c)-missed prescription, scanning down.

    The optional filters must be drawing-necessary conditions; property 1 is
    Lemma-style parity and always safe, "coverage" is safe once C4/bowtie
    non-thrackleability has been established by this same engine (the
    pipeline validates that first).  With refute_down_to the scan keeps
    refuting crossing counts below the maximum to exhibit gaps.
    """
    if len(g.edges) > 9:
        raise ValueError("exact maxcr scan is for hosts with at most ~9 edges")
    th = thrackle_number(g)
    per = _per_candidate or Budget(budget.max_nodes, budget.max_seconds)
    mode = "allocation" if "coverage" in filters else "brute"
    profile: dict[int, dict] = {}
    value = None
    witness = None
    complete = True
    floor = refute_down_to if refute_down_to is not None else 0
    for c in range(th, -1, -1):
        if value is not None and c < floor:
            break
        k = th - c
        res = enumerate_candidates(CandidateQuery(g, k, suite=filters, mode=mode))
        entry = {"missed": k, "candidates": len(res.candidates),
                 "realizable": False, "unknown": 0}
        for cand in res.candidates:
            v = decide_exact(prescription_from_missed(g, cand), per)
            if v.status == REALIZABLE:
                entry["realizable"] = True
                if value is None:
                    value = c
                    witness = v.drawing
                break
            if v.status == BUDGET_EXHAUSTED:
                entry["unknown"] += 1
                complete = False
        profile[c] = entry
        if value is not None and refute_down_to is None:
            break
        if not complete:
            break
    return MaxcrResult(value, witness, profile, complete, tuple(filters))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
