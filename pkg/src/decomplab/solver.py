"""Exact, fractional and greedy pattern-decomposition engines.

The exact engine is set-based exact cover over deduplicated candidate copies
with most-constrained-edge branching and divisibility pruning.  Statuses keep
UNSAT-by-divisibility, UNSAT-by-exhaustion and timeout (indeterminate) apart.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .divisibility import check_divisibility
from .embeddings import _search, enumerate_embeddings
from .errors import DomainError, InputError, SizeGuardError
from .graphs import Decomposition, EmbeddedCopy, Graph, norm_edge
from .lp import solve_equalities_box_float, solve_equalities_nonneg

SAT = "sat"
UNSAT_DIVISIBILITY = "unsat_divisibility"
UNSAT_EXHAUSTED = "unsat_exhausted"
INDETERMINATE = "indeterminate"
INFEASIBLE = "infeasible"
FEASIBLE = "feasible"

DEFAULT_LP_GUARD = 20000


@dataclass
class SolveResult:
    status: str
    decomposition: Optional[Decomposition] = None
    report: Optional[object] = None       # divisibility report on that status
    nodes: int = 0

    @property
    def sat(self) -> bool:
        return self.status == SAT


@dataclass
class FractionalDecomposition:
    copies: list
    weights: list
    mode: str

    def weight_on_edge(self, e):
        e = norm_edge(*e)
        return sum(w for c, w in zip(self.copies, self.weights)
                   if e in c.edge_image())


@dataclass
class FractionalResult:
    status: str
    solution: Optional[FractionalDecomposition] = None


def candidate_copies(pattern: Graph, host: Graph, target: frozenset,
                     through_vertex: Optional[int] = None) -> list[EmbeddedCopy]:
    """Deduplicated copies (one per image edge set) lying inside `target`.

    With `through_vertex`, only copies whose image contains that vertex.
    """
    sub = Graph(host.n, target)
    if through_vertex is None:
        return [EmbeddedCopy(pattern, host, c.image)
                for c in enumerate_embeddings(pattern, sub, dedup_by_edges=True)]
    seen = set()
    out = []
    for p in range(pattern.n):
        for img in _search(pattern, sub.adj, sub.n, {p: through_vertex}):
            key = frozenset(norm_edge(img[u], img[v]) for u, v in pattern.edges)
            if key in seen:
                continue
            seen.add(key)
            out.append(EmbeddedCopy(pattern, host, img))
    return out


class _Deadline:
    def __init__(self, timeout):
        self.t0 = time.monotonic()
        self.timeout = timeout
        self.hit = False

    def expired(self) -> bool:
        if self.timeout is not None and time.monotonic() - self.t0 > self.timeout:
            self.hit = True
        return self.hit


def _component_edge_counts(n: int, edges) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cnt = {}
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
            cnt[ru] = cnt.get(ru, 0) + cnt.pop(rv, 0) + 1
        else:
            cnt[ru] = cnt.get(ru, 0) + 1
    return list(cnt.values())


def exact_decompose(pattern: Graph, host: Graph,
                    target_edges: Optional[frozenset] = None,
                    timeout: Optional[float] = None) -> SolveResult:
    """Partition `target_edges` (default all of E(host)) into copies of
    `pattern`, or prove impossibility.

    Cheap divisibility obstructions are reported before any search.
    """
    if pattern.e < 2:
        raise InputError("pattern needs at least two edges")
    target = (frozenset(norm_edge(*e) for e in target_edges)
              if target_edges is not None else host.edges)
    if not target <= host.edges:
        raise InputError("target edges must be edges of the host")
    tgraph = Graph(host.n, target)
    report = check_divisibility(pattern, tgraph)
    if not (report.edge_divisible and report.degree_divisible):
        return SolveResult(UNSAT_DIVISIBILITY, report=report)
    if not target:
        return SolveResult(SAT, Decomposition(host, target, []))

    deadline = _Deadline(timeout)
    cands = candidate_copies(pattern, host, target)
    cand_edges = [c.edge_image() for c in cands]
    by_edge: dict = {e: set() for e in target}
    for i, es in enumerate(cand_edges):
        for e in es:
            by_edge[e].add(i)
    if any(not s for s in by_edge.values()):
        return SolveResult(UNSAT_EXHAUSTED)

    pattern_connected = pattern.is_connected()
    ef = pattern.e
    min_deg = min(d for d in pattern.degrees() if d > 0)

    uncovered = set(target)
    live = {i for i in range(len(cands))}
    chosen: list[int] = []
    nodes = 0

    deg = {}
    for u, v in target:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1

    def prune() -> bool:
        if any(0 < d < min_deg for d in deg.values()):
            return True
        if pattern_connected and len(uncovered) <= 4000:
            if any(c % ef for c in
                   _component_edge_counts(host.n, uncovered)):
                return True
        return False

    def solve() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes % 256 == 0 and deadline.expired():
            return False
        if not uncovered:
            return True
        e0, cs0 = None, None
        for e in uncovered:
            k = len(by_edge[e] & live)
            if k == 0:
                return False
            if cs0 is None or k < cs0:
                e0, cs0 = e, k
                if k == 1:
                    break
        if prune():
            return False
        for i in sorted(by_edge[e0] & live):
            es = cand_edges[i]
            removed_live = []
            for e in es:
                uncovered.discard(e)
                deg[e[0]] -= 1
                deg[e[1]] -= 1
            for e in es:
                for j in by_edge[e]:
                    if j in live:
                        live.discard(j)
                        removed_live.append(j)
            chosen.append(i)
            if solve():
                return True
            if deadline.hit:
                # unwind without exploring siblings
                chosen.pop()
                live.update(removed_live)
                for e in es:
                    uncovered.add(e)
                    deg[e[0]] += 1
                    deg[e[1]] += 1
                return False
            chosen.pop()
            live.update(removed_live)
            for e in es:
                uncovered.add(e)
                deg[e[0]] += 1
                deg[e[1]] += 1
        return False

    if solve():
        dec = Decomposition(host, target, [cands[i] for i in chosen])
        return SolveResult(SAT, dec, nodes=nodes)
    if deadline.hit:
        return SolveResult(INDETERMINATE, nodes=nodes)
    return SolveResult(UNSAT_EXHAUSTED, nodes=nodes)


def verify_decomposition(dec: Decomposition) -> tuple[bool, Optional[str]]:
    """Certificate check: common pattern, valid embeddings, exact partition.

    Linear in the total certificate size; the first violation is named.
    """
    if not dec.copies:
        if dec.target_edges:
            e = min(dec.target_edges)
            return False, f"uncovered edge {e}"
        return True, None
    pattern = dec.copies[0].pattern
    covered = set()
    for k, c in enumerate(dec.copies):
        if c.pattern != pattern:
            return False, f"copy {k} has a different pattern"
        if c.host != dec.host:
            return False, f"copy {k} lives in a different host"
        if not c.is_valid():
            return False, f"copy {k} is not a valid embedding"
        for e in c.edge_image():
            if e in covered:
                return False, f"edge {e} covered twice"
            if e not in dec.target_edges:
                return False, f"edge {e} outside the target set"
            covered.add(e)
    if covered != dec.target_edges:
        e = min(dec.target_edges - covered)
        return False, f"uncovered edge {e}"
    return True, None


def fractional_decompose(pattern: Graph, host: Graph, mode: str = "rational",
                         tolerance: float = 1e-9,
                         guard: int = DEFAULT_LP_GUARD) -> FractionalResult:
    """Solve the one-variable-per-copy, one-equation-per-edge feasibility LP.

    Every copy has at least one edge, so the box bound x <= 1 is implied by
    the row sums and plain nonnegativity suffices in rational mode.
    """
    if pattern.e < 1:
        raise InputError("pattern needs at least one edge")
    target = host.edges
    if not target:
        return FractionalResult(FEASIBLE,
                                FractionalDecomposition([], [], mode))
    cands = candidate_copies(pattern, host, target)
    edges = sorted(target)
    if len(cands) * len(edges) > guard * 10 or len(cands) > guard:
        raise SizeGuardError(
            f"LP size guard: {len(cands)} copies x {len(edges)} edges")
    if not cands:
        return FractionalResult(INFEASIBLE)
    eidx = {e: i for i, e in enumerate(edges)}
    cols = [c.edge_image() for c in cands]
    if mode == "rational":
        rows = [[Fraction(0)] * len(cands) for _ in edges]
        for j, es in enumerate(cols):
            for e in es:
                rows[eidx[e]][j] = Fraction(1)
        x = solve_equalities_nonneg(rows, [Fraction(1)] * len(edges))
    elif mode == "float":
        rows = [[0.0] * len(cands) for _ in edges]
        for j, es in enumerate(cols):
            for e in es:
                rows[eidx[e]][j] = 1.0
        x = solve_equalities_box_float(rows, [1.0] * len(edges), tolerance)
    else:
        raise InputError(f"unknown mode {mode!r}")
    if x is None:
        return FractionalResult(INFEASIBLE)
    return FractionalResult(FEASIBLE, FractionalDecomposition(cands, x, mode))


@dataclass
class GreedyResult:
    copies: list
    leftover: Graph

    def as_decomposition(self, host: Graph) -> Decomposition:
        covered = set()
        for c in self.copies:
            covered |= c.edge_image()
        return Decomposition(host, frozenset(covered), list(self.copies))


def _pattern_edge_reps(pattern: Graph) -> list[tuple[int, int]]:
    """One pattern edge per orbit would suffice; all edges keeps it simple
    and still correct (the pinned search just repeats work on symmetries)."""
    return sorted(pattern.edges)


def greedy_decompose(pattern: Graph, host: Graph, seed: int = 0,
                     priority_edges=None) -> GreedyResult:
    """Maximal greedy collection: repeatedly remove a copy until none is left.

    An edge found inextensible stays inextensible as the graph shrinks, so
    each edge is processed once.  Deterministic for a given seed;
    `priority_edges` go to the front of the processing queue.
    """
    if pattern.e < 1:
        raise InputError("pattern needs at least one edge")
    rng = random.Random(seed)
    adj = [set(s) for s in host.adj]
    order = list(range(host.n))
    rng.shuffle(order)
    if priority_edges:
        prio = [norm_edge(*e) for e in priority_edges]
        pset = set(prio)
        rng.shuffle(prio)
        rest = sorted(e for e in host.edges if e not in pset)
        rng.shuffle(rest)
        queue = prio + rest
    else:
        queue = sorted(host.edges)
        rng.shuffle(queue)
    reps = _pattern_edge_reps(pattern)
    copies = []
    fast_triangle = pattern == Graph(3, [(0, 1), (1, 2), (0, 2)])

    def remove(img_edges):
        for u, v in img_edges:
            adj[u].discard(v)
            adj[v].discard(u)

    from .embeddings import find_embedding

    for e in queue:
        while True:
            u, v = e
            if v not in adj[u]:
                break
            if fast_triangle:
                common = adj[u] & adj[v]
                if not common:
                    break
                w = min(common, key=lambda x: order[x])
                img = (u, v, w)
                copies.append(EmbeddedCopy(pattern, host, img))
                remove([(u, v), (u, w), (v, w)])
                continue
            found = None
            for (p, q) in reps:
                for pins in ({p: u, q: v}, {p: v, q: u}):
                    img = find_embedding(pattern, adj, host.n, pins,
                                         host_order=order)
                    if img is not None:
                        found = img
                        break
                if found:
                    break
            if not found:
                break
            copy = EmbeddedCopy(pattern, host, found)
            copies.append(copy)
            remove(copy.edge_image())
    left_edges = [(u, v) for u in range(host.n) for v in adj[u] if u < v]
    return GreedyResult(copies, Graph(host.n, left_edges))


def cover_vertex(pattern: Graph, host: Graph, x: int,
                 timeout: Optional[float] = None,
                 forbidden_edges: Optional[set] = None) -> SolveResult:
    """Edge-disjoint copies covering every edge at `x` (star cover).

    Copies are globally edge-disjoint, not just on the star.  Divisibility of
    the star degree by the pattern degree gcd is the cheap gate.
    """
    from math import gcd
    from functools import reduce
    if pattern.e < 1:
        raise InputError("pattern needs at least one edge")
    if not (0 <= x < host.n):
        raise InputError("vertex out of range")
    r = reduce(gcd, [d for d in pattern.degrees() if d], 0)
    dx = host.degree(x)
    if dx % r:
        rep = {"vertex": x, "degree": dx, "modulus": r, "residue": dx % r}
        return SolveResult(UNSAT_DIVISIBILITY, report=rep)
    star = frozenset(norm_edge(x, y) for y in host.adj[x])
    if forbidden_edges:
        usable = host.edges - frozenset(norm_edge(*e) for e in forbidden_edges)
        if not star <= usable:
            return SolveResult(UNSAT_EXHAUSTED)
    else:
        usable = host.edges
    cands = candidate_copies(pattern, host, usable, through_vertex=x)
    cands = [c for c in cands if c.edge_image() & star]
    cand_edges = [c.edge_image() for c in cands]
    by_star: dict = {e: [] for e in star}
    for i, es in enumerate(cand_edges):
        for e in es & star:
            by_star[e].append(i)
    if any(not l for l in by_star.values()):
        return SolveResult(UNSAT_EXHAUSTED)

    deadline = _Deadline(timeout)
    degrees_at = sorted({pattern.degree(v) for v in range(pattern.n)
                         if pattern.degree(v)})
    used: set = set()
    star_left = set(star)
    chosen: list[int] = []
    nodes = 0

    def star_coverable(k: int) -> bool:
        """Can k be a sum of pattern degrees?  Coarse semigroup check."""
        if k == 0:
            return True
        if k < degrees_at[0]:
            return False
        return True

    def solve() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes % 256 == 0 and deadline.expired():
            return False
        if not star_left:
            return True
        if not star_coverable(len(star_left)):
            return False
        e0, avail = None, None
        for e in star_left:
            opts = [i for i in by_star[e] if not (cand_edges[i] & used)]
            if not opts:
                return False
            if avail is None or len(opts) < len(avail):
                e0, avail = e, opts
                if len(opts) == 1:
                    break
        for i in avail:
            es = cand_edges[i]
            used.update(es)
            removed = es & star_left
            star_left.difference_update(removed)
            chosen.append(i)
            if solve():
                return True
            chosen.pop()
            star_left.update(removed)
            used.difference_update(es)
            if deadline.hit:
                return False
        return False

    if solve():
        covered = set()
        for i in chosen:
            covered |= cand_edges[i]
        return SolveResult(SAT, Decomposition(host, frozenset(covered),
                                              [cands[i] for i in chosen]),
                           nodes=nodes)
    if deadline.hit:
        return SolveResult(INDETERMINATE, nodes=nodes)
    return SolveResult(UNSAT_EXHAUSTED, nodes=nodes)
