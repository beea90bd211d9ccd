"""Desk-scale cover-down loop: nest a vortex of shrinking vertex sets, cover
everything outside the innermost set level by level, and confine the
leftover there.

The probabilistic machinery behind the asymptotic guarantee is replaced by
greedy removal plus pinned exact search with retry; per-level statistics are
reported so the confinement behaviour can be studied empirically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .divisibility import check_divisibility
from .errors import DomainError, InputError, StochasticFailure
from .graphs import Graph, norm_edge
from .solver import SAT, cover_vertex, exact_decompose, greedy_decompose


@dataclass
class Vortex:
    sets: list                   # U_0 >= U_1 >= ... >= U_ell (as sorted lists)
    delta: Fraction
    mu: Fraction
    m: int
    surrounded: frozenset = frozenset()

    @property
    def depth(self) -> int:
        return len(self.sets) - 1


def find_vortex(g: Graph, delta, mu, m_target: int,
                w=(), seed: int = 0, resamples: int = 64,
                require_nominal: bool = False) -> Vortex:
    """Sample a nested vortex with geometric shrinkage.

    Each level is drawn uniformly (containing the surrounded set) and kept
    if every previous-level vertex retains the target degree share into it;
    after the resample budget the best sample is kept, recording the
    achieved share (or failing when `require_nominal`).
    """
    delta = Fraction(delta)
    mu = Fraction(mu)
    w = frozenset(w)
    if not (0 < mu < 1):
        raise InputError("shrinkage must lie strictly between 0 and 1")
    if len(w) and len(w) > 1 / mu:
        raise InputError("surrounded set too large for the shrinkage")
    if g.n and Fraction(g.min_degree(), g.n) < delta:
        raise DomainError(
            f"minimum degree share {Fraction(g.min_degree(), g.n)} below {delta}")
    for x in w:
        if not (0 <= x < g.n):
            raise InputError("surrounded vertex out of range")

    rng = random.Random(seed)
    target = delta - mu
    # shrink while the current level still exceeds the target size; the
    # final level lands between mu*m_target and m_target
    sizes = [g.n]
    while sizes[-1] > m_target and int(sizes[-1] * mu) >= 1:
        sizes.append(int(sizes[-1] * mu))
    levels = [list(range(g.n))]
    achieved = []
    worst_vertex = None
    for depth in range(1, len(sizes)):
        want = sizes[depth]
        prev = levels[-1]
        if want < len(w):
            raise InputError("surrounded set larger than a vortex level")
        best, best_share = None, None
        for _ in range(resamples):
            pool = [x for x in prev if x not in w]
            rng.shuffle(pool)
            cand = sorted(list(w) + pool[:want - len(w)])
            cset = set(cand)
            share = min(
                (Fraction(sum(1 for y in g.adj[x] if y in cset), len(cand))
                 for x in prev), default=Fraction(1))
            if best_share is None or share > best_share:
                best, best_share = cand, share
                worst_vertex = min(
                    (x for x in prev),
                    key=lambda x: sum(1 for y in g.adj[x] if y in cset))
            if share >= target:
                break
        achieved.append(best_share)
        levels.append(best)
    if require_nominal and any(a < target for a in achieved):
        raise StochasticFailure(
            f"resample budget exhausted below share {target}",
            worst_vertex=worst_vertex)
    final_delta = min([target] + achieved) if achieved else target
    return Vortex(levels, final_delta, mu, len(levels[-1]), w)


def verify_vortex(g: Graph, v: Vortex) -> tuple[bool, Optional[str]]:
    if not v.sets or sorted(v.sets[0]) != list(range(g.n)):
        return False, "(V1) violated: first level must be every vertex"
    for i in range(1, len(v.sets)):
        want = int(len(v.sets[i - 1]) * v.mu)
        if len(v.sets[i]) != want:
            return False, f"(V2) violated at level {i}"
        if not set(v.sets[i]) <= set(v.sets[i - 1]):
            return False, f"nesting violated at level {i}"
    if len(v.sets[-1]) != v.m or not v.surrounded <= set(v.sets[-1]):
        return False, "(V3) violated"
    for i in range(1, len(v.sets)):
        cset = set(v.sets[i])
        for x in v.sets[i - 1]:
            if sum(1 for y in g.adj[x] if y in cset) < v.delta * len(cset):
                return False, f"(V4) violated at level {i} by vertex {x}"
    return True, None


@dataclass
class CoverDownResult:
    copies: list
    leftover: Graph
    success: bool
    stats: list = field(default_factory=list)

    def covered_edges(self) -> set:
        out = set()
        for c in self.copies:
            out |= c.edge_image()
        return out


def cover_down(f: Graph, g: Graph, vortex: Vortex, seed: int = 0,
               release_budget: int = 3,
               finish_exact: bool = False,
               finish_timeout: float = 60.0) -> CoverDownResult:
    """Cover every edge outside the innermost vortex level.

    Level by level: a bulk greedy pass eats the outside-induced part, minus
    a per-vertex partner reserve sized to each vertex's cross degree; a
    seeded per-vertex sweep then covers the remaining edges one at a time
    with pinned copies, preferring outside partners for cross edges and
    inward partners for outside edges.  A stuck edge may release one of the
    sweep's earlier copies and retry, a few times.  Edges touching the next
    level's interior from inside are never consumed early.  Stalls set the
    failure flag, never silently.
    """
    rep = check_divisibility(f, g)
    if not rep.degree_divisible:
        raise DomainError(
            f"host not degree-divisible: residues {rep.degree_residues}")
    ok, why = verify_vortex(g, vortex)
    if not ok:
        raise InputError(f"vortex invalid: {why}")
    from collections import deque
    from .embeddings import find_embedding
    from .graphs import EmbeddedCopy

    rng = random.Random(seed)
    n = g.n
    adj = [set(s) for s in g.adj]
    copies = []
    stats = []
    success = True

    def remove(img_edges):
        for u, v in img_edges:
            adj[u].discard(v)
            adj[v].discard(u)

    def restore(img_edges):
        for u, v in img_edges:
            adj[u].add(v)
            adj[v].add(u)

    def live_edges():
        return [(u, v) for u in range(n) for v in adj[u] if u < v]

    for depth in range(1, len(vortex.sets)):
        inner_set = set(vortex.sets[depth])
        next_inner = (set(vortex.sets[depth + 1])
                      if depth + 1 < len(vortex.sets) else set())
        outside = [x for x in range(n) if x not in inner_set and adj[x]]
        level = {"level": depth, "inner": len(inner_set)}

        # edges that the next level will need: anything inside the current
        # inner set touching the next interior stays untouched
        def protected(u, v):
            if u in inner_set and v in inner_set:
                return u in next_inner or v in next_inner
            return False

        class _View:
            def __getitem__(self, u):
                return {y for y in adj[u] if not protected(u, y)}

        view = _View()

        # partner reserve: each outside vertex keeps about as many outside
        # edges as it has cross edges, so cross edges can pair up later
        reserved = set()
        for x in outside:
            cross_deg = sum(1 for y in adj[x] if y in inner_set)
            partners = [norm_edge(x, y) for y in adj[x]
                        if y not in inner_set]
            rng.shuffle(partners)
            reserved.update(partners[:cross_deg + 2 * f.n])

        # (a) bulk greedy on the unreserved outside-induced part
        universe = [(u, v) for u, v in live_edges()
                    if u not in inner_set and v not in inner_set
                    and (u, v) not in reserved]
        got = greedy_decompose(f, Graph(n, universe),
                               seed=rng.randrange(1 << 30))
        for c in got.copies:
            copies.append(EmbeddedCopy(f, g, c.image))
            remove(c.edge_image())
        level["greedy_copies"] = len(got.copies)

        # (b) per-vertex sweep, one pinned copy at a time with release-retry
        sweep_order = list(outside)
        rng.shuffle(sweep_order)
        out_order = [x for x in range(n) if x not in inner_set]
        rng.shuffle(out_order)
        in_order = sorted(inner_set - next_inner) + sorted(next_inner)
        prefer_outside = out_order + in_order
        prefer_inside = in_order + out_order

        def pinned(x, y, order):
            for (p, q) in sorted(f.edges):
                for pins in ({p: x, q: y}, {p: y, q: x}):
                    img = find_embedding(f, view, n, pins, host_order=order)
                    if img is not None:
                        return img
            return None

        stalls = 0
        for x in sweep_order:
            committed = []      # (copy, edge set) made during this sweep
            attempts = {}
            pending = deque()
            for w in sorted(y for y in adj[x] if y in inner_set):
                pending.append((x, w, True))
            for y in sorted(y for y in adj[x] if y not in inner_set):
                pending.append((x, y, False))
            while pending:
                a, b, is_cross = pending.popleft()
                if b not in adj[a]:
                    continue
                order = prefer_outside if is_cross else prefer_inside
                img = pinned(a, b, order)
                if img is None:
                    key = norm_edge(a, b)
                    tries = attempts.get(key, 0)
                    if tries < release_budget and committed:
                        # release a recent copy, retry, requeue its edges
                        copy, es = committed.pop()
                        copies.remove(copy)
                        restore(es)
                        attempts[key] = tries + 1
                        pending.appendleft((a, b, is_cross))
                        for (u, v) in sorted(es):
                            if u == x or v == x:
                                o = v if u == x else u
                                pending.append((x, o, o in inner_set))
                            else:
                                pending.append((u, v, False))
                        continue
                    stalls += 1
                    continue
                copy = EmbeddedCopy(f, g, img)
                es = copy.edge_image()
                copies.append(copy)
                committed.append((copy, es))
                remove(es)
        level["sweep_stalls"] = stalls

        residue = sum(1 for u, v in live_edges()
                      if u not in inner_set or v not in inner_set)
        level["outside_residue"] = residue
        if residue:
            success = False
        stats.append(level)

    current = Graph(n, live_edges())
    if finish_exact and success:
        res = exact_decompose(f, current, timeout=finish_timeout)
        if res.status == SAT:
            for c in res.decomposition.copies:
                copies.append(EmbeddedCopy(f, g, c.image))
            current = current.without_edges(
                e for c in res.decomposition.copies for e in c.edge_image())

    final_set = set(vortex.sets[-1])
    confined = all(u in final_set and v in final_set
                   for u, v in current.edges)
    return CoverDownResult(copies, current, success and confined, stats)


def _pinned_copy(f: Graph, host: Graph, edge, rng=None):
    """One copy of the pattern through the given edge, if any."""
    from .embeddings import find_embedding
    from .graphs import EmbeddedCopy
    x, y = edge
    order = None
    if rng is not None:
        order = list(range(host.n))
        rng.shuffle(order)
    for (p, q) in sorted(f.edges):
        for pins in ({p: x, q: y}, {p: y, q: x}):
            img = find_embedding(f, host.adj, host.n, pins, host_order=order)
            if img is not None:
                return EmbeddedCopy(f, host, img)
    return None
