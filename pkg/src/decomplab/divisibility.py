"""Divisibility tests and the two residue repairs: shift per-vertex degree
residues with chains of near-biregular gadgets, and fix the edge count modulo
e(F) with Hamilton cycles inside a clique-like part.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Optional

from .embeddings import find_embedding
from .errors import (DegreeError, DomainError, InputError, ResourceError,
                     StructureError)
from .graphs import Graph, complete_bipartite, norm_edge
from .hamilton import hamilton_cycle


@dataclass
class DivisibilityReport:
    edge_divisible: bool
    degree_divisible: bool
    offending_vertices: list
    edge_residue: int
    degree_residues: dict

    @property
    def divisible(self) -> bool:
        return self.edge_divisible and self.degree_divisible


def check_divisibility(pattern: Graph, host: Graph) -> DivisibilityReport:
    if pattern.e < 1:
        raise InputError("pattern needs at least one edge")
    r = reduce(gcd, [d for d in pattern.degrees() if d], 0)
    res = {v: host.degree(v) % r for v in range(host.n)}
    offending = sorted(v for v, rv in res.items() if rv)
    return DivisibilityReport(
        edge_divisible=(host.e % pattern.e == 0),
        degree_divisible=not offending,
        offending_vertices=offending,
        edge_residue=host.e % pattern.e,
        degree_residues={v: rv for v, rv in res.items() if rv},
    )


def _shift_gadget(r: int) -> tuple[Graph, int, int]:
    """Gadget Q: complete bipartite K_{r,r} minus one edge, plus a pendant.

    Returns (Q, u, v) where d(u)=1 and d(v) = r-1 = -1 mod r; all other
    degrees are r.  Embedding u at x and v at y moves one unit of degree
    residue from x to y.
    """
    kb = complete_bipartite(r, r)          # classes 0..r-1 | r..2r-1
    q = Graph(kb.n + 1, set(kb.edges) - {(0, r)} | {(0, 2 * r)})
    return q, 2 * r, r                      # pendant u, deficient v


def _parity_gadget(r: int) -> tuple[Graph, int]:
    """Gadget Q': K_{r,r} with one edge subdivided; the new vertex z has
    degree 2, everything else degree r."""
    kb = complete_bipartite(r, r)
    z = kb.n
    q = Graph(kb.n + 1, set(kb.edges) - {(0, r)} | {(0, z), (r, z)})
    return q, z


def make_degree_divisible(host: Graph, r: int, xi: dict,
                          max_degree_fraction=None,
                          seed: int = 0) -> Graph:
    """Find H inside `host` with d_{host-H}(x) = xi(x) (mod r) for every x.

    A chain of shift gadgets moves the accumulated residue from each vertex to
    the next (ascending id); parity gadgets at the last vertex absorb the
    final amount.  Gadget interiors use fresh vertices relative to previously
    used gadget interiors; gadgets are mutually edge-disjoint.
    """
    n = host.n
    if r < 1:
        raise InputError("modulus must be positive")
    xi_full = {v: int(xi.get(v, 0)) % r for v in range(n)} if isinstance(xi, dict) \
        else {v: int(xi[v]) % r for v in range(n)}
    if sum(xi_full.values()) % r:
        raise DomainError("modulus must divide the sum of target residues")
    if r == 1:
        return Graph(n, [])
    if 2 * host.min_degree() < n:
        raise DegreeError(
            f"minimum degree {host.min_degree()} below half of {n}")

    rng = random.Random(seed)
    order = list(range(n))

    h_edges: set = set()
    adj = [set(s) for s in host.adj]

    def place(gadget: Graph, pins: dict, tag) -> None:
        # gadgets must be edge-disjoint (the adjacency view shrinks as edges
        # are consumed); interior vertices may repeat across gadgets, since
        # interiors only ever contribute degree 0 mod r.  The seeded shuffle
        # spreads the load.  The search is complete: None is a dead end.
        rng.shuffle(order)
        img = find_embedding(gadget, adj, n, pins, host_order=order)
        if img is None:
            raise ResourceError(f"no room left for gadget at step {tag}",
                                stuck_index=tag)
        for a, b in gadget.edges:
            e = norm_edge(img[a], img[b])
            h_edges.add(e)
            adj[e[0]].discard(e[1])
            adj[e[1]].discard(e[0])

    a_prev = 0
    q, qu, qv = _shift_gadget(r)
    for i in range(n - 1):
        x = i
        a_i = (a_prev + host.degree(x) - xi_full[x]) % r
        # pushing a_i units forward equals pulling r - a_i units backward
        # (both shift the same residue); take the cheaper direction
        if a_i <= r - a_i:
            for j in range(a_i):
                place(q, {qu: x, qv: x + 1}, (x, j))
        else:
            for j in range(r - a_i):
                place(q, {qu: x + 1, qv: x}, (x, j))
        a_prev = a_i
    # the closing count must satisfy 2*a_n = 2*e(G) (mod r); take the least
    a_n = host.e % r
    if r % 2 == 0 and host.e % (r // 2) < a_n:
        a_n = host.e % (r // 2)
    qp, qz = _parity_gadget(r)
    for j in range(a_n):
        place(qp, {qz: n - 1}, (n - 1, j))

    h = Graph(n, h_edges)
    for v in range(n):
        want = xi_full[v]
        got = (host.degree(v) - h.degree(v)) % r
        assert got == want, f"residue mismatch at {v}: {got} != {want}"
    return h


def _coprime_subset(vertices: list, e_f: int) -> list:
    """Largest prefix V' of the clique part with gcd(|V'|, e(F)) = 1 and
    fewer than e(F) vertices dropped."""
    m = len(vertices)
    for k in range(m, max(m - e_f, 2), -1):
        if gcd(k, e_f) == 1:
            return vertices[:k]
    raise StructureError(
        f"no prefix of size > {m - e_f} coprime to {e_f}")


def fix_edge_count(host: Graph, clique_part: list, pattern: Graph,
                   e_target: int, seed: int = 0) -> Graph:
    """Find an r-divisible H (r = degree gcd of the pattern) inside the
    clique part with e(H) = e_target (mod e(F)) and max degree <= 2 e(F) r.

    H is a union of Hamilton cycles of the subgraph on a vertex subset whose
    size is coprime to e(F); the cycle count comes from the Bezout identity
    between e(F) and that size.
    """
    if pattern.e < 1:
        raise InputError("pattern needs at least one edge")
    r = reduce(gcd, [d for d in pattern.degrees() if d], 0)
    ef = pattern.e
    if (2 * e_target) % r:
        raise DomainError(f"need {r} | 2*e_target")
    part = sorted(set(clique_part))
    if any(not (0 <= v < host.n) for v in part):
        raise InputError("clique part out of range")

    vprime = _coprime_subset(part, ef)
    np_ = len(vprime)
    a = r if r % 2 else r // 2
    assert e_target % a == 0 and ef % a == 0
    t = (e_target // a) % (ef // a)
    # beta solves beta * |V'| = t  (mod e(F)); exists since gcd(|V'|, e(F)) = 1
    beta = (t * pow(np_, -1, ef)) % ef

    cycles_needed = beta * a
    if cycles_needed == 0:
        return Graph(host.n, [])

    pos = {v: i for i, v in enumerate(vprime)}
    local = Graph(np_, [(pos[u], pos[v]) for u, v in host.edges
                        if u in pos and v in pos])
    need = np_ / 2 + 2 * (cycles_needed - 1)
    if local.min_degree() < need:
        raise DegreeError(
            f"clique part min degree {local.min_degree()} below "
            f"{need:.1f} needed for {cycles_needed} Hamilton cycles")
    h_edges = set()
    g = local
    for i in range(cycles_needed):
        cyc = hamilton_cycle(g, seed=seed + i)
        ce = [(cyc[j], cyc[(j + 1) % np_]) for j in range(np_)]
        g = g.without_edges(ce)
        h_edges.update(norm_edge(vprime[u], vprime[v]) for u, v in ce)

    h = Graph(host.n, h_edges)
    assert h.e % ef == e_target % ef
    assert all(d % r == 0 for d in h.degrees())
    assert h.max_degree() <= 2 * ef * r
    return h
