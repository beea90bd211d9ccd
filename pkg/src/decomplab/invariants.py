"""Pattern-side parameters: degree gcd, the two bipartite gcd invariants,
chromatic data (including the vertex-star and class-difference parameters),
colour-neighbourhood tuples, and rooted degeneracy.

All rational values are exact fractions; thresholds downstream compare them
for equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterator, Optional

from .errors import DomainError, InputError, SizeGuardError
from .graphs import Graph, degree_gcd_of

DEFAULT_COLOURING_GUARD = 20
DEFAULT_SUBSET_GUARD = 26

THETA_UNDEFINED = None  # marker: theta is only defined for chi >= 3


def degree_gcd(f: Graph) -> int:
    """gcd of the vertex degrees; rejects isolated vertices."""
    if f.e < 1:
        raise InputError("pattern needs at least one edge")
    degs = f.degrees()
    if 0 in degs:
        raise InputError("pattern has an isolated vertex")
    return reduce(gcd, degs, 0)


# -- chromatic number (DSATUR branch and bound) ----------------------------


def _greedy_clique(g: Graph) -> list[int]:
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    clique = []
    for v in order:
        if all(v in g.adj[u] for u in clique):
            clique.append(v)
    return clique


def colourable_with(g: Graph, k: int) -> bool:
    """Decide k-colourability by DSATUR-ordered backtracking.  Colours above
    the current maximum are interchangeable, so only one fresh colour is
    branched on at each vertex."""
    n = g.n
    adj = g.adj
    colour = [0] * n

    def rec(coloured: int, used: int) -> bool:
        if coloured == n:
            return True
        best_v, best_key = -1, None
        for v in range(n):
            if colour[v]:
                continue
            sat = len({colour[u] for u in adj[v] if colour[u]})
            key = (-sat, -len(adj[v]), v)
            if best_key is None or key < best_key:
                best_v, best_key = v, key
        v = best_v
        taken = {colour[u] for u in adj[v] if colour[u]}
        for c in range(1, min(used + 1, k) + 1):
            if c in taken:
                continue
            colour[v] = c
            if rec(coloured + 1, max(used, c)):
                return True
            colour[v] = 0
        return False

    return rec(0, 0)


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number: clique lower bound, then DSATUR-ordered
    branch and bound upward from it."""
    if g.n == 0:
        return 0
    if g.e == 0:
        return 1
    if g.is_bipartite():
        return 2
    lower = max(len(_greedy_clique(g)), 3)
    k = lower
    while not colourable_with(g, k):
        k += 1
    return k


def proper_colourings(g: Graph, s: int, fix: Optional[dict] = None,
                      guard: int = DEFAULT_COLOURING_GUARD) -> Iterator[tuple[int, ...]]:
    """All proper colourings with colour set 1..s (labelled, no symmetry
    reduction), optionally with some vertices pre-coloured."""
    if g.n > guard:
        raise SizeGuardError(
            f"colouring enumeration guard: {g.n} vertices > {guard}")
    fix = fix or {}
    colour = [0] * g.n
    for v, c in fix.items():
        colour[v] = c
    order = sorted((v for v in range(g.n) if v not in fix),
                   key=lambda v: -g.degree(v))
    adj = g.adj

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == len(order):
            yield tuple(colour)
            return
        v = order[i]
        taken = {colour[u] for u in adj[v] if colour[u] != 0}
        for c in range(1, s + 1):
            if c in taken:
                continue
            colour[v] = c
            yield from rec(i + 1)
            colour[v] = 0

    for u, v in g.edges:
        if u in fix and v in fix and fix[u] == fix[v]:
            return
    yield from rec(0)


# -- bipartite invariants ---------------------------------------------------


@dataclass
class BipartiteInvariants:
    degree_gcd: int
    tau: int
    tau_tilde: int
    bridge_edges: list
    component_edge_counts: list


def _support_masks(f: Graph):
    """Per-vertex neighbourhood bitmasks and the edge list, for subset scans."""
    nbr = [0] * f.n
    for u, v in f.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    return nbr, sorted(f.edges)


def is_c4_supporting(f: Graph, subset_mask: int, nbr=None, edge_list=None) -> bool:
    """True iff some a,b in X (distinct), c,d outside X (distinct) have
    ac, bd, cd all edges of f."""
    if nbr is None:
        nbr, edge_list = _support_masks(f)
    x = subset_mask
    for c, d in edge_list:
        if (x >> c) & 1 or (x >> d) & 1:
            continue
        a_set = nbr[c] & x
        b_set = nbr[d] & x
        if not a_set or not b_set:
            continue
        if a_set != b_set or a_set & (a_set - 1):
            return True
    return False


def _edges_inside_count(edge_list, mask: int) -> int:
    return sum(1 for u, v in edge_list
               if (mask >> u) & 1 and (mask >> v) & 1)


def _connected_mask(nbr, mask: int) -> bool:
    if mask == 0:
        return True
    start_bit = mask & -mask
    seen = start_bit
    stack = [start_bit.bit_length() - 1]
    while stack:
        v = stack.pop()
        avail = nbr[v] & mask & ~seen
        while avail:
            b = avail & -avail
            seen |= b
            stack.append(b.bit_length() - 1)
            avail &= ~b
    return seen == mask


def tau_of(f: Graph, connected_only: bool = False,
           guard: int = DEFAULT_SUBSET_GUARD) -> int:
    """gcd of e(F[X]) over X that are not C4-supporting (optionally only over
    X inducing connected subgraphs).  Plain subset scan with an early gcd==1
    cutoff; the cutoff is exact since gcd can only shrink towards 1."""
    if f.n > guard:
        raise SizeGuardError(f"subset enumeration guard: {f.n} > {guard}")
    nbr, edge_list = _support_masks(f)
    g = 0
    for mask in range(1, 1 << f.n):
        cnt = _edges_inside_count(edge_list, mask)
        if cnt == 0:
            continue
        if connected_only and not _connected_mask(nbr, mask):
            continue
        if is_c4_supporting(f, mask, nbr, edge_list):
            continue
        g = gcd(g, cnt)
        if g == 1:
            return 1
    if g == 0:
        raise DomainError("no non-supporting subset with edges; e(F) too small")
    return g


def tau_tilde_of(f: Graph) -> int:
    counts = [len(f.induced_edges(comp)) for comp in f.components()]
    counts = [c for c in counts if c > 0]
    if not counts:
        raise InputError("pattern has no edges")
    return reduce(gcd, counts, 0)


def bipartite_invariants(f: Graph, guard: int = DEFAULT_SUBSET_GUARD) -> BipartiteInvariants:
    if f.e < 2:
        raise InputError("need at least two edges")
    if 0 in f.degrees():
        raise InputError("pattern has an isolated vertex")
    if not f.is_bipartite():
        cyc = f.odd_cycle()
        raise DomainError(f"pattern is not bipartite: odd cycle {cyc}")
    comp_counts = [len(f.induced_edges(c)) for c in f.components()]
    return BipartiteInvariants(
        degree_gcd=degree_gcd(f),
        tau=tau_of(f, guard=guard),
        tau_tilde=reduce(gcd, comp_counts, 0),
        bridge_edges=f.bridges(),
        component_edge_counts=comp_counts,
    )


# -- colouring invariants ----------------------------------------------------


@dataclass
class ColouringInvariants:
    chi: int
    chi_cr: Fraction
    sigma: int                       # min size of colour class 1 over Col(F)
    sigma_per_vertex: dict           # v -> sigma(F, v), over Col(F, v)
    chi_vx: Fraction
    theta: Optional[int]             # None marks "undefined" (chi == 2)
    witness_colourings: dict = field(default_factory=dict)


def colouring_invariants(f: Graph,
                         guard: int = DEFAULT_COLOURING_GUARD) -> ColouringInvariants:
    """chi, the critical chromatic value, per-vertex star-colour minima, the
    vertex-cover chromatic value and the class-difference gcd."""
    if f.e < 1:
        raise InputError("need at least one edge")
    chi = chromatic_number(f)
    witnesses: dict = {}

    sigma = None
    sigma_v = {}
    theta_g = 0
    theta_witnessed_zero = False
    adj = f.adj
    for c in proper_colourings(f, chi, guard=guard):
        class1 = sum(1 for x in c if x == 1)
        if sigma is None or class1 < sigma:
            sigma = class1
            witnesses["sigma"] = c
        for v in range(f.n):
            if c[v] != chi:
                continue
            n1 = sum(1 for u in adj[v] if c[u] == 1)
            if v not in sigma_v or n1 < sigma_v[v]:
                sigma_v[v] = n1
                witnesses[("sigma_v", v)] = c
            if chi >= 3:
                n2 = sum(1 for u in adj[v] if c[u] == 2)
                d = n1 - n2
                if d != 0:
                    theta_g = gcd(theta_g, abs(d))
                    witnesses.setdefault("theta", c)
                else:
                    theta_witnessed_zero = True
                    witnesses.setdefault("theta", c)

    if sigma is None:
        raise DomainError("no proper colouring found (internal defect)")
    chi_cr = (Fraction(0) if chi <= 1
              else Fraction((chi - 1) * f.n, f.n - sigma))

    if chi >= 3:
        # every vertex appears in the last class of some colouring
        chi_vx = (chi - 2) * min(
            Fraction(f.degree(v), f.degree(v) - sigma_v[v]) for v in sigma_v)
        theta = theta_g if theta_g != 0 else 2  # gcd of the all-zero set is 2
        assert theta_g != 0 or theta_witnessed_zero
    else:
        chi_vx = Fraction(0)
        theta = THETA_UNDEFINED

    return ColouringInvariants(
        chi=chi, chi_cr=chi_cr, sigma=sigma, sigma_per_vertex=sigma_v,
        chi_vx=chi_vx, theta=theta, witness_colourings=witnesses)


def theta_of(f: Graph, guard: int = DEFAULT_COLOURING_GUARD) -> int:
    inv = colouring_invariants(f, guard=guard)
    if inv.theta is THETA_UNDEFINED:
        raise DomainError("theta is undefined for bipartite patterns")
    return inv.theta


# -- colour-neighbourhood tuples ---------------------------------------------


@dataclass(frozen=True)
class CNTuple:
    s: int
    degrees: tuple
    witness_colouring: tuple
    witness_vertex: int


def cn_tuples(f: Graph, s: int, guard: int = DEFAULT_COLOURING_GUARD) -> set:
    """All (s-1)-tuples of per-class neighbour counts at a vertex coloured s,
    over proper s-colourings; one witness each."""
    chi = chromatic_number(f)
    if s < chi:
        raise DomainError(f"s={s} below chromatic number {chi}")
    found: dict = {}
    adj = f.adj
    for c in proper_colourings(f, s, guard=guard):
        for v in range(f.n):
            if c[v] != s:
                continue
            t = tuple(sum(1 for u in adj[v] if c[u] == i)
                      for i in range(1, s))
            if t not in found:
                found[t] = CNTuple(s, t, c, v)
    return set(found.values())


# -- rooted degeneracy --------------------------------------------------------


def rooted_degeneracy(k: Graph, roots) -> tuple[int, list[int]]:
    """Smallest d admitting an ordering of V(K)\\X where each vertex sees at
    most d earlier-or-root vertices; greedy min-degree removal is exact.

    Returns (d, ordering witness)."""
    roots = set(roots)
    for r in roots:
        if not (0 <= r < k.n):
            raise InputError(f"root {r} out of range")
    remaining = set(range(k.n)) - roots
    order_rev = []
    d = 0
    deg = {v: sum(1 for u in k.adj[v] if u in remaining or u in roots)
           for v in remaining}
    while remaining:
        v = min(remaining, key=lambda v: (deg[v], v))
        d = max(d, deg[v])
        order_rev.append(v)
        remaining.discard(v)
        for u in k.adj[v]:
            if u in remaining:
                deg[u] -= 1
    return d, order_rev[::-1]
