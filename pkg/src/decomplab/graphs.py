"""Core graph values: simple undirected graphs with dense integer vertex ids.

Everything downstream (solvers, gadget builders, extremal generators) works
with these types.  Graphs are immutable after construction; "mutations" return
new values, so sharing across threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import InputError


def norm_edge(u: int, v: int) -> tuple[int, int]:
    """Normalise an edge to (min, max) order."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Finite simple undirected graph on vertices 0..n-1.

    Vertex identity is a dense integer index; labels are decorative.
    Invariants: no loops, no duplicate edges, endpoints < vertex_count.
    """

    __slots__ = ("n", "edges", "labels", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise InputError("vertex_count must be nonnegative")
        norm = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at vertex {u} is not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for {n} vertices")
            norm.add(norm_edge(u, v))
        self.n = n
        self.edges = frozenset(norm)
        self.labels = tuple(labels) if labels is not None else None
        self._adj = None
        self._hash = None

    # -- basic accessors ---------------------------------------------------

    def __len__(self) -> int:
        return self.n

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def adj(self) -> tuple[frozenset, ...]:
        if self._adj is None:
            nbr = [set() for _ in range(self.n)]
            for u, v in self.edges:
                nbr[u].add(v)
                nbr[v].add(u)
            self._adj = tuple(frozenset(s) for s in nbr)
        return self._adj

    def neighbours(self, v: int) -> frozenset:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(self.adj[v]) for v in range(self.n)]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def max_degree(self) -> int:
        return max(self.degrees()) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def common_neighbours(self, u: int, v: int) -> frozenset:
        return self.adj[u] & self.adj[v]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self.edges == other.edges)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.e})"

    # -- derived values ----------------------------------------------------

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, set(self.edges) | {norm_edge(u, v) for u, v in extra},
                     self.labels)

    def without_edges(self, gone: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, set(self.edges) - {norm_edge(u, v) for u, v in gone},
                     self.labels)

    def minus(self, other: "Graph") -> "Graph":
        """Edge difference on the same vertex set (G - H in edge terms)."""
        return self.without_edges(other.edges)

    def union_edges(self, other: "Graph") -> "Graph":
        if other.n > self.n:
            raise InputError("union requires other graph to fit in this vertex set")
        return self.with_edges(other.edges)

    def induced(self, vs: Iterable[int]) -> "Graph":
        """Induced subgraph; vertices are relabelled 0..k-1 in sorted order."""
        order = sorted(set(vs))
        pos = {v: i for i, v in enumerate(order)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        labels = [self.labels[v] for v in order] if self.labels else None
        return Graph(len(order), es, labels)

    def induced_edges(self, vs: Iterable[int]) -> frozenset:
        """Edges with both endpoints inside vs, keeping original ids."""
        s = set(vs)
        return frozenset((u, v) for u, v in self.edges if u in s and v in s)

    def edges_between(self, xs: Iterable[int], ys: Iterable[int]) -> frozenset:
        a, b = set(xs), set(ys)
        return frozenset(e for e in self.edges
                         if (e[0] in a and e[1] in b) or (e[0] in b and e[1] in a))

    def without_vertices(self, vs: Iterable[int]) -> "Graph":
        """G - X, relabelled to a dense range."""
        keep = [v for v in range(self.n) if v not in set(vs)]
        return self.induced(keep)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Apply vertex map v -> perm[v] (a bijection on 0..n-1)."""
        if sorted(perm) != list(range(self.n)):
            raise InputError("relabel requires a permutation of all vertices")
        es = [(perm[u], perm[v]) for u, v in self.edges]
        labels = None
        if self.labels:
            inv = [0] * self.n
            for v, p in enumerate(perm):
                inv[p] = v
            labels = [self.labels[inv[i]] for i in range(self.n)]
        return Graph(self.n, es, labels)

    def complement(self) -> "Graph":
        es = [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
              if (u, v) not in self.edges]
        return Graph(self.n, es)

    # -- structure queries ---------------------------------------------------

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp, stack = [], [s]
            seen[s] = True
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def bipartition(self) -> Optional[tuple[set, set]]:
        """Return (A, B) with every edge between A and B, or None if an odd
        cycle exists.  Per-component sides are chosen by lowest vertex id."""
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] != -1:
                continue
            colour[s] = 0
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if colour[y] == -1:
                        colour[y] = 1 - colour[x]
                        stack.append(y)
                    elif colour[y] == colour[x]:
                        return None
        return ({v for v in range(self.n) if colour[v] == 0},
                {v for v in range(self.n) if colour[v] == 1})

    def odd_cycle(self) -> Optional[list[int]]:
        """Return one odd cycle as a vertex list, or None if bipartite."""
        colour = [-1] * self.n
        parent = [-1] * self.n
        for s in range(self.n):
            if colour[s] != -1:
                continue
            colour[s] = 0
            queue = [s]
            while queue:
                x = queue.pop(0)
                for y in self.adj[x]:
                    if colour[y] == -1:
                        colour[y] = 1 - colour[x]
                        parent[y] = x
                        queue.append(y)
                    elif colour[y] == colour[x]:
                        px = [x]
                        while px[-1] != -1:
                            px.append(parent[px[-1]])
                        px.pop()
                        py = [y]
                        while py[-1] != -1:
                            py.append(parent[py[-1]])
                        py.pop()
                        common = (set(px) & set(py))
                        meet = next(v for v in px if v in common)
                        cyc = px[:px.index(meet) + 1] + py[:py.index(meet)][::-1]
                        return cyc
        return None

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def bridges(self) -> list[tuple[int, int]]:
        """Cut edges, via the standard low-link DFS."""
        disc = [-1] * self.n
        low = [0] * self.n
        out = []
        timer = 0
        for root in range(self.n):
            if disc[root] != -1:
                continue
            stack = [(root, -1, iter(self.adj[root]))]
            disc[root] = low[root] = timer
            timer += 1
            while stack:
                x, parent, it = stack[-1]
                advanced = False
                for y in it:
                    if disc[y] == -1:
                        disc[y] = low[y] = timer
                        timer += 1
                        stack.append((y, x, iter(self.adj[y])))
                        advanced = True
                        break
                    elif y != parent:
                        low[x] = min(low[x], disc[y])
                    else:
                        parent = -2  # skip the tree edge back once only
                        stack[-1] = (x, -2, it)
                if not advanced:
                    stack.pop()
                    if stack:
                        px = stack[-1][0]
                        low[px] = min(low[px], low[x])
                        if low[x] > disc[px]:
                            out.append(norm_edge(px, x))
        return sorted(out)

    def has_bridge(self) -> bool:
        return bool(self.bridges())

    def edge_in_cycle(self, u: int, v: int) -> bool:
        return norm_edge(u, v) not in set(self.bridges())


def degree_gcd_of(g: Graph) -> int:
    """gcd of all vertex degrees (callers must rule out isolated vertices)."""
    return reduce(gcd, g.degrees(), 0)


# -- standard constructions ----------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(edge_count: int) -> Graph:
    """Path with `edge_count` edges (edge_count+1 vertices)."""
    return Graph(edge_count + 1, [(i, i + 1) for i in range(edge_count)])


def complete_bipartite(s: int, t: int) -> Graph:
    return Graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    offs = [0]
    for s in sizes:
        offs.append(offs[-1] + s)
    es = []
    for a in range(len(sizes)):
        for b in range(a + 1, len(sizes)):
            es.extend((u, v)
                      for u in range(offs[a], offs[a + 1])
                      for v in range(offs[b], offs[b + 1]))
    return Graph(offs[-1], es)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; block i is shifted by the sizes of blocks before it."""
    n = 0
    es = []
    for g in graphs:
        es.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return Graph(n, es)


def union_blocks(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Disjoint union plus the vertex offset of each block."""
    offs, n, es = [], 0, []
    for g in graphs:
        offs.append(n)
        es.extend((u + n, v + n) for u, v in g.edges)
        n += g.n
    return Graph(n, es), offs


# -- maps and copies -------------------------------------------------------


@dataclass(frozen=True)
class GraphMap:
    """A vertex map between two graphs; may or may not be a homomorphism."""

    source: Graph
    target: Graph
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source.n:
            raise InputError("image must assign every source vertex")
        for v in self.image:
            if not (0 <= v < self.target.n):
                raise InputError(f"image vertex {v} out of range")

    def edge_image(self) -> frozenset:
        return frozenset(norm_edge(self.image[u], self.image[v])
                         for u, v in self.source.edges
                         if self.image[u] != self.image[v])

    def is_homomorphism(self) -> bool:
        im = self.image
        return all(im[u] != im[v] and norm_edge(im[u], im[v]) in self.target.edges
                   for u, v in self.source.edges)

    def is_edge_bijective(self) -> bool:
        """Homomorphism inducing a bijection on edges, onto the whole target."""
        if not self.is_homomorphism():
            return False
        seen = set()
        for u, v in self.source.edges:
            e = norm_edge(self.image[u], self.image[v])
            if e in seen:
                return False
            seen.add(e)
        return len(seen) == self.target.e == self.source.e

    def is_isomorphism(self) -> bool:
        if self.source.n != self.target.n or self.source.e != self.target.e:
            return False
        if len(set(self.image)) != self.source.n:
            return False
        im = self.image
        return all(norm_edge(im[u], im[v]) in self.target.edges
                   for u, v in self.source.edges)

    def compose(self, then: "GraphMap") -> "GraphMap":
        if then.source is not self.target and then.source != self.target:
            raise InputError("maps do not compose")
        return GraphMap(self.source, then.target,
                        tuple(then.image[x] for x in self.image))


@dataclass(frozen=True)
class EmbeddedCopy:
    """An injective homomorphic image of a pattern inside a host graph."""

    pattern: Graph
    host: Graph
    image: tuple[int, ...]

    def edge_image(self) -> frozenset:
        im = self.image
        return frozenset(norm_edge(im[u], im[v]) for u, v in self.pattern.edges)

    def vertex_set(self) -> frozenset:
        return frozenset(self.image)

    def is_valid(self) -> bool:
        if len(self.image) != self.pattern.n:
            return False
        if any(not (0 <= x < self.host.n) for x in self.image):
            return False
        if len(set(self.image)) != self.pattern.n:
            return False
        im = self.image
        return all(norm_edge(im[u], im[v]) in self.host.edges
                   for u, v in self.pattern.edges)

    def retarget(self, new_host: Graph, vmap=None) -> "EmbeddedCopy":
        """Reinterpret inside a different host, optionally via a vertex map."""
        if vmap is None:
            img = self.image
        else:
            img = tuple(vmap[x] for x in self.image)
        return EmbeddedCopy(self.pattern, new_host, img)


@dataclass
class Decomposition:
    """A certificate: copies of one pattern whose edges partition target_edges."""

    host: Graph
    target_edges: frozenset
    copies: list = field(default_factory=list)

    def __post_init__(self):
        self.target_edges = frozenset(norm_edge(u, v) for u, v in self.target_edges)

    @property
    def pattern(self) -> Optional[Graph]:
        return self.copies[0].pattern if self.copies else None

    def covered_edges(self) -> set:
        out = set()
        for c in self.copies:
            out |= c.edge_image()
        return out
