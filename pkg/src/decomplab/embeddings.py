"""Labelled subgraph embedding search (injective homomorphisms).

Branching is most-constrained-first: the next pattern vertex to place is the
one with the most already-embedded neighbours (ties by smaller candidate
count, then by index).  Embeddings are labelled: automorphic images count as
distinct.  `dedup_by_edges` collapses them to one representative per image
edge set, which is what the solvers consume.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .errors import InputError
from .graphs import EmbeddedCopy, Graph, GraphMap, norm_edge


def _search(pattern: Graph, adj, n_host: int, pins: dict,
            allowed=None, host_order=None) -> Iterator[tuple[int, ...]]:
    """Yield images (tuples) of injective homomorphisms pattern -> host.

    `adj` is an indexable of neighbour-sets for the host; `allowed` optionally
    restricts which host vertices may be used for non-pinned vertices;
    `host_order` fixes the deterministic candidate iteration order.
    """
    pn = pattern.n
    if pn == 0:
        yield ()
        return
    image = [-1] * pn
    used = set()
    for p, h in pins.items():
        if not (0 <= p < pn):
            raise InputError(f"pinned pattern vertex {p} out of range")
        if not (0 <= h < n_host):
            raise InputError(f"pinned host vertex {h} out of range")
        if h in used:
            raise InputError("pins must map distinct vertices to distinct images")
        image[p] = h
        used.add(h)
    # pins must already respect pattern edges among themselves
    for u, v in pattern.edges:
        if image[u] != -1 and image[v] != -1 and image[v] not in adj[image[u]]:
            return

    placed = [p for p in range(pn) if image[p] != -1]
    remaining = [p for p in range(pn) if image[p] == -1]
    if not remaining:
        yield tuple(image)
        return

    order = list(range(n_host)) if host_order is None else list(host_order)

    def candidates(p) -> list[int]:
        nbr_imgs = [image[q] for q in pattern.adj[p] if image[q] != -1]
        if nbr_imgs:
            cand = set(adj[nbr_imgs[0]])
            for x in nbr_imgs[1:]:
                cand &= adj[x]
        else:
            cand = None  # unconstrained
        out = []
        for h in order:
            if h in used:
                continue
            if cand is not None and h not in cand:
                continue
            if allowed is not None and h not in allowed:
                continue
            out.append(h)
        return out

    def pick() -> int:
        best, best_key = None, None
        for p in remaining:
            emb_nbrs = sum(1 for q in pattern.adj[p] if image[q] != -1)
            key = (-emb_nbrs, p)
            if best_key is None or key < best_key:
                best, best_key = p, key
        return best

    stack = []
    p = pick()
    stack.append((p, candidates(p), 0))
    remaining.remove(p)
    while stack:
        p, cand, idx = stack[-1]
        if idx >= len(cand):
            stack.pop()
            remaining.append(p)
            if stack:
                q, qc, qi = stack[-1]
                used.discard(image[q])
                image[q] = -1
                stack[-1] = (q, qc, qi + 1)
            continue
        h = cand[idx]
        image[p] = h
        used.add(h)
        if not remaining:
            yield tuple(image)
            used.discard(h)
            image[p] = -1
            stack[-1] = (p, cand, idx + 1)
            continue
        q = pick()
        remaining.remove(q)
        stack.append((q, candidates(q), 0))


def enumerate_embeddings(pattern: Graph, host: Graph,
                         pins: Optional[dict] = None,
                         limit: Optional[int] = None,
                         allowed=None,
                         host_order=None,
                         dedup_by_edges: bool = False) -> list[EmbeddedCopy]:
    """All labelled embeddings of `pattern` into `host` extending `pins`.

    Complete and deterministically ordered when `limit` is None.  With
    `dedup_by_edges`, one representative is kept per image edge set (that is,
    per automorphism orbit).
    """
    pins = dict(pins) if pins else {}
    out = []
    seen = set()
    for img in _search(pattern, host.adj, host.n, pins,
                       allowed=allowed, host_order=host_order):
        if dedup_by_edges:
            key = frozenset(norm_edge(img[u], img[v]) for u, v in pattern.edges)
            if key in seen:
                continue
            seen.add(key)
        out.append(EmbeddedCopy(pattern, host, img))
        if limit is not None and len(out) >= limit:
            break
    return out


def find_embedding(pattern: Graph, adj, n_host: int, pins: dict,
                   allowed=None, host_order=None) -> Optional[tuple[int, ...]]:
    """First embedding image over a raw adjacency view, or None."""
    for img in _search(pattern, adj, n_host, pins, allowed=allowed,
                       host_order=host_order):
        return img
    return None


def check_map(gmap: GraphMap, mode: str) -> bool:
    """Check a GraphMap property: homomorphism, edge_bijective or isomorphism.

    Malformed maps (image out of range) are rejected at GraphMap construction,
    not reported as False here.
    """
    if mode == "homomorphism":
        return gmap.is_homomorphism()
    if mode == "edge_bijective":
        return gmap.is_edge_bijective()
    if mode == "isomorphism":
        return gmap.is_isomorphism()
    raise InputError(f"unknown check_map mode: {mode!r}")
