"""Vertex allocation and gluing for gadget composition.

Attaching a gadget identifies its roots with chosen existing vertices and
allocates every other vertex fresh.  Edge multi-occurrence across glued
pieces is forbidden and checked at insertion time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError
from ..graphs import Decomposition, EmbeddedCopy, Graph, norm_edge
from .types import Compression


class GadgetSpace:
    """A growing vertex universe accumulating edge-disjoint gadget pieces."""

    def __init__(self):
        self.n = 0
        self.edges: set = set()
        self.copies: dict = {}        # tag -> list of (pattern, image tuple)

    def fresh(self, k: int) -> list[int]:
        out = list(range(self.n, self.n + k))
        self.n += k
        return out

    def fresh_one(self) -> int:
        return self.fresh(1)[0]

    def add_edge(self, u: int, v: int, merge: bool = False):
        if u == v:
            raise InputError("gluing created a loop")
        e = norm_edge(u, v)
        if e in self.edges and not merge:
            raise InputError(f"edge {e} glued twice")
        self.edges.add(e)

    def add_graph(self, g: Graph, vmap, merge: bool = False):
        for u, v in g.edges:
            self.add_edge(vmap[u], vmap[v], merge=merge)

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)

    def record(self, tag, pattern: Graph, image) -> None:
        self.copies.setdefault(tag, []).append((pattern, tuple(image)))

    def finalize(self, tag, extra_edges=()) -> Decomposition:
        """Build the decomposition recorded under `tag`, hosted on the current
        universe plus `extra_edges`."""
        host = Graph(self.n, self.edges | {norm_edge(*e) for e in extra_edges})
        copies = [EmbeddedCopy(p, host, img) for p, img in self.copies.get(tag, [])]
        target = set()
        for c in copies:
            target |= c.edge_image()
        return Decomposition(host, frozenset(target), copies)


@dataclass
class GluedSwitcher:
    """A switcher instance placed in a space: vmap sends local ids to the
    space; e1/e2 are the mapped root edge sets."""

    vmap: tuple
    e1: frozenset
    e2: frozenset
    cert1_copies: list            # list of (pattern, image in space)
    cert2_copies: list


def glue_switcher(space: GadgetSpace, sw, root_images) -> GluedSwitcher:
    """Place a CertifiedSwitcher into the space with its roots identified
    with `root_images` (ordered as the switcher's roots); all internal
    vertices fresh.  The switcher's own edges join the space; the switched
    edge sets do not (the caller decides which side materialises)."""
    m = sw.model
    if len(root_images) != len(m.roots):
        raise InputError("root image count mismatch")
    if len(set(root_images)) != len(root_images):
        raise InputError("root images must be distinct")
    vmap = [-1] * m.graph.n
    for r, t in zip(m.roots, root_images):
        vmap[r] = t
    for v in range(m.graph.n):
        if vmap[v] == -1:
            vmap[v] = space.fresh_one()
    space.add_graph(m.graph, vmap)
    remap_e = lambda es: frozenset(norm_edge(vmap[u], vmap[v]) for u, v in es)
    return GluedSwitcher(
        tuple(vmap),
        remap_e(sw.e1),
        remap_e(sw.e2),
        [(c.pattern, tuple(vmap[x] for x in c.image)) for c in sw.cert1.copies],
        [(c.pattern, tuple(vmap[x] for x in c.image)) for c in sw.cert2.copies],
    )


# -- compression attachment ---------------------------------------------------


def attach_compressions(base_model_n: int, base: Compression,
                        attachments: list) -> Compression:
    """Combine a base compression with glued sub-model compressions.

    Each attachment is (sub_comp, beta, sub_vmap) where beta maps the
    attachment's J-vertices into base.k as a homomorphism agreeing with the
    base psi on shared roots, and sub_vmap maps the attachment's model
    vertices into the combined model's universe (of size >= base_model_n).

    Returns the compression of the combined model (on `base_model_n` plus the
    attachments' fresh vertices): K grows by fresh copies of each
    attachment's K minus its J part; psi extends accordingly.  The claimed
    width is the maximum over all parts.
    """
    k_edges = set(base.k.edges)
    k_n = base.k.n
    psi = list(base.psi)
    d = base.d

    for sub, beta, sub_vmap in attachments:
        sub_k = sub.k
        jn = sub.j_size
        fresh = {}
        for v in range(jn, sub_k.n):
            fresh[v] = k_n
            k_n += 1
        for u, v in sub_k.edges:
            if u < jn and v < jn:
                continue  # J-internal edges exist in base.k via beta's image
            uu = beta[u] if u < jn else fresh[u]
            vv = beta[v] if v < jn else fresh[v]
            if uu == vv:
                raise InputError("beta merged adjacent K vertices")
            k_edges.add(norm_edge(uu, vv))
        for local_v, pk in enumerate(sub.psi):
            gv = sub_vmap[local_v]
            img = beta[pk] if pk < jn else fresh[pk]
            while len(psi) <= gv:
                psi.append(-1)
            if psi[gv] == -1:
                psi[gv] = img
            elif psi[gv] != img:
                raise InputError(
                    f"psi conflict at shared vertex {gv}: "
                    f"{psi[gv]} vs {img}")
        d = max(d, sub.d)

    if len(psi) < base_model_n or any(p == -1 for p in psi):
        raise InputError("psi left a model vertex unmapped")
    return Compression(base.j_size, dict(base.f), Graph(k_n, k_edges),
                       tuple(psi), d)
