"""Transformers: gadgets T making both H+T and H'+T decomposable, for H
regular of the pattern's degree gcd and H' an edge-bijective image of H.

Per vertex x of H, a twin-centre star switcher moves a bundle of middle
edges between x and its image; per edge of H, a six-cycle switcher walks the
edge across.  Both certificates fall out of the two ways of switching.
"""

from __future__ import annotations

from functools import reduce
from math import gcd

from ..errors import DomainError, InputError
from ..graphs import Decomposition, EmbeddedCopy, Graph, GraphMap, norm_edge
from ..invariants import tau_of
from .compose import GadgetSpace, glue_switcher
from .switchers import build_c6_switcher_general, build_k2r_switcher
from .types import CertifiedTransformer


def _pick_c6_switcher(f: Graph):
    if f.is_bipartite():
        try:
            if tau_of(f) == 1:
                from .bipartite_c6 import build_c6_switcher_bipartite
                return build_c6_switcher_bipartite(f)
        except Exception:
            pass
    return build_c6_switcher_general(f)


def build_transformer(f: Graph, h: Graph, phi: GraphMap,
                      c6_switcher=None, star_switcher=None) -> CertifiedTransformer:
    """Gadget transforming the leftover `h` into its edge-bijective image.

    `phi` maps h onto h'; the two graphs land on disjoint vertex blocks of
    the gadget universe and stay independent inside it.  Prebuilt switchers
    can be passed in to share work across several transformers.
    """
    r = reduce(gcd, [d for d in f.degrees() if d], 0)
    if f.e < 2:
        raise InputError("pattern needs at least two edges")
    if any(d != r for d in h.degrees()):
        raise DomainError(f"leftover must be {r}-regular")
    if phi.source != h:
        raise InputError("phi must map the given leftover")
    if not phi.is_edge_bijective():
        raise DomainError("phi must be an edge-bijective homomorphism")
    hp = phi.target

    space = GadgetSpace()
    h_ids = space.fresh(h.n)
    hp_ids = space.fresh(hp.n)
    h_edges = frozenset(norm_edge(h_ids[a], h_ids[b]) for a, b in h.edges)
    hp_edges = frozenset(norm_edge(hp_ids[a], hp_ids[b]) for a, b in hp.edges)

    # middle vertices: z[x][y] sits between x and phi(x), tagged by the
    # neighbour y it will be walked towards
    z = {x: {y: space.fresh_one() for y in sorted(h.adj[x])}
         for x in range(h.n)}

    star = star_switcher or build_k2r_switcher(f, r)
    c6 = c6_switcher or _pick_c6_switcher(f)

    glued_stars = []
    for x in range(h.n):
        leaves = tuple(z[x][y] for y in sorted(h.adj[x]))
        g = glue_switcher(space, star,
                          leaves + (h_ids[x], hp_ids[phi.image[x]]))
        glued_stars.append(g)
        for lv in leaves:
            space.add_edge(h_ids[x], lv)                 # towards h
            space.add_edge(hp_ids[phi.image[x]], lv)     # towards h'

    glued_cycles = []
    for a, b in sorted(h.edges):
        roots = (h_ids[a], h_ids[b], z[b][a],
                 hp_ids[phi.image[b]], hp_ids[phi.image[a]], z[a][b])
        glued_cycles.append(glue_switcher(space, c6, roots))

    t = space.graph()
    host_h = Graph(space.n, space.edges | h_edges)
    host_hp = Graph(space.n, space.edges | hp_edges)

    copies_h, copies_hp = [], []
    for g in glued_cycles:
        # first switching covers {xy, x'z_xy, y'z_yx}; the second covers
        # {x'y', xz_xy, yz_yx}
        copies_h.extend(EmbeddedCopy(p, host_h, img)
                        for p, img in g.cert1_copies)
        copies_hp.extend(EmbeddedCopy(p, host_hp, img)
                         for p, img in g.cert2_copies)
    for g in glued_stars:
        copies_h.extend(EmbeddedCopy(p, host_h, img)
                        for p, img in g.cert1_copies)
        copies_hp.extend(EmbeddedCopy(p, host_hp, img)
                         for p, img in g.cert2_copies)

    cert_h = Decomposition(host_h, host_h.edges, copies_h)
    cert_hp = Decomposition(host_hp, host_hp.edges, copies_hp)
    return CertifiedTransformer(t, h_edges, hp_edges, cert_h, cert_hp)
