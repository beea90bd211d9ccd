"""Absorbers: gadgets A with A and A+H both decomposable.

The chain construction attaches pattern copies to the leftover, expands it
into a subdivided/attached pair of shapes sharing a common regular preimage,
and concatenates four transformers so that either everything or everything-
plus-the-leftover falls apart into pattern copies.

The partite neighbourhood absorber targets star covers instead: a coloured
gadget able to swallow a prescribed bundle of extra edges at one vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

from ..divisibility import check_divisibility
from ..errors import DomainError, InputError, ResourceError, SizeGuardError
from ..graphs import (Decomposition, EmbeddedCopy, Graph, GraphMap,
                      disjoint_union, norm_edge)
from ..invariants import (THETA_UNDEFINED, chromatic_number,
                          colouring_invariants, proper_colourings)
from .compose import GadgetSpace
from .transformers import build_transformer, _pick_c6_switcher
from .switchers import build_k2r_switcher
from .types import CertifiedAbsorber


# -- expanded / attached / subdivided shapes -----------------------------------


def _orient(h: Graph) -> list[tuple[int, int]]:
    """Orientation used throughout: each edge points low to high."""
    return sorted(h.edges)


@dataclass
class _Expanded:
    """The expansion of a leftover: one pattern copy per edge with its
    chosen edge cut open and wired back onto the leftover's endpoints."""

    graph: Graph
    h_n: int                    # leftover vertices occupy ids 0..h_n-1
    blocks: list                # per edge: (x, y, base offset of its copy)
    uv: tuple                   # the pattern edge that gets cut

    def to_attached(self) -> tuple[Graph, GraphMap]:
        """Identify each copy's v-end with the edge's tail: the attached
        shape (leftover plus pendant copies)."""
        u, v = self.uv
        f_n = self.pattern.n
        # attached graph vertex ids: leftover keeps 0..h_n-1; copy i keeps
        # its block but drops v (merged into x)
        remap = {}
        nxt = self.h_n
        for x, y, off in self.blocks:
            for t in range(f_n):
                if t == v:
                    remap[off + t] = x
                else:
                    remap[off + t] = nxt
                    nxt += 1
        img = [0] * self.graph.n
        for t in range(self.h_n):
            img[t] = t
        for old, new in remap.items():
            img[old] = new
        edges = set()
        for a, b in self.graph.edges:
            edges.add(norm_edge(img[a], img[b]))
        # plus the leftover's own edges (x-y materialises from y's v-wire)
        att = Graph(nxt, edges)
        return att, GraphMap(self.graph, att, tuple(img))

    def to_loop(self) -> tuple[Graph, GraphMap]:
        """Identify all leftover vertices into one hub: the subdivided
        bouquet of pattern copies."""
        f_n = self.pattern.n
        remap = {}
        nxt = 1
        for x, y, off in self.blocks:
            for t in range(f_n):
                remap[off + t] = nxt
                nxt += 1
        img = [0] * self.graph.n
        for t in range(self.h_n):
            img[t] = 0
        for old, new in remap.items():
            img[old] = new
        edges = {norm_edge(img[a], img[b]) for a, b in self.graph.edges}
        loop = Graph(nxt, edges)
        return loop, GraphMap(self.graph, loop, tuple(img))

    pattern: Graph = None


def _expand(f: Graph, h: Graph, uv: tuple) -> _Expanded:
    """One pattern copy per oriented leftover edge, with the chosen pattern
    edge removed and replaced by wires to the edge's two endpoints."""
    u, v = uv
    edges = set()
    blocks = []
    nxt = h.n
    for x, y in _orient(h):
        off = nxt
        nxt += f.n
        for a, b in f.edges:
            if norm_edge(a, b) == norm_edge(u, v):
                continue
            edges.add(norm_edge(off + a, off + b))
        edges.add(norm_edge(x, off + u))
        edges.add(norm_edge(y, off + v))
        blocks.append((x, y, off))
    ex = _Expanded(Graph(nxt, edges), h.n, blocks, uv)
    ex.pattern = f
    return ex


def _split_to_regular(g: Graph, r: int) -> tuple[Graph, GraphMap]:
    """Split every vertex into degree-r pieces: the canonical regular
    preimage with an edge-bijective map onto g."""
    if any(d % r for d in g.degrees()):
        raise DomainError("degrees must be divisible by the split width")
    piece_of = {}
    img = []
    n0 = 0
    for v in range(g.n):
        k = g.degree(v) // r
        inc = sorted((min(v, w), max(v, w)) for w in g.adj[v])
        for j, e in enumerate(inc):
            piece_of[(v, e)] = n0 + j // r
        img.extend([v] * k)
        n0 += k
    edges = []
    for e in sorted(g.edges):
        a, b = e
        edges.append((piece_of[(a, e)], piece_of[(b, e)]))
    h0 = Graph(n0, edges)
    return h0, GraphMap(h0, g, tuple(img))


DEFAULT_ABSORBER_GUARD = 120000


def build_absorber(f: Graph, h: Graph,
                   guard: int = DEFAULT_ABSORBER_GUARD) -> CertifiedAbsorber:
    """Absorber for a divisible leftover `h`: both A and A+H decompose.

    Pieces: the attached shape minus the leftover, a regular preimage of it,
    the subdivided bouquet, a disjoint-copies shape with its own preimage,
    and four transformers tying them together.
    """
    r = reduce(gcd, [d for d in f.degrees() if d], 0)
    if f.e < 2:
        raise InputError("pattern needs at least two edges")
    if h.e == 0:
        empty = Graph(h.n, [])
        cert = Decomposition(empty, frozenset(), [])
        return CertifiedAbsorber(empty, frozenset(), cert, cert)
    rep = check_divisibility(f, h)
    if not rep.divisible:
        raise DomainError(
            f"leftover not divisible: edge residue {rep.edge_residue}, "
            f"degree residues {rep.degree_residues}")

    uv = min(f.edges)
    p = h.e // f.e

    ex_h = _expand(f, h, uv)
    h_att, map_att = ex_h.to_attached()
    loop_h, map_loop_h = ex_h.to_loop()
    h0, split_h = _split_to_regular(ex_h.graph, r)
    to_att = split_h.compose(map_att)       # h0 -> attached shape
    to_loop = split_h.compose(map_loop_h)   # h0 -> bouquet

    pf = disjoint_union(*([f] * p))
    ex_pf = _expand(f, pf, uv)
    pf_att, map_pf_att = ex_pf.to_attached()
    loop_pf, map_loop_pf = ex_pf.to_loop()
    if loop_pf != loop_h:
        # both bouquets subdivide p*e(F) pattern copies, so the shapes agree
        raise DomainError("bouquet mismatch (defect)")
    pf0, split_pf = _split_to_regular(ex_pf.graph, r)
    pf_to_att = split_pf.compose(map_pf_att)
    pf_to_loop = split_pf.compose(map_loop_pf)

    est = (h0.e + pf0.e) * 2 * (f.n ** 2) * 40
    if est > guard:
        raise SizeGuardError(f"projected absorber size ~{est} exceeds {guard}")

    star = build_k2r_switcher(f, r)
    c6 = _pick_c6_switcher(f)

    def transformer(src: Graph, dst_map: GraphMap):
        return build_transformer(f, src, dst_map,
                                 c6_switcher=c6, star_switcher=star)

    t1 = transformer(h0, to_att)       # preimage <-> attached(h)
    t2 = transformer(h0, to_loop)      # preimage <-> bouquet
    t3 = transformer(pf0, pf_to_att)   # pf preimage <-> attached(pf)
    t4 = transformer(pf0, pf_to_loop)  # pf preimage <-> bouquet

    # assemble the universe: the leftover block first, then every shared
    # shape planted once, then transformer interiors
    space = GadgetSpace()
    h_ids = space.fresh(h.n)

    def plant(g: Graph, pins: dict) -> list[int]:
        vmap = [pins.get(x, -1) for x in range(g.n)]
        for x in range(g.n):
            if vmap[x] == -1:
                vmap[x] = space.fresh_one()
        for a, b in g.edges:
            if a in pins and b in pins:
                continue  # leftover-internal edges stay out of the absorber
            space.add_edge(vmap[a], vmap[b])
        return vmap

    att_map = plant(h_att, {x: h_ids[x] for x in range(h.n)})
    h0_map = plant(h0, {})
    loop_map = plant(loop_h, {})
    pf0_map = plant(pf0, {})
    pf_att_map = plant(pf_att, {})

    def plant_transformer(tr, src_map, dst_map, src_n):
        """Plant a transformer whose universe starts with its source block
        and then its target block; interiors fresh.  Returns the two copy
        lists remapped into the absorber universe."""
        vmap = [-1] * tr.cert_h.host.n
        for x in range(src_n):
            vmap[x] = src_map[x]
        for x in range(len(dst_map)):
            vmap[src_n + x] = dst_map[x]
        for x in range(len(vmap)):
            if vmap[x] == -1:
                vmap[x] = space.fresh_one()
        for a, b in tr.t.edges:
            space.add_edge(vmap[a], vmap[b])
        remap = lambda copies: [(c.pattern, tuple(vmap[t] for t in c.image))
                                for c in copies]
        return remap(tr.cert_h.copies), remap(tr.cert_hp.copies)

    t1_h0, t1_att = plant_transformer(t1, h0_map, att_map, h0.n)
    t2_h0, t2_loop = plant_transformer(t2, h0_map, loop_map, h0.n)
    t3_pf0, t3_att = plant_transformer(t3, pf0_map, pf_att_map, pf0.n)
    t4_pf0, t4_loop = plant_transformer(t4, pf0_map, loop_map, pf0.n)

    def block_copies(ex: _Expanded, shape_map) -> list:
        """One pattern copy per block of an attached shape: the tail vertex
        plays the cut edge's far end, the block supplies the rest."""
        u, v = ex.uv
        att, amap = ex.to_attached()
        out = []
        for x, y, off in ex.blocks:
            img = [0] * f.n
            for t in range(f.n):
                img[t] = shape_map[amap.image[off + t]]
            out.append((f, tuple(img)))
        return out

    h_edges_set = frozenset(norm_edge(h_ids[a], h_ids[b]) for a, b in h.edges)
    a_graph = space.graph()
    host_a = a_graph
    host_ah = Graph(space.n, space.edges | h_edges_set)

    copies_a = []
    copies_a.extend(block_copies(ex_h, att_map))   # attached(h) minus h
    copies_a.extend(t1_h0)                         # preimage + T1
    copies_a.extend(t2_loop)                       # bouquet + T2
    copies_a.extend(t4_pf0)                        # pf preimage + T4
    copies_a.extend(t3_att)                        # attached(pf) + T3

    copies_ah = []
    copies_ah.extend(t1_att)                       # h + attached(h) + T1
    copies_ah.extend(t2_h0)                        # preimage + T2
    copies_ah.extend(t4_loop)                      # bouquet + T4
    copies_ah.extend(t3_pf0)                       # pf preimage + T3
    copies_ah.extend(block_copies(ex_pf, pf_att_map))
    for j in range(p):                             # the p standalone copies
        copies_ah.append(
            (f, tuple(pf_att_map[j * f.n + t] for t in range(f.n))))

    cert_a = Decomposition(host_a, host_a.edges,
                           [EmbeddedCopy(pp, host_a, im)
                            for pp, im in copies_a])
    cert_ah = Decomposition(host_ah, host_ah.edges,
                            [EmbeddedCopy(pp, host_ah, im)
                             for pp, im in copies_ah])
    return CertifiedAbsorber(a_graph, h_edges_set, cert_a, cert_ah)


# -- colour rotation and the partite neighbourhood absorber ---------------------


def _glue_rotated_copies(f: Graph, vs, cs, s, rotate=False):
    """Glue copies of f at the listed vertices into one hub; with rotate,
    copy i has its 1..s-1 classes shifted cyclically by i+1 (the last copy
    keeps the original colours).  Returns (graph, hub, colouring, vmaps)."""
    n_copies = len(vs)
    hub = 0
    nxt = 1
    vmaps = []
    edges = []
    col = {hub: s}
    for i in range(n_copies):
        vmap = {}
        for x in range(f.n):
            if x == vs[i]:
                vmap[x] = hub
            else:
                vmap[x] = nxt
                nxt += 1
        for a, b in f.edges:
            edges.append((vmap[a], vmap[b]))
        shift = (i + 1) if rotate else 0
        for x in range(f.n):
            if x == vs[i]:
                continue
            base = cs[i][x]
            if base == s:
                col[vmap[x]] = s
            else:
                col[vmap[x]] = ((base - 1 + shift) % (s - 1)) + 1
        vmaps.append(vmap)
    return Graph(nxt, edges), hub, col, vmaps


def rotate_colouring(f: Graph, v: int, c) -> tuple[Graph, int, dict]:
    """Glue s-1 copies of the pattern at `v` and rotate the first s-1 colour
    classes cyclically between copies, so the hub sees every class equally.

    `c` maps vertices to colours 1..s with c[v] = s.  Returns the glued
    graph, the hub vertex, and the rotated colouring; the hub's count into
    every class equals the original degree of v.
    """
    c = dict(enumerate(c)) if not isinstance(c, dict) else dict(c)
    s = max(c.values())
    if c[v] != s:
        raise InputError("the rotated vertex must carry the last colour")
    for a, b in f.edges:
        if c[a] == c[b]:
            raise InputError("colouring is not proper")
    glued, hub, col, _ = _glue_rotated_copies(f, [v] * (s - 1),
                                              [c] * (s - 1), s, rotate=True)
    return glued, hub, col


def _swap12(c):
    return tuple(2 if x == 1 else 1 if x == 2 else x for x in c)


def _hub_counts(g: Graph, hub: int, col: dict, s: int) -> list:
    return [sum(1 for y in g.adj[hub] if col[y] == i)
            for i in range(1, s)]


@dataclass
class _Rotater:
    """A pattern-decomposable hub graph with both the balanced and the
    (m-1, m+1, m, ..) neighbourhood count tuples achievable."""

    graph: Graph
    hub: int
    m: int
    s: int
    col_balanced: dict
    col_skew: dict
    f_copy_images: list        # pattern-copy images decomposing the graph


def _rotater_pair(f: Graph, guard_colours: int = 20) -> _Rotater:
    chi = chromatic_number(f)
    inv = colouring_invariants(f, guard=guard_colours)
    use_chi = chi >= 3 and inv.theta == 1

    if not use_chi:
        s = chi + 1
        base = next(iter(proper_colourings(f, chi, guard=guard_colours)))
        v = 0
        nbr_class = base[min(f.adj[v])]
        remap = {base[v]: s, nbr_class: 1}
        nxt = 3
        for cc in sorted(set(base)):
            if cc not in remap:
                remap[cc] = nxt
                nxt += 1
        c = {x: remap[base[x]] for x in range(f.n)}
        pieces = [(f, v, c)] * (s - 1)
        m = f.degree(v)
        joined, hub0, col0 = f, v, c
        fp, hub, col, vmaps = _glue_rotated_copies(
            f, [v] * (s - 1), [c] * (s - 1), s, rotate=True)
        f_imgs = []
        for vmap in vmaps:
            f_imgs.append(tuple(vmap[x] for x in range(f.n)))
        # skew: in the unshifted copy, recolour one hub neighbour from 1 to
        # 2 (that copy has no colour 2 at all, so properness is free)
        ident = vmaps[-1]
        col_skew = dict(col)
        pick = next(x for x in sorted(f.adj[v]) if c[x] == 1)
        assert all(col[ident[x]] != 2 for x in range(f.n) if x != v)
        col_skew[ident[pick]] = 2
    else:
        s = chi
        # write 1 as a combination of achievable hub class differences
        diffs = {}
        for cand in proper_colourings(f, chi, guard=guard_colours):
            for x in range(f.n):
                if cand[x] != chi:
                    continue
                d1 = sum(1 for y in f.adj[x] if cand[y] == 1)
                d2 = sum(1 for y in f.adj[x] if cand[y] == 2)
                if d1 != d2 and abs(d1 - d2) not in diffs:
                    diffs[abs(d1 - d2)] = (x, cand, d1 - d2)
        from .switchers import _degree_multiset_split
        neg, pos = _degree_multiset_split(sorted(diffs), 1)
        picks = []
        for val in pos:
            x, cand, sign = diffs[val]
            picks.append((x, cand if sign > 0 else _swap12(cand)))
        for val in neg:
            x, cand, sign = diffs[val]
            picks.append((x, _swap12(cand) if sign > 0 else cand))
        joined, hub0, col0, sub_vmaps = _glue_rotated_copies(
            f, [x for x, _ in picks],
            [dict(enumerate(cc)) for _, cc in picks], s)
        m = sum(f.degree(x) for x, _ in picks)
        fp, hub, col, vmaps = _glue_rotated_copies(
            joined, [hub0] * (s - 1), [col0] * (s - 1), s, rotate=True)
        f_imgs = []
        for vmap in vmaps:
            for sub in sub_vmaps:
                f_imgs.append(tuple(vmap[sub[x]] for x in range(f.n)))
        # skew: swap classes 1 and 2 throughout the unshifted copy, whose
        # hub surplus of class 1 over class 2 is one by construction
        ident = vmaps[-1]
        col_skew = dict(col)
        for x in range(joined.n):
            if x == hub0:
                continue
            if col[ident[x]] == 1:
                col_skew[ident[x]] = 2
            elif col[ident[x]] == 2:
                col_skew[ident[x]] = 1

    counts = _hub_counts(fp, hub, col, s)
    assert counts == [m] * (s - 1), counts
    skew_counts = _hub_counts(fp, hub, col_skew, s)
    assert skew_counts == [m - 1, m + 1] + [m] * (s - 3), skew_counts
    for a, b in fp.edges:
        assert col_skew[a] != col_skew[b]
    return _Rotater(fp, hub, m, s, col, col_skew, f_imgs)


@dataclass
class PartiteNeighbourhoodAbsorber:
    graph: Graph
    colouring: dict
    x: int
    w: tuple
    cover_plain: list          # pattern copies covering the star at x
    cover_with_w: list         # pattern copies covering the star in T + xW


def build_partite_neighbourhood_absorber(f: Graph, b: int,
                                         guard: int = 60000
                                         ) -> PartiteNeighbourhoodAbsorber:
    """Coloured gadget swallowing a prescribed class-1 edge bundle at one
    vertex: both the bare star and the star plus the bundle admit covers.

    The hub graph pair with balanced and near-balanced neighbourhood counts
    does the balancing; leftover per-class surpluses are averaged out by
    skew copies and the result is consumed cell by cell by balanced copies.
    """
    if b < 1:
        raise InputError("bundle multiplier must be positive")
    r = reduce(gcd, [d for d in f.degrees() if d], 0)
    rot = _rotater_pair(f)
    s, m = rot.s, rot.m
    M = (s - 1) * m
    br = b * r

    # per-degree best class-1 capacity when a copy is glued at a vertex
    chi = chromatic_number(f)
    best_w: dict = {}
    pick_for: dict = {}
    for v in range(f.n):
        base = next(iter(proper_colourings(f, chi)))
        classes = {}
        for y in f.adj[v]:
            classes.setdefault(base[y], []).append(y)
        heavy = max(classes, key=lambda cc: len(classes[cc]))
        w_v = len(classes[heavy])
        d = f.degree(v)
        if d not in best_w or w_v > best_w[d]:
            best_w[d] = w_v
            pick_for[d] = (v, base, heavy)
    degs = sorted(best_w)

    # smallest j with br + j*M a degree sum carrying enough class-1 slots
    chosen_degrees = None
    for j in range(0, 400):
        target = br + j * M
        dp = {0: 0}
        back = {}
        for t in range(1, target + 1):
            for d in degs:
                if t - d in dp:
                    cand = dp[t - d] + best_w[d]
                    if t not in dp or cand > dp[t]:
                        dp[t] = cand
                        back[t] = d
        if target in dp and dp[target] >= br:
            seq = []
            t = target
            while t:
                seq.append(back[t])
                t -= back[t]
            chosen_degrees = seq
            break
    if chosen_degrees is None:
        raise ResourceError("no copy multiset reaches the bundle size")

    space = GadgetSpace()
    x = space.fresh_one()
    col = {x: s}
    cover_with_w = []

    # F'' : the chosen copies glued at x, colour-heaviest class sent to 1
    class1_nbrs = []
    star_class: dict = {}
    for d in chosen_degrees:
        v, base, heavy = pick_for[d]
        remap = {base[v]: s, heavy: 1}
        nxt_col = 2
        for cc in sorted(set(base) | set(range(1, chi + 1))):
            if cc not in remap:
                while nxt_col in remap.values():
                    nxt_col += 1
                remap[cc] = nxt_col
        vmap = {}
        for t in range(f.n):
            vmap[t] = x if t == v else space.fresh_one()
        for a_, b_ in f.edges:
            space.add_edge(vmap[a_], vmap[b_])
        for t in range(f.n):
            if t == v:
                continue
            col[vmap[t]] = remap[base[t]]
        for y in f.adj[v]:
            star_class[vmap[y]] = remap[base[y]]
            if remap[base[y]] == 1:
                class1_nbrs.append(vmap[y])
        cover_with_w.append((f, tuple(vmap[t] for t in range(f.n))))

    w_set = tuple(sorted(class1_nbrs)[:br])
    for wv in w_set:
        # the bundle edges exist only in T + xW
        space.edges.discard(norm_edge(x, wv))

    # per-class residual star degrees and the balancing transport
    a = {i: 0 for i in range(1, s)}
    for y, cc in star_class.items():
        if y in w_set:
            continue
        a[cc] += 1
    total = sum(a.values())
    assert total % (s - 1) == 0
    abar = total // (s - 1)
    assert abar % m == 0
    iplus = [i for i in a if a[i] > abar]
    iminus = [i for i in a if a[i] < abar]
    bmat: dict = {}
    room_row = {i: a[i] - abar for i in iplus}
    room_col = {jj: abar - a[jj] for jj in iminus}
    for i in iplus:
        for jj in iminus:
            amt = min(room_row[i], room_col[jj])
            if amt > 0:
                bmat[(i, jj)] = amt
                room_row[i] -= amt
                room_col[jj] -= amt
    assert not any(room_row.values()) and not any(room_col.values())
    p = sum(bmat.values())

    def glue_rot(colouring: dict, nbr_targets: dict = None):
        """Glue one hub-graph copy at x; nbr_targets optionally pins the
        hub's class-i neighbours onto existing vertices (edges merge)."""
        g = rot.graph
        vmap = {rot.hub: x}
        by_class: dict = {}
        for y in sorted(g.adj[rot.hub]):
            by_class.setdefault(colouring[y], []).append(y)
        if nbr_targets:
            for cc, targets in nbr_targets.items():
                for y, tgt in zip(by_class[cc], targets):
                    vmap[y] = tgt
        for t in range(g.n):
            if t not in vmap:
                vmap[t] = space.fresh_one()
        for a_, b_ in g.edges:
            space.add_edge(vmap[a_], vmap[b_], merge=nbr_targets is not None)
        for t in range(g.n):
            if t == rot.hub:
                continue
            tcol = colouring[t]
            if vmap[t] in col:
                assert col[vmap[t]] == tcol
            else:
                col[vmap[t]] = tcol
        return [(f, tuple(vmap[v] for v in img)) for img in rot.f_copy_images]

    # skew copies shave one unit off a surplus class per use
    for (i, jj), cnt in sorted(bmat.items()):
        phi = {1: i, 2: jj, s: s}
        rest = [cc for cc in range(1, s) if cc not in (i, jj)]
        for cc in range(1, s):
            if cc in (1, 2):
                continue
            phi[cc] = rest.pop(0)
        for _ in range(cnt):
            shifted = {v: phi[c] for v, c in rot.col_skew.items()}
            cover_with_w.extend(glue_rot(shifted))

    # every class now meets x in p*m + abar vertices; consume them cell-wise
    star_now: dict = {i: [] for i in range(1, s)}
    for y in sorted(space.graph().adj[x]):
        star_now[col[y]].append(y)
    q = p + abar // m
    for i in range(1, s):
        assert len(star_now[i]) == q * m, (i, len(star_now[i]), q, m)
    cover_plain = []
    for cell in range(q):
        targets = {i: star_now[i][cell * m:(cell + 1) * m]
                   for i in range(1, s)}
        cover_plain.extend(glue_rot(rot.col_balanced, targets))

    t_graph = space.graph()
    if t_graph.n > guard:
        raise SizeGuardError(f"gadget grew to {t_graph.n} vertices")
    host_plus = Graph(t_graph.n,
                      t_graph.edges | {norm_edge(x, wv) for wv in w_set})
    plain = [EmbeddedCopy(pp, t_graph, im) for pp, im in cover_plain]
    plus = [EmbeddedCopy(pp, host_plus, im) for pp, im in cover_with_w]
    return PartiteNeighbourhoodAbsorber(t_graph, col, x, w_set, plain, plus)
