"""Etale maps, embeddings, and embedding classes.

An etale map restricts to a bijection on every vertex neighborhood; an
embedding is additionally injective on vertices.  Embeddings into a fixed
connected graph fall into finitely many classes under unique isomorphism
over the target, keyed by the image of the source boundary together with
a flag telling whether the source is a bare edge.
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional

from .core import (
    Graph,
    GraphIso,
    build_standard,
    fresh_partner_labels,
    natural_key,
    sorted_ids,
    star_of_vertex,
)
from .errors import (
    GraphError,
    NoEmbeddingWithBoundary,
    NotInternalEdge,
    SourceTargetMismatch,
    UnknownVertex,
)


class EtaleMap:
    """A diagram map that is a local bijection at every vertex."""

    __slots__ = ("source", "target", "arc_map", "vertex_map", "_key")

    def __init__(self, source: Graph, target: Graph, arc_map, vertex_map):
        self.source = source
        self.target = target
        self.arc_map = dict(arc_map)
        self.vertex_map = dict(vertex_map)
        self._key = (
            source.key, target.key,
            tuple(sorted(self.arc_map.items(), key=lambda kv: natural_key(kv[0]))),
            tuple(sorted(self.vertex_map.items(), key=lambda kv: natural_key(kv[0]))),
        )

    def __eq__(self, other):
        return isinstance(other, EtaleMap) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"{type(self).__name__}({self.arc_map}, {self.vertex_map})"

    def arc(self, a: str) -> str:
        return self.arc_map[a]

    def vertex(self, v: str) -> str:
        return self.vertex_map[v]


def etale_failure(m: EtaleMap) -> Optional[str]:
    """Reason code when the data is not etale, else None."""
    src, dst = m.source, m.target
    if set(m.arc_map) != src.arcs:
        return "arc-map-totality"
    if any(b not in dst.arcs for b in m.arc_map.values()):
        return "arc-map-range"
    if set(m.vertex_map) != src.vertices:
        return "vertex-map-totality"
    if any(w not in dst.vertices for w in m.vertex_map.values()):
        return "vertex-map-range"
    for a in src.arcs:
        if m.arc_map[src.inv(a)] != dst.inv(m.arc_map[a]):
            return "involution"
    for d in src.domain_arcs:
        if m.arc_map[d] not in dst.domain_arcs:
            return "domain"
        if dst.target(m.arc_map[d]) != m.vertex_map[src.target(d)]:
            return "target"
    for v in src.vertices:
        nb = src.neighborhood(v)
        image = {m.arc_map[a] for a in nb}
        if len(image) != len(nb) or image != set(dst.neighborhood(m.vertex_map[v])):
            return "pullback"
    for a in src.loop_arcs:
        if m.arc_map[a] not in dst.loop_arcs:
            return "loop-arcs"
    return None


def embedding_failure(m: EtaleMap) -> Optional[str]:
    reason = etale_failure(m)
    if reason is not None:
        return reason
    if len(set(m.vertex_map.values())) != len(m.vertex_map):
        return "vertex-injective"
    if not m.source.is_connected or not m.target.is_connected:
        return "connected"
    return None


def is_etale(m: EtaleMap) -> bool:
    return etale_failure(m) is None


def is_embedding(m: EtaleMap) -> bool:
    return embedding_failure(m) is None


class Embedding(EtaleMap):
    """An etale map injective on vertices, between connected graphs."""

    def __init__(self, source, target, arc_map, vertex_map):
        super().__init__(source, target, arc_map, vertex_map)
        reason = embedding_failure(self)
        if reason is not None:
            raise GraphError(f"not an embedding: {reason}")


def identity_embedding(graph: Graph) -> Embedding:
    return Embedding(graph, graph,
                     {a: a for a in graph.arcs},
                     {v: v for v in graph.vertices})


def compose_embeddings(outer: Embedding, inner: Embedding) -> Embedding:
    """outer after inner."""
    if inner.target != outer.source:
        raise SourceTargetMismatch("embedding codomain/domain mismatch")
    return Embedding(
        inner.source, outer.target,
        {a: outer.arc_map[b] for a, b in inner.arc_map.items()},
        {v: outer.vertex_map[w] for v, w in inner.vertex_map.items()},
    )


def boundary_of_embedding(f: Embedding) -> frozenset:
    """Image of the source boundary; injective for embeddings."""
    return frozenset(f.arc_map[b] for b in f.source.boundary)


def vertex_sum(f: EtaleMap) -> frozenset:
    """Image of the vertex component; a genuine subset for embeddings."""
    return frozenset(f.vertex_map.values())


def iso_as_embedding(iso: GraphIso) -> Embedding:
    return Embedding(iso.source, iso.target, iso.arc_map, iso.vertex_map)


# -- the standard embeddings --------------------------------------------------


def vertex_inclusion(graph: Graph, vertex: str) -> Embedding:
    """The star of a vertex sitting inside its graph."""
    if vertex not in graph.vertices:
        raise UnknownVertex(f"unknown vertex {vertex!r}")
    star, partner = star_of_vertex(graph, vertex)
    arc_map = {}
    for a in graph.neighborhood(vertex):
        arc_map[a] = a
        arc_map[partner[a]] = graph.inv(a)
    return Embedding(star, graph, arc_map, {vertex: vertex})


def _piece_data(graph: Graph, vertices, snipped):
    W = frozenset(vertices)
    if not W <= graph.vertices:
        raise UnknownVertex(f"unknown vertices {sorted_ids(W - graph.vertices)}")
    snips = {frozenset(e) for e in snipped}
    for e in snips:
        if not all(graph.target(a) in W for a in e) or not e <= graph.domain_arcs:
            raise NotInternalEdge(f"cannot snip {sorted_ids(e)}; not internal to the piece")
    domain = {a for a in graph.domain_arcs if graph.target(a) in W}
    inv, arc_map = {}, {}
    needs_fresh = []
    for a in sorted_ids(domain):
        ia = graph.inv(a)
        if ia in domain and graph.edge_of(a) not in snips:
            inv[a] = ia
            arc_map[a] = a
        elif ia not in domain:
            # the label of the missing side is free to reuse
            inv[a] = ia
            inv[ia] = a
            arc_map[a] = a
            arc_map[ia] = ia
        else:
            needs_fresh.append(a)
    fresh = fresh_partner_labels(needs_fresh, set(domain) | set(inv))
    for a in needs_fresh:
        b = fresh[a]
        inv[a] = b
        inv[b] = a
        arc_map[a] = a
        arc_map[b] = graph.inv(a)
    target = {a: graph.target(a) for a in domain}
    piece = Graph(set(inv), inv, target, W, set(inv) - domain)
    return piece, arc_map


def subgraph_embedding(graph: Graph, vertices, snipped=()) -> Embedding:
    """Embedding of the piece carried by ``vertices`` with ``snipped`` edges cut.

    The piece keeps the vertex labels and the labels of arcs pointing at
    its vertices; every edge of ``graph`` with both ends inside gets either
    kept whole or, when listed in ``snipped``, replaced by two loose ends.
    """
    piece, arc_map = _piece_data(graph, vertices, snipped)
    return Embedding(piece, graph, arc_map, {v: v for v in piece.vertices})


def snip_edge(graph: Graph, edge) -> list:
    """Cut one internal edge; one embedding if a cycle survives, else two."""
    e = frozenset(edge)
    if (not e <= graph.domain_arcs or len(e) != 2
            or any(graph.inv(a) not in e for a in e)):
        raise NotInternalEdge(f"{sorted_ids(e)} is not an internal edge")
    cut = delete_edge_components(graph, e)
    if cut is None:
        return [subgraph_embedding(graph, graph.vertices, [e])]
    side_u, side_v = cut
    return [subgraph_embedding(graph, side) for side in (side_u, side_v)]


def delete_edge_components(graph: Graph, e: frozenset):
    """Vertex sets of the two halves if cutting ``e`` disconnects, else None."""
    a = min(e, key=natural_key)
    ia = graph.inv(a)
    u, v = graph.target(a), graph.target(ia)
    if u == v:
        return None
    adjacency = {x: set() for x in graph.vertices}
    for d in graph.domain_arcs:
        idd = graph.inv(d)
        if idd in graph.domain_arcs and graph.edge_of(d) != e:
            adjacency[graph.target(d)].add(graph.target(idd))
            adjacency[graph.target(idd)].add(graph.target(d))
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if v in seen:
        return None
    return frozenset(seen), frozenset(graph.vertices - seen)


# -- embedding classes ---------------------------------------------------------


class EmbClass:
    """A class of embeddings into a fixed target, up to unique isomorphism.

    Keyed by the boundary image and an is-edge-domain flag; the canonical
    representative is rebuilt on demand from the recorded piece data.
    """

    __slots__ = ("target", "boundary", "is_edge", "_rep_data", "_rep", "_vsum")

    def __init__(self, target: Graph, boundary, is_edge: bool, rep_data):
        self.target = target
        self.boundary = frozenset(boundary)
        self.is_edge = bool(is_edge)
        self._rep_data = rep_data
        self._rep = None
        self._vsum = None

    @property
    def key(self):
        return (self.boundary, self.is_edge)

    def __eq__(self, other):
        return (isinstance(other, EmbClass) and self.target == other.target
                and self.key == other.key)

    def __hash__(self):
        return hash((self.target.key, self.boundary, self.is_edge))

    def __repr__(self):
        kind = "edge" if self.is_edge else "piece"
        return f"EmbClass({kind}, boundary={sorted_ids(self.boundary)})"

    def sort_key(self):
        return (0 if self.is_edge else 1, tuple(natural_key(a) for a in sorted_ids(self.boundary)))

    @property
    def representative(self) -> Embedding:
        if self._rep is None:
            kind = self._rep_data[0]
            if kind == "edge":
                arcs = sorted_ids(self._rep_data[1])
                edge = build_standard("edge")
                self._rep = Embedding(
                    edge, self.target,
                    {"0": arcs[0], "0†": arcs[1]}, {})
            elif kind == "loop":
                self._rep = identity_embedding(self.target)
            else:
                _, W, S = self._rep_data
                self._rep = subgraph_embedding(self.target, W, S)
        return self._rep

    @property
    def vertex_sum(self) -> frozenset:
        if self._vsum is None:
            if self._rep_data[0] == "piece":
                self._vsum = frozenset(self._rep_data[1])
            elif self._rep_data[0] == "edge":
                self._vsum = frozenset()
            else:
                self._vsum = frozenset()
        return self._vsum

    @property
    def internal_edge_count(self) -> int:
        return len(self.representative.source.internal_edges)


_CLASS_CACHE: dict = {}


def enumerate_embedding_classes(graph: Graph) -> tuple:
    """All embedding classes into a connected graph, in deterministic order."""
    cached = _CLASS_CACHE.get(graph)
    if cached is not None:
        return cached
    if not graph.is_connected:
        raise GraphError("embedding classes need a connected target")
    classes = []
    for e in graph.edges:
        classes.append(EmbClass(graph, e, True, ("edge", e)))
    if graph.is_nodeless_loop:
        classes.append(EmbClass(graph, (), False, ("loop",)))
    verts = sorted_ids(graph.vertices)
    for size in range(1, len(verts) + 1):
        for combo in combinations(verts, size):
            W = frozenset(combo)
            inside = [e for e in graph.internal_edges
                      if all(graph.target(a) in W for a in e)]
            for snip_size in range(len(inside) + 1):
                for snips in combinations(inside, snip_size):
                    piece, _ = _piece_data(graph, W, snips)
                    if not piece.is_connected:
                        continue
                    emb = subgraph_embedding(graph, W, snips)
                    classes.append(EmbClass(
                        graph, boundary_of_embedding(emb), False,
                        ("piece", W, tuple(snips))))
    classes.sort(key=EmbClass.sort_key)
    keys = [c.key for c in classes]
    if len(set(keys)) != len(keys):
        raise GraphError("embedding classes are not keyed uniquely; target is malformed")
    result = tuple(classes)
    _CLASS_CACHE[graph] = result
    return result


def class_lookup(graph: Graph) -> dict:
    return {c.key: c for c in enumerate_embedding_classes(graph)}


def class_of_embedding(f: Embedding) -> EmbClass:
    src = f.source
    is_edge = src.is_exceptional_edge
    key = (boundary_of_embedding(f), is_edge)
    table = class_lookup(f.target)
    if key not in table:
        raise NoEmbeddingWithBoundary(
            f"no class with boundary {sorted_ids(key[0])} (edge={is_edge})")
    return table[key]


def class_equal(f: Embedding, h: Embedding) -> Optional[GraphIso]:
    """The unique iso z with f = h . z when f and h are in the same class."""
    if f.target != h.target:
        raise SourceTargetMismatch("embeddings into different graphs")
    if boundary_of_embedding(f) != boundary_of_embedding(h):
        return None
    if f.source.is_exceptional_edge != h.source.is_exceptional_edge:
        return None
    src_f, src_h = f.source, h.source
    if not src_f.vertices:
        # bare edges and nodeless loops are injective on arcs
        inverse = {}
        for a, b in h.arc_map.items():
            if b in inverse:
                return None
            inverse[b] = a
        try:
            arc_map = {a: inverse[f.arc_map[a]] for a in src_f.arcs}
        except KeyError:
            return None
        iso = GraphIso(src_f, src_h, arc_map, {})
        if iso.check() is None and _commutes(f, h, iso):
            return iso
        return None
    hv_inverse = {w: v for v, w in h.vertex_map.items()}
    vertex_map = {}
    for v in src_f.vertices:
        w = hv_inverse.get(f.vertex_map[v])
        if w is None:
            return None
        vertex_map[v] = w
    arc_map = {}
    for d in src_f.domain_arcs:
        image = f.arc_map[d]
        z_v = vertex_map[src_f.target(d)]
        matches = [c for c in src_h.neighborhood(z_v) if h.arc_map[c] == image]
        if len(matches) != 1:
            return None
        arc_map[d] = matches[0]
    h_boundary_inverse = {}
    for b in src_h.boundary:
        h_boundary_inverse[h.arc_map[b]] = b
    for b in src_f.boundary:
        c = h_boundary_inverse.get(f.arc_map[b])
        if c is None:
            return None
        arc_map[b] = c
    iso = GraphIso(src_f, src_h, arc_map, vertex_map)
    if iso.check() is None and _commutes(f, h, iso):
        return iso
    return None


def _commutes(f: Embedding, h: Embedding, z: GraphIso) -> bool:
    return (all(h.arc_map[z.arc_map[a]] == f.arc_map[a] for a in f.source.arcs)
            and all(h.vertex_map[z.vertex_map[v]] == f.vertex_map[v]
                    for v in f.source.vertices))
