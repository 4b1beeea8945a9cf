"""Graphs with loose ends.

A graph is a finite set of arcs ``A`` with a fixedpoint-free involution,
a subset ``D`` of arcs that point at a vertex (via the target map ``t``),
and an explicit boundary subset.  Safe graphs have boundary exactly
``A - D``; dropping that requirement adds exactly one new connected shape,
the nodeless loop, whose two arcs are neither boundary nor attached to a
vertex.

Everything here is an immutable value: constructors validate, queries are
pure, and graphs can be hashed, compared, and shared freely.
"""
from __future__ import annotations

import re
from itertools import permutations
from typing import Iterable, Mapping, Optional

from .errors import (
    ArcInTwoNeighborhoods,
    BoundaryViolation,
    DisconnectedInput,
    GraphError,
    InvolutionFixedPoint,
    NodelessLoopInCoreMode,
    NodelessLoopInSafeMode,
    UnknownVertex,
)

DAGGER = "†"

MODE_CORE = "core"
MODE_EXTENDED = "extended"

_SPLIT_DIGITS = re.compile(r"(\d+)")


def natural_key(ident: str):
    """Sort key that orders ``2`` before ``10`` and ``1`` before ``1†``."""
    parts = []
    for chunk in _SPLIT_DIGITS.split(ident):
        if not chunk:
            continue
        if chunk.isdigit():
            parts.append((0, int(chunk), ""))
        else:
            parts.append((1, 0, chunk))
    return tuple(parts)


def sorted_ids(items: Iterable[str]) -> tuple:
    return tuple(sorted(items, key=natural_key))


def fresh_partner_labels(bases: Iterable[str], taken: Iterable[str]) -> dict:
    """Deterministic fresh labels, one per base, avoiding ``taken``.

    The first candidate for a base is ``base + '†'``; daggers are appended
    until the label is free.  Bases are processed in natural order, so the
    result does not depend on input ordering.
    """
    used = set(taken)
    out = {}
    for base in sorted_ids(bases):
        candidate = base + DAGGER
        while candidate in used:
            candidate += DAGGER
        out[base] = candidate
        used.add(candidate)
    return out


class Graph:
    """Immutable graph value.  Use :func:`build_graph` for friendly input."""

    __slots__ = (
        "_arcs", "_inv", "_domain", "_target", "_vertices", "_boundary",
        "_key", "_hash", "_nbhd", "_orbits", "_components",
    )

    def __init__(self, arcs, involution, target, vertices, boundary):
        self._arcs = frozenset(arcs)
        self._inv = dict(involution)
        self._target = dict(target)
        self._vertices = frozenset(vertices)
        self._domain = frozenset(self._target)
        self._boundary = frozenset(boundary)
        self._validate()
        self._key = (
            sorted_ids(self._arcs),
            tuple(sorted(self._inv.items(), key=lambda kv: natural_key(kv[0]))),
            tuple(sorted(self._target.items(), key=lambda kv: natural_key(kv[0]))),
            sorted_ids(self._vertices),
            sorted_ids(self._boundary),
        )
        self._hash = hash(self._key)
        self._nbhd = None
        self._orbits = None
        self._components = None

    # -- validation ------------------------------------------------------

    def _validate(self):
        if set(self._inv) != self._arcs:
            raise GraphError("involution must be defined on exactly the arc set")
        for a, b in self._inv.items():
            if a == b:
                raise InvolutionFixedPoint(f"involution fixes arc {a!r}")
            if b not in self._arcs or self._inv.get(b) != a:
                raise GraphError(f"involution is not self-inverse at {a!r}")
        for d, v in self._target.items():
            if d not in self._arcs:
                raise GraphError(f"target defined on unknown arc {d!r}")
            if v not in self._vertices:
                raise GraphError(f"target of {d!r} is unknown vertex {v!r}")
        extra = self._boundary - self._arcs
        if extra:
            raise BoundaryViolation(f"boundary arcs not in arc set: {sorted_ids(extra)}")
        if self._boundary & self._domain:
            raise BoundaryViolation("boundary must avoid the domain of the target map")
        dangling = {self._inv[d] for d in self._domain} - self._domain
        if not dangling <= self._boundary:
            missing = dangling - self._boundary
            raise BoundaryViolation(
                f"arcs {sorted_ids(missing)} face a vertex on one side only and must be boundary")
        free_part = self._boundary - {self._inv[d] for d in self._domain}
        if any(self._inv[a] not in self._boundary for a in free_part):
            raise BoundaryViolation("boundary arcs away from all vertices must come in involution pairs")

    # -- identity ---------------------------------------------------------

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"Graph(|A|={len(self._arcs)}, |V|={len(self._vertices)}, "
                f"|D|={len(self._domain)}, boundary={len(self._boundary)})")

    # -- raw data ----------------------------------------------------------

    @property
    def arcs(self) -> frozenset:
        return self._arcs

    @property
    def domain_arcs(self) -> frozenset:
        return self._domain

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def boundary(self) -> frozenset:
        return self._boundary

    def inv(self, arc: str) -> str:
        return self._inv[arc]

    @property
    def involution(self) -> Mapping[str, str]:
        return dict(self._inv)

    def target(self, arc: str) -> Optional[str]:
        return self._target.get(arc)

    @property
    def target_map(self) -> Mapping[str, str]:
        return dict(self._target)

    # -- structural queries ------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self._arcs and not self._vertices

    @property
    def is_safe(self) -> bool:
        return self._boundary == self._arcs - self._domain

    @property
    def loop_arcs(self) -> frozenset:
        """Arcs that belong to nodeless-loop circles (empty on safe graphs)."""
        return self._arcs - self._domain - self._boundary

    @property
    def is_nodeless_loop(self) -> bool:
        return (not self._vertices and len(self._arcs) == 2
                and not self._domain and not self._boundary)

    @property
    def is_exceptional_edge(self) -> bool:
        return (not self._vertices and len(self._arcs) == 2
                and self._boundary == self._arcs)

    def neighborhood(self, vertex: str) -> tuple:
        if vertex not in self._vertices:
            raise UnknownVertex(f"unknown vertex {vertex!r}")
        return self._nbhd_map()[vertex]

    def _nbhd_map(self):
        if self._nbhd is None:
            grouped = {v: [] for v in self._vertices}
            for d, v in self._target.items():
                grouped[v].append(d)
            self._nbhd = {v: sorted_ids(arcs) for v, arcs in grouped.items()}
        return self._nbhd

    def valence(self, vertex: str) -> int:
        return len(self.neighborhood(vertex))

    @property
    def edges(self) -> tuple:
        """Involution orbits, as frozensets, in deterministic order."""
        if self._orbits is None:
            seen = set()
            orbits = []
            for a in sorted_ids(self._arcs):
                if a in seen:
                    continue
                orbit = frozenset({a, self._inv[a]})
                seen |= orbit
                orbits.append(orbit)
            self._orbits = tuple(orbits)
        return self._orbits

    @property
    def internal_edges(self) -> tuple:
        return tuple(e for e in self.edges if e <= self._domain)

    def edge_of(self, arc: str) -> frozenset:
        return frozenset({arc, self._inv[arc]})

    # -- connectivity -------------------------------------------------------

    def _component_ids(self):
        """Map every arc and vertex to a component representative."""
        if self._components is not None:
            return self._components
        parent = {("a", a): ("a", a) for a in self._arcs}
        parent.update({("v", v): ("v", v) for v in self._vertices})

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for a in self._arcs:
            union(("a", a), ("a", self._inv[a]))
        for d, v in self._target.items():
            union(("a", d), ("v", v))
        self._components = {x: find(x) for x in parent}
        return self._components

    @property
    def is_connected(self) -> bool:
        comp = self._component_ids()
        return len(set(comp.values())) == 1

    def connected_components(self) -> list:
        comp = self._component_ids()
        buckets = {}
        for item, root in comp.items():
            buckets.setdefault(root, []).append(item)
        graphs = []
        for members in buckets.values():
            arcs = {x for kind, x in members if kind == "a"}
            verts = {x for kind, x in members if kind == "v"}
            graphs.append(Graph(
                arcs,
                {a: self._inv[a] for a in arcs},
                {d: v for d, v in self._target.items() if d in arcs},
                verts,
                self._boundary & arcs,
            ))
        graphs.sort(key=lambda g: (sorted_ids(g.arcs), sorted_ids(g.vertices)))
        return graphs


# -- constructors -----------------------------------------------------------

def build_graph(arc_pairs, neighborhoods, boundary=None) -> Graph:
    """Assemble and validate a graph from involution pairs and neighborhoods.

    ``arc_pairs`` lists each involution orbit once as a pair ``(a, b)``;
    ``neighborhoods`` maps a vertex to the arcs pointing at it.  When
    ``boundary`` is omitted the graph is safe and the boundary defaults to
    all arcs that point at no vertex.
    """
    inv = {}
    for a, b in arc_pairs:
        if a == b:
            raise InvolutionFixedPoint(f"arc pair ({a!r}, {b!r}) fixes the involution")
        for x in (a, b):
            if x in inv:
                raise GraphError(f"arc {x!r} declared twice")
        inv[a] = b
        inv[b] = a
    target = {}
    vertices = set()
    for v, arcs in dict(neighborhoods).items():
        if v in vertices:
            raise GraphError(f"vertex {v!r} declared twice")
        vertices.add(v)
        for a in arcs:
            if a not in inv:
                raise GraphError(f"neighborhood of {v!r} uses undeclared arc {a!r}")
            if a in target:
                raise ArcInTwoNeighborhoods(f"arc {a!r} appears in two neighborhoods")
            target[a] = v
    arcs = set(inv)
    if boundary is None:
        boundary = arcs - set(target)
    return Graph(arcs, inv, target, vertices, boundary)


def build_standard(kind: str, n: int = 0) -> Graph:
    """The named families with their customary arc labels.

    ``edge`` (two arcs ``0, 0†``), ``star`` (legs ``1..n`` pointing at
    ``v``), ``linear`` (arcs ``0..n``, boundary ``{0, n†}``), ``loop``
    (``n >= 1`` vertices on a circle), ``nodeless_loop``.
    """
    if kind == "edge":
        return build_graph([("0", "0" + DAGGER)], {})
    if kind == "nodeless_loop":
        return build_graph([("0", "0" + DAGGER)], {}, boundary=())
    if kind == "star":
        labels = [str(k) for k in range(1, n + 1)]
        return build_graph(
            [(k, k + DAGGER) for k in labels],
            {"v": labels},
        )
    if kind == "linear":
        if n == 0:
            return build_standard("edge")
        labels = [str(k) for k in range(n + 1)]
        pairs = [(k, k + DAGGER) for k in labels]
        nbhd = {str(v): [str(v - 1) + DAGGER, str(v)] for v in range(1, n + 1)}
        return build_graph(pairs, nbhd)
    if kind == "loop":
        if n == 0:
            raise NodelessLoopInSafeMode(
                "a loop with zero vertices is not a safe graph; use kind='nodeless_loop'")
        labels = [str(k) for k in range(1, n + 1)]
        pairs = [(k, k + DAGGER) for k in labels]
        nbhd = {}
        for v in range(1, n + 1):
            prev = n if v == 1 else v - 1
            nbhd[str(v)] = [str(prev) + DAGGER, str(v)]
        return build_graph(pairs, nbhd)
    raise GraphError(f"unknown standard kind {kind!r}")


def star_of_vertex(graph: Graph, vertex: str):
    """The one-vertex graph on ``nbhd(v)`` plus fresh boundary partners.

    Returns ``(star, partner)`` where ``partner`` maps each neighborhood
    arc to its fresh boundary label.  The inclusion into ``graph`` sends a
    neighborhood arc to itself and ``partner[a]`` to ``inv(a)``.
    """
    nbhd = graph.neighborhood(vertex)
    partner = fresh_partner_labels(nbhd, nbhd)
    star = build_graph([(a, partner[a]) for a in nbhd], {vertex: list(nbhd)})
    return star, partner


def star_of_graph(graph: Graph):
    """One vertex with a leg per boundary arc of ``graph``; the unit base."""
    bnd = sorted_ids(graph.boundary)
    partner = fresh_partner_labels(bnd, bnd)
    star = build_graph(
        [(a, partner[a]) for a in bnd],
        {"v": [partner[a] for a in bnd]},
    )
    return star, partner


# -- deletion and core -------------------------------------------------------

def _edges_touching(graph: Graph, items) -> set:
    edges = set()
    for item in items:
        if isinstance(item, (frozenset, set, tuple, list)):
            for a in item:
                edges.add(graph.edge_of(a))
        else:
            edges.add(graph.edge_of(item))
    return edges


def delete(graph: Graph, items) -> Graph:
    """Remove whole edges touched by ``items`` (arcs or edges). No-op on absent ones."""
    doomed = set()
    for e in _edges_touching(graph, items):
        doomed |= e
    doomed &= graph.arcs
    arcs = graph.arcs - doomed
    target = {d: v for d, v in graph.target_map.items() if d in arcs}
    if graph.is_safe:
        boundary = arcs - set(target)
    else:
        boundary = graph.boundary & arcs
    return Graph(arcs, {a: graph.inv(a) for a in arcs}, target, graph.vertices, boundary)


def core_graph(graph: Graph) -> Graph:
    """Delete the boundary edges; vertices survive untouched."""
    return delete(graph, graph.boundary)


# -- numerical invariants -----------------------------------------------------

def degree(graph: Graph, mode: str = MODE_CORE) -> int:
    """Vertices plus internal edges; the extended scale shifts most graphs by one.

    On the extended scale the circle of a nodeless loop counts as an
    internal edge, so nodeless loops sit in degree 2.
    """
    base = len(graph.vertices) + len(graph.internal_edges)
    if mode == MODE_CORE:
        if graph.loop_arcs:
            raise NodelessLoopInCoreMode("nodeless loops have no core-mode degree")
        return base
    if mode == MODE_EXTENDED:
        if graph.is_exceptional_edge:
            return 0
        if len(graph.vertices) == 1 and not graph.arcs:
            return 1
        return base + len(graph.loop_arcs) // 2 + 1
    raise GraphError(f"unknown degree mode {mode!r}")


def betti1(graph: Graph) -> int:
    """First Betti number of a connected graph."""
    if not graph.is_connected:
        raise DisconnectedInput("betti1 requires a connected graph")
    if graph.is_exceptional_edge:
        return 0
    return len(graph.internal_edges) - len(graph.vertices) + 1


def is_connected(graph: Graph) -> bool:
    return graph.is_connected


def connected_components(graph: Graph) -> list:
    return graph.connected_components()


# -- isomorphisms --------------------------------------------------------------

class GraphIso:
    """A structure-preserving bijection between two graphs."""

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
        return isinstance(other, GraphIso) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"GraphIso(arcs={self.arc_map}, vertices={self.vertex_map})"

    def check(self) -> Optional[str]:
        """Reason the data fails to be an isomorphism, or None."""
        src, dst = self.source, self.target
        if set(self.arc_map) != src.arcs or set(self.arc_map.values()) != dst.arcs:
            return "arc component is not a bijection"
        if len(set(self.arc_map.values())) != len(self.arc_map):
            return "arc component is not injective"
        if set(self.vertex_map) != src.vertices or set(self.vertex_map.values()) != dst.vertices:
            return "vertex component is not a bijection"
        if len(set(self.vertex_map.values())) != len(self.vertex_map):
            return "vertex component is not injective"
        for a in src.arcs:
            if self.arc_map[src.inv(a)] != dst.inv(self.arc_map[a]):
                return f"involution broken at {a!r}"
        for d in src.domain_arcs:
            if self.arc_map[d] not in dst.domain_arcs:
                return f"domain arc {d!r} leaves the domain"
            if dst.target(self.arc_map[d]) != self.vertex_map[src.target(d)]:
                return f"target broken at {d!r}"
        if {self.arc_map[d] for d in src.domain_arcs} != dst.domain_arcs:
            return "domain is not hit exactly"
        if {self.arc_map[b] for b in src.boundary} != dst.boundary:
            return "boundary is not hit exactly"
        return None

    @property
    def is_identity(self) -> bool:
        return (self.source == self.target
                and all(k == v for k, v in self.arc_map.items())
                and all(k == v for k, v in self.vertex_map.items()))

    def compose(self, other: "GraphIso") -> "GraphIso":
        """self after other."""
        if other.target != self.source:
            raise GraphError("isomorphisms do not chain")
        return GraphIso(
            other.source, self.target,
            {a: self.arc_map[b] for a, b in other.arc_map.items()},
            {v: self.vertex_map[w] for v, w in other.vertex_map.items()},
        )

    def invert(self) -> "GraphIso":
        return GraphIso(
            self.target, self.source,
            {b: a for a, b in self.arc_map.items()},
            {w: v for v, w in self.vertex_map.items()},
        )


def identity_iso(graph: Graph) -> GraphIso:
    return GraphIso(graph, graph, {a: a for a in graph.arcs}, {v: v for v in graph.vertices})


def _iso_profile(graph: Graph):
    valences = sorted(
        (len(graph.neighborhood(v)), sum(1 for a in graph.neighborhood(v) if graph.inv(a) in graph.neighborhood(v)))
        for v in graph.vertices)
    return (
        len(graph.arcs), len(graph.domain_arcs), len(graph.vertices),
        len(graph.boundary), len(graph.internal_edges), tuple(valences),
    )


def _iso_search(source: Graph, target: Graph, first_only: bool):
    """Backtracking search over arc assignments in natural order.

    Assigning an arc forces its involution partner, and assigning a domain
    arc forces (or checks) the image of its target vertex.  Candidates are
    tried in natural order, so the first complete solution is the
    lexicographically least one.
    """
    if _iso_profile(source) != _iso_profile(target):
        return []
    order = sorted_ids(source.arcs)
    tgt_arcs = sorted_ids(target.arcs)
    results = []
    arc_map, vertex_map = {}, {}
    used_arcs, used_vertices = set(), set()

    def try_pairings(pairs):
        """Assign arc pairs plus induced vertex images; return undo list or None."""
        undo = []
        for a, b in pairs:
            if a in arc_map:
                if arc_map[a] != b:
                    _undo(undo)
                    return None
                continue
            if b in used_arcs:
                _undo(undo)
                return None
            if (a in source.domain_arcs) != (b in target.domain_arcs) or \
                    (a in source.boundary) != (b in target.boundary):
                _undo(undo)
                return None
            arc_map[a] = b
            used_arcs.add(b)
            undo.append(("arc", a, b))
            if a in source.domain_arcs:
                v, w = source.target(a), target.target(b)
                if v in vertex_map:
                    if vertex_map[v] != w:
                        _undo(undo)
                        return None
                elif w in used_vertices or source.valence(v) != target.valence(w):
                    _undo(undo)
                    return None
                else:
                    vertex_map[v] = w
                    used_vertices.add(w)
                    undo.append(("vertex", v, w))
        return undo

    def _undo(undo):
        for kind, x, y in reversed(undo):
            if kind == "arc":
                del arc_map[x]
                used_arcs.discard(y)
            else:
                del vertex_map[x]
                used_vertices.discard(y)

    def extend(i):
        if i == len(order):
            # Vertices away from every arc are interchangeable.
            iso_src = sorted_ids(v for v in source.vertices if v not in vertex_map)
            iso_dst = sorted_ids(w for w in target.vertices if w not in used_vertices)
            if len(iso_src) != len(iso_dst):
                return False
            for image in permutations(iso_dst):
                vm = dict(vertex_map)
                vm.update(zip(iso_src, image))
                iso = GraphIso(source, target, arc_map, vm)
                if iso.check() is None:
                    results.append(iso)
                    if first_only:
                        return True
            return False
        a = order[i]
        if a in arc_map:
            return extend(i + 1)
        for b in tgt_arcs:
            undo = try_pairings([(a, b), (source.inv(a), target.inv(b))])
            if undo is None:
                continue
            if extend(i + 1):
                return True
            _undo(undo)
        return False

    extend(0)
    return results


def find_isomorphism(source: Graph, target: Graph) -> Optional[GraphIso]:
    """Lexicographically least isomorphism under the identifier order, if any."""
    found = _iso_search(source, target, first_only=True)
    return found[0] if found else None


def all_isomorphisms(source: Graph, target: Graph) -> list:
    return _iso_search(source, target, first_only=False)


def automorphisms(graph: Graph) -> list:
    return _iso_search(graph, graph, first_only=False)
