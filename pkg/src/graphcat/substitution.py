"""Graph substitution: blow every vertex up into a matched graph.

The result is computed as a quotient of the disjoint union of the parts.
For each internal edge of the base, the boundary arc of one part matched
to it is glued to the involution partner of the matching boundary arc of
the other part.  Vertices and arcs-at-vertices of the parts pass through
untouched, and the boundary of the base transports bijectively onto the
boundary of the result.
"""
from __future__ import annotations

from .core import (
    Graph,
    betti1,
    natural_key,
    sorted_ids,
    star_of_graph,
    star_of_vertex,
)
from .errors import (
    GraphError,
    InvalidBoundaryMatch,
    NodelessLoopInSafeMode,
)


class SubstitutionAssignment:
    """A base graph plus one matched part per vertex.

    ``parts`` maps each base vertex to a pair ``(part, match)`` where
    ``match`` is a bijection from the involution image of the vertex
    neighborhood onto the boundary of the part.
    """

    def __init__(self, base: Graph, parts):
        self.base = base
        self.parts = {v: (g, dict(m)) for v, (g, m) in dict(parts).items()}
        self._validate()

    def _validate(self):
        base = self.base
        if not base.is_connected:
            raise GraphError("substitution base must be connected")
        if set(self.parts) != set(base.vertices):
            raise InvalidBoundaryMatch("parts must be indexed by exactly the base vertices")
        for v, (part, match) in self.parts.items():
            if not part.is_connected:
                raise GraphError(f"part at {v!r} must be connected")
            expected = {base.inv(a) for a in base.neighborhood(v)}
            if set(match) != expected:
                raise InvalidBoundaryMatch(
                    f"match at {v!r} must be defined on the flipped neighborhood")
            if set(match.values()) != set(part.boundary) or \
                    len(set(match.values())) != len(match):
                raise InvalidBoundaryMatch(
                    f"match at {v!r} must hit the part boundary bijectively")


class SubstitutionResult:
    def __init__(self, result, projection, boundary_bijection, vertex_projection):
        self.result = result
        self.projection = projection
        self.boundary_bijection = boundary_bijection
        self.vertex_projection = vertex_projection


def _namespaced_labels(parts):
    labels = {}
    taken = set()
    for v in sorted_ids(parts):
        part = parts[v][0]
        for a in sorted_ids(part.arcs):
            lbl = f"{v}.{a}"
            while lbl in taken:
                lbl += "'"
            labels[(v, a)] = lbl
            taken.add(lbl)
    return labels


def substitute(assignment: SubstitutionAssignment, extended: bool = False,
               reverse_edge_order: bool = False) -> SubstitutionResult:
    """Carry out the substitution; glue along internal edges of the base.

    In safe mode a result containing a nodeless circle is rejected; with
    ``extended`` the circle is kept as loop arcs.  The internal-edge arc
    ordering is the least arc first; ``reverse_edge_order`` flips it, which
    must not change the result up to isomorphism.
    """
    base = assignment.base
    parts = assignment.parts
    if not base.vertices:
        ident = {b: b for b in base.boundary}
        return SubstitutionResult(base, {}, ident, {})

    labels = _namespaced_labels(parts)
    parent = {pa: pa for pa in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for e in base.internal_edges:
        x1, x2 = sorted_ids(e)
        if reverse_edge_order:
            x1, x2 = x2, x1
        u1, u2 = base.target(x1), base.target(x2)
        part1, match1 = parts[u1]
        part2, match2 = parts[u2]
        out1 = match1[base.inv(x1)]
        in2 = match2[base.inv(x2)]
        union((u1, out1), (u2, part2.inv(in2)))
        union((u1, part1.inv(out1)), (u2, in2))

    classes = {}
    for pa in labels:
        classes.setdefault(find(pa), []).append(pa)
    class_label = {}
    for root, members in classes.items():
        lbl = min((labels[m] for m in members), key=natural_key)
        for m in members:
            class_label[m] = lbl

    projection = dict(class_label)
    arcs = set(class_label.values())
    involution = {}
    for (v, a), lbl in class_label.items():
        partner = class_label[(v, parts[v][0].inv(a))]
        if involution.setdefault(lbl, partner) != partner:
            raise GraphError("substitution produced an inconsistent involution")
    for lbl, partner in involution.items():
        if involution.get(partner) != lbl or partner == lbl:
            raise GraphError("substitution produced an inconsistent involution")

    vertices = set()
    target = {}
    vertex_label = {}
    for v in sorted_ids(parts):
        part = parts[v][0]
        for u in sorted_ids(part.vertices):
            wl = f"{v}.{u}"
            while wl in vertices:
                wl += "'"
            vertex_label[(v, u)] = wl
            vertices.add(wl)
    domain_classes = set()
    for v, (part, _) in parts.items():
        for d in part.domain_arcs:
            lbl = class_label[(v, d)]
            if lbl in domain_classes:
                raise GraphError("substitution glued two vertex-facing arcs together")
            domain_classes.add(lbl)
            target[lbl] = vertex_label[(v, part.target(d))]

    boundary_bijection = {}
    for x in base.boundary:
        ix = base.inv(x)
        u = base.target(ix)
        boundary_bijection[x] = class_label[(u, parts[u][1][x])]
    loop_arcs = set()
    for v, (part, _) in parts.items():
        loop_arcs |= {class_label[(v, a)] for a in part.loop_arcs}

    boundary = set(boundary_bijection.values())
    orphans = arcs - domain_classes - boundary - loop_arcs
    if orphans and not extended:
        raise NodelessLoopInSafeMode(
            "substitution collapses a cycle to a nodeless circle; extended mode handles it")
    if (loop_arcs or not all(p.is_safe for p, _ in parts.values())) and not extended:
        raise NodelessLoopInSafeMode("unsafe parts need extended mode")

    result = Graph(arcs, involution, target, vertices, boundary)
    _post_checks(assignment, result, projection, boundary_bijection)
    return SubstitutionResult(result, projection, boundary_bijection, vertex_label)


def _post_checks(assignment, result, projection, boundary_bijection):
    base, parts = assignment.base, assignment.parts
    total_vertices = sum(len(p.vertices) for p, _ in parts.values())
    total_domain = sum(len(p.domain_arcs) for p, _ in parts.values())
    if len(result.vertices) != total_vertices or len(result.domain_arcs) != total_domain:
        raise GraphError("substitution broke the vertex or domain decomposition")
    if len(set(boundary_bijection.values())) != len(base.boundary):
        raise GraphError("boundary transport is not injective")
    if set(boundary_bijection.values()) != set(result.boundary):
        raise GraphError("boundary transport is not onto the result boundary")
    if base.is_connected and all(p.is_connected for p, _ in parts.values()):
        expected = betti1(base) + sum(betti1(p) for p, _ in parts.values())
        if result.is_connected and betti1(result) != expected:
            raise GraphError("substitution broke first-Betti additivity")
    _fiber_checks(assignment, projection)


def _fiber_checks(assignment, projection):
    """Fiber sizes of the projection in the three clean situations."""
    base, parts = assignment.base, assignment.parts
    fibers = {}
    for pa, lbl in projection.items():
        fibers.setdefault(lbl, set()).add(pa)
    for e in base.internal_edges:
        x1, x2 = sorted_ids(e)
        u1, u2 = base.target(x1), base.target(x2)
        part1, match1 = parts[u1]
        part2, match2 = parts[u2]
        if part1.is_exceptional_edge or part2.is_exceptional_edge:
            continue
        out1 = match1[base.inv(x1)]
        in2 = match2[base.inv(x2)]
        if fibers[projection[(u1, out1)]] != {(u1, out1), (u2, part2.inv(in2))}:
            raise GraphError("gluing fiber at an internal edge is off")
        if fibers[projection[(u2, in2)]] != {(u2, in2), (u1, part1.inv(out1))}:
            raise GraphError("gluing fiber at an internal edge is off")
    for v, (part, match) in parts.items():
        for e in part.internal_edges:
            for d in e:
                if fibers[projection[(v, d)]] != {(v, d)}:
                    raise GraphError("internal arcs of parts must not be glued")
    for x in base.boundary:
        v = base.target(base.inv(x))
        part, match = parts[v]
        if part.is_exceptional_edge:
            continue
        if fibers[projection[(v, match[x])]] != {(v, match[x])}:
            raise GraphError("boundary-facing arcs must not be glued")
        partner = part.inv(match[x])
        if fibers[projection[(v, partner)]] != {(v, partner)}:
            raise GraphError("boundary-facing arcs must not be glued")


# -- canonical assignments ----------------------------------------------------

def star_parts(graph: Graph):
    """The identity-shaped parts: every vertex blows up into its own star."""
    parts = {}
    for v in graph.vertices:
        star, partner = star_of_vertex(graph, v)
        match = {graph.inv(a): partner[a] for a in graph.neighborhood(v)}
        parts[v] = (star, match)
    return parts


def star_base_assignment(graph: Graph) -> SubstitutionAssignment:
    """The whole graph substituted into a single star of its boundary."""
    star, partner = star_of_graph(graph)
    vertex = next(iter(star.vertices))
    match = {b: b for b in graph.boundary}
    return SubstitutionAssignment(star, {vertex: (graph, match)})


def unit_laws_hold(graph: Graph, extended: bool = False) -> bool:
    """Both unit substitutions land back on the given graph up to iso."""
    from .core import find_isomorphism

    right = substitute(SubstitutionAssignment(graph, star_parts(graph)),
                       extended=extended)
    if find_isomorphism(right.result, graph) is None:
        return False
    left = substitute(star_base_assignment(graph), extended=extended)
    return find_isomorphism(left.result, graph) is not None


def associativity_holds(base, parts, inner_parts, extended: bool = False) -> bool:
    """Substitute-then-substitute against substitute-into-parts.

    ``inner_parts`` maps a base vertex to the inner assignment for the
    vertices of its part.
    """
    from .core import find_isomorphism

    outer = substitute(SubstitutionAssignment(base, parts), extended=extended)
    k_parts = {}
    for v in base.vertices:
        part, _ = parts[v]
        inner = inner_parts[v]
        for u in part.vertices:
            inner_graph, inner_match = inner[u]
            lifted = {outer.projection[(v, y)]: b for y, b in inner_match.items()}
            k_parts[outer.vertex_projection[(v, u)]] = (inner_graph, lifted)
    lhs = substitute(SubstitutionAssignment(outer.result, k_parts), extended=extended)

    new_parts = {}
    for v in base.vertices:
        part, match = parts[v]
        sub = substitute(SubstitutionAssignment(part, inner_parts[v]),
                         extended=extended)
        new_parts[v] = (sub.result,
                        {x: sub.boundary_bijection[b] for x, b in match.items()})
    rhs = substitute(SubstitutionAssignment(base, new_parts), extended=extended)
    return find_isomorphism(lhs.result, rhs.result) is not None
