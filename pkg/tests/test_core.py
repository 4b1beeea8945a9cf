import pytest
from hypothesis import given, strategies as st

from graphcat.core import (
    DAGGER,
    Graph,
    automorphisms,
    betti1,
    build_graph,
    build_standard,
    connected_components,
    core_graph,
    degree,
    delete,
    find_isomorphism,
    fresh_partner_labels,
    natural_key,
    star_of_graph,
    star_of_vertex,
)
from graphcat.errors import (
    ArcInTwoNeighborhoods,
    BoundaryViolation,
    DisconnectedInput,
    InvolutionFixedPoint,
    NodelessLoopInCoreMode,
    NodelessLoopInSafeMode,
    UnknownVertex,
)

D = DAGGER


def test_natural_key_ordering():
    labels = ["10", "2", "1", "1" + D, "0"]
    assert sorted(labels, key=natural_key) == ["0", "1", "1" + D, "2", "10"]


def test_fresh_partner_labels_avoid_collisions():
    out = fresh_partner_labels(["1", "1" + D], {"1", "1" + D})
    assert out["1"] == "1" + D + D
    assert out["1" + D] == "1" + D + D + D
    assert len(set(out.values())) == 2


def test_exceptional_edge_via_build_graph():
    g = build_graph([("*", "*" + D)], {})
    assert g.boundary == {"*", "*" + D}
    assert g.is_safe and g.is_exceptional_edge
    assert not g.vertices and not g.domain_arcs


def test_nodeless_loop_via_build_graph():
    g = build_graph([("0", "0" + D)], {}, boundary=())
    assert g.is_nodeless_loop and not g.is_safe
    assert g.loop_arcs == {"0", "0" + D}


def test_loop_c1_boundary_forced_empty():
    g = build_graph([("1", "1" + D)], {"v": ["1", "1" + D]})
    assert g.boundary == frozenset()
    assert g.is_safe


def test_build_graph_errors():
    with pytest.raises(InvolutionFixedPoint):
        build_graph([("a", "a")], {})
    with pytest.raises(ArcInTwoNeighborhoods):
        build_graph([("a", "b")], {"u": ["a"], "w": ["a"]})
    with pytest.raises(BoundaryViolation):
        # arc b faces vertex u on one side only, so it must be boundary
        build_graph([("a", "b")], {"u": ["a"]}, boundary=())


def test_standard_star5():
    g = build_standard("star", 5)
    assert g.boundary == {str(k) + D for k in range(1, 6)}
    assert g.neighborhood("v") == tuple(str(k) for k in range(1, 6))


def test_standard_linear():
    g = build_standard("linear", 3)
    assert g.boundary == {"0", "3" + D}
    assert g.neighborhood("2") == ("1" + D, "2")
    assert build_standard("linear", 0) == build_standard("edge")


def test_standard_loop():
    g = build_standard("loop", 2)
    assert g.boundary == frozenset()
    assert g.neighborhood("1") == ("1", "2" + D)
    with pytest.raises(NodelessLoopInSafeMode):
        build_standard("loop", 0)


def test_neighborhood_unknown_vertex(c2):
    with pytest.raises(UnknownVertex):
        c2.neighborhood("missing")


def test_internal_edges(l2, c2):
    assert len(l2.internal_edges) == 1
    assert l2.internal_edges[0] == frozenset({"1", "1" + D})
    assert len(c2.internal_edges) == 2
    assert c2.boundary == frozenset()


def test_connectivity(c2, edge, star3):
    assert c2.is_connected
    two = build_graph(
        [("*", "*" + D), ("1", "1" + D), ("2", "2" + D), ("3", "3" + D)],
        {"v": ["1", "2", "3"]},
    )
    assert not two.is_connected
    assert len(connected_components(two)) == 2
    isolated = build_standard("star", 0)
    assert isolated.is_connected
    assert build_standard("nodeless_loop").is_connected


def test_delete_and_core(star5, edge, c2):
    assert delete(c2, []) == c2
    cored = core_graph(star5)
    assert cored.vertices == {"v"}
    assert not cored.arcs
    assert core_graph(edge).is_empty
    # deleting one edge of the 2-loop leaves a single shared edge
    left = delete(c2, [frozenset({"1", "1" + D})])
    assert left.vertices == {"1", "2"}
    assert left.arcs == {"2", "2" + D}
    assert left.is_connected
    assert len(left.internal_edges) == 1
    assert left.boundary == frozenset()
    # idempotence of core under safe recompute
    assert core_graph(core_graph(star5)) == core_graph(star5)


def test_degree(edge, star5, l2, nodeless):
    assert degree(edge) == 0
    assert degree(star5) == 1
    assert degree(l2) == 3
    assert degree(build_standard("star", 0)) == 1
    with pytest.raises(NodelessLoopInCoreMode):
        degree(nodeless)
    assert degree(nodeless, "extended") == 2
    assert degree(edge, "extended") == 0
    assert degree(build_standard("star", 0), "extended") == 1
    assert degree(star5, "extended") == 2
    assert degree(l2, "extended") == 4


def test_betti(edge, l2, nodeless):
    assert betti1(edge) == 0
    assert betti1(l2) == 0
    for n in (1, 2, 3):
        assert betti1(build_standard("loop", n)) == 1
    assert betti1(nodeless) == 1
    two = build_graph([("*", "*" + D), ("1", "1" + D)], {"v": ["1", "1" + D]})
    with pytest.raises(DisconnectedInput):
        betti1(two)


def test_star_of_vertex_labels(c1):
    star, partner = star_of_vertex(c1, "v") if "v" in c1.vertices else star_of_vertex(c1, "1")
    assert star.vertices == {"1"}
    assert set(star.neighborhood("1")) == {"1", "1" + D}
    assert set(partner.values()) == star.boundary
    assert len(star.arcs) == 4


def test_star_of_graph(l2):
    star, partner = star_of_graph(l2)
    assert star.boundary == l2.boundary
    assert len(star.arcs) == 2 * len(l2.boundary)


def test_automorphisms_edge(edge):
    autos = automorphisms(edge)
    assert len(autos) == 2
    assert any(a.is_identity for a in autos)


def test_automorphisms_c2(c2):
    assert len(automorphisms(c2)) == 4


def test_automorphism_group_closure(edge, star3, c1, c2, l2):
    for g in (edge, star3, c1, c2, l2, build_standard("star", 0)):
        autos = automorphisms(g)
        keyset = set(autos)
        for x in autos:
            assert x.invert() in keyset
            for y in autos:
                assert x.compose(y) in keyset


def test_find_isomorphism(star3, l2, c2):
    assert find_isomorphism(star3, l2) is None
    other = build_graph(
        [("p", "q"), ("r", "s"), ("x", "y"), ("z", "w")],
        {"u": ["p", "s"], "t": ["q", "r"]},
        boundary=("x", "y", "z", "w"),
    ) if False else build_graph(
        [("p", "q"), ("r", "s")],
        {"u": ["p", "s"], "t": ["q", "r"]},
    )
    iso = find_isomorphism(c2, other)
    assert iso is not None and iso.check() is None
    back = find_isomorphism(other, c2)
    assert back is not None
    # symmetry of success
    assert (find_isomorphism(c2, other) is None) == (find_isomorphism(other, c2) is None)


def test_iso_invariance_of_degree_betti(c2):
    other = build_graph(
        [("p", "q"), ("r", "s")],
        {"u": ["p", "s"], "t": ["q", "r"]},
    )
    iso = find_isomorphism(c2, other)
    assert iso is not None
    assert degree(c2) == degree(other)
    assert betti1(c2) == betti1(other)


def test_find_isomorphism_is_least(edge):
    iso = find_isomorphism(edge, edge)
    assert iso.is_identity


@given(st.integers(min_value=0, max_value=6))
def test_linear_family_shape(n):
    g = build_standard("linear", n)
    assert len(g.vertices) == n
    assert betti1(g) == 0
    if n > 0:
        assert g.boundary == {"0", str(n) + D}
    assert len(g.internal_edges) == max(0, n - 1)


@given(st.sets(st.text(alphabet="abcxyz", min_size=1, max_size=3), min_size=1, max_size=5))
def test_fresh_partner_labels_always_fresh(bases):
    taken = set(bases)
    out = fresh_partner_labels(bases, taken)
    values = list(out.values())
    assert len(set(values)) == len(values)
    assert not set(values) & taken
