import pytest

from taufin.algebra import linear_path_algebra, tensor_product
from taufin.quiver import (
    Arrow,
    DiagramType,
    Quiver,
    build_cyclic_quiver,
    build_linear_quiver,
    classify_graph,
    component_types,
    has_loop,
    has_multiple_arrow,
    is_cyclic_shape,
    is_linear_An_shape,
    separated_quiver,
)


def test_linear_quiver():
    assert build_linear_quiver(1).arrows == ()
    q = build_linear_quiver(3)
    assert q.vertices == ("1", "2", "3")
    assert [(a.source, a.target) for a in q.arrows] == [("1", "2"), ("2", "3")]
    with pytest.raises(ValueError):
        build_linear_quiver(0)


def test_quiver_validation():
    with pytest.raises(ValueError):
        Quiver(("1",), (Arrow("a", "1", "2"),))
    with pytest.raises(ValueError):
        Quiver(("1", "1"), ())
    with pytest.raises(ValueError):
        Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("a", "2", "1")))


def test_separated_of_a2():
    sep = separated_quiver(build_linear_quiver(2))
    assert set(sep.vertices) == {"1", "2", "1'", "2'"}
    assert [(a.source, a.target) for a in sep.arrows] == [("1", "2'")]
    comps = {frozenset(c): t for c, t in component_types(sep)}
    assert comps[frozenset({"1", "2'"})] == DiagramType("A", 2)
    assert comps[frozenset({"2"})] == DiagramType("A", 1)
    assert comps[frozenset({"1'"})] == DiagramType("A", 1)


def test_separated_of_loop():
    sep = separated_quiver(Quiver(("1",), (Arrow("x", "1", "1"),)))
    assert [(a.source, a.target) for a in sep.arrows] == [("1", "1'")]
    assert component_types(sep)[0][1] == DiagramType("A", 2)


def test_separated_is_bipartite_and_keeps_multiplicity():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2"), Arrow("c", "2", "2")))
    sep = separated_quiver(q)
    assert len(sep.arrows) == 3
    assert all(not a.source.endswith("'") and a.target.endswith("'") for a in sep.arrows)


def test_cube_has_a_tilde_5_hexagon():
    a2 = linear_path_algebra(2)
    cube = tensor_product(tensor_product(a2, a2), a2).quiver
    assert len(cube.vertices) == 8 and len(cube.arrows) == 12
    types = component_types(separated_quiver(cube))
    assert any(t == DiagramType("A~", 5) and len(c) == 6 for c, t in types)


def _path(n):
    return [str(i) for i in range(n)], [(str(i), str(i + 1)) for i in range(n - 1)]


def _star(arms):
    verts, edges, k = ["c"], [], 0
    for length in arms:
        prev = "c"
        for _ in range(length):
            k += 1
            verts.append(f"v{k}")
            edges.append((prev, f"v{k}"))
            prev = f"v{k}"
    return verts, edges


@pytest.mark.parametrize(
    "graph, expected",
    [
        (_path(1), DiagramType("A", 1)),
        (_path(5), DiagramType("A", 5)),
        (_star([1, 1, 1]), DiagramType("D", 4)),
        (_star([1, 1, 3]), DiagramType("D", 6)),
        (_star([1, 2, 2]), DiagramType("E", 6)),
        (_star([1, 2, 3]), DiagramType("E", 7)),
        (_star([1, 2, 4]), DiagramType("E", 8)),
        (_star([2, 2, 2]), DiagramType("E~", 6)),
        (_star([1, 3, 3]), DiagramType("E~", 7)),
        (_star([1, 2, 5]), DiagramType("E~", 8)),
        (_star([1, 1, 1, 1]), DiagramType("D~", 4)),
        (_star([2, 2, 3]), DiagramType("Other")),
        (_star([1, 1, 1, 1, 1]), DiagramType("Other")),
    ],
)
def test_classify_trees(graph, expected):
    assert classify_graph(*graph) == expected


def test_classify_cycles_and_multi_edges():
    assert classify_graph(["1", "2"], [("1", "2"), ("2", "1")]) == DiagramType("A~", 1)
    assert classify_graph(["1", "2", "3"], [("1", "2"), ("2", "3"), ("3", "1")]) == DiagramType("A~", 2)
    assert classify_graph(["1"], [("1", "1")]).kind == "Other"
    assert classify_graph(["1", "2"], [("1", "2")] * 3).kind == "Other"


def test_d_tilde_with_two_branch_points():
    # D~_5: 6 vertices, branch points joined by one edge
    verts = list("abcdef")
    edges = [("a", "c"), ("b", "c"), ("c", "d"), ("d", "e"), ("d", "f")]
    assert classify_graph(verts, edges) == DiagramType("D~", 5)
    # D~_6 with a longer middle
    verts = list("abcdxef")
    edges = [("a", "c"), ("b", "c"), ("c", "x"), ("x", "d"), ("d", "e"), ("d", "f")]
    assert classify_graph(verts, edges) == DiagramType("D~", 6)


def test_shape_predicates():
    assert is_linear_An_shape(build_linear_quiver(4))
    assert not is_linear_An_shape(build_cyclic_quiver(3))
    assert is_cyclic_shape(build_cyclic_quiver(2))
    assert has_loop(build_cyclic_quiver(1))
    assert has_multiple_arrow(Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2"))))
    assert not has_loop(build_linear_quiver(3))


def test_opposite_and_dot():
    q = build_linear_quiver(2)
    assert [(a.source, a.target) for a in q.opposite().arrows] == [("2", "1")]
    dot = q.to_dot()
    assert dot.startswith("digraph") and '"1" -> "2"' in dot


@pytest.mark.parametrize(
    "graph",
    [_path(4), _star([1, 1, 2]), _star([1, 2, 4]), _star([2, 2, 2]), _star([1, 1, 1, 1]), _star([1, 3, 3])]
    + [([str(i) for i in range(k)], [(str(i), str((i + 1) % k)) for i in range(k)]) for k in (3, 4, 6)],
)
def test_vertex_and_edge_counts(graph):
    verts, edges = graph
    t = classify_graph(verts, edges)
    if t.is_dynkin:
        assert (len(verts), len(edges)) == (t.n, t.n - 1)
    elif t.kind == "A~":
        assert (len(verts), len(edges)) == (t.n + 1, t.n + 1)
    else:
        assert t.is_euclidean and (len(verts), len(edges)) == (t.n + 1, t.n)
