import pytest

from conftest import random_braids
from homflypt import diagram as dg
from homflypt.errors import DecompositionError
from homflypt.treewidth import (
    FORGET,
    HEURISTICS,
    JOIN,
    LEAF,
    CrossingStatus,
    TreeDecomposition,
    elimination_order,
    greedy_decomposition,
    make_nice,
    nice_bag_bound,
    nice_violations,
    status,
    validate,
    width,
)

TRIANGLE = {0: {1, 2}, 1: {0, 2}, 2: {0, 1}}
PATH = {0: {1}, 1: {0, 2}, 2: {1}}


def graphs():
    out = [dg.diagram_graph(d) for _, _, d in random_braids(120, seed=5)]
    return [g for g in out if g.vertices and not g.has_loops()]


def test_triangle_width_two():
    for h in HEURISTICS:
        td = greedy_decomposition(TRIANGLE, h)
        assert td.width == 2
        assert validate(td, TRIANGLE) == []


def test_single_vertex():
    td = greedy_decomposition({0: set()})
    assert list(td.bags.values()) == [frozenset({0})] and td.width == 0
    ntd = make_nice(td)
    assert [n.kind for n in ntd.nodes] == [LEAF, FORGET]
    assert ntd.nodes[-1].bag == frozenset()


def test_figure_eight_width(fig8):
    g = dg.diagram_graph(fig8)
    for h in HEURISTICS:
        td = greedy_decomposition(g, h)
        assert td.width <= 3
        assert validate(td, g) == []


def test_width_formula():
    assert width(TreeDecomposition({0: frozenset(range(5))}, [])) == 4
    assert width(TreeDecomposition({0: frozenset()}, [])) == -1
    with pytest.raises(DecompositionError):
        width(TreeDecomposition({}, []))


def test_single_bag_is_always_valid(fig8):
    g = dg.diagram_graph(fig8)
    td = TreeDecomposition({0: frozenset(range(4))}, [])
    assert validate(td, g) == [] and td.width == 3


def test_violations_carry_witnesses():
    td = greedy_decomposition(PATH)
    # Drop the bag holding the edge (1, 2).
    node = next(k for k, b in td.bags.items() if b == {1, 2})
    bags = {k: b for k, b in td.bags.items() if k != node}
    edges = [e for e in td.edges if node not in e]
    bad = validate(TreeDecomposition(bags, edges), PATH)
    kinds = {v.kind for v in bad}
    assert kinds & {"UncoveredEdge", "MissingVertex"}
    assert any(v.witness in ((1, 2), 2) for v in bad)

    broken = TreeDecomposition({0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({0, 2})},
                               [(0, 1), (1, 2)])
    bad = validate(broken, TRIANGLE)
    assert [(v.kind, v.witness) for v in bad] == [("DisconnectedTrace", 0)]

    not_tree = TreeDecomposition({0: frozenset({0, 1, 2}), 1: frozenset()}, [])
    assert validate(not_tree, TRIANGLE)[0].kind == "NotATree"


def test_elimination_is_deterministic():
    g = dg.diagram_graph(random_braids(1, seed=3, length=(10, 10))[0][2])
    for h in HEURISTICS:
        assert elimination_order(g, h) == elimination_order(g, h)


def test_make_nice_rejects_invalid_input():
    broken = TreeDecomposition({0: frozenset({0, 1})}, [])
    with pytest.raises(DecompositionError):
        make_nice(broken, TRIANGLE)


def test_nice_form_over_corpus():
    for g in graphs():
        for h in HEURISTICS:
            td = greedy_decomposition(g, h)
            assert validate(td, g) == []
            ntd = make_nice(td, g)
            assert nice_violations(ntd, g) == []
            assert ntd.width == td.width
            assert len(ntd.nodes) <= nice_bag_bound(ntd.width, len(g.vertices))
            forgets = ntd.forget_nodes()
            assert sorted(forgets) == list(g.vertices)
            assert all(len(v) == 1 for v in forgets.values())
            assert all(len(ntd.nodes[n.children[0]].bag) == len(n.bag)
                       for n in ntd.nodes if n.kind == JOIN)


def test_nice_violation_detection():
    g = dg.diagram_graph(dg.generate_braid_closure([1, 2, 1, 2], 3))
    ntd = make_nice(greedy_decomposition(g))
    ntd.nodes.append(ntd.nodes[-1])  # a second root with a duplicate forget
    kinds = {v.kind for v in nice_violations(ntd, g)}
    assert "NotNice" in kinds


def test_status_partition_and_separation():
    for _, _, d in random_braids(40, seed=9):
        d, _, _ = dg.untwist_and_strip(d)
        if d.is_empty():
            continue
        g = dg.diagram_graph(d)
        ntd = make_nice(greedy_decomposition(g))
        for i, node in enumerate(ntd.nodes):
            st = {c: status(ntd, i, c) for c in g.vertices}
            assert {c for c, s in st.items() if s is CrossingStatus.CURRENT} == node.bag
            if node.kind == LEAF:
                others = [s for c, s in st.items() if c != node.vertex]
                assert all(s is CrossingStatus.UNVISITED for s in others)
            for _, u, v in g.edges:
                pair = {st[u], st[v]}
                assert pair != {CrossingStatus.FORGOTTEN, CrossingStatus.UNVISITED}
        assert all(status(ntd, ntd.root, c) is CrossingStatus.FORGOTTEN for c in g.vertices)


def test_json_views(fig8):
    td = greedy_decomposition(dg.diagram_graph(fig8))
    ntd = make_nice(td)
    doc = ntd.to_json()
    assert doc["root"] == len(doc["nodes"]) - 1
    assert {n["type"] for n in doc["nodes"]} <= {"leaf", "introduce", "forget", "join"}
    assert set(td.to_json()) == {"bags", "edges"}
