import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIGURE_EIGHT_PD, FIXTURES
from homflypt import diagram as dg
from homflypt.diagram import OI, OO, UI, UO, Sign
from homflypt.errors import (
    BadGeneratorIndex,
    InvalidDiagram,
    MalformedSyntax,
    NonQuadrivalent,
    OrientationConflict,
    UnknownCrossing,
)


@st.composite
def braids(draw, max_strands=5, max_len=10):
    s = draw(st.integers(2, max_strands))
    gens = st.integers(1, s - 1).flatmap(lambda i: st.sampled_from((i, -i)))
    word = draw(st.lists(gens, min_size=1, max_size=max_len))
    return word, s


# -- parsing -------------------------------------------------------------------


def test_figure_eight_pd(fig8):
    assert fig8.n_crossings == 4 and fig8.n_arcs == 8
    assert list(fig8.signs) == [Sign.POSITIVE, Sign.NEGATIVE, Sign.NEGATIVE, Sign.POSITIVE]
    assert dg.writhe(fig8) == 0
    assert dg.components(fig8) == 1


def test_pd_slots_follow_the_under_strand(fig8):
    # X(a,b,c,d): a enters under, c leaves under.  Arc ids are labels minus one.
    rows = [(4, 2, 5, 1), (2, 7, 3, 8), (6, 3, 7, 4), (8, 6, 1, 5)]
    for c, (a, _, cc, _) in enumerate(rows):
        assert fig8.slots[c][UI] == a - 1
        assert fig8.slots[c][UO] == cc - 1


def test_pd_square_brackets_are_accepted():
    text = FIGURE_EIGHT_PD.replace("(", "[").replace(")", "]")
    assert dg.parse_pd(text) == dg.parse_pd(FIGURE_EIGHT_PD)


def test_pd_errors():
    with pytest.raises(MalformedSyntax):
        dg.parse_pd("")
    with pytest.raises(MalformedSyntax):
        dg.parse_pd("X(1,2,3)")
    with pytest.raises(NonQuadrivalent):
        dg.parse_pd((FIXTURES / "bad_labels.pd").read_text())
    with pytest.raises(OrientationConflict):
        dg.parse_pd("X(1,2,3,4)\nX(1,4,3,2)")


def test_unknown_crossing(fig8):
    with pytest.raises(UnknownCrossing):
        dg.sign(fig8, 4)
    with pytest.raises(UnknownCrossing):
        dg.switch(fig8, -1)


# -- switch and splice -----------------------------------------------------------


def test_switch_flips_sign_and_roles(fig8):
    s = dg.switch(fig8, 0)
    assert s.signs[0] == Sign.NEGATIVE and s.signs[1:] == fig8.signs[1:]
    assert s.slots[0][OI] == fig8.slots[0][UI]
    assert s.slots[0][OO] == fig8.slots[0][UO]
    assert dg.writhe(s) == -2


def test_splice_figure_eight_b_closes_loop_through_1_2_8(fig8):
    new, amap = dg.splice_with_map(fig8, 1)
    assert new.n_crossings == 3 and dg.components(new) == 2
    loop = next(comp for comp in dg.component_arcs(new) if amap[0] in comp)
    assert {old for old, a in amap.items() if a in loop} == {0, 1, 7}


def test_splice_one_crossing_twist_gives_two_free_loops():
    curl = dg.generate_braid_closure([1], 2)
    out = dg.splice(curl, 0)
    assert out.n_crossings == 0
    assert out.free_loops == 2


def test_splice_trefoil_gives_hopf():
    tref = dg.generate_braid_closure([1, 1, 1], 2)
    hopf = dg.splice(tref, 0)
    assert dg.components(hopf) == 2
    assert dg.writhe(hopf) == 2


# -- untwisting --------------------------------------------------------------------


def test_untwist_examples(fig8):
    empty, twists, free = dg.untwist_and_strip(dg.generate_braid_closure([1], 2))
    assert (empty.n_crossings, twists, free) == (0, 1, 1)
    empty, twists, free = dg.untwist_and_strip(dg.generate_braid_closure([1, 3], 4))
    assert (empty.n_crossings, twists, free) == (0, 2, 2)
    assert dg.untwist_and_strip(fig8) == (fig8, 0, 0)


def test_untwist_leaves_no_kink():
    d = dg.add_twists(dg.generate_braid_closure([1, 1, 1], 2), [(0, 1, True), (2, -1, False)])
    out, twists, free = dg.untwist_and_strip(d)
    assert twists == 2 and free == 0
    assert not dg.diagram_graph(out).has_loops()
    assert out.n_crossings == 3


# -- braid closures ---------------------------------------------------------------


def test_braid_examples():
    tref = dg.generate_braid_closure([1, 1, 1], 2)
    assert dg.writhe(tref) == 3 and dg.components(tref) == 1
    assert dg.generate_braid_closure([], 2).free_loops == 2
    unlink = dg.generate_braid_closure([1, -1], 2)
    assert dg.writhe(unlink) == 0 and dg.components(unlink) == 2


def test_bad_generator():
    with pytest.raises(BadGeneratorIndex):
        dg.generate_braid_closure([2], 2)
    with pytest.raises(BadGeneratorIndex):
        dg.generate_braid_closure([0], 3)
    with pytest.raises(BadGeneratorIndex):
        dg.generate_braid_closure([1], 1)


def test_graph_view(fig8):
    g = dg.diagram_graph(fig8)
    assert g.vertices == (0, 1, 2, 3)
    assert len(g.edges) == 8 and not g.has_loops()
    assert all(len(ns) >= 2 for ns in g.neighbours().values())
    curl = dg.diagram_graph(dg.generate_braid_closure([1], 2))
    assert curl.has_loops() and curl.neighbours() == {0: set()}


# -- JSON ---------------------------------------------------------------------------


def test_json_errors():
    with pytest.raises(MalformedSyntax):
        dg.loads("{")
    with pytest.raises(MalformedSyntax):
        dg.loads("[]")
    with pytest.raises(MalformedSyntax):
        dg.loads('{"crossings": []}')
    with pytest.raises(InvalidDiagram):
        dg.loads('{"crossings": [{"id": 0, "sign": 2}], "arcs": []}')


def test_json_extra_keys_are_ignored(fig8):
    doc = json.loads(dg.dumps(fig8, expected="x", name="fig8"))
    assert dg.from_json(doc) == fig8


# -- properties -------------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(braids())
def test_switch_is_an_involution(b):
    d = dg.generate_braid_closure(*b)
    for c in range(d.n_crossings):
        once = dg.switch(d, c)
        assert dg.switch(once, c) == d
        assert dg.writhe(once) == dg.writhe(d) - 2 * d.signs[c]
        assert dg.components(once) == dg.components(d)


@settings(max_examples=150, deadline=None)
@given(braids())
def test_writhe_and_components_of_closures(b):
    word, s = b
    d = dg.generate_braid_closure(word, s)
    assert dg.writhe(d) == sum(1 if g > 0 else -1 for g in word)
    # Components are the cycles of the underlying permutation.
    perm = list(range(s + 1))
    for g in word:
        i = abs(g)
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, cycles = set(), 0
    for p in range(1, s + 1):
        if p not in seen:
            cycles += 1
            while p not in seen:
                seen.add(p)
                p = perm[p]
    assert dg.components(d) == cycles


@settings(max_examples=150, deadline=None)
@given(braids())
def test_splice_changes_components_by_one(b):
    d = dg.generate_braid_closure(*b)
    for c in range(d.n_crossings):
        spliced = dg.splice(d, c)
        assert spliced.n_crossings == d.n_crossings - 1
        assert abs(dg.components(spliced) - dg.components(d)) == 1
        assert dg.writhe(spliced) == dg.writhe(d) - d.signs[c]


@settings(max_examples=150, deadline=None)
@given(braids())
def test_json_round_trip(b):
    d = dg.generate_braid_closure(*b)
    assert dg.loads(dg.dumps(d)) == d
    assert dg.from_json(json.loads(json.dumps(dg.to_json(d)))) == d


@settings(max_examples=100, deadline=None)
@given(braids(), st.data())
def test_untwist_preserves_component_count(b, data):
    d = dg.generate_braid_closure(*b)
    twists = data.draw(st.lists(
        st.tuples(st.integers(0, d.n_arcs - 1), st.sampled_from((1, -1)), st.booleans()),
        max_size=3))
    t = dg.add_twists(d, twists)
    assert dg.components(t) == dg.components(d)
    out, removed, free = dg.untwist_and_strip(t)
    assert removed >= len(twists)
    assert dg.components(out) == dg.components(d)
    assert free == out.free_loops
    assert not dg.diagram_graph(out).has_loops()


def test_same_role_self_loop_is_rejected():
    doc = {
        "crossings": [{"id": 0, "sign": 1}],
        "arcs": [
            {"id": 0, "from": [0, "under_out"], "to": [0, "under_in"]},
            {"id": 1, "from": [0, "over_out"], "to": [0, "over_in"]},
        ],
    }
    with pytest.raises(InvalidDiagram):
        dg.from_json(doc)
    # A curl enters on the other role and is accepted.
    doc["arcs"][0]["to"], doc["arcs"][1]["to"] = [0, "over_in"], [0, "under_in"]
    assert dg.components(dg.from_json(doc)) == 1
