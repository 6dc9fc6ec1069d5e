"""Acceptance criteria 1-8, one test each.

Each test records PASS or FAIL; the lines are printed in the terminal
summary under "acceptance criteria".
"""

import functools
import json
import random
import time

import pytest

from conftest import ACCEPTANCE, FIGURE_EIGHT, corpus_files
from homflypt import diagram as dg
from homflypt.fpt import decompose, dp_stats, homfly_fpt, is_tree_based, lemma_bound, run_fpt, tree_arc_order
from homflypt.kauffman import leaf_term, run_kauffman
from homflypt.poly import render
from homflypt.treewidth import HEURISTICS, greedy_decomposition, make_nice, nice_violations, validate

TIMINGS: dict[str, float] = {}


def criterion(n, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            ACCEPTANCE[n] = ("FAIL", title)
            fn(*args, **kwargs)
            ACCEPTANCE[n] = ("PASS", title)

        return run

    return wrap


@pytest.fixture(scope="module")
def corpus():
    files = corpus_files()
    return [(p.name, dg.loads(p.read_text()), json.loads(p.read_text())) for p in files]


@pytest.fixture(scope="module")
def baseline(corpus):
    """One default fpt run per corpus diagram, shared by several criteria."""
    start = time.perf_counter()
    runs = {name: run_fpt(d) for name, d, _ in corpus}
    TIMINGS["fpt"] = time.perf_counter() - start
    return runs


@criterion(1, "figure-eight worked example reproduced by both algorithms (4 leaves)")
def test_1_worked_example(fig8):
    start = time.perf_counter()
    k = run_kauffman(fig8, record_leaves=True)
    f = run_fpt(fig8)
    elapsed = time.perf_counter() - start
    assert render(k.polynomial) == FIGURE_EIGHT
    assert render(f.polynomial) == FIGURE_EIGHT
    assert k.leaves_visited == 4
    assert sorted(render(leaf_term(s)) for s, _ in k.leaves) == sorted(
        ["a^2", "-a^-1*z*d", "-a^2*z^2", "a*z^3*d"])
    assert elapsed < 1.0


@criterion(2, "fpt equals kauffman on the 500-diagram braid corpus")
def test_2_oracle_equivalence(corpus, baseline):
    assert len(corpus) >= 500
    start = time.perf_counter()
    for name, d, doc in corpus:
        assert 2 <= doc["strands"] <= 5 and d.n_crossings <= 10, name
        f = render(baseline[name].polynomial)
        k = render(run_kauffman(d).polynomial)
        assert f == k, f"{name}: fpt {f} != kauffman {k}"
        assert f == doc["expected"], name
    assert TIMINGS["fpt"] + time.perf_counter() - start < 300


@criterion(3, "writhes 0 and -1 of the two example diagrams; figure-eight signs +,-,-,+")
def test_3_writhe_fixtures(fig8, link5):
    assert dg.writhe(fig8) == 0
    assert (link5.n_crossings, link5.n_arcs, dg.components(link5)) == (5, 10, 2)
    assert dg.writhe(link5) == -1
    assert [int(s) for s in fig8.signs] == [1, -1, -1, 1]


@criterion(4, "table sizes within (2|bag|)!^2 and leaf counts within 2^n on the corpus")
def test_4_structural_bounds(corpus, baseline):
    for name, d, _ in corpus:
        run = baseline[name]
        for size, bag in zip(run.configs_per_bag, run.bag_sizes):
            assert size <= lemma_bound(bag), name
        assert run_kauffman(d).leaves_visited <= 2 ** d.n_crossings, name


@criterion(5, "decompositions valid and nice on the corpus for both heuristics")
def test_5_decomposition_validity(corpus):
    for name, d, _ in corpus:
        d, _, _ = dg.untwist_and_strip(d)
        if d.is_empty():
            continue
        g = dg.diagram_graph(d)
        for h in HEURISTICS:
            td = greedy_decomposition(g, h)
            assert validate(td, g) == [], (name, h)
            ntd = make_nice(td, g)
            assert nice_violations(ntd, g) == [], (name, h)
            assert ntd.nodes[ntd.root].bag == frozenset()
            assert all(len(v) == 1 for v in ntd.forget_nodes().values())
            assert ntd.width == td.width


def three_tree_orders(d):
    """Three distinct tree-based orderings, each with its decomposition.

    Besides the join and tie switches of ``tree_arc_order``, reversing the
    ties inside a single forget bag also gives a tree-based ordering.
    """
    ntd = decompose(d)
    found = {}
    for rf in (False, True):
        for rt in (False, True):
            order = tree_arc_order(d, ntd, right_first=rf, reverse_ties=rt)
            found.setdefault(tuple(order), ntd)
            head = d.arcs[order[0]].target[0]
            k = sum(1 for a in order if d.arcs[a].target[0] == head)
            found.setdefault(tuple(order[:k][::-1] + order[k:]), ntd)
    orders = list(found)[:3]
    for order in orders:
        assert is_tree_based(list(order), d, ntd)
    return [(order, found[order]) for order in orders]


@criterion(6, "identical output across arc orders, tree orderings, heuristics, threads")
def test_6_invariance(corpus, baseline):
    rng = random.Random(2024)
    for name, d, _ in corpus:
        want = render(baseline[name].polynomial)
        order = list(range(d.n_arcs))
        for _ in range(5):
            rng.shuffle(order)
            assert render(run_kauffman(d, order).polynomial) == want, (name, "arc order")
        stripped, _, _ = dg.untwist_and_strip(d)
        if not stripped.is_empty():
            orders = three_tree_orders(stripped)
            assert len(orders) == 3, name
            for tree_order, ntd in orders:
                got = render(run_fpt(d, ntd=ntd, order=list(tree_order)).polynomial)
                assert got == want, (name, "tree order")
        assert render(homfly_fpt(d, heuristic="min-fill")) == want, (name, "min-fill")
        assert render(homfly_fpt(d, threads=4)) == want, (name, "threads")


@criterion(7, "twisted diagrams: fpt after untwisting equals kauffman; lone twist gives 1")
def test_7_preprocessing(corpus):
    rng = random.Random(77)
    picked = rng.sample(corpus, 50)
    for name, d, _ in picked:
        twists = [(rng.randrange(d.n_arcs), rng.choice((1, -1)), rng.random() < 0.5)
                  for _ in range(rng.randint(1, 3))] if d.n_arcs else []
        t = dg.add_twists(d, twists)
        run = run_fpt(t)
        assert run.twists_removed >= len(twists), name
        assert render(run.polynomial) == render(run_kauffman(t).polynomial), name
    curl = dg.generate_braid_closure([1], 2)
    assert render(homfly_fpt(curl)) == "1"
    assert render(run_kauffman(curl).polynomial) == "1"


@criterion(8, "asymptotic claims out of scope; bounded quantities are logged")
def test_8_logged_only(baseline):
    # Not a measurement: only check that the quantities are reported.
    widths = [run.width for run in baseline.values()]
    peaks = [run.peak_configs for run in baseline.values()]
    stats = dp_stats(next(iter(baseline.values())))
    assert {"width", "bags", "peak_configs", "total_configs", "wall_ms"} <= set(stats)
    print(f"corpus: max width {max(widths)}, max peak table {max(peaks)}, "
          f"fpt pass {TIMINGS.get('fpt', 0):.1f}s")
