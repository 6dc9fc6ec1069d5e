"""Kauffman's skein-template algorithm.

Depth-first walk of the decision tree with an undo log: memory stays linear
in the number of crossings, time is exponential.  This is the reference the
dynamic program is checked against.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .diagram import OO, SPLICED, STRAIGHT, UO, LinkDiagram, Sign, writhe
from .errors import InvalidDiagram
from .poly import BiLaurent, TriLaurent, expand_delta

PASS, SWITCH, SPLICE = 1, 2, 3
TAG_NAMES = {PASS: "pass", SWITCH: "switch", SPLICE: "splice"}


@dataclass(frozen=True)
class LeafStats:
    t: int  # splices
    t_minus: int  # splices at negative crossings
    w: int  # writhe after the leaf's switches and splices
    w0: int  # writhe of the input diagram
    c: int  # components of the modified link


def leaf_term(s: LeafStats) -> TriLaurent:
    return TriLaurent.mono((-1) ** s.t_minus, s.w - s.w0, s.t, s.c - 1)


@dataclass
class KauffmanRun:
    raw: TriLaurent
    polynomial: BiLaurent
    leaves_visited: int
    peak_depth: int
    wall_ms: float
    leaves: list[tuple[LeafStats, tuple[str | None, ...]]] = field(default_factory=list)


def arc_ranks(diagram: LinkDiagram, order: Sequence[int] | Mapping[int, int] | None) -> list[int]:
    """Normalise an arc order to a list of arc ids, lowest rank first.

    ``order`` may be a sequence of arc ids (first = rank 1) or a mapping
    from arc id to rank.
    """
    n = diagram.n_arcs
    if order is None:
        return list(range(n))
    if isinstance(order, Mapping):
        ranked = sorted(order, key=order.__getitem__)
    else:
        ranked = list(order)
    if sorted(ranked) != list(range(n)):
        raise ValueError("arc order must be a permutation of the diagram's arcs")
    return ranked


def run_kauffman(
    diagram: LinkDiagram,
    order: Sequence[int] | Mapping[int, int] | None = None,
    record_leaves: bool = False,
) -> KauffmanRun:
    start_clock = time.perf_counter()
    ranked = arc_ranks(diagram, order)
    n = diagram.n_crossings
    w0 = writhe(diagram)
    if n == 0:
        if diagram.free_loops == 0:
            raise InvalidDiagram("the empty link has no HOMFLY-PT polynomial")
        stats = LeafStats(0, 0, 0, 0, diagram.free_loops)
        raw = leaf_term(stats)
        leaves = [(stats, ())] if record_leaves else []
        return KauffmanRun(raw, expand_delta(raw), 1, 0,
                           (time.perf_counter() - start_clock) * 1e3, leaves)

    target = [a.target for a in diagram.arcs]
    slots = diagram.slots
    signs = diagram.signs
    tag = [0] * n
    visited = [False] * diagram.n_arcs
    log: list[int] = []  # arc ids (>= 0) and crossing ids encoded as ~c
    acc: dict[tuple[int, int, int], int] = {}
    leaves: list = []
    counters = {"t": 0, "tm": 0, "w": w0, "leaves": 0, "depth": 0, "peak": 0}

    def lowest_unvisited():
        for a in ranked:
            if not visited[a]:
                return a
        return None

    def undo(mark):
        while len(log) > mark:
            item = log.pop()
            if item >= 0:
                visited[item] = False
            else:
                tag[~item] = 0

    def emit(comps):
        c = comps + diagram.free_loops
        t, tm, w = counters["t"], counters["tm"], counters["w"]
        key = (w - w0, t, c - 1)
        coeff = -1 if tm % 2 else 1
        acc[key] = acc.get(key, 0) + coeff
        counters["leaves"] += 1
        if record_leaves:
            names = tuple(TAG_NAMES.get(x) for x in tag)
            leaves.append((LeafStats(t, tm, w, w0, c), names))

    def walk(a, comps):
        counters["depth"] += 1
        counters["peak"] = max(counters["peak"], counters["depth"])
        while True:
            if visited[a]:
                comps += 1
                a = lowest_unvisited()
                if a is None:
                    emit(comps)
                    break
                continue
            visited[a] = True
            log.append(a)
            c, slot = target[a]
            state = tag[c]
            if state:
                a = slots[c][(SPLICED if state == SPLICE else STRAIGHT)[slot]]
                continue
            if slot.is_over:
                tag[c] = PASS
                log.append(~c)
                a = slots[c][OO]
                continue
            # First meeting from below: fork.
            mark = len(log)
            s = signs[c]
            tag[c] = SWITCH
            counters["w"] -= 2 * s
            walk(slots[c][UO], comps)
            undo(mark)
            counters["w"] += s  # now the spliced writhe: crossing dropped
            counters["t"] += 1
            counters["tm"] += s == Sign.NEGATIVE
            tag[c] = SPLICE
            walk(slots[c][OO], comps)
            undo(mark)
            counters["w"] += s
            counters["t"] -= 1
            counters["tm"] -= s == Sign.NEGATIVE
            tag[c] = 0
            break
        counters["depth"] -= 1

    limit = sys.getrecursionlimit()
    if limit < 4 * n + 100:
        sys.setrecursionlimit(4 * n + 100)
    walk(lowest_unvisited(), 0)

    raw = TriLaurent._wrap({k: v for k, v in acc.items() if v})
    bound = 2 ** n
    if counters["leaves"] > bound:
        raise AssertionError(f"{counters['leaves']} leaves exceeds 2^{n}")
    return KauffmanRun(
        raw,
        expand_delta(raw),
        counters["leaves"],
        counters["peak"],
        (time.perf_counter() - start_clock) * 1e3,
        leaves,
    )


def homfly_kauffman(diagram: LinkDiagram, order=None) -> BiLaurent:
    """HOMFLY-PT polynomial by exhaustive skein-template expansion."""
    return run_kauffman(diagram, order).polynomial


def leaf_count(diagram: LinkDiagram, order=None) -> int:
    return run_kauffman(diagram, order).leaves_visited
