"""Oriented link diagrams: data model, parsing, and single-crossing surgery.

A diagram is stored purely combinatorially.  Every crossing has four slots
(under-in, under-out, over-in, over-out) and every arc runs from an out slot
of one crossing to an in slot of another (possibly the same) crossing.
Crossing signs are stored explicitly because slot wiring alone does not fix
the planar embedding; parsers derive them from the embedding they see.

Zero-crossing components carry no slot data and are only counted, in
``LinkDiagram.free_loops``.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Sequence

from .errors import (
    BadGeneratorIndex,
    InvalidDiagram,
    MalformedSyntax,
    NonQuadrivalent,
    OrientationConflict,
    UnknownCrossing,
)


class Slot(IntEnum):
    UNDER_IN = 0
    UNDER_OUT = 1
    OVER_IN = 2
    OVER_OUT = 3

    @property
    def is_in(self) -> bool:
        return self in (Slot.UNDER_IN, Slot.OVER_IN)

    @property
    def is_over(self) -> bool:
        return self >= Slot.OVER_IN

    @property
    def json_name(self) -> str:
        return self.name.lower()

    @classmethod
    def from_json(cls, name: str) -> "Slot":
        try:
            return cls[name.upper()]
        except (KeyError, AttributeError):
            raise InvalidDiagram(f"unknown slot name {name!r}") from None


class Sign(IntEnum):
    POSITIVE = 1
    NEGATIVE = -1

    def flipped(self) -> "Sign":
        return Sign(-self)


UI, UO, OI, OO = Slot.UNDER_IN, Slot.UNDER_OUT, Slot.OVER_IN, Slot.OVER_OUT

# Strand continuation through an unmodified (or switched) crossing.
STRAIGHT = {UI: UO, OI: OO}
# Oriented smoothing.
SPLICED = {UI: OO, OI: UO}
# Role exchange used by switch.
_SWAPPED = {UI: OI, OI: UI, UO: OO, OO: UO}

Endpoint = tuple  # (crossing id, Slot)


@dataclass(frozen=True)
class Arc:
    source: Endpoint
    target: Endpoint


@dataclass(frozen=True)
class LinkDiagram:
    """An oriented 4-valent link diagram.

    ``signs[c]`` is the sign of crossing ``c``; ``arcs[a]`` is arc ``a``.
    Identifiers are the list positions, so they are dense from 0.
    """

    signs: tuple[Sign, ...]
    arcs: tuple[Arc, ...]
    free_loops: int = 0
    slots: tuple[tuple[int, int, int, int], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(Sign(s) for s in self.signs))
        arcs = tuple(
            Arc((int(a.source[0]), Slot(a.source[1])), (int(a.target[0]), Slot(a.target[1])))
            for a in self.arcs
        )
        object.__setattr__(self, "arcs", arcs)
        if self.free_loops < 0:
            raise InvalidDiagram("free_loops must be non-negative")
        n = len(self.signs)
        if len(arcs) != 2 * n:
            raise InvalidDiagram(f"{n} crossings need {2 * n} arcs, found {len(arcs)}")
        table = [[-1] * 4 for _ in range(n)]
        for i, arc in enumerate(arcs):
            for (c, slot), want_in in ((arc.source, False), (arc.target, True)):
                if not 0 <= c < n:
                    raise InvalidDiagram(f"arc {i} refers to missing crossing {c}")
                if slot.is_in != want_in:
                    kind = "target" if want_in else "source"
                    raise InvalidDiagram(f"arc {i} has {kind} at slot {slot.json_name}")
                if table[c][slot] != -1:
                    raise InvalidDiagram(
                        f"slot {slot.json_name} of crossing {c} used by arcs {table[c][slot]} and {i}"
                    )
                table[c][slot] = i
            (sc, ss), (tc, ts) = arc.source, arc.target
            if sc == tc and STRAIGHT[ts] == ss:
                # A strand that leaves a crossing and re-enters on the same
                # role is a closed curve meeting another curve once: not planar.
                raise InvalidDiagram(f"arc {i} closes its own strand at crossing {sc}")
        object.__setattr__(self, "slots", tuple(tuple(row) for row in table))

    @property
    def n_crossings(self) -> int:
        return len(self.signs)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def arc_at(self, crossing: int, slot: Slot) -> int:
        return self.slots[crossing][slot]

    def is_empty(self) -> bool:
        return not self.signs

    def _check(self, crossing: int):
        if not isinstance(crossing, int) or not 0 <= crossing < len(self.signs):
            raise UnknownCrossing(f"no crossing {crossing!r} in a {len(self.signs)}-crossing diagram")


EMPTY = LinkDiagram((), ())


# -- derived quantities ------------------------------------------------------


def sign(diagram: LinkDiagram, crossing: int) -> Sign:
    diagram._check(crossing)
    return diagram.signs[crossing]


def writhe(diagram: LinkDiagram) -> int:
    return sum(diagram.signs)


def _strands(diagram: LinkDiagram) -> list[list[int]]:
    seen = [False] * diagram.n_arcs
    out = []
    for start in range(diagram.n_arcs):
        if seen[start]:
            continue
        cycle = []
        a = start
        while not seen[a]:
            seen[a] = True
            cycle.append(a)
            c, slot = diagram.arcs[a].target
            a = diagram.slots[c][STRAIGHT[slot]]
        out.append(cycle)
    return out


def components(diagram: LinkDiagram) -> int:
    """Number of closed strands, zero-crossing ones included."""
    return len(_strands(diagram)) + diagram.free_loops


def component_arcs(diagram: LinkDiagram) -> list[list[int]]:
    """Arcs of each crossed component, in traversal order."""
    return _strands(diagram)


# -- surgery -----------------------------------------------------------------


def switch(diagram: LinkDiagram, crossing: int) -> LinkDiagram:
    """Pass the upper strand beneath the lower one at ``crossing``."""
    diagram._check(crossing)

    def move(end):
        c, slot = end
        return (c, _SWAPPED[slot]) if c == crossing else end

    signs = list(diagram.signs)
    signs[crossing] = signs[crossing].flipped()
    arcs = [Arc(move(a.source), move(a.target)) for a in diagram.arcs]
    return LinkDiagram(tuple(signs), tuple(arcs), diagram.free_loops)


def _rebuild(signs: dict, arcs: dict, free_loops: int):
    """Renumber surviving crossings and arcs densely, preserving order."""
    cmap = {old: new for new, old in enumerate(sorted(signs))}
    amap = {old: new for new, old in enumerate(sorted(arcs))}
    new_arcs = []
    for old in sorted(arcs):
        (sc, ss), (tc, ts) = arcs[old]
        new_arcs.append(Arc((cmap[sc], ss), (cmap[tc], ts)))
    new_signs = tuple(signs[old] for old in sorted(signs))
    return LinkDiagram(new_signs, tuple(new_arcs), free_loops), amap


def _merge_through(arcs: dict, incoming: int, outgoing: int) -> bool:
    """Join ``incoming`` to ``outgoing`` across a removed crossing.

    The merged arc keeps the identity of ``incoming``.  Returns True when the
    two are the same arc, i.e. the strand closed into a crossingless loop.
    """
    if incoming == outgoing:
        del arcs[incoming]
        return True
    arcs[incoming] = (arcs[incoming][0], arcs[outgoing][1])
    del arcs[outgoing]
    return False


def splice_with_map(diagram: LinkDiagram, crossing: int) -> tuple[LinkDiagram, dict[int, int | None]]:
    """Splice ``crossing`` and report where each old arc went.

    The returned map sends every old arc id to the id of the arc that now
    contains it, or to ``None`` if it became part of a crossingless loop.
    """
    diagram._check(crossing)
    row = diagram.slots[crossing]
    arcs = {i: (a.source, a.target) for i, a in enumerate(diagram.arcs)}
    signs = dict(enumerate(diagram.signs))
    del signs[crossing]
    free = diagram.free_loops
    owner = {i: i for i in arcs}
    for into, out_slot in ((UI, OO), (OI, UO)):
        p, q = row[into], row[out_slot]
        if _merge_through(arcs, p, q):
            free += 1
            owner[p] = None
        else:
            owner[q] = p
    result, amap = _rebuild(signs, arcs, free)
    return result, {old: (None if o is None else amap[o]) for old, o in owner.items()}


def splice(diagram: LinkDiagram, crossing: int) -> LinkDiagram:
    """Apply the oriented smoothing at ``crossing`` and remove it."""
    return splice_with_map(diagram, crossing)[0]


def _find_kink(diagram: LinkDiagram) -> int | None:
    for i, arc in enumerate(diagram.arcs):
        if arc.source[0] == arc.target[0]:
            return i
    return None


def untwist_and_strip(diagram: LinkDiagram) -> tuple[LinkDiagram, int, int]:
    """Remove every trivial twist, iterating until none is left.

    Returns ``(diagram, twists_removed, zero_components)`` where the last
    entry is the number of crossingless components of the result; they are
    recorded in ``free_loops`` and carry no crossings or arcs.
    """
    twists = 0
    while True:
        kink = _find_kink(diagram)
        if kink is None:
            return diagram, twists, diagram.free_loops
        (c, out_slot), (_, in_slot) = diagram.arcs[kink].source, diagram.arcs[kink].target
        row = diagram.slots[c]
        feed = row[{UO: UI, OO: OI}[out_slot]]
        drain = row[STRAIGHT[in_slot]]
        arcs = {i: (a.source, a.target) for i, a in enumerate(diagram.arcs)}
        signs = dict(enumerate(diagram.signs))
        del signs[c]
        del arcs[kink]
        free = diagram.free_loops + _merge_through(arcs, feed, drain)
        diagram, _ = _rebuild(signs, arcs, free)
        twists += 1


# -- graph view --------------------------------------------------------------


@dataclass(frozen=True)
class DiagramGraph:
    """Directed 4-regular multigraph: crossings as vertices, arcs as edges."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (arc id, from crossing, to crossing)

    def has_loops(self) -> bool:
        return any(u == v for _, u, v in self.edges)

    def neighbours(self) -> dict[int, set[int]]:
        """Simple undirected adjacency; parallel edges collapse, loops drop."""
        adj = {v: set() for v in self.vertices}
        for _, u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return adj


def diagram_graph(diagram: LinkDiagram) -> DiagramGraph:
    edges = tuple((i, a.source[0], a.target[0]) for i, a in enumerate(diagram.arcs))
    return DiagramGraph(tuple(range(diagram.n_crossings)), edges)


# -- PD codes ----------------------------------------------------------------

_PD_LINE = re.compile(r"X\s*[\(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[\)\]]")


def _read_pd_tuples(text: str) -> list[tuple[int, int, int, int]]:
    tuples = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _PD_LINE.fullmatch(line)
        if not m:
            raise MalformedSyntax(f"line {lineno}: expected X(a,b,c,d), got {line!r}")
        labels = tuple(int(x) for x in m.groups())
        if min(labels) < 1:
            raise MalformedSyntax(f"line {lineno}: arc labels must be positive")
        tuples.append(labels)
    if not tuples:
        raise MalformedSyntax("no crossings in PD text")
    return tuples


def _orient(tuples: list[tuple[int, ...]]) -> list[int]:
    """Decide, per crossing, which way its over strand runs.

    0 means the over strand enters at position 3 and leaves at position 1
    (a positive crossing); 1 means the reverse.  Under strands are fixed by
    the format: position 0 in, position 2 out.
    """
    where: dict[int, list[tuple[int, int]]] = {}
    for c, t in enumerate(tuples):
        for pos, label in enumerate(t):
            where.setdefault(label, []).append((c, pos))
    bad = sorted(label for label, occ in where.items() if len(occ) != 2)
    if bad:
        counts = ", ".join(f"{label} x{len(where[label])}" for label in bad[:5])
        raise NonQuadrivalent(f"arc labels must appear exactly twice: {counts}")

    orient: list[int | None] = [None] * len(tuples)

    def is_in(c, pos):
        if pos == 0:
            return True
        if pos == 2:
            return False
        if orient[c] is None:
            return None
        return (pos == 3) == (orient[c] == 0)

    def force(c, pos, want_in):
        # Choose orient[c] so that position pos is an in-position iff want_in.
        value = 0 if (pos == 3) == want_in else 1
        if orient[c] is None:
            orient[c] = value
            return True
        if orient[c] != value:
            raise OrientationConflict(f"crossing {c + 1}: no consistent orientation for its over strand")
        return False

    def propagate(queue):
        while queue:
            c = queue.popleft()
            for pos in range(4):
                label = tuples[c][pos]
                here = is_in(c, pos)
                if here is None:
                    continue
                for oc, opos in where[label]:
                    if (oc, opos) == (c, pos):
                        continue
                    there = is_in(oc, opos)
                    if there is None:
                        if force(oc, opos, not here):
                            queue.append(oc)
                    elif there == here:
                        raise OrientationConflict(
                            f"arc {label} is oriented into (or out of) both of its ends"
                        )

    propagate(deque(range(len(tuples))))
    for c, t in enumerate(tuples):
        if orient[c] is None:
            # Nothing pins this strand; follow the usual label-increment habit.
            b, d = t[1], t[3]
            orient[c] = 0 if (b - d == 1 or d - b > 1) else 1
            propagate(deque([c]))
    # Final consistency sweep (covers labels whose both ends were fixed).
    propagate(deque(range(len(tuples))))
    return orient  # type: ignore[return-value]


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X(a,b,c,d)`` lines.

    Each tuple lists the incident arc labels counterclockwise starting from
    the incoming under-strand.  Crossing ids follow line order; arc ids
    follow sorted label order.
    """
    tuples = _read_pd_tuples(text)
    orient = _orient(tuples)
    labels = sorted({x for t in tuples for x in t})
    arc_id = {label: i for i, label in enumerate(labels)}
    src: dict[int, Endpoint] = {}
    tgt: dict[int, Endpoint] = {}
    signs = []
    for c, (p0, p1, p2, p3) in enumerate(tuples):
        if orient[c] == 0:
            over_in, over_out, s = p3, p1, Sign.POSITIVE
        else:
            over_in, over_out, s = p1, p3, Sign.NEGATIVE
        signs.append(s)
        for label, slot in ((p0, UI), (p2, UO), (over_in, OI), (over_out, OO)):
            (tgt if slot.is_in else src)[arc_id[label]] = (c, slot)
    arcs = tuple(Arc(src[i], tgt[i]) for i in range(len(labels)))
    return LinkDiagram(tuple(signs), arcs)


# -- JSON --------------------------------------------------------------------


def to_json(diagram: LinkDiagram) -> dict:
    return {
        "crossings": [{"id": c, "sign": int(s)} for c, s in enumerate(diagram.signs)],
        "arcs": [
            {
                "id": i,
                "from": [a.source[0], a.source[1].json_name],
                "to": [a.target[0], a.target[1].json_name],
            }
            for i, a in enumerate(diagram.arcs)
        ],
        "free_loops": diagram.free_loops,
    }


def dumps(diagram: LinkDiagram, **extra) -> str:
    doc = to_json(diagram)
    doc.update(extra)
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _parse_sign(value) -> Sign:
    if value in (1, "+", "positive"):
        return Sign.POSITIVE
    if value in (-1, "-", "negative"):
        return Sign.NEGATIVE
    raise InvalidDiagram(f"bad crossing sign {value!r}")


def from_json(doc: dict) -> LinkDiagram:
    try:
        crossings = sorted(doc["crossings"], key=lambda x: x["id"])
        arcs = sorted(doc["arcs"], key=lambda x: x["id"])
        if [x["id"] for x in crossings] != list(range(len(crossings))):
            raise InvalidDiagram("crossing ids must be 0..n-1")
        if [x["id"] for x in arcs] != list(range(len(arcs))):
            raise InvalidDiagram("arc ids must be 0..2n-1")
        signs = tuple(_parse_sign(x["sign"]) for x in crossings)
        arc_objs = tuple(
            Arc(
                (int(x["from"][0]), Slot.from_json(x["from"][1])),
                (int(x["to"][0]), Slot.from_json(x["to"][1])),
            )
            for x in arcs
        )
        free = int(doc.get("free_loops", 0))
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        if isinstance(exc, InvalidDiagram):
            raise
        raise MalformedSyntax(f"bad diagram JSON: {exc}") from None
    return LinkDiagram(signs, arc_objs, free)


def loads(text: str) -> LinkDiagram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedSyntax(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedSyntax("diagram JSON must be an object")
    return from_json(doc)


# -- braid closures ----------------------------------------------------------


def generate_braid_closure(word: Sequence[int], strands: int) -> LinkDiagram:
    """Closure of a braid word.

    ``word`` holds signed generator indices: ``i`` is sigma_i, ``-i`` its
    inverse, acting on strand positions ``i`` and ``i + 1``.  Strands run
    upward; sigma_i carries the left strand over to the right and gives a
    positive crossing.  Untouched positions close into crossingless loops.
    """
    if strands < 2:
        raise BadGeneratorIndex(f"a braid needs at least 2 strands, got {strands}")
    open_src: dict[int, Endpoint] = {}
    first_tgt: dict[int, Endpoint] = {}
    arcs: list[Arc] = []
    signs: list[Sign] = []

    def enter(pos, end):
        if pos in open_src:
            arcs.append(Arc(open_src[pos], end))
        else:
            first_tgt[pos] = end

    for k, g in enumerate(word):
        i = abs(int(g))
        if g == 0 or i > strands - 1:
            raise BadGeneratorIndex(f"generator {g} invalid on {strands} strands")
        positive = g > 0
        left_in, left_out = (OI, OO) if positive else (UI, UO)
        right_in, right_out = (UI, UO) if positive else (OI, OO)
        enter(i, (k, left_in))
        enter(i + 1, (k, right_in))
        open_src[i + 1] = (k, left_out)
        open_src[i] = (k, right_out)
        signs.append(Sign.POSITIVE if positive else Sign.NEGATIVE)

    free = 0
    for pos in range(1, strands + 1):
        if pos in open_src:
            arcs.append(Arc(open_src[pos], first_tgt[pos]))
        else:
            free += 1
    return LinkDiagram(tuple(signs), tuple(arcs), free)


def random_braid_word(strands: int, length: int, rng) -> list[int]:
    """Uniform random word; ``rng`` is a ``random.Random``."""
    return [rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)]


def add_twists(diagram: LinkDiagram, twists: Iterable[tuple[int, int, bool]]) -> LinkDiagram:
    """Insert one-crossing curls.

    Each entry is ``(arc, sign, enter_over)``: a curl of the given sign is
    put on ``arc``, and the strand first meets it on the over role when
    ``enter_over`` is true.  Both choices are realisable in the plane for
    either sign (the loop just turns the other way), and the link type is
    unchanged.  Later entries refer to arc ids of the input diagram.
    """
    arc_list = {i: (a.source, a.target) for i, a in enumerate(diagram.arcs)}
    sign_list = dict(enumerate(diagram.signs))
    next_arc = len(arc_list)
    for arc, s, enter_over in twists:
        c = len(sign_list)
        sign_list[c] = Sign(s)
        src, tgt = arc_list[arc]
        first_in, second_in = (OI, UI) if enter_over else (UI, OI)
        arc_list[arc] = (src, (c, first_in))
        arc_list[next_arc] = ((c, STRAIGHT[first_in]), (c, second_in))
        arc_list[next_arc + 1] = ((c, STRAIGHT[second_in]), tgt)
        next_arc += 2
    return _rebuild(sign_list, arc_list, diagram.free_loops)[0]
