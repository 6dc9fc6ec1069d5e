"""Dynamic program over a nice tree decomposition.

A configuration at a bag is a flat tuple ``(a1, b1, a2, b2, ...)`` of arc ids:
pair ``i`` is a partial traversal that leaves the bag along ``a_i``, runs
through forgotten crossings only, and re-enters along ``b_i``.  The tuple
order is the order in which those pieces are traversed.  Each table maps
configurations to a ``TriLaurent`` summing the skein-template terms of all
tag assignments to the forgotten crossings that are consistent with it.

Every table entry carries a constant factor ``alpha^-w0 delta^-1`` from
its leaf; joins multiply by ``alpha^w0 delta`` to cancel the duplicate.

Closed components are traversed after every piece, each starting from its
lowest-ranked arc under a tree-based arc ordering.  The forget transition
enforces this, so each partial leaf is counted exactly once.  Tables keep
only configurations that can still reach the root.
"""

from __future__ import annotations

import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from math import factorial

from .diagram import OI, OO, UI, UO, LinkDiagram, Sign, diagram_graph, untwist_and_strip, writhe
from .errors import (
    IntroduceSeesForgottenNeighbor,
    InvalidDiagram,
    LeafHasInternalArc,
    PipelineError,
    WidthBudgetExceeded,
)
from .poly import BiLaurent, TriLaurent, expand_delta
from .treewidth import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    greedy_decomposition,
    make_nice,
    nice_bag_bound,
    nice_violations,
)

PASS, SWITCH, SPLICE = "pass", "switch", "splice"
DEFAULT_WIDTH_BUDGET = 10**7

Config = tuple


class _Context:
    """Diagram data shared by all bag operations of one run."""

    def __init__(
        self,
        diagram: LinkDiagram,
        ntd: NiceTreeDecomposition,
        budget: int | None = None,
        order: list[int] | None = None,
        prune: bool = True,
    ):
        self.diagram = diagram
        self.prune = prune
        if order is None:
            order = tree_arc_order(diagram, ntd)
        self.order = list(order)
        if sorted(self.order) != list(range(diagram.n_arcs)):
            raise PipelineError("arc order must rank every arc exactly once")
        self.rank = {a: r for r, a in enumerate(self.order)}
        self.ntd = ntd
        self.w0 = writhe(diagram)
        self.src = [a.source[0] for a in diagram.arcs]
        self.tgt = [a.target[0] for a in diagram.arcs]
        self.incident: list[list[int]] = [[] for _ in range(diagram.n_crossings)]
        for i, (s, t) in enumerate(zip(self.src, self.tgt)):
            self.incident[s].append(i)
            if t != s:
                self.incident[t].append(i)
        for row in self.incident:
            row.sort()
        self.budget = budget
        self.width = ntd.width
        self.arcs_at = [tuple(row) for row in diagram.slots]
        self.joint_first_over = [self.rank[row[OI]] < self.rank[row[UI]] for row in self.arcs_at]

    def other_end(self, arc: int, crossing: int) -> int:
        return self.tgt[arc] if self.src[arc] == crossing else self.src[arc]

    def check_budget(self, size: int):
        if self.budget is not None and size > self.budget:
            raise WidthBudgetExceeded(
                f"table grew past {self.budget} configurations at decomposition width "
                f"{self.width}; try --heuristic min-fill or raise --width-budget",
                width=self.width,
                table_size=size,
            )

    def current(self, node: int) -> frozenset[int]:
        return self.ntd.nodes[node].bag

    def prefix_ok(self, pos_a: dict, pos_b: dict, length: int, expected: set, crossings) -> bool:
        """``viable`` for a configuration known only up to ``length`` pairs.

        An expected arc not yet placed lands at position ``length`` or
        later, so treating it as exactly ``length`` only misses gaps.
        """
        if not self.prune:
            return True
        for x in crossings:
            ui, uo, oi, oo = self.arcs_at[x]
            iu, io = pos_b.get(ui), pos_b.get(oi)
            if iu is None and io is None:
                continue
            ju, jo = pos_a.get(uo), pos_a.get(oo)
            if None not in (iu, io, ju, jo):
                jfo = self.joint_first_over[x]
                if not (_strands_ok(iu, io, ju, jo, False, jfo) or _strands_ok(iu, io, jo, ju, True, jfo)):
                    return False
                continue
            if ju is None and uo in expected:
                ju = length
            if jo is None and oo in expected:
                jo = length
            straight = _gap_free(iu, ju) and _gap_free(io, jo)
            if not straight and not (_gap_free(iu, jo) and _gap_free(io, ju)):
                return False
        return True

    def viable(self, config: Config, crossings) -> bool:
        """Whether each crossing in ``crossings`` can still be forgotten.

        Only strands whose incoming and continuing pairs are both present
        are checked; a configuration failing this never reaches the root
        (see ``_strands_ok``).
        """
        if not self.prune or not crossings or not config:
            return True
        pos_a = {config[i]: i >> 1 for i in range(0, len(config), 2)}
        pos_b = {config[i]: i >> 1 for i in range(1, len(config), 2)}
        for x in crossings:
            ui, uo, oi, oo = self.arcs_at[x]
            iu, io = pos_b.get(ui), pos_b.get(oi)
            if iu is None and io is None:
                continue
            a_uo, a_oo = pos_a.get(uo), pos_a.get(oo)
            jfo = self.joint_first_over[x]
            if not (_strands_ok(iu, io, a_uo, a_oo, False, jfo)
                    or _strands_ok(iu, io, a_oo, a_uo, True, jfo)):
                return False
        return True


def _gap_free(i, j) -> bool:
    return i is None or j is None or j <= i + 1


def _strands_ok(iu, io, ju, jo, splice, joint_first_over) -> bool:
    """Can the routes under -> pair ``ju``, over -> pair ``jo`` still apply?

    ``None`` marks an arc not yet in the configuration.  A pair holding an
    incoming arc of the crossing keeps that end until the crossing is
    forgotten, and so does a pair starting on an outgoing arc.  Pairs
    strictly between such an end and a later continuation can only fuse
    among themselves, so a forward gap never closes.  A backward
    continuation may still be absorbed through other crossings.
    """
    if ju is not None and ju == io and jo is not None and jo == iu:
        # Both pieces are final: one component through both strands.
        if splice and joint_first_over:
            return False
        return (iu + 1 == io) if joint_first_over else (io + 1 == iu)
    if iu is not None and ju is not None and ju > iu + 1:
        return False
    if io is not None and jo is not None and jo > io + 1:
        return False
    return True


def _accumulate(out: dict, key: Config, terms: dict, shift: tuple[int, int, int], factor: int):
    slot = out.get(key)
    if slot is None:
        slot = out[key] = {}
    da, dz, dd = shift
    for (ea, ez, ed), v in terms.items():
        k = (ea + da, ez + dz, ed + dd)
        s = slot.get(k, 0) + v * factor
        if s:
            slot[k] = s
        else:
            del slot[k]


def _freeze(out: dict) -> dict[Config, TriLaurent]:
    return {k: TriLaurent._wrap(v) for k, v in out.items() if v}


# -- the four bag transitions --------------------------------------------------


def process_leaf(ctx: _Context, node: int) -> dict[Config, TriLaurent]:
    n = ctx.ntd.nodes[node]
    (v,) = n.bag
    for arc in ctx.incident[v]:
        if ctx.other_end(arc, v) == v or ctx.other_end(arc, v) in ctx.ntd.below[node]:
            raise LeafHasInternalArc(f"leaf bag {node}: arc {arc} stays inside the bag")
    return {(): TriLaurent.mono(1, -ctx.w0, 0, -1)}


def process_introduce(ctx: _Context, node: int, child: dict[Config, TriLaurent]) -> dict[Config, TriLaurent]:
    n = ctx.ntd.nodes[node]
    c = n.vertex
    forgotten = ctx.ntd.forgotten(node)
    new_arcs = []
    for arc in ctx.incident[c]:
        other = ctx.other_end(arc, c)
        if other in forgotten:
            raise IntroduceSeesForgottenNeighbor(
                f"introduce bag {node}: crossing {c} meets forgotten crossing {other} via arc {arc}"
            )
        if other in n.bag and other != c:
            new_arcs.append(arc)
    if not new_arcs:
        return dict(child)
    # Insertions can split an adjacency, so every step re-checks the bag.
    bag = n.bag
    out: dict[Config, TriLaurent] = {}
    for config, value in child.items():
        frontier = [config]
        for arc in new_arcs:
            grown = []
            for cfg in frontier:
                for j in range(0, len(cfg) + 1, 2):
                    new = cfg[:j] + (arc, arc) + cfg[j:]
                    if ctx.viable(new, bag):
                        grown.append(new)
            frontier = grown
        for cfg in frontier:
            # Distinct child configurations never produce the same output here.
            out[cfg] = value
        ctx.check_budget(len(out))
    return out


class _Trie:
    """Prefix tree of configurations, one level per pair."""

    __slots__ = ("kids", "value")

    def __init__(self):
        self.kids: dict[tuple[int, int], _Trie] = {}
        self.value: TriLaurent | None = None

    @classmethod
    def build(cls, table: dict[Config, TriLaurent]) -> "_Trie":
        root = cls()
        for cfg, value in table.items():
            t = root
            for i in range(0, len(cfg), 2):
                key = (cfg[i], cfg[i + 1])
                nxt = t.kids.get(key)
                if nxt is None:
                    nxt = t.kids[key] = cls()
                t = nxt
            t.value = value
        return root


def process_join(
    ctx: _Context, node: int, left: dict[Config, TriLaurent], right: dict[Config, TriLaurent]
) -> dict[Config, TriLaurent]:
    """Merge every left and right configuration that agree on the shared
    trivial pairs, in every order that keeps each side's sequence.

    The merge walks both tables as prefix trees at once and drops a prefix
    as soon as it can no longer be completed, so shared prefixes are merged
    only once.
    """
    bag = ctx.current(node)
    expected = set()
    for table in (left, right):
        for cfg in table:
            expected.update(cfg[0::2])
            break
    out: dict = {}
    shift = (ctx.w0, 0, 1)
    pos_a: dict[int, int] = {}
    pos_b: dict[int, int] = {}
    prefix: list[int] = []

    def place(pair, ln, rn):
        a, b = pair
        at = len(prefix) >> 1
        pos_a[a] = at
        pos_b[b] = at
        prefix.extend(pair)
        if ctx.prefix_ok(pos_a, pos_b, at + 1, expected, bag):
            walk(ln, rn)
        del prefix[-2:]
        del pos_a[a]
        del pos_b[b]

    def walk(ln: _Trie, rn: _Trie):
        if ln.value is not None and rn.value is not None:
            _accumulate(out, tuple(prefix), (ln.value * rn.value)._terms, shift, 1)
            return
        for pair, nxt in ln.kids.items():
            if pair[0] == pair[1]:
                # Shared trivial pair: both sides take it together.
                other = rn.kids.get(pair)
                if other is not None:
                    place(pair, nxt, other)
            else:
                place(pair, nxt, rn)
        for pair, nxt in rn.kids.items():
            if pair[0] != pair[1]:
                place(pair, ln, nxt)

    walk(_Trie.build(left), _Trie.build(right))
    ctx.check_budget(len(out))
    return _freeze(out)


def _pair_index(config: Config, arc: int, side: int) -> int:
    for i in range(side, len(config), 2):
        if config[i] == arc:
            return i // 2
    raise PipelineError(f"arc {arc} missing from configuration {config}")


def forget_options(ctx: _Context, c: int, config: Config):
    """Yield ``(tag, new_config, (alpha, z, delta) shift, coefficient)``.

    Each strand through ``c`` either fuses two adjacent pairs or closes a
    pair into a component.  Closed components are traversed after every
    segment, starting from their lowest-ranked arc, which is always an arc
    into ``c``; so a child configuration contributes only if its closing
    pairs sit at the very end in that traversal order.  This makes the map
    from (child configuration, tag) to parent partial leaves one-to-one.
    """
    d = ctx.diagram
    row = d.slots[c]
    s = d.signs[c]
    u = len(config) // 2
    b_under = _pair_index(config, row[UI], 1)
    b_over = _pair_index(config, row[OI], 1)
    for tag, routes in (
        (PASS, ((UI, UO), (OI, OO))),
        (SWITCH, ((UI, UO), (OI, OO))),
        (SPLICE, ((UI, OO), (OI, UO))),
    ):
        (ui, uo), (oi, oo) = routes
        j_under = _pair_index(config, row[uo], 0)
        j_over = _pair_index(config, row[oo], 0)
        if j_under == b_over and j_over == b_under and b_under != b_over:
            # Both strands close into one component.  Its traversal starts
            # on the lower-ranked incoming arc, whose pair must come last.
            first_over = ctx.rank[row[OI]] < ctx.rank[row[UI]]
            last = b_over if first_over else b_under
            other = b_under if first_over else b_over
            if (other, last) != (u - 2, u - 1):
                continue
            pairs = [(i, i) for i in range(u - 2)]
            closed = 1
        else:
            closes_under = j_under == b_under
            closes_over = j_over == b_over
            closing = sorted(i for i, flag in ((b_under, closes_under), (b_over, closes_over)) if flag)
            if closing and closing != list(range(u - len(closing), u)):
                continue
            if closes_under and closes_over:
                # Separate loops: the one holding the lower-ranked arc first.
                want = sorted((b_under, b_over), key=lambda i: ctx.rank[config[2 * i + 1]])
                if want != closing:
                    continue
            # Fuse along the non-closing strands; each needs j == i + 1.
            links = {}
            ok = True
            for closes, i, j in ((closes_under, b_under, j_under), (closes_over, b_over, j_over)):
                if closes:
                    continue
                if j != i + 1:
                    ok = False
                    break
                links[i] = j
            if not ok:
                continue
            dropped = set(closing) | set(links.values())
            pairs = []
            for i in range(u):
                if i in dropped:
                    continue
                k = i
                while k in links:
                    k = links[k]
                pairs.append((i, k))
            closed = len(closing)
            first_over = b_over < b_under
        if (tag == PASS) != first_over:
            continue
        new_cfg = tuple(x for i, k in pairs for x in (config[2 * i], config[2 * k + 1]))
        if tag == SPLICE:
            shift, coeff = (0, 1, closed), (-1 if s == Sign.NEGATIVE else 1)
        elif tag == PASS:
            shift, coeff = (int(s), 0, closed), 1
        else:
            shift, coeff = (-int(s), 0, closed), 1
        yield tag, new_cfg, shift, coeff


def process_forget(ctx: _Context, node: int, child: dict[Config, TriLaurent]) -> dict[Config, TriLaurent]:
    c = ctx.ntd.nodes[node].vertex
    out: dict = {}
    for config, value in child.items():
        terms = value._terms
        for _tag, new_cfg, shift, coeff in forget_options(ctx, c, config):
            _accumulate(out, new_cfg, terms, shift, coeff)
        ctx.check_budget(len(out))
    return _freeze(out)


# -- checks ------------------------------------------------------------------


def check_no_forgotten_unvisited_arc(ctx: _Context, node: int):
    below = ctx.ntd.below[node]
    bag = ctx.ntd.nodes[node].bag
    for arc, (s, t) in enumerate(zip(ctx.src, ctx.tgt)):
        fs, ft = s in below and s not in bag, t in below and t not in bag
        us, ut = s not in below, t not in below
        if (fs and ut) or (ft and us):
            raise PipelineError(f"bag {node}: arc {arc} joins a forgotten and an unvisited crossing")


def configuration_violation(ctx: _Context, node: int, config: Config) -> str | None:
    """Why ``config`` is not a configuration at ``node``, or None."""
    bag = ctx.ntd.nodes[node].bag
    seen = ctx.ntd.below[node]
    a_need = sorted(i for i, (s, t) in enumerate(zip(ctx.src, ctx.tgt)) if s in bag and t in seen)
    b_need = sorted(i for i, (s, t) in enumerate(zip(ctx.src, ctx.tgt)) if t in bag and s in seen)
    if len(config) % 2:
        return "odd length"
    if sorted(config[0::2]) != a_need:
        return f"outgoing arcs {sorted(config[0::2])} != {a_need}"
    if sorted(config[1::2]) != b_need:
        return f"incoming arcs {sorted(config[1::2])} != {b_need}"
    for i in range(0, len(config), 2):
        a = config[i]
        if ctx.tgt[a] in bag and config[i + 1] != a:
            return f"arc {a} between current crossings is not a trivial pair"
    return None


# -- orderings -----------------------------------------------------------------


def tree_arc_order(
    diagram: LinkDiagram,
    ntd: NiceTreeDecomposition,
    right_first: bool = False,
    reverse_ties: bool = False,
) -> list[int]:
    """Arc ids ranked by a depth-first pre-order of their heads' forget bags.

    ``right_first`` visits the second child of each join first and
    ``reverse_ties`` orders arcs sharing a forget bag by descending id; every
    combination is a valid tree-based ordering.
    """
    heads: dict[int, list[int]] = {}
    for i, a in enumerate(diagram.arcs):
        heads.setdefault(a.target[0], []).append(i)
    order = []
    stack = [ntd.root]
    while stack:
        i = stack.pop()
        node = ntd.nodes[i]
        if node.kind == FORGET:
            order.extend(sorted(heads.get(node.vertex, []), reverse=reverse_ties))
        kids = list(node.children)
        if not right_first:
            kids.reverse()
        stack.extend(kids)
    return order


def is_tree_based(order: list[int], diagram: LinkDiagram, ntd: NiceTreeDecomposition) -> bool:
    """Check both tree-based ordering conditions by brute force."""
    forget = {n.vertex: i for i, n in enumerate(ntd.nodes) if n.kind == FORGET}
    parent = ntd.parent_map()

    def ancestors(i):
        out = []
        while i in parent:
            i = parent[i]
            out.append(i)
        return out

    bag_of = [forget[a.target[0]] for a in diagram.arcs]
    rank = {a: r for r, a in enumerate(order)}
    anc = {b: set(ancestors(b)) for b in set(bag_of)}
    for x in range(diagram.n_arcs):
        for y in range(diagram.n_arcs):
            bx, by = bag_of[x], bag_of[y]
            if by in anc[bx] and not rank[y] < rank[x]:
                return False
    # Subtree contiguity: arcs whose bag lies under any node form a block.
    under: dict[int, list[int]] = {}
    for a, b in enumerate(bag_of):
        for node in [b] + ancestors(b):
            under.setdefault(node, []).append(rank[a])
    return all(max(r) - min(r) + 1 == len(r) for r in under.values())


# -- pipeline ------------------------------------------------------------------


@dataclass
class FptRun:
    polynomial: BiLaurent
    raw: TriLaurent | None = None
    width: int = -1
    bags: int = 0
    configs_per_bag: list[int] = field(default_factory=list)
    bag_kinds: list[str] = field(default_factory=list)
    bag_sizes: list[int] = field(default_factory=list)
    twists_removed: int = 0
    zero_components: int = 0
    order: list[int] = field(default_factory=list)
    wall_ms: float = 0.0

    @property
    def peak_configs(self) -> int:
        return max(self.configs_per_bag, default=0)

    @property
    def total_configs(self) -> int:
        return sum(self.configs_per_bag)


def dp_stats(run: FptRun) -> dict:
    return {
        "width": run.width,
        "bags": run.bags,
        "peak_configs": run.peak_configs,
        "total_configs": run.total_configs,
        "wall_ms": round(run.wall_ms, 3),
        "twists_removed": run.twists_removed,
        "zero_components": run.zero_components,
    }


def lemma_bound(bag_size: int) -> int:
    return factorial(2 * bag_size) ** 2


def run_dp(
    diagram: LinkDiagram,
    ntd: NiceTreeDecomposition,
    width_budget: int | None = DEFAULT_WIDTH_BUDGET,
    threads: int = 1,
    debug: bool = False,
    order: list[int] | None = None,
    prune: bool = True,
) -> tuple[TriLaurent, list[int]]:
    """Evaluate every bag; return the root evaluation and per-bag table sizes.

    ``diagram`` must be loop-free and ``ntd`` a nice decomposition of its
    graph; ``order`` is a tree-based arc ordering (default
    ``tree_arc_order``).  ``prune`` drops configurations that provably
    never reach the root; turning it off keeps every configuration.  The
    root evaluation still has the symbolic delta.
    """
    ctx = _Context(diagram, ntd, width_budget, order, prune)
    nodes = ntd.nodes
    sizes = [0] * len(nodes)
    tables: list[dict | None] = [None] * len(nodes)
    parent = ntd.parent_map()

    def process(i):
        node = nodes[i]
        check_no_forgotten_unvisited_arc(ctx, i)
        if node.kind == LEAF:
            table = process_leaf(ctx, i)
        elif node.kind == INTRODUCE:
            table = process_introduce(ctx, i, tables[node.children[0]])
        elif node.kind == FORGET:
            table = process_forget(ctx, i, tables[node.children[0]])
        elif node.kind == JOIN:
            table = process_join(ctx, i, tables[node.children[0]], tables[node.children[1]])
        else:
            raise PipelineError(f"unknown node kind {node.kind!r}")
        if len(table) > lemma_bound(len(node.bag)):
            raise PipelineError(f"bag {i}: {len(table)} configurations exceed (2|bag|)!^2")
        if debug:
            for cfg in table:
                why = configuration_violation(ctx, i, cfg)
                if why:
                    raise PipelineError(f"bag {i}: bad configuration {cfg}: {why}")
        return table

    def finish(i, table):
        tables[i] = table
        sizes[i] = len(table)
        for ch in nodes[i].children:
            tables[ch] = None

    if threads <= 1:
        for i in range(len(nodes)):
            finish(i, process(i))
    else:
        waiting = [len(n.children) for n in nodes]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            running = {pool.submit(process, i): i for i, n in enumerate(nodes) if not n.children}
            while running:
                done, _ = wait(running, return_when=FIRST_COMPLETED)
                for fut in sorted(done, key=running.__getitem__):
                    i = running.pop(fut)
                    finish(i, fut.result())
                    p = parent.get(i)
                    if p is not None:
                        waiting[p] -= 1
                        if waiting[p] == 0:
                            running[pool.submit(process, p)] = p

    root = tables[ntd.root]
    if root is None or set(root) - {()}:
        raise PipelineError(f"root table should hold only the empty configuration, got {root and list(root)}")
    value = root.get((), TriLaurent.zero())
    low = value.min_exponent(2)
    if low is not None and low < 0:
        raise PipelineError("negative delta exponent at the root")
    return value, sizes


def decompose(diagram: LinkDiagram, heuristic: str = "min-degree") -> NiceTreeDecomposition:
    graph = diagram_graph(diagram)
    td = greedy_decomposition(graph, heuristic)
    ntd = make_nice(td)
    if len(ntd.nodes) > nice_bag_bound(ntd.width, diagram.n_crossings):
        raise PipelineError("nice decomposition is larger than the documented bound")
    return ntd


def run_fpt(
    diagram: LinkDiagram,
    heuristic: str = "min-degree",
    width_budget: int | None = DEFAULT_WIDTH_BUDGET,
    threads: int = 1,
    debug: bool = False,
    ntd: NiceTreeDecomposition | None = None,
    order: list[int] | None = None,
    prune: bool = True,
) -> FptRun:
    """Full pipeline: untwist, decompose, run the DP, expand delta.

    A supplied ``ntd`` (and ``order``) must refer to the untwisted diagram.
    """
    start = time.perf_counter()
    stripped, twists, zero = untwist_and_strip(diagram)
    if stripped.is_empty():
        if zero == 0:
            raise InvalidDiagram("the empty link has no HOMFLY-PT polynomial")
        raw = TriLaurent.mono(1, 0, 0, zero - 1)
        return FptRun(expand_delta(raw), raw, twists_removed=twists, zero_components=zero,
                      wall_ms=(time.perf_counter() - start) * 1e3)
    if ntd is None:
        ntd = decompose(stripped, heuristic)
    if debug:
        bad = nice_violations(ntd, diagram_graph(stripped))
        if bad:
            raise PipelineError(f"decomposition is not nice: {bad[0]}")
    if order is None:
        order = tree_arc_order(stripped, ntd)
    value, sizes = run_dp(stripped, ntd, width_budget, threads, debug, order, prune)
    raw = value.shift((0, 0, zero))
    return FptRun(
        polynomial=expand_delta(raw),
        raw=raw,
        width=ntd.width,
        bags=len(ntd.nodes),
        configs_per_bag=sizes,
        bag_kinds=[n.kind for n in ntd.nodes],
        bag_sizes=[len(n.bag) for n in ntd.nodes],
        twists_removed=twists,
        zero_components=zero,
        order=list(order),
        wall_ms=(time.perf_counter() - start) * 1e3,
    )


def homfly_fpt(diagram: LinkDiagram, **options) -> BiLaurent:
    """HOMFLY-PT polynomial by dynamic programming over a tree decomposition."""
    return run_fpt(diagram, **options).polynomial
