"""Tree decompositions of crossing graphs.

Greedy elimination (min-degree or min-fill, ties to the smallest vertex)
builds an ordinary decomposition; ``make_nice`` rewrites it into the rooted
leaf/introduce/forget/join form the dynamic program walks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .diagram import DiagramGraph
from .errors import DecompositionError

HEURISTICS = ("min-degree", "min-fill")

# make_nice emits at most NICE_BAG_FACTOR * (width + 1) * |V| + 2 nodes: each
# ordinary bag costs at most one forget and one introduce per vertex plus a join.
NICE_BAG_FACTOR = 4


def _adjacency(graph) -> dict[int, set[int]]:
    if isinstance(graph, DiagramGraph):
        return graph.neighbours()
    return {v: set(nb) - {v} for v, nb in graph.items()}


@dataclass
class TreeDecomposition:
    bags: dict[int, frozenset[int]]
    edges: list[tuple[int, int]]

    @property
    def width(self) -> int:
        return width(self)

    def tree_neighbours(self) -> dict[int, list[int]]:
        nb: dict[int, list[int]] = {i: [] for i in self.bags}
        for x, y in self.edges:
            nb[x].append(y)
            nb[y].append(x)
        return nb

    def to_json(self) -> dict:
        return {
            "bags": {str(k): sorted(v) for k, v in sorted(self.bags.items())},
            "edges": [list(e) for e in self.edges],
        }


def width(td) -> int:
    """Largest bag size minus one."""
    bags = td.bags.values() if isinstance(td, TreeDecomposition) else [n.bag for n in td.nodes]
    bags = list(bags)
    if not bags:
        raise DecompositionError("a tree decomposition needs at least one bag")
    return max(len(b) for b in bags) - 1


# -- construction ------------------------------------------------------------


def elimination_order(graph, heuristic: str = "min-degree") -> list[tuple[int, frozenset[int]]]:
    """Greedy elimination; returns (vertex, neighbourhood at elimination)."""
    if heuristic not in HEURISTICS:
        raise ValueError(f"unknown heuristic {heuristic!r}; expected one of {HEURISTICS}")
    adj = {v: set(nb) for v, nb in _adjacency(graph).items()}
    out = []
    while adj:
        if heuristic == "min-degree":
            v = min(adj, key=lambda u: (len(adj[u]), u))
        else:
            def fill(u):
                nb = sorted(adj[u])
                return sum(1 for i, x in enumerate(nb) for y in nb[i + 1:] if y not in adj[x])
            v = min(adj, key=lambda u: (fill(u), u))
        nb = adj.pop(v)
        for x in nb:
            adj[x].discard(v)
            adj[x].update(nb - {x})
        out.append((v, frozenset(nb)))
    return out


def _contract_subsets(bags: dict, edges: list) -> tuple[dict, list]:
    """Merge any node whose bag is contained in a neighbour's bag."""
    bags = dict(bags)
    nb: dict[int, set[int]] = {i: set() for i in bags}
    for x, y in edges:
        nb[x].add(y)
        nb[y].add(x)
    changed = True
    while changed:
        changed = False
        for x in sorted(bags):
            for y in sorted(nb[x]):
                if bags[x] <= bags[y]:
                    for z in nb.pop(x):
                        nb[z].discard(x)
                        if z != y:
                            nb[z].add(y)
                            nb[y].add(z)
                    del bags[x]
                    changed = True
                    break
            if changed:
                break
    edges = sorted({(min(x, y), max(x, y)) for x in nb for y in nb[x]})
    return bags, edges


def greedy_decomposition(graph, heuristic: str = "min-degree") -> TreeDecomposition:
    """Tree decomposition from a greedy elimination ordering.

    Bag ``i`` is the ``i``-th eliminated vertex with its neighbourhood at
    that moment; its parent is the bag of the earliest-eliminated neighbour.
    Components of a disconnected graph are chained onto the last bag.
    """
    order = elimination_order(graph, heuristic)
    if not order:
        return TreeDecomposition({0: frozenset()}, [])
    step = {v: i for i, (v, _) in enumerate(order)}
    bags = {i: frozenset({v}) | nb for i, (v, nb) in enumerate(order)}
    last = len(order) - 1
    edges = []
    for i, (v, nb) in enumerate(order):
        if nb:
            edges.append((i, min(step[u] for u in nb)))
        elif i != last:
            edges.append((i, last))
    bags, edges = _contract_subsets(bags, edges)
    # Dense node ids keep JSON output and tests simple.
    relabel = {old: new for new, old in enumerate(sorted(bags))}
    return TreeDecomposition(
        {relabel[k]: v for k, v in bags.items()},
        sorted((min(relabel[x], relabel[y]), max(relabel[x], relabel[y])) for x, y in edges),
    )


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # NotATree | MissingVertex | UncoveredEdge | DisconnectedTrace | NotNice
    witness: object
    message: str = ""

    def __str__(self):
        return f"{self.kind}: {self.message or self.witness}"


def _tree_violation(nodes: Iterable[int], edges: list[tuple[int, int]]) -> Violation | None:
    nodes = list(nodes)
    if not nodes:
        return Violation("NotATree", None, "no bags")
    if len(edges) != len(nodes) - 1:
        return Violation("NotATree", len(edges), f"{len(nodes)} nodes but {len(edges)} edges")
    nb: dict[int, list[int]] = {i: [] for i in nodes}
    for x, y in edges:
        if x not in nb or y not in nb:
            return Violation("NotATree", (x, y), "edge to unknown node")
        nb[x].append(y)
        nb[y].append(x)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for y in nb[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(nodes):
        return Violation("NotATree", sorted(set(nodes) - seen)[0], "tree is disconnected")
    return None


def _violations(bags: Mapping[int, frozenset], edges, graph) -> list[Violation]:
    out = []
    bad = _tree_violation(bags, list(edges))
    if bad:
        return [bad]
    adj = _adjacency(graph)
    where: dict[int, list[int]] = {v: [] for v in adj}
    for node, bag in bags.items():
        for v in bag:
            where.setdefault(v, []).append(node)
    for v in sorted(adj):
        if not where[v]:
            out.append(Violation("MissingVertex", v, f"vertex {v} is in no bag"))
    for u in sorted(adj):
        for v in sorted(adj[u]):
            if u < v and where[u] and where[v] and not set(where[u]) & set(where[v]):
                out.append(Violation("UncoveredEdge", (u, v), f"no bag holds both {u} and {v}"))
    nb: dict[int, list[int]] = {i: [] for i in bags}
    for x, y in edges:
        nb[x].append(y)
        nb[y].append(x)
    for v in sorted(where):
        nodes = set(where[v])
        if not nodes:
            continue
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            for y in nb[stack.pop()]:
                if y in nodes and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != nodes:
            out.append(Violation("DisconnectedTrace", v, f"bags holding {v} are not connected"))
    return out


def validate(td: TreeDecomposition, graph) -> list[Violation]:
    """All violated decomposition conditions; empty means valid."""
    return _violations(td.bags, td.edges, graph)


# -- nice decompositions -----------------------------------------------------


class CrossingStatus(Enum):
    UNVISITED = "unvisited"
    CURRENT = "current"
    FORGOTTEN = "forgotten"


LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset[int]
    vertex: int | None = None
    children: tuple[int, ...] = ()


@dataclass
class NiceTreeDecomposition:
    """Rooted nice decomposition; ``nodes`` is in post-order, root last."""

    nodes: list[NiceNode]
    below: list[frozenset[int]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self.below:
            below = []
            for node in self.nodes:
                acc = set(node.bag)
                for ch in node.children:
                    acc |= below[ch]
                below.append(frozenset(acc))
            self.below = below

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return width(self)

    def parent_map(self) -> dict[int, int]:
        return {ch: i for i, node in enumerate(self.nodes) for ch in node.children}

    def forget_nodes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, node in enumerate(self.nodes):
            if node.kind == FORGET:
                out.setdefault(node.vertex, []).append(i)
        return out

    def forgotten(self, node: int) -> frozenset[int]:
        return self.below[node] - self.nodes[node].bag

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "nodes": [
                {
                    "id": i,
                    "type": n.kind,
                    "bag": sorted(n.bag),
                    **({"vertex": n.vertex} if n.vertex is not None else {}),
                    "children": list(n.children),
                }
                for i, n in enumerate(self.nodes)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def status(ntd: NiceTreeDecomposition, node: int, crossing: int) -> CrossingStatus:
    if crossing in ntd.nodes[node].bag:
        return CrossingStatus.CURRENT
    if crossing in ntd.below[node]:
        return CrossingStatus.FORGOTTEN
    return CrossingStatus.UNVISITED


def make_nice(td: TreeDecomposition, graph=None, root: int | None = None) -> NiceTreeDecomposition:
    """Convert ``td`` to nice form, keeping its width.

    ``graph`` is only used to validate the input when given.
    """
    if graph is not None:
        bad = validate(td, graph)
        if bad:
            raise DecompositionError(f"input decomposition invalid: {bad[0]}")
    if not any(td.bags.values()):
        raise DecompositionError("cannot build a nice decomposition of an empty graph")
    tree = td.tree_neighbours()
    if root is None:
        root = max(td.bags)
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex=None, children=()):
        nodes.append(NiceNode(kind, frozenset(bag), vertex, tuple(children)))
        return len(nodes) - 1

    def lift(top: int, bag: frozenset, target: frozenset) -> int:
        for v in sorted(bag - target):
            bag = bag - {v}
            top = add(FORGET, bag, v, (top,))
        for v in sorted(target - bag):
            bag = bag | {v}
            top = add(INTRODUCE, bag, v, (top,))
        return top

    # Iterative post-order over the ordinary tree.
    parent = {root: None}
    order = []
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in sorted(tree[x], reverse=True):
            if y != parent[x]:
                parent[y] = x
                stack.append(y)
    kids: dict[int, list[int]] = {x: [] for x in td.bags}
    for x in order:
        if parent[x] is not None:
            kids[parent[x]].append(x)
    built: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        # Join on the vertices the children share with this bag and
        # introduce the rest afterwards: smaller join bags, smaller tables.
        top, have = None, frozenset()
        for y in sorted(kids[x]):
            child, child_bag = built[y], td.bags[y]
            child = lift(child, child_bag, child_bag & bag)
            child_bag = child_bag & bag
            if top is None:
                top, have = child, child_bag
                continue
            both = have | child_bag
            top = lift(top, have, both)
            child = lift(child, child_bag, both)
            top, have = add(JOIN, both, None, (top, child)), both
        if top is None:
            if not bag:
                raise DecompositionError(f"leaf bag {x} is empty")
            first = min(bag)
            top, have = add(LEAF, {first}, first), frozenset({first})
        built[x] = lift(top, have, bag)
    lift(built[root], td.bags[root], frozenset())
    return NiceTreeDecomposition(nodes)


def nice_violations(ntd: NiceTreeDecomposition, graph) -> list[Violation]:
    """Structural checks for nice form plus the ordinary conditions."""
    out = []
    nodes = ntd.nodes
    if not nodes:
        return [Violation("NotATree", None, "no nodes")]
    if nodes[-1].bag:
        out.append(Violation("NotNice", len(nodes) - 1, "root bag is not empty"))
    parents: dict[int, int] = {}
    for i, n in enumerate(nodes):
        for ch in n.children:
            if ch >= i:
                out.append(Violation("NotNice", i, "children must precede parents"))
            if ch in parents:
                out.append(Violation("NotNice", ch, "node has two parents"))
            parents[ch] = i
        kids = [nodes[ch].bag for ch in n.children]
        if n.kind == LEAF:
            ok = not kids and len(n.bag) == 1 and n.vertex in n.bag
        elif n.kind == JOIN:
            ok = len(kids) == 2 and kids[0] == n.bag == kids[1]
        elif n.kind == INTRODUCE:
            ok = len(kids) == 1 and n.vertex not in kids[0] and n.bag == kids[0] | {n.vertex}
        elif n.kind == FORGET:
            ok = len(kids) == 1 and n.vertex in kids[0] and n.bag == kids[0] - {n.vertex}
        else:
            ok = False
        if not ok:
            out.append(Violation("NotNice", i, f"{n.kind} node {i} is malformed"))
    if len(parents) != len(nodes) - 1:
        out.append(Violation("NotNice", None, "nodes are not a single rooted tree"))
    forgets = ntd.forget_nodes()
    for v in sorted(_adjacency(graph)):
        count = len(forgets.get(v, []))
        if count != 1:
            out.append(Violation("NotNice", v, f"vertex {v} forgotten {count} times"))
    bags = {i: n.bag for i, n in enumerate(nodes)}
    edges = [(ch, i) for i, n in enumerate(nodes) for ch in n.children]
    out.extend(_violations(bags, edges, graph))
    return out


def nice_bag_bound(width_: int, n_vertices: int) -> int:
    return NICE_BAG_FACTOR * (width_ + 1) * n_vertices + 2
