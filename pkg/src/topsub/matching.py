"""Shortest-path decoding graphs and exact minimum-weight perfect matching."""

from __future__ import annotations

import heapq
import itertools
import threading
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import networkx as nx


class ParityError(ValueError):
    """An odd number of defects reached a matching step."""


@dataclass(frozen=True)
class Arc:
    u: int
    v: int
    weight: int
    carrier: int


class DecodingGraph:
    """Checks as nodes, error mechanisms as arcs.

    Every arc carries an id (usually a qubit) that is flipped when the path
    through it is applied.  Shortest paths are computed per source on demand
    and cached; equal-length alternatives resolve to the smaller carrier id.
    """

    def __init__(self, n_nodes: int, arcs: Iterable[tuple[int, int, int] | tuple[int, int, int, int]]):
        self.n_nodes = n_nodes
        built = []
        for a in arcs:
            if len(a) == 3:
                u, v, c = a
                w = 1
            else:
                u, v, w, c = a
            if w < 0:
                raise ValueError("arc weights must be non-negative")
            if not (0 <= u < n_nodes and 0 <= v < n_nodes):
                raise ValueError(f"arc ({u}, {v}) outside the node range")
            built.append(Arc(u, v, int(w), c))
        self.arcs: tuple[Arc, ...] = tuple(built)
        adj: list[list[tuple[int, int, int]]] = [[] for _ in range(n_nodes)]
        for a in self.arcs:
            adj[a.u].append((a.carrier, a.v, a.weight))
            adj[a.v].append((a.carrier, a.u, a.weight))
        for lst in adj:
            lst.sort()
        self._adj = adj
        self._trees: dict[int, tuple[list[float], list[tuple[int, int] | None]]] = {}
        self._lock = threading.Lock()

    def _tree(self, source: int):
        tree = self._trees.get(source)
        if tree is not None:
            return tree
        inf = float("inf")
        dist = [inf] * self.n_nodes
        parent: list[tuple[int, int] | None] = [None] * self.n_nodes
        dist[source] = 0
        heap = [(0, source)]
        done = [False] * self.n_nodes
        while heap:
            d, x = heapq.heappop(heap)
            if done[x]:
                continue
            done[x] = True
            for carrier, y, w in self._adj[x]:
                nd = d + w
                if nd < dist[y] or (nd == dist[y] and not done[y] and parent[y] is not None and carrier < parent[y][1]):
                    dist[y] = nd
                    parent[y] = (x, carrier)
                    heapq.heappush(heap, (nd, y))
        with self._lock:
            self._trees.setdefault(source, (dist, parent))
        return self._trees[source]

    def distance(self, u: int, v: int) -> float:
        return self._tree(u)[0][v]

    def path(self, u: int, v: int) -> list[int]:
        """Carrier ids along the representative shortest path from u to v."""
        dist, parent = self._tree(u)
        if dist[v] == float("inf"):
            raise ValueError(f"nodes {u} and {v} are disconnected")
        out = []
        x = v
        while x != u:
            x, c = parent[x]
            out.append(c)
        out.reverse()
        return out


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[Hashable, Hashable], ...]
    total_weight: float = 0

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


@dataclass
class DefectGraph:
    """Complete graph on the defects, weighted by decoding-graph distance."""

    nodes: list[int]
    weights: dict[tuple[int, int], float] = field(default_factory=dict)

    def weight(self, a, b):
        return self.weights[(a, b) if (a, b) in self.weights else (b, a)]


def build_defect_graph(g: DecodingGraph, defects: Iterable[int]) -> DefectGraph:
    nodes = sorted(set(defects))
    if len(nodes) % 2:
        raise ParityError(f"{len(nodes)} defects cannot be paired")
    weights = {}
    for a, b in itertools.combinations(nodes, 2):
        d = g.distance(a, b)
        if d == float("inf"):
            continue
        weights[(a, b)] = d
    return DefectGraph(nodes, weights)


def _canonical(pairs) -> tuple:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


def min_weight_perfect_matching(dg: DefectGraph, *, greedy: bool = False) -> Matching:
    """Exact minimum-weight perfect matching (blossom algorithm via networkx).

    ``greedy`` repeatedly takes the lightest remaining pair instead; it is
    only there for speed comparisons.
    """
    nodes = dg.nodes
    if len(nodes) % 2:
        raise ParityError(f"{len(nodes)} nodes cannot be perfectly matched")
    if not nodes:
        return Matching((), 0)
    if greedy:
        pairs, used = [], set()
        for (a, b), w in sorted(dg.weights.items(), key=lambda kv: (kv[1], kv[0])):
            if a not in used and b not in used:
                pairs.append((a, b))
                used.update((a, b))
        if len(used) != len(nodes):
            raise ParityError("greedy matching left nodes unpaired")
        return Matching(_canonical(pairs), sum(dg.weight(a, b) for a, b in pairs))
    top = max(dg.weights.values(), default=0) + 1
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    for (a, b), w in sorted(dg.weights.items()):
        graph.add_edge(a, b, weight=top - w)
    mate = nx.max_weight_matching(graph, maxcardinality=True)
    if 2 * len(mate) != len(nodes):
        raise ParityError("defects split into components of odd size")
    pairs = _canonical(mate)
    return Matching(pairs, sum(dg.weight(a, b) for a, b in pairs))


def brute_force_matching(dg: DefectGraph) -> Matching:
    """Exhaustive minimum over all perfect matchings; for checking small instances."""
    nodes = dg.nodes
    if len(nodes) % 2:
        raise ParityError("odd node count")
    best: list = [float("inf"), ()]

    def walk(rest: Sequence, acc: list, total: float):
        if total >= best[0]:
            return
        if not rest:
            best[0], best[1] = total, tuple(acc)
            return
        a = rest[0]
        for j in range(1, len(rest)):
            b = rest[j]
            key = (a, b) if (a, b) in dg.weights else (b, a)
            if key not in dg.weights:
                continue
            acc.append((a, b))
            walk(rest[1:j] + rest[j + 1:], acc, total + dg.weights[key])
            acc.pop()

    walk(list(nodes), [], 0)
    if best[0] == float("inf"):
        raise ParityError("no perfect matching exists")
    return Matching(_canonical(best[1]), best[0])


def matching_to_error(g: DecodingGraph, m: Matching) -> set[int]:
    """Symmetric difference of the carriers on each matched pair's path."""
    out: set[int] = set()
    for a, b in m:
        out.symmetric_difference_update(g.path(a, b))
    return out


def decode_defects(g: DecodingGraph, defects: Iterable[int], *, greedy: bool = False) -> tuple[set[int], Matching]:
    m = min_weight_perfect_matching(build_defect_graph(g, defects), greedy=greedy)
    return matching_to_error(g, m), m
