"""Ordered graphs, deletion/contraction, named families and chromatic polynomials.

Vertices are ``1..n``.  The position of an edge in ``OrderedGraph.edges`` is
its order index; that order fixes the signs of the chromatic differential.
Loops ``(u, u)`` and repeated pairs are allowed throughout.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import networkx as nx

from .polynomial import GradedPolynomial

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs, descriptors or edge selections."""


@dataclass(frozen=True)
class OrderedGraph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        normalized = []
        for pair in self.edges:
            u, v = (int(x) for x in pair)
            if u > v:
                u, v = v, u
            if u < 1 or v > self.n:
                raise GraphError(f"edge {{{u},{v}}} has an endpoint outside 1..{self.n}")
            normalized.append((u, v))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def order_index(self, edge_id: int) -> int:
        self._check_edge(edge_id)
        return edge_id

    def _check_edge(self, edge_id: int) -> None:
        if not 0 <= edge_id < len(self.edges):
            raise GraphError(f"edge id {edge_id} out of range 0..{len(self.edges) - 1}")

    def is_loop(self, edge_id: int) -> bool:
        u, v = self.edges[edge_id]
        return u == v

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def find_edge(self, u: int, v: int) -> int:
        """Id of the first edge with endpoints ``{u, v}``."""
        key = (min(u, v), max(u, v))
        for k, pair in enumerate(self.edges):
            if pair == key:
                return k
        raise GraphError(f"no edge {{{u},{v}}} in graph")

    def canonical(self) -> OrderedGraph:
        """Same multigraph with edges in lexicographic order."""
        return OrderedGraph(self.n, tuple(sorted(self.edges)))

    def reordered(self, order: list[int]) -> OrderedGraph:
        """Graph whose k-th edge is ``self.edges[order[k]]``."""
        if sorted(order) != list(range(len(self.edges))):
            raise GraphError("order must be a permutation of the edge ids")
        return OrderedGraph(self.n, tuple(self.edges[k] for k in order))

    def with_edge_last(self, edge_id: int) -> OrderedGraph:
        self._check_edge(edge_id)
        order = [k for k in range(len(self.edges)) if k != edge_id] + [edge_id]
        return self.reordered(order)

    def add_edges(self, pairs) -> OrderedGraph:
        return OrderedGraph(self.n, self.edges + tuple(tuple(p) for p in pairs))

    def simplified(self) -> OrderedGraph:
        """Drop loops and keep the first edge of each parallel class."""
        seen = set()
        kept = []
        for pair in self.edges:
            if pair[0] != pair[1] and pair not in seen:
                seen.add(pair)
                kept.append(pair)
        return OrderedGraph(self.n, tuple(kept))

    def is_connected(self) -> bool:
        return count_components(self.n, self.edges) <= 1

    def has_isolated_vertex(self) -> bool:
        touched = {x for pair in self.edges for x in pair}
        return len(touched) < self.n

    def __str__(self) -> str:
        body = ",".join(f"{u}-{v}" for u, v in self.edges)
        return f"G(n={self.n}; {body})"


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components of the spanning graph ``[G:s]``.

    ``blocks`` are ordered by minimum vertex; ``has_edge[k]`` tells whether
    block ``k`` carries at least one edge of ``s``.
    """

    blocks: tuple[tuple[int, ...], ...]
    has_edge: tuple[bool, ...]

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(block[0] for block in self.blocks)

    @property
    def num_edge_components(self) -> int:
        return sum(self.has_edge)

    @property
    def num_point_components(self) -> int:
        return len(self.blocks) - self.num_edge_components

    def __len__(self) -> int:
        return len(self.blocks)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def count_components(n: int, pairs) -> int:
    parent = list(range(n + 1))
    count = n
    for u, v in pairs:
        ru, rv = _find(parent, u), _find(parent, v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
            count -= 1
    return count


def build_graph(n: int, pairs) -> OrderedGraph:
    """Graph on ``1..n`` with edges sorted lexicographically."""
    graph = OrderedGraph(n, tuple(tuple(p) for p in pairs))
    return graph.canonical()


def complete_graph(n: int) -> OrderedGraph:
    return build_graph(n, combinations(range(1, n + 1), 2))


def cycle_graph(n: int) -> OrderedGraph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return build_graph(n, [(k, k + 1) for k in range(1, n)] + [(1, n)])


def path_graph(n: int) -> OrderedGraph:
    if n < 1:
        raise GraphError("path needs at least 1 vertex")
    return build_graph(n, [(k, k + 1) for k in range(1, n)])


def kpartial(n: int, m: int) -> OrderedGraph:
    """``K_{n-1}`` on ``1..n-1`` plus vertex ``n`` joined to ``1..m``."""
    if n < 2:
        raise GraphError("kpartial needs n >= 2")
    if not 1 <= m <= n - 1:
        raise GraphError(f"kpartial({n}, {m}): m must lie in 1..{n - 1}")
    pairs = list(combinations(range(1, n), 2)) + [(t, n) for t in range(1, m + 1)]
    return build_graph(n, pairs)


def random_connected(n: int, edge_count: int, seed: int) -> OrderedGraph:
    """Seeded random simple connected graph.

    Algorithm: ``rng = random.Random(seed)``; draw a Pruefer sequence of
    length ``n-2`` with ``rng.randint(1, n)`` and decode it into a uniform
    labelled spanning tree; then add ``rng.sample`` of the remaining vertex
    pairs (in lexicographic order) to reach ``edge_count`` edges.
    """
    if n < 1:
        raise GraphError("random graph needs n >= 1")
    max_edges = n * (n - 1) // 2
    if edge_count < n - 1:
        raise GraphError(f"edge_count {edge_count} below n-1 = {n - 1}")
    if edge_count > max_edges:
        raise GraphError(f"edge_count {edge_count} exceeds {max_edges}")
    rng = random.Random(seed)
    tree: list[Edge] = []
    if n == 2:
        tree = [(1, 2)]
    elif n > 2:
        code = [rng.randint(1, n) for _ in range(n - 2)]
        degree = [1] * (n + 1)
        for x in code:
            degree[x] += 1
        for x in code:
            leaf = min(v for v in range(1, n + 1) if degree[v] == 1)
            tree.append((min(leaf, x), max(leaf, x)))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = (w for w in range(1, n + 1) if degree[w] == 1)
        tree.append((u, v))
    used = set(tree)
    rest = [p for p in combinations(range(1, n + 1), 2) if p not in used]
    extra = rng.sample(rest, edge_count - len(tree))
    return build_graph(n, tree + extra)


def read_edge_list(path) -> OrderedGraph:
    """Parse the edge-list format: first line ``n``, then ``u v`` per line."""
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise GraphError(f"{path}: empty edge list")
    try:
        n = int(lines[0])
        pairs = []
        for line in lines[1:]:
            fields = line.split()
            if len(fields) != 2:
                raise GraphError(f"{path}: expected 'u v', got {line!r}")
            pairs.append((int(fields[0]), int(fields[1])))
    except ValueError as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"{path}: {exc}") from exc
    return build_graph(n, pairs)


def _ints(text: str, count: int, name: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",")]
    except ValueError:
        raise GraphError(f"{name}: expected {count} comma-separated integers") from None
    if len(values) != count:
        raise GraphError(f"{name}: expected {count} comma-separated integers")
    return values


def family(descriptor: str) -> OrderedGraph:
    """Build a graph from ``complete:N``, ``cycle:N``, ``path:N``,
    ``kpartial:N,M``, ``random:N,E,SEED`` or ``file:PATH``."""
    kind, sep, arg = descriptor.partition(":")
    if not sep:
        raise GraphError(f"bad graph descriptor {descriptor!r}")
    if kind == "file":
        return read_edge_list(arg)
    if kind == "complete":
        (n,) = _ints(arg, 1, kind)
        return complete_graph(n)
    if kind == "cycle":
        (n,) = _ints(arg, 1, kind)
        return cycle_graph(n)
    if kind == "path":
        (n,) = _ints(arg, 1, kind)
        return path_graph(n)
    if kind == "kpartial":
        n, m = _ints(arg, 2, kind)
        return kpartial(n, m)
    if kind == "random":
        n, e, seed = _ints(arg, 3, kind)
        return random_connected(n, e, seed)
    raise GraphError(f"unknown graph family {kind!r}")


def delete_edge(graph: OrderedGraph, edge_id: int) -> OrderedGraph:
    graph._check_edge(edge_id)
    return OrderedGraph(graph.n, graph.edges[:edge_id] + graph.edges[edge_id + 1:])


def contraction_relabel(n: int, u: int, v: int):
    """Vertex map for identifying ``v`` into ``u < v`` and compacting labels."""

    def relabel(w: int) -> int:
        if w == v:
            return u
        return w - 1 if w > v else w

    return relabel


def contract_edge(graph: OrderedGraph, edge_id: int, mode: str = "multigraph") -> OrderedGraph:
    graph._check_edge(edge_id)
    if mode not in ("multigraph", "simple"):
        raise GraphError(f"unknown contraction mode {mode!r}")
    u, v = graph.edges[edge_id]
    if u == v:
        raise GraphError("cannot contract a loop")
    relabel = contraction_relabel(graph.n, u, v)
    pairs = [
        tuple(sorted((relabel(a), relabel(b))))
        for k, (a, b) in enumerate(graph.edges)
        if k != edge_id
    ]
    result = OrderedGraph(graph.n - 1, tuple(pairs))
    return result.simplified() if mode == "simple" else result


def components(graph: OrderedGraph, s) -> ComponentPartition:
    """Components of ``[G:s]``; ``s`` is an iterable of edge ids or a bitmask."""
    ids = _edge_ids(graph, s)
    parent = list(range(graph.n + 1))
    for k in ids:
        a, b = graph.edges[k]
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for w in range(1, graph.n + 1):
        groups.setdefault(_find(parent, w), []).append(w)
    with_edge = {_find(parent, graph.edges[k][0]) for k in ids}
    roots = sorted(groups)
    return ComponentPartition(
        tuple(tuple(groups[r]) for r in roots),
        tuple(r in with_edge for r in roots),
    )


def _edge_ids(graph: OrderedGraph, s) -> list[int]:
    if isinstance(s, int):
        ids = [k for k in range(graph.num_edges) if s >> k & 1]
        if s >> graph.num_edges:
            raise GraphError("edge subset bitmask has bits beyond the edge count")
        return ids
    ids = sorted(set(s))
    for k in ids:
        graph._check_edge(k)
    return ids


def is_bridge(graph: OrderedGraph, edge_id: int) -> bool:
    graph._check_edge(edge_id)
    if graph.is_loop(edge_id):
        return False
    before = count_components(graph.n, graph.edges)
    after = count_components(graph.n, delete_edge(graph, edge_id).edges)
    return after == before + 1


# -- chromatic polynomial -----------------------------------------------------

_memo_lock = threading.Lock()
_memo: dict[tuple, list[tuple[nx.Graph, GradedPolynomial]]] = {}


def _as_nx(graph: OrderedGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(1, graph.n + 1))
    g.add_edges_from(graph.edges)
    return g


def _lookup(graph: OrderedGraph):
    g = _as_nx(graph)
    key = (graph.n, graph.num_edges, nx.weisfeiler_lehman_graph_hash(g, iterations=3))
    with _memo_lock:
        bucket = list(_memo.get(key, ()))
    for other, poly in bucket:
        if nx.is_isomorphic(g, other):
            return key, g, poly
    return key, g, None


def chromatic_polynomial(graph: OrderedGraph) -> GradedPolynomial:
    """Chromatic polynomial in lambda by memoized deletion-contraction."""
    if graph.has_loop():
        return GradedPolynomial((), "lambda")
    return _chromatic_simple(graph.simplified())


def _chromatic_simple(graph: OrderedGraph) -> GradedPolynomial:
    if not graph.edges:
        return GradedPolynomial.monomial(graph.n, var="lambda")
    key, g, cached = _lookup(graph)
    if cached is not None:
        return cached
    last = graph.num_edges - 1
    poly = _chromatic_simple(delete_edge(graph, last)) - _chromatic_simple(
        contract_edge(graph, last, "simple")
    )
    poly = GradedPolynomial(poly.coeffs, "lambda")
    with _memo_lock:
        bucket = _memo.setdefault(key, [])
        if not any(nx.is_isomorphic(g, other) for other, _ in bucket):
            bucket.append((g, poly))
    return poly
