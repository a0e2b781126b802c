"""Enhanced states and the bigraded chromatic chain complex over Z[x]/(x^2).

An enhanced state is an edge subset ``s`` (bitmask over edge ids) together
with a coloring bitmask over the components of ``[G:s]``, components being
ordered by their minimum vertex; a set bit means the component is colored
``x``.  ``i(S) = #s`` and ``j(S)`` is the number of set coloring bits.
"""

from __future__ import annotations

import os
import re
import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .graphs import GraphError, OrderedGraph
from .sparse import SparseIntegerMatrix

HARD_EDGE_CAP = 64
DEFAULT_MAX_EDGES = 20


class ResourceCapExceeded(RuntimeError):
    """The graph is larger than the configured computation cap."""


def default_max_edges() -> int:
    value = os.environ.get("CHROMA_MAX_EDGES")
    if value:
        try:
            return min(int(value), HARD_EDGE_CAP)
        except ValueError:
            raise ResourceCapExceeded(f"CHROMA_MAX_EDGES={value!r} is not an integer") from None
    return DEFAULT_MAX_EDGES


def check_cap(graph: OrderedGraph, max_edges: int | None = None) -> None:
    limit = default_max_edges() if max_edges is None else min(max_edges, HARD_EDGE_CAP)
    if graph.num_edges > limit:
        raise ResourceCapExceeded(
            f"graph has {graph.num_edges} edges, above the cap of {limit} "
            "(raise it with --max-edges or CHROMA_MAX_EDGES)"
        )


@dataclass(frozen=True, order=True)
class EnhancedState:
    s: int
    coloring: int

    @property
    def i(self) -> int:
        return self.s.bit_count()

    @property
    def j(self) -> int:
        return self.coloring.bit_count()

    def edge_ids(self) -> list[int]:
        return [k for k in range(self.s.bit_length()) if self.s >> k & 1]


@dataclass(frozen=True)
class ChainBasis:
    i: int
    j: int
    states: tuple[EnhancedState, ...]
    index: dict

    def __len__(self) -> int:
        return len(self.states)


class ChainComplex:
    """Lazily built bases and differentials of one ordered graph."""

    def __init__(self, graph: OrderedGraph):
        if graph.num_edges > HARD_EDGE_CAP:
            raise ResourceCapExceeded(
                f"graph has {graph.num_edges} edges; bitset states support at most {HARD_EDGE_CAP}"
            )
        self.graph = graph
        self._labels: dict[int, tuple[tuple[int, ...], int]] = {}
        self._subsets: dict[int, list[tuple[int, int]]] = {}
        self._bases: dict[tuple[int, int], ChainBasis] = {}
        self._diffs: dict[tuple[int, int], SparseIntegerMatrix] = {}
        self._lock = threading.Lock()

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges

    def partition(self, s: int) -> tuple[tuple[int, ...], int]:
        """Component label of every vertex (index 0 unused) and the count."""
        cached = self._labels.get(s)
        if cached is not None:
            return cached
        n = self.graph.n
        parent = list(range(n + 1))
        edges = self.graph.edges
        t = s
        while t:
            low = t & -t
            k = low.bit_length() - 1
            t ^= low
            a, b = edges[k]
            while parent[a] != a:
                a = parent[a]
            while parent[b] != b:
                b = parent[b]
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
        labels = [0] * (n + 1)
        roots: dict[int, int] = {}
        for w in range(1, n + 1):
            r = w
            while parent[r] != r:
                r = parent[r]
            if r not in roots:
                roots[r] = len(roots)
            labels[w] = roots[r]
        result = (tuple(labels), len(roots))
        self._labels[s] = result
        return result

    def subsets(self, i: int) -> list[tuple[int, int]]:
        """``(s, component count)`` for every edge subset of size ``i``."""
        cached = self._subsets.get(i)
        if cached is not None:
            return cached
        out = []
        for ids in combinations(range(self.num_edges), i):
            s = 0
            for k in ids:
                s |= 1 << k
            out.append((s, self.partition(s)[1]))
        out.sort()
        with self._lock:
            return self._subsets.setdefault(i, out)

    def basis(self, i: int, j: int) -> ChainBasis:
        key = (i, j)
        cached = self._bases.get(key)
        if cached is not None:
            return cached
        states = []
        if 0 <= i <= self.num_edges and j >= 0:
            for s, d in self.subsets(i):
                if d < j:
                    continue
                colorings = []
                for bits in combinations(range(d), j):
                    c = 0
                    for b in bits:
                        c |= 1 << b
                    colorings.append(c)
                colorings.sort()
                states.extend(EnhancedState(s, c) for c in colorings)
        basis = ChainBasis(i, j, tuple(states), {st: k for k, st in enumerate(states)})
        with self._lock:
            return self._bases.setdefault(key, basis)

    def add_edge(self, state: EnhancedState, e: int) -> EnhancedState | None:
        """``S u e`` with the merged component colored by the product, or None for x*x."""
        s, c = state.s, state.coloring
        if s >> e & 1:
            raise GraphError(f"edge {e} already in the state")
        labels, _ = self.partition(s)
        u, v = self.graph.edges[e]
        a, b = labels[u], labels[v]
        if a == b:
            return EnhancedState(s | 1 << e, c)
        if a > b:
            a, b = b, a
        xa, xb = c >> a & 1, c >> b & 1
        if xa and xb:
            return None
        merged = (c & ((1 << b) - 1)) | ((c >> (b + 1)) << b)
        if xb:
            merged |= 1 << a
        return EnhancedState(s | 1 << e, merged)

    @staticmethod
    def sign(s: int, e: int) -> int:
        """``(-1)^n(e)`` with ``n(e)`` the number of edges of ``s`` ordered before ``e``."""
        return -1 if (s & ((1 << e) - 1)).bit_count() & 1 else 1

    def boundary(self, state: EnhancedState) -> dict[EnhancedState, int]:
        out: dict[EnhancedState, int] = {}
        for e in range(self.num_edges):
            if state.s >> e & 1:
                continue
            target = self.add_edge(state, e)
            if target is not None:
                out[target] = out.get(target, 0) + self.sign(state.s, e)
        return {k: v for k, v in out.items() if v}

    def differential(self, i: int, j: int) -> SparseIntegerMatrix:
        """Matrix of ``d^{i,j}: C^{i,j} -> C^{i+1,j}`` in the canonical bases."""
        key = (i, j)
        cached = self._diffs.get(key)
        if cached is not None:
            return cached
        source = self.basis(i, j)
        target = self.basis(i + 1, j)
        index = target.index
        edges = self.graph.edges
        num_edges = self.num_edges
        columns = []
        for state in source.states:
            s, c = state.s, state.coloring
            labels, _ = self.partition(s)
            col: dict[int, int] = {}
            parity = 0
            for e in range(num_edges):
                if s >> e & 1:
                    parity ^= 1
                    continue
                u, v = edges[e]
                a, b = labels[u], labels[v]
                if a == b:
                    new_c = c
                else:
                    if a > b:
                        a, b = b, a
                    xb = c >> b & 1
                    if xb and c >> a & 1:
                        continue
                    new_c = (c & ((1 << b) - 1)) | ((c >> (b + 1)) << b)
                    if xb:
                        new_c |= 1 << a
                row = index[EnhancedState(s | 1 << e, new_c)]
                w = col.get(row, 0) + (-1 if parity else 1)
                if w:
                    col[row] = w
                else:
                    del col[row]
            columns.append(col)
        mat = SparseIntegerMatrix(len(target), len(source), columns)
        with self._lock:
            return self._diffs.setdefault(key, mat)

    def max_j(self) -> int:
        return self.graph.n

    def gradings(self):
        """All ``(i, j)`` with a nonempty chain group."""
        for i in range(self.num_edges + 1):
            for j in range(self.graph.n + 1):
                if len(self.basis(i, j)):
                    yield i, j


@lru_cache(maxsize=64)
def chain_complex(graph: OrderedGraph) -> ChainComplex:
    return ChainComplex(graph)


def enumerate_basis(graph: OrderedGraph, i: int, j: int) -> ChainBasis:
    return chain_complex(graph).basis(i, j)


def add_edge_to_state(graph: OrderedGraph, state: EnhancedState, e: int) -> EnhancedState | None:
    return chain_complex(graph).add_edge(state, e)


def differential_matrix(graph: OrderedGraph, i: int, j: int) -> SparseIntegerMatrix:
    return chain_complex(graph).differential(i, j)


def basis_size_formula(graph: OrderedGraph, i: int, j: int) -> int:
    """``sum over |s| = i of binomial(d(s), j)``."""
    return sum(comb(d, j) for _, d in chain_complex(graph).subsets(i))


def two_step_sign_check(graph: OrderedGraph, state: EnhancedState, e: int, f: int) -> bool:
    """Adding ``e`` then ``f`` carries the opposite sign of adding ``f`` then ``e``."""
    if e == f:
        raise GraphError("two_step_sign_check needs distinct edges")
    cx = chain_complex(graph)
    sign = cx.sign
    ef = sign(state.s, e) * sign(state.s | 1 << e, f)
    fe = sign(state.s, f) * sign(state.s | 1 << f, e)
    return ef == -fe


def state_components(graph: OrderedGraph, state: EnhancedState):
    """``(vertex list, edge ids, is_x)`` per component, ordered by minimum vertex."""
    labels, d = chain_complex(graph).partition(state.s)
    verts: list[list[int]] = [[] for _ in range(d)]
    for w in range(1, graph.n + 1):
        verts[labels[w]].append(w)
    edge_lists: list[list[int]] = [[] for _ in range(d)]
    for k in state.edge_ids():
        edge_lists[labels[graph.edges[k][0]]].append(k)
    return [(verts[k], edge_lists[k], bool(state.coloring >> k & 1)) for k in range(d)]


def format_state(graph: OrderedGraph, state: EnhancedState) -> str:
    """Debug form such as ``x:{1-2,1-3,2-3} | {4-6} | x:{5}``."""
    parts = []
    for verts, edge_ids, is_x in state_components(graph, state):
        if edge_ids:
            body = ",".join(f"{graph.edges[k][0]}-{graph.edges[k][1]}" for k in edge_ids)
        else:
            body = str(verts[0])
        parts.append(("x:" if is_x else "") + "{" + body + "}")
    return " | ".join(parts)


_BLOCK = re.compile(r"^(x:)?\{([^}]*)\}$")


def parse_state(graph: OrderedGraph, text: str) -> EnhancedState:
    """Inverse of :func:`format_state`."""
    s = 0
    x_vertices = []
    for block in text.split("|"):
        m = _BLOCK.match(block.strip())
        if not m:
            raise GraphError(f"bad state block {block!r}")
        body = m.group(2).strip()
        if "-" in body:
            first = None
            for item in body.split(","):
                u, v = (int(t) for t in item.split("-"))
                key = (min(u, v), max(u, v))
                k = next(
                    (k for k, pair in enumerate(graph.edges) if pair == key and not s >> k & 1),
                    None,
                )
                if k is None:
                    raise GraphError(f"no unused edge {u}-{v} in graph")
                s |= 1 << k
                first = key[0] if first is None else first
            anchor = first
        else:
            anchor = int(body)
        if m.group(1):
            x_vertices.append(anchor)
    labels, _ = chain_complex(graph).partition(s)
    coloring = 0
    for w in x_vertices:
        coloring |= 1 << labels[w]
    return EnhancedState(s, coloring)
