"""Explicit cocycle families for ``K_{n-1}^m`` and their verification.

Two kinds of summed vectors appear, both attached to a base edge set:

* the boundary family ``sum_e (-1)^n(e) (z u e)`` of a base state ``z``
  (merging multiplies colors, so x*x terms vanish); this is ``d z``;
* the frame family: for a forest ``F`` whose components are induced
  subgraphs, all colored x, ``sum_e (-1)^n(e) (F u e)`` where the
  component through ``e`` is left unmarked.  These are the cycles that are
  not boundaries on the sub-top diagonal.

Verification checks membership, the rational rank against the nullity of
the differential, and the index of the integer span in the kernel lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graphs import GraphError, OrderedGraph, kpartial
from .reports import Case, Report
from .smith import smith_normal_form
from .sparse import SparseIntegerMatrix
from .states import EnhancedState, chain_complex, format_state


@dataclass(frozen=True)
class JoinClosure:
    """Full subgraph and join closures relative to a host graph (edge bitmasks)."""

    graph: OrderedGraph

    def vertices(self, edges: int) -> set[int]:
        return {w for k, pair in enumerate(self.graph.edges) if edges >> k & 1 for w in pair}

    def full_subgraph(self, vertices) -> int:
        vs = set(vertices)
        mask = 0
        for k, (a, b) in enumerate(self.graph.edges):
            if a in vs and b in vs:
                mask |= 1 << k
        return mask

    def closure(self, edges: int) -> int:
        """``F_E``: all host edges among the vertices touched by ``E``."""
        return self.full_subgraph(self.vertices(edges))

    def join(self, first, second) -> int:
        """``E1 ^ E2``: both sets plus every host edge between their vertex sets.

        Either side may be an edge bitmask or a set of vertices (a point component).
        """
        va = self.vertices(first) if isinstance(first, int) else set(first)
        vb = self.vertices(second) if isinstance(second, int) else set(second)
        mask = (first if isinstance(first, int) else 0) | (second if isinstance(second, int) else 0)
        for k, (a, b) in enumerate(self.graph.edges):
            if (a in va and b in vb) or (a in vb and b in va):
                mask |= 1 << k
        return mask


def full_subgraph(graph: OrderedGraph, vertices) -> int:
    return JoinClosure(graph).full_subgraph(vertices)


def join(graph: OrderedGraph, first, second) -> int:
    return JoinClosure(graph).join(first, second)


@dataclass
class GeneratorFamily:
    graph: OrderedGraph
    i: int
    j: int
    vectors: list[dict[int, int]] = field(default_factory=list)
    kinds: list[str] = field(default_factory=list)
    bases: list[EnhancedState | None] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.vectors)

    def add(self, vec: dict[int, int], kind: str, base: EnhancedState | None = None) -> None:
        if not vec:
            return
        key = tuple(sorted(vec.items()))
        if key in self._seen():
            return
        self._keys.add(key)
        self.vectors.append(vec)
        self.kinds.append(kind)
        self.bases.append(base)

    def _seen(self) -> set:
        if not hasattr(self, "_keys"):
            self._keys = {tuple(sorted(v.items())) for v in self.vectors}
        return self._keys

    def count(self, kind: str) -> int:
        return self.kinds.count(kind)

    def dump(self) -> list[str]:
        """Each vector as a signed sum of states in the debug format."""
        basis = chain_complex(self.graph).basis(self.i, self.j)
        lines = []
        for vec, kind in zip(self.vectors, self.kinds):
            terms = " ".join(
                f"{'+' if v > 0 else '-'}{abs(v) if abs(v) != 1 else ''}[{format_state(self.graph, basis.states[k])}]"
                for k, v in sorted(vec.items())
            )
            lines.append(f"{kind}: {terms}")
        return lines


def kpartial_params(graph: OrderedGraph) -> tuple[int, int]:
    """``(n, m)`` with ``graph`` equal to ``kpartial(n, m)`` up to edge order."""
    n = graph.n
    if n < 4:
        raise GraphError("cocycle families need kpartial(n, m) with n >= 4")
    m = sum(1 for a, b in graph.edges if b == n)
    if not 1 <= m <= n - 1 or graph.canonical() != kpartial(n, m).canonical():
        raise GraphError("cocycle families are defined for kpartial(n, m) only")
    return n, m


def _all_x(d: int) -> int:
    return (1 << d) - 1


def _matchings(graph: OrderedGraph, size: int):
    for ids in combinations(range(graph.num_edges), size):
        used = [w for k in ids for w in graph.edges[k]]
        if len(set(used)) == 2 * size:
            yield sum(1 << k for k in ids)


def _boundary_family(fam: GeneratorFamily, kind: str) -> None:
    cx = chain_complex(fam.graph)
    if fam.i < 1:
        return
    base = cx.basis(fam.i - 1, fam.j)
    diff = cx.differential(fam.i - 1, fam.j)
    for state, col in zip(base.states, diff.columns):
        fam.add(dict(col), kind, state)


def _is_induced_forest(graph: OrderedGraph, edges: int) -> bool:
    cx = chain_complex(graph)
    labels, d = cx.partition(edges)
    if d != graph.n - edges.bit_count():
        return False
    closure = JoinClosure(graph)
    for comp in range(d):
        verts = [w for w in range(1, graph.n + 1) if labels[w] == comp]
        inside = closure.full_subgraph(verts)
        if inside & ~edges:
            return False
    return True


def frame_sum(graph: OrderedGraph, frame: int) -> dict[int, int]:
    """``sum_e (-1)^n(e) (F u e)`` with the component through ``e`` unmarked."""
    cx = chain_complex(graph)
    i = frame.bit_count() + 1
    j = graph.n - i - 1
    basis = cx.basis(i, j)
    flabels, _ = cx.partition(frame)
    vec: dict[int, int] = {}
    for e, (a, b) in enumerate(graph.edges):
        if frame >> e & 1 or flabels[a] == flabels[b]:
            continue
        s = frame | 1 << e
        labels, d = cx.partition(s)
        state = EnhancedState(s, _all_x(d) & ~(1 << labels[a]))
        vec[basis.index[state]] = cx.sign(frame, e)
    return vec


def generators_top(graph: OrderedGraph, i: int) -> GeneratorFamily:
    """Cocycle family at ``(i, n-i)``."""
    n, _ = kpartial_params(graph)
    if i < 0:
        raise GraphError("degree must be non-negative")
    cx = chain_complex(graph)
    fam = GeneratorFamily(graph, i, n - i)
    basis = cx.basis(i, n - i)
    if i == 0:
        fam.add({basis.index[EnhancedState(0, _all_x(n))]: 1}, "all-x")
        return fam
    if i == 1:
        for k in range(graph.num_edges):
            fam.add({basis.index[EnhancedState(1 << k, _all_x(n - 1))]: 1}, "x-edge")
        return fam
    if n - 2 * i >= 0:
        for s in _matchings(graph, i):
            fam.add({basis.index[EnhancedState(s, _all_x(n - i))]: 1}, "matching")
    _boundary_family(fam, "summed")
    return fam


def generators_subtop(graph: OrderedGraph, i: int) -> GeneratorFamily:
    """Cocycle family at ``(i, n-i-1)``."""
    n, _ = kpartial_params(graph)
    if i < 0:
        raise GraphError("degree must be non-negative")
    fam = GeneratorFamily(graph, i, n - i - 1)
    if i == 0 or n - i - 1 < 0:
        return fam
    cx = chain_complex(graph)
    _boundary_family(fam, "summed")
    for ids in combinations(range(graph.num_edges), i - 1):
        frame = sum(1 << k for k in ids)
        if _is_induced_forest(graph, frame):
            fam.add(frame_sum(graph, frame), "frame", EnhancedState(frame, _all_x(n - i + 1)))
    if n == 4 and i == 2:
        basis = cx.basis(2, 1)
        for s in _matchings(graph, 2):
            fam.add({basis.index[EnhancedState(s, 1)]: 1, basis.index[EnhancedState(s, 2)]: -1}, "x-swap")
    return fam


@dataclass
class FamilyCheck:
    i: int
    j: int
    size: int
    nullity: int
    rank: int
    boundary_rank: int
    non_members: list[int]
    lattice_index: int | None

    @property
    def members_ok(self) -> bool:
        return not self.non_members

    @property
    def spans_rationally(self) -> bool:
        return self.rank == self.nullity

    @property
    def ok(self) -> bool:
        return self.members_ok and self.spans_rationally


def lattice_index(kernel_coords: list[list[int]], nullity: int) -> int | None:
    """Index of the lattice spanned by the columns in ``Z^nullity``; None if infinite."""
    if nullity == 0:
        return 1
    cols = [{r: v for r, v in enumerate(c) if v} for c in kernel_coords]
    snf = smith_normal_form(SparseIntegerMatrix(nullity, len(cols), cols))
    if snf.rank < nullity:
        return None
    index = 1
    for d in snf.factors:
        index *= d
    return index


def check_family(fam: GeneratorFamily) -> FamilyCheck:
    cx = chain_complex(fam.graph)
    size = len(cx.basis(fam.i, fam.j))
    d_out = cx.differential(fam.i, fam.j)
    out = smith_normal_form(d_out, keep_transforms=True)
    non_members = [k for k, v in enumerate(fam.vectors) if d_out.apply(v)]
    members = [v for k, v in enumerate(fam.vectors) if k not in set(non_members)]
    rank = smith_normal_form(SparseIntegerMatrix(size, len(members), [dict(v) for v in members])).rank if members else 0
    boundary_rank = 0
    if fam.i > 0:
        boundary_rank = smith_normal_form(cx.differential(fam.i - 1, fam.j)).rank
    coords = [out.kernel_coordinates(v) for v in members]
    index = lattice_index(coords, out.nullity) if not non_members else None
    return FamilyCheck(fam.i, fam.j, size, out.nullity, rank, boundary_rank, non_members, index)


def verify_family(graph: OrderedGraph, fam: GeneratorFamily) -> Report:
    if fam.graph != graph:
        raise GraphError("family was built for a different graph")
    chk = check_family(fam)
    kinds = ", ".join(f"{k}={fam.count(k)}" for k in dict.fromkeys(fam.kinds)) or "empty"
    index = "inf" if chk.lattice_index is None else str(chk.lattice_index)
    detail = (
        f"{kinds}; rank {chk.rank} / nullity {chk.nullity}; boundaries alone {chk.boundary_rank}; "
        f"lattice index {index}"
    )
    cases = [Case(fam.i, fam.j, chk.ok, detail)]
    for k in chk.non_members:
        cases.append(Case(fam.i, fam.j, False, f"vector {k} ({fam.kinds[k]}) is not a cycle"))
    return Report("cocycles", {"graph": str(graph)}, cases)


def cocycle_report(n: int, m: int) -> Report:
    """Both diagonals of ``kpartial(n, m)``."""
    graph = kpartial(n, m)
    report = Report("cocycles", {"n": n, "m": m})
    for i in range(n + 1):
        for build, j in ((generators_top, n - i), (generators_subtop, n - i - 1)):
            if j < 0:
                continue
            report.cases.extend(verify_family(graph, build(graph, i)).cases)
    return report


def minimality_witness(graph: OrderedGraph, base: EnhancedState) -> list[bool]:
    """For ``Z = d(base)``: whether dropping each single term leaves a non-cycle."""
    cx = chain_complex(graph)
    i, j = base.i + 1, base.j
    z = cx.boundary(base)
    index = cx.basis(i, j).index
    diff = cx.differential(i, j)
    vec = {index[st]: v for st, v in z.items()}
    out = []
    for k in vec:
        rest = {r: v for r, v in vec.items() if r != k}
        out.append(bool(diff.apply(rest)))
    return out
