"""Bigraded integral chromatic homology from the state complex."""

from __future__ import annotations

import csv
import io
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graphs import OrderedGraph, chromatic_polynomial
from .polynomial import GradedPolynomial, evaluate_at_one_plus_q
from .smith import SmithDecomposition, smith_normal_form
from .sparse import SparseIntegerMatrix
from .states import chain_complex, check_cap


def _prime_powers(d: int) -> list[int]:
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        p += 1
    if d > 1:
        out.append(d)
    return out


def invariant_factors(orders) -> tuple[int, ...]:
    """Invariant factor form of a direct sum of cyclic groups of the given orders > 1."""
    by_prime: dict[int, list[int]] = {}
    for d in orders:
        for q in _prime_powers(d):
            p = next(k for k in range(2, q + 1) if q % k == 0)
            by_prime.setdefault(p, []).append(q)
    for qs in by_prime.values():
        qs.sort(reverse=True)
    length = max((len(qs) for qs in by_prime.values()), default=0)
    factors = []
    for k in range(length):
        d = 1
        for qs in by_prime.values():
            if k < len(qs):
                d *= qs[k]
        factors.append(d)
    return tuple(sorted(factors))


@dataclass(frozen=True)
class HomologyGroup:
    """``Z^free_rank`` plus cyclic torsion, torsion in invariant factor form."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "torsion", invariant_factors(self.torsion))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __add__(self, other: HomologyGroup) -> HomologyGroup:
        return HomologyGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __mul__(self, k: int) -> HomologyGroup:
        return HomologyGroup(self.free_rank * k, self.torsion * k)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        for d, k in sorted(Counter(self.torsion).items()):
            parts.append(f"(Z/{d})" + (f"^{k}" if k > 1 else ""))
        return " + ".join(parts)


ZERO = HomologyGroup()


@dataclass
class BigradedTable:
    n: int
    num_edges: int
    groups: dict[tuple[int, int], HomologyGroup] = field(default_factory=dict)
    graph: str = ""

    def __post_init__(self):
        self.groups = {k: g for k, g in self.groups.items() if not g.is_zero()}

    def get(self, i: int, j: int) -> HomologyGroup:
        return self.groups.get((i, j), ZERO)

    def degree(self, i: int) -> HomologyGroup:
        """``H^i`` summed over ``j``."""
        total = ZERO
        for (a, _), g in self.groups.items():
            if a == i:
                total = total + g
        return total

    def degree_graded(self, i: int) -> dict[int, HomologyGroup]:
        return {j: g for (a, j), g in sorted(self.groups.items()) if a == i}

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.groups)

    def same_groups(self, other: BigradedTable) -> bool:
        return self.groups == other.groups

    def to_json(self, graph: OrderedGraph | None = None) -> dict:
        payload = {
            "graph": self.graph,
            "n": self.n,
            "groups": [
                {"i": i, "j": j, "rank": g.free_rank, "torsion": list(g.torsion)}
                for (i, j), g in sorted(self.groups.items())
            ],
            "euler_q": list(graded_euler(self).coeffs),
        }
        if graph is not None:
            payload["chromatic_lambda"] = list(chromatic_polynomial(graph).coeffs)
        return payload

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "j", "rank", "torsion"])
        for (i, j), g in sorted(self.groups.items()):
            writer.writerow([i, j, g.free_rank, ";".join(str(d) for d in g.torsion)])
        return buf.getvalue()

    def render(self) -> str:
        if not self.groups:
            return "all groups vanish"
        i_max = max(i for i, _ in self.groups)
        j_values = sorted({j for _, j in self.groups})
        cells = [["j\\i"] + [str(i) for i in range(i_max + 1)]]
        for j in reversed(j_values):
            cells.append([str(j)] + [str(self.get(i, j)) for i in range(i_max + 1)])
        widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
        return "\n".join(
            "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in cells
        )


def _factors_task(args) -> tuple[tuple[int, int], tuple[int, ...]]:
    graph, i, j = args
    return (i, j), smith_normal_form(chain_complex(graph).differential(i, j)).factors


def differential_factors(graph: OrderedGraph, jobs: int = 1) -> dict[tuple[int, int], tuple[int, ...]]:
    """Invariant factors of every nonzero differential ``d^{i,j}``."""
    cx = chain_complex(graph)
    tasks = [
        (graph, i, j)
        for i in range(graph.num_edges)
        for j in range(graph.n + 1)
        if len(cx.basis(i, j)) and len(cx.basis(i + 1, j))
    ]
    if jobs > 1 and len(tasks) > 1:
        tasks.sort(key=lambda t: -len(cx.basis(t[1], t[2])))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_factors_task, tasks))
    else:
        results = dict(map(_factors_task, tasks))
    return results


def homology_table(
    graph: OrderedGraph, jobs: int = 1, max_edges: int | None = None, name: str = ""
) -> BigradedTable:
    check_cap(graph, max_edges)
    cx = chain_complex(graph)
    factors = differential_factors(graph, jobs)
    groups = {}
    for i in range(graph.num_edges + 1):
        for j in range(graph.n + 1):
            size = len(cx.basis(i, j))
            if not size:
                continue
            outgoing = factors.get((i, j), ())
            incoming = factors.get((i - 1, j), ())
            groups[i, j] = HomologyGroup(
                size - len(outgoing) - len(incoming), tuple(d for d in incoming if d > 1)
            )
    return BigradedTable(graph.n, graph.num_edges, groups, name or str(graph))


def homology_at(graph: OrderedGraph, i: int, j: int) -> HomologyGroup:
    cx = chain_complex(graph)
    size = len(cx.basis(i, j))
    if not size:
        return ZERO
    rank_out = smith_normal_form(cx.differential(i, j)).rank if len(cx.basis(i + 1, j)) else 0
    incoming = ()
    if i > 0 and len(cx.basis(i - 1, j)):
        incoming = smith_normal_form(cx.differential(i - 1, j)).factors
    return HomologyGroup(size - rank_out - len(incoming), tuple(d for d in incoming if d > 1))


def graded_euler(table: BigradedTable) -> GradedPolynomial:
    poly = GradedPolynomial()
    for (i, j), g in table.groups.items():
        poly = poly + GradedPolynomial.monomial(j, (-1) ** i * g.free_rank)
    return poly


def chain_euler(graph: OrderedGraph) -> GradedPolynomial:
    """``sum (-1)^i q^j rank C^{i,j}``, computed from the bases alone."""
    cx = chain_complex(graph)
    poly = GradedPolynomial()
    for i in range(graph.num_edges + 1):
        for j in range(graph.n + 1):
            size = len(cx.basis(i, j))
            if size:
                poly = poly + GradedPolynomial.monomial(j, (-1) ** i * size)
    return poly


def euler_matches(graph: OrderedGraph, table: BigradedTable) -> bool:
    return graded_euler(table) == evaluate_at_one_plus_q(chromatic_polynomial(graph))


def shift_table(table: BigradedTable, l: int) -> BigradedTable:
    return BigradedTable(
        table.n,
        table.num_edges,
        {(i, j + l): g for (i, j), g in table.groups.items()},
        table.graph,
    )


@dataclass
class SupportReport:
    n: int
    violations: list[str]
    torsion_cells: list[tuple[int, int]]
    factors_seen: list[int]

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def only_order_two(self) -> bool:
        return all(d == 2 for d in self.factors_seen)


def support_region_check(table: BigradedTable, n: int) -> SupportReport:
    """Vanishing and torsion region for a connected graph without isolated vertices."""
    violations = []
    torsion_cells = []
    factors: set[int] = set()
    for (i, j), g in sorted(table.groups.items()):
        if not (0 <= i <= n - 2 and n - 1 <= i + j <= n):
            violations.append(f"H^{{{i},{j}}} = {g} outside 0<=i<={n - 2}, {n - 1}<=i+j<={n}")
        if g.torsion:
            torsion_cells.append((i, j))
            factors.update(g.torsion)
            if not (i >= 1 and i + j == n):
                violations.append(f"torsion in H^{{{i},{j}}} = {g} off the diagonal i+j={n}")
    return SupportReport(n, violations, torsion_cells, sorted(factors))


class HomologyPresentation:
    """Cycle representatives and class coordinates for one ``H^{i,j}``.

    ``H = ker d_out / im d_in``.  Kernel coordinates come from the Smith
    transforms of ``d_out``; the image is rewritten in those coordinates and
    diagonalized once more.  Each nontrivial summand (order ``d > 1``, or
    ``0`` for a free summand) gets one generator cycle.
    """

    def __init__(self, d_in: SparseIntegerMatrix | None, d_out: SparseIntegerMatrix | None, size: int):
        self.size = size
        if d_out is None:
            d_out = SparseIntegerMatrix(0, size)
        self.out = smith_normal_form(d_out, keep_transforms=True)
        self.kernel_dim = self.out.nullity
        kernel_pos = {c: k for k, c in enumerate(self.out.kernel_columns())}
        rel_cols: list[dict[int, int]] = []
        if d_in is not None and d_in.cols:
            for vec in _apply_v_inverse_columns(self.out, d_in):
                col = {}
                for c, v in vec.items():
                    if c not in kernel_pos:
                        raise ValueError("incoming differential does not land in the kernel")
                    col[kernel_pos[c]] = v
                rel_cols.append(col)
        relations = SparseIntegerMatrix(self.kernel_dim, len(rel_cols), rel_cols)
        self.rel = smith_normal_form(relations, keep_transforms=True)
        pivot_rows = {r: d for d, (r, _) in zip(self.rel.factors, self.rel.pivots)}
        # summands: (row position in relation coordinates, order)
        self.summands: list[tuple[int, int]] = [
            (r, pivot_rows.get(r, 0))
            for r in range(self.kernel_dim)
            if pivot_rows.get(r, 0) != 1
        ]
        self.summands.sort(key=lambda rd: (rd[1] == 0, rd[1], rd[0]))

    @property
    def group(self) -> HomologyGroup:
        return HomologyGroup(
            sum(1 for _, d in self.summands if d == 0),
            tuple(d for _, d in self.summands if d),
        )

    @property
    def orders(self) -> list[int]:
        return [d for _, d in self.summands]

    def _from_kernel_coords(self, coords: dict[int, int]) -> dict[int, int]:
        cols = self.out.kernel_columns()
        return self.out.apply_v({cols[k]: v for k, v in coords.items()})

    def generators(self) -> list[dict[int, int]]:
        return [self._from_kernel_coords(self.rel.apply_u_inverse({r: 1})) for r, _ in self.summands]

    def kernel_basis(self) -> list[dict[int, int]]:
        return self.out.kernel_basis()

    def kernel_coordinates(self, cycle: dict[int, int]) -> list[int]:
        return self.out.kernel_coordinates(cycle)

    def coordinates(self, cycle: dict[int, int]) -> list[int]:
        """Class of a cycle against ``generators()``; torsion entries reduced mod order."""
        coords = self.kernel_coordinates(cycle)
        y = self.rel.apply_u({k: v for k, v in enumerate(coords) if v})
        out = []
        for r, d in self.summands:
            value = y.get(r, 0)
            out.append(value % d if d else value)
        return out

    def is_boundary(self, cycle: dict[int, int]) -> bool:
        return not any(self.coordinates(cycle))


def _apply_v_inverse_columns(snf: SmithDecomposition, matrix: SparseIntegerMatrix) -> list[dict[int, int]]:
    """``V^{-1} @ matrix`` column by column, replaying the log as row operations."""
    rows = matrix.row_dicts()
    for kind, t, s, f in snf.col_ops:
        if kind == 1:
            rows[t] = {c: -v for c, v in rows[t].items()}
            continue
        # V_k^{-1} x: x[s] -= f x[t]
        src = rows[t]
        if src:
            dst = rows[s]
            for c, v in src.items():
                w = dst.get(c, 0) - f * v
                if w:
                    dst[c] = w
                else:
                    dst.pop(c, None)
    out: list[dict[int, int]] = [{} for _ in range(matrix.cols)]
    for r, row in enumerate(rows):
        for c, v in row.items():
            out[c][r] = v
    return out


def presentation(graph: OrderedGraph, i: int, j: int) -> HomologyPresentation:
    cx = chain_complex(graph)
    size = len(cx.basis(i, j))
    d_out = cx.differential(i, j) if len(cx.basis(i + 1, j)) else None
    d_in = cx.differential(i - 1, j) if i > 0 and len(cx.basis(i - 1, j)) else None
    return HomologyPresentation(d_in, d_out, size)
