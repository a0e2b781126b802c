"""Complete graphs: the tower ``K_{n-1}^1 -> ... -> K_{n-1}^{n-1} = K_n`` and the recursion."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import GraphError, complete_graph, kpartial
from .homology import BigradedTable, HomologyGroup, ZERO, homology_table, shift_table
from .reports import Case, Report
from .sequences import kpartial_triple, verify_split


def _tables(n: int, jobs: int = 1, max_edges: int | None = None) -> tuple[BigradedTable, BigradedTable]:
    big = homology_table(complete_graph(n), jobs=jobs, max_edges=max_edges, name=f"complete:{n}")
    small = homology_table(complete_graph(n - 1), jobs=jobs, max_edges=max_edges, name=f"complete:{n - 1}")
    return big, small


def tower_check(n: int, jobs: int = 1, max_edges: int | None = None) -> Report:
    """Split sequences along the tower, each step by rank and torsion.

    Step ``m`` (``2 <= m <= n-1``) compares ``H^{i+1,j}(K_{n-1}^m)`` with
    ``H^{i,j}(K_{n-1}) + H^{i+1,j}(K_{n-1}^{m-1})``.  The first rung ``m = 1``
    is the pendant-edge shift ``H(K_{n-1}^1) = H(K_{n-1}){1}``.
    """
    if n < 4:
        raise GraphError("tower check needs n >= 4")
    if n > 6 and max_edges is None:
        raise GraphError("tower check above n = 6 needs an explicit --max-edges")
    report = Report("tower", {"n": n})
    base = homology_table(complete_graph(n - 1), jobs=jobs, max_edges=max_edges)
    first = homology_table(kpartial(n, 1), jobs=jobs, max_edges=max_edges)
    expected = shift_table(base, 1)
    report.cases.append(
        Case(None, None, first.same_groups(expected), "[m=1] pendant shift of the K_{n-1} table")
    )
    for m in range(2, n):
        step = verify_split(kpartial_triple(n, m))
        for c in step.cases:
            report.cases.append(Case(c.i, c.j, c.passed, f"[m={m}] {c.detail}"))
    return report


@dataclass
class RecursionRow:
    i: int
    direct: HomologyGroup
    expected: HomologyGroup

    @property
    def ok(self) -> bool:
        return self.direct == self.expected


@dataclass
class RecursionReport:
    n: int
    rows: list[RecursionRow] = field(default_factory=list)
    bigraded: list[Case] = field(default_factory=list)

    @property
    def summed_ok(self) -> bool:
        return all(r.ok for r in self.rows)

    @property
    def bigraded_ok(self) -> bool:
        return all(c.passed for c in self.bigraded)

    @property
    def passed(self) -> bool:
        return self.summed_ok and self.bigraded_ok

    def to_report(self) -> Report:
        rep = Report("recursion", {"n": self.n})
        for r in self.rows:
            rep.cases.append(Case(r.i, None, r.ok, f"summed over j: {r.direct} vs {r.expected}"))
        rep.cases.extend(self.bigraded)
        return rep


def expected_group(small: BigradedTable, n: int, i: int, j: int) -> HomologyGroup:
    """Right side of the recursion at ``(i, j)`` from the ``K_{n-1}`` table."""
    if i == 0:
        return HomologyGroup(1) if j == n else ZERO
    if i >= n - 1:
        return ZERO
    return small.get(i - 1, j) * (n - 2) + small.get(i, j - 1)


def recursion_check(n: int, jobs: int = 1, max_edges: int | None = None) -> RecursionReport:
    if n < 4:
        raise GraphError("recursion check needs n >= 4")
    big, small = _tables(n, jobs, max_edges)
    report = RecursionReport(n)
    for i in range(big.num_edges + 1):
        if i == 0:
            expected = HomologyGroup(1)
        elif i >= n - 1:
            expected = ZERO
        else:
            expected = small.degree(i - 1) * (n - 2) + small.degree(i)
        report.rows.append(RecursionRow(i, big.degree(i), expected))
    cells = set(big.groups)
    for i in range(n - 1):
        for j in range(n + 1):
            if not expected_group(small, n, i, j).is_zero():
                cells.add((i, j))
    for i, j in sorted(cells):
        direct = big.get(i, j)
        expected = expected_group(small, n, i, j)
        report.bigraded.append(Case(i, j, direct == expected, f"{direct} vs {expected}"))
    return report
