"""Exact Smith normal form of sparse integer matrices.

Elimination runs in two phases.  The first takes unit pivots only, chosen
Markowitz-style (shortest column, then shortest row), and updates the Schur
complement; chromatic differentials are +-1 sparse, so this phase usually
finishes the job without any coefficient growth.  The second phase is the
textbook gcd-reduction on whatever residual block is left.

With ``keep_transforms=True`` every elementary row and column operation is
logged, which gives unimodular ``U`` and ``V`` with ``U A V`` diagonal up to
a permutation.  The log is replayed on sparse vectors for solving, kernel
bases and coordinates, so ``U`` and ``V`` never need to be materialized.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .sparse import SparseIntegerMatrix

# Logged operation: (0, target, source, f) means target += f * source;
# (1, target, 0, 0) means target = -target.  Row ops act on rows, column ops
# on columns.
Op = tuple[int, int, int, int]


@dataclass
class SmithDecomposition:
    shape: tuple[int, int]
    factors: tuple[int, ...]
    pivots: tuple[tuple[int, int], ...] = ()
    row_ops: list[Op] | None = field(default=None, repr=False)
    col_ops: list[Op] | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d > 1)

    @property
    def nullity(self) -> int:
        return self.shape[1] - self.rank

    @property
    def has_transforms(self) -> bool:
        return self.row_ops is not None

    def _need_transforms(self) -> None:
        if self.row_ops is None:
            raise ValueError("decomposition was computed without transforms")

    # -- replaying the logs on sparse vectors --------------------------------

    def apply_u(self, vec: dict[int, int]) -> dict[int, int]:
        """``U @ vec``."""
        self._need_transforms()
        y = dict(vec)
        for kind, t, s, f in self.row_ops:
            _apply(y, kind, t, s, f)
        return y

    def apply_u_inverse(self, vec: dict[int, int]) -> dict[int, int]:
        self._need_transforms()
        y = dict(vec)
        for kind, t, s, f in reversed(self.row_ops):
            _apply(y, kind, t, s, -f)
        return y

    def apply_v(self, vec: dict[int, int]) -> dict[int, int]:
        """``V @ vec``."""
        self._need_transforms()
        x = dict(vec)
        for kind, t, s, f in reversed(self.col_ops):
            # column op col_t += f col_s is right-multiplication by I + f E[s, t]
            _apply(x, kind, s if kind == 0 else t, t, f)
        return x

    def apply_v_inverse(self, vec: dict[int, int]) -> dict[int, int]:
        self._need_transforms()
        x = dict(vec)
        for kind, t, s, f in self.col_ops:
            _apply(x, kind, s if kind == 0 else t, t, -f)
        return x

    # -- derived services ----------------------------------------------------

    def solve(self, b: dict[int, int]) -> dict[int, int] | None:
        """An integer solution of ``A x = b``, or ``None`` if there is none."""
        y = self.apply_u(b)
        z: dict[int, int] = {}
        for d, (r, c) in zip(self.factors, self.pivots):
            value = y.pop(r, 0)
            if value % d:
                return None
            if value:
                z[c] = value // d
        if any(y.values()):
            return None
        return self.apply_v(z)

    def in_image(self, b: dict[int, int]) -> bool:
        return self.solve(b) is not None

    def kernel_columns(self) -> list[int]:
        """Column positions (after transform) spanning the kernel."""
        pivot_cols = {c for _, c in self.pivots}
        return [c for c in range(self.shape[1]) if c not in pivot_cols]

    def kernel_basis(self) -> list[dict[int, int]]:
        """A basis of the (saturated) integer kernel lattice."""
        return [self.apply_v({c: 1}) for c in self.kernel_columns()]

    def kernel_coordinates(self, vec: dict[int, int]) -> list[int]:
        """Coordinates of a kernel vector against ``kernel_basis()``."""
        x = self.apply_v_inverse(vec)
        cols = self.kernel_columns()
        pivot_cols = {c for _, c in self.pivots}
        if any(x.get(c, 0) for c in pivot_cols):
            raise ValueError("vector is not in the kernel")
        return [x.get(c, 0) for c in cols]

    def permutations(self) -> tuple[list[int], list[int]]:
        """Row and column orders putting the factors on the leading diagonal."""
        rows, cols = self.shape
        pr = [r for r, _ in self.pivots]
        pc = [c for _, c in self.pivots]
        pr += [r for r in range(rows) if r not in set(pr)]
        pc += [c for c in range(cols) if c not in set(pc)]
        return pr, pc

    def matrices(self):
        """Dense ``(U, D, V)`` with ``U @ A @ V == D``; for small matrices."""
        rows, cols = self.shape
        pr, pc = self.permutations()
        u_cols = [self.apply_u({k: 1}) for k in range(rows)]
        v_cols = [self.apply_v({k: 1}) for k in range(cols)]
        U = [[u_cols[k].get(pr[i], 0) for k in range(rows)] for i in range(rows)]
        V = [[v_cols[pc[k]].get(i, 0) for k in range(cols)] for i in range(cols)]
        D = [[0] * cols for _ in range(rows)]
        for k, d in enumerate(self.factors):
            D[k][k] = d
        return U, D, V


def _apply(vec: dict[int, int], kind: int, t: int, s: int, f: int) -> None:
    if kind == 1:
        if t in vec:
            vec[t] = -vec[t]
        return
    xs = vec.get(s)
    if xs:
        w = vec.get(t, 0) + f * xs
        if w:
            vec[t] = w
        else:
            vec.pop(t, None)


class _Elimination:
    def __init__(self, matrix: SparseIntegerMatrix, keep: bool):
        self.rows: dict[int, dict[int, int]] = {}
        self.colsets: dict[int, set[int]] = {}
        for c, col in enumerate(matrix.columns):
            if col:
                self.colsets[c] = set(col)
                for r, v in col.items():
                    self.rows.setdefault(r, {})[c] = v
        self.keep = keep
        self.row_ops: list[Op] = []
        self.col_ops: list[Op] = []
        self.factors: list[int] = []
        self.pivots: list[tuple[int, int]] = []

    def row_add(self, target: int, source: int, f: int) -> None:
        """``row[target] += f * row[source]``."""
        if not f:
            return
        trow = self.rows[target]
        colsets = self.colsets
        for c, v in self.rows[source].items():
            w = trow.get(c, 0) + f * v
            if w:
                if c not in trow:
                    colsets[c].add(target)
                trow[c] = w
            else:
                del trow[c]
                colsets[c].discard(target)
        if not trow:
            del self.rows[target]
        if self.keep:
            self.row_ops.append((0, target, source, f))

    def remove_pivot(self, r: int, c: int, value: int) -> None:
        if value < 0:
            if self.keep:
                self.row_ops.append((1, r, 0, 0))
            value = -value
        for c2 in self.rows.pop(r):
            s = self.colsets[c2]
            s.discard(r)
            if not s:
                del self.colsets[c2]
        self.factors.append(value)
        self.pivots.append((r, c))

    def unit_phase(self) -> None:
        rows, colsets = self.rows, self.colsets
        heap = [(len(rs), c) for c, rs in colsets.items()]
        heapq.heapify(heap)
        while heap:
            count, c = heapq.heappop(heap)
            rs = colsets.get(c)
            if not rs or len(rs) != count:
                continue
            best = None
            best_len = 0
            for r in rs:
                v = rows[r][c]
                if v == 1 or v == -1:
                    length = len(rows[r])
                    if best is None or length < best_len:
                        best, best_len = r, length
                        if length == 1:
                            break
            if best is None:
                continue
            r = best
            prow = rows[r]
            a = prow[c]
            for r2 in [x for x in rs if x != r]:
                self.row_add(r2, r, -rows[r2][c] * a)
            if self.keep:
                for c2, v in prow.items():
                    if c2 != c:
                        self.col_ops.append((0, c2, c, -v * a))
            touched = [c2 for c2 in prow if c2 != c]
            self.remove_pivot(r, c, a)
            for c2 in touched:
                rs2 = colsets.get(c2)
                if rs2:
                    heapq.heappush(heap, (len(rs2), c2))

    def general_phase(self) -> None:
        rows, colsets = self.rows, self.colsets
        while rows:
            r, c = min(
                ((r, c) for r, row in rows.items() for c in row),
                key=lambda rc: (abs(rows[rc[0]][rc[1]]), len(rows[rc[0]]), rc),
            )
            while True:
                p = rows[r][c]
                moved = False
                for r2 in sorted(colsets[c] - {r}):
                    q = rows[r2][c] // p
                    self.row_add(r2, r, -q)
                    if c in rows.get(r2, ()):
                        r, moved = r2, True
                        break
                if moved:
                    continue
                prow = rows[r]
                for c2 in sorted(set(prow) - {c}):
                    q = prow[c2] // p
                    prow[c2] -= q * p
                    if self.keep:
                        self.col_ops.append((0, c2, c, -q))
                    if not prow[c2]:
                        del prow[c2]
                        colsets[c2].discard(r)
                        if not colsets[c2]:
                            del colsets[c2]
                    else:
                        c, moved = c2, True
                        break
                if moved:
                    continue
                bad = next(
                    (r3 for r3, row in rows.items() if r3 != r and any(v % p for v in row.values())),
                    None,
                )
                if bad is None:
                    self.remove_pivot(r, c, p)
                    break
                self.row_add(r, bad, 1)


def smith_normal_form(matrix: SparseIntegerMatrix, keep_transforms: bool = False) -> SmithDecomposition:
    """Invariant factors (and optionally transforms) of an integer matrix."""
    elim = _Elimination(matrix, keep_transforms)
    elim.unit_phase()
    elim.general_phase()
    return SmithDecomposition(
        shape=matrix.shape,
        factors=tuple(elim.factors),
        pivots=tuple(elim.pivots),
        row_ops=elim.row_ops if keep_transforms else None,
        col_ops=elim.col_ops if keep_transforms else None,
    )
