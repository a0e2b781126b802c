"""Sparse matrices and vectors over the integers.

Vectors are plain ``dict[int, int]`` maps from index to a nonzero value.
"""

from __future__ import annotations

from collections.abc import Iterable


def vec_add(target: dict, source: dict, factor: int = 1) -> dict:
    """In place ``target += factor * source``; returns ``target``."""
    if not factor:
        return target
    for k, v in source.items():
        w = target.get(k, 0) + factor * v
        if w:
            target[k] = w
        else:
            target.pop(k, None)
    return target


def vec_scale(vec: dict, factor: int) -> dict:
    if not factor:
        return {}
    return {k: factor * v for k, v in vec.items()}


class SparseIntegerMatrix:
    """A ``rows x cols`` integer matrix stored column-wise.

    ``columns[c]`` maps row index to a nonzero entry.  Entries are Python
    ints, so there is no overflow.
    """

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, cols: int, columns: list[dict[int, int]] | None = None):
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column list length does not match column count")
        self.columns = columns

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int, int]]):
        mat = cls(rows, cols)
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            col = mat.columns[c]
            w = col.get(r, 0) + v
            if w:
                col[r] = w
            else:
                col.pop(r, None)
        return mat

    @classmethod
    def from_dense(cls, dense) -> SparseIntegerMatrix:
        dense = [list(row) for row in dense]
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls.from_entries(
            rows, cols, ((r, c, v) for r, row in enumerate(dense) for c, v in enumerate(row) if v)
        )

    @classmethod
    def zero(cls, rows: int, cols: int) -> SparseIntegerMatrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, size: int) -> SparseIntegerMatrix:
        return cls(size, size, [{k: 1} for k in range(size)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return sum(len(col) for col in self.columns)

    def entries(self):
        for c, col in enumerate(self.columns):
            for r in sorted(col):
                yield r, c, col[r]

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                out[r][c] = v
        return out

    def to_dense(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                dense[r][c] = v
        return dense

    def is_zero(self) -> bool:
        return not any(self.columns)

    def transpose(self) -> SparseIntegerMatrix:
        return SparseIntegerMatrix(self.cols, self.rows, self.row_dicts())

    def apply(self, vec: dict[int, int]) -> dict[int, int]:
        """Matrix-vector product for a sparse vector indexed by column."""
        out: dict[int, int] = {}
        for c, x in vec.items():
            vec_add(out, self.columns[c], x)
        return out

    def __matmul__(self, other: SparseIntegerMatrix) -> SparseIntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseIntegerMatrix(
            self.rows, other.cols, [self.apply(col) for col in other.columns]
        )

    def __sub__(self, other: SparseIntegerMatrix) -> SparseIntegerMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = [vec_add(dict(a), b, -1) for a, b in zip(self.columns, other.columns)]
        return SparseIntegerMatrix(self.rows, self.cols, cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __repr__(self) -> str:
        return f"SparseIntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"
