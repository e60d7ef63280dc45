"""Immutable sparse integer matrices stored column-wise."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

Column = tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class SparseIntMatrix:
    """``rows x cols`` integer matrix; ``columns[j]`` holds sorted ``(row, value)`` pairs.

    Values are Python ints (unbounded).  No zero is ever stored.
    """

    rows: int
    cols: int
    columns: tuple[Column, ...]

    @classmethod
    def from_columns(
        cls, rows: int, columns: Iterable[Mapping[int, int] | Iterable[tuple[int, int]]]
    ) -> "SparseIntMatrix":
        out = []
        for col in columns:
            items = col.items() if isinstance(col, Mapping) else col
            acc: dict[int, int] = {}
            for r, v in items:
                if not 0 <= r < rows:
                    raise IndexError(f"row {r} out of range for {rows} rows")
                acc[r] = acc.get(r, 0) + int(v)
            out.append(tuple(sorted((r, v) for r, v in acc.items() if v)))
        return cls(rows, len(out), tuple(out))

    @classmethod
    def from_triplets(
        cls, rows: int, cols: int, triplets: Iterable[tuple[int, int, int]]
    ) -> "SparseIntMatrix":
        buckets: list[dict[int, int]] = [{} for _ in range(cols)]
        for r, c, v in triplets:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            buckets[c][r] = buckets[c].get(r, 0) + int(v)
        return cls.from_columns(rows, buckets)

    @classmethod
    def from_dense(cls, array: Sequence[Sequence[int]] | np.ndarray) -> "SparseIntMatrix":
        rows = len(array)
        cols = len(array[0]) if rows else 0
        return cls.from_triplets(
            rows, cols,
            ((r, c, int(array[r][c])) for r in range(rows) for c in range(cols) if array[r][c]),
        )

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols, ((),) * cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def triplets(self) -> Iterable[tuple[int, int, int]]:
        for c, col in enumerate(self.columns):
            for r, v in col:
                yield r, c, v

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.triplets():
            out[r][c] = v
        return out

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_dense(), dtype=object).reshape(self.rows, self.cols)

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix.from_triplets(
            self.cols, self.rows, ((c, r, v) for r, c, v in self.triplets())
        )

    def row_dicts(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for r, c, v in self.triplets():
            rows[r][c] = v
        return rows

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> "SparseIntMatrix":
        """Submatrix on the given (ordered) row and column indices."""
        rpos = {r: i for i, r in enumerate(rows)}
        return SparseIntMatrix.from_columns(
            len(rows),
            ([(rpos[r], v) for r, v in self.columns[c] if r in rpos] for c in cols),
        )

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        """Matrix times a sparse column vector."""
        out: dict[int, int] = {}
        for c, a in vec.items():
            for r, v in self.columns[c]:
                out[r] = out.get(r, 0) + a * v
        return {r: v for r, v in out.items() if v}

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseIntMatrix.from_columns(
            self.rows, (self.apply(dict(col)) for col in other.columns)
        )

    def hstack(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return SparseIntMatrix(self.rows, self.cols + other.cols, self.columns + other.columns)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.columns == other.columns

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.columns))

    def __repr__(self) -> str:
        return f"<SparseIntMatrix {self.rows}x{self.cols}, nnz={self.nnz}>"

    # -- coordinate text format --------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        lines.extend(f"{r} {c} {v}" for r, c, v in sorted(self.triplets()))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseIntMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise ValueError("empty matrix text")
        rows, cols, nnz = (int(x) for x in lines[0].split())
        body = lines[1:]
        if len(body) != nnz:
            raise ValueError(f"header announces {nnz} entries, found {len(body)}")
        trip = []
        for ln in body:
            r, c, v = ln.split()
            trip.append((int(r), int(c), int(v)))
        return cls.from_triplets(rows, cols, trip)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path: str | Path) -> "SparseIntMatrix":
        return cls.from_text(Path(path).read_text())
