"""Immutable integer matrices with exact (arbitrary precision) entries.

Entries are stored column-wise as ``{row: value}`` dictionaries without zeros,
which keeps the large, very sparse differentials of bar complexes cheap while
the public surface stays that of an ordinary dense matrix.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

Column = Mapping[int, int]


class IntMatrix:
    """A ``rows x cols`` integer matrix.

    Instances are treated as immutable: the column dictionaries handed out by
    :meth:`column` must not be modified by callers.
    """

    __slots__ = ("rows", "cols", "_cols")

    def __init__(self, rows: int, cols: int, columns: Sequence[Column] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if columns is None:
            self._cols: tuple[dict[int, int], ...] = tuple({} for _ in range(cols))
        else:
            if len(columns) != cols:
                raise ValueError(f"expected {cols} columns, got {len(columns)}")
            cleaned = []
            for col in columns:
                c = {i: v for i, v in col.items() if v}
                for i in c:
                    if not 0 <= i < rows:
                        raise IndexError(f"row index {i} out of range for {rows} rows")
                cleaned.append(c)
            self._cols = tuple(cleaned)

    @classmethod
    def _trusted(cls, rows: int, cols: int, columns: Sequence[dict[int, int]]) -> "IntMatrix":
        # caller guarantees: no zero entries, indices in range
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._cols = tuple(columns)
        return m

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        columns: list[dict[int, int]] = [{} for _ in range(cols)]
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged row data")
            for j, v in enumerate(row):
                if v:
                    columns[j][i] = int(v)
        return cls._trusted(rows, cols, columns)

    @classmethod
    def from_columns(cls, data: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        cols = len(data)
        if rows is None:
            rows = len(data[0]) if cols else 0
        columns = []
        for col in data:
            if len(col) != rows:
                raise ValueError("ragged column data")
            columns.append({i: int(v) for i, v in enumerate(col) if v})
        return cls._trusted(rows, cols, columns)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls._trusted(rows, cols, [{} for _ in range(cols)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._trusted(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        columns: list[dict[int, int]] = [{} for _ in range(cols)]
        for i, v in enumerate(values):
            if v:
                columns[i][i] = int(v)
        return cls._trusted(rows, cols, columns)

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[int, ...]:
        """All entries in row-major order."""
        return tuple(v for row in self.tolist() for v in row)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self._cols[j].get(i, 0)

    def column(self, j: int) -> Column:
        return self._cols[j]

    def columns(self) -> tuple[dict[int, int], ...]:
        return self._cols

    def column_vector(self, j: int) -> list[int]:
        out = [0] * self.rows
        for i, v in self._cols[j].items():
            out[i] = v
        return out

    def tolist(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def is_zero(self) -> bool:
        return not any(self._cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(tuple(sorted(c.items())) for c in self._cols)))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.tolist()})"
        return f"IntMatrix(<{self.rows}x{self.cols}, nnz={self.nnz()}>)"

    # -- arithmetic -------------------------------------------------------------
    def transpose(self) -> "IntMatrix":
        columns: list[dict[int, int]] = [{} for _ in range(self.rows)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                columns[i][j] = v
        return IntMatrix._trusted(self.cols, self.rows, columns)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def apply(self, vec: Mapping[int, int]) -> dict[int, int]:
        """Sparse matrix-vector product; ``vec`` maps column index to value."""
        out: dict[int, int] = {}
        cols = self._cols
        for j, x in vec.items():
            if not x:
                continue
            for i, v in cols[j].items():
                s = out.get(i, 0) + v * x
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def apply_dense(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        out = [0] * self.rows
        for j, x in enumerate(vec):
            if x:
                for i, v in self._cols[j].items():
                    out[i] += v * x
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return IntMatrix._trusted(self.rows, other.cols, [self.apply(c) for c in other._cols])

    def _combine(self, other: "IntMatrix", sign: int) -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        columns = []
        for a, b in zip(self._cols, other._cols):
            c = dict(a)
            for i, v in b.items():
                s = c.get(i, 0) + sign * v
                if s:
                    c[i] = s
                else:
                    c.pop(i, None)
            columns.append(c)
        return IntMatrix._trusted(self.rows, self.cols, columns)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        if c == 0:
            return IntMatrix.zeros(self.rows, self.cols)
        return IntMatrix._trusted(self.rows, self.cols, [{i: c * v for i, v in col.items()} for col in self._cols])

    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        return IntMatrix._trusted(self.rows, len(idx), [self._cols[j] for j in idx])

    def select_rows(self, idx: Iterable[int]) -> "IntMatrix":
        idx = list(idx)
        pos = {r: k for k, r in enumerate(idx)}
        columns = [{pos[i]: v for i, v in col.items() if i in pos} for col in self._cols]
        return IntMatrix._trusted(len(idx), self.cols, columns)


def hstack(mats: Sequence[IntMatrix], rows: int | None = None) -> IntMatrix:
    if not mats:
        return IntMatrix.zeros(rows or 0, 0)
    r = mats[0].rows
    if any(m.rows != r for m in mats):
        raise ValueError("hstack: row mismatch")
    columns: list[dict[int, int]] = []
    for m in mats:
        columns.extend(m.columns())
    return IntMatrix._trusted(r, len(columns), columns)


def vstack(mats: Sequence[IntMatrix], cols: int | None = None) -> IntMatrix:
    if not mats:
        return IntMatrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ValueError("vstack: column mismatch")
    columns: list[dict[int, int]] = [{} for _ in range(c)]
    off = 0
    for m in mats:
        for j, col in enumerate(m.columns()):
            for i, v in col.items():
                columns[j][off + i] = v
        off += m.rows
    return IntMatrix._trusted(off, c, columns)


def block_diagonal(mats: Sequence[IntMatrix]) -> IntMatrix:
    columns: list[dict[int, int]] = []
    off = 0
    for m in mats:
        for col in m.columns():
            columns.append({off + i: v for i, v in col.items()})
        off += m.rows
    return IntMatrix._trusted(off, len(columns), columns)
