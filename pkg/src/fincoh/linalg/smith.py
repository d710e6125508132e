"""Smith normal form, integer linear solving and lattice utilities."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .kernels import row_hermite, smith_dense
from .matrix import IntMatrix


@dataclass(frozen=True)
class AbGroupStructure:
    """A finitely generated abelian group ``Z^free_rank + sum Z/d_i``.

    ``torsion`` holds the invariant factors ``d_1 | d_2 | ...`` (all ``>= 2``).
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        for d in t:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError(f"invariant factors {a}, {b} do not divide in order")

    @classmethod
    def from_diagonal(cls, diagonal: Sequence[int], rows: int) -> "AbGroupStructure":
        """Structure of ``Z^rows / diag(diagonal)``."""
        nonzero = [abs(d) for d in diagonal if d]
        free = rows - len(nonzero)
        return cls(free, tuple(d for d in nonzero if d != 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Cardinality, or ``None`` for infinite groups."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def orders(self) -> tuple[int, ...]:
        """Orders of the canonical generators (0 for a free generator)."""
        return self.torsion + (0,) * self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class SmithDecomposition:
    """``U * A * V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.rows, self.S.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


class NoIntegerSolution(ArithmeticError):
    """Raised by :func:`solve_or_raise` when ``A x = b`` has no integer solution."""


def _snf_raw(A: IntMatrix, inverses: bool = False):
    a = A.tolist()
    return smith_dense(a, A.rows, A.cols, inverses)


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    a, U, V, _, _ = _snf_raw(A)
    return SmithDecomposition(
        IntMatrix.from_rows(a, A.cols),
        IntMatrix.from_rows(U, A.rows),
        IntMatrix.from_rows(V, A.cols),
    )


def smith_diagonal(A: IntMatrix) -> list[int]:
    a, _, _, _, _ = _snf_raw(A)
    return [a[i][i] for i in range(min(A.rows, A.cols))]


def cokernel_structure(A: IntMatrix) -> AbGroupStructure:
    """Invariant factors of ``Z^rows / colspan(A)``."""
    return AbGroupStructure.from_diagonal(smith_diagonal(A), A.rows)


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Canonical (Hermite) basis of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    return row_hermite(vectors, dim)


def column_span_basis(A: IntMatrix) -> IntMatrix:
    """An injective matrix with the same column span as ``A`` (canonical)."""
    rows = lattice_basis(A.transpose().tolist(), A.rows) if A.cols else []
    return IntMatrix.from_columns(rows, A.rows)


class LinearSolver:
    """Precomputed Smith data of ``A`` for repeated exact solves of ``A x = b``."""

    def __init__(self, A: IntMatrix):
        self.A = A
        a, U, V, _, _ = _snf_raw(A)
        self._U = U
        self._V = V
        self._diag = [a[i][i] for i in range(min(A.rows, A.cols))]
        self.rank = sum(1 for d in self._diag if d)

    def kernel(self) -> IntMatrix:
        """Canonical basis of ``{x : A x = 0}`` as columns."""
        n = self.A.cols
        vecs = [[self._V[i][j] for i in range(n)] for j in range(self.rank, n)]
        return IntMatrix.from_columns(lattice_basis(vecs, n), n)

    def solve(self, b: Mapping[int, int] | Sequence[int]) -> list[int] | None:
        """A particular integer solution, or ``None`` if there is none."""
        m, n = self.A.rows, self.A.cols
        if isinstance(b, Mapping):
            items = [(i, v) for i, v in b.items() if v]
        else:
            if len(b) != m:
                raise ValueError(f"right-hand side has length {len(b)}, expected {m}")
            items = [(i, v) for i, v in enumerate(b) if v]
        if not items:
            return [0] * n
        U = self._U
        ub = [0] * m
        for r in range(m):
            row = U[r]
            s = 0
            for i, v in items:
                c = row[i]
                if c:
                    s += c * v
            ub[r] = s
        y = [0] * n
        for r in range(m):
            if r < self.rank:
                d = self._diag[r]
                if ub[r] % d:
                    return None
                y[r] = ub[r] // d
            elif ub[r]:
                return None
        V = self._V
        x = [0] * n
        for j in range(n):
            row = V[j]
            s = 0
            for r in range(self.rank):
                if y[r] and row[r]:
                    s += row[r] * y[r]
            x[j] = s
        return x


@dataclass(frozen=True)
class LinearSolution:
    """Result of :func:`solve_linear`: ``particular`` is ``None`` when no integer solution exists."""

    particular: tuple[int, ...] | None
    kernel: IntMatrix

    @property
    def solvable(self) -> bool:
        return self.particular is not None


def solve_linear(A: IntMatrix, b: Sequence[int]) -> LinearSolution:
    """Solve ``A x = b`` over the integers.

    Raises ``ValueError`` on a dimension mismatch; an unsolvable system is
    reported through ``particular is None``.
    """
    if len(b) != A.rows:
        raise ValueError(f"dimension mismatch: A is {A.rows}x{A.cols}, b has length {len(b)}")
    solver = LinearSolver(A)
    x = solver.solve(list(b))
    return LinearSolution(None if x is None else tuple(x), solver.kernel())


def solve_or_raise(A: IntMatrix, b: Sequence[int]) -> tuple[int, ...]:
    sol = solve_linear(A, b)
    if sol.particular is None:
        raise NoIntegerSolution(f"no integer solution for {A.rows}x{A.cols} system")
    return sol.particular


def kernel_basis(A: IntMatrix) -> IntMatrix:
    return LinearSolver(A).kernel()


def preimage_lattice(A: IntMatrix, R: IntMatrix) -> IntMatrix:
    """Canonical basis (columns) of ``{x in Z^cols(A) : A x in colspan(R)}``."""
    n = A.cols
    if R.cols == 0:
        return kernel_basis(A)
    from .matrix import hstack

    K = kernel_basis(hstack([A, R]))
    vecs = [[K[i, j] for i in range(n)] for j in range(K.cols)]
    return IntMatrix.from_columns(lattice_basis(vecs, n), n)


def determinant(A: IntMatrix) -> int:
    """Exact determinant via the Smith form (sign tracked through U and V)."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    a, U, V, _, _ = _snf_raw(A)
    d = 1
    for i in range(n):
        d *= a[i][i]
    if d == 0:
        return 0
    return d * _unimodular_det(U) * _unimodular_det(V)


def _unimodular_det(M: list[list[int]]) -> int:
    # Bareiss fraction-free elimination; exact for integer input
    n = len(M)
    a = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
