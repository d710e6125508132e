"""Exterior powers of ``Z[S]``: Koszul boundary, wedge coboundaries and the Hodge star.

Basis elements of ``Lambda^k`` are the ``k``-subsets of ``{0..n-1}`` in
lexicographic order, stored 0-based.  The sign ``psi`` is the only place where
1-based positions appear (:func:`one_based`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .groups import FiniteGroup, sign_homomorphism
from .linalg import IntMatrix
from .modules import EquivariantMap, TableMonomialModule, TwistedMonomialModule


@lru_cache(maxsize=None)
def subset_basis(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All ``k``-subsets of ``{0..n-1}`` in lexicographic order."""
    if k < 0 or k > n:
        return ()
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def subset_index(n: int, k: int) -> dict[tuple[int, ...], int]:
    return {s: i for i, s in enumerate(subset_basis(n, k))}


def one_based(subset: Sequence[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i in subset)


def psi_sign(subset: Sequence[int], *, one_based_input: bool = True) -> int:
    """Parity (0 or 1) of ``sum_j (i_j - j)`` for ``i_1 < ... < i_k`` (1-based)."""
    I = tuple(subset) if one_based_input else one_based(subset)
    if any(b <= a for a, b in zip(I, I[1:])):
        raise ValueError("subset must be strictly increasing")
    return sum(i - j for j, i in enumerate(I, start=1)) % 2


def sort_sign(items: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """``(sign, sorted)`` with ``sign = 0`` when an entry repeats."""
    items = list(items)
    if len(set(items)) != len(items):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


def wedge(a: Sequence[int], b: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """``t_a wedge t_b = sign * t_(a u b)``."""
    return sort_sign(tuple(a) + tuple(b))


class LambdaModule(TableMonomialModule):
    """``Lambda^k(Z[G])`` with ``g . (x_1 ^ ... ^ x_k) = g x_1 ^ ... ^ g x_k``."""

    def __init__(self, G: FiniteGroup, k: int):
        if not 0 <= k <= G.n:
            raise ValueError(f"exterior degree {k} out of range 0..{G.n}")
        basis = subset_basis(G.n, k)
        index = subset_index(G.n, k)
        perm, sign = [], []
        for g in range(G.n):
            row = G.table[g]
            p, s = [], []
            for I in basis:
                sg, J = sort_sign([row[x] for x in I])
                p.append(index[J])
                s.append(sg)
            perm.append(p)
            sign.append(s)
        super().__init__(G, perm, sign, basis, f"L{k}")
        self.degree = k


_LAMBDA_CACHE: dict = {}


def lambda_module(G: FiniteGroup, k: int) -> LambdaModule:
    key = (G, k)
    m = _LAMBDA_CACHE.get(key)
    if m is None:
        m = LambdaModule(G, k)
        _LAMBDA_CACHE[key] = m
    return m


@lru_cache(maxsize=None)
def koszul_boundary(n: int, k: int) -> IntMatrix:
    """``Lambda^k -> Lambda^(k-1)``: ``s_1^...^s_k -> sum_i (-1)^(i+1) (s_i deleted)``."""
    if k < 1 or k > n:
        return IntMatrix.zeros(comb(n, k - 1) if 0 <= k - 1 <= n else 0, comb(n, k) if 0 <= k <= n else 0)
    idx = subset_index(n, k - 1)
    cols = []
    for I in subset_basis(n, k):
        col = {}
        for p in range(k):
            col[idx[I[:p] + I[p + 1:]]] = -1 if p % 2 else 1
        cols.append(col)
    return IntMatrix(comb(n, k - 1), comb(n, k), cols)


@lru_cache(maxsize=None)
def delta_a(n: int, k: int, c: int) -> IntMatrix:
    """``Lambda^k -> Lambda^(k+1)``: ``v -> (-1)^k c ^ v`` for the element with 0-based index ``c``."""
    if not 0 <= c < n:
        raise ValueError("element index out of range")
    rows = comb(n, k + 1) if k + 1 <= n else 0
    idx = subset_index(n, k + 1)
    base = -1 if k % 2 else 1
    cols = []
    for I in subset_basis(n, k):
        s, J = wedge((c,), I)
        cols.append({idx[J]: base * s} if s else {})
    return IntMatrix(rows, comb(n, k), cols)


@lru_cache(maxsize=None)
def delta_N(n: int, k: int) -> IntMatrix:
    """``sum_c delta_c``: ``v -> (-1)^k N ^ v``."""
    rows = comb(n, k + 1) if k + 1 <= n else 0
    idx = subset_index(n, k + 1)
    base = -1 if k % 2 else 1
    cols = []
    for I in subset_basis(n, k):
        col = {}
        for c in range(n):
            s, J = wedge((c,), I)
            if s:
                col[idx[J]] = base * s
        cols.append(col)
    return IntMatrix(rows, comb(n, k), cols)


def _delta_N_for(G: FiniteGroup | int, k: int) -> IntMatrix:
    return delta_N(G if isinstance(G, int) else G.n, k)


def homotopy_identity_check(n: int, c: int, k: int) -> bool:
    """``delta_c^(k-1) d_(k-1) - d_k delta_c^k == (-1)^(k-1) id`` on ``Lambda^k``.

    Here ``d_(k-1) : Lambda^k -> Lambda^(k-1)``; maps leaving ``0..n`` are zero.
    """
    if not 0 <= k <= n:
        raise ValueError("degree out of range")
    dim = comb(n, k)
    lhs = IntMatrix.zeros(dim, dim)
    if k >= 1:
        lhs = lhs + delta_a(n, k - 1, c) @ koszul_boundary(n, k)
    if k + 1 <= n:
        lhs = lhs - koszul_boundary(n, k + 1) @ delta_a(n, k, c)
    sign = -1 if (k - 1) % 2 else 1
    return lhs == IntMatrix.identity(dim).scale(sign)


@lru_cache(maxsize=None)
def hodge_star(n: int, k: int) -> IntMatrix:
    """``alpha_k : Lambda^k -> Lambda^(n-k)``, ``t_I -> (-1)^psi(I) t_(complement)``."""
    idx = subset_index(n, n - k)
    full = set(range(n))
    cols = []
    for I in subset_basis(n, k):
        comp = tuple(sorted(full - set(I)))
        cols.append({idx[comp]: -1 if psi_sign(I, one_based_input=False) else 1})
    return IntMatrix(comb(n, n - k), comb(n, k), cols)


def hodge_wedge_identity(n: int, k: int) -> bool:
    """``t_I ^ alpha_k(t_I) == omega`` for every ``I``."""
    A = hodge_star(n, k)
    basis = subset_basis(n, n - k)
    for j, I in enumerate(subset_basis(n, k)):
        ((r, v),) = A.column(j).items()
        s, J = wedge(I, basis[r])
        if s * v != 1 or J != tuple(range(n)):
            return False
    return True


@dataclass
class HodgeSquareReport:
    n: int
    squares: dict[int, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.squares.values())


def verify_hodge_square(G: FiniteGroup | int) -> HodgeSquareReport:
    """``d_(n-k-1) alpha_k == alpha_(k+1) delta_N^k`` for ``0 <= k < n``."""
    n = G if isinstance(G, int) else G.n
    rep = HodgeSquareReport(n)
    for k in range(n):
        lhs = koszul_boundary(n, n - k) @ hodge_star(n, k)
        rhs = hodge_star(n, k + 1) @ delta_N(n, k)
        rep.squares[k] = lhs == rhs
    return rep


def hodge_equivariance_check(G: FiniteGroup, k: int) -> bool:
    """``alpha_k(g v) == eps(g) g alpha_k(v)`` on every basis vector and group element."""
    eps = sign_homomorphism(G)
    src = lambda_module(G, k)
    tgt = lambda_module(G, G.n - k)
    A = hodge_star(G.n, k)
    for g in range(G.n):
        for i in range(src.rank):
            j, s = src.act(g, i)
            ((r, v),) = A.column(j).items()
            lhs = (r, s * v)
            ((r0, v0),) = A.column(i).items()
            r1, t = tgt.act(g, r0)
            if lhs != (r1, eps(g) * t * v0):
                return False
    return True


def hodge_map(G: FiniteGroup, k: int) -> EquivariantMap:
    """``alpha_k`` as a G-map ``Lambda^k~ -> Lambda^(n-k)``."""
    A = hodge_star(G.n, k)
    return EquivariantMap(TwistedMonomialModule(lambda_module(G, k)), lambda_module(G, G.n - k), A)


def koszul_map(G: FiniteGroup, k: int) -> EquivariantMap:
    """``d : Lambda^k -> Lambda^(k-1)`` as a G-map."""
    return EquivariantMap(lambda_module(G, k), lambda_module(G, k - 1), koszul_boundary(G.n, k))


def delta_N_map(G: FiniteGroup, k: int) -> EquivariantMap:
    return EquivariantMap(lambda_module(G, k), lambda_module(G, k + 1), delta_N(G.n, k))


def orientation(n: int) -> tuple[int, ...]:
    """``omega = x_1 ^ ... ^ x_n`` as the full subset."""
    return tuple(range(n))
