"""Independent reference computations used to cross-check the library.

Nothing here calls the Smith form or the resolution machinery: determinants
use exact fractions, homology of finite complexes is counted by enumeration,
and the cyclic Tate groups come from the 2-periodic resolution written out
by hand.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd, prod

from fincoh.groups import FiniteGroup
from fincoh.linalg import AbGroupStructure, FinAbPresentation, IntMatrix, PresentedComplex
from fincoh.modules import GModule


def frac_det(rows: list[list[int]]) -> int:
    """Determinant by Gaussian elimination over the rationals."""
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[r][j] -= f * a[c][j]
    assert det.denominator == 1
    return int(det)


def determinantal_divisors(rows: list[list[int]]) -> list[int]:
    """``D_k`` = gcd of all ``k x k`` minors; the Smith diagonal is ``D_k / D_(k-1)``."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for R in combinations(range(m), k):
            for C in combinations(range(n), k):
                g = gcd(g, frac_det([[rows[i][j] for j in C] for i in R]))
        if g == 0:
            break
        out.append(g)
    return out


def smith_diagonal_oracle(rows: list[list[int]]) -> list[int]:
    D = determinantal_divisors(rows)
    prev = 1
    diag = []
    for d in D:
        diag.append(d // prev)
        prev = d
    return diag


# ---------------------------------------------------------------------------
# brute force on finite quotients


def _mat_vec_mod(A: list[list[int]], v: tuple[int, ...], q: int) -> tuple[int, ...]:
    return tuple(sum(a * x for a, x in zip(row, v)) % q for row in A)


def enumerate_homology_mod(d_in: list[list[int]], d_out: list[list[int]], dim: int, q: int) -> dict[int, int]:
    """Homology of ``(Z/q)^a --d_in--> (Z/q)^dim --d_out--> (Z/q)^b`` by listing every vector.

    Returns ``{m: #{c in H : m c = 0}}`` for every divisor ``m`` of ``q``;
    these counts pin down a finite abelian group up to isomorphism.
    """
    space = list(product(range(q), repeat=dim))
    cycles = [v for v in space if not any(_mat_vec_mod(d_out, v, q))] if d_out else space
    a = len(d_in[0]) if d_in and d_in[0] else 0
    boundaries = {_mat_vec_mod(d_in, u, q) for u in product(range(q), repeat=a)} if a else {(0,) * dim}
    # close under addition (the image of a linear map already is a subgroup)
    cosets: dict[tuple[int, ...], tuple[int, ...]] = {}
    reps = []
    for z in cycles:
        if z in cosets:
            continue
        reps.append(z)
        for b in boundaries:
            cosets[tuple((x + y) % q for x, y in zip(z, b))] = z
    counts = {}
    for m in range(1, q + 1):
        if q % m == 0:
            counts[m] = sum(1 for z in reps if tuple((m * x) % q for x in z) in boundaries)
    return counts


def torsion_counts(structure: AbGroupStructure, q: int) -> dict[int, int]:
    """The same counts predicted from an invariant-factor description of a finite group."""
    assert structure.free_rank == 0
    return {m: prod(gcd(m, d) for d in structure.torsion) for m in range(1, q + 1) if q % m == 0}


def mod_q_complex(d_in: list[list[int]], d_out: list[list[int]], dims: tuple[int, int, int], q: int) -> PresentedComplex:
    """The complex above as presented groups ``Z^a / qZ^a`` (degrees 1, 0, -1)."""
    terms = {k: FinAbPresentation(d, IntMatrix.identity(d).scale(q)) for k, d in zip((1, 0, -1), dims)}
    diffs = {}
    if dims[0] and dims[1]:
        diffs[1] = IntMatrix.from_rows(d_in, dims[0])
    if dims[1] and dims[2]:
        diffs[0] = IntMatrix.from_rows(d_out, dims[1])
    return PresentedComplex(terms, diffs)


# ---------------------------------------------------------------------------
# groups


def abelianization_order(G: FiniteGroup) -> int:
    """``|G / [G, G]|`` by closing the commutators under multiplication."""
    comm = {G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))) for a in range(G.n) for b in range(G.n)}
    sub = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for c in comm:
            y = G.mul(x, c)
            if y not in sub:
                sub.add(y)
                frontier.append(y)
    return G.n // len(sub)


def hom_count_to_cyclic(G: FiniteGroup, p: int) -> int:
    """``|Hom(G, Z/p)|`` by trying every function ``G -> Z/p``."""
    count = 0
    for f in product(range(p), repeat=G.n - 1):
        val = (0,) + f
        if all(val[G.mul(a, b)] == (val[a] + val[b]) % p for a in range(G.n) for b in range(G.n)):
            count += 1
    return count


def cyclic_generator(G: FiniteGroup) -> int:
    return next(g for g in range(G.n) if G.element_order(g) == G.n)


def periodic_tate(G: FiniteGroup, M: GModule, k: int) -> AbGroupStructure:
    """``Hhat^k`` of a cyclic group from the 2-periodic resolution.

    Cochains are ``M`` in every degree; the coboundary leaving an even degree
    is ``t - 1`` and the one leaving an odd degree is the norm.  Degrees are
    negated so that the cochain complex is stored as a chain complex.
    """
    t = cyclic_generator(G)
    T = M.action[t]
    I = IntMatrix.identity(M.generators)
    norm = IntMatrix.zeros(M.generators, M.generators)
    for g in range(G.n):
        norm = norm + M.action[g]

    def coboundary(j: int) -> IntMatrix:    # leaves cochain degree j
        return T - I if j % 2 == 0 else norm

    terms = {-j: M.presentation for j in (k - 1, k, k + 1)}
    diffs = {-j: coboundary(j) for j in (k - 1, k)}
    return PresentedComplex(terms, diffs).homology(-k).structure
