"""Equivariant complexes: bar, Koszul, ``C*(G)``, duals, complete resolutions, and chain lifting.

Cochain complexes are stored as chain complexes with negated degrees, so
``hom_G`` of a stored complex always lands in the cochain index (see
:func:`hom_complex`).  Terms and differentials are produced on demand, which
keeps large bar terms out of memory until a degree window actually needs them.
"""
from __future__ import annotations

import copy
from functools import cached_property
from typing import Callable, Mapping, Sequence

from .exterior import delta_N, koszul_boundary, lambda_module, sort_sign, subset_index
from .groups import FiniteGroup
from .linalg import ChainMap, IntMatrix, LinearSolver, PresentedComplex, vstack
from .linalg.presentation import FinAbPresentation
from .modules import (
    DualMonomialModule,
    EquivariantMap,
    GModule,
    HomPresentation,
    MonomialGModule,
    OrbitData,
    TensorPresentation,
    dual_module,
    induced_hom_map,
    induced_tensor_map,
    regular_module,
    trivial_monomial,
)

DEFAULT_MAX_TERM_SIZE = 20000
DEFAULT_MAX_BAR_DEGREE = 4

Vector = Mapping[int, int]


class ResourceCapError(RuntimeError):
    """A requested term exceeds the configured size cap."""


class LiftError(ArithmeticError):
    """An equivariant chain lift does not exist over the integers for the given data."""


# ---------------------------------------------------------------------------
# bar terms


class _BarLocator:
    __slots__ = ("module",)

    def __init__(self, module: "BarModule"):
        self.module = module

    def __getitem__(self, i: int) -> tuple[int, int, int]:
        m = self.module
        g0 = i // m.power
        inv = m.group.inverses[g0]
        row = m.group.table[inv]
        rep = 0
        for x in m.decode(i)[1:]:
            rep = rep * m.group.n + row[x]
        return rep, g0, 1

    def __len__(self):
        return self.module.rank


class BarModule(MonomialGModule):
    """``Z[G^(k+1)]`` with the diagonal action; tuple ``(g_0..g_k)`` has index ``sum g_i n^(k-i)``.

    Orbit representatives are the tuples with ``g_0 = 1``; their index equals
    the orbit number.
    """

    def __init__(self, G: FiniteGroup, k: int):
        self.group = G
        self.degree = k
        self.power = G.n ** k
        self.rank = G.n ** (k + 1)
        self.name = f"P{k}"

    def decode(self, i: int) -> list[int]:
        n = self.group.n
        out = [0] * (self.degree + 1)
        for p in range(self.degree, -1, -1):
            i, out[p] = divmod(i, n)
        return out

    def encode(self, t: Sequence[int]) -> int:
        n = self.group.n
        i = 0
        for x in t:
            i = i * n + x
        return i

    def act(self, g: int, i: int) -> tuple[int, int]:
        row = self.group.table[g]
        return self.encode([row[x] for x in self.decode(i)]), 1

    def label(self, i: int):
        return tuple(self.decode(i))

    @cached_property
    def orbits(self) -> OrbitData:
        count = self.power
        return OrbitData(tuple(range(count)), ((((0, 1),),) * count), _BarLocator(self))


_BAR_CACHE: dict = {}


def bar_module(G: FiniteGroup, k: int, max_term_size: int = DEFAULT_MAX_TERM_SIZE) -> BarModule:
    if G.n ** (k + 1) > max_term_size:
        raise ResourceCapError(
            f"bar term P_{k} of {G.name} has {G.n ** (k + 1)} basis elements (cap {max_term_size})")
    key = (G, k)
    m = _BAR_CACHE.get(key)
    if m is None:
        m = BarModule(G, k)
        _BAR_CACHE[key] = m
    return m


def bar_boundary(P: BarModule, Q: BarModule) -> EquivariantMap:
    """``d(g_0..g_k) = sum_i (-1)^i (g_0..g_i deleted..g_k)``."""
    def column(i: int) -> dict[int, int]:
        t = P.decode(i)
        col: dict[int, int] = {}
        for p in range(len(t)):
            j = Q.encode(t[:p] + t[p + 1:])
            v = col.get(j, 0) + (-1 if p % 2 else 1)
            if v:
                col[j] = v
            else:
                del col[j]
        return col
    return EquivariantMap(P, Q, column)


def bar_coboundary(Pd: MonomialGModule, Qd: MonomialGModule) -> EquivariantMap:
    """Transpose of the bar boundary ``P_(k+1) -> P_k``, as a map ``P_k^dual -> P_(k+1)^dual``."""
    P: BarModule = Pd.base if isinstance(Pd, DualMonomialModule) else Pd
    Q: BarModule = Qd.base if isinstance(Qd, DualMonomialModule) else Qd
    n = P.group.n

    def column(i: int) -> dict[int, int]:
        t = P.decode(i)
        col: dict[int, int] = {}
        for p in range(len(t) + 1):
            sgn = -1 if p % 2 else 1
            for h in range(n):
                j = Q.encode(t[:p] + [h] + t[p:])
                v = col.get(j, 0) + sgn
                if v:
                    col[j] = v
                else:
                    del col[j]
        return col
    return EquivariantMap(Pd, Qd, column)


# ---------------------------------------------------------------------------
# complexes


class EquivariantComplex:
    """Chain complex of signed-permutation modules, degrees ``lo..hi``, built lazily.

    ``term(k)`` returns a :class:`MonomialGModule`, ``differential(k)`` the map
    ``term(k) -> term(k-1)``.  ``augmentation`` (if any) maps ``term(0)`` onto
    the trivial module ``Z``.
    """

    def __init__(self, group: FiniteGroup, lo: int, hi: int,
                 term: Callable[[int], MonomialGModule] | Mapping[int, MonomialGModule],
                 differential: Callable[[int], EquivariantMap] | Mapping[int, EquivariantMap],
                 augmentation: EquivariantMap | None = None, name: str = "X"):
        self.group = group
        self.lo = lo
        self.hi = hi
        self._term_fn = term if callable(term) else term.__getitem__
        self._diff_fn = differential if callable(differential) else differential.__getitem__
        self._terms: dict[int, MonomialGModule] = {}
        self._diffs: dict[int, EquivariantMap] = {}
        self.augmentation = augmentation
        self.name = name

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def has_term(self, k: int) -> bool:
        return self.lo <= k <= self.hi

    def term(self, k: int) -> MonomialGModule | None:
        if not self.has_term(k):
            return None
        t = self._terms.get(k)
        if t is None:
            t = self._term_fn(k)
            self._terms[k] = t
        return t

    def differential(self, k: int) -> EquivariantMap | None:
        if not (self.has_term(k) and self.has_term(k - 1)):
            return None
        d = self._diffs.get(k)
        if d is None:
            d = self._diff_fn(k)
            self._diffs[k] = d
        return d

    def failures(self, degrees: Sequence[int] | None = None) -> list[str]:
        """Equivariance and ``d o d = 0`` problems in the given degrees (empty if fine)."""
        out = []
        for k in degrees if degrees is not None else self.degrees:
            d = self.differential(k)
            if d is None:
                continue
            if d.failures():
                out.append(f"differential {k} is not equivariant")
            d1 = self.differential(k - 1)
            comp = d1 if d1 is not None else (self.augmentation if k == 1 else None)
            if comp is not None:
                for r in d.source.orbits.reps:
                    if apply_map(comp, d.column(r)):
                        out.append(f"d o d != 0 at degree {k}")
                        break
        if self.augmentation is not None and self.augmentation.failures():
            out.append("augmentation is not equivariant")
        return out

    def check(self, degrees: Sequence[int] | None = None) -> None:
        bad = self.failures(degrees)
        if bad:
            raise ValueError("; ".join(bad))

    def __repr__(self):
        return f"EquivariantComplex({self.name}, degrees {self.lo}..{self.hi})"


def apply_map(phi: EquivariantMap, x: Vector) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, v in x.items():
        if not v:
            continue
        for r, w in phi.column(i).items():
            s = out.get(r, 0) + v * w
            if s:
                out[r] = s
            else:
                del out[r]
    return out


def bar_resolution(G: FiniteGroup, top_degree: int, max_term_size: int = DEFAULT_MAX_TERM_SIZE,
                   *, lazy: bool = False) -> EquivariantComplex:
    """Bar resolution in degrees ``0..top_degree``.

    Over-cap terms are refused immediately unless ``lazy`` is set, in which
    case the refusal happens when the term is first requested.
    """
    if top_degree < 0:
        raise ValueError("top degree must be nonnegative")
    if not lazy:
        bar_module(G, top_degree, max_term_size)
    Z = trivial_monomial(G)
    P0 = bar_module(G, 0)
    aug = EquivariantMap(P0, Z, lambda i: {0: 1})
    return EquivariantComplex(
        G, 0, top_degree,
        lambda k: bar_module(G, k, max_term_size),
        lambda k: bar_boundary(bar_module(G, k, max_term_size), bar_module(G, k - 1, max_term_size)),
        aug, "bar")


def koszul_resolution(G: FiniteGroup) -> EquivariantComplex:
    """``Kos+``: ``Lambda^(k+1)`` in degree ``k`` for ``0 <= k <= n-1``, augmented by the all-ones map."""
    n = G.n
    Z = trivial_monomial(G)
    aug = EquivariantMap(lambda_module(G, 1), Z, lambda i: {0: 1})
    return EquivariantComplex(
        G, 0, n - 1,
        lambda k: lambda_module(G, k + 1),
        lambda k: EquivariantMap(lambda_module(G, k + 1), lambda_module(G, k), koszul_boundary(n, k + 1)),
        aug, "Kos+")


def cochain_C(G: FiniteGroup) -> EquivariantComplex:
    """``0 -> Z -> Z[G] -> ... -> Lambda^n -> 0`` with ``delta_N``; ``Lambda^k`` stored in degree ``-k``."""
    n = G.n
    return EquivariantComplex(
        G, -n, 0,
        lambda j: lambda_module(G, -j),
        lambda j: EquivariantMap(lambda_module(G, -j), lambda_module(G, -j + 1), delta_N(n, -j)),
        None, "C*")


def dual_resolution(G: FiniteGroup) -> EquivariantComplex:
    """``Z <- C_1^dual <- ... <- C_n^dual`` with ``C_k^dual`` in degree ``k`` (``Z = C_0^dual`` in degree 0).

    The differential ``C_k^dual -> C_(k-1)^dual`` is the transpose of ``delta_N^(k-1)``.
    """
    n = G.n

    def term(k):
        return dual_module(lambda_module(G, k))

    def diff(k):
        return EquivariantMap(term(k), term(k - 1), delta_N(n, k - 1).transpose())

    return EquivariantComplex(G, 0, n, term, diff, None, "C^")


def shifted_dual_resolution(G: FiniteGroup) -> EquivariantComplex:
    """``C^dual`` as a resolution of ``Z``: degree ``i`` holds ``C_(i+1)^dual``, augmented by ``psi -> psi(N)``."""
    n = G.n
    C = dual_resolution(G)
    aug = EquivariantMap(C.term(1), trivial_monomial(G), delta_N(n, 0).transpose())
    return EquivariantComplex(G, 0, n - 1, lambda i: C.term(i + 1), lambda i: C.differential(i + 1), aug, "C^+")


def norm_splice(P0: MonomialGModule, P0d: MonomialGModule) -> EquivariantMap:
    """``P_0 -> P_0^dual``, ``g -> sum_h h^dual`` (augmentation followed by its transpose)."""
    full = {h: 1 for h in range(P0d.rank)}
    return EquivariantMap(P0, P0d, lambda i: full)


def complete_resolution(G: FiniteGroup, lo: int, hi: int, max_term_size: int = DEFAULT_MAX_TERM_SIZE,
                        *, lazy: bool = False) -> EquivariantComplex:
    """Complete resolution on degrees ``lo..hi``: ``P_j`` for ``j >= 0`` and ``P_(-j-1)^dual`` for ``j < 0``."""
    def term(j):
        if j >= 0:
            return bar_module(G, j, max_term_size)
        return dual_module(bar_module(G, -j - 1, max_term_size))

    def diff(j):
        if j >= 1:
            return bar_boundary(term(j), term(j - 1))
        if j == 0:
            return norm_splice(term(0), term(-1))
        return bar_coboundary(term(j), term(j - 1))

    if not lazy:
        for j in (lo, hi):
            term(j)
    return EquivariantComplex(G, lo, hi, term, diff, None, "complete")


# ---------------------------------------------------------------------------
# periodic resolution of a cyclic group


def cyclic_generator(G: FiniteGroup) -> int | None:
    for x in range(G.n):
        if G.orders[x] == G.n:
            return x
    return None


def periodic_resolution(G: FiniteGroup, lo: int, hi: int) -> EquivariantComplex:
    """Complete 2-periodic resolution of a cyclic group: ``Z[G]`` in every degree,
    ``d_j = (t - 1)`` for odd ``j`` and the norm for even ``j`` (right multiplication)."""
    t = cyclic_generator(G)
    if t is None:
        raise ValueError(f"{G.name} is not cyclic")
    Q = regular_module(G)
    norm = {h: 1 for h in range(G.n)}

    def diff(j):
        if j % 2:
            return EquivariantMap(Q, Q, lambda g: {G.table[g][t]: 1, g: -1} if G.n > 1 else {})
        return EquivariantMap(Q, Q, lambda g: norm)

    aug = EquivariantMap(Q, trivial_monomial(G), lambda g: {0: 1})
    return EquivariantComplex(G, lo, hi, lambda j: Q, diff, aug if lo <= 0 <= hi else None, "periodic")


# ---------------------------------------------------------------------------
# transposes and the dual (cochain) complex of a resolution


def transpose_map(phi: EquivariantMap) -> EquivariantMap:
    """``phi^T : L'^dual -> L^dual`` (equivariant because the actions are signed permutations)."""
    src, tgt = phi.source, phi.target
    if isinstance(src, BarModule) and isinstance(tgt, BarModule) and src.degree == tgt.degree + 1:
        return bar_coboundary(dual_module(tgt), dual_module(src))
    M = phi.to_matrix().transpose()
    return EquivariantMap(dual_module(tgt), dual_module(src), M)


def coaugmented_dual(P: EquivariantComplex) -> EquivariantComplex:
    """``Z -> P_0^dual -> P_1^dual -> ...`` stored with ``Z`` in degree 0 and ``P_(j-1)^dual`` in degree ``-j``."""
    G = P.group
    Z = lambda_module(G, 0)
    if P.augmentation is None:
        raise ValueError("resolution has no augmentation")

    def term(j):
        return Z if j == 0 else dual_module(P.term(-j - 1))

    def diff(j):
        # degree j -> j-1, i.e. X_(-j) -> X_(-j+1)
        if j == 0:
            aug = P.augmentation
            col = {}
            P0 = P.term(0)
            for i in range(P0.rank):
                v = aug.column(i).get(0, 0)
                if v:
                    col[i] = v
            return EquivariantMap(Z, term(-1), lambda i: col)
        return transpose_map(P.differential(-j))

    return EquivariantComplex(G, -(P.hi + 1), 0, term, diff, None, f"{P.name}^")


# ---------------------------------------------------------------------------
# chain maps


class EquivariantChainMap:
    """Components ``f_k : X_k -> Y_(k+shift)`` given as :class:`EquivariantMap` (lazy)."""

    def __init__(self, source: EquivariantComplex, target: EquivariantComplex,
                 component: Callable[[int], EquivariantMap | None] | Mapping[int, EquivariantMap], shift: int = 0):
        self.source = source
        self.target = target
        self.shift = shift
        self._fn = component if callable(component) else component.get
        self._cache: dict[int, EquivariantMap | None] = {}

    def component(self, k: int) -> EquivariantMap | None:
        if k not in self._cache:
            self._cache[k] = self._fn(k) if self.source.has_term(k) and self.target.has_term(k + self.shift) else None
        return self._cache[k]

    def failures(self, degrees: Sequence[int]) -> list[str]:
        out = []
        for k in degrees:
            f = self.component(k)
            if f is None:
                continue
            if f.failures():
                out.append(f"component {k} is not equivariant")
            d = self.source.differential(k)
            f1 = self.component(k - 1)
            d2 = self.target.differential(k + self.shift)
            for r in f.source.orbits.reps:
                lhs = apply_map(f1, d.column(r)) if (d is not None and f1 is not None) else {}
                rhs = apply_map(d2, f.column(r)) if d2 is not None else {}
                if lhs != rhs:
                    out.append(f"square at degree {k} does not commute")
                    break
        return out


def wedge_chain_map(G: FiniteGroup, top_degree: int, max_term_size: int = DEFAULT_MAX_TERM_SIZE,
                    *, lazy: bool = False) -> EquivariantChainMap:
    """Bar resolution to ``Kos+``: ``(g_0..g_k) -> g_0 ^ ... ^ g_k``."""
    P = bar_resolution(G, top_degree, max_term_size, lazy=lazy)
    K = koszul_resolution(G)

    def comp(k):
        src = P.term(k)
        tgt = K.term(k)
        idx = subset_index(G.n, k + 1)

        def column(i):
            s, J = sort_sign(src.decode(i))
            return {idx[J]: s} if s else {}
        return EquivariantMap(src, tgt, column)

    return EquivariantChainMap(P, K, comp)


class _ExtendedMap(EquivariantMap):
    """Equivariant map determined by its values on orbit representatives of the source."""

    def __init__(self, source: MonomialGModule, target: MonomialGModule, rep_values: Sequence[dict[int, int]]):
        self.rep_values = list(rep_values)
        super().__init__(source, target, self._extend)

    def _extend(self, i: int) -> dict[int, int]:
        o, g, s = self.source.orbits.locate(i)
        out: dict[int, int] = {}
        for r, v in self.rep_values[o].items():
            r2, t = self.target.act(g, r)
            out[r2] = out.get(r2, 0) + s * t * v
        return {r: v for r, v in out.items() if v}


def extend_from_reps(source: MonomialGModule, target: MonomialGModule, rep_values: Sequence[dict[int, int]]) -> EquivariantMap:
    return _ExtendedMap(source, target, rep_values)


def lift_chain_map(source: EquivariantComplex, target: EquivariantComplex, top_degree: int,
                   base: int = 1, column_order: Callable[[int, int], Sequence[int]] | None = None) -> EquivariantChainMap:
    """Lift ``base * id_Z`` to an equivariant chain map ``source -> target`` in degrees ``0..top_degree``.

    Values are solved on orbit representatives only; a non-free source orbit
    adds its stabilizer constraints to the system.  ``column_order(k, size)``
    permutes the unknowns of degree ``k`` (different orders give different,
    homotopic lifts).
    """
    if source.augmentation is None or target.augmentation is None:
        raise ValueError("lifting needs augmented complexes")
    comps: dict[int, EquivariantMap] = {}
    for k in range(0, top_degree + 1):
        X = source.term(k)
        Y = target.term(k)
        if X is None or Y is None:
            break   # zero from here on
        if k == 0:
            D = target.augmentation.to_matrix()
        else:
            D = target.differential(k).to_matrix()
        order = list(column_order(k, Y.rank)) if column_order else list(range(Y.rank))
        Dp = D.select_columns(order)
        solvers: dict = {}
        values = []
        for o, r in enumerate(X.orbits.reps):
            if k == 0:
                v = base * source.augmentation.column(r).get(0, 0)
                rhs = {0: v} if v else {}
            else:
                rhs = apply_map(comps[k - 1], source.differential(k).column(r))
            stab = tuple(p for p in X.orbits.stabilizers[o] if p != (0, 1))
            solver = solvers.get(stab)
            if solver is None:
                if stab:
                    cons = []
                    for g, s in stab:
                        A = _action_matrix(Y, g).select_columns(order)
                        cons.append(A - IntMatrix.identity(Y.rank).select_columns(order).scale(s))
                    solver = LinearSolver(vstack([Dp] + cons))
                else:
                    solver = LinearSolver(Dp)
                solvers[stab] = solver
            x = solver.solve(rhs)
            if x is None:
                raise LiftError(f"no equivariant lift for orbit {o} in degree {k}")
            values.append({order[j]: v for j, v in enumerate(x) if v})
        comps[k] = extend_from_reps(X, Y, values)
    return EquivariantChainMap(source, target, comps)


def _action_matrix(L: MonomialGModule, g: int) -> IntMatrix:
    cols = []
    for i in range(L.rank):
        j, s = L.act(g, i)
        cols.append({j: s})
    return IntMatrix._trusted(L.rank, L.rank, cols)


# ---------------------------------------------------------------------------
# Hom and tensor of complexes


class LazyPresentedComplex(PresentedComplex):
    """A :class:`PresentedComplex` whose terms and differentials are computed on demand."""

    def __init__(self, lo: int, hi: int, term: Callable[[int], FinAbPresentation],
                 differential: Callable[[int], IntMatrix]):
        self.lo = lo
        self.hi = hi
        self._term_fn = term
        self._diff_fn = differential
        self.terms: dict[int, FinAbPresentation] = {}
        self.differentials: dict[int, IntMatrix] = {}
        self._cache = {}

    def term(self, k: int) -> FinAbPresentation:
        if not self.lo <= k <= self.hi:
            return FinAbPresentation(0)
        t = self.terms.get(k)
        if t is None:
            t = self._term_fn(k)
            self.terms[k] = t
        return t

    def differential(self, k: int) -> IntMatrix:
        if not (self.lo <= k <= self.hi and self.lo <= k - 1 <= self.hi):
            return IntMatrix.zeros(self.term(k - 1).generators, self.term(k).generators)
        d = self.differentials.get(k)
        if d is None:
            d = self._diff_fn(k)
            self.differentials[k] = d
        return d

    def truncated(self, lo: int, hi: int) -> "LazyPresentedComplex":
        """The same complex with terms outside ``lo..hi`` replaced by zero (term caches are shared)."""
        view = copy.copy(self)
        view.lo = max(lo, self.lo)
        view.hi = min(hi, self.hi)
        view._cache = {}
        return view


class HomComplex(LazyPresentedComplex):
    """``hom_G(X, M)`` with ``hom(X_j, M)`` in degree ``-j``."""

    def __init__(self, X: EquivariantComplex, M: GModule):
        self.X = X
        self.M = M
        self._homs: dict[int, HomPresentation] = {}
        super().__init__(-X.hi, -X.lo, lambda d: self.hom(d).result, self._diff)

    def hom(self, degree: int) -> HomPresentation:
        h = self._homs.get(degree)
        if h is None:
            h = HomPresentation(self.X.term(-degree), self.M)
            self._homs[degree] = h
        return h

    def _diff(self, d: int) -> IntMatrix:
        # degree d -> d-1 is induced by X_(-d+1) -> X_(-d)
        phi = self.X.differential(-d + 1)
        return induced_hom_map(phi, self.M, self.hom(d), self.hom(d - 1), check=False)


class TensorComplex(LazyPresentedComplex):
    """``X tensor_G M`` with ``X_j tensor M`` in degree ``j``."""

    def __init__(self, X: EquivariantComplex, M: GModule):
        self.X = X
        self.M = M
        self._tens: dict[int, TensorPresentation] = {}
        super().__init__(X.lo, X.hi, lambda d: self.tensor(d).result, self._diff)

    def tensor(self, degree: int) -> TensorPresentation:
        t = self._tens.get(degree)
        if t is None:
            t = TensorPresentation(self.X.term(degree), self.M)
            self._tens[degree] = t
        return t

    def _diff(self, d: int) -> IntMatrix:
        return induced_tensor_map(self.X.differential(d), self.M, self.tensor(d), self.tensor(d - 1), check=False)


def hom_complex(X: EquivariantComplex, M: GModule) -> HomComplex:
    return HomComplex(X, M)


def tensor_complex(X: EquivariantComplex, M: GModule) -> TensorComplex:
    return TensorComplex(X, M)


class LazyChainMap(ChainMap):
    def __init__(self, source: PresentedComplex, target: PresentedComplex, component: Callable[[int], IntMatrix | None], shift: int = 0):
        super().__init__(source, target, {}, shift)
        self._fn = component

    def component(self, k: int) -> IntMatrix:
        f = self.components.get(k)
        if f is None:
            f = self._fn(k)
            if f is None:
                f = IntMatrix.zeros(self.target.term(k + self.shift).generators, self.source.term(k).generators)
            self.components[k] = f
        return f


def hom_chain_map(f: EquivariantChainMap, M: GModule, source: HomComplex, target: HomComplex) -> LazyChainMap:
    """``hom(f, M) : hom(Y, M) -> hom(X, M)`` for ``f : X -> Y`` (degree ``-j-shift -> -j``)."""
    def comp(d):
        j = -d - f.shift            # hom(Y_(j+shift)) sits in degree -(j+shift) = d
        phi = f.component(j)
        if phi is None:
            return None
        return induced_hom_map(phi, M, source.hom(d), target.hom(-j), check=False)
    return LazyChainMap(source, target, comp, f.shift)


def tensor_chain_map(f: EquivariantChainMap, M: GModule, source: TensorComplex, target: TensorComplex) -> LazyChainMap:
    def comp(k):
        phi = f.component(k)
        if phi is None:
            return None
        return induced_tensor_map(phi, M, source.tensor(k), target.tensor(k + f.shift), check=False)
    return LazyChainMap(source, target, comp, f.shift)


def dual_chain_map(f: EquivariantChainMap, source_dual: EquivariantComplex, target_dual: EquivariantComplex) -> EquivariantChainMap:
    """Transpose of an augmentation-preserving lift ``P -> E`` between coaugmented duals
    (``coaugmented_dual(E) -> coaugmented_dual(P)``), identity on ``Z``."""
    G = f.source.group
    Z = lambda_module(G, 0)

    def comp(j):
        if j == 0:
            return EquivariantMap(Z, Z, lambda i: {0: 1})
        phi = f.component(-j - 1)
        if phi is None:
            return None
        return transpose_map(_materialize(phi))
    return EquivariantChainMap(source_dual, target_dual, comp)


def _materialize(phi: EquivariantMap) -> EquivariantMap:
    return EquivariantMap(phi.source, phi.target, phi.to_matrix())
