"""Chain complexes of presented abelian groups, their homology, and induced maps.

Homology is computed on a free model of the complex.  With ``C_k = Z^{t_k} /
R_k`` (``R_k`` injective) the totalization ``T_k = Z^{t_k} + Z^{r_{k-1}}`` with

    d(x, y) = (D x + R y,  -H x - E y),    D R = R E,   D D = R H

is a complex of free groups with ``H_k(T) = H_k(C)``.  Unit entries of ``T``
are then cancelled by Gaussian elimination (recorded, so that cycles can be
carried in both directions) and the small remainder is handled densely with
the Smith form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .kernels import include_vector, project_vector, reduce_chain_complex, smith_dense
from .matrix import IntMatrix, hstack
from .presentation import FinAbPresentation, subgroup_lattice
from .smith import AbGroupStructure, LinearSolver, cokernel_structure, lattice_basis, preimage_lattice

Vector = Mapping[int, int]


class NotAComplexError(ValueError):
    """Differentials do not compose to zero modulo relations, or do not respect relations."""


class NotAChainMapError(ValueError):
    """A family of maps does not commute with the differentials modulo relations."""


class PresentedComplex:
    """Chain complex ``d_k : C_k -> C_{k-1}`` of finitely presented abelian groups.

    Terms outside ``degrees`` are zero.  Differentials are given on generators;
    missing differentials are zero.
    """

    def __init__(self, terms: Mapping[int, FinAbPresentation], differentials: Mapping[int, IntMatrix] | None = None):
        self.terms = dict(terms)
        self.differentials = dict(differentials or {})
        if self.terms:
            self.lo = min(self.terms)
            self.hi = max(self.terms)
        else:
            self.lo, self.hi = 0, -1
        for k, d in self.differentials.items():
            src, tgt = self.term(k), self.term(k - 1)
            if d.shape != (tgt.generators, src.generators):
                raise ValueError(
                    f"differential {k} has shape {d.shape}, expected {(tgt.generators, src.generators)}")
        self._cache: dict[int, HomologyGroup] = {}

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def term(self, k: int) -> FinAbPresentation:
        t = self.terms.get(k)
        return t if t is not None else _ZERO

    def differential(self, k: int) -> IntMatrix:
        d = self.differentials.get(k)
        if d is not None:
            return d
        return IntMatrix.zeros(self.term(k - 1).generators, self.term(k).generators)

    def validate(self) -> None:
        """Raise :class:`NotAComplexError` unless the data define a complex."""
        for k in range(self.lo, self.hi + 2):
            _relation_images(self, k)
            _square_to_zero(self, k)

    def homology(self, k: int) -> "HomologyGroup":
        h = self._cache.get(k)
        if h is None:
            h = HomologyGroup(self, k)
            self._cache[k] = h
        return h

    def __repr__(self):
        dims = {k: self.term(k).generators for k in self.degrees}
        return f"PresentedComplex({dims})"


_ZERO = FinAbPresentation(0)


def _solve_columns(pres: FinAbPresentation, cols, what: str, k: int) -> list[dict[int, int]]:
    out = []
    for c in cols:
        y = pres.solve_relations(c)
        if y is None:
            raise NotAComplexError(f"{what} fails at degree {k}")
        out.append(y)
    return out


def _relation_images(C: PresentedComplex, k: int) -> list[dict[int, int]]:
    # E with R_{k-1} E = D_k R_k
    R = C.term(k).relations
    D = C.differential(k)
    return _solve_columns(C.term(k - 1), [D.apply(c) for c in R.columns()], "differential does not respect relations", k)


def _square_to_zero(C: PresentedComplex, k: int) -> list[dict[int, int]]:
    # H with R_{k-2} H = D_{k-1} D_k
    D = C.differential(k)
    D1 = C.differential(k - 1)
    return _solve_columns(C.term(k - 2), [D1.apply(c) for c in D.columns()], "d o d is not zero", k)


def _total_differential(C: PresentedComplex, k: int) -> dict[int, dict[int, int]]:
    """Columns of ``d^T_k : T_k -> T_{k-1}`` keyed by basis index."""
    t_k = C.term(k).generators
    t_k1 = C.term(k - 1).generators
    D = C.differential(k)
    Rm = C.term(k - 1).relations
    H = _square_to_zero(C, k)
    E = _relation_images(C, k - 1)
    cols: dict[int, dict[int, int]] = {}
    for j in range(t_k):
        col = dict(D.column(j))
        for i, v in H[j].items():
            col[t_k1 + i] = -v
        cols[j] = col
    for j in range(Rm.cols):
        col = dict(Rm.column(j))
        for i, v in E[j].items():
            col[t_k1 + i] = -v
        cols[t_k + j] = col
    return cols


class HomologyGroup:
    """``H_k`` of a :class:`PresentedComplex`, with generator representatives.

    ``orders[i]`` is the order of generator ``i`` (0 for infinite order);
    ``representatives[i]`` is a cycle of ``C_k`` (generator coordinates)
    representing it.
    """

    def __init__(self, C: PresentedComplex, k: int):
        self.complex = C
        self.degree = k
        t_k = C.term(k).generators
        self._t_k = t_k
        dims = {
            k + 1: C.term(k + 1).generators + C.term(k).relation_count,
            k: t_k + C.term(k - 1).relation_count,
            k - 1: C.term(k - 1).generators + C.term(k - 2).relation_count,
        }
        diffs = {k + 1: _total_differential(C, k + 1), k: _total_differential(C, k)}
        # only the kernel of the lowest differential matters here, so it may use non-unit pivots
        steps = reduce_chain_complex(diffs, split_degree=k)
        self._up_steps = [s for s in steps if s[0] == k + 1]
        self._steps = [s for s in steps if s[0] == k]
        pivots = [s for s in self._steps if len(s) == 6]
        self._ops = [s for s in self._steps if len(s) == 4]
        gone_top = {s[1] for s in self._up_steps}
        gone_mid = {s[2] for s in self._up_steps} | {s[1] for s in pivots}
        gone_low = {s[2] for s in pivots}
        self._drop = {s[1] for s in pivots}
        top = [i for i in range(dims[k + 1]) if i not in gone_top]
        mid = [i for i in range(dims[k]) if i not in gone_mid]
        low = [i for i in range(dims[k - 1]) if i not in gone_low]
        self._mid = mid
        self._mid_pos = {b: i for i, b in enumerate(mid)}
        low_pos = {b: i for i, b in enumerate(low)}
        n_mid = len(mid)
        # dense remainder
        d_in = [[0] * len(top) for _ in range(n_mid)]
        for j, a in enumerate(top):
            for b, v in diffs[k + 1][a].items():
                d_in[self._mid_pos[b]][j] = v
        d_out = IntMatrix._trusted(len(low), n_mid, [
            {low_pos[b]: v for b, v in diffs[k][a].items()} for a in mid])
        if n_mid == 0:
            self._kernel = IntMatrix.zeros(0, 0)
        elif len(low) == 0:
            self._kernel = IntMatrix.identity(n_mid)
        else:
            self._kernel = LinearSolver(d_out).kernel()
        z = self._kernel.cols
        self._ksolver = LinearSolver(self._kernel) if z else None
        coords = []
        for j in range(len(top)):
            col = {i: d_in[i][j] for i in range(n_mid) if d_in[i][j]}
            c = self._ksolver.solve(col) if self._ksolver else []
            if c is None:
                raise NotAComplexError(f"reduced differentials do not compose to zero at degree {k}")
            coords.append(c)
        a = [[coords[j][i] for j in range(len(top))] for i in range(z)]
        S, U, _, Ui, _ = smith_dense(a, z, len(top), True)
        diag = [S[i][i] if i < len(top) else 0 for i in range(z)]
        keep = [i for i in range(z) if diag[i] != 1]
        self._U = U
        self._keep = keep
        self.orders = tuple(diag[i] for i in keep)
        self.structure = AbGroupStructure.from_diagonal(
            [d for d in self.orders if d], len(self.orders))
        self._reps_reduced = [[Ui[r][i] for r in range(z)] for i in keep]
        self._reps: list[dict[int, int]] | None = None

    # -- generators ------------------------------------------------------------
    @property
    def rank(self) -> int:
        """Number of invariant-factor generators."""
        return len(self.orders)

    @property
    def representatives(self) -> list[dict[int, int]]:
        if self._reps is None:
            reps = []
            K = self._kernel
            for ui in self._reps_reduced:
                w = {}
                for c, x in enumerate(ui):
                    if x:
                        for r, v in K.column(c).items():
                            w[self._mid[r]] = w.get(self._mid[r], 0) + v * x
                w = include_vector({i: v for i, v in w.items() if v}, self._steps)
                reps.append({i: v for i, v in w.items() if i < self._t_k and v})
            self._reps = reps
        return self._reps

    def presentation(self) -> FinAbPresentation:
        n = len(self.orders)
        cols = [{i: d} for i, d in enumerate(self.orders) if d]
        rel = IntMatrix._trusted(n, len(cols), cols)
        return FinAbPresentation(n, rel)

    # -- coordinates -----------------------------------------------------------
    def lift_cycle(self, x: Vector) -> dict[int, int] | None:
        """The cycle ``(x, y)`` of the free model, or ``None`` if ``x`` is not a cycle."""
        C = self.complex
        k = self.degree
        dx = C.differential(k).apply(x)
        y = C.term(k - 1).solve_relations(dx)
        if y is None:
            return None
        v = {i: val for i, val in x.items() if val}
        for i, val in y.items():
            v[self._t_k + i] = -val
        return v

    def is_cycle(self, x: Vector) -> bool:
        return self.lift_cycle(x) is not None

    def coordinates(self, x: Vector) -> tuple[int, ...]:
        """Coordinates of the class of the cycle ``x`` (reduced modulo the orders)."""
        v = self.lift_cycle(x)
        if v is None:
            raise ValueError(f"vector is not a cycle in degree {self.degree}")
        p = project_vector(v, self._up_steps, self._drop, self._ops)
        dense = {self._mid_pos[i]: val for i, val in p.items() if val}
        if self._ksolver is None:
            return ()
        c = self._ksolver.solve(dense)
        if c is None:
            raise ArithmeticError("projected cycle left the kernel")
        out = []
        for idx, i in enumerate(self._keep):
            row = self._U[i]
            s = sum(row[r] * c[r] for r in range(len(c)) if c[r])
            d = self.orders[idx]
            out.append(s % d if d else s)
        return tuple(out)

    def is_zero_class(self, x: Vector) -> bool:
        return not any(self.coordinates(x))

    def __repr__(self):
        return f"HomologyGroup(degree={self.degree}, {self.structure})"


def homology_at(C: PresentedComplex, k: int, method: str = "reduce") -> HomologyGroup | AbGroupStructure:
    """Homology of ``C`` at degree ``k``.

    ``method="reduce"`` returns a :class:`HomologyGroup` (structure plus lift
    data).  ``method="cover"`` runs the direct free-cover computation and
    returns only the :class:`AbGroupStructure`; it is an independent route
    used for cross-checking.
    """
    if method == "reduce":
        return C.homology(k)
    if method == "cover":
        return _cover_homology(C, k)
    raise ValueError(f"unknown method {method!r}")


def _cover_homology(C: PresentedComplex, k: int) -> AbGroupStructure:
    _square_to_zero(C, k + 1)
    _relation_images(C, k + 1)
    _relation_images(C, k)
    cyc = preimage_lattice(C.differential(k), C.term(k - 1).relations)
    z = cyc.cols
    if z == 0:
        return AbGroupStructure()
    B = hstack([C.term(k).relations, C.differential(k + 1)])
    solver = LinearSolver(cyc)
    coords = []
    for col in B.columns():
        c = solver.solve(col)
        if c is None:
            raise NotAComplexError(f"d o d is not zero at degree {k + 1}")
        coords.append(c)
    return cokernel_structure(IntMatrix.from_columns(coords, z))


@dataclass
class ChainMap:
    """Maps ``f_k : C_k -> D_{k+shift}`` given on generators; missing components are zero."""

    source: PresentedComplex
    target: PresentedComplex
    components: dict[int, IntMatrix] = field(default_factory=dict)
    shift: int = 0

    def component(self, k: int) -> IntMatrix:
        f = self.components.get(k)
        if f is not None:
            return f
        return IntMatrix.zeros(self.target.term(k + self.shift).generators, self.source.term(k).generators)

    def failures(self, k: int) -> list[str]:
        """Reasons the data fail to define a chain map around degree ``k`` (empty if fine)."""
        out = []
        s = self.shift
        f = self.component(k)
        tgt = self.target.term(k + s)
        for c in self.source.term(k).relations.columns():
            if not tgt.contains(f.apply(c)):
                out.append(f"component {k} does not respect relations")
                break
        f1 = self.component(k - 1)
        d = self.source.differential(k)
        d2 = self.target.differential(k + s)
        low = self.target.term(k + s - 1)
        for j in range(self.source.term(k).generators):
            a = f1.apply(d.column(j))
            b = d2.apply(f.column(j))
            for i, v in b.items():
                a[i] = a.get(i, 0) - v
            if not low.contains({i: v for i, v in a.items() if v}):
                out.append(f"maps do not commute with differentials at degree {k}")
                break
        return out

    def apply(self, k: int, x: Vector) -> dict[int, int]:
        return self.component(k).apply(x)


def induced_map_on_homology(f: ChainMap, k: int, *, check: bool = True) -> IntMatrix:
    """Matrix of ``H_k(source) -> H_{k+shift}(target)`` on invariant-factor generators."""
    if check:
        bad = f.failures(k) + f.failures(k + 1)
        if bad:
            raise NotAChainMapError("; ".join(bad))
    src = f.source.homology(k)
    tgt = f.target.homology(k + f.shift)
    cols = []
    for rep in src.representatives:
        image = f.apply(k, rep)
        try:
            cols.append(tgt.coordinates(image))
        except ValueError as exc:
            raise NotAChainMapError(f"image of a cycle is not a cycle at degree {k}") from exc
    return IntMatrix.from_columns(cols, tgt.rank)


@dataclass
class GroupHom:
    """Homomorphism of presented groups given by ``matrix`` on generators."""

    source: FinAbPresentation
    target: FinAbPresentation
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.generators, self.source.generators):
            raise ValueError("matrix shape does not match the presentations")

    @classmethod
    def on_homology(cls, f: ChainMap, k: int, *, check: bool = True) -> "GroupHom":
        M = induced_map_on_homology(f, k, check=check)
        return cls(f.source.homology(k).presentation(), f.target.homology(k + f.shift).presentation(), M)

    def is_well_defined(self) -> bool:
        return all(self.target.contains(self.matrix.apply(c)) for c in self.source.relations.columns())

    def kernel_lattice(self) -> IntMatrix:
        return preimage_lattice(self.matrix, self.target.relations)

    def is_injective(self) -> bool:
        K = self.kernel_lattice()
        return all(self.source.contains(c) for c in K.columns())

    def is_surjective(self) -> bool:
        return self.cokernel().is_trivial

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def cokernel(self) -> AbGroupStructure:
        return cokernel_structure(hstack([self.matrix, self.target.relations]))

    def image(self) -> AbGroupStructure:
        return cokernel_structure(self.kernel_lattice())

    def kernel(self) -> AbGroupStructure:
        K = self.kernel_lattice()
        if K.cols == 0:
            return AbGroupStructure()
        solver = LinearSolver(K)
        coords = [solver.solve(c) for c in self.source.relations.columns()]
        return cokernel_structure(IntMatrix.from_columns(coords, K.cols))

    def image_lattice(self) -> list[list[int]]:
        return subgroup_lattice(list(self.matrix.columns()), self.target)


def is_exact_at(f: GroupHom, g: GroupHom) -> bool:
    """Whether ``A -f-> B -g-> C`` is exact at ``B`` (``ker g == im f``)."""
    if f.target.generators != g.source.generators:
        raise ValueError("maps are not composable")
    B = f.target
    ker = g.kernel_lattice()
    vecs = [ker.column_vector(j) for j in range(ker.cols)]
    vecs += [B.relations.column_vector(j) for j in range(B.relation_count)]
    return lattice_basis(vecs, B.generators) == f.image_lattice()


def structure_of(pres: FinAbPresentation) -> AbGroupStructure:
    return pres.structure()


def free_complex(differentials: Mapping[int, IntMatrix], dims: Mapping[int, int] | None = None) -> PresentedComplex:
    """Complex of free groups from differentials (dimensions inferred where possible)."""
    sizes: dict[int, int] = dict(dims or {})
    for k, d in differentials.items():
        sizes.setdefault(k, d.cols)
        sizes.setdefault(k - 1, d.rows)
    return PresentedComplex({k: FinAbPresentation(n) for k, n in sizes.items()}, differentials)


__all__ = [
    "ChainMap", "GroupHom", "HomologyGroup", "NotAChainMapError", "NotAComplexError", "PresentedComplex",
    "free_complex", "homology_at", "induced_map_on_homology", "is_exact_at", "structure_of",
]
