"""Cohomology engine: classical, Koszul-type and Tate groups of ``(G, M)`` and the maps between them.

Every group is the homology of a lazily built complex, evaluated on a
three-term window so that only the terms adjacent to the requested degree are
ever constructed.  Storage conventions (see :mod:`fincoh.resolutions`):

* ``hom_G(P, M)`` has ``hom(P_k, M)`` in degree ``-k``, so ``H^k = H_(-k)``.
* ``hom_G(C*(G), M)`` has ``hom(Lambda^k, M)`` in degree ``k``.
* The "dual side" complex ``hom(Z, M) <- hom(P_0^dual, M) <- ...`` has
  ``hom(P_(k-1)^dual, M)`` in degree ``k``; its homology at ``k`` is ``Hhat^(-k)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .exterior import hodge_map, lambda_module
from .groups import FiniteGroup
from .linalg import (
    AbGroupStructure,
    GroupHom,
    HomologyGroup,
    IntMatrix,
    LinearSolver,
    cokernel_structure,
    hstack,
    induced_map_on_homology,
    preimage_lattice,
    vstack,
    block_diagonal,
)
from .modules import (
    GModule,
    HomPresentation,
    dual_module,
    induced_hom_map,
    natural_map_t,
    norm_matrix,
    twist,
)
from .resolutions import (
    DEFAULT_MAX_BAR_DEGREE,
    DEFAULT_MAX_TERM_SIZE,
    EquivariantChainMap,
    LazyChainMap,
    ResourceCapError,
    bar_resolution,
    coaugmented_dual,
    cochain_C,
    complete_resolution,
    cyclic_generator,
    dual_chain_map,
    hom_chain_map,
    hom_complex,
    koszul_resolution,
    lift_chain_map,
    periodic_resolution,
    shifted_dual_resolution,
    tensor_chain_map,
    tensor_complex,
    wedge_chain_map,
)


class TheoryTag(str, Enum):
    CLASSICAL_COHOMOLOGY = "classical-cohomology"
    CLASSICAL_HOMOLOGY = "classical-homology"
    LAMBDA_COHOMOLOGY = "lambda-cohomology"
    LAMBDA_HOMOLOGY = "lambda-homology"
    TATE = "tate"
    KAPPA_HOMOLOGY = "kappa-homology"

    @property
    def is_cohomology(self) -> bool:
        return self in (TheoryTag.CLASSICAL_COHOMOLOGY, TheoryTag.LAMBDA_COHOMOLOGY, TheoryTag.TATE)

    def symbol(self, k: int) -> str:
        return {
            TheoryTag.CLASSICAL_COHOMOLOGY: f"H^{k}",
            TheoryTag.CLASSICAL_HOMOLOGY: f"H_{k}",
            TheoryTag.LAMBDA_COHOMOLOGY: f"H^{k}_λ",
            TheoryTag.LAMBDA_HOMOLOGY: f"H_{k}^λ",
            TheoryTag.TATE: f"Ĥ^{k}",
            TheoryTag.KAPPA_HOMOLOGY: f"H_{k}^κ",
        }[self]


@dataclass(frozen=True)
class ComputedGroup:
    theory: TheoryTag
    degree: int
    group: str
    module: str
    structure: AbGroupStructure
    homology: HomologyGroup | None = field(default=None, compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "module": self.module,
            "theory": self.theory.value,
            "degree": self.degree,
            "free_rank": self.structure.free_rank,
            "torsion": list(self.structure.torsion),
        }

    def __str__(self):
        return f"{self.theory.symbol(self.degree)}({self.group}, {self.module}) = {self.structure}"


@dataclass
class MapResult:
    """A homomorphism between two computed groups, on their invariant-factor generators."""

    name: str
    source: ComputedGroup
    target: ComputedGroup
    matrix: IntMatrix

    @property
    def hom(self) -> GroupHom:
        return GroupHom(self.source.homology.presentation(), self.target.homology.presentation(), self.matrix)

    def is_isomorphism(self) -> bool:
        return self.hom.is_isomorphism()

    def is_injective(self) -> bool:
        return self.hom.is_injective()

    def is_surjective(self) -> bool:
        return self.hom.is_surjective()

    def to_json(self) -> dict:
        return {
            "map": self.name,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": self.matrix.tolist(),
        }


@dataclass
class FactorizationCheck:
    """``kappa_(k+1) o t_k`` against ``zeta_k o beta_k`` on ``H_k(G, M)``, compared class by class."""

    degree: int
    via_kappa: IntMatrix
    via_zeta: IntMatrix

    @property
    def holds(self) -> bool:
        return self.via_kappa == self.via_zeta


def _class_matrix(H: HomologyGroup, vectors: Sequence[dict[int, int]]) -> IntMatrix:
    return IntMatrix.from_columns([H.coordinates(v) for v in vectors], H.rank)


class CohomologyEngine:
    """All computations for one pair ``(G, M)``; complexes are built once and shared."""

    def __init__(self, G: FiniteGroup, M: GModule, *, max_bar_degree: int = DEFAULT_MAX_BAR_DEGREE,
                 max_term_size: int = DEFAULT_MAX_TERM_SIZE):
        if M.group.n != G.n:
            raise ValueError("module is over a different group")
        self.G = G
        self.M = M
        self.max_bar_degree = max_bar_degree
        self.max_term_size = max_term_size
        self._complexes: dict = {}
        self._windows: dict = {}
        self._lifts: dict = {}
        self._groups: dict = {}
        self._twisted: CohomologyEngine | None = None

    # -- plumbing ---------------------------------------------------------------
    def _need_bar(self, degree: int) -> None:
        if degree > self.max_bar_degree:
            raise ResourceCapError(f"needs bar degree {degree}, above the maximum {self.max_bar_degree}")
        if self.G.n ** (degree + 1) > self.max_term_size:
            raise ResourceCapError(
                f"bar term P_{degree} of {self.G.name} has {self.G.n ** (degree + 1)} basis elements "
                f"(cap {self.max_term_size})")

    def _complex(self, key: str):
        C = self._complexes.get(key)
        if C is not None:
            return C
        G, M = self.G, self.M
        top = self.max_bar_degree
        if key == "bar":
            C = bar_resolution(G, top, self.max_term_size, lazy=True)
        elif key == "complete":
            C = complete_resolution(G, -top - 1, top, self.max_term_size, lazy=True)
        elif key == "periodic":
            C = periodic_resolution(G, 0, G.n + 2)
        elif key == "periodic-complete":
            C = periodic_resolution(G, -G.n - 3, G.n + 2)
        elif key == "kos":
            C = koszul_resolution(G)
        elif key == "cochain":
            C = cochain_C(G)
        elif key == "K":
            C = hom_complex(self._complex("bar"), M)
        elif key == "Kh":
            C = tensor_complex(self._complex("bar"), M)
        elif key == "Klam":
            C = hom_complex(self._complex("kos"), M)
        elif key == "Khlam":
            C = tensor_complex(self._complex("kos"), M)
        elif key == "Kkappa":
            C = hom_complex(self._complex("cochain"), M)
        elif key == "T":
            C = hom_complex(self._complex("complete"), M)
        elif key == "Tper":
            C = hom_complex(self._complex("periodic-complete"), M)
        elif key == "dualbar":
            C = coaugmented_dual(self._complex("bar"))
        elif key == "dualper":
            C = coaugmented_dual(self._complex("periodic"))
        elif key == "D":
            C = hom_complex(self._complex("dualbar"), M)
        elif key == "Dper":
            C = hom_complex(self._complex("dualper"), M)
        else:
            raise KeyError(key)
        self._complexes[key] = C
        return C

    def window(self, key: str, k: int):
        """Complex ``key`` truncated to degrees ``k-1..k+1`` (cached)."""
        w = self._windows.get((key, k))
        if w is None:
            w = self._complex(key).truncated(k - 1, k + 1)
            self._windows[(key, k)] = w
        return w

    def _group(self, theory: TheoryTag, degree: int, key: str, stored: int) -> ComputedGroup:
        cache_key = (theory, degree, key)
        g = self._groups.get(cache_key)
        if g is None:
            H = self.window(key, stored).homology(stored)
            g = ComputedGroup(theory, degree, self.G.name, self.M.name, H.structure, H)
            self._groups[cache_key] = g
        return g

    @property
    def twisted(self) -> "CohomologyEngine":
        """Engine for ``(G, M~)`` with the same caps."""
        if self._twisted is None:
            self._twisted = CohomologyEngine(self.G, twist(self.M), max_bar_degree=self.max_bar_degree,
                                             max_term_size=self.max_term_size)
            self._twisted._twisted = self
        return self._twisted

    # -- groups -----------------------------------------------------------------
    def classical(self, k: int, variance: str = "cohomology") -> ComputedGroup:
        if k < 0:
            raise ValueError("classical degrees are nonnegative")
        self._need_bar(k + 1)
        if variance == "cohomology":
            return self._group(TheoryTag.CLASSICAL_COHOMOLOGY, k, "K", -k)
        if variance == "homology":
            return self._group(TheoryTag.CLASSICAL_HOMOLOGY, k, "Kh", k)
        raise ValueError(f"unknown variance {variance!r}")

    def lambda_(self, k: int, variance: str = "cohomology") -> ComputedGroup:
        if k < 0:
            raise ValueError("degrees are nonnegative")
        if variance == "cohomology":
            return self._group(TheoryTag.LAMBDA_COHOMOLOGY, k, "Klam", -k)
        if variance == "homology":
            return self._group(TheoryTag.LAMBDA_HOMOLOGY, k, "Khlam", k)
        raise ValueError(f"unknown variance {variance!r}")

    def tate(self, k: int, method: str = "complete") -> ComputedGroup:
        """``Hhat^k``.  ``method`` is ``complete`` (bar splice), ``periodic`` (cyclic groups only)
        or ``cases`` (norm kernel/cokernel and classical groups, structure only)."""
        if method == "complete":
            self._need_bar(k + 1 if k >= 0 else -k)
            return self._group(TheoryTag.TATE, k, "T", -k)
        if method == "periodic":
            if cyclic_generator(self.G) is None:
                raise ValueError(f"{self.G.name} is not cyclic")
            if abs(k) > self.G.n + 1:
                raise ValueError("degree outside the periodic window")
            return self._group(TheoryTag.TATE, k, "Tper", -k)
        if method == "cases":
            return ComputedGroup(TheoryTag.TATE, k, self.G.name, self.M.name, self.tate_by_cases(k))
        raise ValueError(f"unknown method {method!r}")

    def tate_by_cases(self, k: int) -> AbGroupStructure:
        """Tate groups from their case definition: classical groups away from ``-1, 0``,
        cokernel and kernel of the norm on ``M^G`` and ``M / I_G M`` at ``0`` and ``-1``."""
        if k >= 1:
            return self.classical(k, "cohomology").structure
        if k <= -2:
            return self.classical(-k - 1, "homology").structure
        M = self.M
        t = M.generators
        R = M.relations
        I = IntMatrix.identity(t)
        N = norm_matrix(M)
        if k == 0:
            if self.G.n == 1:
                return AbGroupStructure()
            A = vstack([M.action[g] - I for g in range(1, self.G.n)])
            inv = preimage_lattice(A, block_diagonal([R] * (self.G.n - 1)))
            if inv.cols == 0:
                return AbGroupStructure()
            solver = LinearSolver(inv)
            cols = [solver.solve(c) for c in hstack([N, R]).columns()]
            return cokernel_structure(IntMatrix.from_columns(cols, inv.cols))
        # k == -1
        ker = preimage_lattice(N, R)
        if ker.cols == 0:
            return AbGroupStructure()
        solver = LinearSolver(ker)
        sub = hstack([R] + [M.action[g] - I for g in range(self.G.n)])
        cols = [solver.solve(c) for c in sub.columns()]
        return cokernel_structure(IntMatrix.from_columns(cols, ker.cols))

    def kappa_homology(self, k: int) -> ComputedGroup:
        if not 0 <= k <= self.G.n:
            raise ValueError(f"kappa degree {k} outside 0..{self.G.n}")
        return self._group(TheoryTag.KAPPA_HOMOLOGY, k, "Kkappa", k)

    def dual_side(self, k: int, source: str = "bar") -> ComputedGroup:
        """``Hhat^(-k)`` computed from ``hom(Z, M) <- hom(P_0^dual, M) <- ...`` (``k >= 0``)."""
        if source == "bar":
            self._need_bar(k)
            return self._group(TheoryTag.TATE, -k, "D", k)
        return self._group(TheoryTag.TATE, -k, "Dper", k)

    # -- maps -------------------------------------------------------------------
    def norm_map(self) -> MapResult:
        """``H_0(G, M) -> H^0(G, M)`` induced by ``m -> sum_g g m``."""
        src = self.classical(0, "homology")
        tgt = self.classical(0, "cohomology")
        N = norm_matrix(self.M)
        K = self.window("K", 0)
        cols = []
        for rep in src.homology.representatives:
            phi = K.hom(0).from_rep_values({0: N.apply(rep)})
            cols.append(tgt.homology.coordinates(phi))
        return MapResult("norm", src, tgt, IntMatrix.from_columns(cols, tgt.homology.rank))

    def _wedge(self) -> EquivariantChainMap:
        f = self._lifts.get("wedge")
        if f is None:
            f = wedge_chain_map(self.G, self.max_bar_degree, self.max_term_size, lazy=True)
            self._lifts["wedge"] = f
        return f

    def beta(self, k: int, variance: str = "homology") -> MapResult:
        """``beta_k : H_k -> H_k^lambda`` or ``beta^k : H^k_lambda -> H^k`` from the wedge comparison."""
        self._need_bar(k + 1)
        w = self._wedge()
        if variance == "homology":
            src, tgt = self.classical(k, "homology"), self.lambda_(k, "homology")
            f = tensor_chain_map(w, self.M, self.window("Kh", k), self.window("Khlam", k))
            return MapResult("beta", src, tgt, induced_map_on_homology(f, k))
        if variance == "cohomology":
            src, tgt = self.lambda_(k, "cohomology"), self.classical(k, "cohomology")
            f = hom_chain_map(w, self.M, self.window("Klam", -k), self.window("K", -k))
            return MapResult("beta", src, tgt, induced_map_on_homology(f, -k))
        raise ValueError(f"unknown variance {variance!r}")

    def comparison_lift(self, source: str = "bar", column_order: Callable[[int, int], Sequence[int]] | None = None,
                        top: int | None = None) -> EquivariantChainMap:
        """A lift of ``id_Z`` from the bar (or periodic) resolution to the shifted ``C^dual`` resolution."""
        if top is None:
            top = min(self.max_bar_degree, self.G.n - 1)
        key = (source, top)
        if column_order is None and key in self._lifts:
            return self._lifts[key]
        P = self._complex("bar" if source == "bar" else "periodic")
        f = lift_chain_map(P, shifted_dual_resolution(self.G), top, column_order=column_order)
        if column_order is None:
            self._lifts[key] = f
        return f

    def kappa_map(self, k: int, source: str = "bar",
                  column_order: Callable[[int, int], Sequence[int]] | None = None) -> MapResult:
        """``kappa_k : Hhat^(-k)(G, M) -> H_k^kappa(G, M)``, from the transpose of a comparison lift."""
        if source == "bar":
            self._need_bar(k)
        elif cyclic_generator(self.G) is None:
            raise ValueError("the periodic source needs a cyclic group")
        lift = self.comparison_lift(source, column_order, top=k)
        dual_key = "dualbar" if source == "bar" else "dualper"
        D_key = "D" if source == "bar" else "Dper"
        fT = dual_chain_map(lift, self._complex("cochain"), self._complex(dual_key))
        f = hom_chain_map(fT, self.M, self.window(D_key, k), self.window("Kkappa", k))
        src = self.dual_side(k, source)
        tgt = self.kappa_homology(k)
        return MapResult("kappa", src, tgt, induced_map_on_homology(f, k))

    def _zeta_chain(self, k: int) -> LazyChainMap:
        n = self.G.n
        src = self.window("Khlam", k)
        tgt = self.window("Kkappa", k + 1)

        def comp(j):
            if j < 0 or j + 1 > n:
                return None
            L = lambda_module(self.G, j + 1)
            m = j + 1
            sign = -1 if (m * (m - 1) // 2) % 2 else 1
            T = natural_map_t(dual_module(L), self.M, None, tgt.hom(j + 1))
            return T.scale(sign)
        return LazyChainMap(src, tgt, comp, 1)

    def zeta_map(self, k: int) -> MapResult:
        """``zeta_k : H_k^lambda -> H_(k+1)^kappa`` for ``k >= 1``."""
        if k < 1:
            raise ValueError("zeta is defined on homology for k >= 1 only")
        f = self._zeta_chain(k)
        src = self.lambda_(k, "homology")
        tgt = self.kappa_homology(k + 1) if k + 1 <= self.G.n else None
        if tgt is None:
            raise ValueError("target degree outside 0..n")
        return MapResult("zeta", src, tgt, induced_map_on_homology(f, k))

    def factorization(self, k: int, source: str = "bar") -> FactorizationCheck:
        """Compare ``kappa_(k+1) o t`` with ``zeta_k o beta_k`` on every generator of ``H_k(G, M)``."""
        if k < 1:
            raise ValueError("the factorization is checked for k >= 1")
        self._need_bar(k + 1)
        Hk = self.classical(k, "homology")
        target = self.kappa_homology(k + 1)
        w = self._wedge()
        lift = self.comparison_lift(source, top=k)
        fT = dual_chain_map(lift, self._complex("cochain"), self._complex("dualbar"))
        Kh = self.window("Kh", k)
        D = self.window("D", k + 1)
        Kk = self.window("Kkappa", k + 1)
        kappa = hom_chain_map(fT, self.M, D, Kk)
        P_k = self._complex("bar").term(k)
        T = natural_map_t(P_k, self.M, Kh.tensor(k), D.hom(k + 1))
        beta = tensor_chain_map(w, self.M, Kh, self.window("Khlam", k))
        zeta = self._zeta_chain(k)
        left, right = [], []
        for x in Hk.homology.representatives:
            left.append(kappa.apply(k + 1, T.apply(x)))
            right.append(zeta.apply(k, beta.apply(k, x)))
        H = target.homology
        return FactorizationCheck(k, _class_matrix(H, left), _class_matrix(H, right))

    def duality_map(self, k: int) -> MapResult:
        """``Delta_k : H^(n-k-1)_lambda(G, M) -> H_k^kappa(G, M~)`` from the Hodge star, ``0 <= k <= n-2``."""
        n = self.G.n
        if not 0 <= k <= n - 2:
            raise ValueError(f"duality degree {k} outside 0..{n - 2}")
        tw = self.twisted
        deg = n - k - 1
        src_w = self.window("Klam", -deg)
        tgt_w = tw.window("Kkappa", k)

        def comp(e):
            j = -e                      # hom(Lambda^(j+1), M) in degree -j
            m = n - 1 - j
            if not 0 <= m <= n - 1:
                return None
            phi = hodge_map(self.G, m)  # Lambda^m~ -> Lambda^(j+1)
            via = HomPresentation(phi.source, self.M)
            A = induced_hom_map(phi, self.M, src_w.hom(e), via, check=False)
            return _retwist(via, tgt_w.hom(m)) @ A
        f = LazyChainMap(src_w, tgt_w, comp, n - 1)
        src = self.lambda_(deg, "cohomology")
        tgt = tw.kappa_homology(k)
        return MapResult("duality", src, tgt, induced_map_on_homology(f, -deg))


def _retwist(source: HomPresentation, target: HomPresentation) -> IntMatrix:
    """``hom_G(L~, M) -> hom_G(L, M~)``: the same values on orbit representatives."""
    cols = []
    for o, blk in enumerate(source.blocks):
        off = source.offsets[o]
        for q in range(blk.basis.cols):
            v = source.value_at_rep({off + q: 1}, o)
            cols.append(target.from_rep_values({o: v}))
    return IntMatrix(target.result.generators, source.result.generators, cols)


# ---------------------------------------------------------------------------
# functional surface


def classical(G: FiniteGroup, M: GModule, k: int, variance: str = "cohomology", **caps) -> ComputedGroup:
    return CohomologyEngine(G, M, **caps).classical(k, variance)


def lambda_groups(G: FiniteGroup, M: GModule, k: int, variance: str = "cohomology", **caps) -> ComputedGroup:
    return CohomologyEngine(G, M, **caps).lambda_(k, variance)


def tate(G: FiniteGroup, M: GModule, k: int, method: str = "complete", **caps) -> ComputedGroup:
    return CohomologyEngine(G, M, **caps).tate(k, method)


def kappa_homology(G: FiniteGroup, M: GModule, k: int, **caps) -> ComputedGroup:
    return CohomologyEngine(G, M, **caps).kappa_homology(k)


def norm_map(G: FiniteGroup, M: GModule, **caps) -> MapResult:
    return CohomologyEngine(G, M, **caps).norm_map()


def compute(G: FiniteGroup, M: GModule, theory: TheoryTag | str, k: int, engine: CohomologyEngine | None = None,
            **caps) -> ComputedGroup:
    """Dispatch on a :class:`TheoryTag`."""
    theory = TheoryTag(theory)
    E = engine or CohomologyEngine(G, M, **caps)
    if theory is TheoryTag.CLASSICAL_COHOMOLOGY:
        return E.classical(k, "cohomology")
    if theory is TheoryTag.CLASSICAL_HOMOLOGY:
        return E.classical(k, "homology")
    if theory is TheoryTag.LAMBDA_COHOMOLOGY:
        return E.lambda_(k, "cohomology")
    if theory is TheoryTag.LAMBDA_HOMOLOGY:
        return E.lambda_(k, "homology")
    if theory is TheoryTag.TATE:
        return E.tate(k)
    return E.kappa_homology(k)
