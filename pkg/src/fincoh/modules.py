"""Coefficient modules, signed-permutation modules, and Hom/tensor over a group.

``GModule`` is a finitely presented abelian group with one action matrix per
group element.  ``MonomialGModule`` is a free abelian group whose basis is
permuted up to sign; these carry the exterior powers, bar terms and their
duals.  ``hom_G`` and ``tensor_over_G`` reduce to one summand per orbit of the
basis, so a free module of rank ``r|G|`` costs ``r`` blocks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Hashable, Mapping, Sequence

from .groups import FiniteGroup, sign_homomorphism
from .linalg import FinAbPresentation, IntMatrix, LinearSolver, Summand, block_diagonal, column_span_basis, hstack, vstack
from .linalg.smith import preimage_lattice

Vector = Mapping[int, int]


class ModuleAxiomError(ValueError):
    """Action data do not define a G-module."""


class NotEquivariantError(ValueError):
    """A map of G-modules does not commute with the action."""


# ---------------------------------------------------------------------------
# coefficient modules


class GModule:
    """``Z^t / colspan(relations)`` with left action ``g -> action[g]`` on generators."""

    def __init__(self, group: FiniteGroup, generators: int, relations: IntMatrix | None,
                 action: Sequence[IntMatrix], name: str = "M", *, check: bool = True):
        self.group = group
        self.generators = generators
        rel = relations if relations is not None else IntMatrix.zeros(generators, 0)
        self.relations = column_span_basis(rel) if rel.cols else rel
        self.action = tuple(action)
        self.name = name
        if len(self.action) != group.n:
            raise ModuleAxiomError(f"need {group.n} action matrices, got {len(self.action)}")
        for g, A in enumerate(self.action):
            if A.shape != (generators, generators):
                raise ModuleAxiomError(f"action matrix of element {g} has shape {A.shape}")
        self._hom_cache: dict = {}
        self._tensor_cache: dict = {}
        if check:
            self.validate()

    @cached_property
    def presentation(self) -> FinAbPresentation:
        return FinAbPresentation(summands=[self.summand]) if self.generators else FinAbPresentation(0)

    @cached_property
    def summand(self) -> Summand:
        return Summand(self.generators, self.relations, normalized=True)

    def contains_zero(self, x: Vector) -> bool:
        """Whether ``x`` (generator coordinates) is zero in the module."""
        return self.presentation.contains(x)

    def act(self, g: int, x: Vector) -> dict[int, int]:
        return self.action[g].apply(x)

    def validate(self) -> None:
        G = self.group
        pres = self.presentation
        ident = self.action[0]
        for j in range(self.generators):
            diff = dict(ident.column(j))
            diff[j] = diff.get(j, 0) - 1
            if not pres.contains({i: v for i, v in diff.items() if v}):
                raise ModuleAxiomError(f"identity does not act trivially on generator {j}")
        for g, A in enumerate(self.action):
            for c in self.relations.columns():
                if not pres.contains(A.apply(c)):
                    raise ModuleAxiomError(f"element {g} does not preserve the relations")
        for g in range(G.n):
            Ag = self.action[g]
            for h in range(G.n):
                prod = Ag @ self.action[h]
                D = prod - self.action[G.table[g][h]]
                for j, c in enumerate(D.columns()):
                    if c and not pres.contains(c):
                        raise ModuleAxiomError(f"action is not multiplicative at ({g}, {h})")

    def structure(self):
        return self.presentation.structure()

    def to_json(self) -> dict:
        return {
            "generators": self.generators,
            "relations": [self.relations.column_vector(j) for j in range(self.relations.cols)],
            "action": {str(g): A.tolist() for g, A in enumerate(self.action)},
        }

    def __repr__(self):
        return f"GModule({self.name} over {self.group.name}, {self.structure()})"


def trivial_module(G: FiniteGroup, coefficients: str | int = "Z") -> GModule:
    """Trivial action on ``Z`` (``"Z"`` or 0) or ``Z/m`` (``"Z/m"`` or ``m``)."""
    m = _parse_coefficients(coefficients)
    rel = IntMatrix.from_columns([[m]], 1) if m else None
    name = f"Z/{m}" if m else "Z"
    return GModule(G, 1, rel, [IntMatrix.identity(1)] * G.n, name, check=False)


def _parse_coefficients(c: str | int) -> int:
    if isinstance(c, int):
        m = c
    else:
        c = c.strip()
        if c == "Z":
            return 0
        if not c.startswith("Z/"):
            raise ValueError(f"coefficients must be Z or Z/m, got {c!r}")
        m = int(c[2:])
    if m == 0:
        return 0
    if m < 2:
        raise ValueError("Z/m needs m >= 2")
    return m


def twist(M: GModule) -> GModule:
    """``M~``: the action of ``g`` multiplied by the sign of left translation by ``g``."""
    eps = sign_homomorphism(M.group)
    action = [A if eps(g) == 1 else -A for g, A in enumerate(M.action)]
    name = M.name[:-1] if M.name.endswith("~") else M.name + "~"
    return GModule(M.group, M.generators, M.relations, action, name, check=False)


def twisted_integers(G: FiniteGroup) -> GModule:
    return twist(trivial_module(G, "Z"))


def regular_coefficients(G: FiniteGroup) -> GModule:
    """``Z[G]`` as a coefficient module (basis ``G``, left translation)."""
    action = [IntMatrix._trusted(G.n, G.n, [{G.table[g][h]: 1} for h in range(G.n)]) for g in range(G.n)]
    return GModule(G, G.n, None, action, "Z[G]", check=False)


def direct_sum_modules(mods: Sequence[GModule]) -> GModule:
    if not mods:
        raise ValueError("empty direct sum")
    G = mods[0].group
    if any(m.group is not G and m.group != G for m in mods):
        raise ValueError("modules over different groups")
    t = sum(m.generators for m in mods)
    rel = block_diagonal([m.relations for m in mods])
    action = [block_diagonal([m.action[g] for m in mods]) for g in range(G.n)]
    return GModule(G, t, rel, action, "+".join(m.name for m in mods), check=False)


def monomial_as_coefficients(L: "MonomialGModule") -> GModule:
    action = []
    for g in range(L.group.n):
        cols = []
        for i in range(L.rank):
            j, s = L.act(g, i)
            cols.append({j: s})
        action.append(IntMatrix._trusted(L.rank, L.rank, cols))
    return GModule(L.group, L.rank, None, action, L.name, check=False)


def restrict(M: GModule, H: Sequence[int], subgroup: FiniteGroup) -> GModule:
    """Restriction of ``M`` along the embedding ``subgroup[i] -> H[i]``."""
    return GModule(subgroup, M.generators, M.relations, [M.action[h] for h in H], M.name, check=False)


def load_module(G: FiniteGroup, path: str | Path) -> GModule:
    data = json.loads(Path(path).read_text())
    return module_from_json(G, data, Path(path).stem)


def module_from_json(G: FiniteGroup, data: Mapping, name: str = "M") -> GModule:
    t = int(data["generators"])
    rels = data.get("relations", [])
    R = IntMatrix.from_columns(rels, t) if rels else None
    act = data.get("action", {})
    action = []
    for g in range(G.n):
        raw = act.get(str(g))
        if raw is None:
            if g == 0:
                action.append(IntMatrix.identity(t))
                continue
            raise ModuleAxiomError(f"missing action matrix for element {g}")
        action.append(IntMatrix.from_rows(raw, t))
    return GModule(G, t, R, action, name)


def parse_module(G: FiniteGroup, spec: str) -> GModule:
    """``trivial:Z``, ``trivial:Z/m``, ``twistZ``, ``regular``, ``sum:<spec>+<spec>`` or ``file:<path>``."""
    spec = spec.strip()
    kind, _, arg = spec.partition(":")
    if kind == "trivial":
        return trivial_module(G, arg or "Z")
    if kind == "twistZ" and not arg:
        return twisted_integers(G)
    if kind == "regular" and not arg:
        return regular_coefficients(G)
    if kind == "sum":
        return direct_sum_modules([parse_module(G, part) for part in arg.split("+")])
    if kind == "file":
        return load_module(G, arg)
    raise ValueError(f"unknown module spec {spec!r}")


# ---------------------------------------------------------------------------
# signed-permutation modules


@dataclass(frozen=True)
class OrbitData:
    """Orbits of the signed action on a basis.

    ``reps[o]`` is the representative of orbit ``o``; ``stabilizers[o]`` lists
    the pairs ``(g, s)`` with ``g . rep = s . rep``; ``where[i] = (o, g, s)``
    with ``g . rep_o = s . b_i``.
    """

    reps: tuple[int, ...]
    stabilizers: tuple[tuple[tuple[int, int], ...], ...]
    where: Sequence[tuple[int, int, int]] | None = None

    def locate(self, i: int) -> tuple[int, int, int]:
        return self.where[i]

    def __len__(self):
        return len(self.reps)


class MonomialGModule:
    """Free abelian group on ``rank`` basis elements; ``act(g, i) = (j, s)`` means ``g . b_i = s . b_j``."""

    group: FiniteGroup
    rank: int
    name: str = "L"

    def act(self, g: int, i: int) -> tuple[int, int]:
        raise NotImplementedError

    def label(self, i: int) -> Hashable:
        return i

    @cached_property
    def orbits(self) -> OrbitData:
        return _generic_orbits(self)

    def orbit_pattern(self, o: int) -> tuple[tuple[int, int], ...]:
        return self.orbits.stabilizers[o]

    def is_free_action(self) -> bool:
        return all(len(s) == 1 for s in self.orbits.stabilizers)

    def check_action(self) -> None:
        """Verify that the signed permutations compose along the group table."""
        G = self.group
        for i in range(self.rank):
            j, s = self.act(0, i)
            if (j, s) != (i, 1):
                raise ModuleAxiomError(f"identity moves basis element {i}")
        for g in range(G.n):
            for h in range(G.n):
                gh = G.table[g][h]
                for i in range(self.rank):
                    j, s = self.act(h, i)
                    k, t = self.act(g, j)
                    if (k, s * t) != self.act(gh, i):
                        raise ModuleAxiomError(f"action does not compose at ({g}, {h}) on basis element {i}")

    def __repr__(self):
        return f"{type(self).__name__}({self.name}, rank={self.rank})"


def _generic_orbits(L: MonomialGModule) -> OrbitData:
    G = L.group
    where: list = [None] * L.rank
    reps = []
    stabs = []
    for i in range(L.rank):
        if where[i] is not None:
            continue
        o = len(reps)
        reps.append(i)
        stab = []
        for g in range(G.n):
            j, s = L.act(g, i)
            if where[j] is None:
                where[j] = (o, g, s)
            if j == i:
                stab.append((g, s))
        stabs.append(tuple(stab))
    return OrbitData(tuple(reps), tuple(stabs), where)


class TableMonomialModule(MonomialGModule):
    """Signed-permutation module from explicit tables ``perm[g][i]``, ``sign[g][i]``."""

    def __init__(self, group: FiniteGroup, perm: Sequence[Sequence[int]], sign: Sequence[Sequence[int]] | None = None,
                 labels: Sequence[Hashable] | None = None, name: str = "L"):
        self.group = group
        self.perm = tuple(tuple(p) for p in perm)
        self.rank = len(self.perm[0]) if self.perm else 0
        self.sign = tuple(tuple(s) for s in sign) if sign is not None else tuple((1,) * self.rank for _ in self.perm)
        self.labels = tuple(labels) if labels is not None else tuple(range(self.rank))
        self.name = name

    def act(self, g: int, i: int) -> tuple[int, int]:
        return self.perm[g][i], self.sign[g][i]

    def label(self, i: int) -> Hashable:
        return self.labels[i]


def regular_module(G: FiniteGroup) -> TableMonomialModule:
    return TableMonomialModule(G, G.table, None, list(range(G.n)), "Z[G]")


def trivial_monomial(G: FiniteGroup) -> TableMonomialModule:
    """``Z`` with trivial action, as a one-element basis."""
    return TableMonomialModule(G, [(0,)] * G.n, None, ["1"], "Z")


def sign_monomial(G: FiniteGroup) -> TableMonomialModule:
    """``Z~``: one basis element, ``g`` acting by the sign of left translation."""
    eps = sign_homomorphism(G)
    return TableMonomialModule(G, [(0,)] * G.n, [(eps(g),) for g in range(G.n)], ["1"], "Z~")


class DualMonomialModule(MonomialGModule):
    """``L^dual`` on the dual basis.  ``g . b_i = s b_j`` forces ``g . b_i^* = s b_j^*``."""

    def __init__(self, base: MonomialGModule):
        self.base = base
        self.group = base.group
        self.rank = base.rank
        self.name = f"{base.name}^"

    def act(self, g: int, i: int) -> tuple[int, int]:
        return self.base.act(g, i)

    def label(self, i: int) -> Hashable:
        return ("dual", self.base.label(i))

    @property
    def orbits(self) -> OrbitData:
        return self.base.orbits


def dual_module(L: MonomialGModule) -> MonomialGModule:
    if isinstance(L, DualMonomialModule):
        return L.base
    return DualMonomialModule(L)


class TwistedMonomialModule(MonomialGModule):
    def __init__(self, base: MonomialGModule):
        self.base = base
        self.group = base.group
        self.rank = base.rank
        self.name = f"{base.name}~"
        self._eps = sign_homomorphism(base.group)

    def act(self, g: int, i: int) -> tuple[int, int]:
        j, s = self.base.act(g, i)
        return j, s * self._eps(g)

    def label(self, i: int) -> Hashable:
        return self.base.label(i)


def twist_monomial(L: MonomialGModule) -> MonomialGModule:
    if isinstance(L, TwistedMonomialModule):
        return L.base
    return TwistedMonomialModule(L)


def direct_sum_monomial(mods: Sequence[MonomialGModule]) -> TableMonomialModule:
    G = mods[0].group
    perm, sign, labels = [], [], []
    offs = [0]
    for m in mods:
        offs.append(offs[-1] + m.rank)
    for g in range(G.n):
        p, s = [], []
        for m, off in zip(mods, offs):
            for i in range(m.rank):
                j, t = m.act(g, i)
                p.append(off + j)
                s.append(t)
        perm.append(p)
        sign.append(s)
    for k, m in enumerate(mods):
        labels.extend((k, m.label(i)) for i in range(m.rank))
    return TableMonomialModule(G, perm, sign, labels, "+".join(m.name for m in mods))


# ---------------------------------------------------------------------------
# equivariant maps


class EquivariantMap:
    """A G-map ``L -> L'`` given by its columns on the basis of ``L``."""

    def __init__(self, source: MonomialGModule, target: MonomialGModule,
                 column: Callable[[int], Vector] | IntMatrix):
        self.source = source
        self.target = target
        if isinstance(column, IntMatrix):
            if column.shape != (target.rank, source.rank):
                raise ValueError("matrix shape does not match the modules")
            self._column = column.column
        else:
            self._column = column

    def column(self, i: int) -> Vector:
        return self._column(i)

    def failures(self, limit: int = 1) -> list[tuple[int, int]]:
        """Pairs ``(g, i)`` with ``phi(g b_i) != g phi(b_i)``; only orbit representatives are needed."""
        bad = []
        G = self.source.group
        tgt = self.target
        for i in self.source.orbits.reps:
            col = self.column(i)
            for g in range(G.n):
                j, s = self.source.act(g, i)
                lhs = {r: s * v for r, v in self.column(j).items() if v}
                rhs: dict[int, int] = {}
                for r, v in col.items():
                    r2, t = tgt.act(g, r)
                    rhs[r2] = rhs.get(r2, 0) + t * v
                rhs = {r: v for r, v in rhs.items() if v}
                if lhs != rhs:
                    bad.append((g, i))
                    if len(bad) >= limit:
                        return bad
        return bad

    def check(self) -> None:
        bad = self.failures()
        if bad:
            g, i = bad[0]
            raise NotEquivariantError(f"map does not commute with element {g} on basis element {i}")

    def to_matrix(self) -> IntMatrix:
        return IntMatrix(self.target.rank, self.source.rank, [self.column(i) for i in range(self.source.rank)])


# ---------------------------------------------------------------------------
# Hom and tensor over G


@dataclass
class _HomBlock:
    basis: IntMatrix          # t x b, columns span the constrained sublattice
    solver: LinearSolver | None  # None when basis is the identity
    summand: Summand

    def coords(self, x: Vector) -> list[int] | None:
        if self.solver is None:
            out = [0] * self.basis.cols
            for i, v in x.items():
                out[i] = v
            return out
        return self.solver.solve(x)


def _hom_block(M: GModule, pattern: tuple[tuple[int, int], ...]) -> _HomBlock:
    key = tuple(sorted(p for p in pattern if p != (0, 1)))
    blk = M._hom_cache.get(key)
    if blk is not None:
        return blk
    t = M.generators
    if not key:
        blk = _HomBlock(IntMatrix.identity(t), None, M.summand)
    else:
        I = IntMatrix.identity(t)
        stacked = vstack([M.action[g] - I.scale(s) for g, s in key])
        R = block_diagonal([M.relations] * len(key))
        B = preimage_lattice(stacked, R)
        solver = LinearSolver(B)
        rel_cols = []
        for c in M.relations.columns():
            y = solver.solve(c)
            if y is None:
                raise ArithmeticError("relations escape the invariant sublattice")
            rel_cols.append(y)
        rel = IntMatrix.from_columns(rel_cols, B.cols)
        blk = _HomBlock(B, solver, Summand(B.cols, rel, normalized=True))
    M._hom_cache[key] = blk
    return blk


def _tensor_block(M: GModule, pattern: tuple[tuple[int, int], ...]) -> Summand:
    key = tuple(sorted(p for p in pattern if p != (0, 1)))
    s = M._tensor_cache.get(key)
    if s is not None:
        return s
    if not key:
        s = M.summand
    else:
        I = IntMatrix.identity(M.generators)
        extra = [I - M.action[g].scale(sg) for g, sg in key]
        s = Summand(M.generators, hstack([M.relations] + extra))
    M._tensor_cache[key] = s
    return s


class HomPresentation:
    """``hom_G(L, M)`` as a direct sum over the orbits of ``L``.

    A homomorphism is determined by its values on orbit representatives;
    the value at representative ``o`` lies in the constrained sublattice with
    basis ``blocks[o].basis`` and the generator coordinates are taken in that
    basis.
    """

    def __init__(self, L: MonomialGModule, M: GModule):
        if L.group.n != M.group.n:
            raise ValueError("modules over different groups")
        self.L = L
        self.M = M
        orb = L.orbits
        self.blocks = [_hom_block(M, st) for st in orb.stabilizers]
        self.result = FinAbPresentation(summands=[b.summand for b in self.blocks])
        self.offsets = self.result.gen_offsets

    @property
    def orbit_reps(self) -> tuple[int, ...]:
        return self.L.orbits.reps

    def value_at_rep(self, x: Vector, o: int) -> dict[int, int]:
        """The module element ``phi(rep_o)`` for the hom element with coordinates ``x``."""
        off = self.offsets[o]
        blk = self.blocks[o]
        local = {i - off: v for i, v in x.items() if off <= i < off + blk.basis.cols and v}
        return blk.basis.apply(local)

    def evaluate(self, x: Vector, i: int) -> dict[int, int]:
        """``phi(b_i)`` in generator coordinates of ``M``."""
        o, g, s = self.L.orbits.locate(i)
        v = self.M.action[g].apply(self.value_at_rep(x, o))
        return {r: s * val for r, val in v.items()} if s != 1 else v

    def from_rep_values(self, values: Mapping[int, Vector]) -> dict[int, int]:
        """Coordinates of the homomorphism with ``phi(rep_o) = values[o]``."""
        out: dict[int, int] = {}
        for o, val in values.items():
            c = self.blocks[o].coords(val)
            if c is None:
                raise NotEquivariantError(f"value at orbit {o} violates the stabilizer constraints")
            off = self.offsets[o]
            for j, v in enumerate(c):
                if v:
                    out[off + j] = v
        return out


def hom_G(L: MonomialGModule, M: GModule) -> HomPresentation:
    return HomPresentation(L, M)


class TensorPresentation:
    """``L tensor_G M`` as a direct sum over orbits of ``M`` modulo signed stabilizer relations."""

    def __init__(self, L: MonomialGModule, M: GModule):
        if L.group.n != M.group.n:
            raise ValueError("modules over different groups")
        self.L = L
        self.M = M
        self.result = FinAbPresentation(summands=[_tensor_block(M, st) for st in L.orbits.stabilizers])
        self.offsets = self.result.gen_offsets

    def element(self, i: int, m: Vector) -> dict[int, int]:
        """Coordinates of ``b_i tensor m``."""
        o, g, s = self.L.orbits.locate(i)
        v = self.M.action[self.M.group.inverses[g]].apply(m)
        off = self.offsets[o]
        return {off + r: s * val for r, val in v.items() if val}


def tensor_over_G(L: MonomialGModule, M: GModule) -> TensorPresentation:
    return TensorPresentation(L, M)


def _signed_action_sum(M: GModule, terms: Sequence[tuple[int, int]]) -> IntMatrix:
    # sum of c * A_g over (g, c)
    t = M.generators
    acc: list[dict[int, int]] = [{} for _ in range(t)]
    for g, c in terms:
        A = M.action[g]
        for j in range(t):
            col = acc[j]
            for i, v in A.column(j).items():
                nv = col.get(i, 0) + c * v
                if nv:
                    col[i] = nv
                else:
                    col.pop(i, None)
    return IntMatrix._trusted(t, t, acc)


def _terms_by_orbit(phi: EquivariantMap, i: int, inverse: bool) -> dict[int, list[tuple[int, int]]]:
    G = phi.source.group
    orb = phi.target.orbits
    out: dict[int, list[tuple[int, int]]] = {}
    for j, c in phi.column(i).items():
        if not c:
            continue
        o, g, s = orb.locate(j)
        out.setdefault(o, []).append((G.inverses[g] if inverse else g, c * s))
    return out


def induced_hom_map(phi: EquivariantMap, M: GModule, source: HomPresentation | None = None,
                    target: HomPresentation | None = None, *, check: bool = True) -> IntMatrix:
    """``phi^* : hom_G(L', M) -> hom_G(L, M)`` for ``phi : L -> L'``."""
    if check:
        phi.check()
    src = source or HomPresentation(phi.target, M)   # hom(L', M)
    tgt = target or HomPresentation(phi.source, M)   # hom(L, M)
    cols: list[dict[int, int]] = [{} for _ in range(src.result.generators)]
    for o, rep in enumerate(phi.source.orbits.reps):
        blk = tgt.blocks[o]
        off = tgt.offsets[o]
        for o2, terms in _terms_by_orbit(phi, rep, False).items():
            P = _signed_action_sum(M, terms)
            blk2 = src.blocks[o2]
            off2 = src.offsets[o2]
            if blk2.solver is not None:
                P = P @ blk2.basis
            for q in range(P.cols):
                col = P.column(q)
                if not col:
                    continue
                c = blk.coords(col)
                if c is None:
                    raise NotEquivariantError(f"induced value at orbit {o} violates the stabilizer constraints")
                dest = cols[off2 + q]
                for r, v in enumerate(c):
                    if v:
                        nv = dest.get(off + r, 0) + v
                        if nv:
                            dest[off + r] = nv
                        else:
                            del dest[off + r]
    return IntMatrix._trusted(tgt.result.generators, src.result.generators, cols)


def induced_tensor_map(phi: EquivariantMap, M: GModule, source: TensorPresentation | None = None,
                       target: TensorPresentation | None = None, *, check: bool = True) -> IntMatrix:
    """``phi tensor 1 : L tensor_G M -> L' tensor_G M``."""
    if check:
        phi.check()
    src = source or TensorPresentation(phi.source, M)
    tgt = target or TensorPresentation(phi.target, M)
    cols: list[dict[int, int]] = []
    for o, rep in enumerate(phi.source.orbits.reps):
        blocks = {o2: _signed_action_sum(M, terms) for o2, terms in _terms_by_orbit(phi, rep, True).items()}
        for q in range(M.generators):
            col: dict[int, int] = {}
            for o2, P in blocks.items():
                off2 = tgt.offsets[o2]
                for r, v in P.column(q).items():
                    col[off2 + r] = v
            cols.append(col)
    return IntMatrix._trusted(tgt.result.generators, src.result.generators, cols)


def natural_map_t(L: MonomialGModule, M: GModule, source: TensorPresentation | None = None,
                  target: HomPresentation | None = None) -> IntMatrix:
    """``L tensor_G M -> hom_G(L^dual, M)``, ``x tensor m -> (psi -> sum_g psi(g x) g m)``.

    On an orbit representative only the stabilizer contributes, so the block
    is ``sum over (g, s) in Stab of s * A_g``: the identity on free orbits and
    the norm on a fixed basis element.
    """
    src = source or TensorPresentation(L, M)
    tgt = target or HomPresentation(dual_module(L), M)
    cols: list[dict[int, int]] = []
    for o, stab in enumerate(L.orbits.stabilizers):
        P = _signed_action_sum(M, list(stab))
        blk = tgt.blocks[o]
        off = tgt.offsets[o]
        for q in range(M.generators):
            c = blk.coords(P.column(q))
            if c is None:
                raise ArithmeticError("norm image violates the stabilizer constraints")
            cols.append({off + r: v for r, v in enumerate(c) if v})
    return IntMatrix._trusted(tgt.result.generators, src.result.generators, cols)


def norm_matrix(M: GModule) -> IntMatrix:
    """``N = sum_g A_g`` on generators of ``M``."""
    return _signed_action_sum(M, [(g, 1) for g in range(M.group.n)])
