"""Finitely presented abelian groups ``Z^t / colspan(R)``.

A presentation is kept as a direct sum of small summands.  Hom and tensor
constructions over a group produce one summand per orbit, usually thousands of
copies of the same few summands, so per-summand data (the relation solver in
particular) is computed once and shared.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping, Sequence

from .matrix import IntMatrix, block_diagonal, hstack
from .smith import AbGroupStructure, LinearSolver, column_span_basis, lattice_basis, smith_diagonal


class Summand:
    """``Z^generators / colspan(relations)`` with ``relations`` normalised to be injective."""

    __slots__ = ("generators", "relations", "_solver", "_diag")

    def __init__(self, generators: int, relations: IntMatrix | None = None, *, normalized: bool = False):
        if relations is None:
            relations = IntMatrix.zeros(generators, 0)
        if relations.rows != generators:
            raise ValueError("relations must have one row per generator")
        if not normalized and relations.cols:
            relations = column_span_basis(relations)
        self.generators = generators
        self.relations = relations
        self._solver: LinearSolver | None = None
        self._diag: list[int] | None = None

    @property
    def is_free(self) -> bool:
        return self.relations.cols == 0

    def solve(self, x: Mapping[int, int]) -> list[int] | None:
        """``y`` with ``relations @ y == x``, or ``None`` if ``x`` is not a relation."""
        if self.relations.cols == 0:
            return [] if not any(x.values()) else None
        if self._solver is None:
            self._solver = LinearSolver(self.relations)
        return self._solver.solve(x)

    def diagonal(self) -> list[int]:
        if self._diag is None:
            self._diag = [d for d in smith_diagonal(self.relations) if d] if self.relations.cols else []
        return self._diag

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Summand):
            return NotImplemented
        return self.generators == other.generators and self.relations == other.relations

    def __hash__(self):
        return hash((self.generators, self.relations))

    def __repr__(self):
        return f"Summand({self.generators}, {self.relations!r})"


def invariant_factors(diagonal: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of ``sum Z/d`` for nonzero ``d`` (1s dropped)."""
    # split into prime powers, then recombine largest-with-largest
    counts = Counter(abs(d) for d in diagonal if abs(d) > 1)
    if not counts:
        return ()
    powers: dict[int, list[int]] = {}
    for d, mult in counts.items():
        for p, e in _factor(d).items():
            powers.setdefault(p, []).extend([p ** e] * mult)
    length = max(len(v) for v in powers.values())
    out = [1] * length
    for p, vals in powers.items():
        vals.sort(reverse=True)
        for i, q in enumerate(vals):
            out[length - 1 - i] *= q
    return tuple(d for d in out if d > 1)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class FinAbPresentation:
    """Direct sum of :class:`Summand` objects."""

    __slots__ = ("summands", "gen_offsets", "rel_offsets", "generators", "relation_count", "_relations")

    def __init__(self, generators: int | None = None, relations: IntMatrix | None = None,
                 *, summands: Sequence[Summand] | None = None):
        if summands is None:
            if generators is None:
                raise ValueError("need generators or summands")
            summands = [Summand(generators, relations)] if generators else []
        self.summands = tuple(summands)
        goff = [0]
        roff = [0]
        for s in self.summands:
            goff.append(goff[-1] + s.generators)
            roff.append(roff[-1] + s.relations.cols)
        self.gen_offsets = goff
        self.rel_offsets = roff
        self.generators = goff[-1]
        self.relation_count = roff[-1]
        self._relations: IntMatrix | None = None

    @classmethod
    def free(cls, rank: int) -> "FinAbPresentation":
        return cls(rank)

    @classmethod
    def direct_sum(cls, parts: Sequence["FinAbPresentation"]) -> "FinAbPresentation":
        return cls(summands=[s for p in parts for s in p.summands])

    @property
    def relations(self) -> IntMatrix:
        if self._relations is None:
            if len(self.summands) == 1:
                self._relations = self.summands[0].relations
            else:
                self._relations = block_diagonal([s.relations for s in self.summands]) if self.summands \
                    else IntMatrix.zeros(0, 0)
        return self._relations

    @property
    def is_free(self) -> bool:
        return self.relation_count == 0

    def _locate(self, i: int) -> int:
        # summand index containing generator i
        lo, hi = 0, len(self.summands)
        offs = self.gen_offsets
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if offs[mid] <= i:
                lo = mid
            else:
                hi = mid
        return lo

    def solve_relations(self, x: Mapping[int, int]) -> dict[int, int] | None:
        """Coordinates ``y`` (sparse) with ``relations @ y == x``; ``None`` if ``x`` is not a relation."""
        if not x:
            return {}
        if self.relation_count == 0:
            return None if any(x.values()) else {}
        buckets: dict[int, dict[int, int]] = {}
        offs = self.gen_offsets
        for i, v in x.items():
            if v:
                s = self._locate(i)
                buckets.setdefault(s, {})[i - offs[s]] = v
        out: dict[int, int] = {}
        for s, local in buckets.items():
            y = self.summands[s].solve(local)
            if y is None:
                return None
            ro = self.rel_offsets[s]
            for j, v in enumerate(y):
                if v:
                    out[ro + j] = v
        return out

    def contains(self, x: Mapping[int, int]) -> bool:
        """Whether the generator-coordinate vector ``x`` is zero in the group."""
        return self.solve_relations(x) is not None

    def structure(self) -> AbGroupStructure:
        free = 0
        diag: list[int] = []
        for s in self.summands:
            d = s.diagonal()
            free += s.generators - len(d)
            diag.extend(d)
        return AbGroupStructure(free, invariant_factors(diag))

    def __eq__(self, other):
        if not isinstance(other, FinAbPresentation):
            return NotImplemented
        return self.summands == other.summands

    def __repr__(self):
        return f"FinAbPresentation(generators={self.generators}, relations={self.relation_count}, summands={len(self.summands)})"


def subgroup_lattice(gens: Sequence[Mapping[int, int]], pres: FinAbPresentation) -> list[list[int]]:
    """Canonical basis of ``span(gens) + relations`` inside ``Z^t``."""
    t = pres.generators
    vecs = []
    for g in gens:
        v = [0] * t
        for i, x in g.items():
            v[i] = x
        vecs.append(v)
    R = pres.relations
    for j in range(R.cols):
        vecs.append(R.column_vector(j))
    return lattice_basis(vecs, t)


def same_subgroup(a: Sequence[Mapping[int, int]], b: Sequence[Mapping[int, int]], pres: FinAbPresentation) -> bool:
    return subgroup_lattice(a, pres) == subgroup_lattice(b, pres)


def quotient_presentation(pres: FinAbPresentation, extra: IntMatrix) -> FinAbPresentation:
    """``pres`` modulo the extra relation columns ``extra``."""
    return FinAbPresentation(pres.generators, hstack([pres.relations, extra]))
