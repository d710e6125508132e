"""Finite groups given by multiplication tables."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence


class GroupTableError(ValueError):
    """A multiplication table violates a group axiom; ``witness`` holds the offending elements."""

    def __init__(self, axiom: str, witness: tuple[int, ...], detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        msg = f"{axiom} fails at {witness}"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class FiniteGroup:
    """A finite group on elements ``0..n-1`` with ``table[i][j] = i*j`` and identity ``0``.

    The index order is the total order on the group used by the exterior
    algebra bases and the orbit representatives.
    """

    __slots__ = ("n", "table", "name", "__dict__")

    def __init__(self, table: Sequence[Sequence[int]], name: str = "", *, check: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.n = len(self.table)
        self.name = name or f"G{self.n}"
        if check:
            validate_table(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for a in range(self.n):
            row = self.table[a]
            for b in range(self.n):
                if row[b] == 0:
                    inv[a] = b
                    break
        return tuple(inv)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @property
    def elements(self) -> range:
        return range(self.n)

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        out = 0
        for _ in range(k):
            out = self.table[out][a]
        return out

    @cached_property
    def orders(self) -> tuple[int, ...]:
        out = []
        for a in range(self.n):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def element_order(self, a: int) -> int:
        if not 0 <= a < self.n:
            raise IndexError(f"element {a} out of range for a group of order {self.n}")
        return self.orders[a]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(a))

    def left_translation(self, g: int) -> tuple[int, ...]:
        return self.table[g]

    def to_json(self) -> dict:
        return {"n": self.n, "table": [list(r) for r in self.table]}

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, n={self.n})"


def validate_table(table: Sequence[Sequence[int]]) -> None:
    n = len(table)
    if n == 0:
        raise GroupTableError("nonempty", ())
    for i, row in enumerate(table):
        if len(row) != n:
            raise GroupTableError("square table", (i,), f"row {i} has length {len(row)}")
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise GroupTableError("closure", (i, j), f"product {x} out of range")
    for i in range(n):
        if table[0][i] != i or table[i][0] != i:
            raise GroupTableError("identity at index 0", (i,))
    for i in range(n):
        if len(set(table[i])) != n:
            raise GroupTableError("latin rows", (i,))
        if len({table[j][i] for j in range(n)}) != n:
            raise GroupTableError("latin columns", (i,))
    for a in range(n):
        ra = table[a]
        for b in range(n):
            ab = ra[b]
            rab = table[ab]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise GroupTableError("associativity", (a, b, c))
    # inverses exist by the latin property plus identity


def from_table(table: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    return FiniteGroup(table, name)


def make_cyclic(m: int) -> FiniteGroup:
    if m < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup([[(i + j) % m for j in range(m)] for i in range(m)], f"C{m}", check=False)


def make_dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order ``2m``: rotations ``r^i`` (index i), then reflections ``s r^i`` (index m+i)."""
    if m < 1:
        raise ValueError("dihedral parameter must be positive")

    def mul(a: int, b: int) -> int:
        # elements s^e r^i; r^i s = s r^{-i}
        ea, ia = divmod(a, m)
        eb, ib = divmod(b, m)
        if eb == 0:
            return ea * m + (ia + ib) % m
        return (1 - ea) * m + (ib - ia) % m if ea == 0 else (ib - ia) % m

    return FiniteGroup([[mul(a, b) for b in range(2 * m)] for a in range(2 * m)], f"D{m}")


def make_symmetric(k: int) -> FiniteGroup:
    """``S_k`` for ``k <= 4``; elements in lexicographic order of permutations (identity first)."""
    if not 1 <= k <= 4:
        raise ValueError("symmetric groups are provided for k <= 4")
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return FiniteGroup(table, f"S{k}")


def make_klein4() -> FiniteGroup:
    return FiniteGroup([[a ^ b for b in range(4)] for a in range(4)], "V4", check=False)


def make_quaternion() -> FiniteGroup:
    """Quaternion group of order 8: ``0..7 = 1, -1, i, -i, j, -j, k, -k``."""
    basic = {("1", x): (1, x) for x in "1ijk"}
    basic.update({(x, "1"): (1, x) for x in "1ijk"})
    basic.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                  ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                  ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    names = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    index = {e: i for i, e in enumerate(names)}
    table = []
    for sa, a in names:
        row = []
        for sb, b in names:
            s, c = basic[(a, b)]
            row.append(index[(sa * sb * s, c)])
        table.append(row)
    return FiniteGroup(table, "Q8")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """``G x H`` with ``(a, b)`` at index ``a * |H| + b``."""
    m = H.n
    table = [[G.table[a1][a2] * m + H.table[b1][b2]
              for a2 in range(G.n) for b2 in range(m)]
             for a1 in range(G.n) for b1 in range(m)]
    return FiniteGroup(table, f"{G.name}x{H.name}", check=False)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> tuple[int, ...] | None:
    """A bijection ``phi`` with ``phi(ab) = phi(a)phi(b)`` by brute force over generators, or ``None``."""
    if G.n != H.n or sorted(G.orders) != sorted(H.orders):
        return None
    gens = _generating_set(G)
    n = G.n
    for images in itertools.product(*[[h for h in range(n) if H.orders[h] == G.orders[g]] for g in gens]):
        phi = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, img in zip(gens, images):
                y = G.table[x][g]
                val = H.table[phi[x]][img]
                if y in phi:
                    if phi[y] != val:
                        ok = False
                        break
                else:
                    phi[y] = val
                    frontier.append(y)
        if not ok or len(phi) != n or len(set(phi.values())) != n:
            continue
        if all(phi[G.table[a][b]] == H.table[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            return tuple(phi[i] for i in range(n))
    return None


def _generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    span = {0}
    for x in sorted(range(G.n), key=lambda a: -G.orders[a]):
        if x in span:
            continue
        gens.append(x)
        span = _closure(G, gens)
        if len(span) == G.n:
            break
    return gens


def _closure(G: FiniteGroup, gens: Sequence[int]) -> set[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.table[x][g]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def element_order(G: FiniteGroup, x: int) -> int:
    return G.element_order(x)


@dataclass(frozen=True)
class SignCharacter:
    """``values[g]`` is the parity (+1/-1) of left translation by ``g``."""

    values: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.values[g]

    @property
    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)


def permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sign_homomorphism(G: FiniteGroup) -> SignCharacter:
    return SignCharacter(tuple(permutation_sign(G.table[g]) for g in range(G.n)))


def is_oriented(G: FiniteGroup) -> bool:
    return sign_homomorphism(G).is_trivial


@dataclass(frozen=True)
class TwoTorsionData:
    """Involutions, the orbits ``{x, x^-1}`` with ``x^2 != 1``, and the chosen section."""

    involutions: tuple[int, ...]
    orbits: tuple[tuple[int, int], ...]
    section: tuple[int, ...]

    def sigma(self, orbit_index: int) -> int:
        return self.section[orbit_index]


def two_torsion_data(G: FiniteGroup) -> TwoTorsionData:
    inv = G.inverses
    involutions = tuple(x for x in range(1, G.n) if G.orders[x] == 2)
    orbits = tuple((x, inv[x]) for x in range(1, G.n) if G.orders[x] > 2 and x < inv[x])
    return TwoTorsionData(involutions, orbits, tuple(a for a, _ in orbits))


def subgroups_order_two(G: FiniteGroup) -> list[tuple[int, int]]:
    """``C_2(x) = (0, x)`` for each involution ``x``."""
    return [(0, x) for x in two_torsion_data(G).involutions]


def load_group(path: str | Path) -> FiniteGroup:
    data = json.loads(Path(path).read_text())
    table = data["table"]
    if "n" in data and data["n"] != len(table):
        raise GroupTableError("declared order", (data["n"],), f"table has {len(table)} rows")
    return FiniteGroup(table, Path(path).stem)


def parse_group(spec: str) -> FiniteGroup:
    """Build a group from ``cyclic:m``, ``dihedral:m``, ``sym:k``, ``klein4``, ``quaternion``,
    ``product:<spec>,<spec>`` or ``file:<path>``."""
    spec = spec.strip()
    kind, _, arg = spec.partition(":")
    kind = kind.lower()
    try:
        if kind == "cyclic":
            return make_cyclic(int(arg))
        if kind == "dihedral":
            return make_dihedral(int(arg))
        if kind == "sym":
            return make_symmetric(int(arg))
        if kind == "klein4" and not arg:
            return make_klein4()
        if kind == "quaternion" and not arg:
            return make_quaternion()
        if kind == "product":
            left, right = _split_top_level(arg)
            return direct_product(parse_group(left), parse_group(right))
        if kind == "file":
            return load_group(arg)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GroupTableError):
            raise
        raise ValueError(f"bad group spec {spec!r}: {exc}") from exc
    raise ValueError(f"unknown group spec {spec!r}")


def _split_top_level(arg: str) -> tuple[str, str]:
    # split "a,b" at the comma that is not inside a nested product
    depth = 0
    for i, ch in enumerate(arg):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            left, right = arg[:i], arg[i + 1:]
            return left.strip("() "), right.strip("() ")
    raise ValueError("product needs two comma-separated factors")
