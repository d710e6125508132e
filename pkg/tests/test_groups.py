from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from fincoh.groups import (
    GroupTableError,
    direct_product,
    element_order,
    find_isomorphism,
    from_table,
    is_oriented,
    load_group,
    make_cyclic,
    make_dihedral,
    make_klein4,
    make_quaternion,
    make_symmetric,
    parse_group,
    sign_homomorphism,
    subgroups_order_two,
    two_torsion_data,
)

from conftest import group
from oracles import abelianization_order

BUILTINS = ["cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "cyclic:7", "cyclic:8",
            "cyclic:12", "klein4", "dihedral:3", "dihedral:4", "dihedral:5", "dihedral:6", "quaternion",
            "sym:3", "sym:4", "product:cyclic:2,cyclic:4", "product:cyclic:2,cyclic:6"]


@pytest.mark.parametrize("spec", BUILTINS)
def test_table_axioms(spec):
    G = group(spec)
    # re-validating the table from scratch must succeed
    from_table(G.table)
    n = G.n
    assert all(G.mul(0, a) == a == G.mul(a, 0) for a in range(n))
    assert all(G.mul(a, G.inv(a)) == 0 for a in range(n))


@pytest.mark.parametrize("spec", BUILTINS)
def test_sign_character(spec):
    G = group(spec)
    eps = sign_homomorphism(G)
    assert eps(0) == 1
    for g in range(G.n):
        o = element_order(G, g)
        assert G.n % o == 0
        # left translation by g has n/o(g) cycles of length o(g)
        assert eps(g) == (-1) ** (G.n - G.n // o)
        if o % 2:
            assert eps(g) == 1
        for h in range(G.n):
            assert eps(G.mul(g, h)) == eps(g) * eps(h)


@pytest.mark.parametrize("spec", BUILTINS)
def test_two_torsion_partition(spec):
    G = group(spec)
    tt = two_torsion_data(G)
    covered = [0, *tt.involutions, *(x for o in tt.orbits for x in o)]
    assert sorted(covered) == list(range(G.n))
    assert 1 + len(tt.involutions) + 2 * len(tt.orbits) == G.n
    for (a, b), s in zip(tt.orbits, tt.section):
        assert G.inv(a) == b and s == min(a, b)
    assert len(subgroups_order_two(G)) == len(tt.involutions)


def test_constructor_examples():
    assert make_cyclic(1).n == 1
    V = make_klein4()
    assert V.n == 4 and all(element_order(V, x) == 2 for x in range(1, 4))
    assert find_isomorphism(direct_product(make_cyclic(2), make_cyclic(2)), V) is not None
    assert find_isomorphism(make_cyclic(4), V) is None
    assert element_order(make_cyclic(4), 1) == 4
    D3 = make_dihedral(3)
    assert all(element_order(D3, r) == 2 for r in range(3, 6))
    assert find_isomorphism(make_symmetric(3), D3) is not None
    Q = make_quaternion()
    assert two_torsion_data(Q).involutions == (1,)


def test_two_torsion_examples():
    C3 = make_cyclic(3)
    assert two_torsion_data(C3) == two_torsion_data(C3).__class__((), ((1, 2),), (1,))
    assert two_torsion_data(make_klein4()).involutions == (1, 2, 3)
    assert two_torsion_data(make_klein4()).orbits == ()
    C4 = two_torsion_data(make_cyclic(4))
    assert C4.involutions == (2,) and C4.orbits == ((1, 3),) and C4.section == (1,)
    assert subgroups_order_two(make_cyclic(5)) == []
    assert len(subgroups_order_two(make_klein4())) == 3
    assert len(subgroups_order_two(make_dihedral(3))) == 3


def test_sign_examples():
    assert sign_homomorphism(make_cyclic(2)).values == (1, -1)
    assert is_oriented(make_klein4())
    assert is_oriented(make_cyclic(7))
    assert not is_oriented(make_cyclic(2))
    for m in (3, 5, 7):
        assert is_oriented(make_cyclic(m))


def test_abelianization_against_oracle():
    expected = {"cyclic:6": 6, "klein4": 4, "dihedral:3": 2, "dihedral:4": 4, "quaternion": 4, "sym:4": 2}
    for spec, order in expected.items():
        assert abelianization_order(group(spec)) == order


@pytest.mark.parametrize("table, axiom", [
    ([[0, 1], [1, 1]], "latin"),
    ([[1, 0], [0, 1]], "identity"),
    ([[0, 1, 2], [1, 2, 0], [2, 1, 0]], "latin"),
])
def test_validation_names_axiom(table, axiom):
    with pytest.raises(GroupTableError) as info:
        from_table(table)
    assert axiom in str(info.value).lower()


def test_associativity_failure_has_witness():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupTableError) as info:
        from_table(table)
    assert "associ" in str(info.value).lower()


def test_load_group_json(tmp_path):
    path = tmp_path / "v4.json"
    path.write_text(json.dumps({"n": 4, "table": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]}))
    G = load_group(path)
    assert find_isomorphism(G, make_klein4()) is not None
    assert parse_group(f"file:{path}").n == 4


@pytest.mark.parametrize("spec", ["cyclic:x", "dihedral", "frob:20", "cyclic:0"])
def test_parse_errors(spec):
    with pytest.raises(ValueError):
        parse_group(spec)


@given(st.integers(1, 6), st.integers(1, 4))
def test_product_order(a, b):
    G = direct_product(make_cyclic(a), make_dihedral(b) if b > 1 else make_cyclic(2))
    assert G.n == a * (2 * b if b > 1 else 2)
    from_table(G.table)
