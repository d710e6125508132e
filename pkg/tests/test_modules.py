from __future__ import annotations

import json
from math import comb

import pytest

from fincoh.exterior import lambda_module
from fincoh.groups import make_cyclic, make_dihedral, make_klein4
from fincoh.linalg import AbGroupStructure, FinAbPresentation, GroupHom, IntMatrix
from fincoh.modules import (
    EquivariantMap,
    GModule,
    ModuleAxiomError,
    NotEquivariantError,
    TableMonomialModule,
    direct_sum_modules,
    direct_sum_monomial,
    dual_module,
    hom_G,
    induced_hom_map,
    induced_tensor_map,
    load_module,
    natural_map_t,
    norm_matrix,
    parse_module,
    regular_coefficients,
    regular_module,
    tensor_over_G,
    trivial_module,
    trivial_monomial,
    twist,
    twisted_integers,
)
from fincoh.resolutions import bar_module

from conftest import corpus_pairs, group


def _actions(L):
    return [[L.act(g, i) for i in range(L.rank)] for g in range(L.group.n)]


@pytest.mark.parametrize("gs, ms", corpus_pairs())
def test_corpus_modules_satisfy_axioms(gs, ms):
    M = parse_module(group(gs), ms)
    M.validate()
    twist(M).validate()


def test_trivial_and_regular_examples():
    C2, D3 = make_cyclic(2), make_dihedral(3)
    Z = trivial_module(C2)
    assert Z.generators == 1 and Z.relations.cols == 0
    assert all(A == IntMatrix.identity(1) for A in Z.action)
    F2 = trivial_module(D3, "Z/2")
    assert F2.relations == IntMatrix.from_rows([[2]])
    R = regular_module(C2)
    assert R.rank == 2 and R.act(1, 0) == (1, 1) and R.act(1, 1) == (0, 1)
    with pytest.raises(ValueError):
        trivial_module(C2, "Z/1")


def test_twist_examples():
    C2, C3 = make_cyclic(2), make_cyclic(3)
    Zt = twisted_integers(C2)
    assert Zt.action[1] == IntMatrix.from_rows([[-1]])
    for G in (C3, make_klein4()):
        M = regular_coefficients(G)
        assert twist(M).action == M.action
    M = regular_coefficients(make_dihedral(3))
    assert twist(twist(M)).action == M.action


def test_dual_examples():
    C2, C3 = make_cyclic(2), make_cyclic(3)
    R = regular_module(C2)
    assert _actions(dual_module(R)) == _actions(R)
    L = lambda_module(C3, 2)
    assert _actions(dual_module(dual_module(L))) == _actions(L)
    D = dual_module(lambda_module(C2, 2))
    assert D.rank == 1 and D.act(1, 0) == (0, -1)


def test_hom_examples():
    G = make_dihedral(3)
    for M in (trivial_module(G), trivial_module(G, "Z/3"), regular_coefficients(G)):
        assert hom_G(regular_module(G), M).result.structure() == M.structure()
    # hom_G(Z, M) = M^G
    M = regular_coefficients(G)
    assert hom_G(trivial_monomial(G), M).result.structure() == AbGroupStructure(1)
    assert hom_G(trivial_monomial(G), twisted_integers(G)).result.structure().is_trivial
    C2 = make_cyclic(2)
    assert hom_G(lambda_module(C2, 2), trivial_module(C2)).result.structure().is_trivial


def test_tensor_examples():
    G = make_cyclic(4)
    M = regular_coefficients(G)
    assert tensor_over_G(regular_module(G), M).result.structure() == M.structure()
    C2 = make_cyclic(2)
    assert tensor_over_G(lambda_module(C2, 2), trivial_module(C2)).result.structure() == AbGroupStructure(0, (2,))
    # Z tensor_G M = coinvariants: Z~ over C2 gives Z/2
    assert tensor_over_G(trivial_monomial(C2), twisted_integers(C2)).result.structure() == AbGroupStructure(0, (2,))


def test_additivity():
    G = make_dihedral(3)
    parts = [lambda_module(G, 2), trivial_monomial(G), regular_module(G)]
    S = direct_sum_monomial(parts)
    for M in (trivial_module(G), twisted_integers(G), regular_coefficients(G)):
        whole = hom_G(S, M).result.structure()
        summed = FinAbPresentation.direct_sum([hom_G(L, M).result for L in parts]).structure()
        assert whole == summed
        whole = tensor_over_G(S, M).result.structure()
        summed = FinAbPresentation.direct_sum([tensor_over_G(L, M).result for L in parts]).structure()
        assert whole == summed
    sum_mod = direct_sum_modules([trivial_module(G), twisted_integers(G)])
    assert hom_G(regular_module(G), sum_mod).result.structure() == AbGroupStructure(2)


def test_induced_maps_functorial():
    G = make_cyclic(3)
    L = lambda_module(G, 2)
    ident = EquivariantMap(L, L, IntMatrix.identity(L.rank))
    zero = EquivariantMap(L, L, IntMatrix.zeros(L.rank, L.rank))
    for M in (trivial_module(G), regular_coefficients(G)):
        n = hom_G(L, M).result.generators
        assert induced_hom_map(ident, M) == IntMatrix.identity(n)
        assert induced_hom_map(zero, M).is_zero()
        t = tensor_over_G(L, M).result.generators
        assert induced_tensor_map(ident, M) == IntMatrix.identity(t)


def test_rejects_non_equivariant_map():
    G = make_cyclic(3)
    R = regular_module(G)
    bad = EquivariantMap(R, R, IntMatrix.from_rows([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
    assert bad.failures()
    with pytest.raises(NotEquivariantError):
        induced_hom_map(bad, trivial_module(G))


def test_degree_one_maps_over_c2_with_twisted_coefficients():
    from fincoh.exterior import delta_N_map, koszul_map
    C2 = make_cyclic(2)
    Zt = twisted_integers(C2)
    # Koszul boundary 1^x -> x - 1: on hom into Z~, psi -> psi(x) - psi(1) = -2m
    A = induced_hom_map(koszul_map(C2, 2), Zt)
    assert A.shape == (1, 1) and abs(A[0, 0]) == 2
    # delta^1_N sends 1 to 1^x, so its induced map is a unit
    B = induced_hom_map(delta_N_map(C2, 1), Zt)
    assert B.shape == (1, 1) and abs(B[0, 0]) == 1


def test_natural_map_examples():
    C2 = make_cyclic(2)
    Z = trivial_module(C2)
    T = natural_map_t(regular_module(C2), Z)
    assert T.shape == (1, 1) and abs(T[0, 0]) == 1
    assert natural_map_t(trivial_monomial(C2), Z) == IntMatrix.from_rows([[2]])
    empty = TableMonomialModule(C2, [[], []], name="0")
    assert natural_map_t(empty, Z).shape == (0, 0)


@pytest.mark.parametrize("gs", ["cyclic:2", "cyclic:3", "klein4", "dihedral:3"])
def test_natural_map_iso_on_free_modules(gs):
    G = group(gs)
    L = bar_module(G, 1)
    for M in (trivial_module(G), trivial_module(G, "Z/2"), twisted_integers(G), regular_coefficients(G)):
        src = tensor_over_G(L, M)
        tgt = hom_G(dual_module(L), M)
        h = GroupHom(src.result, tgt.result, natural_map_t(L, M, src, tgt))
        assert h.is_isomorphism()


def test_hom_rank_counts_orbits():
    for G in (make_cyclic(3), make_cyclic(5), make_klein4()):
        for k in range(G.n + 1):
            L = lambda_module(G, k)
            free = sum(1 for st in L.orbits.stabilizers if all(s == 1 for _, s in st))
            assert hom_G(L, trivial_module(G)).result.structure().free_rank == free
            assert sum(G.n // len(st) for st in L.orbits.stabilizers) == comb(G.n, k)


def test_norm_matrix_examples():
    for m in range(1, 7):
        assert norm_matrix(trivial_module(make_cyclic(m))) == IntMatrix.from_rows([[m]])
    assert norm_matrix(twisted_integers(make_cyclic(2))).is_zero()


def test_module_json(tmp_path):
    G = make_cyclic(2)
    path = tmp_path / "sign.json"
    path.write_text(json.dumps({"generators": 1, "relations": [], "action": {"1": [[-1]]}}))
    M = load_module(G, path)
    assert M.action[1] == IntMatrix.from_rows([[-1]])
    assert parse_module(G, f"file:{path}").structure() == AbGroupStructure(1)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"generators": 1, "action": {"1": [[2]]}}))
    with pytest.raises(ModuleAxiomError):
        load_module(G, bad)


def test_module_axiom_error():
    G = make_cyclic(3)
    rot = IntMatrix.from_rows([[0, 1], [1, 0]])
    with pytest.raises(ModuleAxiomError):
        GModule(G, 2, None, [IntMatrix.identity(2), rot, rot])


@pytest.mark.parametrize("spec", ["trivial:Q", "trivial:Z/1", "regular:2", "bogus"])
def test_parse_module_errors(spec):
    with pytest.raises(ValueError):
        parse_module(make_cyclic(2), spec)
