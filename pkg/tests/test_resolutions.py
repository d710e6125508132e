from __future__ import annotations

import pytest

from fincoh.exterior import lambda_module
from fincoh.groups import make_cyclic, make_dihedral, make_klein4
from fincoh.linalg import IntMatrix, free_complex, induced_map_on_homology
from fincoh.modules import trivial_module, twisted_integers
from fincoh.resolutions import (
    EquivariantChainMap,
    ResourceCapError,
    bar_module,
    bar_resolution,
    coaugmented_dual,
    cochain_C,
    complete_resolution,
    dual_resolution,
    hom_chain_map,
    hom_complex,
    koszul_resolution,
    lift_chain_map,
    periodic_resolution,
    shifted_dual_resolution,
    wedge_chain_map,
)
from fincoh.verify import CORPUS_GROUPS

from conftest import group


def as_free_complex(X, augmented: bool = False):
    """Underlying complex of free abelian groups (augmentation placed in degree -1 -> Z)."""
    diffs = {}
    dims = {}
    for k in X.degrees:
        dims[k] = X.term(k).rank
        d = X.differential(k)
        if d is not None:
            diffs[k] = d.to_matrix()
    if augmented and X.augmentation is not None:
        diffs[X.lo] = X.augmentation.to_matrix()
        dims[X.lo - 1] = 1
    return free_complex(diffs, dims)


def test_bar_examples():
    G = make_cyclic(2)
    P = bar_resolution(G, 1)
    assert P.term(0).rank == 2 and P.term(1).rank == 4
    d = P.differential(1)
    # (g0, g1) -> (g1) - (g0) with g0 most significant
    assert d.column(P.term(1).encode((0, 1))) == {1: 1, 0: -1}
    assert d.column(P.term(1).encode((1, 1))) == {}
    assert (P.augmentation.to_matrix() @ d.to_matrix()).is_zero()


def test_bar_exact():
    P = bar_resolution(make_cyclic(3), 3)
    C = as_free_complex(P, augmented=True)
    assert all(C.homology(k).structure.is_trivial for k in range(-1, 3))


def test_bar_size_cap():
    with pytest.raises(ResourceCapError):
        bar_module(make_cyclic(8), 5)
    with pytest.raises(ResourceCapError):
        bar_resolution(make_cyclic(8), 5)
    # lazily built complexes refuse only when the term is requested
    P = bar_resolution(make_cyclic(8), 5, lazy=True)
    with pytest.raises(ResourceCapError):
        P.term(5)


@pytest.mark.parametrize("spec", ["cyclic:1", "cyclic:2", "cyclic:3", "klein4", "dihedral:3", "cyclic:6"])
def test_complexes_well_formed(spec):
    G = group(spec)
    assert not bar_resolution(G, 2).failures()
    assert not koszul_resolution(G).failures()
    assert not cochain_C(G).failures()
    assert not dual_resolution(G).failures()
    assert not shifted_dual_resolution(G).failures()
    assert not complete_resolution(G, -3, 2).failures()
    assert not coaugmented_dual(bar_resolution(G, 2)).failures()
    if spec.startswith("cyclic"):
        assert not periodic_resolution(G, -3, 3).failures()


def test_koszul_resolution_examples():
    G = make_cyclic(2)
    K = koszul_resolution(G)
    assert K.degrees == range(0, 2)
    assert K.differential(1).to_matrix() == IntMatrix.from_rows([[-1], [1]])
    for n in range(1, 7):
        K = koszul_resolution(make_cyclic(n))
        assert K.hi == n - 1
        C = as_free_complex(K, augmented=True)
        assert all(C.homology(k).structure.is_trivial for k in range(-1, n))


def test_cochain_and_dual_exact():
    G = make_cyclic(2)
    assert [cochain_C(G).term(-k).rank for k in range(3)] == [1, 2, 1]
    for n in range(1, 7):
        G = make_cyclic(n) if n != 4 else make_klein4()
        C = as_free_complex(cochain_C(G))
        assert all(C.homology(k).structure.is_trivial for k in range(-n, 1))
        D = as_free_complex(dual_resolution(G))
        assert all(D.homology(k).structure.is_trivial for k in range(0, n + 1))


def test_complete_resolution_examples():
    G = make_cyclic(2)
    X = complete_resolution(G, -2, 2)
    assert X.differential(0).to_matrix() == IntMatrix.from_rows([[1, 1], [1, 1]])
    T = complete_resolution(make_cyclic(1), -2, 2)
    assert T.differential(0).to_matrix() == IntMatrix.from_rows([[1]])
    for spec in ("cyclic:1", "cyclic:3"):
        G = group(spec)
        X = complete_resolution(G, -3, 3)
        C = as_free_complex(X)
        assert all(C.homology(k).structure.is_trivial for k in range(-2, 3))
        P = bar_resolution(G, 3)
        assert all(X.term(k).rank == P.term(k).rank for k in range(4))


def test_wedge_examples():
    G = make_cyclic(2)
    w = wedge_chain_map(G, 2)
    P1 = bar_module(G, 1)
    f = w.component(1)
    assert f.column(P1.encode((1, 1))) == {}
    assert f.column(P1.encode((0, 1))) == {0: 1}
    assert f.column(P1.encode((1, 0))) == {0: -1}
    assert w.component(0).to_matrix() == IntMatrix.identity(2)


@pytest.mark.parametrize("spec", CORPUS_GROUPS)
def test_wedge_commutes(spec):
    G = group(spec)
    top = 2 if G.n <= 6 else 1
    w = wedge_chain_map(G, top)
    assert not w.failures(range(0, top + 1))


def test_identity_lift_induces_identity():
    G = make_dihedral(3)
    P = bar_resolution(G, 2)
    f = lift_chain_map(P, P, 2)
    assert not f.failures(range(3))
    H = hom_complex(P, trivial_module(G, "Z/2"))
    F = hom_chain_map(f, trivial_module(G, "Z/2"), H, H)
    for k in (0, -1):
        m = induced_map_on_homology(F, k)
        assert m == IntMatrix.identity(m.rows)


@pytest.mark.parametrize("spec", ["cyclic:2", "cyclic:3", "klein4", "dihedral:3"])
def test_lifts_to_dual_resolution(spec):
    G = group(spec)
    P = bar_resolution(G, min(3, G.n - 1))
    T = shifted_dual_resolution(G)
    top = min(3, G.n - 1)
    f = lift_chain_map(P, T, top)
    g = lift_chain_map(P, T, top, column_order=lambda k, size: list(range(size))[::-1])
    assert not f.failures(range(top + 1)) and not g.failures(range(top + 1))
    assert isinstance(f, EquivariantChainMap)


def test_lifts_from_periodic_resolution():
    for m in (2, 3, 5):
        G = make_cyclic(m)
        f = lift_chain_map(periodic_resolution(G, 0, m + 1), shifted_dual_resolution(G), m - 1)
        assert not f.failures(range(m))


def test_lift_needs_augmentation():
    G = make_cyclic(2)
    with pytest.raises(ValueError):
        lift_chain_map(cochain_C(G), shifted_dual_resolution(G), 1)


def test_periodic_resolution_rejects_noncyclic():
    with pytest.raises(ValueError):
        periodic_resolution(make_klein4(), 0, 2)


def test_hom_complex_of_koszul_c2_twisted():
    # K_lambda(C2, Z~): Z --(-2)--> Z, so H^1 = Z/2 and H^0 = 0
    G = make_cyclic(2)
    K = hom_complex(koszul_resolution(G), twisted_integers(G))
    assert str(K.homology(-1).structure) == "Z/2"
    assert K.homology(0).structure.is_trivial
    assert lambda_module(G, 2).rank == 1
