"""Acceptance gate: one PASS/FAIL line per criterion.

Run on its own with ``python tests/test_acceptance.py`` or as part of
``pytest``; the lines are repeated in the terminal summary.
"""
from __future__ import annotations

import random
import time

import pytest

from fincoh.exterior import hodge_equivariance_check, homotopy_identity_check, verify_hodge_square
from fincoh.groups import make_cyclic
from fincoh.linalg import AbGroupStructure, IntMatrix, homology_at, kernel_basis
from fincoh.linalg.smith import smith_normal_form
from fincoh.modules import parse_module, twist
from fincoh.resolutions import ResourceCapError
from fincoh.verify import (
    CORPUS_GROUPS,
    CORPUS_MODULES,
    REFUTED,
    VERIFIED,
    run_claim,
    verify_cor43_range,
    verify_lambda2_decomposition,
    verify_theta_diagram,
    verify_zarelua_counterexample,
)

from conftest import ACCEPTANCE_LINES, corpus_pairs, engine, group
from oracles import enumerate_homology_mod, frac_det, mod_q_complex, periodic_tate, torsion_counts

# order-8 groups need P_4 (8^5 = 32768 basis elements) for Hhat^3
TATE_CAP = 40000


def record(n: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def cyc(*d: int) -> AbGroupStructure:
    return AbGroupStructure(0, tuple(x for x in d if x != 1))


def test_criterion_1_dihedral_lambda_two():
    start = time.perf_counter()
    bad = []
    for m in range(1, 7):
        G = group(f"dihedral:{m}")
        assert G.n == 2 * m
        h = engine(f"dihedral:{m}", "trivial:Z/2").lambda_(2).structure
        if not h.is_trivial:
            bad.append(f"D{m}: {h}")
    wall = time.perf_counter() - start
    ok = not bad and wall < 60
    record(1, ok, f"H^2_λ(D_m, Z/2) = 0 for m = 1..6 in {wall:.2f} s (< 60 s)" + (f"; failures {bad}" if bad else ""))


def test_criterion_2_klein_counterexample():
    start = time.perf_counter()
    E = engine("klein4")
    h1 = E.classical(1, "homology").structure
    hh1 = E.classical(1).structure
    rep = verify_zarelua_counterexample()
    duality = run_claim("duality", "klein4", "trivial:Z")
    wall = time.perf_counter() - start
    ok = (h1 == cyc(2, 2) and hh1.is_trivial and rep.status == REFUTED and rep.passed
          and all(r.status == VERIFIED for r in duality) and wall < 10)
    record(2, ok, f"H_1(V4, Z) = {h1}, H^1(V4, Z) = {hh1}, claimed duality at k=1 {rep.status}, "
                  f"{len(duality)} duality degrees verified, {wall:.2f} s (< 10 s)")


def test_criterion_3_duality_sweep():
    start = time.perf_counter()
    reports = []
    for gs, ms in corpus_pairs(8):
        reports.extend(run_claim("duality", gs, ms))
    wall = time.perf_counter() - start
    expected = sum(group(gs).n - 1 for gs in CORPUS_GROUPS) * len(CORPUS_MODULES)
    bad = [r.line() for r in reports
           if not (r.checks.get("invariant_factors_equal") and r.checks.get("matrix_invertible"))]
    ok = not bad and len(reports) == expected and wall < 600
    record(3, ok, f"Delta_k invertible with equal invariant factors on {len(reports)}/{expected} "
                  f"(G, M, k), {len(CORPUS_GROUPS)} groups x {len(CORPUS_MODULES)} modules, "
                  f"{wall:.1f} s (< 600 s)" + (f"; failures {bad[:3]}" if bad else ""))


def test_criterion_4_top_lambda_is_tate_zero():
    bad = []
    # Delta_0 exists for 0 <= n-2 only; the trivial group is reported separately
    pairs = [(gs, ms) for gs, ms in corpus_pairs(8) if group(gs).n >= 2]
    for gs, ms in pairs:
        E = engine(gs, ms)
        top = E.lambda_(E.G.n - 1).structure
        # Hhat^0(G, M~) as the cokernel of the norm map M~_G -> M~^G
        via_norm = E.twisted.norm_map().hom.cokernel()
        if not (top == via_norm == E.twisted.tate_by_cases(0)):
            bad.append(f"{gs}/{ms}: {top} vs {via_norm}")
        if not E.duality_map(0).is_isomorphism():
            bad.append(f"{gs}/{ms}: Delta_0 not invertible")
    trivial = engine("cyclic:1")
    outside = f"H^0_λ(C1, Z) = {trivial.lambda_(0).structure}, Hhat^0(C1, Z) = {trivial.tate(0).structure}"
    record(4, not bad, f"H^(n-1)_λ(G, M) = coker(norm on M~) and Delta_0 invertible on {len(pairs)} pairs "
                       f"with n >= 2; C1 lies outside the range of Delta_0 ({outside})"
                       + (f"; failures {bad[:3]}" if bad else ""))


def test_criterion_5_tate_consistency():
    start = time.perf_counter()
    bad = []
    checks = 0
    pairs = corpus_pairs(8)
    for gs, ms in pairs:
        E = engine(gs, ms, TATE_CAP)
        for k in range(-3, 4):
            checks += 1
            a = E.tate(k).structure
            b = E.tate_by_cases(k)
            if a != b:
                bad.append(f"{gs}/{ms} k={k}: {a} vs {b}")
    oracle = 0
    for m in range(1, 9):
        G = make_cyclic(m)
        for ms in CORPUS_MODULES:
            M = parse_module(G, ms)
            E = engine(f"cyclic:{m}", ms, TATE_CAP)
            for k in range(-3, 4):
                oracle += 1
                expect = periodic_tate(G, M, k)
                if ms == "trivial:Z" and expect != (cyc(m) if k % 2 == 0 else AbGroupStructure()):
                    bad.append(f"oracle C{m} k={k}: {expect}")
                if E.tate(k).structure != expect:
                    bad.append(f"C{m}/{ms} k={k}: engine {E.tate(k).structure} vs oracle {expect}")
    wall = time.perf_counter() - start
    record(5, not bad, f"complete resolution = case definition on {checks} (G, M, k) with -3 <= k <= 3; "
                       f"2-periodic oracle agrees on {oracle} cyclic cases, Hhat^even(C_m, Z) = Z/m, "
                       f"Hhat^odd = 0; {wall:.1f} s" + (f"; failures {bad[:3]}" if bad else ""))


def test_criterion_6_involution_sequence():
    groups = ["cyclic:2", "cyclic:4", "cyclic:6", "cyclic:8", "klein4", "dihedral:3", "dihedral:4"]
    bad = []
    n = 0
    for gs in groups:
        for ms in CORPUS_MODULES:
            (rep,) = run_claim("cor601", gs, ms)
            n += 1
            exact = rep.checks.get("twisted_exact_in_middle") and rep.checks.get("twisted_kappa1_surjective")
            if rep.status != VERIFIED or not exact:
                bad.append(rep.line())
    record(6, not bad, f"involution sequence exact (image = kernel) with the duality splice on {n} pairs "
                       f"({len(groups)} groups x {len(CORPUS_MODULES)} modules)"
                       + (f"; failures {bad[:3]}" if bad else ""))


def test_criterion_7_odd_prime_range():
    bad = []
    n = 0
    for gs, p in [("cyclic:5", 5), ("cyclic:7", 5), ("cyclic:7", 7)]:
        G = group(gs)
        for ms in CORPUS_MODULES:
            M = parse_module(G, ms)
            rep = verify_cor43_range(G, p, M, engine(gs, ms))
            n += 1
            if rep.status != VERIFIED:
                bad.append(rep.line())
                continue
            # the periodic fixture gives Hhat^i(G, M~) independently
            E = engine(gs, ms)
            for i in range(min(p - 1, G.n - 1)):
                lam = E.lambda_(G.n - i - 1).structure
                if lam != periodic_tate(G, twist(M), i):
                    bad.append(f"{gs}/{ms} p={p} i={i}: {lam}")
    record(7, not bad, f"kappa_k iso for k < p-1 and H^(n-i-1)_λ = Hhat^i(G, M~) for i < p-1 on {n} "
                       f"(C5, p=5), (C7, p=5,7) cases" + (f"; failures {bad[:3]}" if bad else ""))


def test_criterion_8_structural_identities():
    bad = []
    for n in range(1, 7):
        for c in range(n):
            for k in range(n + 1):
                if not homotopy_identity_check(n, c, k):
                    bad.append(f"homotopy n={n} c={c} k={k}")
    for n in range(1, 9):
        if not verify_hodge_square(n).ok:
            bad.append(f"hodge square n={n}")
    for gs in CORPUS_GROUPS:
        G = group(gs)
        for k in range(G.n + 1):
            if not hodge_equivariance_check(G, k):
                bad.append(f"equivariance {gs} k={k}")
        # Lambda^2 of the trivial group is zero, nothing to decompose
        if G.n >= 2:
            if verify_lambda2_decomposition(G).status != VERIFIED:
                bad.append(f"lambda2 {gs}")
            if verify_theta_diagram(G).status != VERIFIED:
                bad.append(f"theta {gs}")
    pairs = corpus_pairs(8)
    for gs, ms in pairs:
        E = engine(gs, ms)
        for k in (E.G.n, E.G.n + 1, E.G.n + 3):
            if not E.lambda_(k).structure.is_trivial:
                bad.append(f"vanishing {gs}/{ms} k={k}")
    record(8, not bad, "homotopy identity n <= 6, Hodge square n <= 8, twisted equivariance, "
                       f"Lambda^2 decomposition and theta square on {len(CORPUS_GROUPS)} groups, "
                       f"H^k_λ = 0 for k >= n on {len(pairs)} pairs" + (f"; failures {bad[:3]}" if bad else ""))


def _reversed_order(k: int, size: int) -> list[int]:
    return list(range(size))[::-1]


def test_criterion_9_map_algebra():
    bad = []
    factor_checked = factor_skipped = lifts_compared = chain_level_differs = 0
    pairs = corpus_pairs(8)
    for gs, ms in pairs:
        E = engine(gs, ms)
        for k in (0, 1):
            for variance in ("homology", "cohomology"):
                if not E.beta(k, variance).is_isomorphism():
                    bad.append(f"beta_{k} {variance} {gs}/{ms}")
        if not E.kappa_map(0).is_isomorphism():
            bad.append(f"kappa_0 {gs}/{ms}")
        if not E.kappa_map(1).is_surjective():
            bad.append(f"kappa_1 {gs}/{ms}")
        for k in range(1, E.G.n):
            try:
                holds = E.factorization(k).holds
            except ResourceCapError:
                factor_skipped += 1
                continue
            factor_checked += 1
            if not holds:
                bad.append(f"factorization {gs}/{ms} k={k}")
        for k in range(0, min(E.G.n, 3)):
            try:
                a = E.kappa_map(k)
                b = E.kappa_map(k, column_order=_reversed_order)
            except ResourceCapError:
                continue
            lifts_compared += 1
            if a.matrix != b.matrix:
                bad.append(f"lift dependence {gs}/{ms} k={k}")
        if ms == "trivial:Z" and E.G.n >= 3:
            f = E.comparison_lift(top=1)
            g = E.comparison_lift(column_order=_reversed_order, top=1)
            if any(f.component(j).to_matrix() != g.component(j).to_matrix() for j in (0, 1)):
                chain_level_differs += 1
    ok = not bad and chain_level_differs > 0
    record(9, ok, f"beta_0, beta_1 iso (both variances), kappa_0 iso, kappa_1 onto on {len(pairs)} pairs; "
                  f"kappa_(k+1) o t = zeta_k o beta_k in {factor_checked} degrees ({factor_skipped} beyond the "
                  f"size cap); two lifts give identical kappa in {lifts_compared} cases and differ at chain "
                  f"level for {chain_level_differs} groups" + (f"; failures {bad[:3]}" if bad else ""))


def _random_matrix(rng: random.Random) -> list[list[int]]:
    m, n = rng.randint(1, 8), rng.randint(1, 8)
    return [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]


def _random_presented(rng: random.Random):
    """``Z^a -> Z^m -> Z^b`` with d o d = 0, built as d_in = ker(d_out) R."""
    a, m, b = rng.randint(0, 3), rng.randint(1, 3), rng.randint(0, 3)
    d_out = [[rng.randint(-4, 4) for _ in range(m)] for _ in range(b)]
    K = kernel_basis(IntMatrix.from_rows(d_out, m)) if b else IntMatrix.identity(m)
    if a and K.cols:
        R = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(a)] for _ in range(K.cols)], a)
        d_in = (K @ R).tolist()
    else:
        d_in = [[0] * a for _ in range(m)]
    return a, m, b, d_in, d_out


def test_criterion_10_linear_algebra():
    rng = random.Random(20260510)
    start = time.perf_counter()
    bad = []
    for trial in range(500):
        A = _random_matrix(rng)
        m, n = len(A), len(A[0])
        snf = smith_normal_form(IntMatrix.from_rows(A, n))
        S, U, V = snf.S, snf.U, snf.V
        if U @ IntMatrix.from_rows(A, n) @ V != S:
            bad.append(f"UAV != S at {trial}")
        if abs(frac_det(U.tolist())) != 1 or abs(frac_det(V.tolist())) != 1:
            bad.append(f"not unimodular at {trial}")
        diag = [S[i, i] for i in range(min(m, n))]
        if any(S[i, j] for i in range(m) for j in range(n) if i != j):
            bad.append(f"off-diagonal entry at {trial}")
        if any(d < 0 for d in diag):
            bad.append(f"negative diagonal at {trial}")
        for x, y in zip(diag, diag[1:]):
            if (x == 0 and y != 0) or (x and y % x):
                bad.append(f"divisibility chain at {trial}")
    complexes = 0
    for trial in range(300):
        a, m, b, d_in, d_out = _random_presented(rng)
        q = rng.choice([2, 3, 4, 6])
        if q ** m > 800:
            q = 2
        C = mod_q_complex(d_in, d_out, (a, m, b), q)
        H = C.homology(0).structure
        complexes += 1
        if torsion_counts(H, q) != enumerate_homology_mod(d_in, d_out, m, q):
            bad.append(f"brute force disagrees at complex {trial}")
        if homology_at(C, 0, method="cover") != H:
            bad.append(f"methods disagree at complex {trial}")
    wall = time.perf_counter() - start
    ok = not bad and wall < 30
    record(10, ok, f"500 random matrices (dims <= 8, |entries| <= 9): UAV = S, U and V unimodular, "
                   f"divisibility chain; {complexes} presented complexes match brute-force enumeration "
                   f"over finite quotients; {wall:.1f} s (< 30 s)" + (f"; failures {bad[:3]}" if bad else ""))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
