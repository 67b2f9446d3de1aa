"""The nine acceptance criteria, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also written to the terminal through ``capsys.disabled()``.
"""
import math
import random
import time

import pytest

from fanosym import bounds, fermat, grouprep, spinmolien, toric, wci
from fanosym.grouprep import Family, GroupSpec


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, seconds, limit):
        ok = bool(ok) and seconds < limit
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({seconds:.2f}s < {limit}s) {detail}")
        return ok

    return emit


@pytest.fixture(scope="module")
def spin8():
    t = time.perf_counter()
    G = spinmolien.spin_group(8)
    s = spinmolien.molien_series(G, cap=8)
    return G, s, time.perf_counter() - t


def test_criterion_1(report):
    t = time.perf_counter()
    f = tuple(wci.c_fano(n) for n in range(1, 6))
    c = tuple(wci.c_cy(n) for n in range(1, 6))
    ok = f == (4, 5, 7, 8, 9) and c == (4, 6, 7, 8, 10)
    assert report(1, "bound table", ok, f"fano={f} cy={c}", time.perf_counter() - t, 1)


def test_criterion_2(report):
    details, ok, worst = [], True, 0.0
    for n in range(4, 9):
        t = time.perf_counter()
        out = wci.search_max_symmetric(n, wci.Kind.Fano)
        worst = max(worst, time.perf_counter() - t)
        k = out.max_feasible_k
        allowed = {f"P^{k - 2}"}
        shapes_ok = all(
            s in allowed or (s.startswith(f"P(1^({k - 1}),") and s.count(",") == 1) for s in out.ambient_shapes
        )
        ok &= k == wci.c_fano(n) and shapes_ok
        details.append(f"n={n}:k={k}")
    assert report(2, "symmetric search", ok, " ".join(details), worst, 60)


def test_criterion_3(report, spin8):
    G, s, seconds = spin8
    gens = list(spinmolien.generator_degrees(s, 8))
    expected_series = (1, 0, 1, 0, 1, 0, 1, 0, 3)
    expected_gens = [(2, 1), (8, 2)]
    ok = G.order == 40320 and s.as_ints() == expected_series and gens == expected_gens
    detail = f"order={G.order} series={s.as_ints()} generators={gens}"
    assert report(3, "spin Molien series k=8", ok, detail, seconds, 300)


def test_criterion_3_closure_order(spin8):
    G, _, seconds = spin8
    assert G.order == 40320 and seconds < 300


def test_criterion_4(report):
    t = time.perf_counter()
    G = spinmolien.close_group(spinmolien.symmetric_group_generators(4, "standard"))
    ok = spinmolien.molien_series(G, 12).as_ints() == tuple(spinmolien.free_series([2, 3, 4], 12))
    for k in range(1, 7):
        H = spinmolien.close_group(spinmolien.symmetric_group_generators(k, "natural"))
        ok &= spinmolien.molien_series(H, 12).as_ints() == tuple(spinmolien.free_series(range(1, k + 1), 12))
    assert report(4, "Molien oracles", ok, "Sym(4) standard, Sym(k<=6) natural", time.perf_counter() - t, 60)


def test_criterion_5(report):
    t = time.perf_counter()
    rows = {(N, d): v for N, d, v in fermat.verdict_suite()}
    ok = rows[(7, (1, 2, 3))].status is fermat.Status.SmoothByLemma
    for key in [(6, (1, 2, 4)), (7, (1, 3, 4)), (8, (1, 3, 4))]:
        ok &= rows[key].smooth
    w = rows[(7, (1, 2, 5))]
    ok &= not w.smooth and w.witness is not None and max(w.residuals) < 1e-9
    ok &= not rows[(8, (1, 2, 5))].smooth
    detail = " ".join(f"P{N}{d}:{v.status.value}" for (N, d), v in rows.items())
    assert report(5, "Fermat verdicts", ok, detail, time.perf_counter() - t, 120)


def test_criterion_6(report):
    t = time.perf_counter()
    bad = [n for n in range(2, 31)
           if wci.fano_index(wci.maximal_example(n).candidate) != wci.index_upper_bound(n, wci.c_fano(n))]
    ok = not bad
    ok &= wci.fano_index(wci.maximal_example(4).candidate) == 2
    ok &= wci.fano_index(wci.maximal_example(3).candidate) == 1
    assert report(6, "index bound", ok, f"mismatches={bad}", time.perf_counter() - t, 1)


SYM = {4: 3, 5: 4, 6: 5}
SCHUR_SYM = {4: 2, 5: 4, 6: 4}
ALT = {4: 3, 5: 3, 6: 5, 7: 6}
DOUBLE_ALT = {4: 2, 5: 2, 6: 4, 7: 4}
ALT_COVER = {4: 2, 5: 2, 6: 6, 7: 6}


def test_criterion_7(report):
    t = time.perf_counter()
    bad = []
    for k in range(4, 13):
        cells = [
            (Family.Sym, SYM.get(k, k - 1)),
            (Family.SchurSym, SCHUR_SYM.get(k, 2 ** ((k - 1) // 2))),
            (Family.Alt, ALT.get(k, k - 1)),
            (Family.DoubleAlt, DOUBLE_ALT.get(k, 2 ** ((k - 2) // 2))),
            (grouprep.alt_schur_cover(k), ALT_COVER.get(k, 2 ** ((k - 2) // 2))),
        ]
        bad += [(f.value, k) for f, d in cells if grouprep.min_faithful_degree(GroupSpec(f, k)) != d]
    bad += [("TripleAlt", k) for k, d in ((6, 3), (7, 6)) if grouprep.min_faithful_degree(GroupSpec(Family.TripleAlt, k)) != d]
    for k in range(9, 13):
        if grouprep.sym_degree_spectrum(k, k * k).dims()[:3] != [1, k - 1, k * (k - 3) // 2]:
            bad.append(("spectrum", k))
    if grouprep.sym_degree_spectrum(8, 20).dims()[2] != 14:
        bad.append(("spectrum", 8))
    assert report(7, "representation tables", not bad, f"bad={bad}", time.perf_counter() - t, 5)


def test_criterion_8(report):
    t = time.perf_counter()
    rng = random.Random(8)
    burnside = all(
        sum(grouprep.hook_dimension(p) ** 2 for p in grouprep.partitions(k)) == math.factorial(k) for k in range(1, 13)
    )
    snf = True
    for _ in range(500):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        U, D, V = toric.smith_normal_form(A)
        snf &= toric.matmul(toric.matmul(U, A), V) == D
        snf &= abs(toric.det(U)) == 1 and abs(toric.det(V)) == 1
        snf &= all(D[i][j] == 0 for i in range(r) for j in range(c) if i != j)
    rank = all(toric.class_group(f).free_rank == f.d - f.n for f in toric.corpus().values())
    sylow = all(
        bounds.sylow_structure(k, p).valuation() == bounds.legendre(k, p)
        for k in range(1, 201) for p in range(2, k + 1) if bounds.is_prime(p)
    )
    products = all(
        sorted(toric.lemma42_check(toric.product_of_projective_spaces([a, b])).product_decomposition or [])
        == sorted([a + 1, b + 1])
        for a in range(1, 5) for b in range(1, 5)
    )
    ok = burnside and snf and rank and sylow and products
    detail = f"burnside={burnside} snf={snf} rank={rank} sylow={sylow} products={products}"
    assert report(8, "property suites", ok, detail, time.perf_counter() - t, 120)


def test_criterion_9(report):
    t = time.perf_counter()
    ok = bounds.jordan_quadratic_bound(4) == 34
    for n in range(1, 21):
        p = bounds.smallest_prime_above(n + 1)
        ok &= all(bounds.trigger_holds(n, k) for k in range(p * (n + 1), p * (n + 1) + 2 * p))
    assert report(9, "Sylow trigger", ok, f"jordan(4)={bounds.jordan_quadratic_bound(4)}", time.perf_counter() - t, 10)
