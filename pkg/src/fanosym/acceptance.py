"""The acceptance battery: nine numbered checks, each returning pass/fail with detail."""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import bounds, fermat, grouprep, spinmolien, toric, wci
from .grouprep import Family, GroupSpec


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title} ({self.seconds:.2f}s) {self.detail}"


def _timed(number: int, title: str, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t = time.perf_counter()
    ok, detail = fn()
    return CriterionResult(number, title, ok, detail, time.perf_counter() - t)


SPIN8_EXPECTED = (1, 0, 1, 0, 1, 0, 1, 0, 3)
SPIN8_GENERATORS = [(2, 1), (8, 2)]


def c1():
    f = tuple(wci.c_fano(n) for n in range(1, 6))
    c = tuple(wci.c_cy(n) for n in range(1, 6))
    return f == (4, 5, 7, 8, 9) and c == (4, 6, 7, 8, 10), f"fano={f} cy={c}"


def c2():
    bad = []
    for n in range(4, 9):
        out = wci.search_max_symmetric(n, wci.Kind.Fano)
        k = out.max_feasible_k
        allowed = all(
            w.shape.b == 1 and len(w.shape.extra_weights) <= 1 for w in out.witnesses
        )
        if k != wci.c_fano(n) or not allowed:
            bad.append((n, k, sorted(out.ambient_shapes)))
    return not bad, "n=4..8 agree" if not bad else f"mismatch {bad}"


def c3():
    G = spinmolien.spin_group(8)
    s = spinmolien.molien_series(G, cap=8)
    gens = spinmolien.generator_degrees(s, 8)
    ok = G.order == 40320 and s.as_ints() == SPIN8_EXPECTED and list(gens) == SPIN8_GENERATORS
    return ok, f"order={G.order} series={s.as_ints()} generators={list(gens)}"


def c4():
    G = spinmolien.close_group(spinmolien.symmetric_group_generators(4, "standard"))
    ok = spinmolien.molien_series(G, 12).as_ints() == tuple(spinmolien.free_series([2, 3, 4], 12))
    for k in range(1, 7):
        H = spinmolien.close_group(spinmolien.symmetric_group_generators(k, "natural"))
        ok &= spinmolien.molien_series(H, 12).as_ints() == tuple(spinmolien.free_series(range(1, k + 1), 12))
    return ok, "Sym(4) standard and Sym(k<=6) natural"


def c5():
    rows = fermat.verdict_suite()
    got = []
    ok = True
    for (N, d, v), (_, _, smooth) in zip(rows, fermat.SUITE_CASES):
        got.append(f"P{N}{d}:{v.status.value}")
        ok &= v.smooth == smooth
        if (N, d) == (7, (1, 2, 3)):
            ok &= v.status is fermat.Status.SmoothByLemma
        if not smooth:
            ok &= v.witness is not None and max(v.residuals) < 1e-9
    return ok, " ".join(got)


def c6():
    bad = [n for n in range(2, 31)
           if wci.fano_index(wci.maximal_example(n).candidate) != wci.index_upper_bound(n, wci.c_fano(n))]
    ok = not bad and wci.fano_index(wci.maximal_example(4).candidate) == 2
    ok &= wci.fano_index(wci.maximal_example(3).candidate) == 1
    return ok, "n=2..30" if ok else f"mismatch at {bad}"


SYM_TABLE = {4: 3, 5: 4, 6: 5}
SCHUR_SYM_TABLE = {4: 2, 5: 4, 6: 4}
ALT_TABLE = {4: 3, 5: 3, 6: 5, 7: 6}
DOUBLE_ALT_TABLE = {4: 2, 5: 2, 6: 4, 7: 4}
ALT_COVER_TABLE = {4: 2, 5: 2, 6: 6, 7: 6}


def table_cells() -> list[tuple[Family, int, int]]:
    """(family, k, expected degree) for every cell with 4 <= k <= 12."""
    cells = []
    for k in range(4, 13):
        cells.append((Family.Sym, k, SYM_TABLE.get(k, k - 1)))
        cells.append((Family.SchurSym, k, SCHUR_SYM_TABLE.get(k, 2 ** ((k - 1) // 2))))
        cells.append((Family.Alt, k, ALT_TABLE.get(k, k - 1)))
        cells.append((Family.DoubleAlt, k, DOUBLE_ALT_TABLE.get(k, 2 ** ((k - 2) // 2))))
        cells.append((grouprep.alt_schur_cover(k), k, ALT_COVER_TABLE.get(k, 2 ** ((k - 2) // 2))))
    cells += [(Family.TripleAlt, 6, 3), (Family.TripleAlt, 7, 6)]
    return cells


def c7():
    bad = [(f.value, k) for f, k, d in table_cells() if grouprep.min_faithful_degree(GroupSpec(f, k)) != d]
    for k in range(9, 13):
        dims = grouprep.sym_degree_spectrum(k, k * k).dims()
        if dims[:3] != [1, k - 1, k * (k - 3) // 2]:
            bad.append(("spectrum", k))
    if grouprep.sym_degree_spectrum(8, 20).dims()[:3] != [1, 7, 14]:
        bad.append(("spectrum", 8))
    return not bad, "all cells" if not bad else f"bad {bad}"


def c8():
    rng = random.Random(20240508)
    notes = []
    burnside = all(sum(grouprep.hook_dimension(p) ** 2 for p in grouprep.partitions(k)) == math.factorial(k) for k in range(1, 13))
    notes.append(f"burnside={burnside}")
    snf_ok = True
    for _ in range(500):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        U, D, V = toric.smith_normal_form(A)
        diag = toric.diagonal(D)
        snf_ok &= toric.matmul(toric.matmul(U, A), V) == D
        snf_ok &= abs(toric.det(U)) == 1 and abs(toric.det(V)) == 1
        snf_ok &= all(D[i][j] == 0 for i in range(r) for j in range(c) if i != j)
        snf_ok &= all((diag[i + 1] % diag[i] == 0) if diag[i] else diag[i + 1] == 0 for i in range(len(diag) - 1))
    notes.append(f"snf={snf_ok}")
    rank_ok = all(toric.class_group(f).free_rank == f.d - f.n for f in toric.corpus().values())
    notes.append(f"free_rank={rank_ok}")
    leg_ok = True
    for k in range(1, 201):
        for p in range(2, k + 1):
            if bounds.is_prime(p):
                leg_ok &= bounds.sylow_structure(k, p).valuation() == bounds.legendre(k, p)
    notes.append(f"legendre={leg_ok}")
    prod_ok = all(
        sorted(toric.lemma42_check(toric.product_of_projective_spaces([a, b])).product_decomposition or [])
        == sorted([a + 1, b + 1])
        for a in range(1, 5) for b in range(1, 5)
    )
    notes.append(f"products={prod_ok}")
    return burnside and snf_ok and rank_ok and leg_ok and prod_ok, " ".join(notes)


def c9():
    ok = bounds.jordan_quadratic_bound(4) == 34
    for n in range(1, 21):
        p = bounds.smallest_prime_above(n + 1)
        ok &= all(bounds.trigger_holds(n, k) for k in range(p * (n + 1), p * (n + 1) + p + 1))
    return ok, f"jordan(4)={bounds.jordan_quadratic_bound(4)}"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "bound table", c1),
    (2, "symmetric search", c2),
    (3, "spin Molien series k=8", c3),
    (4, "Molien oracles", c4),
    (5, "Fermat verdicts", c5),
    (6, "index bound", c6),
    (7, "representation tables", c7),
    (8, "property suites", c8),
    (9, "Sylow trigger", c9),
]


def run_acceptance(only: set[int] | None = None) -> list[CriterionResult]:
    return [_timed(n, title, fn) for n, title, fn in CRITERIA if only is None or n in only]
