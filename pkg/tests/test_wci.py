import itertools

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from fanosym import wci
from fanosym.wci import (
    BudgetError,
    Classification,
    Kind,
    SymmetricShape,
    WciCandidate,
    c_cy,
    c_fano,
    canonical_degree,
    classify,
    codim_bound,
    fano_index,
    if_inequalities,
    index_upper_bound,
    linear_cone_free,
    max_k_degree_condition,
    maximal_example,
    reduce_linear,
    search_max_symmetric,
    shape_filters,
    sigma_degree_lower_bound,
    total_degree_lower_bound,
    vandermonde_degree,
    well_formed_space,
)


def W(weights, degrees):
    return WciCandidate(tuple(weights), tuple(degrees))


# --------------------------------------------------------------- predicates
def test_well_formed_examples():
    assert well_formed_space((1, 1, 1, 1))
    assert well_formed_space((1,) * 9 + (2,))
    assert not well_formed_space((2, 2, 3))


@given(st.lists(st.integers(1, 12), min_size=2, max_size=6), st.randoms())
def test_well_formed_is_order_free(ws, rnd):
    shuffled = list(ws)
    rnd.shuffle(shuffled)
    assert well_formed_space(ws) == well_formed_space(shuffled)


def test_linear_cone_examples():
    assert linear_cone_free(W([1] * 8, [2, 3]))
    assert not linear_cone_free(W([1] * 8, [1, 2, 3]))
    assert not linear_cone_free(W([1] * 9 + [2], [1, 2, 3, 4]))


def test_classification_examples():
    c = W([1] * 8, [1, 2, 3])
    assert canonical_degree(c) == -2 and classify(c) is Classification.Fano and fano_index(c) == 2
    assert classify(W([1] * 7, [1, 2, 4])) is Classification.CalabiYau
    assert classify(W([1, 1, 1], [3])) is Classification.CalabiYau
    assert classify(W([1, 1, 1], [4])) is Classification.GeneralType
    with pytest.raises(ValueError):
        fano_index(W([1, 1, 1], [3]))


def test_if_examples():
    r = if_inequalities(W([1] * 7, [2, 3]))
    assert r.part1 and r.part2 is None
    assert not if_inequalities(W([1, 1, 1, 2], [2])).part1
    # m >= n+1 exercises the second family
    r = if_inequalities(W([1] * 5, [2, 2, 2]))
    assert r.part2 is True


def test_codim_examples():
    assert codim_bound(W([1] * 8, [1, 2, 3]), Kind.Fano)
    c = W([1] * 8, [2, 2, 2, 2])
    assert not codim_bound(c, Kind.Fano) and codim_bound(c, Kind.CalabiYau)
    assert not codim_bound(W([1] * 4, [2, 2]), "Fano")


def test_candidate_validation():
    with pytest.raises(ValueError):
        W([1, 1], [2])  # n = 0
    with pytest.raises(ValueError):
        W([1, 1, 0], [2])
    assert W([2, 1, 1], [3]).weights == (1, 1, 2)


@given(st.lists(st.integers(1, 4), min_size=4, max_size=9), st.data())
def test_reduction_preserves_canonical_degree(ws, data):
    ones = ws.count(1)
    m = data.draw(st.integers(1, max(1, len(ws) - 3)))
    lin = data.draw(st.integers(0, min(ones, m - 1)))  # keep one equation after reducing
    degs = [1] * lin + data.draw(st.lists(st.integers(2, 9), min_size=m - lin, max_size=m - lin))
    if len(ws) - 1 - lin - (m - lin) < 1:
        return
    c = WciCandidate(tuple(ws), tuple(degs))
    r = reduce_linear(c)
    assert canonical_degree(r) == canonical_degree(c)
    assert 1 not in r.degrees
    assert r.n == c.n


# --------------------------------------------------------------- bounds
def test_table_values():
    assert [c_fano(n) for n in range(1, 6)] == [4, 5, 7, 8, 9]
    assert [c_cy(n) for n in range(1, 6)] == [4, 6, 7, 8, 10]


@pytest.mark.parametrize("n", range(1, 301))
def test_closed_forms_match_sympy(n):
    r = sp.sqrt(8 * n + 9)
    assert c_fano(n) == n + int(sp.ceiling((1 + r) / 2))
    assert c_cy(n) == n + int(sp.floor((1 + r) / 2)) + 1


def test_cy_fano_gap_and_monotonicity():
    for n in range(1, 10_001):
        assert c_cy(n) - c_fano(n) in (0, 1)
        if n >= 2:
            assert c_fano(n - 1) < c_fano(n)
            assert c_cy(n - 1) < c_fano(n)


def test_scan_matches_closed_forms():
    assert max_k_degree_condition(4, True) == 8
    assert max_k_degree_condition(5, False) == 10
    assert max_k_degree_condition(1, True) == 4
    for n in range(1, 501):
        assert max_k_degree_condition(n, True) == c_fano(n)
        assert max_k_degree_condition(n, False) == c_cy(n)


def test_degree_bound_examples():
    assert sigma_degree_lower_bound(1, 1) == 2
    assert sigma_degree_lower_bound(3, 1) == 9
    assert sigma_degree_lower_bound(2, 3) == 15
    assert vandermonde_degree(8, 1) == 28
    assert vandermonde_degree(2, 1) == 1
    assert vandermonde_degree(9, 2) == 72
    assert total_degree_lower_bound(4, 8, (), 1) == 5
    assert total_degree_lower_bound(5, 9, (2,), 1) == 7
    assert total_degree_lower_bound(1, 4, (), 1) == 2


def test_index_bound_examples():
    assert index_upper_bound(4, 8) == 2
    assert index_upper_bound(3, 7) == 1
    assert index_upper_bound(2, 5) == 2
    with pytest.raises(ValueError):
        index_upper_bound(4, 5)


def test_maximal_examples():
    ex = maximal_example(4)
    assert ex.candidate.weights == (1,) * 8 and ex.candidate.degrees == (1, 2, 3) and ex.k == 8
    assert ex.reduced.degrees == (2, 3) and ex.shape.ambient() == "P^6"
    ex = maximal_example(5)
    assert ex.candidate.N == 8 and ex.candidate.degrees == (1, 2, 3) and ex.k == 9
    ex = maximal_example(1)
    assert ex.candidate.N == 3 and ex.candidate.degrees == (1, 2) and ex.k == 4


@pytest.mark.parametrize("n", range(1, 31))
def test_maximal_example_is_fano_and_attains_index(n):
    ex = maximal_example(n)
    assert classify(ex.candidate) is Classification.Fano
    if n >= 2:
        assert fano_index(ex.candidate) == index_upper_bound(n, c_fano(n))


# --------------------------------------------------------------- shapes
def test_shape_invariant():
    SymmetricShape(8, 1, ())
    with pytest.raises(ValueError):
        SymmetricShape(4, 1, (1, 1, 1))  # block of 3 is not more than half of 6
    assert SymmetricShape(9, 1, (2,)).ambient() == "P(1^(8),2)"
    assert SymmetricShape(9, 1, (2,)).unreduced_ambient() == "P(1^9,2)"


def test_filters_reject_linear_cone_and_sign():
    shape = SymmetricShape(9, 1, (2,))
    assert "linear-cone" in shape_filters(shape, (2, 3, 4), Kind.Fano)
    assert "sign" in shape_filters(SymmetricShape(8, 1, ()), (2, 3, 4), Kind.Fano)
    assert shape_filters(SymmetricShape(8, 1, ()), (2, 3), Kind.Fano) == []


# --------------------------------------------------------------- search
@pytest.mark.parametrize("n", range(4, 13))
@pytest.mark.parametrize("kind", [Kind.Fano, Kind.CalabiYau])
def test_search_matches_bound(n, kind):
    out = search_max_symmetric(n, kind)
    assert out.max_feasible_k == (c_fano(n) if kind is Kind.Fano else c_cy(n))
    for w in out.witnesses:
        assert shape_filters(w.shape, w.degrees, kind) == []
        assert w.k == out.max_feasible_k


@pytest.mark.parametrize("n", range(4, 9))
def test_fano_shapes_are_restricted(n):
    out = search_max_symmetric(n, Kind.Fano)
    for w in out.witnesses:
        assert w.shape.b == 1 and len(w.shape.extra_weights) <= 1
    assert out.ambient_shapes <= {f"P^{out.max_feasible_k - 2}"} | {
        s for s in out.ambient_shapes if s.startswith(f"P(1^({out.max_feasible_k - 1}),")
    }


def test_search_examples():
    out = search_max_symmetric(4, Kind.Fano)
    assert out.max_feasible_k == 8 and "P^6" in out.ambient_shapes
    out = search_max_symmetric(5, Kind.Fano)
    assert out.max_feasible_k == 9
    assert any(w.degrees == (2, 3) and w.shape.b == 1 and not w.shape.extra_weights for w in out.witnesses)
    assert search_max_symmetric(4, Kind.CalabiYau).max_feasible_k == 8


def test_search_records_layers_and_caps():
    out = search_max_symmetric(6, "Fano")
    assert out.caps["variables_max"] == 13
    assert any(r.status == "certified-empty" for r in out.layers)
    assert "upper bound" in out.certifies


def test_search_budget_preconditions():
    with pytest.raises(ValueError):
        search_max_symmetric(3, Kind.Fano)
    with pytest.raises(ValueError):
        search_max_symmetric(13, Kind.Fano)


def test_every_layer_above_the_answer_is_certified():
    for kind in (Kind.Fano, Kind.CalabiYau):
        for n in range(4, 13):
            out = search_max_symmetric(n, kind)
            above = [r for r in out.layers if r.k > out.max_feasible_k]
            assert above and all(r.status == "certified-empty" for r in above)


def test_budget_error_without_certificates(monkeypatch):
    # with the inequality certificates disabled, layers of two or more extra
    # weights can only be closed by enumeration, which the caps cut short
    monkeypatch.setattr(wci, "_layer_certificate", lambda *a: (False, "", None))
    with pytest.raises(BudgetError):
        search_max_symmetric(4, Kind.Fano, b_cap=1, w_cap=2)


def _brute_feasible(n: int, k: int, kind: Kind, b_max=2, w_max=6, e_max=2):
    """Enumerate shapes without any pruning besides the degree-sum ceiling."""
    vars_max = 2 * n + 1 if kind is Kind.Fano else 2 * n + 2
    found = []
    for e in range(0, min(e_max, vars_max - (k - 1)) + 1):
        m = k - 2 + e - n
        if m < 1:
            continue
        for b in range(1, b_max + 1):
            for extras in itertools.combinations_with_replacement(range(1, w_max + 1), e):
                try:
                    shape = SymmetricShape(k, b, extras)
                except ValueError:
                    continue
                limit = sum(shape.weights)
                for degs in itertools.combinations_with_replacement(range(1, limit + 1), m):
                    if sum(degs) > limit:
                        continue
                    if not shape_filters(shape, degs, kind):
                        found.append((shape, degs))
    return found


@pytest.mark.parametrize("n,kind", [(4, Kind.Fano), (5, Kind.Fano), (4, Kind.CalabiYau), (5, Kind.CalabiYau)])
def test_search_against_brute_force(n, kind):
    out = search_max_symmetric(n, kind)
    k0 = out.max_feasible_k
    assert not _brute_feasible(n, k0 + 1, kind)
    brute = {(s.b, s.extra_weights, d) for s, d in _brute_feasible(n, k0, kind)}
    got = {(w.shape.b, w.shape.extra_weights, w.degrees) for w in out.witnesses}
    assert brute == got
