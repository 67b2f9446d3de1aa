import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from fanosym.toric import (
    FanData,
    FanError,
    class_group,
    corpus,
    det,
    diagonal,
    divisor_classes,
    format_rays,
    hirzebruch,
    lemma42_check,
    load_rays,
    matmul,
    parse_rays,
    product_of_projective_spaces,
    projective_space,
    ray_partition,
    smith_normal_form,
    theorem41_bound,
    weighted_p112,
)

int_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


# --------------------------------------------------------------- Smith normal form
@settings(max_examples=150, deadline=None)
@given(int_matrices)
def test_snf_certificate(a):
    U, D, V = smith_normal_form(a)
    assert matmul(matmul(U, a), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = diagonal(D)
    assert all(x >= 0 for x in diag)
    for i in range(len(D)):
        for j in range(len(D[0])):
            if i != j:
                assert D[i][j] == 0
    nz = [x for x in diag if x]
    assert diag[: len(nz)] == nz
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@settings(max_examples=80, deadline=None)
@given(int_matrices)
def test_snf_matches_sympy(a):
    ref = sympy_snf(sp.Matrix(a), domain=sp.ZZ)
    k = min(ref.shape)
    ref_diag = sorted(abs(int(ref[i, i])) for i in range(k))
    assert sorted(diagonal(smith_normal_form(a)[1])) == ref_diag


def test_det_examples():
    assert det([[2, 0], [0, 3]]) == 6
    assert det([[1, 2], [2, 4]]) == 0
    assert det([[0, 1], [1, 0]]) == -1


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(a):
    assert det(a) == sp.Matrix(a).det()


# --------------------------------------------------------------- class groups
def test_class_group_examples():
    assert class_group(projective_space(2)).describe() == "Z"
    assert class_group(product_of_projective_spaces([1, 1])).describe() == "Z^2"
    assert class_group(weighted_p112()).describe() == "Z"
    assert class_group(hirzebruch(1)).describe() == "Z^2"


def test_torsion_example():
    # P^2 / (Z/3) acting diagonally: rays (1,0), (0,1), (-1,-1) in the lattice with 3 | x - y
    fan = FanData(2, ((2, -1), (-1, 2), (-1, -1)), (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})))
    cg = class_group(fan)
    assert cg.free_rank == 1 and cg.torsion == (3,)
    assert cg.describe() == "Z + Z/3"


def test_divisor_classes_projective_space():
    cls = divisor_classes(projective_space(3))
    assert len(set(cls)) == 1


@pytest.mark.parametrize("name", sorted(corpus()))
def test_corpus_free_rank_and_blocks(name):
    fan = corpus()[name]
    cg = class_group(fan)
    assert cg.free_rank == fan.d - fan.n
    part = ray_partition(fan)
    assert sorted(i for b in part.blocks for i in b) == list(range(fan.d))
    assert len(part.blocks) >= fan.d - fan.n
    assert sum(s - 1 for s in part.sizes) <= fan.n


def test_ray_partition_examples():
    assert ray_partition(projective_space(4)).sizes == [5]
    assert ray_partition(product_of_projective_spaces([2, 2])).sizes == [3, 3]
    assert ray_partition(weighted_p112()).sizes == [2, 1]
    assert ray_partition(hirzebruch(1)).sizes == [2, 1, 1]
    assert ray_partition(hirzebruch(0)).sizes == [2, 2]


# --------------------------------------------------------------- block lemma
def test_lemma_examples():
    r = lemma42_check(projective_space(2))
    assert r.sum_ok and r.equality and r.product_decomposition == [3]
    r = lemma42_check(product_of_projective_spaces([1, 1]))
    assert r.product_decomposition == [2, 2]
    r = lemma42_check(weighted_p112())
    assert r.sum_ok and not r.equality and r.product_decomposition is None
    r = lemma42_check(hirzebruch(1))
    assert r.sum_ok and not r.equality
    r = lemma42_check(projective_space(4))
    assert r.product_decomposition == [5]
    r = lemma42_check(product_of_projective_spaces([2, 2]))
    assert r.product_decomposition == [3, 3] and not r.torsion_present


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 5) for b in range(1, 5)])
def test_products_round_trip(a, b):
    r = lemma42_check(product_of_projective_spaces([a, b]))
    assert r.equality and sorted(r.product_decomposition) == sorted([a + 1, b + 1])


@pytest.mark.parametrize("name", sorted(corpus()))
def test_equality_iff_product(name):
    fan = corpus()[name]
    r = lemma42_check(fan)
    assert r.sum_ok
    if r.equality:
        assert r.product_decomposition is not None
    is_product = name.startswith("P") and "(" not in name or name == "F0"
    assert r.equality == is_product


def test_theorem_bound():
    assert [theorem41_bound(n) for n in range(1, 6)] == [4, 5, 6, 6, 7]
    with pytest.raises(ValueError):
        theorem41_bound(0)


# --------------------------------------------------------------- validation
def test_fan_validation():
    with pytest.raises(FanError):
        FanData(2, ((2, 0), (0, 1), (-1, -1)), (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})))
    with pytest.raises(FanError):
        FanData(2, ((1, 0), (0, 1), (-1, -1)), (frozenset({0, 1}), frozenset({1, 2})))
    with pytest.raises(FanError):
        FanData(2, ((1, 0), (2, 1), (1, 1)), (frozenset({0, 1}),))
    with pytest.raises(FanError):
        FanData(2, ((1, 0, 0),), ())


def test_projective_line_by_hand():
    fan = FanData(1, ((1,), (-1,)), (frozenset({0}), frozenset({1})))
    assert set(fan.max_cones) == set(projective_space(1).max_cones)
    assert class_group(fan).describe() == "Z"


# --------------------------------------------------------------- ray files
@pytest.mark.parametrize("name", sorted(corpus()))
def test_ray_file_round_trip(name, tmp_path):
    fan = corpus()[name]
    path = tmp_path / "fan.rays"
    path.write_text(format_rays(fan))
    back = load_rays(path)
    assert back == fan


def test_parse_errors():
    with pytest.raises(FanError):
        parse_rays("")
    with pytest.raises(FanError):
        parse_rays("2 3\n1 0\n0 1\n")
    with pytest.raises(FanError):
        parse_rays("2 3\n1 0\n0 1\n-1 -1\n1 4\n")
