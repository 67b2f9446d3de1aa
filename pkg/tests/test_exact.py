from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from fanosym import exact
from fanosym.exact import ExactMatrix, QuadScalar, quad

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def tower_elems(draw, ds=(-1, 5)):
    """Elements of Q(sqrt d1)(sqrt d2)."""
    coords = [draw(small) for _ in range(2 ** len(ds))]
    return exact.from_coordinates(coords, ds)


def test_quad_demotes_to_fraction():
    assert quad(3, 0, 2) == Fraction(3)
    assert isinstance(quad(3, 0, 2), Fraction)


def test_sqrt_squares():
    r = QuadScalar.sqrt(2)
    assert r * r == 2
    i = QuadScalar.sqrt(-1)
    assert i * i == -1


def test_bad_radicand():
    with pytest.raises(ValueError):
        QuadScalar(1, 1, 4)
    with pytest.raises(ValueError):
        QuadScalar(1, 1, 1)


def test_tower_order_enforced():
    inner = QuadScalar(0, 1, 5)
    with pytest.raises(ValueError):
        QuadScalar(inner, 1, 2)  # sqrt5 cannot sit inside Q(sqrt2)


@settings(max_examples=60, deadline=None)
@given(tower_elems(), tower_elems(), tower_elems())
def test_field_axioms(x, y, z):
    assert exact.add(x, y) == exact.add(y, x)
    assert exact.mul(x, y) == exact.mul(y, x)
    assert exact.mul(x, exact.add(y, z)) == exact.add(exact.mul(x, y), exact.mul(x, z))
    assert exact.mul(exact.mul(x, y), z) == exact.mul(x, exact.mul(y, z))
    if x != 0:
        assert exact.mul(x, exact.inv(x)) == 1


@settings(max_examples=40, deadline=None)
@given(tower_elems(), tower_elems())
def test_complex_embedding_is_a_homomorphism(x, y):
    assert exact.to_complex(exact.mul(x, y)) == pytest.approx(exact.to_complex(x) * exact.to_complex(y), abs=1e-9)
    assert exact.to_complex(exact.add(x, y)) == pytest.approx(exact.to_complex(x) + exact.to_complex(y), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(tower_elems(), tower_elems())
def test_regular_matrix_is_multiplicative(x, y):
    ds = (-1, 5)
    rx, ry, rxy = (exact.regular_matrix(v, ds) for v in (x, y, exact.mul(x, y)))
    prod = [[sum(rx[i][t] * ry[t][j] for t in range(4)) for j in range(4)] for i in range(4)]
    assert prod == rxy


@settings(max_examples=30, deadline=None)
@given(tower_elems())
def test_coordinates_roundtrip(x):
    ds = (-1, 5)
    assert exact.from_coordinates(exact.coordinates(x, ds), ds) == x


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=4, max_size=4))
def test_charpoly_matches_sympy(rows):
    x = sp.Symbol("x")
    ref = sp.Matrix(rows).charpoly(x).all_coeffs()
    assert exact.charpoly_berkowitz(rows) == [int(c) for c in ref]


def test_charpoly_over_quadratic_field():
    r2 = QuadScalar.sqrt(2)
    m = [[r2, 1], [0, r2]]
    # (x - sqrt2)^2 = x^2 - 2 sqrt2 x + 2
    c = exact.charpoly_berkowitz(m)
    assert c[0] == 1 and c[1] == exact.mul(-2, r2) and c[2] == 2


def test_matrix_inverse_and_rank():
    m = ExactMatrix([[2, 1], [1, 1]])
    assert m @ m.inverse() == ExactMatrix.identity(2)
    assert exact.rank([[1, 2], [2, 4]]) == 1
    assert exact.rank([[QuadScalar.sqrt(2), 2], [1, QuadScalar.sqrt(2)]]) == 1


def test_solve_singular_raises():
    with pytest.raises(ZeroDivisionError):
        exact.solve([[1, 1], [1, 1]], [[1], [2]])
