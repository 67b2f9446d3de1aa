"""Exact scalars and small dense matrices.

Scalars are either :class:`fractions.Fraction` or :class:`QuadScalar`, an
element ``a + b*sqrt(d)`` of a quadratic extension whose coefficients may
themselves be quadratic scalars.  Nesting gives multiquadratic fields such as
Q(i, sqrt 5) without any global field registry.  Radicands are ordered by
``(|d|, d)``: a scalar with radicand ``d`` only ever holds coefficients whose
radicands sort strictly below ``d``.  As long as callers never mix radicands
whose product is a square (e.g. 2, 3 and 6), representations are canonical.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[Fraction, "QuadScalar"]


def _key(d: int) -> tuple[int, int]:
    return (abs(d), d)


def _squarefree(d: int) -> bool:
    if d in (0, 1):
        return False
    m = abs(d)
    f = 2
    while f * f <= m:
        if m % (f * f) == 0:
            return False
        f += 1
    return True


def as_scalar(x) -> Scalar:
    if isinstance(x, (Fraction, QuadScalar)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def _top(x) -> int | None:
    return x.d if isinstance(x, QuadScalar) else None


def _split(x, d: int):
    """Coefficients of x over the field with top radicand d."""
    if isinstance(x, QuadScalar) and x.d == d:
        return x.a, x.b
    return x, Fraction(0)


class QuadScalar:
    """``a + b*sqrt(d)`` with ``b != 0``; use :func:`quad` to build one."""

    __slots__ = ("a", "b", "d", "_hash")

    def __init__(self, a, b, d: int = 2):
        a, b = as_scalar(a), as_scalar(b)
        if not _squarefree(d):
            raise ValueError(f"radicand must be squarefree and not 0/1: {d}")
        for c in (a, b):
            t = _top(c)
            if t is not None and _key(t) >= _key(d):
                raise ValueError("coefficient radicand must sort below the outer radicand")
        if b == 0:
            raise ValueError("b must be nonzero; use quad() for normalisation")
        self.a, self.b, self.d = a, b, d
        self._hash = None

    # construction ------------------------------------------------------
    @staticmethod
    def sqrt(d: int) -> "QuadScalar":
        return QuadScalar(0, 1, d)

    # arithmetic --------------------------------------------------------
    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, neg(as_scalar(other)))

    def __rsub__(self, other):
        return add(as_scalar(other), neg(self))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return mul(self, inv(as_scalar(other)))

    def __rtruediv__(self, other):
        return mul(as_scalar(other), inv(self))

    def __pow__(self, e: int):
        return power(self, e)

    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.a, self.b, self.d))
        return self._hash

    def conj(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def __complex__(self):
        return to_complex(self)

    def __repr__(self):
        return f"QuadScalar({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"


def quad(a, b, d: int) -> Scalar:
    """Normalising constructor: returns ``a`` itself when ``b == 0``."""
    a, b = as_scalar(a), as_scalar(b)
    if b == 0:
        return a
    return QuadScalar(a, b, d)


def neg(x: Scalar) -> Scalar:
    if isinstance(x, QuadScalar):
        return QuadScalar(neg(x.a), neg(x.b), x.d)
    return -x


def add(x, y) -> Scalar:
    x, y = as_scalar(x), as_scalar(y)
    tx, ty = _top(x), _top(y)
    if tx is None and ty is None:
        return x + y
    d = tx if ty is None or (tx is not None and _key(tx) >= _key(ty)) else ty
    xa, xb = _split(x, d)
    ya, yb = _split(y, d)
    return quad(add(xa, ya), add(xb, yb), d)


def mul(x, y) -> Scalar:
    x, y = as_scalar(x), as_scalar(y)
    tx, ty = _top(x), _top(y)
    if tx is None and ty is None:
        return x * y
    if tx == ty:
        d = tx
        a = add(mul(x.a, y.a), mul(mul(x.b, y.b), d))
        b = add(mul(x.a, y.b), mul(x.b, y.a))
        return quad(a, b, d)
    if ty is None or (tx is not None and _key(tx) > _key(ty)):
        return quad(mul(x.a, y), mul(x.b, y), tx)
    return quad(mul(x, y.a), mul(x, y.b), ty)


def inv(x: Scalar) -> Scalar:
    x = as_scalar(x)
    if isinstance(x, QuadScalar):
        norm = add(mul(x.a, x.a), neg(mul(mul(x.b, x.b), x.d)))
        ninv = inv(norm)
        return quad(mul(x.a, ninv), neg(mul(x.b, ninv)), x.d)
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


def power(x: Scalar, e: int) -> Scalar:
    if e < 0:
        return power(inv(x), -e)
    result: Scalar = Fraction(1)
    base = x
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def is_rational(x: Scalar) -> bool:
    return not isinstance(x, QuadScalar)


def to_complex(x: Scalar) -> complex:
    if isinstance(x, QuadScalar):
        return to_complex(x.a) + to_complex(x.b) * cmath.sqrt(x.d)
    return complex(float(x))


def radicands(x: Scalar) -> set[int]:
    if isinstance(x, QuadScalar):
        return {x.d} | radicands(x.a) | radicands(x.b)
    return set()


def coordinates(x: Scalar, ds: Sequence[int]) -> list[Fraction]:
    """Rational coordinates of x in the product basis of the tower ``ds``.

    ``ds`` lists radicands in increasing ``(|d|, d)`` order; the basis is the
    set of products of square roots, ordered so that the top radicand
    splits the vector into an (a-half, b-half).
    """
    if not ds:
        if isinstance(x, QuadScalar):
            raise ValueError("scalar lies outside the given tower")
        return [x]
    a, b = _split(x, ds[-1])
    return coordinates(a, ds[:-1]) + coordinates(b, ds[:-1])


def from_coordinates(coords: Sequence, ds: Sequence[int]) -> Scalar:
    if not ds:
        return as_scalar(coords[0])
    h = len(coords) // 2
    return quad(from_coordinates(coords[:h], ds[:-1]), from_coordinates(coords[h:], ds[:-1]), ds[-1])


def regular_matrix(x: Scalar, ds: Sequence[int]) -> list[list[Fraction]]:
    """Matrix of multiplication by x on the coordinate vectors of the tower."""
    if not ds:
        if isinstance(x, QuadScalar):
            raise ValueError("scalar lies outside the given tower")
        return [[x]]
    d = ds[-1]
    a, b = _split(x, d)
    ra, rb = regular_matrix(a, ds[:-1]), regular_matrix(b, ds[:-1])
    top = [ra[i] + [d * v for v in rb[i]] for i in range(len(ra))]
    bottom = [rb[i] + ra[i] for i in range(len(ra))]
    return top + bottom


class ExactMatrix:
    """Square matrix with exact scalar entries, hashable by value."""

    __slots__ = ("dim", "entries", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        entries = tuple(tuple(as_scalar(v) for v in row) for row in rows)
        n = len(entries)
        if n == 0 or any(len(r) != n for r in entries):
            raise ValueError("ExactMatrix must be square and nonempty")
        self.dim = n
        self.entries = entries
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, c) -> "ExactMatrix":
        c = as_scalar(c)
        return cls([[c if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self):
        return f"ExactMatrix({[list(r) for r in self.entries]!r})"

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        n = self.dim
        cols = list(zip(*other.entries))
        rows = []
        for r in self.entries:
            row = []
            for c in cols:
                acc: Scalar = Fraction(0)
                for x, y in zip(r, c):
                    if x != 0 and y != 0:
                        acc = add(acc, mul(x, y))
                row.append(acc)
            rows.append(row)
        return ExactMatrix(rows)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[mul(c, x) for x in r] for r in self.entries])

    def trace(self) -> Scalar:
        acc: Scalar = Fraction(0)
        for i in range(self.dim):
            acc = add(acc, self.entries[i][i])
        return acc

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.entries))

    def radicands(self) -> list[int]:
        ds: set[int] = set()
        for r in self.entries:
            for x in r:
                ds |= radicands(x)
        return sorted(ds, key=_key)

    def is_rational(self) -> bool:
        return all(is_rational(x) for r in self.entries for x in r)

    def inverse(self) -> "ExactMatrix":
        return ExactMatrix(solve(self.rows(), identity_rows(self.dim)))

    def rows(self) -> list[list[Scalar]]:
        return [list(r) for r in self.entries]

    def to_complex(self):
        return [[to_complex(x) for x in r] for r in self.entries]


def identity_rows(n: int) -> list[list[Scalar]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rref(rows: list[list[Scalar]]) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form over the exact scalars; returns (R, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pinv = inv(m[r][c])
        m[r] = [mul(v, pinv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [add(v, neg(mul(f, w))) for v, w in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: list[list[Scalar]]) -> int:
    return len(rref(rows)[1])


def solve(a: list[list[Scalar]], b: list[list[Scalar]]) -> list[list[Scalar]]:
    """Solve a @ x = b for square invertible a."""
    n = len(a)
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def charpoly_berkowitz(rows: Sequence[Sequence]) -> list:
    """Coefficients c_0..c_n of det(x*I - A) = sum c_i x^(n-i), division free.

    Works over any commutative ring whose elements support +, - and * (ints,
    Fractions, QuadScalars).
    """
    n = len(rows)
    a = [[as_scalar(v) if not isinstance(v, int) else v for v in r] for r in rows]
    one = 1
    zero = 0
    # Berkowitz: build Toeplitz products from the bottom-right corner outwards
    poly = [one, neg(a[n - 1][n - 1]) if n else zero]
    if n == 0:
        return [one]
    for r in range(n - 2, -1, -1):
        size = n - r - 1
        R = [a[r][j] for j in range(r + 1, n)]
        C = [a[i][r] for i in range(r + 1, n)]
        sub = [row[r + 1:] for row in a[r + 1:]]
        # column of the Toeplitz matrix: 1, -a_rr, -R C, -R S C, ...
        col = [one, neg(a[r][r])]
        v = C
        for _ in range(size):
            s = zero
            for x, y in zip(R, v):
                s = s + x * y if not (x == 0 or y == 0) else s
            col.append(neg(s))
            v = [sum_row(srow, v) for srow in sub]
        # multiply Toeplitz(col) (size+2 x size+1) by poly
        new = []
        for i in range(size + 2):
            s = zero
            for j in range(min(i, size) + 1):
                s = s + col[i - j] * poly[j]
            new.append(s)
        poly = new
    return poly


def sum_row(row, v):
    s = 0
    for x, y in zip(row, v):
        if x != 0 and y != 0:
            s = s + x * y
    return s


def isqrt_ceil(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1
