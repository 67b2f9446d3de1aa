"""Spin double covers of alternating groups and Molien series.

2.A_k is realised inside the even Clifford algebra of R^k: the simple
reflections of S_k are the unit vectors r_i = (e_i - e_{i+1})/sqrt(2), and
the products r_i r_{i+1} lift the 3-cycles (i, i+1, i+2).  The spinor module
is cut down to a half-spin space of the hyperplane orthogonal to
e_1 + ... + e_k, whose dimension is the minimal faithful degree of 2.A_k.

Groups are closed numerically exactly: every element is stored as an integer
matrix with a positive denominator in lowest terms.  Entries from a
quadratic tower are flattened through the regular representation, so the
same integer kernels serve every field that occurs.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence

import numpy as np

from . import kernels
from .exact import (
    ExactMatrix,
    QuadScalar,
    Scalar,
    add,
    charpoly_berkowitz,
    coordinates,
    from_coordinates,
    identity_rows,
    inv,
    mul,
    rref,
    solve,
)
from .grouprep import Family, GroupSpec, min_faithful_degree


class ExplosionError(RuntimeError):
    """Closure exceeded its order budget."""


class MolienError(ArithmeticError):
    """A Molien coefficient came out non-integral (an arithmetic bug)."""


# Real 16x16 Pauli strings over {I, X, Z, J}, J = [[0, 1], [-1, 0]]: each has an
# even number of J factors (so it is symmetric and squares to +I) and any two
# anticommute.  Found by a lexicographic backtracking search; fixed here so
# that closures are reproducible.
REAL_LAYOUT = ("IIIX", "IIIZ", "IIJJ", "IJXJ", "XJZJ", "ZJZJ", "JIZJ", "JXXJ", "JZXJ")

_I = QuadScalar(0, 1, -1)
_PAULI = {
    "I": ((1, 0), (0, 1)),
    "X": ((0, 1), (1, 0)),
    "Z": ((1, 0), (0, -1)),
    "J": ((0, 1), (-1, 0)),
    "Y": ((0, -_I), (_I, 0)),
}


def _kron(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Scalar]]:
    return [[mul(x, y) for x in ra for y in rb] for ra in a for rb in b]


def pauli_string(word: str) -> ExactMatrix:
    return ExactMatrix(reduce(_kron, [_PAULI[c] for c in word]))


def gamma_matrices(k: int) -> list[ExactMatrix]:
    """k pairwise anticommuting matrices squaring to the identity.

    Rational 16x16 strings for k = 8, 9; Jordan-Wigner strings over Q(i)
    otherwise (the spin modules of 2.A_k for k <= 7 are not real).
    """
    if k in (8, 9):
        return [pauli_string(w) for w in REAL_LAYOUT[:k]]
    q = k // 2
    words = []
    for j in range(q):
        for c in "XY":
            words.append("Z" * j + c + "I" * (q - j - 1))
    if k % 2:
        words.append("Z" * q)
    return [pauli_string(w) for w in words[:k]]


def _half_spin_projector(k: int, gammas: list[ExactMatrix]) -> ExactMatrix:
    size = gammas[0].dim
    eye = ExactMatrix.identity(size)
    half = Fraction(1, 2)
    if k % 2 == 0:
        omega = reduce(lambda x, y: x @ y, gammas)
        sq = omega @ omega
        if sq == eye:
            op = omega
        elif sq == -eye:
            op = omega.scale(_I)
        else:  # pragma: no cover - excluded by the Clifford relations
            raise ArithmeticError("pseudoscalar does not square to +-1")
    else:
        total = reduce(lambda x, y: x + y, gammas)
        r = math.isqrt(k)
        root: Scalar = Fraction(r) if r * r == k else QuadScalar(0, 1, k)
        op = total.scale(inv(root))
    return (eye + op).scale(half)


def _restriction_basis(proj: ExactMatrix):
    """Independent columns B of proj and rows R with B[R] invertible."""
    _, cols = rref(proj.rows())
    basis = [[proj[i, j] for j in cols] for i in range(proj.dim)]
    _, rows = rref([list(c) for c in zip(*basis)])
    return basis, rows


def _restrict(g: ExactMatrix, basis, rows) -> ExactMatrix:
    gb = (g @ _pad(basis, g.dim)).rows()
    gb = [r[: len(rows)] for r in gb]
    sub = [basis[i] for i in rows]
    small = solve(sub, [gb[i] for i in rows])
    # the subspace is invariant, so g B = B small must hold on all rows
    for i in range(g.dim):
        lhs = gb[i]
        rhs = [reduce(add, (mul(basis[i][t], small[t][j]) for t in range(len(rows))), Fraction(0)) for j in range(len(rows))]
        if lhs != rhs:
            raise ArithmeticError("half-spin subspace is not invariant")
    return ExactMatrix(small)


def _pad(basis, n: int) -> ExactMatrix:
    w = len(basis[0])
    return ExactMatrix([list(r) + [0] * (n - w) for r in basis])


@lru_cache(maxsize=None)
def clifford_even_generators(k: int) -> tuple[ExactMatrix, ...]:
    """Lifts r_i r_{i+1} (i = 1..k-2) of the 3-cycles, on a half-spin space."""
    if not 4 <= k <= 9:
        raise ValueError("k must lie in [4, 9]")
    gammas = gamma_matrices(k)
    inv_sqrt2 = QuadScalar(0, Fraction(1, 2), 2)
    refl = [(gammas[i] - gammas[i + 1]).scale(inv_sqrt2) for i in range(k - 1)]
    full = [refl[i] @ refl[i + 1] for i in range(k - 2)]
    basis, rows = _restriction_basis(_half_spin_projector(k, gammas))
    gens = tuple(_restrict(g, basis, rows) for g in full)
    expected = min_faithful_degree(GroupSpec(Family.DoubleAlt, k))
    if gens[0].dim != expected:  # pragma: no cover
        raise ArithmeticError(f"half-spin dimension {gens[0].dim} != {expected}")
    return gens


def permutation_rep(perm: Sequence[int], mode: str = "natural") -> ExactMatrix:
    """Matrix of a permutation of {0..k-1} (given as images) on C^k or its sum-zero part.

    The standard form uses the basis f_i = e_i - e_{i+1}, i = 0..k-2.
    """
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError("not a permutation of 0..k-1")
    if mode == "natural":
        return ExactMatrix([[1 if perm[j] == i else 0 for j in range(k)] for i in range(k)])
    if mode != "standard":
        raise ValueError("mode must be 'natural' or 'standard'")
    cols = []
    for i in range(k - 1):
        a, b = perm[i], perm[i + 1]
        col = [0] * (k - 1)
        lo, hi, sign = (a, b, 1) if a < b else (b, a, -1)
        for j in range(lo, hi):
            col[j] = sign
        cols.append(col)
    return ExactMatrix([list(r) for r in zip(*cols)])


def symmetric_group_generators(k: int, mode: str) -> list[ExactMatrix]:
    """Images of a transposition and a k-cycle (generating S_k)."""
    if k < 2:
        return [ExactMatrix.identity(k if mode == "natural" else max(k - 1, 1))]
    swap = [1, 0] + list(range(2, k))
    cycle = list(range(1, k)) + [0]
    return [permutation_rep(swap, mode), permutation_rep(cycle, mode)]


# ---------------------------------------------------------------- packing
@dataclass
class _Packed:
    ds: tuple[int, ...]
    dim: int
    nums: np.ndarray
    dens: np.ndarray


def _tower(mats: Sequence[ExactMatrix]) -> tuple[int, ...]:
    ds: set[int] = set()
    for m in mats:
        ds |= set(m.radicands())
    return tuple(sorted(ds, key=lambda d: (abs(d), d)))


def _pack_one(m: ExactMatrix, ds: tuple[int, ...]) -> tuple[list[list[int]], int]:
    from .exact import regular_matrix

    w = 2 ** len(ds)
    big = [[Fraction(0)] * (m.dim * w) for _ in range(m.dim * w)]
    for i in range(m.dim):
        for j in range(m.dim):
            blk = regular_matrix(m[i, j], ds)
            for s in range(w):
                for t in range(w):
                    big[i * w + s][j * w + t] = blk[s][t]
    den = 1
    for r in big:
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [[int(x * den) for x in r] for r in big], den


def _pack(mats: Sequence[ExactMatrix], ds: tuple[int, ...]) -> _Packed:
    nums, dens = [], []
    for m in mats:
        n, d = _pack_one(m, ds)
        nums.append(n)
        dens.append(d)
    arr = kernels._shrink(np.array(nums, dtype=object))
    dn = kernels._shrink(np.array(dens, dtype=object))
    return _Packed(ds, mats[0].dim, arr, dn)


def _unpack(num, den, ds: tuple[int, ...], dim: int) -> ExactMatrix:
    w = 2 ** len(ds)
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            coords = [Fraction(int(num[i * w + s, j * w]), int(den)) for s in range(w)]
            row.append(from_coordinates(coords, ds))
        rows.append(row)
    return ExactMatrix(rows)


def _keys(nums, dens) -> list[bytes]:
    if nums.dtype == object:
        return [repr((int(d), n.tolist())).encode() for n, d in zip(nums, dens)]
    return [d.tobytes() + n.tobytes() for n, d in zip(nums, dens)]


# ---------------------------------------------------------------- groups
@dataclass
class FiniteMatrixGroup:
    dim: int
    generators: list[ExactMatrix]
    _packed: _Packed = field(repr=False)
    _elements: list[ExactMatrix] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self._packed.dens)

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> list[ExactMatrix]:
        """The closed element set, in breadth-first discovery order."""
        if self._elements is None:
            p = self._packed
            self._elements = [_unpack(n, d, p.ds, p.dim) for n, d in zip(p.nums, p.dens)]
        return self._elements

    @property
    def is_rational(self) -> bool:
        return not self._packed.ds

    def element(self, i: int) -> ExactMatrix:
        p = self._packed
        return _unpack(p.nums[i], p.dens[i], p.ds, p.dim)

    def to_complex_array(self) -> np.ndarray:
        """All elements as a (order, dim, dim) complex array."""
        p = self._packed
        if not p.ds:
            return p.nums.astype(float).astype(complex) / p.dens.astype(float)[:, None, None]
        return np.array([m.to_complex() for m in self.elements], dtype=complex)

    @property
    def radicands(self) -> tuple[int, ...]:
        """Square roots adjoined to Q by the matrix entries, innermost first."""
        return tuple(self._packed.ds)

    def contains(self, m: ExactMatrix) -> bool:
        p = self._packed
        q = _pack([m], p.ds)
        key = _keys(q.nums.astype(p.nums.dtype), q.dens.astype(p.dens.dtype))[0]
        return key in set(_keys(p.nums, p.dens))


def close_group(generators: Sequence[ExactMatrix], max_order: int = 10**6, backend: str | None = None) -> FiniteMatrixGroup:
    """Breadth-first closure of the generators under multiplication."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0].dim
    if any(g.dim != dim for g in gens):
        raise ValueError("generators must share a dimension")
    ds = _tower(gens)
    pg = _pack(gens, ds)
    ident = _pack([ExactMatrix.identity(dim)], ds)
    nums = [ident.nums]
    dens = [ident.dens]
    seen = dict.fromkeys(_keys(ident.nums, ident.dens))
    frontier_n, frontier_d = ident.nums, ident.dens
    while len(frontier_d):
        new_n, new_d = [], []
        for g in range(len(gens)):
            pn, pd = kernels.mul_canon(frontier_n, frontier_d, pg.nums[g], pg.dens[g : g + 1], backend=backend)
            for key, n, d in zip(_keys(pn, pd), pn, pd):
                if key not in seen:
                    seen[key] = None
                    new_n.append(n)
                    new_d.append(d)
            if len(seen) > max_order:
                raise ExplosionError(f"closure exceeded {max_order} elements")
        if not new_n:
            break
        frontier_n, frontier_d = np.stack(new_n), np.array(new_d)
        nums.append(frontier_n)
        dens.append(frontier_d)
    wide = any(x.dtype == object for x in nums + dens)
    allnums = np.concatenate([x.astype(object) if wide else x for x in nums])
    alldens = np.concatenate([x.astype(object) if wide else x for x in dens])
    return FiniteMatrixGroup(dim, gens, _Packed(ds, dim, allnums, alldens))


def spin_group(k: int, backend: str | None = None) -> FiniteMatrixGroup:
    return close_group(clifford_even_generators(k), backend=backend)


# ---------------------------------------------------------------- series
@dataclass(frozen=True)
class TruncatedSeries:
    cap: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.cap + 1:
            raise ValueError("need cap+1 coefficients")

    def __getitem__(self, d):
        return self.coeffs[d]

    def as_ints(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coeffs)


def series_reciprocal(poly: Sequence, cap: int) -> list:
    """Power series of 1/poly up to t^cap; poly[0] must be 1."""
    if poly[0] != 1:
        raise ValueError("constant term must be 1")
    q = [Fraction(1)]
    for d in range(1, cap + 1):
        s = Fraction(0)
        for i in range(1, min(d, len(poly) - 1) + 1):
            if poly[i] != 0:
                s = add(s, mul(poly[i], q[d - i]))
        q.append(mul(s, -1))
    return q


def _det_one_minus_t(charpoly: Sequence) -> list:
    # det(I - t g) has the characteristic polynomial's coefficients in reverse order
    return list(charpoly)


def _finish(total: list, order: int, cap: int) -> TruncatedSeries:
    out = []
    for d, c in enumerate(total):
        if isinstance(c, QuadScalar):
            raise MolienError(f"coefficient {d} is irrational: {c}")
        v = Fraction(c) / order
        if v.denominator != 1 or v < 0:
            raise MolienError(f"coefficient {d} is not a nonnegative integer: {v}")
        out.append(int(v))
    return TruncatedSeries(cap, tuple(out))


def _charpoly_method(G: FiniteMatrixGroup, cap: int, backend: str | None) -> TruncatedSeries:
    p = G._packed
    polys = kernels.charpoly_batch(p.nums, backend=backend)
    buckets = Counter()
    for c, d in zip(polys.tolist(), p.dens.tolist()):
        buckets[(d, tuple(c))] += 1
    reduced = Counter()
    for (d, c), cnt in buckets.items():
        reduced[tuple(Fraction(x, d**i) for i, x in enumerate(c))] += cnt
    total = [Fraction(0)] * (cap + 1)
    for poly, cnt in reduced.items():
        for i, v in enumerate(series_reciprocal(_det_one_minus_t(poly), cap)):
            total[i] += cnt * v
    return _finish(total, G.order, cap)


def _element_traces(nums, dens, ds: tuple[int, ...], dim: int):
    w = 2 ** len(ds)
    out = []
    diag_rows = [i * w + s for i in range(dim) for s in range(w)]
    diag_cols = [i * w for i in range(dim) for s in range(w)]
    sub = nums[:, diag_rows, diag_cols].reshape(len(nums), dim, w).sum(axis=1)
    for coords, d in zip(sub.tolist(), dens.tolist()):
        out.append(tuple(Fraction(int(c), int(d)) for c in coords))
    return out


def power_trace_keys(G: FiniteMatrixGroup, upto: int | None = None, backend: str | None = None):
    """For each element, the traces of g, g^2, ..., g^upto (exact coordinates)."""
    p = G._packed
    upto = upto or G.dim
    index = {key: i for i, key in enumerate(_keys(p.nums, p.dens))}
    cur_n, cur_d = p.nums, p.dens
    traces = [_element_traces(cur_n, cur_d, p.ds, p.dim)]
    for _ in range(upto - 1):
        cur_n, cur_d = kernels.mul_canon(cur_n, cur_d, p.nums, p.dens, backend=backend)
        for key in _keys(cur_n, cur_d):
            if key not in index:  # pragma: no cover - closure guarantees membership
                raise ArithmeticError("power left the group")
        traces.append(_element_traces(cur_n, cur_d, p.ds, p.dim))
    return list(zip(*traces))


def _power_trace_method(G: FiniteMatrixGroup, cap: int, backend: str | None) -> TruncatedSeries:
    p = G._packed
    keys = power_trace_keys(G, backend=backend)
    reps: dict = {}
    counts = Counter()
    for i, key in enumerate(keys):
        counts[key] += 1
        reps.setdefault(key, i)
    total: list = [Fraction(0)] * (cap + 1)
    for key, i in reps.items():
        g = _unpack(p.nums[i], p.dens[i], p.ds, p.dim)
        poly = charpoly_berkowitz(g.rows())
        series = series_reciprocal(_det_one_minus_t(poly), cap)
        for d, v in enumerate(series):
            total[d] = add(total[d], mul(counts[key], v))
    return _finish(total, G.order, cap)


def molien_series(G: FiniteMatrixGroup, cap: int = 12, method: str = "auto", backend: str | None = None) -> TruncatedSeries:
    """Hilbert series of C[V]^G through degree ``cap``, exactly.

    ``charpoly`` computes det(I - t g) for every element with the batch
    Berkowitz kernel; ``power-trace`` groups elements by the traces of
    g, ..., g^dim (which fix the characteristic polynomial) and expands one
    representative per group.  ``auto`` takes the former for rational groups.
    """
    if not 0 <= cap <= 64:
        raise ValueError("cap must lie in [0, 64]")
    if method == "auto":
        method = "charpoly" if G.is_rational else "power-trace"
    if method == "charpoly":
        if not G.is_rational:
            raise ValueError("the charpoly method needs rational matrices")
        return _charpoly_method(G, cap, backend)
    if method == "power-trace":
        return _power_trace_method(G, cap, backend)
    if method == "naive":
        return molien_naive(G.elements, cap)
    raise ValueError(f"unknown method {method!r}")


def molien_naive(elements: Sequence[ExactMatrix], cap: int) -> TruncatedSeries:
    """Direct per-element sum with generic exact arithmetic (small groups only)."""
    total: list = [Fraction(0)] * (cap + 1)
    for g in elements:
        for d, v in enumerate(series_reciprocal(charpoly_berkowitz(g.rows()), cap)):
            total[d] = add(total[d], v)
    return _finish(total, len(elements), cap)


class GeneratorDegrees(list):
    """List of (degree, count) pairs with a ``reliable_up_to`` attribute."""

    reliable_up_to: int
    relation_at: int | None


def generator_degrees(series: TruncatedSeries, cap: int | None = None) -> GeneratorDegrees:
    """Greedy generator degrees assuming no relations below the marker."""
    cap = series.cap if cap is None else min(cap, series.cap)
    found: list[tuple[int, int]] = []
    free = [1] + [0] * cap
    out = GeneratorDegrees()
    out.reliable_up_to = cap
    out.relation_at = None
    if series[0] != 1:
        raise ValueError("series must start with 1")
    for d in range(1, cap + 1):
        residual = int(series[d]) - free[d]
        if residual < 0:
            out.reliable_up_to = d - 1
            out.relation_at = d
            break
        if residual > 0:
            found.append((d, residual))
            for _ in range(residual):
                for e in range(d, cap + 1):
                    free[e] += free[e - d]
    out.extend(found)
    return out


def free_series(degrees: Sequence[int], cap: int) -> list[int]:
    """Coefficients of prod 1/(1 - t^d) through t^cap."""
    c = [1] + [0] * cap
    for d in degrees:
        for e in range(d, cap + 1):
            c[e] += c[e - d]
    return c
