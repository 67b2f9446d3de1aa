"""Fermat complete intersections: power-sum equations and their singular points.

The complete intersection of ``p_d = sum_i x_i^d`` for d in ``degrees`` is
singular at a point of the punctured affine cone exactly when the point
satisfies every equation and the Jacobian, whose columns are
``(d_j x_i^(d_j - 1))_j``, has rank below m.  That rank only depends on the
*set* of distinct coordinate values, so the search runs over value patterns:
r distinct nonzero values with multiplicities, plus a block of zeros.
"""
from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
import sympy as sp

from . import exact
from .exact import QuadScalar
from .wci import BudgetError

Value = Union[Fraction, QuadScalar, complex]

RESIDUAL_TOL = 1e-9
RANK_TOL = 1e-8
RANK_ZERO = 1e-12


class IndeterminateRank(ArithmeticError):
    """A numeric rank decision fell inside the tolerance band."""


@dataclass(frozen=True)
class FermatCI:
    N: int
    degrees: tuple[int, ...]

    def __post_init__(self):
        d = tuple(sorted(self.degrees))
        object.__setattr__(self, "degrees", d)
        if not d or any(x < 1 for x in d):
            raise ValueError("degrees must be positive")
        if not 1 <= len(d) <= self.N:
            raise ValueError("need 1 <= m <= N")

    @property
    def m(self) -> int:
        return len(self.degrees)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(x - 1 for x in self.degrees)

    def describe(self) -> str:
        return f"({','.join(map(str, self.degrees))}) in P^{self.N}"


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction, QuadScalar))


@dataclass(frozen=True)
class ValuePattern:
    values: tuple
    multiplicities: tuple[int, ...]
    zero_multiplicity: int = 0

    def __post_init__(self):
        vals = tuple(Fraction(v) if isinstance(v, int) else v for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if len(vals) != len(self.multiplicities) or not vals:
            raise ValueError("need one multiplicity per value and at least one value")
        if any(c < 1 for c in self.multiplicities) or self.zero_multiplicity < 0:
            raise ValueError("multiplicities must be positive")
        if any(_is_zero(v) for v in vals):
            raise ValueError("values must be nonzero; zeros go in zero_multiplicity")
        if self.exact:
            if len(set(vals)) != len(vals):
                raise ValueError("values must be distinct")

    @property
    def exact(self) -> bool:
        return all(_is_exact(v) for v in self.values)

    @property
    def size(self) -> int:
        return sum(self.multiplicities) + self.zero_multiplicity

    def point(self) -> list:
        out = []
        for v, c in zip(self.values, self.multiplicities):
            out += [v] * c
        return out + [Fraction(0)] * self.zero_multiplicity

    def as_complex(self) -> list[complex]:
        return [exact.to_complex(v) if _is_exact(v) else complex(v) for v in self.values]


def _is_zero(v) -> bool:
    if isinstance(v, complex):
        return v == 0
    return not isinstance(v, QuadScalar) and v == 0


def lemma_smooth_applies(ci: FermatCI) -> bool:
    return ci.degrees == tuple(range(1, ci.m + 1)) and ci.m <= ci.N - 1


# ---------------------------------------------------------------- ranks
def gv_matrix(exponents: Sequence[int], pattern: ValuePattern) -> list[list]:
    """Rows indexed by exponent, one column per distinct value (plus the zero column)."""
    cols = []
    for v in pattern.values:
        cols.append([exact.power(v, e) if _is_exact(v) else v**e for e in exponents])
    if pattern.zero_multiplicity > 0:
        cols.append([Fraction(1 if e == 0 else 0) for e in exponents])
    return [list(r) for r in zip(*cols)]


def gv_rank(exponents: Sequence[int], pattern: ValuePattern, tol: float = RANK_TOL, zero_tol: float = RANK_ZERO) -> int:
    """Rank of the generalized Vandermonde matrix of a value pattern.

    Exact patterns use Gaussian elimination over their number field.  Complex
    patterns use singular values relative to the largest: below ``zero_tol``
    counts as zero, above ``tol`` as nonzero, and anything in between raises
    :class:`IndeterminateRank`.
    """
    ex = list(exponents)
    if any(e < 0 for e in ex) or ex != sorted(set(ex)):
        raise ValueError("exponents must be distinct, nonnegative and ascending")
    rows = gv_matrix(ex, pattern)
    if pattern.exact:
        return exact.rank(rows)
    a = np.array([[complex(exact.to_complex(x)) if _is_exact(x) else complex(x) for x in r] for r in rows])
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    rel = s / s[0]
    if np.any((rel > zero_tol) & (rel <= tol)):
        raise IndeterminateRank(f"singular values {rel.tolist()} fall inside the tolerance band")
    return int(np.sum(rel > tol))


# ---------------------------------------------------------------- verdicts
class Status(enum.Enum):
    SmoothByLemma = "SmoothByLemma"
    SmoothNoWitness = "SmoothNoWitness"
    SingularWitness = "SingularWitness"


@dataclass(frozen=True)
class Certification:
    kind: str  # "Exact" or "NumericResidual"
    tolerance: float | None = None

    def __str__(self):
        return self.kind if self.tolerance is None else f"{self.kind}({self.tolerance:g})"


EXACT = Certification("Exact")


@dataclass
class SmoothnessVerdict:
    status: Status
    witness: ValuePattern | None
    certification: Certification
    ci: FermatCI | None = None
    strata_checked: int = 0
    strata_numeric: int = 0
    residuals: list[float] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def smooth(self) -> bool:
        return self.status is not Status.SingularWitness


@dataclass(frozen=True)
class Stratum:
    multiplicities: tuple[int, ...]
    zero: int

    @property
    def r(self) -> int:
        return len(self.multiplicities)


def _partitions_into(total: int, parts: int, largest: int | None = None):
    """Partitions of total into exactly `parts` parts, descending lexicographic."""
    largest = total if largest is None else largest
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total - parts + 1, largest), 0, -1):
        if first * parts < total:
            break
        for rest in _partitions_into(total - first, parts - 1, first):
            yield (first,) + rest


def strata(ci: FermatCI) -> list[Stratum]:
    """Deterministic stratum order: r ascending, zero block ascending, partitions descending."""
    e = ci.exponents
    r_max = min(max(e) - min(e), ci.N + 1)
    out = []
    for r in range(1, r_max + 1):
        for z in range(0, ci.N + 1 - r + 1):
            for parts in _partitions_into(ci.N + 1 - z, r):
                out.append(Stratum(parts, z))
    return out


_U = sp.Symbol("u")


@lru_cache(maxsize=4096)
def _system(degrees: tuple[int, ...], st: Stratum):
    ts = [sp.Integer(1)] + list(sp.symbols(f"t2:{st.r + 1}"))
    e = [d - 1 for d in degrees]
    eqs = [sp.expand(sum(c * t**d for c, t in zip(st.multiplicities, ts))) for d in degrees]
    cols = [[t**x for x in e] for t in ts]
    if st.zero > 0:
        cols.append([sp.Integer(1 if x == 0 else 0) for x in e])
    m = len(degrees)
    if len(cols) >= m:
        M = sp.Matrix(cols).T
        for c in itertools.combinations(range(len(cols)), m):
            minor = sp.expand(M[:, list(c)].det())
            if minor != 0:
                eqs.append(minor)
    guard = sp.Integer(1)
    for t in ts[1:]:
        guard *= t * (t - 1)
    for a, b in itertools.combinations(ts[1:], 2):
        guard *= a - b
    return eqs, ts, guard


def _residuals(degrees, pattern: ValuePattern) -> list:
    out = []
    for d in degrees:
        if pattern.exact:
            s: object = Fraction(0)
            for v, c in zip(pattern.values, pattern.multiplicities):
                s = exact.add(s, exact.mul(Fraction(c), exact.power(v, d)))
        else:
            s = sum(c * v**d for v, c in zip(pattern.as_complex(), pattern.multiplicities))
        out.append(s)
    return out


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * D with D squarefree (sign kept in D)."""
    sign = -1 if n < 0 else 1
    s, D = 1, 1
    for p, k in sp.factorint(abs(n)).items():
        s *= p ** (k // 2)
        D *= p ** (k % 2)
    return s, sign * D


def _to_exact(v) -> Fraction | QuadScalar | None:
    """Exact scalar for an algebraic number of degree <= 2, else None."""
    x = sp.Symbol("x")
    try:
        mp = sp.Poly(sp.minimal_polynomial(v, x), x)
    except (NotImplementedError, ValueError):
        return None
    if mp.degree() == 1:
        c1, c0 = (sp.Rational(c) for c in mp.all_coeffs())
        return Fraction(str(-c0 / c1))
    if mp.degree() != 2:
        return None
    a2, a1, a0 = (sp.Rational(c) for c in mp.all_coeffs())
    p, q = Fraction(str(a1 / a2)), Fraction(str(a0 / a2))
    disc = p * p - 4 * q
    s, D = _squarefree_split(disc.numerator * disc.denominator)
    coef = Fraction(s, 2 * disc.denominator)
    target = complex(sp.N(v, 30))
    cands = [exact.quad(-p / 2, sg * coef, D) for sg in (1, -1)]
    return min(cands, key=lambda c: abs(exact.to_complex(c) - target))


def _exact_witness(sol_values: list, st: Stratum, degrees) -> ValuePattern | None:
    vals = []
    for v in sol_values:
        ev = _to_exact(v)
        if ev is None:
            return None
        vals.append(ev)
    try:
        pat = ValuePattern(tuple(vals), st.multiplicities, st.zero)
    except ValueError:
        return None
    if any(not (isinstance(r, Fraction) and r == 0) for r in _residuals(degrees, pat)):
        return None
    return pat


def _numeric_pattern(vals: list[complex], st: Stratum) -> ValuePattern | None:
    vals = [complex(v) for v in vals]
    if any(abs(v) < 1e-6 for v in vals):
        return None
    if any(abs(a - b) < 1e-6 for a, b in itertools.combinations(vals, 2)):
        return None
    return ValuePattern(tuple(vals), st.multiplicities, st.zero)


def _solve_exact(ci: FermatCI, st: Stratum, tol: float):
    """Returns (has_solution, witness or None)."""
    eqs, ts, guard = _system(ci.degrees, st)
    unknowns = ts[1:]
    if not unknowns:
        ok = all(sp.simplify(q) == 0 for q in eqs)
        return ok, (ValuePattern((Fraction(1),), st.multiplicities, st.zero) if ok else None)
    G = sp.groebner(eqs + [sp.expand(_U * guard - 1)], _U, *unknowns, order="lex")
    if list(G.exprs) == [1]:
        return False, None
    # the variety is nonempty; look for a concrete point
    try:
        sols = sp.solve([g for g in G.exprs if not g.has(_U)], unknowns, dict=True)
    except NotImplementedError:
        sols = []
    trial = [sp.Integer(x) for x in (2, 3, -2, 5, -3, 7)] + [sp.Rational(1, 2), sp.Rational(-1, 3)]
    for sol in sols:
        free = [t for t in unknowns if t not in sol or sol[t].free_symbols]
        choices = itertools.product(trial, repeat=len(free)) if free else [()]
        for pick in choices:
            sub = dict(zip(free, pick))
            vals = [sp.Integer(1)] + [sp.simplify(sol.get(t, t).subs(sub)) if t in sol else sub[t] for t in unknowns]
            if any(v.free_symbols for v in vals):
                continue
            if sp.simplify(guard.subs(dict(zip(unknowns, vals[1:])))) == 0:
                continue
            if any(sp.simplify(q.subs(dict(zip(unknowns, vals[1:])))) != 0 for q in eqs):
                continue
            w = _exact_witness(vals, st, ci.degrees)
            if w is not None:
                return True, w
            nw = _numeric_pattern([complex(sp.N(v, 30)) for v in vals], st)
            if nw is not None:
                return True, nw
    return True, _solve_numeric(ci, st, tol)


def _solve_numeric(ci: FermatCI, st: Stratum, tol: float, starts: int = 40, iters: int = 200, seed: int = 0):
    """Damped Gauss-Newton (Levenberg-Marquardt) from seeded random starts."""
    eqs, ts, _ = _system(ci.degrees, st)
    unknowns = ts[1:]
    if not unknowns:
        return None
    F = sp.lambdify(unknowns, eqs, "numpy")
    J = sp.lambdify(unknowns, sp.Matrix(eqs).jacobian(unknowns), "numpy")
    rng = np.random.default_rng(seed)
    for _ in range(starts):
        x = rng.normal(size=len(unknowns)) + 1j * rng.normal(size=len(unknowns))
        lam = 1e-3
        for _ in range(iters):
            f = np.array(F(*x), dtype=complex)
            if np.max(np.abs(f)) < tol * 1e-3:
                break
            jm = np.array(J(*x), dtype=complex)
            h = jm.conj().T @ jm
            g = jm.conj().T @ f
            try:
                step = np.linalg.solve(h + lam * np.eye(len(x)), -g)
            except np.linalg.LinAlgError:
                break
            xn = x + step
            fn = np.array(F(*xn), dtype=complex)
            if np.linalg.norm(fn) < np.linalg.norm(f):
                x, lam = xn, max(lam / 3, 1e-12)
            else:
                lam *= 4
        pat = _numeric_pattern([1.0 + 0j] + list(x), st)
        if pat is None:
            continue
        res = _residuals(ci.degrees, pat)
        if max(abs(complex(r)) for r in res) < tol:
            try:
                if gv_rank(ci.exponents, pat) < ci.m:
                    return pat
            except IndeterminateRank:
                continue
    return None


def singular_point_search(
    ci: FermatCI,
    exact_unknowns: int = 2,
    tol: float = RESIDUAL_TOL,
    max_strata: int = 5000,
    use_lemma: bool = True,
) -> SmoothnessVerdict:
    """Look for a singular point of the affine cone, one value pattern stratum at a time."""
    if use_lemma and lemma_smooth_applies(ci):
        return SmoothnessVerdict(Status.SmoothByLemma, None, EXACT, ci)
    if len(set(ci.degrees)) != ci.m:
        raise ValueError("repeated degrees give a non-reduced intersection")
    if ci.m > 4 or ci.N > 12:
        raise BudgetError("singular_point_search is budgeted for m <= 4 and N <= 12")
    sts = strata(ci)
    if len(sts) > max_strata:
        raise BudgetError(f"{len(sts)} strata exceed max_strata={max_strata}")
    numeric_strata = 0
    flags = []
    for i, st in enumerate(sts):
        if st.r - 1 <= exact_unknowns:
            has, w = _solve_exact(ci, st, tol)
            if has and w is None:
                flags.append(f"stratum {st} has solutions but no witness was extracted")
                numeric_strata += 1
                continue
        else:
            numeric_strata += 1
            w = _solve_numeric(ci, st, tol)
        if w is not None:
            res = _residuals(ci.degrees, w)
            cert = EXACT if w.exact else Certification("NumericResidual", tol)
            return SmoothnessVerdict(
                Status.SingularWitness, w, cert, ci, i + 1, numeric_strata,
                [abs(exact.to_complex(r)) if not isinstance(r, complex) else abs(r) for r in res], flags,
            )
    cert = EXACT if numeric_strata == 0 else Certification("NumericResidual", tol)
    return SmoothnessVerdict(Status.SmoothNoWitness, None, cert, ci, len(sts), numeric_strata, [], flags)


SUITE_CASES: tuple[tuple[int, tuple[int, ...], bool], ...] = (
    # (N, degrees, expected smooth)
    (7, (1, 2, 3), True),
    (6, (1, 2, 4), True),
    (7, (1, 3, 4), True),
    (8, (1, 3, 4), True),
    (7, (1, 2, 5), False),
    (8, (1, 2, 5), False),
)


def _suite_row(args):
    N, d, tol = args
    return N, d, singular_point_search(FermatCI(N, d), tol=tol)


def verdict_suite(tol: float = RESIDUAL_TOL, workers: int = 1) -> list[tuple[int, tuple[int, ...], SmoothnessVerdict]]:
    """Verdicts for the named cases, in table order whatever ``workers`` is."""
    jobs = [(N, d, tol) for N, d, _ in SUITE_CASES]
    if workers <= 1:
        return [_suite_row(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
        return list(ex.map(_suite_row, jobs))
