"""Weighted complete intersections with a large symmetric group action.

A candidate is a pair (weights, degrees).  The search part works with
*shapes*: k - 1 variables of common weight b permuted by A_k through its
standard representation, plus a multiset of extra weights.  Degree vectors
are always in reduced form (the linear invariant eliminated), so a
projective space P^{k-1} with its permutation action appears as P^{k-2}.

Everything here is integer arithmetic; the bound functions use
:func:`math.isqrt` rather than floating point square roots.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations_with_replacement
from typing import Iterator, Sequence


class BudgetError(RuntimeError):
    """A search would need to exceed its declared caps."""


class Kind(enum.Enum):
    Fano = "Fano"
    CalabiYau = "CalabiYau"


class Classification(enum.Enum):
    Fano = "Fano"
    CalabiYau = "CalabiYau"
    GeneralType = "GeneralType"


@dataclass(frozen=True)
class WciCandidate:
    weights: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self):
        w, d = tuple(sorted(self.weights)), tuple(sorted(self.degrees))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "degrees", d)
        if any(x < 1 for x in w + d):
            raise ValueError("weights and degrees must be positive")
        N, m = len(w) - 1, len(d)
        if N < 1 or not 1 <= m <= N or N - m < 1:
            raise ValueError(f"need N >= 1, 1 <= m <= N and n = N - m >= 1 (N={N}, m={m})")

    @property
    def N(self) -> int:
        return len(self.weights) - 1

    @property
    def m(self) -> int:
        return len(self.degrees)

    @property
    def n(self) -> int:
        return self.N - self.m

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def describe(self) -> str:
        return f"X_{{{','.join(map(str, self.degrees))}}} in {ambient_name(self.weights)}"


def ambient_name(weights: Sequence[int]) -> str:
    if all(a == 1 for a in weights):
        return f"P^{len(weights) - 1}"
    parts = []
    for a in sorted(set(weights)):
        c = list(weights).count(a)
        parts.append(f"{a}^{c}" if c > 1 else str(a))
    return f"P({','.join(parts)})"


@dataclass(frozen=True)
class SymmetricShape:
    k: int
    b: int
    extra_weights: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "extra_weights", tuple(sorted(self.extra_weights)))
        if self.k < 2 or self.b < 1:
            raise ValueError("need k >= 2 and b >= 1")
        if not 2 * (self.k - 1) > self.N + 1:
            raise ValueError("the permuted block must fill more than half the variables")

    @property
    def N(self) -> int:
        return self.k - 2 + len(self.extra_weights)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(sorted((self.b,) * (self.k - 1) + self.extra_weights))

    def ambient(self) -> str:
        if not self.extra_weights and self.b == 1:
            return f"P^{self.k - 2}"
        block = f"{self.b}^({self.k - 1})"
        return f"P({','.join([block] + [str(a) for a in self.extra_weights])})"

    def unreduced_ambient(self) -> str:
        """The same space with the linear invariant restored as a coordinate."""
        if self.b != 1:
            return self.ambient()
        return ambient_name((1,) * self.k + self.extra_weights)


# ---------------------------------------------------------------- predicates
def well_formed_space(weights: Sequence[int]) -> bool:
    w = list(weights)
    if not w:
        raise ValueError("weights must be nonempty")
    if len(w) == 1:
        return w[0] == 1
    return all(reduce(math.gcd, w[:i] + w[i + 1:]) == 1 for i in range(len(w)))


def linear_cone_free(c: WciCandidate) -> bool:
    ws = set(c.weights)
    return not any(d in ws for d in c.degrees)


def canonical_degree(c: WciCandidate) -> int:
    return sum(c.degrees) - sum(c.weights)


def classify(c: WciCandidate) -> Classification:
    k = canonical_degree(c)
    if k < 0:
        return Classification.Fano
    if k == 0:
        return Classification.CalabiYau
    return Classification.GeneralType


def fano_index(c: WciCandidate) -> int:
    if classify(c) is not Classification.Fano:
        raise ValueError("fano_index needs a Fano candidate")
    return -canonical_degree(c)


@dataclass(frozen=True)
class IFReport:
    part1: bool
    part2: bool | None  # None when m < n + 1

    @property
    def ok(self) -> bool:
        return self.part1 and self.part2 is not False


def if_inequalities(c: WciCandidate) -> IFReport:
    a, d, N, m, n = c.weights, c.degrees, c.N, c.m, c.n
    part1 = all(d[m - 1 - j] > a[N - j] for j in range(m))
    part2 = None
    if m >= n + 1:
        part2 = all(d[m - 1 - j] - a[N - j] >= a[n - j] for j in range(n + 1))
    return IFReport(part1, part2)


def codim_bound(c: WciCandidate, kind: Kind | str) -> bool:
    kind = Kind(kind)
    if kind is Kind.Fano:
        return 2 * c.m < c.N + 1
    return 2 * c.m <= c.N + 1


# ---------------------------------------------------------------- bounds
def _root_term(n: int) -> tuple[int, bool]:
    s = 8 * n + 9
    r = math.isqrt(s)
    return r, r * r == s


def c_fano(n: int) -> int:
    """n + ceil((1 + sqrt(8n+9)) / 2)."""
    if n < 1:
        raise ValueError("n must be positive")
    r, exact = _root_term(n)
    # 8n+9 is odd, so an exact root is odd and (1+r)/2 is an integer
    return n + ((1 + r) // 2 if exact else (1 + r) // 2 + 1)


def c_cy(n: int) -> int:
    """n + floor((1 + sqrt(8n+9)) / 2) + 1."""
    if n < 1:
        raise ValueError("n must be positive")
    r, _ = _root_term(n)
    return n + (1 + r) // 2 + 1


def max_k_degree_condition(n: int, strict: bool) -> int:
    """Largest k >= n+2 with (k-n-1)(k-n)/2 < k (or <= when not strict)."""
    if n < 1:
        raise ValueError("n must be positive")

    def ok(k):
        lhs = (k - n - 1) * (k - n)
        return lhs < 2 * k if strict else lhs <= 2 * k

    k = n + 2
    while ok(k + 1):
        k += 1
    return k


def sigma_degree_lower_bound(alpha: int, b: int) -> int:
    if alpha < 0 or b < 1:
        raise ValueError("need alpha >= 0 and b >= 1")
    return ((alpha + 1) * (alpha + 2) // 2 - 1) * b


def vandermonde_degree(k: int, b: int) -> int:
    if k < 2:
        raise ValueError("k must be at least 2")
    return k * (k - 1) // 2 * b


def total_degree_lower_bound(n: int, k: int, extra_weights: Sequence[int], b: int) -> int:
    if k < n + 2:
        raise ValueError("need k >= n + 2")
    return sum(extra_weights) + ((k - n - 1) * (k - n) // 2 - 1) * b


def index_upper_bound(n: int, k: int) -> int:
    if k < n + 2:
        raise ValueError("need k >= n + 2")
    return k - (k - n) * (k - n - 1) // 2


@dataclass(frozen=True)
class MaximalExample:
    candidate: WciCandidate  # P^{k-1} presentation, degrees 1..m
    shape: SymmetricShape  # reduced: P^{k-2}
    reduced: WciCandidate | None  # degrees 2..m, None when m == 1

    @property
    def k(self) -> int:
        return self.shape.k


def maximal_example(n: int) -> MaximalExample:
    if n < 1:
        raise ValueError("n must be positive")
    m = c_fano(n) - n - 1
    k = n + m + 1
    cand = WciCandidate((1,) * (n + m + 1), tuple(range(1, m + 1)))
    red = WciCandidate((1,) * (n + m), tuple(range(2, m + 1))) if m >= 2 else None
    return MaximalExample(cand, SymmetricShape(k, 1, ()), red)


def reduce_linear(c: WciCandidate) -> WciCandidate:
    """Eliminate degree-1 equations against weight-1 variables."""
    ones = c.degrees.count(1)
    if ones == 0:
        return c
    if c.weights.count(1) < ones:
        raise ValueError("not enough weight-1 variables to eliminate the linear equations")
    w = list(c.weights)
    for _ in range(ones):
        w.remove(1)
    return WciCandidate(tuple(w), tuple(x for x in c.degrees if x != 1))


# ---------------------------------------------------------------- search
@dataclass(frozen=True)
class Witness:
    k: int
    shape: SymmetricShape
    degrees: tuple[int, ...]

    def candidate(self) -> WciCandidate:
        return WciCandidate(self.shape.weights, self.degrees)


@dataclass
class LayerReport:
    k: int
    extras: int
    status: str  # "certified-empty", "exhausted", "feasible"
    detail: str = ""


@dataclass
class SearchOutcome:
    n: int
    kind: Kind
    max_feasible_k: int | None
    witnesses: list[Witness]
    ambient_shapes: set[str]
    layers: list[LayerReport] = field(default_factory=list)
    caps: dict = field(default_factory=dict)
    certifies: str = "upper bound (necessary conditions only)"
    notes: list[str] = field(default_factory=list)


def _semigroup_member(t: int, gens: Sequence[int]) -> bool:
    if t == 0:
        return True
    if not gens:
        return False
    reach = [False] * (t + 1)
    reach[0] = True
    for v in range(1, t + 1):
        reach[v] = any(g <= v and reach[v - g] for g in gens)
    return reach[t]


def _coordinate_condition(w: int, others: Sequence[int], degrees: Sequence[int]) -> bool:
    """Some degree is r*w (r >= 2) or r*w + w' (r >= 1) for another extra weight w'."""
    for d in degrees:
        if d % w == 0 and d >= 2 * w:
            return True
        for o in others:
            if d - o >= w and (d - o) % w == 0:
                return True
    return False


def _block_involved(d: int, b: int, extras: Sequence[int]) -> bool:
    """d = s*b + t with s >= 2 and t a sum of extra weights."""
    s = 2
    while s * b <= d:
        if _semigroup_member(d - s * b, extras):
            return True
        s += 1
    return False


def shape_filters(shape: SymmetricShape, degrees: Sequence[int], kind: Kind) -> list[str]:
    """Names of the necessary conditions violated by (shape, degrees)."""
    fails = []
    weights = shape.weights
    N = len(weights) - 1
    m = len(degrees)
    n = N - m
    b, extras = shape.b, shape.extra_weights
    d = sorted(degrees)
    if m < 1 or n < 1:
        return ["dimension"]
    if not well_formed_space(weights):
        fails.append("well-formed")
    if kind is Kind.Fano and not N + 1 < 2 * n + 2:
        fails.append("ambient-size")
    if kind is Kind.CalabiYau and not N + 1 <= 2 * n + 2:
        fails.append("ambient-size")
    cand = WciCandidate(weights, tuple(d))
    if not codim_bound(cand, kind):
        fails.append("codim")
    acc = 0
    for alpha in range(1, m + 1):
        acc += d[alpha - 1]
        if acc < sigma_degree_lower_bound(alpha, b):
            fails.append("prefix")
            break
    if not if_inequalities(cand).ok:
        fails.append("iano-fletcher")
    sign = canonical_degree(cand)
    if (kind is Kind.Fano and sign >= 0) or (kind is Kind.CalabiYau and sign != 0):
        fails.append("sign")
    if not linear_cone_free(cand):
        fails.append("linear-cone")
    if not all(_block_involved(x, b, extras) for x in d):
        fails.append("block")
    for i, w in enumerate(extras):
        if not _coordinate_condition(w, extras[:i] + extras[i + 1:], d):
            fails.append("coordinate-point")
            break
    return fails


def _exists_b(coef: int, rhs: int, b_lo: int = 1) -> tuple[bool, int | None]:
    """Does some integer b >= b_lo satisfy coef*b >= rhs?  Also an upper bound on b if any."""
    if coef > 0:
        return True, None
    if coef == 0:
        return rhs <= 0, None
    ok = coef * b_lo >= rhs
    return ok, (rhs // coef if ok else None)  # floor(rhs/coef) for negative coef


def _layer_certificate(n: int, k: int, e: int, kind: Kind) -> tuple[bool, str, int | None]:
    """Scale-free emptiness test for all shapes with e extra weights.

    Returns (empty, reason, b_upper).  Two inequality chains are tried:
    prefix bounds on the first m-e degrees plus Iano-Fletcher pairing of
    the last e degrees with the top e weights, and (for e >= 2) prefix
    bounds on the first m-e+1 degrees with the largest degree bounded below
    by the coordinate-point condition of the largest extra variable.
    """
    m = k - 2 + e - n
    slack = 1 if kind is Kind.Fano else 0
    b_upper = None
    reasons = []
    alpha = m - e
    coef = k - 1 - sigma_degree_lower_bound(alpha, 1) if alpha >= 1 else k - 1
    ok, ub = _exists_b(coef, e + slack)
    reasons.append(f"({k - 1}-C_{alpha})*b >= {e + slack}")
    if not ok:
        return True, "prefix+pairing: " + reasons[-1], None
    b_upper = ub
    if e >= 2:
        alpha = m - e + 1
        coef = k - 1 - sigma_degree_lower_bound(alpha, 1)
        ok, ub = _exists_b(coef, e - 2 + slack)
        if not ok:
            return True, f"prefix+coordinate-point: ({k - 1}-C_{alpha})*b >= {e - 2 + slack}", None
        if ub is not None:
            b_upper = ub if b_upper is None else min(b_upper, ub)
    return False, "", b_upper


def _degree_vectors(m: int, lo: int, total_max: int, total_min: int, b: int) -> Iterator[tuple[int, ...]]:
    """Sorted m-tuples >= lo with prefix sums >= C_alpha*b and total in range."""

    def rec(prefix: list[int], acc: int):
        i = len(prefix)
        if i == m:
            if total_min <= acc <= total_max:
                yield tuple(prefix)
            return
        start = max(lo, prefix[-1] if prefix else lo)
        rest = m - i - 1
        for x in range(start, total_max + 1):
            if acc + x + rest * x > total_max:
                break
            if acc + x < sigma_degree_lower_bound(i + 1, b):
                continue
            prefix.append(x)
            yield from rec(prefix, acc + x)
            prefix.pop()

    yield from rec([], 0)


def _enumerate_layer(n: int, k: int, e: int, kind: Kind, b_upper: int | None, b_cap: int, w_cap: int):
    m = k - 2 + e - n
    slack = 1 if kind is Kind.Fano else 0
    witnesses = []
    capped = False
    if e <= 1:
        b_values = [1]  # well-formedness forces b = 1
    else:
        hi = b_upper if b_upper is not None else b_cap
        capped = b_upper is None or b_upper > b_cap
        b_values = range(1, min(hi, b_cap) + 1)
    for b in b_values:
        if e == 0:
            extra_sets: Iterator[tuple[int, ...]] = iter([()])
        elif e == 1:
            # coordinate point of the extra variable forces a degree >= 2a,
            # and prefix bounds on the other m-1 degrees give 2a + C_{m-1} <= sum d
            hi = k - 1 - slack - sigma_degree_lower_bound(m - 1, 1) if m >= 2 else k - 1 - slack
            extra_sets = ((a,) for a in range(1, max(hi, 0) + 1))
        else:
            extra_sets = combinations_with_replacement(range(1, w_cap + 1), e)
        for extras in extra_sets:
            shape_weights = (b,) * (k - 1) + extras
            if not well_formed_space(shape_weights):
                continue
            try:
                shape = SymmetricShape(k, b, extras)
            except ValueError:
                continue
            total = sum(shape_weights)
            t_max = total - slack
            found = False
            for degs in _degree_vectors(m, 2 * b, t_max, t_max if kind is Kind.CalabiYau else 0, b):
                if not shape_filters(shape, degs, kind):
                    witnesses.append(Witness(k, shape, degs))
                    found = True
            if found and e >= 2 and (max(extras) == w_cap or b == b_cap):
                raise BudgetError(f"survivor on the cap boundary at k={k}, e={e}; raise b_cap/w_cap")
    return witnesses, capped


def search_max_symmetric(n: int, kind: Kind | str = Kind.Fano, b_cap: int = 6, w_cap: int = 24) -> SearchOutcome:
    """Largest k admitting a shape that passes every necessary condition.

    k is scanned downwards from the hard ceiling 2n+2 (Fano) or 2n+3 (CY)
    implied by the ambient-size condition; the first feasible k is the
    answer and all of its surviving shapes are reported.  Layers with at
    most one extra weight are finite and enumerated exhaustively; larger
    layers must be closed by an inequality certificate or by enumeration
    within ``b_cap``/``w_cap`` (exceeding a cap raises :class:`BudgetError`).
    """
    kind = Kind(kind)
    if not 4 <= n <= 12:
        raise ValueError("search is budgeted for 4 <= n <= 12")
    vars_max = 2 * n + 1 if kind is Kind.Fano else 2 * n + 2
    out = SearchOutcome(n, kind, None, [], set(), caps={"b_cap": b_cap, "w_cap": w_cap, "variables_max": vars_max})
    for k in range(vars_max + 1, n + 1, -1):
        found: list[Witness] = []
        for e in range(0, vars_max - (k - 1) + 1):
            m = k - 2 + e - n
            if m < 1 or not 2 * (k - 1) > k - 1 + e:
                continue
            N = k - 2 + e
            if (kind is Kind.Fano and not 2 * m < N + 1) or (kind is Kind.CalabiYau and not 2 * m <= N + 1):
                out.layers.append(LayerReport(k, e, "certified-empty", "codimension"))
                continue
            empty, reason, b_upper = _layer_certificate(n, k, e, kind)
            if empty:
                out.layers.append(LayerReport(k, e, "certified-empty", reason))
                continue
            wits, capped = _enumerate_layer(n, k, e, kind, b_upper, b_cap, w_cap)
            if capped and not wits:
                raise BudgetError(f"layer k={k}, e={e} is not closed by a certificate and exceeds the caps")
            out.layers.append(LayerReport(k, e, "feasible" if wits else "exhausted", f"{len(wits)} witnesses"))
            found.extend(wits)
        if found:
            out.max_feasible_k = k
            out.witnesses = sorted(found, key=lambda w: (w.shape.b, w.shape.extra_weights, w.degrees))
            out.ambient_shapes = {w.shape.ambient() for w in found}
            break
    out.notes.append("linear-cone check uses the surrogate d_i != a_j")
    out.notes.append("sharpness is witnessed separately by the Fermat example")
    return out
