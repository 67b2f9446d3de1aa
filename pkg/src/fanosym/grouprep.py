"""Partitions, hook dimensions and minimal faithful degrees.

The minimal faithful degrees for the symmetric and alternating groups and
their Schur covers only follow closed forms from k = 7 or 8 onwards; the
small-k cells are a literal table.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

PARTITION_CAP = 40


class Family(enum.Enum):
    Sym = "Sym"
    Alt = "Alt"
    SchurSym = "SchurSym"
    DoubleAlt = "DoubleAlt"
    TripleAlt = "TripleAlt"
    SixAlt = "SixAlt"


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = tuple(self.parts)
        object.__setattr__(self, "parts", p)
        if not p or p[-1] < 1 or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"not a partition: {p}")

    @property
    def k(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        return Partition(tuple(sum(1 for x in self.parts if x > i) for i in range(self.parts[0])))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


@dataclass(frozen=True)
class GroupSpec:
    family: Family
    k: int

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if self.k < 4:
            raise ValueError("GroupSpec requires k >= 4")
        if fam in (Family.TripleAlt, Family.SixAlt) and self.k not in (6, 7):
            raise ValueError(f"{fam.value} exists only for k in {{6, 7}}")


@dataclass(frozen=True)
class DegreeSpectrum:
    entries: tuple[tuple[int, int], ...]

    def dims(self) -> list[int]:
        return [d for d, _ in self.entries]

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


def partitions(k: int, cap: int = PARTITION_CAP) -> list[Partition]:
    """All partitions of k in reverse lexicographic order."""
    if not 1 <= k <= cap:
        raise ValueError(f"k must lie in [1, {cap}]")
    return [Partition(p) for p in _partitions(k, k)]


@lru_cache(maxsize=None)
def _partitions(k: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if k == 0:
        return ((),)
    out = []
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            out.append((first,) + rest)
    return tuple(out)


def hook_dimension(lam: Partition) -> int:
    parts = lam.parts
    conj = lam.conjugate().parts
    prod = 1
    for i, row in enumerate(parts):
        for j in range(row):
            prod *= (row - j - 1) + (conj[j] - i - 1) + 1
    num = math.factorial(lam.k)
    q, r = divmod(num, prod)
    if r:
        raise ArithmeticError("hook product does not divide k!")
    return q


def sym_degree_spectrum(k: int, bound: int) -> DegreeSpectrum:
    if k < 2:
        raise ValueError("k must be at least 2")
    counts: dict[int, int] = {}
    for lam in partitions(k):
        d = hook_dimension(lam)
        if d <= bound:
            counts[d] = counts.get(d, 0) + 1
    return DegreeSpectrum(tuple(sorted(counts.items())))


# Small-k cells of the minimal faithful degree tables.
_SMALL = {
    Family.Sym: {4: 3, 5: 4, 6: 5},
    Family.SchurSym: {4: 2, 5: 4, 6: 4},
    Family.Alt: {4: 3, 5: 3, 6: 5, 7: 6},
    Family.DoubleAlt: {4: 2, 5: 2, 6: 4, 7: 4},
    # 3.A_6 has a 3-dimensional representation (the Valentiner group); 3.A_7 needs 6
    Family.TripleAlt: {6: 3, 7: 6},
    # the full cover 6.A_k for k = 6, 7
    Family.SixAlt: {6: 6, 7: 6},
}


def min_faithful_degree(g: GroupSpec) -> int:
    small = _SMALL[g.family]
    if g.k in small:
        return small[g.k]
    if g.family in (Family.Sym, Family.Alt):
        return g.k - 1
    if g.family is Family.SchurSym:
        return 2 ** ((g.k - 1) // 2)
    if g.family is Family.DoubleAlt:
        return 2 ** ((g.k - 2) // 2)
    raise ValueError(f"no entry for {g}")


def schur_multiplier(family: Family | str, k: int) -> str:
    """Isomorphism type of H^2(G, C^*) as 'trivial', 'Z/2' or 'Z/6'."""
    family = Family(family)
    if k < 1:
        raise ValueError("k must be positive")
    if k <= 3:
        return "trivial"
    if family is Family.Sym:
        return "Z/2"
    if family is Family.Alt:
        return "Z/6" if k in (6, 7) else "Z/2"
    raise ValueError("schur_multiplier is defined for Sym and Alt only")


def largest_symmetric_on_projective_space(n: int) -> int:
    """Largest k such that S_k or its Schur cover has a faithful rep of degree n+1."""
    if not 1 <= n <= 200:
        raise ValueError("n must lie in [1, 200]")
    best = 3
    # both degree functions increase from k = 7 on and exceed n+1 once k > n+2
    for k in range(4, max(n + 3, 7) + 1):
        deg = min(min_faithful_degree(GroupSpec(Family.Sym, k)), min_faithful_degree(GroupSpec(Family.SchurSym, k)))
        if deg <= n + 1:
            best = k
    return best


def alt_schur_cover(k: int) -> Family:
    """Family of the Schur cover of A_k: 6.A_k for k = 6, 7, else 2.A_k."""
    if k < 4:
        raise ValueError("k must be at least 4")
    return Family.SixAlt if k in (6, 7) else Family.DoubleAlt
