"""Class groups and divisor-class ray partitions of complete simplicial fans."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations, product
from pathlib import Path
from typing import Sequence

Matrix = list[list[int]]


# ---------------------------------------------------------------- Smith normal form
def _ident(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U*A*V = D diagonal, d_i | d_{i+1}, U and V unimodular."""
    D = [[int(x) for x in row] for row in a]
    m = len(D)
    n = len(D[0]) if m else 0
    if any(len(r) != n for r in D):
        raise ValueError("ragged matrix")
    U, V = _ident(m), _ident(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        for M in (D, U):
            M[dst] = [x + q * y for x, y in zip(M[dst], M[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for M in (D, V):
            for r in M:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nz:
                return U, D, V
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty |= D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty |= D[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def det(a: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in a]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def diagonal(D: Matrix) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


# ---------------------------------------------------------------- fans
class FanError(ValueError):
    pass


@dataclass(frozen=True)
class FanData:
    n: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[frozenset[int], ...]  # 0-based ray indices

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(frozenset(c) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        n = self.n
        if n < 1 or not rays:
            raise FanError("need n >= 1 and at least one ray")
        for r in rays:
            if len(r) != n:
                raise FanError(f"ray {r} is not in Z^{n}")
            if reduce(math.gcd, r, 0) != 1:
                raise FanError(f"ray {r} is not primitive")
        for c in cones:
            if len(c) != n or not all(0 <= i < len(rays) for i in c):
                raise FanError(f"cone {sorted(c)} is not simplicial of dimension {n}")
            if det([rays[i] for i in sorted(c)]) == 0:
                raise FanError(f"cone {sorted(c)} has dependent rays")
        # pseudo-manifold proxy for completeness
        ridges: dict[frozenset[int], int] = {}
        for c in cones:
            for face in combinations(sorted(c), n - 1):
                f = frozenset(face)
                ridges[f] = ridges.get(f, 0) + 1
        if any(v != 2 for v in ridges.values()):
            raise FanError("some ridge does not lie in exactly two maximal cones")
        if not _connected(cones, n):
            raise FanError("cone adjacency graph is disconnected")

    @property
    def d(self) -> int:
        return len(self.rays)


def _connected(cones: Sequence[frozenset[int]], n: int) -> bool:
    if not cones:
        return False
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j, c in enumerate(cones):
            if j not in seen and len(cones[i] & c) == n - 1:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(cones)


@dataclass(frozen=True)
class ClassGroupDescriptor:
    free_rank: int
    torsion: tuple[int, ...]

    def describe(self) -> str:
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _cokernel(fan: FanData):
    U, D, _ = smith_normal_form([list(r) for r in fan.rays])
    diag = diagonal(D)
    r = sum(1 for x in diag if x)
    if r < fan.n:
        raise FanError("rays do not span Q^n; the fan is not complete")
    return U, diag, r


def class_group(fan: FanData) -> ClassGroupDescriptor:
    _, diag, r = _cokernel(fan)
    return ClassGroupDescriptor(fan.d - r, tuple(x for x in diag if x > 1))


def divisor_classes(fan: FanData) -> list[tuple[int, ...]]:
    """Class of each D_rho in the presentation Z/t_1 + ... + Z^free, input order."""
    U, diag, r = _cokernel(fan)
    out = []
    for rho in range(fan.d):
        col = [U[i][rho] for i in range(fan.d)]
        tors = tuple(col[i] % diag[i] for i in range(r) if diag[i] > 1)
        out.append(tors + tuple(col[r:]))
    return out


@dataclass(frozen=True)
class RayPartition:
    blocks: tuple[tuple[int, ...], ...]  # sorted by size descending, then first index

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def ray_partition(fan: FanData) -> RayPartition:
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, c in enumerate(divisor_classes(fan)):
        groups.setdefault(c, []).append(i)
    blocks = sorted((tuple(v) for v in groups.values()), key=lambda b: (-len(b), b[0]))
    return RayPartition(tuple(blocks))


@dataclass
class Lemma42Report:
    sum_ok: bool
    equality: bool
    product_decomposition: list[int] | None
    sizes: list[int] = field(default_factory=list)
    torsion_present: bool = False


def _is_product_of_projective_spaces(fan: FanData, blocks: Sequence[Sequence[int]]) -> bool:
    n = fan.n
    for b in blocks:
        if any(sum(fan.rays[i][c] for i in b) for c in range(n)):
            return False
    basis = [fan.rays[i] for b in blocks for i in b[:-1]]
    if len(basis) != n or abs(det(basis)) != 1:
        return False
    expected = {frozenset(i for b, drop in zip(blocks, choice) for i in b if i != drop) for choice in product(*blocks)}
    return expected == set(fan.max_cones)


def lemma42_check(fan: FanData) -> Lemma42Report:
    part = ray_partition(fan)
    sizes = part.sizes
    total = sum(s - 1 for s in sizes)
    eq = total == fan.n
    decomp = sizes if eq and _is_product_of_projective_spaces(fan, part.blocks) else None
    return Lemma42Report(total <= fan.n, eq, decomp, sizes, bool(class_group(fan).torsion))


def theorem41_bound(n: int) -> int:
    """Largest k with S_k acting faithfully on an n-dimensional toric variety (lookup)."""
    if n < 1:
        raise ValueError("n must be positive")
    return n + 3 if n <= 3 else n + 2


# ---------------------------------------------------------------- corpus
def projective_space(n: int) -> FanData:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = [frozenset(set(range(n + 1)) - {i}) for i in range(n + 1)]
    return FanData(n, tuple(rays), tuple(cones))


def product_fan(f: FanData, g: FanData) -> FanData:
    rays = [r + (0,) * g.n for r in f.rays] + [(0,) * f.n + r for r in g.rays]
    cones = [a | frozenset(j + f.d for j in b) for a in f.max_cones for b in g.max_cones]
    return FanData(f.n + g.n, tuple(rays), tuple(cones))


def product_of_projective_spaces(dims: Sequence[int]) -> FanData:
    fans = [projective_space(a) for a in dims]
    return reduce(product_fan, fans)


def hirzebruch(a: int) -> FanData:
    rays = ((1, 0), (0, 1), (-1, a), (0, -1))
    cones = ({0, 1}, {1, 2}, {2, 3}, {3, 0})
    return FanData(2, rays, tuple(frozenset(c) for c in cones))


def weighted_p112() -> FanData:
    rays = ((1, 0), (0, 1), (-1, -2))
    return FanData(2, rays, (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})))


def corpus() -> dict[str, FanData]:
    out = {f"P{n}": projective_space(n) for n in range(1, 6)}
    for a in range(1, 4):
        for b in range(a, 4):
            out[f"P{a}xP{b}"] = product_of_projective_spaces([a, b])
    out["P1xP1xP1"] = product_of_projective_spaces([1, 1, 1])
    for a in range(0, 4):
        out[f"F{a}"] = hirzebruch(a)
    out["P(1,1,2)"] = weighted_p112()
    return out


# ---------------------------------------------------------------- ray files
def parse_rays(text: str) -> FanData:
    """Header "n d", then d rays, then one line of 1-based ray indices per maximal cone."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise FanError("first line must be 'n d'")
    n, d = (int(x) for x in lines[0])
    if len(lines) < 1 + d:
        raise FanError(f"expected {d} ray lines")
    rays = tuple(tuple(int(x) for x in ln) for ln in lines[1 : 1 + d])
    cones = []
    for ln in lines[1 + d :]:
        idx = [int(x) - 1 for x in ln]
        if any(not 0 <= i < d for i in idx):
            raise FanError(f"cone index out of range in {ln}")
        cones.append(frozenset(idx))
    return FanData(n, rays, tuple(cones))


def format_rays(fan: FanData) -> str:
    out = [f"{fan.n} {fan.d}"]
    out += [" ".join(map(str, r)) for r in fan.rays]
    out += [" ".join(str(i + 1) for i in sorted(c)) for c in fan.max_cones]
    return "\n".join(out) + "\n"


def load_rays(path: str | Path) -> FanData:
    return parse_rays(Path(path).read_text())
