"""Two-level designs: counting vectors, pmfs, moments, the isomorphism group.

Points of the full factorial ``{0,1}^d`` are indexed lexicographically: the
index of ``alpha`` is its binary value with the first factor as the most
significant bit, so the all-zeros point is index 0.

Run reordering never needs to be represented explicitly: a counting vector is
already invariant under it, so the group acting on designs is factor
relabeling combined with level flips, of order ``d! * 2**d``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Design",
    "CountingVector",
    "Pmf",
    "MomentVector",
    "IsoTransform",
    "point_index",
    "index_point",
    "counting_vector",
    "pmf",
    "moments",
    "superset_counts",
    "check_strength",
    "max_strength",
    "projection_counts",
    "apply_transform",
    "transform_counts",
    "random_transform",
    "all_transforms",
    "canonical_form",
    "are_isomorphic_exact",
    "enumerate_oas",
    "extend_oas",
    "reduce_to_classes",
    "orbit_size",
    "group_order",
]


def point_index(alpha: Sequence[int]) -> int:
    idx = 0
    for bit in alpha:
        idx = (idx << 1) | int(bit)
    return idx


def index_point(idx: int, d: int) -> tuple[int, ...]:
    return tuple((idx >> (d - 1 - i)) & 1 for i in range(d))


@dataclass(frozen=True)
class Design:
    """A fraction of the full factorial: an ordered list of N binary runs."""

    d: int
    runs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"number of factors must be positive, got {self.d}")
        if not self.runs:
            raise ValueError("a design needs at least one run")
        runs = tuple(tuple(int(x) for x in run) for run in self.runs)
        for i, run in enumerate(runs):
            if len(run) != self.d:
                raise ValueError(f"run {i} has {len(run)} entries, expected {self.d}")
            if any(x not in (0, 1) for x in run):
                raise ValueError(f"run {i} has entries outside {{0,1}}: {run}")
        object.__setattr__(self, "runs", runs)

    @classmethod
    def from_runs(cls, runs: Iterable[Sequence[int]]) -> "Design":
        runs = [tuple(r) for r in runs]
        if not runs:
            raise ValueError("a design needs at least one run")
        return cls(len(runs[0]), tuple(runs))

    @property
    def N(self) -> int:
        return len(self.runs)


@dataclass(frozen=True)
class CountingVector:
    d: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != 1 << self.d:
            raise ValueError(f"expected {1 << self.d} counts for d={self.d}, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @property
    def N(self) -> int:
        return sum(self.counts)

    def to_design(self) -> Design:
        """Expand into runs, listed in lexicographic order."""
        runs = []
        for idx, c in enumerate(self.counts):
            runs.extend([index_point(idx, self.d)] * c)
        return Design(self.d, tuple(runs))

    def to_json(self) -> dict:
        return {"d": self.d, "counts": list(self.counts)}

    @classmethod
    def from_json(cls, obj: dict) -> "CountingVector":
        return cls(int(obj["d"]), tuple(obj["counts"]))


@dataclass(frozen=True)
class Pmf:
    d: int
    probs: tuple[Fraction, ...]


@dataclass(frozen=True)
class MomentVector:
    d: int
    mu: tuple[Fraction, ...]


def _as_counts(v: CountingVector | Design) -> CountingVector:
    return counting_vector(v) if isinstance(v, Design) else v


def counting_vector(f: Design) -> CountingVector:
    counts = [0] * (1 << f.d)
    for run in f.runs:
        counts[point_index(run)] += 1
    return CountingVector(f.d, tuple(counts))


def pmf(v: CountingVector) -> Pmf:
    n = v.N
    if n == 0:
        raise ValueError("empty design: counting vector sums to 0")
    return Pmf(v.d, tuple(Fraction(c, n) for c in v.counts))


def _superset_sums(values: Sequence, d: int) -> list:
    # zeta transform over the subset lattice: out[a] = sum of values[b] for b containing a
    out = list(values)
    for bit in range(d):
        step = 1 << bit
        for idx in range(len(out)):
            if not idx & step:
                out[idx] += out[idx | step]
    return out


def superset_counts(v: CountingVector) -> list[int]:
    """Number of runs equal to 1 on every factor in the support of alpha, for each alpha."""
    return _superset_sums(v.counts, v.d)


def moments(p: Pmf) -> MomentVector:
    return MomentVector(p.d, tuple(_superset_sums(p.probs, p.d)))


def _check_t(d: int, t: int) -> None:
    if not 1 <= t <= d:
        raise ValueError(f"strength must satisfy 1 <= t <= d={d}, got {t}")


def check_strength(v: CountingVector | Design, t: int) -> bool:
    """True iff every projection onto t factors is a replicated full factorial.

    Tested in moment form: ``N * mu_alpha == N / 2**|alpha|`` for every alpha
    with ``1 <= |alpha| <= t``. When ``2**t`` does not divide N no OA exists
    and the answer is False.
    """
    v = _as_counts(v)
    _check_t(v.d, t)
    n = v.N
    if n == 0 or n % (1 << t):
        return False
    sums = superset_counts(v)
    for idx in range(1, len(sums)):
        w = idx.bit_count()
        if w <= t and sums[idx] * (1 << w) != n:
            return False
    return True


def max_strength(v: CountingVector | Design) -> int:
    """Largest t with check_strength true; 0 if the design is not even balanced."""
    v = _as_counts(v)
    best = 0
    for t in range(1, v.d + 1):
        if not check_strength(v, t):
            break
        best = t
    return best


def projection_counts(v: CountingVector, factors: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Counts of each level combination in the projection onto ``factors``."""
    out = {pattern: 0 for pattern in itertools.product((0, 1), repeat=len(factors))}
    for idx, c in enumerate(v.counts):
        if c:
            point = index_point(idx, v.d)
            out[tuple(point[i] for i in factors)] += c
    return out


@dataclass(frozen=True)
class IsoTransform:
    """Factor relabeling plus level switches: run x maps to y with ``y[i] = x[sigma[i]] ^ flips[i]``.

    ``sigma`` is 0-based.
    """

    sigma: tuple[int, ...]
    flips: tuple[int, ...]

    def __post_init__(self) -> None:
        sigma = tuple(int(s) for s in self.sigma)
        flips = tuple(int(f) for f in self.flips)
        if sorted(sigma) != list(range(len(sigma))):
            raise ValueError(f"sigma is not a permutation: {sigma}")
        if len(flips) != len(sigma) or any(f not in (0, 1) for f in flips):
            raise ValueError(f"flips must be a 0/1 tuple of length {len(sigma)}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "flips", flips)

    @property
    def d(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, d: int) -> "IsoTransform":
        return cls(tuple(range(d)), (0,) * d)

    def apply_run(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(x[s] ^ f for s, f in zip(self.sigma, self.flips))

    def inverse(self) -> "IsoTransform":
        inv = [0] * self.d
        for i, s in enumerate(self.sigma):
            inv[s] = i
        return IsoTransform(tuple(inv), tuple(self.flips[inv[j]] for j in range(self.d)))

    def compose(self, other: "IsoTransform") -> "IsoTransform":
        """The transform applying ``other`` first, then ``self``."""
        sigma = tuple(other.sigma[s] for s in self.sigma)
        flips = tuple(other.flips[s] ^ f for s, f in zip(self.sigma, self.flips))
        return IsoTransform(sigma, flips)

    def index_map(self) -> np.ndarray:
        """``m[x] = y``: where the point with index x is sent."""
        return _index_map(self.sigma, self.flips)

    def to_json(self) -> dict:
        return {"sigma": list(self.sigma), "flips": list(self.flips)}


@lru_cache(maxsize=None)
def _index_map(sigma: tuple[int, ...], flips: tuple[int, ...]) -> np.ndarray:
    d = len(sigma)
    out = np.empty(1 << d, dtype=np.int64)
    for x in range(1 << d):
        pt = index_point(x, d)
        out[x] = point_index(pt[s] ^ f for s, f in zip(sigma, flips))
    out.setflags(write=False)
    return out


def apply_transform(f: Design, g: IsoTransform) -> Design:
    if g.d != f.d:
        raise ValueError(f"transform acts on d={g.d}, design has d={f.d}")
    return Design(f.d, tuple(g.apply_run(run) for run in f.runs))


def transform_counts(v: CountingVector, g: IsoTransform) -> CountingVector:
    """The same action as apply_transform, directly on the counting vector."""
    if g.d != v.d:
        raise ValueError(f"transform acts on d={g.d}, counting vector has d={v.d}")
    out = [0] * len(v.counts)
    for x, y in enumerate(g.index_map()):
        out[y] = v.counts[x]
    return CountingVector(v.d, tuple(out))


def random_transform(rng: np.random.Generator, d: int) -> IsoTransform:
    """A uniform draw from the d!*2^d group."""
    if d < 1:
        raise ValueError("d must be positive")
    sigma = tuple(int(s) for s in rng.permutation(d))
    flips = tuple(int(b) for b in rng.integers(0, 2, size=d))
    return IsoTransform(sigma, flips)


@lru_cache(maxsize=None)
def all_transforms(d: int) -> tuple[IsoTransform, ...]:
    return tuple(
        IsoTransform(sigma, flips)
        for sigma in itertools.permutations(range(d))
        for flips in itertools.product((0, 1), repeat=d)
    )


@lru_cache(maxsize=None)
def _gather_table(d: int) -> np.ndarray:
    # row g holds, for each target index y, the source index x with g(x) = y
    maps = np.stack([g.index_map() for g in all_transforms(d)])
    table = np.empty_like(maps)
    rows = np.arange(maps.shape[0])[:, None]
    table[rows, maps] = np.arange(maps.shape[1])[None, :]
    table.setflags(write=False)
    return table


def _orbit(v: CountingVector) -> np.ndarray:
    return np.asarray(v.counts, dtype=np.int64)[_gather_table(v.d)]


def canonical_form(v: CountingVector) -> CountingVector:
    """Lexicographically smallest image of v over the whole transform group."""
    images = _orbit(v)
    best = images[np.lexsort(images.T[::-1])[0]]
    return CountingVector(v.d, tuple(int(c) for c in best))


def orbit_size(v: CountingVector) -> int:
    return len(np.unique(_orbit(v), axis=0))


def are_isomorphic_exact(v1: CountingVector | Design, v2: CountingVector | Design) -> bool:
    v1, v2 = _as_counts(v1), _as_counts(v2)
    if v1.d != v2.d:
        raise ValueError(f"dimension mismatch: {v1.d} vs {v2.d}")
    if v1.N != v2.N:
        return False
    return canonical_form(v1) == canonical_form(v2)


MAX_ENUM_D = 4
MAX_ENUM_N = 20


def enumerate_oas(d: int, N: int, t: int) -> list[CountingVector]:
    """All strength-t counting vectors with N runs on d factors, lexicographically sorted.

    Backtracks over the cells in index order. Every t-subset of factors gives
    2**t projection constraints (each pattern appears exactly N/2**t times);
    partial sums are capped by that target and a cell is forced once it is
    the last open cell of some constraint.
    """
    if not 1 <= d <= MAX_ENUM_D or not 1 <= N <= MAX_ENUM_N:
        raise ValueError(f"enumeration supports 1 <= d <= {MAX_ENUM_D}, 1 <= N <= {MAX_ENUM_N}")
    _check_t(d, t)
    if N % (1 << t):
        raise ValueError(f"2**t = {1 << t} does not divide N = {N}")
    lam = N >> t
    size = 1 << d

    cons_of_cell: list[list[int]] = [[] for _ in range(size)]
    n_cons = 0
    for subset in itertools.combinations(range(d), t):
        base = n_cons
        for x in range(size):
            pt = index_point(x, d)
            cons_of_cell[x].append(base + point_index(pt[i] for i in subset))
        n_cons += 1 << t
    last_cell = [0] * n_cons
    for x in range(size):
        for c in cons_of_cell[x]:
            last_cell[c] = x

    sums = [0] * n_cons
    counts = [0] * size
    out: list[CountingVector] = []

    def rec(x: int) -> None:
        if x == size:
            out.append(CountingVector(d, tuple(counts)))
            return
        cons = cons_of_cell[x]
        cap = min(lam - sums[c] for c in cons)
        forced = {lam - sums[c] for c in cons if last_cell[c] == x}
        if len(forced) > 1:
            return
        values = forced if forced else range(cap + 1)
        for val in values:
            if val < 0 or val > cap:
                continue
            counts[x] = val
            for c in cons:
                sums[c] += val
            rec(x + 1)
            for c in cons:
                sums[c] -= val
        counts[x] = 0

    rec(0)
    return out


def extend_oas(base: Iterable[CountingVector], t: int) -> list[CountingVector]:
    """All strength-t designs on d+1 factors whose first d factors reproduce a base design.

    Each base cell ``beta`` with count ``u`` splits into ``(u - x, x)`` runs at
    levels 0/1 of the new factor. The new design has strength t iff the base
    does and ``sum(x[beta] for beta containing S) == N / 2**(|S|+1)`` for every
    subset S of old factors with ``|S| <= t-1``. Extending one representative
    per base class reaches every class on d+1 factors.
    """
    out: list[CountingVector] = []
    for u in base:
        if not check_strength(u, t):
            raise ValueError(f"base design {u.counts} does not have strength {t}")
        d, n = u.d, u.N
        size = 1 << d
        subsets = [s for s in range(size) if s.bit_count() <= t - 1]
        targets = {s: n >> (s.bit_count() + 1) for s in subsets}
        cells_of = {s: [b for b in range(size) if b & s == s] for s in subsets}
        covering = [[s for s in subsets if b & s == s] for b in range(size)]
        remaining = {s: sum(u.counts[b] for b in cells_of[s]) for s in subsets}
        sums = dict.fromkeys(subsets, 0)
        x = [0] * size

        def rec(b: int) -> None:
            if b == size:
                if all(sums[s] == targets[s] for s in subsets):
                    out.append(CountingVector(d + 1, tuple(c for i in range(size) for c in (u.counts[i] - x[i], x[i]))))
                return
            cov = covering[b]
            cap = u.counts[b]
            for s in cov:
                remaining[s] -= cap
            hi = min([cap] + [targets[s] - sums[s] for s in cov])
            lo = max([0] + [targets[s] - sums[s] - remaining[s] for s in cov])
            for val in range(lo, hi + 1):
                x[b] = val
                for s in cov:
                    sums[s] += val
                rec(b + 1)
                for s in cov:
                    sums[s] -= val
            x[b] = 0
            for s in cov:
                remaining[s] += cap

        rec(0)
    return sorted(set(out), key=lambda v: v.counts)


def reduce_to_classes(arrays: Iterable[CountingVector]) -> list[tuple[CountingVector, int]]:
    """Canonical representative of each isomorphism class, with the number of inputs in it."""
    arrays = list(arrays)
    dims = {v.d for v in arrays}
    if len(dims) > 1:
        raise ValueError(f"mixed dimensions: {sorted(dims)}")
    tally: dict[CountingVector, int] = {}
    for v in arrays:
        rep = canonical_form(v)
        tally[rep] = tally.get(rep, 0) + 1
    return sorted(tally.items(), key=lambda item: item[0].counts)


def group_order(d: int) -> int:
    return math.factorial(d) << d
