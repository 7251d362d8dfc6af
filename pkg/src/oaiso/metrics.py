"""Wasserstein distances between pmfs and between persistence diagrams."""

from __future__ import annotations

import enum
import itertools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .design import Pmf
from .topology import INF, PersistenceDiagram

__all__ = [
    "MatchingMode",
    "d1_wasserstein",
    "d1_brute",
    "d2_wasserstein",
    "d2_brute",
    "diagrams_equal",
]

D1_BRUTE_MAX = 8
D2_BRUTE_MAX = 6


class MatchingMode(str, enum.Enum):
    DIAGONAL = "diagonal"
    STRICT = "strict"


def _probs(p: Pmf | Sequence[Fraction]) -> list[Fraction]:
    return list(p.probs) if isinstance(p, Pmf) else [Fraction(x) for x in p]


def d1_wasserstein(p1: Pmf | Sequence[Fraction], p2: Pmf | Sequence[Fraction]) -> Fraction:
    """Minimum over permutations of the l1 gap; sorting both vectors is optimal."""
    a, b = _probs(p1), _probs(p2)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((abs(x - y) for x, y in zip(sorted(a), sorted(b))), Fraction(0))


def d1_brute(p1: Pmf | Sequence[Fraction], p2: Pmf | Sequence[Fraction]) -> Fraction:
    """Exact minimum over every permutation, by depth-first search with pruning."""
    a, b = _probs(p1), _probs(p2)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) > D1_BRUTE_MAX:
        raise ValueError(f"brute force limited to length {D1_BRUTE_MAX}")
    scale = math.lcm(*(x.denominator for x in a + b))
    ia = [int(x * scale) for x in a]
    ib = [int(x * scale) for x in b]
    n = len(ia)
    best = sum(abs(x - y) for x, y in zip(ia, ib))

    def rec(i: int, used: int, acc: int) -> None:
        nonlocal best
        if acc >= best:
            return
        if i == n:
            best = acc
            return
        for j in range(n):
            if not used >> j & 1:
                rec(i + 1, used | 1 << j, acc + abs(ia[i] - ib[j]))

    rec(0, 0, 0)
    return Fraction(best, scale)


def _mode(mode: MatchingMode | str) -> MatchingMode:
    return MatchingMode(mode)


def _to_diag(p: tuple[float, float]) -> float:
    return (p[1] - p[0]) / math.sqrt(2.0)


def _float_pts(pts) -> list[tuple[float, float]]:
    return [(float(b), float(d)) for b, d in pts]


def _finite_cost(a: list[tuple[float, float]], b: list[tuple[float, float]], mode: MatchingMode) -> float:
    n, m = len(a), len(b)
    if mode is MatchingMode.STRICT:
        if n != m:
            return math.inf
        if n == 0:
            return 0.0
        cost = np.array([[math.dist(x, y) for y in b] for x in a])
        rows, cols = linear_sum_assignment(cost)
        return float(cost[rows, cols].sum())
    if n + m == 0:
        return 0.0
    # rows: a points, then diagonal slots for b; cols: b points, then diagonal slots for a
    cost = np.zeros((n + m, m + n))
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            cost[i, j] = math.dist(x, y)
        cost[i, m:] = _to_diag(x)
    for j, y in enumerate(b):
        cost[n:, j] = _to_diag(y)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum())


def _essential_cost(a: list[Fraction], b: list[Fraction]) -> float:
    if len(a) != len(b):
        return math.inf
    return float(sum((abs(x - y) for x, y in zip(sorted(a), sorted(b))), Fraction(0)))


def _finite_for(D: PersistenceDiagram, k: int, mode: MatchingMode) -> list[tuple[float, float]]:
    # a zero-persistence point sits on the diagonal: free in DIAGONAL mode, a real point in STRICT mode
    if mode is MatchingMode.STRICT:
        return _float_pts(p for p in D.full_points(k) if p[1] != INF)
    return _float_pts(D.finite(k))


def _check_dims(D1: PersistenceDiagram, D2: PersistenceDiagram) -> None:
    if D1.d != D2.d:
        raise ValueError(f"diagrams come from different d: {D1.d} vs {D2.d}")


def d2_wasserstein(
    D1: PersistenceDiagram, D2: PersistenceDiagram, mode: MatchingMode | str = MatchingMode.DIAGONAL
) -> float:
    """Order-1 matching cost with Euclidean ground metric, summed over homology dimensions.

    Finite points are matched by an assignment problem. DIAGONAL mode lets
    any point go to its orthogonal projection on the diagonal; STRICT mode is
    a plain bijection that also counts the zero-persistence pairs, so two
    diagrams of the same d always have equal cardinalities. Essential points
    are matched by birth. Returns ``inf`` when the diagrams are incomparable:
    unequal essential counts, or unequal finite counts in STRICT mode.
    """
    _check_dims(D1, D2)
    mode = _mode(mode)
    total = 0.0
    for k in range(D1.d):
        total += _essential_cost(D1.essential(k), D2.essential(k))
        total += _finite_cost(_finite_for(D1, k, mode), _finite_for(D2, k, mode), mode)
    return total


def _brute_finite(a: list[tuple[float, float]], b: list[tuple[float, float]], mode: MatchingMode) -> float:
    if mode is MatchingMode.STRICT:
        if len(a) != len(b):
            return math.inf
        return min(
            (sum(math.dist(x, b[j]) for x, j in zip(a, perm)) for perm in itertools.permutations(range(len(b)))),
            default=0.0,
        )

    best = math.inf

    def rec(i: int, used: frozenset[int], acc: float) -> None:
        nonlocal best
        if acc >= best:
            return
        if i == len(a):
            rest = sum(_to_diag(y) for j, y in enumerate(b) if j not in used)
            best = min(best, acc + rest)
            return
        rec(i + 1, used, acc + _to_diag(a[i]))
        for j in range(len(b)):
            if j not in used:
                rec(i + 1, used | {j}, acc + math.dist(a[i], b[j]))

    rec(0, frozenset(), 0.0)
    return best


def d2_brute(
    D1: PersistenceDiagram, D2: PersistenceDiagram, mode: MatchingMode | str = MatchingMode.DIAGONAL
) -> float:
    """Exhaustive counterpart of d2_wasserstein over every (partial) matching."""
    _check_dims(D1, D2)
    mode = _mode(mode)
    total = 0.0
    for k in range(D1.d):
        a, b = _finite_for(D1, k, mode), _finite_for(D2, k, mode)
        if max(len(a), len(b)) > D2_BRUTE_MAX:
            raise ValueError(f"brute force limited to {D2_BRUTE_MAX} finite points per dimension")
        ea, eb = D1.essential(k), D2.essential(k)
        if len(ea) != len(eb):
            return math.inf
        if len(ea) > D2_BRUTE_MAX:
            raise ValueError(f"brute force limited to {D2_BRUTE_MAX} essential points per dimension")
        total += min(
            (float(sum(abs(x - eb[j]) for x, j in zip(ea, perm))) for perm in itertools.permutations(range(len(eb)))),
            default=0.0,
        )
        total += _brute_finite(a, b, mode)
    return total


def diagrams_equal(D1: PersistenceDiagram, D2: PersistenceDiagram, include_zero: bool = False) -> bool:
    """Exact multiset equality per dimension.

    With ``include_zero`` the zero-persistence pairs are compared too. That is
    the exact zero set of STRICT mode, and it forces the two filtrations to
    be permutations of one another compatible with the pairing; the
    isomorphism check relies on it.
    """
    _check_dims(D1, D2)
    if D1.points != D2.points:
        return False
    return not include_zero or D1.zero_points == D2.zero_points
