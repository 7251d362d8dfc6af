"""Sublevel filtration of ``1 - mu`` on the (d-1)-simplex and its persistence diagram.

Each nonzero ``alpha`` is the face spanned by the vertices where it has a 1.
The empty face (``alpha = 0``) is left out, so H0 counts components.
Homology is taken with coefficients in the two-element field; boundary
columns are stored as Python ints used as bitsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .design import CountingVector, Design, MomentVector, counting_vector, moments, pmf

__all__ = [
    "INF",
    "FiltrationError",
    "Filtration",
    "PersistenceDiagram",
    "build_filtration",
    "persistence",
    "betti_at",
    "diagram_of",
    "filtration_of",
    "simplex_order",
]

INF = math.inf


class FiltrationError(ValueError):
    """Raised when a face gets a larger value than one of its cofaces."""


def _dim(mask: int) -> int:
    return mask.bit_count() - 1


def _faces(mask: int) -> Iterator[int]:
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        face = mask ^ low
        if face:
            yield face


@dataclass(frozen=True)
class Filtration:
    d: int
    values: dict[int, Fraction]

    def critical_values(self) -> list[Fraction]:
        return sorted(set(self.values.values()))

    def multiset(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.values.values()))


@dataclass(frozen=True)
class PersistenceDiagram:
    """Points per homology dimension, each a sorted tuple of (birth, death).

    Deaths are exact Fractions or ``INF``. Pairs with birth == death carry no
    persistence and are kept out of ``points``; their common values go to
    ``zero_points`` (sorted, per dimension), which plain equality ignores.
    """

    d: int
    points: tuple[tuple[tuple[Fraction, Fraction | float], ...], ...]
    zero_points: tuple[tuple[Fraction, ...], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.zero_points:
            object.__setattr__(self, "zero_points", ((),) * self.d)

    @property
    def n_zero_persistence(self) -> int:
        return sum(len(z) for z in self.zero_points)

    def full_points(self, k: int) -> tuple[tuple[Fraction, Fraction | float], ...]:
        """Points of dimension k with the zero-persistence pairs put back."""
        return tuple(sorted(self.points[k] + tuple((v, v) for v in self.zero_points[k])))

    def finite(self, k: int) -> list[tuple[Fraction, Fraction]]:
        return [p for p in self.points[k] if p[1] != INF]

    def essential(self, k: int) -> list[Fraction]:
        return [b for b, dth in self.points[k] if dth == INF]

    def alive(self, k: int, s: Fraction) -> int:
        return sum(1 for b, dth in self.points[k] if b <= s < dth)

    def to_json(self, include_zero: bool = False) -> dict[str, list[dict]]:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            str(k): [
                {
                    "birth": frac(b),
                    "death": "inf" if dth == INF else frac(dth),
                    "birth_f": float(b),
                    "death_f": None if dth == INF else float(dth),
                }
                for b, dth in (self.full_points(k) if include_zero else self.points[k])
            ]
            for k in range(self.d)
        }

    @classmethod
    def from_json(cls, obj: dict[str, list[dict]]) -> "PersistenceDiagram":
        d = len(obj)
        points, zeros = [], []
        for k in range(d):
            pts, zs = [], []
            for p in obj[str(k)]:
                birth = Fraction(p["birth"])
                death = INF if p["death"] == "inf" else Fraction(p["death"])
                if birth == death:
                    zs.append(birth)
                else:
                    pts.append((birth, death))
            points.append(tuple(sorted(pts)))
            zeros.append(tuple(sorted(zs)))
        return cls(d, tuple(points), tuple(zeros))


def build_filtration(mu: MomentVector) -> Filtration:
    values = {mask: 1 - mu.mu[mask] for mask in range(1, 1 << mu.d)}
    for mask, val in values.items():
        if not 0 <= val <= 1:
            raise FiltrationError(f"value {val} of face {mask:0{mu.d}b} is outside [0, 1]")
        for face in _faces(mask):
            if values[face] > val:
                raise FiltrationError(
                    f"face {face:0{mu.d}b} has value {values[face]} > {val} of coface {mask:0{mu.d}b}"
                )
    return Filtration(mu.d, values)


def simplex_order(filt: Filtration) -> list[int]:
    """Masks sorted by (value, dimension, mask); faces always precede cofaces."""
    return sorted(filt.values, key=lambda m: (filt.values[m], _dim(m), m))


def _check_monotone(filt: Filtration) -> None:
    for mask, val in filt.values.items():
        for face in _faces(mask):
            if filt.values[face] > val:
                raise FiltrationError(f"face {face:0{filt.d}b} enters after its coface {mask:0{filt.d}b}")


def persistence(filt: Filtration) -> PersistenceDiagram:
    _check_monotone(filt)
    order = simplex_order(filt)
    pos = {mask: i for i, mask in enumerate(order)}
    pivot_owner: dict[int, int] = {}
    paired: set[int] = set()
    pts: list[list[tuple[Fraction, Fraction | float]]] = [[] for _ in range(filt.d)]
    zeros: list[list[Fraction]] = [[] for _ in range(filt.d)]

    for j, mask in enumerate(order):
        col = 0
        for face in _faces(mask):
            col |= 1 << pos[face]
        while col:
            low = col.bit_length() - 1
            other = pivot_owner.get(low)
            if other is None:
                break
            col ^= other
        if col:
            low = col.bit_length() - 1
            pivot_owner[low] = col
            paired.update((low, j))
            birth_mask = order[low]
            birth, death = filt.values[birth_mask], filt.values[mask]
            if birth == death:
                zeros[_dim(birth_mask)].append(birth)
            else:
                pts[_dim(birth_mask)].append((birth, death))

    for i, mask in enumerate(order):
        if i not in paired:
            pts[_dim(mask)].append((filt.values[mask], INF))

    return PersistenceDiagram(
        filt.d, tuple(tuple(sorted(p)) for p in pts), tuple(tuple(sorted(z)) for z in zeros)
    )


def _rank_gf2(rows: list[int]) -> int:
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top not in basis:
                basis[top] = row
                break
            row ^= basis[top]
    return len(basis)


def betti_at(filt: Filtration, s: Fraction) -> tuple[int, ...]:
    """Betti numbers of the subcomplex of faces with value <= s, from boundary ranks."""
    present = [m for m, v in filt.values.items() if v <= s]
    by_dim: list[list[int]] = [[] for _ in range(filt.d)]
    for m in present:
        by_dim[_dim(m)].append(m)
    ranks = [0] * (filt.d + 1)
    for k in range(1, filt.d):
        index = {m: i for i, m in enumerate(by_dim[k - 1])}
        cols = []
        for m in by_dim[k]:
            col = 0
            for face in _faces(m):
                col |= 1 << index[face]
            cols.append(col)
        ranks[k] = _rank_gf2(cols)
    return tuple(len(by_dim[k]) - ranks[k] - ranks[k + 1] for k in range(filt.d))


def filtration_of(v: CountingVector | Design) -> Filtration:
    if isinstance(v, Design):
        v = counting_vector(v)
    return build_filtration(moments(pmf(v)))


def diagram_of(v: CountingVector | Design) -> PersistenceDiagram:
    return persistence(filtration_of(v))
