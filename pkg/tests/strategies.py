"""Hypothesis strategies and brute-force helpers shared by the tests."""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from oaiso.design import CountingVector


@st.composite
def counting_vectors(draw, min_d=1, max_d=4, max_count=4):
    d = draw(st.integers(min_d, max_d))
    counts = draw(st.lists(st.integers(0, max_count), min_size=1 << d, max_size=1 << d))
    if sum(counts) == 0:
        counts[draw(st.integers(0, (1 << d) - 1))] = 1
    return CountingVector(d, tuple(counts))


def brute_moments(runs, d):
    """E[prod x_i^a_i] straight from the runs, alpha in lexicographic order."""
    n = len(runs)
    out = []
    for alpha in itertools.product((0, 1), repeat=d):
        hits = sum(1 for r in runs if all(x == 1 for x, a in zip(r, alpha) if a))
        out.append(Fraction(hits, n))
    return out


def all_compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in all_compositions(total - first, parts - 1):
            yield (first,) + rest
