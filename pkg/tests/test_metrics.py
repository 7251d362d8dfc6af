import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oaiso.design import CountingVector, IsoTransform, are_isomorphic_exact, enumerate_oas, pmf, transform_counts
from oaiso.metrics import MatchingMode, d1_brute, d1_wasserstein, d2_brute, d2_wasserstein, diagrams_equal
from oaiso.topology import INF, PersistenceDiagram, diagram_of
from strategies import counting_vectors

F = Fraction
MODES = list(MatchingMode)


def dgm(*dims, zeros=None):
    pts = tuple(tuple(sorted((F(b), INF if e is None else F(e)) for b, e in pts)) for pts in dims)
    return PersistenceDiagram(len(dims), pts, zeros or ())


def random_pmf(rng: random.Random, n: int) -> list[Fraction]:
    w = [rng.randint(0, 5) for _ in range(n)]
    if not any(w):
        w[0] = 1
    s = sum(w)
    return [F(x, s) for x in w]


def random_diagram(rng: random.Random, d: int = 2, with_zero: bool = True) -> PersistenceDiagram:
    dims, zeros = [], []
    for k in range(d):
        pts = []
        for _ in range(rng.randint(0, 4)):
            b = F(rng.randint(0, 20), 20)
            pts.append((b, b + F(rng.randint(1, 10), 20)))
        if k == 0:
            pts.append((F(rng.randint(0, 10), 20), INF))
        dims.append(tuple(sorted(pts)))
        zeros.append(tuple(sorted(F(rng.randint(0, 20), 20) for _ in range(rng.randint(0, 2) if with_zero else 0))))
    return PersistenceDiagram(d, tuple(dims), tuple(zeros))


class TestD1:
    def test_identity(self):
        p = [F(1, 3), F(1, 6), F(1, 6), F(1, 3)]
        assert d1_wasserstein(p, p) == 0

    def test_permuted(self):
        assert d1_wasserstein([F(1, 2), F(1, 4), F(1, 4), 0], [F(1, 4), 0, F(1, 2), F(1, 4)]) == 0

    def test_two_points(self):
        assert d1_wasserstein([1, 0], [F(1, 2), F(1, 2)]) == 1
        assert d1_brute([1, 0], [F(1, 2), F(1, 2)]) == 1
        assert d1_brute([1, 0], [0, 1]) == 0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            d1_wasserstein([1], [F(1, 2), F(1, 2)])

    def test_brute_limit(self):
        with pytest.raises(ValueError):
            d1_brute([F(1, 16)] * 16, [F(1, 16)] * 16)

    @pytest.mark.parametrize("n", [4, 8])
    def test_matches_brute(self, n):
        rng = random.Random(n)
        for _ in range(50):
            a, b = random_pmf(rng, n), random_pmf(rng, n)
            assert d1_wasserstein(a, b) == d1_brute(a, b)

    def test_zero_iff_same_multiset(self):
        rng = random.Random(1)
        for _ in range(200):
            a = random_pmf(rng, 4)
            b = a[:] if rng.random() < 0.5 else random_pmf(rng, 4)
            rng.shuffle(b)
            assert (d1_wasserstein(a, b) == 0) == (sorted(a) == sorted(b))

    def test_pseudometric(self):
        rng = random.Random(2)
        for _ in range(200):
            a, b, c = (random_pmf(rng, 8) for _ in range(3))
            assert d1_wasserstein(a, b) == d1_wasserstein(b, a) >= 0
            assert d1_wasserstein(a, c) <= d1_wasserstein(a, b) + d1_wasserstein(b, c)

    def test_positive_distance_certifies_non_isomorphism(self):
        arrays = enumerate_oas(3, 8, 2) + enumerate_oas(2, 6, 1)
        for a in arrays:
            for b in arrays:
                if a.d == b.d and d1_wasserstein(pmf(a), pmf(b)) > 0:
                    assert not are_isomorphic_exact(a, b)


class TestD2:
    def test_identity(self):
        D = diagram_of(CountingVector(3, (1, 0, 0, 1, 0, 1, 1, 0)))
        for mode in MODES:
            assert d2_wasserstein(D, D, mode) == 0

    def test_bijection_beats_diagonal(self):
        D1, D2 = dgm([(0, 1)]), dgm([(0, 2)])
        for mode in MODES:
            assert d2_wasserstein(D1, D2, mode) == pytest.approx(1.0)
            assert d2_brute(D1, D2, mode) == pytest.approx(1.0)

    def test_unmatched_point(self):
        D1, D2 = dgm([(0, 2)]), dgm([])
        assert d2_wasserstein(D1, D2) == pytest.approx(math.sqrt(2))
        assert d2_brute(D1, D2) == pytest.approx(math.sqrt(2))
        assert d2_wasserstein(D1, D2, "strict") == math.inf
        assert d2_brute(D1, D2, "strict") == math.inf

    def test_essential_by_birth(self):
        D1, D2 = dgm([(F(1, 2), None)]), dgm([(F(1, 4), None)])
        assert d2_wasserstein(D1, D2) == pytest.approx(0.25)
        assert d2_wasserstein(D1, dgm([])) == math.inf

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            d2_wasserstein(dgm([]), dgm([], []))

    def test_brute_limit(self):
        big = dgm([(0, F(k + 1, 10)) for k in range(7)])
        with pytest.raises(ValueError):
            d2_brute(big, big)

    @pytest.mark.parametrize("mode", MODES)
    def test_matches_brute(self, mode):
        rng = random.Random(17)
        for _ in range(100):
            D1, D2 = random_diagram(rng), random_diagram(rng)
            if mode is MatchingMode.STRICT and any(
                len(D1.full_points(k)) != len(D2.full_points(k)) for k in range(2)
            ):
                assert d2_wasserstein(D1, D2, mode) == d2_brute(D1, D2, mode) == math.inf
                continue
            assert d2_wasserstein(D1, D2, mode) == pytest.approx(d2_brute(D1, D2, mode), abs=1e-9)

    def test_strict_counts_zero_persistence(self):
        D1 = dgm([(0, 1), (F(1, 2), None)], zeros=((F(1, 4),),))
        D2 = dgm([(0, 1), (F(1, 2), None)], zeros=((F(3, 4),),))
        assert d2_wasserstein(D1, D2) == 0
        assert d2_wasserstein(D1, D2, "strict") == pytest.approx(math.sqrt(2) / 2)
        assert diagrams_equal(D1, D2) and not diagrams_equal(D1, D2, include_zero=True)

    def test_symmetric_and_triangle(self):
        rng = random.Random(23)
        for _ in range(100):
            A, B, C = (random_diagram(rng) for _ in range(3))
            ab, ba = d2_wasserstein(A, B), d2_wasserstein(B, A)
            assert ab == pytest.approx(ba) and ab >= 0
            assert d2_wasserstein(A, C) <= ab + d2_wasserstein(B, C) + 1e-9

    @given(counting_vectors(min_d=2, max_d=4, max_count=3), counting_vectors(min_d=2, max_d=4, max_count=3))
    @settings(max_examples=150)
    def test_zero_set_on_design_diagrams(self, v, w):
        if v.d != w.d:
            return
        D1, D2 = diagram_of(v), diagram_of(w)
        assert (d2_wasserstein(D1, D2) == 0) == diagrams_equal(D1, D2)
        assert (d2_wasserstein(D1, D2, "strict") == 0) == diagrams_equal(D1, D2, include_zero=True)

    def test_strict_always_comparable_for_designs(self):
        rng = random.Random(4)
        for _ in range(50):
            d = rng.randint(2, 5)
            v = CountingVector(d, tuple(rng.randint(0, 3) for _ in range(1 << d)))
            w = CountingVector(d, tuple(rng.randint(0, 3) for _ in range(1 << d)))
            if v.N and w.N:
                assert d2_wasserstein(diagram_of(v), diagram_of(w), "strict") < math.inf


class TestDiagramsEqual:
    def test_self(self):
        D = diagram_of(CountingVector(2, (2, 1, 1, 2)))
        assert diagrams_equal(D, D, include_zero=True)

    def test_relabeling(self):
        v = CountingVector(3, (3, 0, 1, 2, 0, 1, 4, 1))
        w = transform_counts(v, IsoTransform((2, 0, 1), (0, 0, 0)))
        assert diagrams_equal(diagram_of(v), diagram_of(w), include_zero=True)

    def test_exact_mismatch(self):
        assert not diagrams_equal(dgm([(F(1, 2), F(3, 4))]), dgm([(F(1, 2), F(2, 3))]))
