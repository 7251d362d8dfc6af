"""Randomized and exhaustive isomorphism checks, plus the experiment harness.

Seeding rule for experiments: ``default_rng(seed)`` draws the sampled pairs,
and pair ``k`` runs its check with ``default_rng(seed + k + 1)``.
"""

from __future__ import annotations

import enum
import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .design import (
    CountingVector,
    Design,
    IsoTransform,
    all_transforms,
    are_isomorphic_exact,
    counting_vector,
    pmf,
    random_transform,
    transform_counts,
)
from .metrics import MatchingMode, d1_wasserstein, d2_wasserstein, diagrams_equal
from .topology import diagram_of, filtration_of

__all__ = [
    "Certificate",
    "SearchMode",
    "IsoVerdict",
    "iso_check",
    "conjecture_scan",
    "ExperimentReport",
    "classification_experiment",
]

log = logging.getLogger(__name__)


class Certificate(str, enum.Enum):
    PMF_DISTANCE_POSITIVE = "PmfDistancePositive"
    DIAGRAM_MATCH_FOUND = "DiagramMatchFound"
    EXHAUSTED = "Exhausted"
    EXHAUSTIVE_NO_MATCH = "ExhaustiveNoMatch"


class SearchMode(str, enum.Enum):
    RANDOM = "random"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class IsoVerdict:
    isomorphic: bool
    certificate: Certificate
    iterations_used: int
    transform: IsoTransform | None = None
    distinct_images: int = 0
    T: int | None = None

    def to_json(self) -> dict:
        return {
            "isomorphic": self.isomorphic,
            "certificate": self.certificate.value,
            "iterations_used": self.iterations_used,
            "distinct_images": self.distinct_images,
            "T": self.T,
            "transform": None if self.transform is None else self.transform.to_json(),
        }


def _counts(f: Design | CountingVector) -> CountingVector:
    return counting_vector(f) if isinstance(f, Design) else f


def _candidates(d: int, T: int, rng: np.random.Generator, mode: SearchMode):
    if mode is SearchMode.RANDOM:
        # the first pass looks at the second design as given, later passes at fresh random images
        yield IsoTransform.identity(d)
        for _ in range(T - 1):
            yield random_transform(rng, d)
    else:
        yield from all_transforms(d)


def iso_check(
    f1: Design | CountingVector,
    f2: Design | CountingVector,
    T: int = 150,
    rng: np.random.Generator | None = None,
    mode: SearchMode | str = SearchMode.RANDOM,
) -> IsoVerdict:
    """Decide isomorphism of two designs from their persistence diagrams.

    A positive pmf distance certifies non-isomorphism immediately. Otherwise
    candidate images ``g * f2`` are screened by their multiset of filtration
    values, and the first image whose diagram equals that of ``f1``,
    zero-persistence pairs included, is returned as the witness. Random mode tries T candidates (the untransformed
    design first); exhaustive mode tries each distinct image under the group.
    """
    v1, v2 = _counts(f1), _counts(f2)
    if v1.d != v2.d:
        raise ValueError(f"dimension mismatch: {v1.d} vs {v2.d}")
    mode = SearchMode(mode)
    if mode is SearchMode.RANDOM and T < 1:
        raise ValueError("T must be at least 1")
    if rng is None:
        rng = np.random.default_rng(0)
    t_field = T if mode is SearchMode.RANDOM else None

    if v1.N != v2.N or d1_wasserstein(pmf(v1), pmf(v2)) > 0:
        return IsoVerdict(False, Certificate.PMF_DISTANCE_POSITIVE, 0, T=t_field)

    screen = filtration_of(v1).multiset()
    dgm1 = diagram_of(v1)
    seen: set[CountingVector] = set()
    iterations = 0
    for g in _candidates(v1.d, T, rng, mode):
        image = transform_counts(v2, g)
        if mode is SearchMode.EXHAUSTIVE and image in seen:
            continue
        iterations += 1
        seen.add(image)
        if filtration_of(image).multiset() != screen:
            continue
        if diagrams_equal(dgm1, diagram_of(image), include_zero=True):
            return IsoVerdict(True, Certificate.DIAGRAM_MATCH_FOUND, iterations, g, len(seen), t_field)

    cert = Certificate.EXHAUSTED if mode is SearchMode.RANDOM else Certificate.EXHAUSTIVE_NO_MATCH
    return IsoVerdict(False, cert, iterations, None, len(seen), t_field)


def conjecture_scan(
    reps: Sequence[Design | CountingVector], mode: MatchingMode | str = MatchingMode.DIAGONAL
) -> dict:
    """Pairwise diagram distances between non-isomorphic representatives.

    ``counterexamples`` lists pairs whose diagrams agree including the
    zero-persistence pairs (distance 0 under the strict bijection): these
    contradict the conjecture that non-isomorphic designs have distinct
    diagrams and are logged at error level. ``diagonal_collisions`` lists the
    weaker coincidences of the positive-persistence points only (distance 0
    in DIAGONAL mode), logged as warnings.
    """
    vs = [_counts(r) for r in reps]
    for (i, a), (j, b) in itertools.combinations(enumerate(vs), 2):
        if a.d != b.d:
            raise ValueError(f"representatives {i} and {j} have different d")
        if are_isomorphic_exact(a, b):
            raise ValueError(f"representatives {i} and {j} are isomorphic")
    dgms = [diagram_of(v) for v in vs]
    pairs, counterexamples, collisions = [], [], []
    for i, j in itertools.combinations(range(len(vs)), 2):
        equal = diagrams_equal(dgms[i], dgms[j])
        equal_full = equal and diagrams_equal(dgms[i], dgms[j], include_zero=True)
        pairs.append(
            {
                "i": i,
                "j": j,
                "d1": str(d1_wasserstein(pmf(vs[i]), pmf(vs[j]))),
                "d2": d2_wasserstein(dgms[i], dgms[j], mode),
                "exact_zero": equal,
                "exact_zero_full": equal_full,
            }
        )
        if equal_full:
            counterexamples.append([i, j])
            log.error("conjecture counterexample: representatives %d and %d have identical diagrams", i, j)
        elif equal:
            collisions.append([i, j])
            log.warning("representatives %d and %d differ only in zero-persistence pairs", i, j)
    return {
        "n_reps": len(vs),
        "n_pairs": len(pairs),
        "mode": MatchingMode(mode).value,
        "min_d2": min((p["d2"] for p in pairs), default=None),
        "counterexamples": counterexamples,
        "diagonal_collisions": collisions,
        "pairs": pairs,
    }


@dataclass
class ExperimentReport:
    d: int | None
    N: int | None
    t: int | None
    T: int
    seed: int
    n_pairs: int
    tp: int = 0
    fn: int = 0
    fp: int = 0
    tn: int = 0
    records: list[dict] = field(default_factory=list)
    wall_clock_s: float = 0.0

    @property
    def errors(self) -> int:
        return self.fn + self.fp

    def payload(self) -> dict:
        """Everything except timing; identical seeds give identical payloads."""
        return {
            "parameters": {"d": self.d, "N": self.N, "t": self.t, "T": self.T, "seed": self.seed, "n_pairs": self.n_pairs},
            "confusion": {"tp": self.tp, "fn": self.fn, "fp": self.fp, "tn": self.tn},
            "records": self.records,
        }

    def to_json(self) -> dict:
        return {**self.payload(), "wall_clock_s": self.wall_clock_s}


def classification_experiment(
    classes: Sequence[Design | CountingVector],
    n_pairs: int,
    T: int,
    seed: int,
    t: int | None = None,
) -> ExperimentReport:
    """Run the randomized check on sampled pairs and score it against the exact oracle.

    Each pair takes a uniformly drawn class i and, with probability 1/2, the
    same class (otherwise a uniformly drawn different one) under a uniform
    random transform.
    """
    vs = [_counts(c) for c in classes]
    report = ExperimentReport(
        d=vs[0].d if vs else None, N=vs[0].N if vs else None, t=t, T=T, seed=seed, n_pairs=n_pairs
    )
    start = time.perf_counter()
    if n_pairs == 0 or not vs:
        report.wall_clock_s = time.perf_counter() - start
        return report
    sampler = np.random.default_rng(seed)
    k = len(vs)
    for idx in range(n_pairs):
        i = int(sampler.integers(k))
        if k == 1 or sampler.random() < 0.5:
            j = i
        else:
            j = int(sampler.integers(k - 1))
            j += j >= i
        g = random_transform(sampler, vs[i].d)
        other = transform_counts(vs[j], g)
        truth = are_isomorphic_exact(vs[i], other)
        verdict = iso_check(vs[i], other, T, np.random.default_rng(seed + idx + 1), SearchMode.RANDOM)
        if verdict.isomorphic and not truth:
            log.error("pair %d: diagram match between non-isomorphic classes %d and %d", idx, i, j)
        if truth:
            report.tp += verdict.isomorphic
            report.fn += not verdict.isomorphic
        else:
            report.fp += verdict.isomorphic
            report.tn += not verdict.isomorphic
        report.records.append(
            {
                "pair": idx,
                "i": i,
                "j": j,
                "transform": g.to_json(),
                "truth": truth,
                "verdict": verdict.isomorphic,
                "certificate": verdict.certificate.value,
                "iterations_used": verdict.iterations_used,
                "distinct_images": verdict.distinct_images,
            }
        )
    report.wall_clock_s = time.perf_counter() - start
    return report
