"""Clustering data model: partitions, identifier interning, pair validation.

A :class:`Clustering` is a partition of opaque instance ids into disjoint,
non-empty clusters. :func:`validate` pairs a truth clustering with a
predicted one, interns every raw id to a dense integer index, and returns an
immutable :class:`EvalPair` that all evaluators consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import chain
from typing import Hashable, Iterable

from .errors import (
    DuplicateInstance,
    EmptyClustering,
    ExtraInPredicted,
    MissingFromPredicted,
    ValidationError,
)

COVERAGE_MODES = ("strict", "lenient")


def harmonic_mean(recall: float, precision: float) -> float:
    """2rp/(r+p), defined as 0 when both inputs are 0."""
    total = recall + precision
    if total == 0:
        return 0.0
    return 2.0 * recall * precision / total


def geometric_mean(recall: float, precision: float) -> float:
    return math.sqrt(recall * precision)


@dataclass(frozen=True)
class MetricTriple:
    """Recall, precision and their combined score for one measure."""

    recall: float
    precision: float
    combined: float
    mean_kind: str  # "harmonic" | "geometric"

    @classmethod
    def harmonic(cls, recall: float, precision: float) -> "MetricTriple":
        return cls(recall, precision, harmonic_mean(recall, precision), "harmonic")

    @classmethod
    def geometric(cls, recall: float, precision: float) -> "MetricTriple":
        return cls(recall, precision, geometric_mean(recall, precision), "geometric")


@dataclass(frozen=True)
class SplitLumpResult:
    """Raw splitting/lumping error rates plus their recall/precision conversion.

    The conversion is recall = 1 - se, precision = 1 - le, combined harmonic.
    """

    se: float
    le: float
    converted: MetricTriple


@dataclass(frozen=True)
class ReportStats:
    n_truth_clusters: int
    n_predicted_clusters: int
    n_instances: int
    pair_tr_sum: int
    pair_pr_sum: int
    pair_int_sum: int


@dataclass(frozen=True)
class FullReport:
    """All five measures plus input statistics from one evaluation run."""

    cluster_f: MetricTriple
    k_metric: MetricTriple
    b_cubed: MetricTriple
    se_le: SplitLumpResult
    pairwise: MetricTriple
    stats: ReportStats
    flags: tuple[str, ...]


@dataclass(frozen=True)
class Clustering:
    """A partition of instance ids into disjoint, non-empty clusters.

    ``clusters`` preserves construction order; instances inside a cluster
    keep their given order (sets are canonicalized by sorting on ``str``),
    which makes everything downstream deterministic.
    """

    clusters: tuple[tuple[Hashable, ...], ...]
    n_instances: int
    role: str  # "truth" | "predicted"

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[Hashable]], role: str = "truth") -> "Clustering":
        canon = []
        for pos, cluster in enumerate(clusters):
            if isinstance(cluster, (set, frozenset)):
                members = tuple(sorted(cluster, key=str))
            else:
                members = tuple(cluster)
            if not members:
                raise ValidationError(f"{role} cluster at position {pos} is empty")
            canon.append(members)
        total = sum(len(c) for c in canon)
        if len(set(chain.from_iterable(canon))) != total:
            seen = set()
            for cluster in canon:
                for instance in cluster:
                    if instance in seen:
                        raise DuplicateInstance(instance)
                    seen.add(instance)
        return cls(tuple(canon), total, role)

    def instance_set(self) -> set:
        return set(chain.from_iterable(self.clusters))

    def partition(self) -> frozenset:
        """Order-insensitive view, for partition-equality comparisons."""
        return frozenset(frozenset(c) for c in self.clusters)


@dataclass(frozen=True)
class EvalPair:
    """A validated (truth, predicted) pair with ids interned to dense ints.

    ``instances[d]`` is the raw id behind dense index ``d``; dense indices
    are contiguous from 0, truth instances first, then (in lenient mode)
    predicted-only extras.
    """

    truth: Clustering
    predicted: Clustering
    coverage_mode: str
    instances: tuple[Hashable, ...]
    truth_dense: tuple[tuple[int, ...], ...]
    predicted_dense: tuple[tuple[int, ...], ...]
    flags: tuple[str, ...]

    @property
    def n_instances(self) -> int:
        """N: the number of truth-side instances."""
        return self.truth.n_instances


def validate(truth: Clustering, predicted: Clustering, mode: str = "strict") -> EvalPair:
    """Check coverage between the two clusterings and intern instance ids.

    Strict mode requires identical instance sets. Lenient mode lets the
    predicted clustering carry extra instances (they stay in the predicted
    cluster sizes and pair totals, and are reported in ``flags``); truth
    instances missing from predicted are fatal in both modes.
    """
    if mode not in COVERAGE_MODES:
        raise ValueError(f"unknown coverage mode {mode!r}")
    if not truth.clusters:
        raise EmptyClustering("truth clustering has no clusters")
    if not predicted.clusters:
        raise EmptyClustering("predicted clustering has no clusters")

    truth_ids = truth.instance_set()
    predicted_ids = predicted.instance_set()
    missing = truth_ids - predicted_ids
    if missing:
        raise MissingFromPredicted(missing)
    extra = predicted_ids - truth_ids
    flags: tuple[str, ...] = ()
    if extra:
        if mode == "strict":
            raise ExtraInPredicted(extra)
        flags = (f"extra_in_predicted: {len(extra)} instance(s) appear only in the predicted clustering",)

    dense: dict[Hashable, int] = {}
    for cluster in truth.clusters:
        for raw in cluster:
            dense[raw] = len(dense)
    if extra:
        for cluster in predicted.clusters:
            for raw in cluster:
                if raw not in dense:
                    dense[raw] = len(dense)

    lookup = dense.__getitem__
    truth_dense = tuple(tuple(map(lookup, c)) for c in truth.clusters)
    predicted_dense = tuple(tuple(map(lookup, c)) for c in predicted.clusters)
    return EvalPair(
        truth=truth,
        predicted=predicted,
        coverage_mode=mode,
        instances=tuple(dense),
        truth_dense=truth_dense,
        predicted_dense=predicted_dense,
        flags=flags,
    )
