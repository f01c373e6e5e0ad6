"""Brute-force reference implementations of the five measures.

These follow each measure's definition literally: nested cluster-by-cluster
set intersections, per-instance cluster lookups, and materialized pair sets.
They are intentionally slow and share nothing with the single-pass engine
beyond the core data model, so agreement between the two engines is a
meaningful correctness check. Use them on small inputs only; pair
enumeration is capped by a budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import PairBudgetExceeded
from .model import (
    EvalPair,
    FullReport,
    MetricTriple,
    ReportStats,
    SplitLumpResult,
)

DEFAULT_PAIR_BUDGET = 100_000_000

FLAG_DEGENERATE_RECALL = "degenerate_pairwise_recall: no instance pairs in truth clusters; recall defined as 1.0"
FLAG_DEGENERATE_PRECISION = (
    "degenerate_pairwise_precision: no instance pairs in predicted clusters; precision defined as 1.0"
)


def iter_pairs(cluster: Iterable[int]) -> Iterator[tuple[int, int]]:
    """All unordered instance pairs of one cluster, smaller id first."""
    return combinations(sorted(cluster), 2)


@dataclass(frozen=True)
class PairSet:
    """The set of unordered same-cluster instance pairs of a clustering."""

    pairs: frozenset

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[int]]) -> "PairSet":
        pairs = set()
        for cluster in clusters:
            pairs.update(iter_pairs(cluster))
        return cls(frozenset(pairs))

    def __len__(self) -> int:
        return len(self.pairs)


def cluster_f(pair: EvalPair) -> MetricTriple:
    """Count predicted clusters that equal a truth cluster, by set equality."""
    truth_sets = [frozenset(c) for c in pair.truth_dense]
    predicted_sets = [frozenset(c) for c in pair.predicted_dense]
    matches = 0
    for p in predicted_sets:
        for t in truth_sets:
            if p == t:
                matches += 1
    return MetricTriple.harmonic(matches / len(truth_sets), matches / len(predicted_sets))


def k_metric(pair: EvalPair) -> MetricTriple:
    """Purity sums via explicit intersections, in the definitional orders.

    The recall sum walks truth clusters against predicted ones; the
    precision sum walks predicted clusters against truth ones.
    """
    truth_sets = [frozenset(c) for c in pair.truth_dense]
    predicted_sets = [frozenset(c) for c in pair.predicted_dense]
    n = sum(len(t) for t in truth_sets)
    aap = 0.0
    for t in truth_sets:
        for p in predicted_sets:
            overlap = len(t & p)
            aap += overlap * overlap / len(t)
    acp = 0.0
    for p in predicted_sets:
        for t in truth_sets:
            overlap = len(p & t)
            acp += overlap * overlap / len(p)
    return MetricTriple.geometric(aap / n, acp / n)


def b_cubed(pair: EvalPair) -> MetricTriple:
    """Instance-level recall/precision, one lookup and intersection per instance."""
    truth_sets = [frozenset(c) for c in pair.truth_dense]
    predicted_sets = [frozenset(c) for c in pair.predicted_dense]
    n = 0
    recall_sum = 0.0
    precision_sum = 0.0
    for truth_cluster in truth_sets:
        for t in sorted(truth_cluster):
            n += 1
            own_truth = next(c for c in truth_sets if t in c)
            own_predicted = next(c for c in predicted_sets if t in c)
            overlap = len(own_predicted & own_truth)
            recall_sum += overlap / len(own_truth)
            precision_sum += overlap / len(own_predicted)
    return MetricTriple.harmonic(recall_sum / n, precision_sum / n)


def split_lump(pair: EvalPair) -> SplitLumpResult:
    """Splitting/lumping errors via explicit set differences.

    The best-matching predicted cluster for a truth cluster is the one with
    the largest overlap; ties prefer the smaller cluster, then the smaller
    index — the same rule the single-pass engine documents.
    """
    truth_sets = [frozenset(c) for c in pair.truth_dense]
    predicted_sets = [frozenset(c) for c in pair.predicted_dense]
    split_instances = 0
    truth_instances = 0
    lumped_instances = 0
    matched_instances = 0
    for t in truth_sets:
        best = None
        for idx, p in enumerate(predicted_sets):
            rank = (-len(t & p), len(p), idx)
            if best is None or rank < best:
                best = rank
        matched = predicted_sets[best[2]]
        split_instances += len(t - matched)
        lumped_instances += len(matched - t)
        truth_instances += len(t)
        matched_instances += len(matched)
    se = split_instances / truth_instances
    le = lumped_instances / matched_instances
    return SplitLumpResult(se, le, MetricTriple.harmonic(1.0 - se, 1.0 - le))


def _pair_demand(pair: EvalPair) -> int:
    sides = list(pair.truth_dense) + list(pair.predicted_dense)
    return sum(len(c) * (len(c) - 1) // 2 for c in sides)


def pairwise_f(pair: EvalPair, pair_budget: int = DEFAULT_PAIR_BUDGET) -> MetricTriple:
    """Materialize both pair sets and intersect them.

    Raises :class:`PairBudgetExceeded` when enumeration would produce more
    pairs than ``pair_budget``; the zero-pair sides are defined as 1.0 like
    in the single-pass engine.
    """
    needed = _pair_demand(pair)
    if needed > pair_budget:
        raise PairBudgetExceeded(needed, pair_budget)
    truth_pairs = PairSet.from_clusters(pair.truth_dense).pairs
    predicted_pairs = PairSet.from_clusters(pair.predicted_dense).pairs
    shared = len(truth_pairs & predicted_pairs)
    recall = shared / len(truth_pairs) if truth_pairs else 1.0
    precision = shared / len(predicted_pairs) if predicted_pairs else 1.0
    return MetricTriple.harmonic(recall, precision)


def evaluate_all(pair: EvalPair, pair_budget: int = DEFAULT_PAIR_BUDGET) -> FullReport:
    """Full report from the five brute-force measures.

    Pair statistics come from the materialized pair sets, not from any
    closed form, keeping the report fully independent of the single-pass
    engine.
    """
    needed = _pair_demand(pair)
    if needed > pair_budget:
        raise PairBudgetExceeded(needed, pair_budget)
    truth_pairs = PairSet.from_clusters(pair.truth_dense).pairs
    predicted_pairs = PairSet.from_clusters(pair.predicted_dense).pairs
    shared = len(truth_pairs & predicted_pairs)

    flags = list(pair.flags)
    if truth_pairs:
        recall = shared / len(truth_pairs)
    else:
        recall = 1.0
        flags.append(FLAG_DEGENERATE_RECALL)
    if predicted_pairs:
        precision = shared / len(predicted_pairs)
    else:
        precision = 1.0
        flags.append(FLAG_DEGENERATE_PRECISION)

    return FullReport(
        cluster_f=cluster_f(pair),
        k_metric=k_metric(pair),
        b_cubed=b_cubed(pair),
        se_le=split_lump(pair),
        pairwise=MetricTriple.harmonic(recall, precision),
        stats=ReportStats(
            n_truth_clusters=len(pair.truth_dense),
            n_predicted_clusters=len(pair.predicted_dense),
            n_instances=sum(len(c) for c in pair.truth_dense),
            pair_tr_sum=len(truth_pairs),
            pair_pr_sum=len(predicted_pairs),
            pair_int_sum=shared,
        ),
        flags=tuple(flags),
    )
