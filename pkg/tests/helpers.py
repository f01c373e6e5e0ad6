"""Shared construction helpers and hypothesis strategies."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from clustereval.model import Clustering, EvalPair, validate
from clustereval.synth import SynthConfig, generate

# The worked example used throughout: three truth clusters over eight
# instances, the predicted side lumping the last two together.
GOLDEN_TRUTH = (("1", "2", "3"), ("4", "5"), ("6", "7", "8"))
GOLDEN_PRED = (("1", "2", "3"), ("4", "5", "6", "7", "8"))

GOLDEN_TRUTH_TEXT = "1 2 3\n4 5\n6 7 8\n"
GOLDEN_PRED_TEXT = "1 2 3\n4 5 6 7 8\n"


def golden_pair() -> EvalPair:
    truth = Clustering.from_clusters(GOLDEN_TRUTH, role="truth")
    predicted = Clustering.from_clusters(GOLDEN_PRED, role="predicted")
    return validate(truth, predicted)


def clusters_from_labels(labels) -> list[tuple[int, ...]]:
    """Group instance indices 0..n-1 by their label."""
    groups: dict = {}
    for idx, label in enumerate(labels):
        groups.setdefault(label, []).append(idx)
    return [tuple(g) for g in groups.values()]


def pair_from_labels(truth_labels, predicted_labels, mode: str = "strict") -> EvalPair:
    truth = Clustering.from_clusters(clusters_from_labels(truth_labels), role="truth")
    predicted = Clustering.from_clusters(clusters_from_labels(predicted_labels), role="predicted")
    return validate(truth, predicted, mode)


def random_pair(rng: random.Random, max_n: int = 200) -> EvalPair:
    """A random strict pair by independent label assignment."""
    n = rng.randint(1, max_n)
    truth_k = rng.randint(1, n)
    predicted_k = rng.randint(1, n)
    truth_labels = [rng.randrange(truth_k) for _ in range(n)]
    predicted_labels = [rng.randrange(predicted_k) for _ in range(n)]
    return pair_from_labels(truth_labels, predicted_labels)


def random_synth_pair(rng: random.Random, max_n: int = 200) -> EvalPair:
    n = rng.randint(1, max_n)
    config = SynthConfig(
        n_instances=n,
        n_truth_clusters=rng.randint(1, n),
        size_skew=rng.uniform(0.0, 2.5),
        split_rate=rng.random(),
        merge_rate=rng.random(),
        seed=rng.getrandbits(63),
    )
    return generate(config)


@st.composite
def eval_pairs(draw, max_n: int = 50, max_labels: int = 10):
    """Strict pairs from two independent random label assignments."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    labels = st.lists(
        st.integers(min_value=0, max_value=max_labels - 1), min_size=n, max_size=n
    )
    return pair_from_labels(draw(labels), draw(labels))


def triples_close(a, b, tol: float = 1e-12) -> bool:
    return (
        abs(a.recall - b.recall) <= tol
        and abs(a.precision - b.precision) <= tol
        and abs(a.combined - b.combined) <= tol
    )
