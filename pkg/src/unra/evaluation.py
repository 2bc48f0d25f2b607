"""Classification-based evaluation of document embeddings.

Labeled documents are represented by their linked nodes' trained vectors and
scored with a from-scratch one-vs-rest linear classifier under repeated
stratified train/test splits of varying size.  The embedding is trained once;
only the classifier ever sees the splits.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import ValidationError
from .model import EmbeddingModel
from .netio import HeteroNetwork

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1
_SPLIT_STREAM = 0xEA1
_FIT_STREAM = 0xC1F


def split_labels(
    labels: Mapping[int, str], fraction: float, rng
) -> tuple[list[int], list[int]]:
    """Stratified-ish split: random, but redrawn until every class is in train.

    The train side gets round(fraction * n) ids clamped to [1, n - 1].  Draws
    that miss a class are rejected, at most 100 times.  ``rng`` is a numpy
    Generator or a seed.
    """
    if not 0.0 < fraction < 1.0:
        raise ValidationError("fraction must lie strictly between 0 and 1")
    ids = sorted(labels)
    n = len(ids)
    if n < 2:
        raise ValidationError("need at least 2 labeled documents to split")
    classes = set(labels.values())
    train_size = min(n - 1, max(1, int(round(fraction * n))))
    if train_size < len(classes):
        raise ValidationError(
            f"train size {train_size} cannot cover {len(classes)} classes"
        )
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    for _ in range(100):
        perm = rng.permutation(n)
        train = [ids[i] for i in perm[:train_size]]
        if {labels[i] for i in train} == classes:
            return sorted(train), sorted(ids[i] for i in perm[train_size:])
    raise ValidationError("no class-covering split found in 100 draws")


@dataclass
class LinearClassifier:
    classes: list[str]
    weights: np.ndarray  # (n_classes, dim)
    biases: np.ndarray   # (n_classes,)

    def decision(self, vectors: np.ndarray) -> np.ndarray:
        return vectors @ self.weights.T + self.biases

    def predict(self, vectors: np.ndarray) -> list[str]:
        # argmax takes the first maximum, so ties go to the lexically smaller class
        return [self.classes[i] for i in np.argmax(self.decision(vectors), axis=1)]


def fit_linear_ovr(
    vectors: np.ndarray,
    labels: Sequence[str],
    epochs: int = 100,
    learning_rate: float = 0.1,
    l2: float = 1e-4,
    rng=0,
) -> LinearClassifier:
    """Train one-vs-rest hinge-loss linear separators by shuffled SGD.

    The epoch rate is learning_rate / (1 + epoch); each sample shrinks all
    weights by the l2 factor and bumps the rows whose class margin is under 1.
    """
    if len(vectors) != len(labels) or len(labels) == 0:
        raise ValidationError("need equally many vectors and labels, at least one")
    classes = sorted(set(labels))
    if len(classes) < 2:
        raise ValidationError("need at least 2 classes to fit a classifier")
    class_index = {c: i for i, c in enumerate(classes)}
    y = np.array([class_index[lab] for lab in labels])
    n, dim = vectors.shape
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng

    weights = np.zeros((len(classes), dim))
    biases = np.zeros(len(classes))
    sign = np.empty(len(classes))
    for epoch in range(epochs):
        lr = learning_rate / (1.0 + epoch)
        for i in rng.permutation(n):
            x = vectors[i]
            sign.fill(-1.0)
            sign[y[i]] = 1.0
            margins = sign * (weights @ x + biases)
            active = margins < 1.0
            weights *= 1.0 - lr * l2
            if active.any():
                weights[active] += lr * np.outer(sign[active], x)
                biases[active] += lr * sign[active]
    return LinearClassifier(classes=classes, weights=weights, biases=biases)


def f1_scores(predicted: Sequence[str], gold: Sequence[str]) -> tuple[float, float]:
    """(macro, micro) F1 over the classes present in gold; 0/0 ratios count as 0.

    Macro averages per-class F1; micro pools true/false positives and
    negatives across classes, which for single-label data makes it accuracy
    whenever every prediction is a known class.
    """
    if len(predicted) != len(gold) or not gold:
        raise ValidationError("predicted and gold must be equally long and non-empty")
    classes = sorted(set(gold))
    f1s = []
    tp_sum = fp_sum = fn_sum = 0
    for c in classes:
        tp = sum(1 for p, g in zip(predicted, gold) if p == c and g == c)
        fp = sum(1 for p, g in zip(predicted, gold) if p == c and g != c)
        fn = sum(1 for p, g in zip(predicted, gold) if p != c and g == c)
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / (tp + fn) if tp + fn else 0.0
        f1s.append(2 * prec * rec / (prec + rec) if prec + rec else 0.0)
        tp_sum += tp
        fp_sum += fp
        fn_sum += fn
    macro = sum(f1s) / len(f1s)
    micro_p = tp_sum / (tp_sum + fp_sum) if tp_sum + fp_sum else 0.0
    micro_r = tp_sum / (tp_sum + fn_sum) if tp_sum + fn_sum else 0.0
    micro = (
        2 * micro_p * micro_r / (micro_p + micro_r) if micro_p + micro_r else 0.0
    )
    return macro, micro


@dataclass
class EvalRow:
    fraction: float
    repeat: int
    macro_f1: float
    micro_f1: float


@dataclass
class EvalReport:
    seed: int
    vector_source: str
    rows: list[EvalRow] = field(default_factory=list)

    def fractions(self) -> list[float]:
        seen: list[float] = []
        for row in self.rows:
            if row.fraction not in seen:
                seen.append(row.fraction)
        return seen

    def summary(self) -> list[tuple[float, float, float, float, float]]:
        """Per fraction: (fraction, macro mean, macro sd, micro mean, micro sd)."""
        out = []
        for frac in self.fractions():
            macros = [r.macro_f1 for r in self.rows if r.fraction == frac]
            micros = [r.micro_f1 for r in self.rows if r.fraction == frac]
            ddof = 1 if len(macros) > 1 else 0
            out.append(
                (
                    frac,
                    float(np.mean(macros)),
                    float(np.std(macros, ddof=ddof)),
                    float(np.mean(micros)),
                    float(np.std(micros, ddof=ddof)),
                )
            )
        return out

    def tsv_lines(self) -> list[str]:
        lines = ["fraction\trepeat\tmacro_f1\tmicro_f1"]
        for r in self.rows:
            lines.append(f"{r.fraction:g}\t{r.repeat}\t{r.macro_f1:.6f}\t{r.micro_f1:.6f}")
        for frac, mmean, msd, umean, usd in self.summary():
            lines.append(
                f"# fraction {frac:g}: macro {mmean:.4f} +- {msd:.4f}, "
                f"micro {umean:.4f} +- {usd:.4f}"
            )
        return lines


def document_vectors(
    model: EmbeddingModel, network: HeteroNetwork, vector_source: str = "first"
) -> tuple[list[int], np.ndarray]:
    """Vectors for labeled documents: first linked node's, or the mean over links.

    Labeled documents with no links or with only unembedded nodes are dropped
    with a warning.
    """
    if vector_source not in ("first", "mean"):
        raise ValidationError(f"unknown vector source {vector_source!r}")
    ids = []
    vecs = []
    dropped = 0
    for idx in network.labels:
        refs = network.links.get(idx, [])
        rows = [model.rows[r.render()] for r in refs if r.render() in model.rows]
        if not rows:
            dropped += 1
            continue
        if vector_source == "first":
            vecs.append(model.vectors[rows[0]])
        else:
            vecs.append(model.vectors[rows].mean(axis=0))
        ids.append(idx)
    if dropped:
        log.warning("dropped %d labeled documents without embeddable links", dropped)
    if not ids:
        raise ValidationError("no labeled documents with embeddable links")
    return ids, np.array(vecs)


def evaluate(
    model: EmbeddingModel,
    network: HeteroNetwork,
    fractions: Sequence[float] = (0.1, 0.2, 0.3, 0.4, 0.5),
    repeats: int = 20,
    seed: int = 1,
    vector_source: str = "first",
    epochs: int = 100,
    learning_rate: float = 0.1,
    l2: float = 1e-4,
) -> EvalReport:
    """Score one fixed embedding across repeated splits of each train fraction.

    Every (fraction, repeat) cell draws its own split and classifier streams
    from the seed, so cells are independent and the report is reproducible.
    """
    if repeats < 1:
        raise ValidationError("repeats must be >= 1")
    ids, vectors = document_vectors(model, network, vector_source)
    labels = {idx: network.labels[idx] for idx in ids}
    row_of = {idx: i for i, idx in enumerate(ids)}
    root = seed & _MASK64

    report = EvalReport(seed=seed, vector_source=vector_source)
    for fi, fraction in enumerate(fractions):
        for rep in range(repeats):
            split_rng = np.random.default_rng(
                np.random.SeedSequence((root, _SPLIT_STREAM, fi, rep))
            )
            train_ids, test_ids = split_labels(labels, fraction, split_rng)
            fit_rng = np.random.default_rng(
                np.random.SeedSequence((root, _FIT_STREAM, fi, rep))
            )
            clf = fit_linear_ovr(
                vectors[[row_of[i] for i in train_ids]],
                [labels[i] for i in train_ids],
                epochs=epochs,
                learning_rate=learning_rate,
                l2=l2,
                rng=fit_rng,
            )
            predicted = clf.predict(vectors[[row_of[i] for i in test_ids]])
            gold = [labels[i] for i in test_ids]
            macro, micro = f1_scores(predicted, gold)
            report.rows.append(EvalRow(fraction, rep, macro, micro))
    return report
