"""Similarity queries against a trained embedding table."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import UnknownTokenError, ValidationError
from .model import EmbeddingModel, token_namespace

log = logging.getLogger(__name__)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ValidationError("cosine of a zero vector is undefined")
    return float(np.dot(a, b) / (na * nb))


@dataclass
class QueryResult:
    query_tokens: list[str]
    results: list[tuple[str, float]]  # (token, cosine), best first

    def tsv_lines(self) -> list[str]:
        return [
            f"{rank}\t{tok}\t{score:.6f}"
            for rank, (tok, score) in enumerate(self.results, start=1)
        ]


def _filter_allows(token: str, source_filter) -> bool:
    if source_filter is None:
        return True
    ns = token_namespace(token)
    if ns[0] == "node":
        return ns[1] in source_filter
    return ns[0] + "s" in source_filter  # "word" -> "words", "label" -> "labels"


def most_similar(
    model: EmbeddingModel,
    query_tokens: Sequence[str],
    top_k: int = 10,
    source_filter: Iterable | None = None,
) -> QueryResult:
    """Rank tokens by cosine similarity to the mean of the query vectors.

    ``source_filter`` restricts candidates to source ids (ints) and/or the
    strings "words" / "labels"; by default every token competes.  Query
    tokens never appear among the results.  Ties break lexicographically.
    Zero-norm candidates cannot be ranked and are skipped with a warning.
    """
    if top_k < 1:
        raise ValidationError("top_k must be >= 1")
    if not query_tokens:
        raise ValidationError("query needs at least one token")
    for tok in query_tokens:
        if tok not in model.rows:
            raise UnknownTokenError(tok)
    allowed = None if source_filter is None else set(source_filter)

    q = np.zeros(model.dimension)
    for tok in query_tokens:
        q += model.vectors[model.rows[tok]]
    q /= len(query_tokens)
    qnorm = float(np.linalg.norm(q))
    if qnorm == 0.0:
        raise ValidationError("query vectors average to the zero vector")

    norms = np.linalg.norm(model.vectors, axis=1)
    scores = model.vectors @ q
    exclude = set(query_tokens)
    scored: list[tuple[float, str]] = []
    skipped = 0
    for i, tok in enumerate(model.tokens):
        if tok in exclude or not _filter_allows(tok, allowed):
            continue
        if norms[i] == 0.0:
            skipped += 1
            continue
        scored.append((float(scores[i] / (norms[i] * qnorm)), tok))
    if skipped:
        log.warning("skipped %d zero-norm candidates", skipped)
    if not scored:
        raise ValidationError("no candidates left after filtering")

    scored.sort(key=lambda item: (-item[0], item[1]))
    return QueryResult(
        query_tokens=list(query_tokens),
        results=[(tok, score) for score, tok in scored[:top_k]],
    )
