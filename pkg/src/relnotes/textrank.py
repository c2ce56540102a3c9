"""Sentence graph construction and damped rank iteration.

Builds an undirected weighted graph over sentences (similarity matrix with
unit diagonal), then iterates the damped, out-weight-normalized recurrence

    score(i) = (1 - d) + d * sum_j  w[j][i] / sum_k w[j][k] * score(j)

over distinct-node neighbors until the max per-node change drops below the
tolerance. The fixed point is initialization-independent; scores start at 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from .corpus import GeneratedSummary, select_sentences
from .preprocess import TokenizedSentence
from .vectorize import (
    EmbeddingStore,
    TfidfModel,
    cosine_similarity,
    overlap_similarity,
    sentence_embedding,
    tfidf_vector,
)

logger = logging.getLogger(__name__)

SIMILARITIES = ("overlap", "tfidf-cosine", "glove-cosine")

_METHOD_BY_SIMILARITY = {
    "overlap": "textrank-bow",
    "tfidf-cosine": "textrank-tfidf",
    "glove-cosine": "textrank-glove",
}


@dataclass(frozen=True)
class RankConfig:
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iters: int = 100
    similarity: str = "overlap"

    def validate(self) -> None:
        if not 0.0 < self.damping < 1.0:
            raise ValueError("damping must lie in (0, 1)")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be a positive integer")
        if self.similarity not in SIMILARITIES:
            raise ValueError(f"unknown similarity {self.similarity!r}; expected one of {SIMILARITIES}")


@dataclass
class SentenceGraph:
    """Sentences plus their symmetric similarity matrix and rank scores."""

    sentences: list[TokenizedSentence]
    sim: np.ndarray
    similarity: str = "overlap"
    scores: np.ndarray | None = None
    converged: bool = True


def _dense_tfidf_rows(sentences, model: TfidfModel) -> np.ndarray:
    vocab = {w: i for i, w in enumerate(model.vocabulary)}
    rows = np.zeros((len(sentences), max(len(vocab), 1)))
    for i, s in enumerate(sentences):
        for word, weight in tfidf_vector(s, model).items():
            rows[i, vocab[word]] = weight
    return rows


def build_graph(
    sentences: list[TokenizedSentence],
    config: RankConfig,
    tfidf: TfidfModel | None = None,
    embeddings: EmbeddingStore | None = None,
) -> SentenceGraph:
    """Construct the similarity matrix for the configured similarity.

    Off-diagonal entries come from the similarity function (cosine values
    are clamped at 0 so edge weights stay non-negative); the diagonal is 1.
    """
    config.validate()
    if not sentences:
        raise ValueError("cannot build a graph over zero sentences")
    n = len(sentences)
    if config.similarity == "overlap":
        sim = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                sim[i, j] = sim[j, i] = overlap_similarity(sentences[i], sentences[j])
    else:
        if config.similarity == "tfidf-cosine":
            if tfidf is None:
                raise ValueError("tfidf-cosine similarity requires a fitted TfidfModel")
            rows = _dense_tfidf_rows(sentences, tfidf)
        else:
            if embeddings is None:
                raise ValueError("glove-cosine similarity requires an EmbeddingStore")
            rows = np.stack([sentence_embedding(s, embeddings) for s in sentences])
        sim = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                sim[i, j] = sim[j, i] = max(0.0, cosine_similarity(rows[i], rows[j]))
    np.fill_diagonal(sim, 1.0)
    return SentenceGraph(sentences=list(sentences), sim=sim, similarity=config.similarity)


def rank(graph: SentenceGraph, config: RankConfig) -> SentenceGraph:
    """Iterate the damped recurrence to convergence; returns a new graph.

    Self-loops are excluded even though the stored diagonal is 1. Nodes
    with no positive off-diagonal weight keep the floor score (1 - d).
    Non-convergence within max_iters is flagged, not raised.
    """
    config.validate()
    w = np.array(graph.sim, dtype=float)
    np.fill_diagonal(w, 0.0)
    n = w.shape[0]
    out_sum = w.sum(axis=1)
    denom = np.where(out_sum > 0.0, out_sum, 1.0)
    # transfer[i, j] = w[j, i] / out_sum[j]; columns with no out-weight stay zero
    transfer = (w / denom[:, None]).T
    d = config.damping
    scores = np.ones(n)
    converged = False
    for _ in range(config.max_iters):
        updated = (1.0 - d) + d * (transfer @ scores)
        delta = float(np.max(np.abs(updated - scores)))
        scores = updated
        if delta < config.tolerance:
            converged = True
            break
    if not converged:
        logger.warning("rank did not converge within %d iterations", config.max_iters)
    return replace(graph, scores=scores, converged=converged)


def select_top_m(graph: SentenceGraph, m: int) -> GeneratedSummary:
    """Top-m sentences by score, ties to earlier positions, source order."""
    if graph.scores is None:
        raise ValueError("graph has no scores; call rank() first")
    return select_sentences(
        [s.raw for s in graph.sentences],
        [float(x) for x in graph.scores],
        m,
        _METHOD_BY_SIMILARITY[graph.similarity],
    )
