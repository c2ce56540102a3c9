"""LSA baseline summarizer: SVD of the TF-IDF term-sentence matrix.

Sentences are scored by their weight across the top-k latent dimensions,
score_j = sqrt(sum_i (sigma_i * v_ij)^2) with k capped at the matrix rank
(the length strategy; squaring makes singular-vector sign irrelevant).
Degenerate all-zero matrices, e.g. single-sentence corpora where every IDF
vanishes, fall back to source-order selection.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .corpus import GeneratedSummary, select_sentences
from .preprocess import TokenizedSentence
from .vectorize import fit_tfidf, tfidf_vector

logger = logging.getLogger(__name__)


@dataclass
class TermSentenceMatrix:
    terms: list[str]
    matrix: np.ndarray  # |terms| x n, TF-IDF weights
    n: int


def build_matrix(sentences: list[TokenizedSentence]) -> TermSentenceMatrix:
    """TF-IDF term-sentence matrix over this corpus; columns follow input order."""
    model = fit_tfidf(sentences)
    terms = model.vocabulary
    if not terms:
        raise ValueError("all sentences are empty after preprocessing")
    index = {t: i for i, t in enumerate(terms)}
    matrix = np.zeros((len(terms), len(sentences)))
    for j, sentence in enumerate(sentences):
        for word, weight in tfidf_vector(sentence, model).items():
            matrix[index[word], j] = weight
    return TermSentenceMatrix(terms=terms, matrix=matrix, n=len(sentences))


def lsa_scores(m: TermSentenceMatrix, k: int) -> tuple[np.ndarray, bool]:
    """Sentence scores from the top-k singular triplets.

    Returns (scores, degenerate); a zero matrix yields uniform zero scores
    with the degenerate flag set.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not np.any(m.matrix):
        return np.zeros(m.n), True
    _, sigma, vt = np.linalg.svd(m.matrix, full_matrices=False)
    cutoff = sigma[0] * max(m.matrix.shape) * np.finfo(float).eps
    rank = int(np.sum(sigma > cutoff))
    k_eff = min(k, rank)
    weighted = sigma[:k_eff, None] * vt[:k_eff, :]
    return np.sqrt(np.sum(weighted**2, axis=0)), False


def lsa_summarize(sentences: list[TokenizedSentence], m: int) -> GeneratedSummary:
    """Select the top-m sentences by LSA score with k = m latent topics.

    Tie-breaking and output ordering match the rank-based selector; the
    degenerate fallback (all-zero matrix or empty vocabulary) reduces to
    source-order selection.
    """
    if m < 1:
        raise ValueError("summary length m must be >= 1")
    if not sentences:
        raise ValueError("cannot summarize zero sentences")
    if any(s.content_tokens for s in sentences):
        scores, degenerate = lsa_scores(build_matrix(sentences), k=m)
    else:
        scores, degenerate = np.zeros(len(sentences)), True
    if degenerate:
        logger.warning("degenerate term-sentence matrix; falling back to source order")
    return select_sentences([s.raw for s in sentences], [float(x) for x in scores], m, "lsa")
