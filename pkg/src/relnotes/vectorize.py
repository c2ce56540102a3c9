"""Sentence representations: token-overlap similarity, TF-IDF, embeddings.

Three comparable views of a tokenized sentence, all over content tokens
(lowercase, stopwords removed, unstemmed):

* ``overlap_similarity``: shared-token count normalized by log lengths,
  the classic sentence-graph edge weight.
* ``fit_tfidf`` / ``tfidf_vector``: sentence-level TF-IDF with natural-log
  IDF over the sentence corpus.
* ``load_embeddings`` / ``sentence_embedding``: mean of pre-trained word
  vectors, with zero vectors for out-of-vocabulary words.

Natural logarithms throughout.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import EmbeddingError
from .preprocess import TokenizedSentence

logger = logging.getLogger(__name__)


def overlap_similarity(a: TokenizedSentence, b: TokenizedSentence) -> float:
    """Shared distinct content tokens over ln|a| + ln|b|.

    Returns 0 when either sentence is empty or when both have at most one
    token (the log denominator vanishes).
    """
    la, lb = len(a.content_tokens), len(b.content_tokens)
    if la == 0 or lb == 0:
        return 0.0
    denom = math.log(la) + math.log(lb)
    if denom <= 0.0:
        return 0.0
    shared = len(set(a.content_tokens) & set(b.content_tokens))
    return shared / denom


@dataclass
class TfidfModel:
    """Sentence-level document frequencies fitted on one corpus."""

    num_sentences: int
    doc_freq: dict[str, int] = field(default_factory=dict)

    def idf(self, word: str) -> float:
        df = self.doc_freq.get(word)
        if df is None:
            return 0.0
        return math.log(self.num_sentences / df)

    @property
    def vocabulary(self) -> list[str]:
        return sorted(self.doc_freq)


def fit_tfidf(corpus: list[TokenizedSentence]) -> TfidfModel:
    """Count, per word, the number of sentences containing it."""
    if not corpus:
        raise ValueError("cannot fit TF-IDF on an empty corpus")
    doc_freq: Counter[str] = Counter()
    for sentence in corpus:
        doc_freq.update(set(sentence.content_tokens))
    return TfidfModel(num_sentences=len(corpus), doc_freq=dict(doc_freq))


def tfidf_vector(s: TokenizedSentence, model: TfidfModel) -> dict[str, float]:
    """Sparse TF-IDF vector: term frequency within the sentence times
    ln(N_s / doc_freq). Words unseen at fit time contribute nothing."""
    total = len(s.content_tokens)
    if total == 0:
        return {}
    vec: dict[str, float] = {}
    for word, count in Counter(s.content_tokens).items():
        weight = (count / total) * model.idf(word)
        if weight != 0.0:
            vec[word] = weight
    return vec


@dataclass
class EmbeddingStore:
    """Word → dense vector map loaded from a pre-trained embeddings file."""

    dimension: int
    vectors: dict[str, np.ndarray]
    skipped_lines: int = 0

    def lookup(self, word: str) -> np.ndarray:
        """Vector for a word; absent words map to the zero vector."""
        vec = self.vectors.get(word)
        if vec is None:
            return np.zeros(self.dimension)
        return vec


def load_embeddings(path: str | Path, expected_dim: int | None = None) -> EmbeddingStore:
    """Load a plain-text embeddings file (``word f_1 ... f_d`` per line).

    The dimension is taken from the first parseable line unless
    expected_dim is given. Malformed lines are skipped and counted;
    more than 1% malformed lines is treated as a broken file.
    """
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    dimension = expected_dim
    skipped = 0
    total = 0
    try:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                parts = line.rstrip("\n").split()
                if not parts:
                    continue
                total += 1
                word, values = parts[0], parts[1:]
                if dimension is None:
                    dimension = len(values)
                if len(values) != dimension or dimension == 0:
                    skipped += 1
                    continue
                try:
                    vectors[word] = np.asarray([float(v) for v in values])
                except ValueError:
                    skipped += 1
    except OSError as exc:
        raise EmbeddingError(f"cannot read embeddings file {path}: {exc}") from None
    if total == 0 or dimension is None:
        raise EmbeddingError(f"{path}: no embedding lines found")
    if skipped > 0.01 * total:
        raise EmbeddingError(
            f"{path}: {skipped}/{total} lines malformed or of inconsistent dimension"
        )
    if skipped:
        logger.warning("%s: skipped %d malformed embedding line(s)", path, skipped)
    return EmbeddingStore(dimension=dimension, vectors=vectors, skipped_lines=skipped)


def sentence_embedding(s: TokenizedSentence, store: EmbeddingStore) -> np.ndarray:
    """Mean of content-token vectors; OOV words contribute zero vectors but
    still count in the denominator. Empty sentences map to the zero vector."""
    if not s.content_tokens:
        return np.zeros(store.dimension)
    acc = np.zeros(store.dimension)
    for token in s.content_tokens:
        acc += store.lookup(token)
    return acc / len(s.content_tokens)


def cosine_similarity(u, v) -> float:
    """u . v / (|u| |v|), defined as 0 when either norm is 0."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))
