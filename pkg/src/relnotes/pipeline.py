"""End-to-end glue: raw change lines to summaries and scored benchmarks.

Every entry point re-applies cleaning and trivial-line filtering before
tokenizing; both passes are idempotent, so text that was already normalized
at harvest time comes through unchanged.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

from .corpus import METHODS, GeneratedSummary, ReleaseDataset, ReleaseRecord
from .lsa import lsa_summarize
from .preprocess import TokenizedSentence, clean_text, filter_trivial, tokenize
from .rouge import RougeReport, aggregate, evaluate_release
from .textrank import RankConfig, build_graph, rank, select_top_m
from .vectorize import EmbeddingStore, fit_tfidf

log = logging.getLogger(__name__)

BENCH_METHODS = ("lsa", "textrank-tfidf", "textrank-glove")

_SIMILARITY_BY_METHOD = {
    "textrank-bow": "overlap",
    "textrank-tfidf": "tfidf-cosine",
    "textrank-glove": "glove-cosine",
}


@dataclass(frozen=True)
class EvaluationRow:
    project: str
    tag: str
    report: RougeReport


@dataclass(frozen=True)
class EvaluationResult:
    method: str
    rows: tuple[EvaluationRow, ...]
    overall: RougeReport
    skipped: tuple[str, ...] = ()


def prepare_sentences(
    lines: Sequence[str],
    stopwords=None,
    denylist=None,
) -> list[TokenizedSentence]:
    """Clean, filter and tokenize raw change lines, dropping empties."""
    cleaned: list[str] = []
    for line in lines:
        cleaned.extend(clean_text(line))
    kept = filter_trivial(cleaned, denylist=denylist)
    sentences = []
    for sentence in kept:
        if sentence.strip():
            sentences.append(tokenize(sentence, stopwords=stopwords))
    return sentences


def summarize_sentences(
    sentences: Sequence[TokenizedSentence],
    method: str,
    m: int,
    embeddings: EmbeddingStore | None = None,
    rank_config: RankConfig | None = None,
) -> GeneratedSummary:
    """Produce an m-sentence extractive summary with the named method."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if m < 1:
        raise ValueError("summary length m must be at least 1")
    if not sentences:
        return GeneratedSummary(sentences=[], method=method, scores=[])
    if method == "lsa":
        return lsa_summarize(sentences, m)
    similarity = _SIMILARITY_BY_METHOD[method]
    config = rank_config or RankConfig()
    if config.similarity != similarity:
        config = dataclasses.replace(config, similarity=similarity)
    tfidf = fit_tfidf(sentences) if similarity == "tfidf-cosine" else None
    graph = build_graph(sentences, config, tfidf=tfidf, embeddings=embeddings)
    ranked = rank(graph, config)
    return select_top_m(ranked, m)


def summarize_lines(
    lines: Sequence[str],
    method: str,
    m: int,
    embeddings: EmbeddingStore | None = None,
    rank_config: RankConfig | None = None,
    stopwords=None,
    denylist=None,
) -> GeneratedSummary:
    sentences = prepare_sentences(lines, stopwords=stopwords, denylist=denylist)
    return summarize_sentences(
        sentences, method, m, embeddings=embeddings, rank_config=rank_config
    )


def _record_summary(
    record: ReleaseRecord,
    method: str,
    m: int,
    embeddings: EmbeddingStore | None,
    rank_config: RankConfig | None,
    stopwords,
    denylist,
) -> GeneratedSummary:
    sentences = prepare_sentences(record.source, stopwords=stopwords, denylist=denylist)
    return summarize_sentences(
        sentences, method, m, embeddings=embeddings, rank_config=rank_config
    )


def evaluate_dataset(
    dataset: ReleaseDataset,
    method: str,
    embeddings: EmbeddingStore | None = None,
    rank_config: RankConfig | None = None,
    stopwords=None,
    denylist=None,
    include_stopwords: bool = False,
    raw_text: bool = False,
    lcs_mode: str = "union",
) -> EvaluationResult:
    """Score one method across a dataset, m = reference length per release.

    Releases without reference notes cannot be scored and are reported in
    ``skipped`` rather than silently dropped.
    """
    rows: list[EvaluationRow] = []
    skipped: list[str] = []
    for record in dataset.releases:
        if not record.has_reference:
            skipped.append(f"{record.project}@{record.tag}")
            continue
        m = len(record.reference_notes)
        summary = _record_summary(
            record, method, m, embeddings, rank_config, stopwords, denylist
        )
        report = evaluate_release(
            record,
            summary,
            include_stopwords=include_stopwords,
            raw_text=raw_text,
            lcs_mode=lcs_mode,
        )
        rows.append(EvaluationRow(project=record.project, tag=record.tag, report=report))
    if skipped:
        log.info("skipped %d releases with empty reference notes", len(skipped))
    if not rows:
        raise ValueError("no release in the dataset has reference notes to score")
    return EvaluationResult(
        method=method,
        rows=tuple(rows),
        overall=aggregate([row.report for row in rows]),
        skipped=tuple(skipped),
    )


def bench_dataset(
    dataset: ReleaseDataset,
    embeddings: EmbeddingStore | None = None,
    rank_config: RankConfig | None = None,
    stopwords=None,
    denylist=None,
    include_stopwords: bool = False,
    raw_text: bool = False,
    lcs_mode: str = "union",
) -> Mapping[str, EvaluationResult]:
    """Run the three-method comparison and return results keyed by method."""
    results: dict[str, EvaluationResult] = {}
    for method in BENCH_METHODS:
        results[method] = evaluate_dataset(
            dataset,
            method,
            embeddings=embeddings if method == "textrank-glove" else None,
            rank_config=rank_config,
            stopwords=stopwords,
            denylist=denylist,
            include_stopwords=include_stopwords,
            raw_text=raw_text,
            lcs_mode=lcs_mode,
        )
    return results
