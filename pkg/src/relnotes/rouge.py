"""ROUGE-1, ROUGE-2 and ROUGE-L between generated and reference notes.

N-gram overlap is the clipped multiset intersection. ROUGE-L defaults to
the summary-level union-LCS over sentence lists (the "Lsum" convention of
the reference scoring package, with double-count clipping); a flag switches
to a single whole-text LCS. Any side with zero tokens scores 0 across the
board. Scoring tokens are Porter-stemmed; stopwords are excluded unless the
caller asks otherwise.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from statistics import fmean
from typing import Sequence

from . import porter
from .corpus import GeneratedSummary, ReleaseRecord
from .preprocess import clean_text, tokenize

LCS_MODES = ("union", "whole")


@dataclass(frozen=True)
class Score:
    recall: float
    precision: float
    f1: float


@dataclass(frozen=True)
class RougeReport:
    rouge1: Score
    rouge2: Score
    rougeL: Score


def _f1(recall: float, precision: float) -> float:
    if recall + precision == 0.0:
        return 0.0
    return 2.0 * recall * precision / (recall + precision)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(reference: Sequence[str], generated: Sequence[str], n: int) -> Score:
    """Clipped n-gram overlap recall/precision/F1 for n in {1, 2}."""
    if n not in (1, 2):
        raise ValueError("rouge_n supports n = 1 or 2 only")
    ref_grams = _ngrams(reference, n)
    gen_grams = _ngrams(generated, n)
    ref_total = sum(ref_grams.values())
    gen_total = sum(gen_grams.values())
    if ref_total == 0 or gen_total == 0:
        return Score(0.0, 0.0, 0.0)
    overlap = sum(min(count, gen_grams[gram]) for gram, count in ref_grams.items())
    recall = overlap / ref_total
    precision = overlap / gen_total
    return Score(recall, precision, _f1(recall, precision))


def _lcs_table(a: Sequence[str], b: Sequence[str]) -> list[list[int]]:
    rows, cols = len(a), len(b)
    table = [[0] * (cols + 1) for _ in range(rows + 1)]
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table


def _lcs_indices(a: Sequence[str], b: Sequence[str]) -> set[int]:
    """Positions in a that participate in one LCS of (a, b)."""
    table = _lcs_table(a, b)
    hits: set[int] = set()
    i, j = len(a), len(b)
    while i > 0 and j > 0:
        if a[i - 1] == b[j - 1] and table[i][j] == table[i - 1][j - 1] + 1:
            hits.add(i - 1)
            i -= 1
            j -= 1
        elif table[i - 1][j] >= table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return hits


def _as_sentences(tokens) -> list[list[str]]:
    seq = list(tokens)
    if not seq:
        return []
    if isinstance(seq[0], str):
        return [list(seq)]
    return [list(s) for s in seq]


def rouge_l(reference, generated, mode: str = "union") -> Score:
    """LCS-based recall/precision/F1.

    Inputs may be flat token sequences or lists of per-sentence token
    sequences. ``union`` computes the summary-level union-LCS per reference
    sentence with double-count clipping; ``whole`` concatenates each side
    and takes a single LCS.
    """
    if mode not in LCS_MODES:
        raise ValueError(f"unknown ROUGE-L mode {mode!r}; expected one of {LCS_MODES}")
    ref_sents = _as_sentences(reference)
    gen_sents = _as_sentences(generated)
    ref_total = sum(len(s) for s in ref_sents)
    gen_total = sum(len(s) for s in gen_sents)
    if ref_total == 0 or gen_total == 0:
        return Score(0.0, 0.0, 0.0)
    if mode == "whole":
        flat_ref = [t for s in ref_sents for t in s]
        flat_gen = [t for s in gen_sents for t in s]
        hits = _lcs_table(flat_ref, flat_gen)[len(flat_ref)][len(flat_gen)]
    else:
        ref_counts = Counter(t for s in ref_sents for t in s)
        gen_counts = Counter(t for s in gen_sents for t in s)
        hits = 0
        for ref_sent in ref_sents:
            union: set[int] = set()
            for gen_sent in gen_sents:
                union |= _lcs_indices(ref_sent, gen_sent)
            for i in sorted(union):
                token = ref_sent[i]
                if ref_counts[token] > 0 and gen_counts[token] > 0:
                    hits += 1
                    ref_counts[token] -= 1
                    gen_counts[token] -= 1
    recall = hits / ref_total
    precision = hits / gen_total
    return Score(recall, precision, _f1(recall, precision))


def _scoring_tokens(
    sentences: Sequence[str],
    include_stopwords: bool,
    raw_text: bool,
) -> list[list[str]]:
    per_sentence: list[list[str]] = []
    for sentence in sentences:
        pieces = [sentence] if raw_text else clean_text(sentence)
        for piece in pieces:
            if not piece.strip():
                continue
            ts = tokenize(piece)
            if include_stopwords:
                stems = [porter.stem(t) for t in ts.tokens]
            else:
                stems = list(ts.stemmed_tokens)
            if stems:
                per_sentence.append(stems)
    return per_sentence


def evaluate_release(
    record: ReleaseRecord,
    summary: GeneratedSummary,
    include_stopwords: bool = False,
    raw_text: bool = False,
    lcs_mode: str = "union",
) -> RougeReport:
    """Score a generated summary against the release's reference note.

    The reference must be non-empty (filter empty-reference releases
    upstream); the summary is expected to have been produced with
    m = len(record.reference_notes).
    """
    if not record.reference_notes:
        raise ValueError(f"{record.project}@{record.tag}: empty reference notes")
    ref = _scoring_tokens(record.reference_notes, include_stopwords, raw_text)
    gen = _scoring_tokens(summary.sentences, include_stopwords, raw_text)
    flat_ref = [t for s in ref for t in s]
    flat_gen = [t for s in gen for t in s]
    return RougeReport(
        rouge1=rouge_n(flat_ref, flat_gen, 1),
        rouge2=rouge_n(flat_ref, flat_gen, 2),
        rougeL=rouge_l(ref, gen, mode=lcs_mode),
    )


def aggregate(reports: Sequence[RougeReport]) -> RougeReport:
    """Arithmetic mean of every metric field across reports."""
    if not reports:
        raise ValueError("cannot aggregate zero reports")

    def mean_score(pick) -> Score:
        return Score(
            recall=fmean(pick(r).recall for r in reports),
            precision=fmean(pick(r).precision for r in reports),
            f1=fmean(pick(r).f1 for r in reports),
        )

    return RougeReport(
        rouge1=mean_score(lambda r: r.rouge1),
        rouge2=mean_score(lambda r: r.rouge2),
        rougeL=mean_score(lambda r: r.rougeL),
    )
