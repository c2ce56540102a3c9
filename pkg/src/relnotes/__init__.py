"""Extractive release-note drafting and ROUGE evaluation.

Summarizes the commit messages and merge-PR titles between two releases
with TextRank (bag-of-words overlap, TF-IDF cosine, or GloVe cosine edge
weights) or an LSA baseline, and scores drafts against human release notes
with ROUGE-1/2/L.
"""

from .corpus import (
    METHODS,
    GeneratedSummary,
    ReleaseDataset,
    ReleaseRecord,
    filter_empty_references,
    load_dataset,
    save_dataset,
)
from .errors import (
    ApiError,
    AuthError,
    DatasetError,
    DisjointReleasesError,
    EmbeddingError,
    GitError,
    RateLimitError,
    RelnotesError,
    RepositorySkipped,
    UnknownTagError,
)
from .pipeline import evaluate_dataset, bench_dataset, summarize_lines, summarize_sentences
from .rouge import RougeReport, Score, aggregate, evaluate_release, rouge_l, rouge_n
from .textrank import RankConfig, build_graph, rank, select_top_m

__version__ = "0.1.0"

__all__ = [
    "METHODS",
    "GeneratedSummary",
    "ReleaseDataset",
    "ReleaseRecord",
    "filter_empty_references",
    "load_dataset",
    "save_dataset",
    "ApiError",
    "AuthError",
    "DatasetError",
    "DisjointReleasesError",
    "EmbeddingError",
    "GitError",
    "RateLimitError",
    "RelnotesError",
    "RepositorySkipped",
    "UnknownTagError",
    "evaluate_dataset",
    "bench_dataset",
    "summarize_lines",
    "summarize_sentences",
    "RougeReport",
    "Score",
    "aggregate",
    "evaluate_release",
    "rouge_l",
    "rouge_n",
    "RankConfig",
    "build_graph",
    "rank",
    "select_top_m",
    "__version__",
]
