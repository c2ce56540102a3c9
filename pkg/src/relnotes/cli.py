"""Command-line interface: harvest, summarize, evaluate, bench.

Exit codes: 0 success (including a repository-skip notice), 1 runtime or
data failure, 2 usage or configuration error. Output files are written
atomically; identical invocations on identical inputs produce identical
bytes (nothing in a payload depends on the clock).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import ingest, pipeline
from .corpus import (
    METHODS,
    GeneratedSummary,
    _atomic_write_text,
    load_dataset,
    save_dataset,
)
from .errors import RelnotesError, RepositorySkipped
from .pipeline import BENCH_METHODS, EvaluationResult
from .preprocess import load_wordlist
from .rouge import LCS_MODES, RougeReport
from .textrank import RankConfig
from .vectorize import EmbeddingStore, load_embeddings

log = logging.getLogger(__name__)

OUTPUT_FORMATS = ("md", "json", "csv")

_SCORE_COLUMNS = (
    "rouge1_recall",
    "rouge1_precision",
    "rouge1_f1",
    "rouge2_recall",
    "rouge2_precision",
    "rouge2_f1",
    "rougeL_recall",
    "rougeL_precision",
    "rougeL_f1",
)


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by the summarizing and scoring commands."""

    method: str = "textrank-glove"
    embeddings_path: str | None = None
    sentences: int = 5
    output_format: str = "md"
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iters: int = 100
    include_stopwords: bool = False
    raw_text: bool = False
    lcs_mode: str = "union"
    stopwords_path: str | None = None
    denylist_path: str | None = None


class UsageError(Exception):
    """Configuration problem the user must fix; maps to exit code 2."""


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_rank_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--damping", type=float, default=0.85)
    parser.add_argument("--tolerance", type=float, default=1e-6)
    parser.add_argument("--max-iters", type=int, default=100)


def _add_rouge_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--include-stopwords",
        action="store_true",
        help="keep stopwords when matching score tokens",
    )
    parser.add_argument(
        "--raw-text",
        action="store_true",
        help="score verbatim sentences without re-cleaning them",
    )
    parser.add_argument("--rouge-l-mode", choices=LCS_MODES, default="union")


def _add_wordlist_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--stopwords", help="stopword list file, one word per line")
    parser.add_argument("--denylist", help="trivial-line glob patterns, one per line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relnotes",
        description="Draft and score release notes extracted from commit history.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("harvest", help="collect releases from the GitHub API")
    p.add_argument("--repo", required=True, help="owner/name")
    p.add_argument("--token-env", default="GITHUB_TOKEN")
    p.add_argument("--min-releases", type=int, default=0)
    p.add_argument("--min-stars", type=int, default=0)
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--max-retries", type=int, default=3)
    p.add_argument("--api-base-url", default="https://api.github.com")
    p.add_argument("--out", required=True)

    p = sub.add_parser("summarize", help="draft a note for one release range")
    p.add_argument("--repo", required=True, help="path to a local git repository")
    p.add_argument("--from-tag", required=True)
    p.add_argument("--to-tag", required=True)
    p.add_argument("--method", choices=METHODS, default="textrank-glove")
    p.add_argument("--embeddings")
    p.add_argument("--sentences", type=_positive_int, default=5, metavar="M")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--out")
    _add_rank_flags(p)
    _add_wordlist_flags(p)

    p = sub.add_parser("evaluate", help="score one method against references")
    p.add_argument("--dataset", required=True)
    p.add_argument("--method", choices=METHODS, default="textrank-glove")
    p.add_argument("--embeddings")
    p.add_argument("--out", required=True, help="per-release CSV path")
    _add_rank_flags(p)
    _add_rouge_flags(p)
    _add_wordlist_flags(p)

    p = sub.add_parser("bench", help="compare lsa, tf-idf and glove side by side")
    p.add_argument("--dataset", required=True)
    p.add_argument("--embeddings", required=True)
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--out")
    _add_rank_flags(p)
    _add_rouge_flags(p)
    _add_wordlist_flags(p)

    return parser


def _rank_config(args: argparse.Namespace, similarity: str = "overlap") -> RankConfig:
    config = RankConfig(
        damping=args.damping,
        tolerance=args.tolerance,
        max_iters=args.max_iters,
        similarity=similarity,
    )
    try:
        config.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return config


def _load_lists(args: argparse.Namespace):
    stopwords = frozenset(load_wordlist(args.stopwords)) if args.stopwords else None
    denylist = tuple(load_wordlist(args.denylist)) if args.denylist else None
    return stopwords, denylist


def _embeddings_for(args: argparse.Namespace, methods) -> EmbeddingStore | None:
    needs_glove = any(m == "textrank-glove" for m in methods)
    if not needs_glove:
        return None
    if not getattr(args, "embeddings", None):
        raise UsageError("method textrank-glove requires --embeddings FILE")
    return load_embeddings(args.embeddings)


def _pct(x: float) -> str:
    return f"{100.0 * x:.2f}"


def _report_row(report: RougeReport) -> list[str]:
    return [
        _pct(report.rouge1.recall),
        _pct(report.rouge1.precision),
        _pct(report.rouge1.f1),
        _pct(report.rouge2.recall),
        _pct(report.rouge2.precision),
        _pct(report.rouge2.f1),
        _pct(report.rougeL.recall),
        _pct(report.rougeL.precision),
        _pct(report.rougeL.f1),
    ]


def _emit(text: str, out_path: str | None, stdout) -> None:
    if out_path:
        _atomic_write_text(Path(out_path), text)
    else:
        stdout.write(text)


def _render_summary(summary: GeneratedSummary, fmt: str) -> str:
    if fmt == "json":
        payload = {
            "method": summary.method,
            "sentences": list(summary.sentences),
            "scores": [float(s) for s in summary.scores or []],
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    return "".join(f"- {line}\n" for line in summary.sentences)


def _flags_line(args: argparse.Namespace) -> str:
    return (
        f"# flags: include_stopwords={args.include_stopwords} "
        f"raw_text={args.raw_text} rouge_l_mode={args.rouge_l_mode} "
        f"damping={args.damping} tolerance={args.tolerance} "
        f"max_iters={args.max_iters}"
    )


def _cmd_harvest(args: argparse.Namespace, stdout) -> int:
    config = ingest.HarvestConfig(
        repo=args.repo,
        token_env=args.token_env,
        min_releases=args.min_releases,
        request_timeout=args.timeout,
        max_retries=args.max_retries,
        api_base_url=args.api_base_url,
        min_stars=args.min_stars,
    )
    try:
        config.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        dataset = ingest.harvest_releases(config)
    except RepositorySkipped as exc:
        stdout.write(f"skipped: {exc}\n")
        return 0
    save_dataset(dataset, args.out)
    stdout.write(f"harvested {len(dataset.releases)} releases into {args.out}\n")
    return 0


def _cmd_summarize(args: argparse.Namespace, stdout) -> int:
    embeddings = _embeddings_for(args, [args.method])
    stopwords, denylist = _load_lists(args)
    commits = ingest.collect_commits_between(args.repo, args.from_tag, args.to_tag)
    lines = ingest.to_source_lines(commits)
    summary = pipeline.summarize_lines(
        lines,
        method=args.method,
        m=args.sentences,
        embeddings=embeddings,
        rank_config=_rank_config(args),
        stopwords=stopwords,
        denylist=denylist,
    )
    _emit(_render_summary(summary, args.format), args.out, stdout)
    return 0


def _evaluation_csv(results: list[EvaluationResult]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["project", "tag", "method", *_SCORE_COLUMNS])
    for result in results:
        for row in result.rows:
            writer.writerow([row.project, row.tag, result.method, *_report_row(row.report)])
    for result in results:
        writer.writerow(["OVERALL", "-", result.method, *_report_row(result.overall)])
    return buffer.getvalue()


def _cmd_evaluate(args: argparse.Namespace, stdout) -> int:
    embeddings = _embeddings_for(args, [args.method])
    stopwords, denylist = _load_lists(args)
    dataset = load_dataset(args.dataset)
    result = pipeline.evaluate_dataset(
        dataset,
        method=args.method,
        embeddings=embeddings,
        rank_config=_rank_config(args),
        stopwords=stopwords,
        denylist=denylist,
        include_stopwords=args.include_stopwords,
        raw_text=args.raw_text,
        lcs_mode=args.rouge_l_mode,
    )
    _atomic_write_text(Path(args.out), _evaluation_csv([result]))
    if result.skipped:
        stdout.write(f"# skipped {len(result.skipped)} releases without references\n")
    stdout.write(_flags_line(args) + "\n")
    parts = " ".join(
        f"{col}={val}" for col, val in zip(_SCORE_COLUMNS, _report_row(result.overall))
    )
    stdout.write(f"{result.method} releases={len(result.rows)} {parts}\n")
    return 0


def _bench_table(results: dict[str, EvaluationResult], fmt: str) -> str:
    ordered = sorted(results)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["method", *_SCORE_COLUMNS])
        for method in ordered:
            writer.writerow([method, *_report_row(results[method].overall)])
        return buffer.getvalue()
    header = ["method", *_SCORE_COLUMNS]
    rows = [[method, *_report_row(results[method].overall)] for method in ordered]
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(len(header))
    ]
    lines = [
        "| " + " | ".join(h.ljust(w) for h, w in zip(header, widths)) + " |",
        "| " + " | ".join("-" * w for w in widths) + " |",
    ]
    for row in rows:
        lines.append("| " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " |")
    return "".join(line + "\n" for line in lines)


def _cmd_bench(args: argparse.Namespace, stdout) -> int:
    embeddings = _embeddings_for(args, BENCH_METHODS)
    stopwords, denylist = _load_lists(args)
    dataset = load_dataset(args.dataset)
    if not dataset.releases:
        raise ValueError("bench needs a non-empty dataset")
    results = dict(
        pipeline.bench_dataset(
            dataset,
            embeddings=embeddings,
            rank_config=_rank_config(args),
            stopwords=stopwords,
            denylist=denylist,
            include_stopwords=args.include_stopwords,
            raw_text=args.raw_text,
            lcs_mode=args.rouge_l_mode,
        )
    )
    stdout.write(_flags_line(args) + "\n")
    _emit(_bench_table(results, args.format), args.out, stdout)
    return 0


_COMMANDS = {
    "harvest": _cmd_harvest,
    "summarize": _cmd_summarize,
    "evaluate": _cmd_evaluate,
    "bench": _cmd_bench,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (RelnotesError, ValueError, OSError) as exc:
        name = f"{type(exc).__module__}.{type(exc).__name__}"
        stderr.write(f"error[{name}]: {exc}\n")
        return 1


def entrypoint() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    raise SystemExit(main())
