"""Release dataset model and JSON persistence.

Dataset schema (one UTF-8 JSON file per dataset):

    {"provenance": string,
     "releases": [{"project": string, "tag": string, "date": string,
                   "reference_notes": [string], "source": [string]}]}

Sentence strings are stored trimmed and newline-free. Releases with empty
reference notes are kept at load time and removed only by an explicit
``filter_empty_references`` call, so the empty-note fraction of a raw
harvest stays recomputable.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DatasetError

METHODS = ("textrank-glove", "textrank-tfidf", "textrank-bow", "lsa")


@dataclass
class ReleaseRecord:
    """One release: its reference note sentences and its source sentences."""

    project: str
    tag: str
    date: str
    reference_notes: list[str]
    source: list[str]

    @property
    def has_reference(self) -> bool:
        return len(self.reference_notes) > 0

    def validate(self, where: str = "release") -> None:
        for name in ("project", "tag", "date"):
            if not isinstance(getattr(self, name), str):
                raise DatasetError(f"{where}.{name}: expected a string")
        if not self.tag:
            raise DatasetError(f"{where}: tag must be non-empty")
        for name in ("reference_notes", "source"):
            for j, sentence in enumerate(getattr(self, name)):
                if not isinstance(sentence, str):
                    raise DatasetError(f"{where}.{name}[{j}]: expected a string")
                if "\n" in sentence or "\r" in sentence:
                    raise DatasetError(f"{where}.{name}[{j}]: sentence contains a newline")
                if sentence != sentence.strip():
                    raise DatasetError(f"{where}.{name}[{j}]: sentence has surrounding whitespace")


@dataclass
class ReleaseDataset:
    """A collection of releases plus free-form harvest provenance."""

    releases: list[ReleaseRecord] = field(default_factory=list)
    provenance: str = ""

    def validate(self) -> None:
        seen: set[tuple[str, str]] = set()
        for i, rec in enumerate(self.releases):
            rec.validate(where=f"releases[{i}]")
            key = (rec.project, rec.tag)
            if key in seen:
                raise DatasetError(f"releases[{i}]: duplicate (project, tag) {key}")
            seen.add(key)

    @property
    def empty_reference_count(self) -> int:
        return sum(1 for r in self.releases if not r.has_reference)


@dataclass
class GeneratedSummary:
    """An extractive release-note draft: a verbatim, order-preserving subset
    of the source sentences, with the rank scores of the selected sentences."""

    sentences: list[str]
    method: str
    scores: list[float] | None = None


def _record_from_json(obj: object, where: str) -> ReleaseRecord:
    if not isinstance(obj, dict):
        raise DatasetError(f"{where}: expected an object")
    for name in ("reference_notes", "source"):
        if name in obj and not isinstance(obj[name], list):
            raise DatasetError(f"{where}.{name}: expected a list of strings")
    try:
        rec = ReleaseRecord(
            project=obj["project"],
            tag=obj["tag"],
            date=obj["date"],
            reference_notes=[str(s).strip() for s in obj["reference_notes"]],
            source=[str(s).strip() for s in obj["source"]],
        )
    except KeyError as exc:
        raise DatasetError(f"{where}: missing field {exc.args[0]!r}") from None
    except TypeError as exc:
        raise DatasetError(f"{where}: {exc}") from None
    rec.reference_notes = [s for s in rec.reference_notes if s]
    rec.source = [s for s in rec.source if s]
    rec.validate(where=where)
    return rec


def load_dataset(path: str | Path) -> ReleaseDataset:
    """Load and validate a dataset JSON file.

    Leading/trailing whitespace on sentences is normalized away; embedded
    newlines, missing fields and duplicate (project, tag) pairs raise
    DatasetError naming the offending record index.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict) or "releases" not in doc:
        raise DatasetError(f"{path}: top-level object must contain 'releases'")
    if not isinstance(doc["releases"], list):
        raise DatasetError(f"{path}: 'releases' must be a list")
    releases = [_record_from_json(obj, f"releases[{i}]") for i, obj in enumerate(doc["releases"])]
    dataset = ReleaseDataset(releases=releases, provenance=str(doc.get("provenance", "")))
    dataset.validate()
    return dataset


def _atomic_write_text(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=str(path.parent) or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_dataset(dataset: ReleaseDataset, path: str | Path) -> None:
    """Write a dataset as JSON, atomically (write-to-temp then rename)."""
    dataset.validate()
    doc = {
        "provenance": dataset.provenance,
        "releases": [
            {
                "project": r.project,
                "tag": r.tag,
                "date": r.date,
                "reference_notes": list(r.reference_notes),
                "source": list(r.source),
            }
            for r in dataset.releases
        ],
    }
    _atomic_write_text(Path(path), json.dumps(doc, indent=2, ensure_ascii=False) + "\n")


def filter_empty_references(dataset: ReleaseDataset) -> tuple[ReleaseDataset, float]:
    """Drop releases without reference notes; return the removed fraction."""
    total = len(dataset.releases)
    kept = [r for r in dataset.releases if r.has_reference]
    fraction = 0.0 if total == 0 else (total - len(kept)) / total
    return ReleaseDataset(releases=kept, provenance=dataset.provenance), fraction


def select_sentences(
    sentences: list[str],
    scores: list[float],
    m: int,
    method: str,
) -> GeneratedSummary:
    """Pick the min(m, n) top-scored sentences, ties broken by earlier
    position, emitted in original source order."""
    if m < 1:
        raise ValueError("summary length m must be >= 1")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if len(scores) != len(sentences):
        raise ValueError("scores and sentences must align")
    order = sorted(range(len(sentences)), key=lambda i: (-scores[i], i))
    chosen = sorted(order[: min(m, len(sentences))])
    return GeneratedSummary(
        sentences=[sentences[i] for i in chosen],
        method=method,
        scores=[float(scores[i]) for i in chosen],
    )
