"""Text cleaning, trivial-line filtering and tokenization.

Raw commit lines and release-note bodies pass through ``clean_text`` to
become sentence lists, ``filter_trivial`` drops boilerplate commit lines,
and ``tokenize`` produces the token views consumed by the vectorizers and
the ROUGE scorer. Everything here is rule-based and deterministic: no
statistical sentence splitter, a vendored stopword list, and a vendored
Porter stemmer.
"""

from __future__ import annotations

import fnmatch
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import porter


class EmptySentenceError(ValueError):
    """Raised when tokenize() receives a whitespace-only sentence."""


def _load_wordlist(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


def load_wordlist(path: str | Path) -> list[str]:
    """Read a plain-text config list: one entry per line, # comments ignored."""
    return _load_wordlist(Path(path).read_text(encoding="utf-8"))


def _load_packaged(name: str) -> list[str]:
    text = resources.files("relnotes").joinpath("data", name).read_text(encoding="utf-8")
    return _load_wordlist(text)


DEFAULT_STOPWORDS = frozenset(_load_packaged("stopwords.txt"))
DEFAULT_DENYLIST = tuple(_load_packaged("denylist.txt"))

_HTML_COMMENT = re.compile(r"<!--.*?-->", re.DOTALL)
_HTML_TAG = re.compile(r"</?[a-zA-Z][^>\n]*>")
_URL = re.compile(r"(?:https?://|www\.)[^\s)\]>]+", re.IGNORECASE)
_ISSUE_REF = re.compile(r"#\d+\b")
_MENTION = re.compile(r"(?<![A-Za-z0-9._\-])@[A-Za-z0-9](?:-?[A-Za-z0-9]){0,38}")
_SIGNOFF = re.compile(r"(signed[\s-]?off[\s-]?by|co[\s-]?authored[\s-]?by)\b.*$", re.IGNORECASE)
# 1-6 leading # marks a markdown headline line unless followed by a digit
# (then it is an issue reference like "#123 ...", handled separately).
_MD_HEADING = re.compile(r"^\s{0,3}#{1,6}(?!\d)")
_BULLET = re.compile(r"^\s*(?:[-*+•]\s+)+")
_SENTENCE_SPLIT = re.compile(r"[.!?]+(?=\s|$)")
_EMPTY_BRACKETS = re.compile(r"\(\s*\)|\[\s*\]|\{\s*\}")
_LEADING_HASHES = re.compile(r"^#+")
_WS = re.compile(r"\s+")

_STRIP_CHARS = " \t,;:-–—"


def clean_text(text: str) -> list[str]:
    """Clean a raw text block into a list of trimmed sentences.

    Strips HTML, deletes markdown headline lines and sign-off trailers,
    removes URLs, issue references (#123) and @mentions, splits on
    sentence punctuation / newlines / bullet markers, and normalizes
    whitespace. Empty sentences are dropped. Idempotent: cleaning an
    already-cleaned sentence returns it unchanged.
    """
    text = _HTML_COMMENT.sub(" ", text)
    text = _HTML_TAG.sub(" ", text)
    sentences: list[str] = []
    for line in text.splitlines() or [text]:
        if not line.strip():
            continue
        if _MD_HEADING.match(line):
            continue
        line = _SIGNOFF.sub("", line)
        line = _BULLET.sub("", line, count=1)
        line = _URL.sub(" ", line)
        for segment in _SENTENCE_SPLIT.split(line):
            segment = _ISSUE_REF.sub(" ", segment)
            segment = _MENTION.sub(" ", segment)
            segment = _LEADING_HASHES.sub("", segment.lstrip())
            prev = None
            while prev != segment:
                prev = segment
                segment = _EMPTY_BRACKETS.sub(" ", segment)
            segment = _WS.sub(" ", segment).strip(_STRIP_CHARS)
            if segment:
                sentences.append(segment)
    return sentences


def filter_trivial(lines: list[str], denylist: tuple[str, ...] | list[str] | None = None) -> list[str]:
    """Drop deny-listed lines and exact duplicates, keeping first occurrences.

    Deny-list entries are case-insensitive glob patterns matched against
    the whole line; the default list covers merge commits, changelog and
    version-bump noise.
    """
    patterns = DEFAULT_DENYLIST if denylist is None else tuple(denylist)
    compiled = [re.compile(fnmatch.translate(p), re.IGNORECASE) for p in patterns]
    seen: set[str] = set()
    out: list[str] = []
    for line in lines:
        if any(rx.match(line) for rx in compiled):
            continue
        if line in seen:
            continue
        seen.add(line)
        out.append(line)
    return out


@dataclass(frozen=True)
class TokenizedSentence:
    """A sentence with its lowercase token views.

    content_tokens excludes stopwords; stemmed_tokens are the Porter stems
    of content_tokens (used for ROUGE matching only).
    """

    raw: str
    tokens: tuple[str, ...]
    content_tokens: tuple[str, ...]
    stemmed_tokens: tuple[str, ...]


# Lowercase word tokens; intra-word dots and hyphens survive so identifiers
# like "cache.php" or "conditional-and-boolean-operators.md" stay whole.
_TOKEN = re.compile(r"[a-z0-9]+(?:[.\-][a-z0-9]+)*")


def tokenize(sentence: str, stopwords: frozenset[str] | set[str] | None = None) -> TokenizedSentence:
    """Tokenize one sentence: lowercase, split, drop stopwords, stem."""
    if not sentence.strip():
        raise EmptySentenceError("cannot tokenize a whitespace-only sentence")
    sw = DEFAULT_STOPWORDS if stopwords is None else stopwords
    tokens = tuple(_TOKEN.findall(sentence.lower()))
    content = tuple(t for t in tokens if t not in sw)
    stemmed = tuple(porter.stem(t) for t in content)
    return TokenizedSentence(raw=sentence, tokens=tokens, content_tokens=content, stemmed_tokens=stemmed)
