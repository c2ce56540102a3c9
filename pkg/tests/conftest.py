"""Shared fixtures: a changelog-style commit corpus, a tiny deterministic
embedding file, and a helper that builds throwaway git repositories."""

from __future__ import annotations

import random
import subprocess
from pathlib import Path

import pytest

from relnotes.vectorize import EmbeddingStore

# A real-world-shaped release: four human note sentences and the seven
# commit subjects that produced them, two of which are boilerplate.
REFERENCE_NOTES = [
    "Add sanctum cookie endpoint to default cors paths",
    "Modify the cache.php docblocks",
    "Add stub handler",
    "Closed @auth correctly",
]

COMMIT_SUBJECTS = [
    "Update CHANGELOG.md",
    "Merge branch '8.x' of github.com:laravel/laravel into 8.x",
    "Modify the cache.php docblocks",
    "add stub handler",
    "closed @auth correctly",
    "add sanctum cookie endpoint to default cors paths",
    "add auth line",
]

# The five subjects that survive the deny-list filter, in order.
KEPT_SUBJECTS = COMMIT_SUBJECTS[2:]


@pytest.fixture
def commit_subjects() -> list[str]:
    return list(COMMIT_SUBJECTS)


@pytest.fixture
def reference_notes() -> list[str]:
    return list(REFERENCE_NOTES)


def make_embedding_store(words, dimension: int = 8, seed: int = 7) -> EmbeddingStore:
    """Deterministic dense vectors for a word list, for in-memory tests."""
    rng = random.Random(seed)
    vectors = {
        w: tuple(rng.uniform(-1.0, 1.0) for _ in range(dimension))
        for w in sorted(set(words))
    }
    return EmbeddingStore(dimension=dimension, vectors=vectors)


def write_embedding_file(path: Path, store: EmbeddingStore) -> Path:
    lines = []
    for word in sorted(store.vectors):
        values = " ".join(f"{x:.6f}" for x in store.vectors[word])
        lines.append(f"{word} {values}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def git(repo: Path, *args: str) -> str:
    proc = subprocess.run(
        ["git", "-C", str(repo), *args],
        capture_output=True,
        text=True,
        env={
            "GIT_AUTHOR_NAME": "fixture",
            "GIT_AUTHOR_EMAIL": "fixture@example.com",
            "GIT_COMMITTER_NAME": "fixture",
            "GIT_COMMITTER_EMAIL": "fixture@example.com",
            "GIT_AUTHOR_DATE": "2021-01-01T00:00:00 +0000",
            "GIT_COMMITTER_DATE": "2021-01-01T00:00:00 +0000",
            "HOME": str(repo),
            "PATH": "/usr/bin:/bin:/usr/local/bin",
        },
        check=False,
    )
    if proc.returncode != 0:
        raise RuntimeError(f"git {' '.join(args)} failed: {proc.stderr}")
    return proc.stdout


def init_repo(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    git(path, "init", "--quiet", "--initial-branch=main")
    return path


def add_commit(repo: Path, message: str, filename: str = "f.txt") -> str:
    target = repo / filename
    previous = target.read_text() if target.exists() else ""
    target.write_text(previous + message + "\n")
    git(repo, "add", "-A")
    git(repo, "commit", "--quiet", "--allow-empty", "-m", message)
    return git(repo, "rev-parse", "HEAD").strip()


@pytest.fixture
def linear_repo(tmp_path) -> Path:
    """Three commits A <- B <- C with tags v1 at A and v2 at C."""
    repo = init_repo(tmp_path / "repo")
    add_commit(repo, "A: initial scaffold")
    git(repo, "tag", "v1")
    add_commit(repo, "B: add stub handler")
    add_commit(repo, "C: fix crash on startup")
    git(repo, "tag", "v2")
    return repo
