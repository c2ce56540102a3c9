"""Release harvesting from local git history and the GitHub REST API.

Local walking shells out to the git CLI; remote harvesting speaks REST v3
(releases, compare, pulls). Commit messages are reduced to one candidate
line each: the first line for regular commits, the merge-PR title for
merge commits. Release pairing is by publish date, earliest first, and the
very first release takes every commit from repository start.
"""

from __future__ import annotations

import logging
import os
import re
import subprocess
import time
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import requests

from .corpus import ReleaseDataset, ReleaseRecord
from .errors import (
    ApiError,
    AuthError,
    DisjointReleasesError,
    GitError,
    RateLimitError,
    RepositorySkipped,
    UnknownTagError,
)
from .preprocess import clean_text, filter_trivial

log = logging.getLogger(__name__)

_MERGE_PR = re.compile(r"^Merge pull request #(\d+)\b")
# git expands %x00/%x1e itself: NUL bytes cannot ride in an argv string.
_RECORD_SEP = "\x1e"
_FIELD_SEP = "\x00"


@dataclass(frozen=True)
class CommitInfo:
    """One commit: merge commits have two or more parents."""

    hash: str
    parents: tuple[str, ...]
    message: str

    @property
    def is_merge(self) -> bool:
        return len(self.parents) >= 2


@dataclass(frozen=True)
class HarvestConfig:
    repo: str
    token_env: str = "GITHUB_TOKEN"
    min_releases: int = 0
    request_timeout: float = 30.0
    max_retries: int = 3
    api_base_url: str = "https://api.github.com"
    min_stars: int = 0

    def validate(self) -> None:
        owner, sep, name = self.repo.partition("/")
        if not owner or sep != "/" or not name or "/" in name:
            raise ValueError(f"repo must be 'owner/name', got {self.repo!r}")
        if self.min_releases < 0:
            raise ValueError("min_releases must be >= 0")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.request_timeout <= 0:
            raise ValueError("request_timeout must be positive")
        if self.min_stars < 0:
            raise ValueError("min_stars must be >= 0")


def _run_git(repo_path: str, *args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        ["git", "-C", str(repo_path), *args],
        capture_output=True,
        text=True,
    )


def _resolve_tag(repo_path: str, tag: str) -> str:
    """Tag name to target commit hash, following annotated tags."""
    proc = _run_git(repo_path, "rev-parse", "--verify", "--quiet", f"{tag}^{{commit}}")
    if proc.returncode != 0:
        raise UnknownTagError(f"tag {tag!r} does not resolve to a commit")
    return proc.stdout.strip()


def _is_ancestor(repo_path: str, older: str, newer: str) -> bool:
    proc = _run_git(repo_path, "merge-base", "--is-ancestor", older, newer)
    if proc.returncode == 0:
        return True
    if proc.returncode == 1:
        return False
    raise GitError(f"git merge-base failed: {proc.stderr.strip()}")


def _parse_log(raw: str) -> list[CommitInfo]:
    commits = []
    for chunk in raw.split(_RECORD_SEP):
        chunk = chunk.lstrip("\n")
        if not chunk.strip():
            continue
        sha, parents, message = chunk.split(_FIELD_SEP, 2)
        commits.append(
            CommitInfo(
                hash=sha.strip(),
                parents=tuple(parents.split()),
                message=message.rstrip("\n"),
            )
        )
    return commits


def collect_commits_between(
    repo_path: str, from_tag: str, to_tag: str
) -> list[CommitInfo]:
    """Commits reachable from to_tag but not from_tag, newest first.

    Both tags must resolve and from_tag must be an ancestor of to_tag.
    Identical endpoints yield an empty list.
    """
    from_hash = _resolve_tag(repo_path, from_tag)
    to_hash = _resolve_tag(repo_path, to_tag)
    if not _is_ancestor(repo_path, from_hash, to_hash):
        raise DisjointReleasesError(
            f"{from_tag!r} is not an ancestor of {to_tag!r}: disjoint releases"
        )
    proc = _run_git(
        repo_path,
        "log",
        "--format=%H%x00%P%x00%B%x1e",
        f"{from_hash}..{to_hash}",
    )
    if proc.returncode != 0:
        raise GitError(f"git log failed: {proc.stderr.strip()}")
    return _parse_log(proc.stdout)


def collect_commits_to(repo_path: str, to_tag: str) -> list[CommitInfo]:
    """Every commit reachable from to_tag, newest first (no predecessor)."""
    to_hash = _resolve_tag(repo_path, to_tag)
    proc = _run_git(
        repo_path,
        "log",
        "--format=%H%x00%P%x00%B%x1e",
        to_hash,
    )
    if proc.returncode != 0:
        raise GitError(f"git log failed: {proc.stderr.strip()}")
    return _parse_log(proc.stdout)


def merge_pr_number(first_line: str) -> int | None:
    match = _MERGE_PR.match(first_line)
    return int(match.group(1)) if match else None


def to_source_lines(
    commits: Sequence[CommitInfo],
    pr_titles: Mapping[int, str] | None = None,
) -> list[str]:
    """One candidate line per commit, in commit order, uncleaned.

    Regular commits contribute their first message line. Merge commits in
    GitHub's default layout contribute the second non-empty line; when that
    is missing, the PR title from ``pr_titles`` if available, else the
    first line. Commits with empty messages contribute nothing.
    """
    lines: list[str] = []
    for commit in commits:
        message_lines = commit.message.splitlines()
        non_empty = [ln for ln in message_lines if ln.strip()]
        if not non_empty:
            continue
        first = non_empty[0]
        if commit.is_merge:
            number = merge_pr_number(first)
            if number is not None:
                if len(non_empty) > 1:
                    lines.append(non_empty[1])
                    continue
                if pr_titles and number in pr_titles:
                    lines.append(pr_titles[number])
                    continue
        lines.append(first)
    return lines


class _Api:
    """Thin GitHub REST v3 client with bounded retry on rate limits."""

    def __init__(
        self,
        config: HarvestConfig,
        session: requests.Session | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ) -> None:
        self.config = config
        self.session = session or requests.Session()
        self.sleep = sleep
        self.headers = {"Accept": "application/vnd.github+json"}
        if config.token_env:
            token = os.environ.get(config.token_env)
            if not token:
                raise AuthError(
                    f"environment variable {config.token_env} is not set"
                )
            self.headers["Authorization"] = f"Bearer {token}"

    def get(self, path: str, params: Mapping[str, object] | None = None):
        url = f"{self.config.api_base_url.rstrip('/')}{path}"
        attempts = 0
        while True:
            try:
                resp = self.session.get(
                    url,
                    params=dict(params or {}),
                    headers=self.headers,
                    timeout=self.config.request_timeout,
                )
            except requests.RequestException as exc:
                if attempts >= self.config.max_retries:
                    raise ApiError(f"GET {path} failed: {exc}") from exc
                attempts += 1
                self.sleep(min(2.0**attempts, 60.0))
                continue
            if resp.status_code == 200:
                return resp.json()
            if resp.status_code == 401:
                raise AuthError(f"GET {path}: authentication failed (401)")
            rate_limited = resp.status_code == 429 or (
                resp.status_code == 403
                and resp.headers.get("X-RateLimit-Remaining") == "0"
            )
            if rate_limited:
                if attempts >= self.config.max_retries:
                    raise RateLimitError(
                        f"GET {path}: rate limit exhausted after "
                        f"{self.config.max_retries} retries"
                    )
                attempts += 1
                self.sleep(min(2.0**attempts, 60.0))
                continue
            if resp.status_code == 403:
                raise AuthError(f"GET {path}: access forbidden (403)")
            if resp.status_code >= 500 and attempts < self.config.max_retries:
                attempts += 1
                self.sleep(min(2.0**attempts, 60.0))
                continue
            raise ApiError(f"GET {path}: unexpected status {resp.status_code}")

    def paginated(self, path: str, key: str | None = None, **params) -> list[dict]:
        """Collect every page of a list endpoint (100 items per page)."""
        items: list[dict] = []
        page = 1
        while True:
            payload = self.get(path, {**params, "per_page": 100, "page": page})
            batch = payload[key] if key else payload
            items.extend(batch)
            if len(batch) < 100:
                return items
            page += 1


def _api_commit(payload: dict) -> CommitInfo:
    return CommitInfo(
        hash=payload["sha"],
        parents=tuple(p["sha"] for p in payload.get("parents", [])),
        message=payload["commit"]["message"],
    )


def _pr_titles_for(api: _Api, repo: str, commits: Sequence[CommitInfo]) -> dict[int, str]:
    """Fetch PR titles only for merge commits that need the API fallback."""
    titles: dict[int, str] = {}
    for commit in commits:
        if not commit.is_merge:
            continue
        non_empty = [ln for ln in commit.message.splitlines() if ln.strip()]
        if len(non_empty) != 1:
            continue
        number = merge_pr_number(non_empty[0])
        if number is None or number in titles:
            continue
        try:
            payload = api.get(f"/repos/{repo}/pulls/{number}")
        except ApiError:
            log.warning("PR #%d title lookup failed; using merge line", number)
            continue
        title = payload.get("title")
        if isinstance(title, str) and title.strip():
            titles[number] = title.strip()
    return titles


def _clean_lines(lines: Sequence[str]) -> list[str]:
    out: list[str] = []
    for line in lines:
        out.extend(clean_text(line))
    return out


def harvest_releases(
    config: HarvestConfig,
    session: requests.Session | None = None,
    sleep: Callable[[float], None] = time.sleep,
) -> ReleaseDataset:
    """Build one ReleaseRecord per published release, sorted by date.

    Repositories under the configured release or star thresholds raise
    RepositorySkipped, a skip signal rather than a failure. Source lines
    are cleaned and deny-list filtered here so the stored dataset is ready
    to summarize; reference notes come from the release body, cleaned.
    """
    config.validate()
    api = _Api(config, session=session, sleep=sleep)
    if config.min_stars > 0:
        meta = api.get(f"/repos/{config.repo}")
        stars = int(meta.get("stargazers_count", 0))
        if stars < config.min_stars:
            raise RepositorySkipped(
                f"{config.repo}: {stars} stars < min_stars={config.min_stars}"
            )
    releases = [
        r
        for r in api.paginated(f"/repos/{config.repo}/releases")
        if not r.get("draft") and r.get("published_at")
    ]
    if len(releases) < config.min_releases:
        raise RepositorySkipped(
            f"{config.repo}: {len(releases)} releases < "
            f"min_releases={config.min_releases}"
        )
    releases.sort(key=lambda r: (r["published_at"], r["tag_name"]))
    for a, b in zip(releases, releases[1:]):
        if a["published_at"] == b["published_at"]:
            log.warning(
                "releases %s and %s share publish date %s; ordering by tag name",
                a["tag_name"],
                b["tag_name"],
                a["published_at"],
            )

    records: list[ReleaseRecord] = []
    previous_tag: str | None = None
    for release in releases:
        tag = release["tag_name"]
        if previous_tag is None:
            payloads = api.paginated(f"/repos/{config.repo}/commits", sha=tag)
            commits = [_api_commit(p) for p in payloads]
        else:
            payloads = api.paginated(
                f"/repos/{config.repo}/compare/{previous_tag}...{tag}",
                key="commits",
            )
            # compare lists oldest first; match local walking (newest first)
            commits = [_api_commit(p) for p in reversed(payloads)]
        titles = _pr_titles_for(api, config.repo, commits)
        source = filter_trivial(_clean_lines(to_source_lines(commits, titles)))
        reference = _clean_lines((release.get("body") or "").splitlines())
        records.append(
            ReleaseRecord(
                project=config.repo,
                tag=tag,
                date=release["published_at"],
                reference_notes=reference,
                source=source,
            )
        )
        previous_tag = tag

    dataset = ReleaseDataset(
        releases=records,
        provenance=(
            f"github:{config.repo} releases={len(records)} "
            f"min_releases={config.min_releases} min_stars={config.min_stars}"
        ),
    )
    dataset.validate()
    return dataset
