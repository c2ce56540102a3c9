"""Exception types shared across the toolkit."""


class RelnotesError(Exception):
    """Base class for all domain failures raised by this package."""


class DatasetError(RelnotesError):
    """A dataset file or record violates the documented JSON schema."""


class GitError(RelnotesError):
    """A local git operation failed."""


class UnknownTagError(GitError):
    """A tag name does not resolve to a commit."""


class DisjointReleasesError(GitError):
    """The from-tag is not an ancestor of the to-tag."""


class ApiError(RelnotesError):
    """The GitHub REST API returned an unrecoverable error."""


class AuthError(ApiError):
    """Missing or rejected API credentials."""


class RateLimitError(ApiError):
    """API rate limit still exhausted after the configured retries."""


class RepositorySkipped(RelnotesError):
    """Signal that a repository fails the harvest selection criteria.

    Not a crash: callers are expected to catch this and move on.
    """


class EmbeddingError(RelnotesError):
    """An embeddings file is unreadable or dimensionally inconsistent."""
