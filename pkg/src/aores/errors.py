"""Shared exception types and resource limits."""

import os

ENV_WORD_LIMIT = "AORES_MAX_ELIM_WORDS"
DEFAULT_WORD_LIMIT = 500_000


class CertificationError(ValueError):
    """A computation was requested beyond the certified degree bound."""


class ResourceLimitError(RuntimeError):
    """An exact elimination would exceed the configured word budget."""


def word_budget() -> int:
    """Maximum number of basis words a single elimination may involve.

    Configurable through the ``AORES_MAX_ELIM_WORDS`` environment variable.
    """
    raw = os.environ.get(ENV_WORD_LIMIT)
    if raw is None:
        return DEFAULT_WORD_LIMIT
    return int(raw)


def check_word_budget(count: int, where: str) -> None:
    limit = word_budget()
    if count > limit:
        raise ResourceLimitError(
            f"{where}: elimination over {count} words exceeds the configured "
            f"limit of {limit} (set {ENV_WORD_LIMIT} to raise it)"
        )
