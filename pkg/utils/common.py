"""Errors, enumeration limits and self-check switches shared by every package."""

import logging
import os
import re
from contextlib import contextmanager
from typing import Iterator, Optional

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_LIMIT = 2**22
"""Default ceiling on the number of elements any exhaustive enumeration may produce."""

FIELD_ENUMERATION_LIMIT = 2**20
HARD_ENUMERATION_CEILING = 2**26
LIMIT_ENV_VAR = "RINGCYCLIC_LIMIT"


class AlgebraError(Exception):
    """Root of every error raised by the library.

    Attributes:
        message: Human readable description, also used as the CLI error line.
        exit_code: Process exit code the CLI uses when this error escapes.
    """

    exit_code: int = 2

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)

    def __str__(self):
        return self.message


class SpecMismatch(AlgebraError):
    pass


class ZeroInversion(AlgebraError):
    pass


class LimitExceeded(AlgebraError):
    exit_code = 3


class DivisionByZeroPoly(AlgebraError):
    pass


class BothZero(AlgebraError):
    pass


class NotCoprime(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


class InvalidSpec(AlgebraError):
    pass


class NotInSubring(AlgebraError):
    pass


class NotADivisor(AlgebraError):
    pass


class NotIdempotent(AlgebraError):
    pass


class MixedParameters(AlgebraError):
    pass


class NotIdempotentComponents(AlgebraError):
    pass


class ParseError(AlgebraError):
    pass


def parse_limit(text: str) -> int:
    """Parse an enumeration limit written as `4194304`, `2**22` or `2^22`."""
    text = text.strip()
    match = re.fullmatch(r"(\d+)\s*(?:\*\*|\^)\s*(\d+)", text)
    if match:
        return int(match.group(1)) ** int(match.group(2))
    if text.isdigit():
        return int(text)
    raise ParseError(f"Invalid enumeration limit: {text!r}")


def enumeration_limit(override: Optional[int] = None) -> int:
    """Return the active enumeration ceiling.

    An explicit override wins, then the RINGCYCLIC_LIMIT environment variable,
    then DEFAULT_ENUMERATION_LIMIT. The result never exceeds HARD_ENUMERATION_CEILING.
    """
    if override is not None:
        limit = override
    elif LIMIT_ENV_VAR in os.environ:
        limit = parse_limit(os.environ[LIMIT_ENV_VAR])
    else:
        limit = DEFAULT_ENUMERATION_LIMIT
    if limit > HARD_ENUMERATION_CEILING:
        logger.warning(
            f"Enumeration limit {limit} clamped to hard ceiling {HARD_ENUMERATION_CEILING}"
        )
        limit = HARD_ENUMERATION_CEILING
    return limit


def check_limit(size: int, what: str, limit: Optional[int] = None) -> None:
    """Raise LimitExceeded if enumerating `size` elements would pass the ceiling."""
    ceiling = enumeration_limit(limit)
    if size > ceiling:
        raise LimitExceeded(
            f"Enumerating {what} needs {size} elements, above the limit {ceiling}"
        )


# Test-only fault hooks. A fault name in this set changes one constructive code
# path on purpose; the oracle has to notice.
KNOWN_FAULTS = frozenset({"dual-check-polynomial"})
_active_faults: set[str] = set()


def fault_active(name: str) -> bool:
    return name in _active_faults


def self_checks_enabled() -> bool:
    """Constructive postcondition asserts run only in debug mode without injected faults."""
    return __debug__ and not _active_faults


@contextmanager
def inject_fault(name: str) -> Iterator[None]:
    """Activate a fault hook for the duration of the block."""
    if name not in KNOWN_FAULTS:
        raise InvalidSpec(
            f"Unknown fault {name!r}; known faults: {', '.join(sorted(KNOWN_FAULTS))}"
        )
    logger.warning(f"Fault injected: {name}")
    _active_faults.add(name)
    try:
        yield
    finally:
        _active_faults.discard(name)
