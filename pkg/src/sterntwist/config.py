"""Shared configuration knobs."""
from __future__ import annotations

from dataclasses import dataclass

#: Environment variable overriding the default truncation order of the CLI.
ORDER_ENV_VAR = "STERNTWIST_ORDER"


@dataclass(frozen=True)
class Defaults:
    """Built-in defaults; CLI flags win over the environment, which wins
    over these."""

    truncation_order: int = 1024
    max_e: int = 10
    #: Inputs with more binary digits than this are rejected by the
    #: explicit subsequence enumerators.
    enumeration_guard_bits: int = 24


DEFAULTS = Defaults()
