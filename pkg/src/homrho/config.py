"""Sampling defaults shared by the CLI and the scripts."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CheckConfig:
    seed: int = 0
    connection_samples: int = 6
    cochain_samples: int = 100
    max_arity: int = 2
    poisson_samples: int = 100


DEFAULTS = CheckConfig()
