"""burnside_sharp._utils.settings"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from ..errors import ConfigError

MAX_N_ENV = "BURNSIDE_SHARP_MAX_N"


@dataclass(frozen=True)
class Settings:
    """
    Ceilings and numerical defaults shared by the solver, the sweeps and the CLI.

    :param sweep_ceiling: Largest n a bounds or accuracy sweep may reach.
    :param monotone_ceiling: Largest n_max of a monotonicity check (one solve per n).
    :param default_tol_a: Bracket width requested when the caller gives none.
    :param tol_floor: Smallest bracket width the solver accepts.
    :param max_iterations: Iteration cap of the safeguarded Newton loop.
    """

    sweep_ceiling: int = 1_000_000
    monotone_ceiling: int = 10_000
    default_tol_a: float = 1e-24
    tol_floor: float = 1e-25
    max_iterations: int = 80

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Builds the settings, letting BURNSIDE_SHARP_MAX_N lower both ceilings.

        :param environ: Mapping to read instead of os.environ.
        :return: The effective settings.
        :raises ConfigError: If the variable is not a positive integer.
        """
        env = os.environ if environ is None else environ
        settings = cls()
        raw = env.get(MAX_N_ENV, "").strip()
        if not raw:
            return settings
        try:
            max_n = int(raw)
        except ValueError:
            # pylint: disable=raise-missing-from
            raise ConfigError(f"{MAX_N_ENV} must be an integer, got {raw!r}")
        if max_n < 1:
            raise ConfigError(f"{MAX_N_ENV} must be positive, got {max_n}")
        return replace(
            settings,
            sweep_ceiling=min(settings.sweep_ceiling, max_n),
            monotone_ceiling=min(settings.monotone_ceiling, max_n),
        )


DEFAULTS = Settings()
