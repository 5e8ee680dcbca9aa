"""Theorem checks over enumerated configurations, grouped by topic, plus the seeded hunter."""
from __future__ import annotations

from .config import CheckConfig, ConfigError, config_from_json, default_config, load_config
from .core import CORE_THEOREMS, run_core_checks
from .localization import LOCALIZATION_THEOREMS, run_localization_checks
from .radical import RADICAL_THEOREMS, run_radical_checks
from .report import THEOREMS, TheoremReport
from .structure import STRUCTURE_THEOREMS, run_structure_checks
from .transfer import TRANSFER_THEOREMS, run_transfer_checks

GROUPS = (
    (CORE_THEOREMS, run_core_checks),
    (STRUCTURE_THEOREMS, run_structure_checks),
    (RADICAL_THEOREMS, run_radical_checks),
    (LOCALIZATION_THEOREMS, run_localization_checks),
    (TRANSFER_THEOREMS, run_transfer_checks),
)


def run_all(cfg: CheckConfig) -> TheoremReport:
    """Run every enabled theorem; tallies come back in catalog order."""
    enabled = set(cfg.enabled)
    report = TheoremReport([t for t in THEOREMS if t in enabled])
    for ids, runner in GROUPS:
        if enabled.intersection(ids):
            report.merge(runner(cfg))
    return report


__all__ = ["CheckConfig", "ConfigError", "GROUPS", "THEOREMS", "TheoremReport", "config_from_json",
           "default_config", "load_config", "run_all"]
