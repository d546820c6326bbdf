"""
Pluggable importers; only the synthetic generator ships
"""
from typing import Dict, Type

from .base import CorpusImporter
from .synthetic import (
    EvolutionRates,
    SyntheticImporter,
    SyntheticShape,
    evolve_snapshot,
    generate_synthetic_snapshot,
)

IMPORTERS: Dict[str, Type[CorpusImporter]] = {
    SyntheticImporter.name: SyntheticImporter,
}

__all__ = [
    "CorpusImporter",
    "EvolutionRates",
    "IMPORTERS",
    "SyntheticImporter",
    "SyntheticShape",
    "evolve_snapshot",
    "generate_synthetic_snapshot",
]
