"""
Base importer class for raw national corpus formats
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Optional

from ...models import Snapshot


class CorpusImporter(ABC):
    """Base class for converters from a raw source format to snapshots"""

    name: str = "base"

    def __init__(self, source: Optional[str | Path] = None):
        self.source = Path(source) if source is not None else None

    @abstractmethod
    def import_series(self) -> List[Snapshot]:
        """Convert the source into snapshots ordered by date"""
        pass

    def import_snapshot(self, index: int = 0) -> Snapshot:
        return self.import_series()[index]
