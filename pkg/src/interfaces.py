"""
Interfaces (Protocols) para componentes principais.
"""
from typing import Any, Dict, List, Optional, Protocol

from src.binned_core import BinnedDataset
from src.inequality_stats import StatsBundle


class DatasetSource(Protocol):
    last_error: Optional[str]

    def read(self, scale: float = 1.0) -> bool: ...
    def get_datasets(self) -> List[BinnedDataset]: ...


class DatasetTask(Protocol):
    """Tarefa por dataset: devolve um dicionário com as colunas da saída."""

    def __call__(self, ds: BinnedDataset) -> Dict[str, Any]: ...


class Estimator(Protocol):
    name: str

    def estimate(self, ds: BinnedDataset) -> StatsBundle: ...
