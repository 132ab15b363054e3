"""
Controlador de execução em lote, separando a orquestração do CLI.

As tarefas por dataset são funções picláveis (RpmeTask, MgbeTask) para poderem
rodar num ProcessPoolExecutor; a saída mantém a ordem de entrada.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.binned_core import BinnedDataset
from src.exceptions import BinequalityException
from src.inequality_stats import STAT_FIELDS
from src.interfaces import DatasetTask
from src.logger import get_logger
from src.mgbe import MgbeConfig, mgbe_estimate
from src.rpme import RpmeConfig, rpme_estimate

RPME_COLUMNS = [
    'dataset_id', 'n', 'B', 'flavor', 'alpha_hat', 'alpha_tilde', 'top_value',
    'mean', 'median', 'sd', 'cv', 'gini', 'theil', 'mld', 'error',
]
MGBE_COLUMNS = [
    'dataset_id', 'n', 'B', 'selected', 'criterion', 'combine', 'n_survivors',
    'mean', 'median', 'sd', 'cv', 'gini', 'theil', 'mld', 'error',
]


def _error_text(e: Exception) -> str:
    return f"{type(e).__name__}: {e}"


def _empty_stats() -> Dict[str, Any]:
    return {name: None for name in STAT_FIELDS if name != 'variance'}


@dataclass(frozen=True)
class RpmeTask:
    cfg: RpmeConfig = field(default_factory=RpmeConfig)
    columns = RPME_COLUMNS

    def __call__(self, ds: BinnedDataset) -> Dict[str, Any]:
        row = {
            'dataset_id': ds.id, 'n': ds.n, 'B': ds.B, 'flavor': self.cfg.flavor.value,
            'alpha_hat': None, 'alpha_tilde': None, 'top_value': None, 'error': None,
        }
        row.update(_empty_stats())
        try:
            result = rpme_estimate(ds, self.cfg)
        except (BinequalityException, ArithmeticError, ValueError) as e:
            row['error'] = _error_text(e)
            return row
        stats = result.stats.as_dict()
        stats.pop('variance')
        row.update(stats)
        row.update(alpha_hat=result.alpha_hat, alpha_tilde=result.alpha_tilde, top_value=result.top_value)
        return row


@dataclass(frozen=True)
class MgbeTask:
    cfg: MgbeConfig = field(default_factory=MgbeConfig)
    columns = MGBE_COLUMNS
    # JSON leva o detalhe por modelo; CSV não
    details: bool = False

    def __call__(self, ds: BinnedDataset) -> Dict[str, Any]:
        row = {
            'dataset_id': ds.id, 'n': ds.n, 'B': ds.B, 'selected': None,
            'criterion': self.cfg.criterion.value, 'combine': self.cfg.combine.value,
            'n_survivors': 0, 'error': None,
        }
        row.update(_empty_stats())
        try:
            result = mgbe_estimate(ds, self.cfg)
        except (BinequalityException, ArithmeticError, ValueError) as e:
            row['error'] = _error_text(e)
            if self.details and getattr(e, 'reasons', None):
                row['models'] = [{'kind': k, 'screen_reason': r} for k, r in e.reasons.items()]
            return row
        stats = result.stats.as_dict()
        stats.pop('variance')
        row.update(stats)
        row.update(
            selected=None if result.selected is None else result.selected.value,
            n_survivors=len(result.survivors),
        )
        if self.details:
            row['models'] = result.to_dict()['models']
        return row


class BatchController:
    def __init__(
        self,
        log_fn: Optional[Callable[[str], None]] = None,
        progress_fn: Optional[Callable[[int, int, Dict[str, Any]], None]] = None,
    ):
        self._log = log_fn or (lambda message: None)
        self._progress = progress_fn or (lambda current, total, row: None)
        self._logger = get_logger()

    def run(self, datasets: Sequence[BinnedDataset], task: DatasetTask, jobs: int = 1) -> Dict[str, Any]:
        """
        Executa a tarefa sobre todos os datasets.

        Returns:
            Dict: {'total', 'ok', 'erros', 'rows'}; as linhas seguem a ordem de entrada
        """
        total = len(datasets)
        rows: List[Dict[str, Any]] = []
        if jobs > 1 and total > 1:
            self._log(f"Processando {total} datasets com {jobs} processos")
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                # map preserva a ordem de entrada
                for current, row in enumerate(executor.map(task, datasets, chunksize=_chunksize(total, jobs)), 1):
                    rows.append(row)
                    self._report(current, total, row)
        else:
            self._log(f"Processando {total} datasets")
            for current, ds in enumerate(datasets, 1):
                row = task(ds)
                rows.append(row)
                self._report(current, total, row)

        erros = sum(1 for row in rows if row.get('error'))
        self._log(f"Concluído: {total - erros} ok, {erros} com erro")
        return {'total': total, 'ok': total - erros, 'erros': erros, 'rows': rows}

    def _report(self, current: int, total: int, row: Dict[str, Any]):
        if row.get('error'):
            self._logger.warning(f"[{current}/{total}] {row['dataset_id']}: {row['error']}")
        else:
            self._logger.debug(f"[{current}/{total}] {row['dataset_id']} ok")
        self._progress(current, total, row)


def _chunksize(total: int, jobs: int) -> int:
    return max(1, total // (jobs * 4))
