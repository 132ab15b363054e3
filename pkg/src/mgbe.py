# src/mgbe.py
"""
Estimador beta generalizado multimodelo (MGBE).

Ajusta um conjunto de modelos da família GB, descarta os que não convergiram
ou têm variância indefinida, calcula as estatísticas de cada sobrevivente pela
grade de quantis e seleciona (ou pondera) pelo AIC/BIC.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src import config
from src.binned_core import BinnedDataset
from src.binned_mle import FitConfig, FitDiagnostics, FittedDistribution, fit, g2_test
from src.exceptions import (
    BinequalityException,
    ConfigurationError,
    EstimationFailedError,
    UnidentifiableError,
)
from src.gb_family import DistributionKind, param_names, parse_kind, quantile
from src.inequality_stats import STAT_FIELDS, StatsBundle, WeightedSample, compute_all
from src.logger import get_logger
from src.validators import Validators

SCREEN_NOT_CONVERGED = "não convergiu"
SCREEN_UNDEFINED_VARIANCE = "variância indefinida"


class Criterion(str, Enum):
    AIC = 'aic'
    BIC = 'bic'


class Combine(str, Enum):
    SELECT = 'select'
    AVERAGE = 'average'


@dataclass(frozen=True)
class MgbeConfig:
    models: Tuple[DistributionKind, ...] = tuple(DistributionKind)
    criterion: Criterion = Criterion.AIC
    combine: Combine = Combine.SELECT
    q: int = config.DEFAULT_QUANTILES
    fit: FitConfig = field(default_factory=FitConfig)
    model_jobs: int = 1

    def __post_init__(self):
        try:
            models = tuple(parse_kind(m) for m in self.models)
            criterion = Criterion(self.criterion)
            combine = Combine(self.combine)
        except (ValueError, BinequalityException) as e:
            raise ConfigurationError(str(e)) from None
        if not models:
            raise ConfigurationError("Lista de modelos não pode estar vazia")
        # duplicatas removidas mantendo a ordem
        models = tuple(dict.fromkeys(models))
        ok, msg = Validators.validate_quantiles(self.q)
        if not ok:
            raise ConfigurationError(msg)
        ok, msg = Validators.validate_jobs(self.model_jobs)
        if not ok:
            raise ConfigurationError(msg)
        object.__setattr__(self, 'models', models)
        object.__setattr__(self, 'criterion', criterion)
        object.__setattr__(self, 'combine', combine)
        object.__setattr__(self, 'q', int(self.q))


@dataclass(frozen=True)
class ModelOutcome:
    kind: DistributionKind
    fitted: Optional[FittedDistribution]
    diagnostics: Optional[FitDiagnostics]
    stats: Optional[StatsBundle]
    weight: float
    screen_reason: Optional[str] = None

    @property
    def survived(self) -> bool:
        return self.screen_reason is None


@dataclass(frozen=True)
class MgbeResult:
    dataset_id: str
    per_model: Tuple[ModelOutcome, ...]
    selected: Optional[DistributionKind]
    stats: StatsBundle
    criterion: Criterion
    combine: Combine

    @property
    def survivors(self) -> List[ModelOutcome]:
        return [m for m in self.per_model if m.survived]

    def to_dict(self) -> Dict:
        """Representação serializável (JSON) com o detalhe de cada modelo."""
        models = []
        for outcome in self.per_model:
            entry = {
                'kind': outcome.kind.value,
                'weight': outcome.weight,
                'screen_reason': outcome.screen_reason,
            }
            if outcome.fitted is not None:
                entry['params'] = dict(zip(param_names(outcome.kind), outcome.fitted.params))
                entry['loglik'] = outcome.fitted.loglik
                entry['converged'] = outcome.fitted.converged
                entry['mean_defined'] = outcome.fitted.mean_defined
                entry['variance_defined'] = outcome.fitted.variance_defined
            if outcome.diagnostics is not None:
                entry.update({
                    'g2': outcome.diagnostics.g2,
                    'df': outcome.diagnostics.df,
                    'p_value': outcome.diagnostics.p_value,
                    'aic': outcome.diagnostics.aic,
                    'bic': outcome.diagnostics.bic,
                })
            if outcome.stats is not None:
                entry['stats'] = outcome.stats.as_dict()
            models.append(entry)
        return {
            'dataset_id': self.dataset_id,
            'selected': None if self.selected is None else self.selected.value,
            'criterion': self.criterion.value,
            'combine': self.combine.value,
            'stats': self.stats.as_dict(),
            'models': models,
        }


def grid_probabilities(q: int) -> np.ndarray:
    """p_i = (2i - 1) / (2q), i = 1..q."""
    ok, msg = Validators.validate_quantiles(q)
    if not ok:
        raise ConfigurationError(msg)
    return (2.0 * np.arange(1, int(q) + 1) - 1.0) / (2.0 * int(q))


def quantile_grid(kind: DistributionKind, params: Sequence[float], q: int) -> WeightedSample:
    """Quantis igualmente espaçados do modelo, com pesos unitários."""
    return WeightedSample.unit(quantile(kind, params, grid_probabilities(q)))


def ic_weights(values: Sequence[float]) -> List[float]:
    """
    Pesos de Akaike: exp(-Δ/2) normalizados, Δ = valor - mínimo.
    """
    array = np.asarray(values, dtype=float)
    if array.size == 0 or not np.all(np.isfinite(array)):
        raise ValueError("valores do critério devem ser finitos e não vazios")
    relative = np.exp(-(array - array.min()) / 2.0)
    return list(relative / relative.sum())


def _criterion_value(diagnostics: FitDiagnostics, criterion: Criterion) -> float:
    return diagnostics.aic if criterion is Criterion.AIC else diagnostics.bic


def _evaluate_model(ds: BinnedDataset, kind: DistributionKind, cfg: MgbeConfig):
    try:
        fitted = fit(ds, kind, cfg.fit)
    except UnidentifiableError:
        raise
    except (BinequalityException, ArithmeticError, ValueError) as e:
        return None, None, None, f"falha no ajuste: {type(e).__name__}: {e}"
    diagnostics = g2_test(ds, fitted)
    if not fitted.converged:
        return fitted, diagnostics, None, SCREEN_NOT_CONVERGED
    if not fitted.variance_defined:
        return fitted, diagnostics, None, SCREEN_UNDEFINED_VARIANCE
    try:
        stats = compute_all(quantile_grid(kind, fitted.params, cfg.q))
    except (BinequalityException, ArithmeticError, ValueError) as e:
        return fitted, diagnostics, None, f"falha nas estatísticas: {type(e).__name__}: {e}"
    if not all(value is not None and math.isfinite(value) for value in stats.as_dict().values()):
        return fitted, diagnostics, None, "estatísticas não finitas"
    return fitted, diagnostics, stats, None


def _average_bundles(bundles: Sequence[StatsBundle], weights: Sequence[float]) -> StatsBundle:
    averaged = {}
    for name in STAT_FIELDS:
        if name == 'sd':
            continue
        averaged[name] = float(math.fsum(w * getattr(b, name) for b, w in zip(bundles, weights)))
    # sd = √variance
    averaged['sd'] = math.sqrt(averaged['variance'])
    return StatsBundle(**averaged)


def mgbe_estimate(ds: BinnedDataset, cfg: Optional[MgbeConfig] = None) -> MgbeResult:
    """
    Executa o MGBE sobre um conjunto de faixas.

    Args:
        ds: Conjunto de faixas (pelo menos duas povoadas)
        cfg: Modelos, critério, combinação, q e configuração do ajuste

    Returns:
        MgbeResult: Resultado por modelo, modelo selecionado e estatísticas
    """
    cfg = cfg or MgbeConfig()
    if ds.B < 2:
        raise UnidentifiableError(f"dataset '{ds.id}': MGBE exige pelo menos duas faixas povoadas")

    def run(kind):
        return _evaluate_model(ds, kind, cfg)

    if cfg.model_jobs > 1 and len(cfg.models) > 1:
        with ThreadPoolExecutor(max_workers=cfg.model_jobs) as executor:
            evaluations = list(executor.map(run, cfg.models))
    else:
        evaluations = [run(kind) for kind in cfg.models]

    survivors = [
        (kind, diagnostics) for kind, (_, diagnostics, stats, reason) in zip(cfg.models, evaluations)
        if reason is None
    ]
    weights: Dict[DistributionKind, float] = {}
    if survivors:
        values = [_criterion_value(diagnostics, cfg.criterion) for _, diagnostics in survivors]
        weights = dict(zip([kind for kind, _ in survivors], ic_weights(values)))

    per_model = []
    reasons = {}
    for kind, (fitted, diagnostics, stats, reason) in zip(cfg.models, evaluations):
        if reason is not None:
            reasons[kind.value] = reason
            get_logger().debug(f"{ds.id}/{kind.value} descartado: {reason}")
        per_model.append(ModelOutcome(
            kind=kind,
            fitted=fitted,
            diagnostics=diagnostics,
            stats=stats,
            weight=weights.get(kind, 0.0),
            screen_reason=reason,
        ))

    if not survivors:
        raise EstimationFailedError(f"dataset '{ds.id}': nenhum modelo sobreviveu à triagem", reasons)

    alive = [outcome for outcome in per_model if outcome.survived]
    if cfg.combine is Combine.SELECT:
        best = min(
            alive,
            key=lambda o: (_criterion_value(o.diagnostics, cfg.criterion), o.fitted.k, o.kind.order),
        )
        selected, stats = best.kind, best.stats
    else:
        selected = None
        stats = _average_bundles([o.stats for o in alive], [o.weight for o in alive])

    return MgbeResult(
        dataset_id=ds.id,
        per_model=tuple(per_model),
        selected=selected,
        stats=stats,
        criterion=cfg.criterion,
        combine=cfg.combine,
    )
