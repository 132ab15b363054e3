# src/eval_harness.py
"""
Avaliação dos estimadores com verdade sintética: erros relativos, viés,
RMSE e confiabilidade, geração de conjuntos sintéticos e reagrupamento de
faixas (16 -> 8 -> 4).
"""

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.binned_core import Bin, BinnedDataset, merge_adjacent
from src.binned_mle import FitConfig
from src.exceptions import BinequalityException, ConfigurationError
from src.gb_family import DistributionKind, cdf, check_params, parse_kind, quantile
from src.inequality_stats import StatsBundle, WeightedSample, compute_all
from src.interfaces import Estimator
from src.logger import get_logger
from src.mgbe import MgbeConfig, mgbe_estimate
from src.rpme import RpmeConfig, rpme_estimate
from src.sample_data import ACS_16_LOWER_BOUNDS

ESTIMANDS = ('mean', 'median', 'gini', 'theil', 'mld')
DEFAULT_REBIN = (2, 2)


@dataclass(frozen=True)
class SyntheticSpec:
    kind: DistributionKind
    params: Tuple[float, ...]
    n_draws: int
    bin_scheme: Tuple[float, ...] = ACS_16_LOWER_BOUNDS
    seed: int = 0
    id: str = 'synthetic'

    def __post_init__(self):
        kind = parse_kind(self.kind)
        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'params', check_params(kind, self.params))
        if int(self.n_draws) < 1:
            raise ConfigurationError("n_draws deve ser pelo menos 1")
        scheme = tuple(float(b) for b in self.bin_scheme)
        if not scheme or scheme[0] != 0.0 or any(b >= c for b, c in zip(scheme, scheme[1:])):
            raise ConfigurationError("limites das faixas devem começar em 0 e ser estritamente crescentes")
        object.__setattr__(self, 'bin_scheme', scheme)


@dataclass(frozen=True)
class EstimatorSpec:
    """Estimador nomeado: 'rpme' com RpmeConfig ou 'mgbe' com MgbeConfig."""
    name: str
    config: Union[RpmeConfig, MgbeConfig]

    def estimate(self, ds: BinnedDataset) -> StatsBundle:
        if isinstance(self.config, RpmeConfig):
            return rpme_estimate(ds, self.config).stats
        return mgbe_estimate(ds, self.config).stats


@dataclass(frozen=True)
class AccuracyRow:
    estimand: str
    percent_bias: Optional[float]
    percent_rmse: Optional[float]
    reliability: Optional[float]
    n_datasets: int
    n_excluded: int = 0


@dataclass(frozen=True)
class AccuracyReport:
    estimator: str
    n_bins: int
    rows: Dict[str, AccuracyRow]
    n_failures: int = 0


def _relative_errors(estimates: Sequence[float], truths: Sequence[float]) -> Tuple[List[float], int]:
    if len(estimates) != len(truths):
        raise ValueError("estimativas e verdades com tamanhos diferentes")
    errors, excluded = [], 0
    for estimate, truth in zip(estimates, truths):
        if truth == 0:
            excluded += 1
            continue
        errors.append(100.0 * (estimate - truth) / truth)
    if excluded:
        get_logger().warning(f"{excluded} verdades iguais a zero excluídas do erro relativo")
    return errors, excluded


def relative_errors(estimates: Sequence[float], truths: Sequence[float]) -> List[float]:
    """e_j = 100 (θ̂_j - θ_j) / θ_j; verdades nulas são excluídas (com aviso)."""
    return _relative_errors(estimates, truths)[0]


def reliability(estimates: Sequence[float], truths: Sequence[float]) -> Optional[float]:
    """Correlação de Pearson ao quadrado entre estimativas e verdades."""
    if len(estimates) < 2 or len(estimates) != len(truths):
        return None
    x = np.asarray(estimates, dtype=float)
    y = np.asarray(truths, dtype=float)
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return None
    r = np.corrcoef(x, y)[0, 1]
    return float(min(max(r * r, 0.0), 1.0)) if math.isfinite(r) else None


def accuracy(errors: Sequence[float], estimates: Sequence[float], truths: Sequence[float],
             estimand: str = '', n_excluded: int = 0) -> AccuracyRow:
    """
    Viés = média(e_j); RMSE = √média(e_j²); confiabilidade = r².
    """
    array = np.asarray(errors, dtype=float)
    bias = float(array.mean()) if array.size else None
    rmse = float(math.sqrt(np.mean(array ** 2))) if array.size else None
    return AccuracyRow(
        estimand=estimand,
        percent_bias=bias,
        percent_rmse=rmse,
        reliability=reliability(estimates, truths),
        n_datasets=int(array.size),
        n_excluded=n_excluded,
    )


def synthesize(spec: SyntheticSpec) -> Tuple[BinnedDataset, StatsBundle]:
    """
    Sorteia rendas por CDF inversa, agrupa nas faixas e calcula a verdade nos
    dados brutos (não agrupados).
    """
    rng = np.random.default_rng(spec.seed)
    tiny = np.finfo(float).tiny
    uniforms = np.clip(rng.random(int(spec.n_draws)), tiny, 1.0 - np.finfo(float).eps)
    draws = np.asarray(quantile(spec.kind, spec.params, uniforms), dtype=float)
    truth = compute_all(WeightedSample.unit(draws))

    bounds = np.asarray(spec.bin_scheme)
    index = np.searchsorted(bounds, draws, side='right') - 1
    counts = np.bincount(index, minlength=bounds.size)
    bins = []
    for position, lower in enumerate(bounds):
        upper = float(bounds[position + 1]) if position + 1 < bounds.size else None
        bins.append(Bin(lower=float(lower), upper=upper, count=float(counts[position])))
    return BinnedDataset(id=spec.id, bins=tuple(bins)), truth


def expected_dataset(kind: DistributionKind, params: Sequence[float], n: float,
                     bin_scheme: Sequence[float] = ACS_16_LOWER_BOUNDS,
                     dataset_id: str = 'expected') -> BinnedDataset:
    """Contagens esperadas n·(F(u) - F(l)) em cada faixa, sem ruído amostral."""
    kind = parse_kind(kind)
    bounds = np.asarray(bin_scheme, dtype=float)
    edges = np.append(bounds, np.inf)
    cumulative = np.asarray(cdf(kind, params, bounds), dtype=float)
    probs = np.diff(np.append(cumulative, 1.0))
    bins = []
    for position, lower in enumerate(bounds):
        upper = edges[position + 1]
        bins.append(Bin(
            lower=float(lower),
            upper=None if np.isinf(upper) else float(upper),
            count=float(n * max(probs[position], 0.0)),
        ))
    return BinnedDataset(id=dataset_id, bins=tuple(bins))


def _rebin_schedule(ds: BinnedDataset, rebin: Sequence[int]) -> List[BinnedDataset]:
    schemes = [ds]
    for group in rebin:
        schemes.append(merge_adjacent(schemes[-1], group))
    return schemes


def _scheme_sizes(spec: SyntheticSpec, rebin: Sequence[int]) -> List[int]:
    sizes = [len(spec.bin_scheme)]
    for group in rebin:
        sizes.append(math.ceil(sizes[-1] / int(group)))
    return sizes


def _evaluate_spec(args) -> Tuple[Optional[StatsBundle], List[Tuple[str, int, Optional[StatsBundle], Optional[str]]]]:
    spec, estimators, rebin = args
    try:
        ds, truth = synthesize(spec)
    except (BinequalityException, ArithmeticError, ValueError) as e:
        error = f"{type(e).__name__}: {e}"
        get_logger().warning(f"falha ao sintetizar '{spec.id}': {error}")
        return None, [
            (estimator.name, n_bins, None, error)
            for n_bins in _scheme_sizes(spec, rebin) for estimator in estimators
        ]
    outcomes = []
    for scheme in _rebin_schedule(ds, rebin):
        for estimator in estimators:
            try:
                outcomes.append((estimator.name, scheme.B_all, estimator.estimate(scheme), None))
            except (BinequalityException, ArithmeticError, ValueError) as e:
                outcomes.append((estimator.name, scheme.B_all, None, f"{type(e).__name__}: {e}"))
    return truth, outcomes


def run_benchmark(specs: Sequence[SyntheticSpec], estimators: Sequence[Estimator],
                  rebin: Sequence[int] = DEFAULT_REBIN, jobs: int = 1) -> List[AccuracyReport]:
    """
    Avalia cada estimador no esquema nativo e nos reagrupamentos.

    Returns:
        List[AccuracyReport]: Um relatório por (estimador, número de faixas),
        na ordem dos estimadores e do esquema mais fino ao mais grosso
    """
    if not specs:
        raise ConfigurationError("lista de especificações sintéticas vazia")
    if not estimators:
        raise ConfigurationError("lista de estimadores vazia")
    tasks = [(spec, tuple(estimators), tuple(rebin)) for spec in specs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_evaluate_spec, tasks))
    else:
        results = [_evaluate_spec(task) for task in tasks]

    # (estimador, n_faixas) -> listas de (estimativa, verdade) por estimando
    collected: Dict[Tuple[str, int], Dict[str, List[Tuple[float, float]]]] = {}
    failures: Dict[Tuple[str, int], int] = {}
    order: List[Tuple[str, int]] = []
    for truth, outcomes in results:
        for name, n_bins, stats, error in outcomes:
            key = (name, n_bins)
            if key not in collected:
                collected[key] = {estimand: [] for estimand in ESTIMANDS}
                failures[key] = 0
                order.append(key)
            if stats is None:
                failures[key] += 1
                get_logger().debug(f"{name} ({n_bins} faixas) falhou: {error}")
                continue
            for estimand in ESTIMANDS:
                collected[key][estimand].append((getattr(stats, estimand), getattr(truth, estimand)))

    names = [estimator.name for estimator in estimators]
    order.sort(key=lambda key: (names.index(key[0]), -key[1]))
    reports = []
    for key in order:
        rows = {}
        for estimand in ESTIMANDS:
            pairs = collected[key][estimand]
            estimates = [estimate for estimate, _ in pairs]
            truths = [truth for _, truth in pairs]
            errors, excluded = _relative_errors(estimates, truths)
            rows[estimand] = accuracy(errors, estimates, truths, estimand=estimand, n_excluded=excluded)
        reports.append(AccuracyReport(estimator=key[0], n_bins=key[1], rows=rows, n_failures=failures[key]))
    return reports


def reports_to_frame(reports: Sequence[AccuracyReport]) -> pd.DataFrame:
    """Uma linha por (estimador, número de faixas, estimando)."""
    records = []
    for report in reports:
        for row in report.rows.values():
            records.append({
                'estimator': report.estimator,
                'n_bins': report.n_bins,
                'estimand': row.estimand,
                'percent_bias': row.percent_bias,
                'percent_rmse': row.percent_rmse,
                'reliability': row.reliability,
                'n_datasets': row.n_datasets,
                'n_excluded': row.n_excluded,
                'n_failures': report.n_failures,
            })
    return pd.DataFrame.from_records(records, columns=[
        'estimator', 'n_bins', 'estimand', 'percent_bias', 'percent_rmse',
        'reliability', 'n_datasets', 'n_excluded', 'n_failures',
    ])


@dataclass(frozen=True)
class BenchmarkSpec:
    specs: Tuple[SyntheticSpec, ...]
    estimators: Tuple[EstimatorSpec, ...]
    rebin: Tuple[int, ...] = DEFAULT_REBIN


def _expand_entry(entry: Dict, index: int, base_seed: int) -> List[SyntheticSpec]:
    """
    Expande uma entrada do JSON em `replicates` especificações.

    Cada parâmetro pode ser um número fixo ou um intervalo [mín, máx] sorteado
    uniformemente em escala log por réplica.
    """
    kind = parse_kind(entry['kind'])
    replicates = int(entry.get('replicates', 1))
    seed = int(entry.get('seed', base_seed + 1000 * index))
    scheme = tuple(entry.get('bin_scheme') or ACS_16_LOWER_BOUNDS)
    prefix = entry.get('id', f"{kind.value}-{index}")
    rng = np.random.default_rng(seed)
    specs = []
    for replicate in range(replicates):
        params = []
        for value in entry['params']:
            if isinstance(value, (list, tuple)):
                low, high = float(value[0]), float(value[1])
                params.append(float(math.exp(rng.uniform(math.log(low), math.log(high)))))
            else:
                params.append(float(value))
        specs.append(SyntheticSpec(
            kind=kind,
            params=tuple(params),
            n_draws=int(entry['n_draws']),
            bin_scheme=scheme,
            seed=seed + replicate + 1,
            id=f"{prefix}-{replicate}",
        ))
    return specs


def _estimator_from_entry(entry: Dict, seed: int) -> EstimatorSpec:
    kind = str(entry.get('type', '')).lower()
    if kind == 'rpme':
        cfg = RpmeConfig(flavor=entry.get('flavor', 'harmonic'), alpha_min=entry.get('alpha_min'))
        return EstimatorSpec(name=entry.get('name', f"rpme-{cfg.flavor.value}"), config=cfg)
    if kind == 'mgbe':
        models = entry.get('models', 'all')
        if isinstance(models, str):
            models = tuple(DistributionKind) if models == 'all' else tuple(m for m in models.split(',') if m)
        fit_cfg = FitConfig(
            rel_tol=float(entry.get('rel_tol', FitConfig.rel_tol)),
            max_iter=int(entry.get('max_iter', FitConfig.max_iter)),
            restarts=int(entry.get('restarts', FitConfig.restarts)),
            seed=int(entry.get('seed', seed)),
        )
        cfg = MgbeConfig(
            models=tuple(models),
            criterion=entry.get('criterion', 'aic'),
            combine=entry.get('combine', 'select'),
            q=int(entry.get('quantiles', MgbeConfig.q)),
            fit=fit_cfg,
        )
        return EstimatorSpec(name=entry.get('name', f"mgbe-{cfg.criterion.value}-{cfg.combine.value}"), config=cfg)
    raise ConfigurationError(f"tipo de estimador desconhecido: {entry.get('type')!r}")


def load_benchmark_spec(path: Union[str, Path], seed: int = 0) -> BenchmarkSpec:
    """
    Lê o JSON do benchmark:

        {"specs": [{"kind": "lognormal", "params": [32500, [0.6, 1.1]],
                    "n_draws": 2000, "replicates": 200}],
         "estimators": [{"type": "rpme", "flavor": "harmonic", "alpha_min": 1},
                        {"type": "mgbe", "models": "all"}],
         "rebin": [2, 2]}
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"JSON inválido em {path}: {e}") from None
    try:
        specs = []
        for index, entry in enumerate(document['specs']):
            specs.extend(_expand_entry(entry, index, seed))
        estimators = tuple(_estimator_from_entry(entry, seed) for entry in document['estimators'])
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"especificação do benchmark inválida: {type(e).__name__}: {e}") from None
    rebin = tuple(int(g) for g in document.get('rebin', DEFAULT_REBIN))
    return BenchmarkSpec(specs=tuple(specs), estimators=estimators, rebin=rebin)
