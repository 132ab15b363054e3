# src/inequality_stats.py
"""
Estatísticas de desigualdade a partir de uma amostra ponderada de rendas
positivas: média, mediana, variância, DP, CV, Gini, Theil e MLD.

Usado tanto pelo RPME (pontos médios das faixas) quanto pelo MGBE (grade de
quantis do modelo ajustado).
"""

import math
from dataclasses import dataclass, asdict
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from src.exceptions import DomainError


@dataclass(frozen=True)
class WeightedSample:
    """
    Pares (valor, peso) com valores estritamente positivos.

    Os arrays são somente leitura depois da construção.
    """
    values: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True).ravel()
        weights = np.array(self.weights, dtype=float, copy=True).ravel()
        if values.shape != weights.shape:
            raise DomainError("valores e pesos com tamanhos diferentes")
        if values.size == 0:
            raise DomainError("amostra vazia")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise DomainError("todos os valores devem ser positivos e finitos")
        if not np.all(np.isfinite(weights)) or np.any(weights < 0):
            raise DomainError("pesos devem ser não negativos e finitos")
        if weights.sum() <= 0:
            raise DomainError("peso total deve ser positivo")
        values.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'weights', weights)

    @classmethod
    def unit(cls, values: Sequence[float]) -> 'WeightedSample':
        """Amostra com pesos unitários."""
        values = np.asarray(values, dtype=float)
        return cls(values, np.ones_like(values))

    @property
    def total_weight(self) -> float:
        return float(math.fsum(self.weights))

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class StatsBundle:
    """As estatísticas de um conjunto sob um estimador."""
    mean: float
    median: float
    variance: Optional[float]
    sd: Optional[float]
    cv: Optional[float]
    gini: float
    theil: float
    mld: float

    def as_dict(self) -> Dict[str, Optional[float]]:
        return asdict(self)


STAT_FIELDS = ('mean', 'median', 'variance', 'sd', 'cv', 'gini', 'theil', 'mld')


def _require_positive(s: WeightedSample):
    if np.any(s.values <= 0):
        raise DomainError("Theil e MLD exigem valores positivos")


def weighted_mean_variance(s: WeightedSample) -> Tuple[float, Optional[float]]:
    """
    Média ponderada e variância com denominador n - 1 (n = peso total).

    Returns:
        tuple: (mean, variance); variance é None quando n <= 1
    """
    n = s.total_weight
    mean = float(np.dot(s.weights, s.values) / n)
    if n <= 1:
        return mean, None
    variance = float(np.dot(s.weights, (s.values - mean) ** 2) / (n - 1))
    return mean, variance


def weighted_median(s: WeightedSample) -> float:
    """
    Menor valor cujo peso acumulado atinge metade do peso total.

    Em caso de empate exato em n/2 retorna o valor inferior.
    """
    order = np.argsort(s.values, kind='mergesort')
    values = s.values[order]
    cumulative = np.cumsum(s.weights[order])
    half = cumulative[-1] / 2.0
    # tolerância relativa para somas acumuladas de pesos fracionários
    index = int(np.searchsorted(cumulative, half * (1.0 - 1e-12), side='left'))
    return float(values[min(index, values.size - 1)])


def weighted_gini(s: WeightedSample) -> float:
    """
    Gini = (Σ_i Σ_j w_i w_j |x_i - x_j|) / (2 n² μ), em O(m log m).

    Com valores ordenados, cada par contribui x_i·W_<i - S_<i, onde W_<i e S_<i
    são o peso e a soma ponderada acumulados dos valores anteriores.
    """
    order = np.argsort(s.values, kind='mergesort')
    x = s.values[order]
    w = s.weights[order]
    n = float(w.sum())
    mean = float(np.dot(w, x) / n)
    if mean <= 0:
        raise DomainError("Gini exige média positiva")
    weight_before = np.cumsum(w) - w
    sum_before = np.cumsum(w * x) - w * x
    half_total = float(np.dot(w, x * weight_before - sum_before))
    return min(max(half_total / (n * n * mean), 0.0), 1.0)


def weighted_theil(s: WeightedSample) -> float:
    """Theil = (1/n) Σ w_i (x_i/μ) ln(x_i/μ)."""
    _require_positive(s)
    n = s.total_weight
    ratio = s.values / (np.dot(s.weights, s.values) / n)
    return max(float(np.dot(s.weights, ratio * np.log(ratio)) / n), 0.0)


def weighted_mld(s: WeightedSample) -> float:
    """MLD = (1/n) Σ w_i ln(μ/x_i)."""
    _require_positive(s)
    n = s.total_weight
    mean = np.dot(s.weights, s.values) / n
    return max(float(np.dot(s.weights, np.log(mean / s.values)) / n), 0.0)


def compute_all(s: WeightedSample) -> StatsBundle:
    """
    Calcula todas as estatísticas da amostra.

    Returns:
        StatsBundle: média, mediana, variância, DP, CV, Gini, Theil e MLD
    """
    mean, variance = weighted_mean_variance(s)
    sd = None if variance is None else math.sqrt(variance)
    return StatsBundle(
        mean=mean,
        median=weighted_median(s),
        variance=variance,
        sd=sd,
        cv=None if sd is None else sd / mean,
        gini=weighted_gini(s),
        theil=weighted_theil(s),
        mld=weighted_mld(s),
    )
