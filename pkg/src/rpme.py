# src/rpme.py
"""
Estimador de ponto médio com faixa superior de Pareto robusta (RPME).

Cada faixa limitada é representada pelo seu ponto médio; a faixa superior sem
limite recebe uma estatística de Pareto (média aritmética, geométrica,
harmônica ou mediana) calculada a partir de α estimado nas duas faixas do
topo e limitado inferiormente por α_min.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from src.binned_core import BinnedDataset, populated
from src.exceptions import (
    ConfigurationError,
    DegenerateGeometryError,
    DomainError,
    EstimationImpossibleError,
    InfiniteMeanError,
)
from src.inequality_stats import StatsBundle, WeightedSample, compute_all
from src.validators import Validators

# Limite sugerido por Heitjan para a largura das faixas (em desvios-padrão)
HEITJAN_WIDTH_LIMIT = 1.6


class TopBinFlavor(str, Enum):
    ARITHMETIC = 'arithmetic'
    GEOMETRIC = 'geometric'
    MEDIAN = 'median'
    HARMONIC = 'harmonic'


def default_alpha_min(flavor: TopBinFlavor) -> float:
    """α_min padrão: 2 para a média aritmética, 1 para os demais sabores."""
    return 2.0 if TopBinFlavor(flavor) is TopBinFlavor.ARITHMETIC else 1.0


@dataclass(frozen=True)
class RpmeConfig:
    """
    Configuração do RPME.

    alpha_min = None usa o padrão do sabor (ver default_alpha_min).
    """
    flavor: TopBinFlavor = TopBinFlavor.HARMONIC
    alpha_min: Optional[float] = None

    def __post_init__(self):
        try:
            flavor = TopBinFlavor(self.flavor)
        except ValueError:
            raise ConfigurationError(f"Sabor de topo desconhecido: {self.flavor}") from None
        object.__setattr__(self, 'flavor', flavor)
        if self.alpha_min is None:
            object.__setattr__(self, 'alpha_min', default_alpha_min(flavor))
        ok, msg = Validators.validate_alpha_min(flavor.value, self.alpha_min)
        if not ok:
            raise ConfigurationError(msg)
        object.__setattr__(self, 'alpha_min', float(self.alpha_min))


@dataclass(frozen=True)
class BinWidthDiagnostics:
    """Diagnóstico de largura das faixas em relação ao DP estimado."""
    mean_width: float
    max_width: float
    max_width_ratio: float
    relative_variance_bias: float
    within_heitjan_limit: bool


@dataclass(frozen=True)
class RpmeResult:
    flavor: TopBinFlavor
    alpha_hat: Optional[float]
    alpha_tilde: Optional[float]
    top_value: Optional[float]
    sample: WeightedSample = field(repr=False)
    stats: StatsBundle
    diagnostics: Optional[BinWidthDiagnostics] = None


def estimate_alpha(ds: BinnedDataset) -> Optional[float]:
    """
    α̂ = ln((n_{B-1} + n_B) / n_B) / ln(l_B / l_{B-1}), usando as duas últimas
    faixas por posição (mesmo que a penúltima esteja vazia).

    Returns:
        float ou None: None quando a faixa superior é limitada ou vazia
    """
    top = ds.top
    if not top.is_unbounded or top.count <= 0:
        return None
    if ds.B_all < 2:
        raise EstimationImpossibleError(f"dataset '{ds.id}': α exige pelo menos duas faixas")
    second = ds.bins[-2]
    if second.lower <= 0:
        raise DegenerateGeometryError(
            f"dataset '{ds.id}': limite inferior da penúltima faixa é 0; ln(l_B / l_(B-1)) indefinido"
        )
    return math.log((second.count + top.count) / top.count) / math.log(top.lower / second.lower)


def constrain_alpha(alpha_hat: float, cfg: RpmeConfig) -> float:
    """α̃ = max(α_min, α̂)."""
    if alpha_hat < 0:
        raise DomainError(f"α̂ negativo: {alpha_hat}")
    return max(cfg.alpha_min, alpha_hat)


def top_bin_value(l_B: float, alpha_tilde: float, flavor: TopBinFlavor) -> float:
    """
    Valor representativo da faixa superior sob Pareto(l_B, α).

    arithmetic: l_B·α/(α-1) (finita só para α > 1); median: l_B·2^(1/α);
    geometric: l_B·e^(1/α); harmonic: l_B·(1 + 1/α).
    """
    if alpha_tilde <= 0:
        raise DomainError(f"α deve ser positivo: {alpha_tilde}")
    flavor = TopBinFlavor(flavor)
    if flavor is TopBinFlavor.ARITHMETIC:
        if alpha_tilde <= 1:
            raise InfiniteMeanError(f"média de Pareto infinita para α = {alpha_tilde} <= 1")
        return l_B * alpha_tilde / (alpha_tilde - 1.0)
    if flavor is TopBinFlavor.MEDIAN:
        return l_B * 2.0 ** (1.0 / alpha_tilde)
    if flavor is TopBinFlavor.GEOMETRIC:
        return l_B * math.exp(1.0 / alpha_tilde)
    return l_B * (1.0 + 1.0 / alpha_tilde)


def midpoint_sample(ds: BinnedDataset, top_value: Optional[float] = None) -> WeightedSample:
    """
    Amostra ponderada dos pontos médios das faixas povoadas.

    A faixa superior sem limite, se povoada, recebe `top_value`.
    """
    values, weights = [], []
    for b in populated(ds):
        if b.is_unbounded:
            if top_value is None:
                raise EstimationImpossibleError(
                    f"dataset '{ds.id}': faixa superior povoada sem limite não tem ponto médio"
                )
            values.append(top_value)
        else:
            values.append(b.midpoint)
        weights.append(b.count)
    if not values:
        raise EstimationImpossibleError(f"dataset '{ds.id}' sem faixas povoadas")
    return WeightedSample(values, weights)


def bin_width_diagnostics(ds: BinnedDataset, sd: Optional[float]) -> Optional[BinWidthDiagnostics]:
    """
    Larguras das faixas povoadas limitadas comparadas ao DP estimado.

    O viés relativo da variância do ponto médio é aproximadamente (w/σ)²/12;
    aqui w é a largura média das faixas povoadas. Nenhuma correção é aplicada.
    """
    widths = [b.width for b in populated(ds) if not b.is_unbounded]
    if not widths or sd is None or sd <= 0:
        return None
    mean_width = math.fsum(widths) / len(widths)
    max_width = max(widths)
    return BinWidthDiagnostics(
        mean_width=mean_width,
        max_width=max_width,
        max_width_ratio=max_width / sd,
        relative_variance_bias=(mean_width / sd) ** 2 / 12.0,
        within_heitjan_limit=max_width < HEITJAN_WIDTH_LIMIT * sd,
    )


def midpoint_estimate(ds: BinnedDataset) -> StatsBundle:
    """
    Estimador de ponto médio puro; só definido se toda faixa povoada é limitada.
    """
    return compute_all(midpoint_sample(ds))


def rpme_estimate(ds: BinnedDataset, cfg: Optional[RpmeConfig] = None) -> RpmeResult:
    """
    Executa o RPME completo sobre um conjunto de faixas.

    Args:
        ds: Conjunto de faixas
        cfg: Configuração (padrão: sabor harmônico, α_min = 1)

    Returns:
        RpmeResult: α̂, α̃, valor do topo, amostra, estatísticas e diagnóstico
    """
    cfg = cfg or RpmeConfig()
    bins = populated(ds)
    if not bins:
        raise EstimationImpossibleError(f"dataset '{ds.id}' sem faixas povoadas")

    alpha_hat = alpha_tilde = top_value = None
    if ds.top.is_unbounded and ds.top.count > 0:
        if len(bins) == 1:
            raise EstimationImpossibleError(
                f"dataset '{ds.id}': a única faixa povoada é a superior sem limite"
            )
        alpha_hat = estimate_alpha(ds)
        alpha_tilde = constrain_alpha(alpha_hat, cfg)
        top_value = top_bin_value(ds.top.lower, alpha_tilde, cfg.flavor)

    sample = midpoint_sample(ds, top_value)
    stats = compute_all(sample)
    return RpmeResult(
        flavor=cfg.flavor,
        alpha_hat=alpha_hat,
        alpha_tilde=alpha_tilde,
        top_value=top_value,
        sample=sample,
        stats=stats,
        diagnostics=bin_width_diagnostics(ds, stats.sd),
    )
