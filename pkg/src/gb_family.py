# src/gb_family.py
"""
Família beta generalizada (GB): as 10 distribuições usadas pelo MGBE.

Parametrização canônica: escala primeiro, depois as formas. Os tipos aninhados
na GB2(μ, σ, ν, τ) fixam parâmetros em 1; os tipos embutidos (gama, gama
generalizada, Weibull, lognormal) usam suas formas usuais. A lognormal usa
escala = exp(meanlog) para manter todos os parâmetros positivos.

| tipo               | parâmetros          | scipy.stats        |
|--------------------|---------------------|--------------------|
| weibull            | (escala, forma)     | weibull_min        |
| loglogistic        | (μ, σ)              | fisk               |
| pareto2            | (μ, τ)              | lomax              |
| gamma              | (escala, forma)     | gamma              |
| lognormal          | (exp(meanlog), sdlog) | lognorm          |
| dagum              | (μ, σ, ν)           | burr               |
| singhmaddala       | (μ, σ, τ)           | burr12             |
| beta2              | (μ, ν, τ)           | betaprime          |
| gengamma           | (escala, a, c)      | gengamma           |
| gb2                | (μ, σ, ν, τ)        | gb2 (definida aqui)|
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import optimize, special, stats

from src.exceptions import DomainError

ArrayLike = Union[float, Sequence[float], np.ndarray]


class gb2_gen(stats.rv_continuous):
    """
    Beta generalizada do segundo tipo com escala 1 (a escala entra por `scale`).

    F(x) = I_z(ν, τ), z = x^σ / (1 + x^σ).
    """

    def _argcheck(self, sigma, nu, tau):
        return (sigma > 0) & (nu > 0) & (tau > 0)

    def _logpdf(self, x, sigma, nu, tau):
        return (np.log(sigma) + (sigma * nu - 1.0) * np.log(x)
                - special.betaln(nu, tau) - (nu + tau) * np.log1p(x ** sigma))

    def _pdf(self, x, sigma, nu, tau):
        return np.exp(self._logpdf(x, sigma, nu, tau))

    def _cdf(self, x, sigma, nu, tau):
        with np.errstate(divide='ignore', over='ignore'):
            z = 1.0 / (1.0 + x ** (-sigma))
        return special.betainc(nu, tau, z)

    def _sf(self, x, sigma, nu, tau):
        with np.errstate(over='ignore'):
            complement = 1.0 / (1.0 + x ** sigma)
        return special.betainc(tau, nu, complement)

    def _ppf(self, q, sigma, nu, tau):
        z = special.betaincinv(nu, tau, q)
        complement = special.betaincinv(tau, nu, 1.0 - q)
        with np.errstate(divide='ignore'):
            return (z / complement) ** (1.0 / sigma)

    def _isf(self, q, sigma, nu, tau):
        return self._ppf(1.0 - q, sigma, nu, tau)

    def _munp(self, n, sigma, nu, tau):
        h = n / sigma
        return np.where(
            h < tau,
            np.exp(special.betaln(nu + h, np.maximum(tau - h, 1e-300)) - special.betaln(nu, tau)),
            np.inf,
        )


gb2 = gb2_gen(a=0.0, name='gb2')


class DistributionKind(str, Enum):
    """Tipos da família GB, na ordem canônica usada para desempates."""
    WEIBULL = 'weibull'
    LOGLOGISTIC = 'loglogistic'
    PARETO2 = 'pareto2'
    GAMMA = 'gamma'
    LOGNORMAL = 'lognormal'
    DAGUM = 'dagum'
    SINGHMADDALA = 'singhmaddala'
    BETA2 = 'beta2'
    GENGAMMA = 'gengamma'
    GB2 = 'gb2'

    @property
    def k(self) -> int:
        return len(_SPECS[self].param_names)

    @property
    def order(self) -> int:
        return list(DistributionKind).index(self)


@dataclass(frozen=True)
class _KindSpec:
    dist: stats.rv_continuous
    param_names: Tuple[str, ...]
    # (σ, τ) equivalentes da GB2 para o teste de existência de momentos; None = sempre existem
    tail: Optional[Callable[[Tuple[float, ...]], Tuple[float, float]]]


_SPECS: Dict[DistributionKind, _KindSpec] = {
    DistributionKind.WEIBULL: _KindSpec(stats.weibull_min, ('scale', 'shape'), None),
    DistributionKind.LOGLOGISTIC: _KindSpec(stats.fisk, ('mu', 'sigma'), lambda p: (p[1], 1.0)),
    DistributionKind.PARETO2: _KindSpec(stats.lomax, ('mu', 'tau'), lambda p: (1.0, p[1])),
    DistributionKind.GAMMA: _KindSpec(stats.gamma, ('scale', 'shape'), None),
    DistributionKind.LOGNORMAL: _KindSpec(stats.lognorm, ('scale', 'sdlog'), None),
    DistributionKind.DAGUM: _KindSpec(stats.burr, ('mu', 'sigma', 'nu'), lambda p: (p[1], 1.0)),
    DistributionKind.SINGHMADDALA: _KindSpec(stats.burr12, ('mu', 'sigma', 'tau'), lambda p: (p[1], p[2])),
    DistributionKind.BETA2: _KindSpec(stats.betaprime, ('mu', 'nu', 'tau'), lambda p: (1.0, p[2])),
    DistributionKind.GENGAMMA: _KindSpec(stats.gengamma, ('scale', 'a', 'c'), None),
    DistributionKind.GB2: _KindSpec(gb2, ('mu', 'sigma', 'nu', 'tau'), lambda p: (p[1], p[3])),
}

_ALIASES = {
    'log_logistic': DistributionKind.LOGLOGISTIC,
    'fisk': DistributionKind.LOGLOGISTIC,
    'lomax': DistributionKind.PARETO2,
    'log_normal': DistributionKind.LOGNORMAL,
    'singh_maddala': DistributionKind.SINGHMADDALA,
    'sm': DistributionKind.SINGHMADDALA,
    'generalizedgamma': DistributionKind.GENGAMMA,
    'generalized_gamma': DistributionKind.GENGAMMA,
    'gg': DistributionKind.GENGAMMA,
}


def parse_kind(name: Union[str, DistributionKind]) -> DistributionKind:
    """Converte um nome (ou apelido) no tipo correspondente."""
    if isinstance(name, DistributionKind):
        return name
    key = str(name).strip().lower().replace('-', '_')
    if key in _ALIASES:
        return _ALIASES[key]
    try:
        return DistributionKind(key.replace('_', ''))
    except ValueError:
        raise DomainError(f"Distribuição desconhecida: {name}") from None


def param_names(kind: DistributionKind) -> Tuple[str, ...]:
    return _SPECS[parse_kind(kind)].param_names


def check_params(kind: DistributionKind, params: Sequence[float]) -> Tuple[float, ...]:
    """
    Valida o vetor de parâmetros: k valores positivos e finitos.

    Returns:
        tuple: Parâmetros como floats
    """
    kind = parse_kind(kind)
    values = tuple(float(v) for v in params)
    if len(values) != kind.k:
        raise DomainError(f"{kind.value} exige {kind.k} parâmetros, recebeu {len(values)}")
    if not all(math.isfinite(v) and v > 0 for v in values):
        raise DomainError(f"parâmetros de {kind.value} devem ser positivos e finitos: {values}")
    return values


def _scipy_args(kind: DistributionKind, params: Sequence[float]):
    values = check_params(kind, params)
    return _SPECS[kind].dist, values[1:], values[0]


def _as_array(x: ArrayLike) -> Tuple[np.ndarray, bool]:
    array = np.asarray(x, dtype=float)
    return array, array.ndim == 0


def _unwrap(result: np.ndarray, scalar: bool):
    return float(result) if scalar else result


def cdf(kind: DistributionKind, params: Sequence[float], x: ArrayLike):
    """F(x) para x >= 0 (escalar ou array)."""
    kind = parse_kind(kind)
    dist, shapes, scale = _scipy_args(kind, params)
    array, scalar = _as_array(x)
    if np.any(np.isnan(array)) or np.any(array < 0):
        raise DomainError("cdf definida apenas para x >= 0")
    with np.errstate(all='ignore'):
        result = dist.cdf(array, *shapes, scale=scale)
    return _unwrap(np.asarray(result, dtype=float), scalar)


def sf(kind: DistributionKind, params: Sequence[float], x: ArrayLike):
    """1 - F(x), calculada diretamente para precisão na cauda superior."""
    kind = parse_kind(kind)
    dist, shapes, scale = _scipy_args(kind, params)
    array, scalar = _as_array(x)
    if np.any(np.isnan(array)) or np.any(array < 0):
        raise DomainError("sf definida apenas para x >= 0")
    with np.errstate(all='ignore'):
        result = dist.sf(array, *shapes, scale=scale)
    return _unwrap(np.asarray(result, dtype=float), scalar)


def pdf(kind: DistributionKind, params: Sequence[float], x: ArrayLike):
    """Densidade em x >= 0."""
    kind = parse_kind(kind)
    dist, shapes, scale = _scipy_args(kind, params)
    array, scalar = _as_array(x)
    with np.errstate(all='ignore'):
        result = dist.pdf(array, *shapes, scale=scale)
    return _unwrap(np.asarray(result, dtype=float), scalar)


def quantile_by_root(kind: DistributionKind, params: Sequence[float], p: float,
                     guess: Optional[float] = None) -> float:
    """
    Quantil por busca de raiz (Brent) na CDF, com intervalo inicial
    [guess/10, guess·10] expandido geometricamente até conter a raiz.

    Na metade superior resolve sf(x) = 1 - p para não perder precisão.
    """
    kind = parse_kind(kind)
    values = check_params(kind, params)
    if not 0.0 < p < 1.0:
        raise DomainError(f"probabilidade fora de (0, 1): {p}")
    guess = values[0] if guess is None or not guess > 0 else guess

    if p <= 0.5:
        def target(x):
            return cdf(kind, values, x) - p
    else:
        def target(x):
            return (1.0 - p) - sf(kind, values, x)

    lo, hi = guess / 10.0, guess * 10.0
    for _ in range(400):
        if target(lo) <= 0:
            break
        lo /= 10.0
    else:
        raise DomainError(f"não foi possível limitar o quantil {p} por baixo")
    for _ in range(400):
        if target(hi) >= 0:
            break
        hi *= 10.0
    else:
        raise DomainError(f"não foi possível limitar o quantil {p} por cima")
    return float(optimize.brentq(target, lo, hi, xtol=1e-300, rtol=1e-14, maxiter=500))


def quantile(kind: DistributionKind, params: Sequence[float], p: ArrayLike):
    """
    Função quantil F⁻¹(p), 0 < p < 1 (escalar ou array).

    Usa a inversa em forma fechada do scipy; valores não finitos caem na
    busca de raiz.
    """
    kind = parse_kind(kind)
    dist, shapes, scale = _scipy_args(kind, params)
    array, scalar = _as_array(p)
    if np.any(np.isnan(array)) or np.any(array <= 0) or np.any(array >= 1):
        raise DomainError("quantil definido apenas para 0 < p < 1")
    with np.errstate(all='ignore'):
        result = np.array(dist.ppf(array, *shapes, scale=scale), dtype=float, ndmin=1)
    flat_p = array.ravel()
    bad = ~np.isfinite(result.ravel())
    if np.any(bad):
        fixed = result.ravel()
        for index in np.flatnonzero(bad):
            fixed[index] = quantile_by_root(kind, params, float(flat_p[index]))
        result = fixed.reshape(result.shape)
    return float(result[0]) if scalar else result.reshape(array.shape)


def moment_exists(kind: DistributionKind, params: Sequence[float], order: int) -> bool:
    """
    Existência do momento de ordem h (1 ou 2).

    Para os tipos com cauda de Pareto, o momento h existe se e só se h/σ < τ
    (a condição -ν < h/σ vale sempre para parâmetros positivos). Gama, gama
    generalizada, Weibull e lognormal têm todos os momentos.
    """
    kind = parse_kind(kind)
    values = check_params(kind, params)
    if order not in (1, 2):
        raise DomainError(f"ordem de momento não suportada: {order}")
    tail = _SPECS[kind].tail
    if tail is None:
        return True
    sigma, tau = tail(values)
    return order / sigma < tau


def to_unconstrained(params: Sequence[float]) -> np.ndarray:
    """Carta logarítmica: parâmetros positivos -> coordenadas livres."""
    return np.log(np.asarray(params, dtype=float))


def from_unconstrained(theta: Sequence[float]) -> Tuple[float, ...]:
    """Inversa de to_unconstrained."""
    with np.errstate(over='ignore'):
        return tuple(float(v) for v in np.exp(np.asarray(theta, dtype=float)))
