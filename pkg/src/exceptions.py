# src/exceptions.py
"""
Exceções customizadas do sistema Binequality.
"""

from typing import Dict, Optional


class BinequalityException(Exception):
    """Exceção base do sistema Binequality."""
    pass


class ConfigurationError(BinequalityException):
    """Erro de configuração."""
    pass


class InvalidArgumentError(BinequalityException):
    """Argumento inválido para uma operação."""
    pass


class DomainError(BinequalityException):
    """Valor fora do domínio de uma função (parâmetros, probabilidades, rendas)."""
    pass


class DatasetValidationError(BinequalityException):
    """Conjunto de faixas inválido (faixas sobrepostas, descontínuas, vazias...)."""
    pass


class DatasetParseError(DatasetValidationError):
    """Erro ao ler uma linha do arquivo de entrada."""

    def __init__(self, message: str, dataset_id: Optional[str] = None, line: Optional[int] = None):
        self.dataset_id = dataset_id
        self.line = line
        prefix = []
        if dataset_id is not None:
            prefix.append(f"dataset '{dataset_id}'")
        if line is not None:
            prefix.append(f"linha {line}")
        full = f"{', '.join(prefix)}: {message}" if prefix else message
        super().__init__(full)


class EstimationImpossibleError(BinequalityException):
    """Os dados não permitem calcular a estimativa pedida."""
    pass


class DegenerateGeometryError(EstimationImpossibleError):
    """Limites das faixas tornam a fórmula indefinida (ex.: ln(l_B / 0))."""
    pass


class InfiniteMeanError(DomainError):
    """Média de Pareto infinita (α ≤ 1)."""
    pass


class UnidentifiableError(EstimationImpossibleError):
    """Faixas povoadas insuficientes para identificar o modelo."""
    pass


class EstimationFailedError(BinequalityException):
    """Nenhum modelo sobreviveu à triagem do MGBE."""

    def __init__(self, message: str, reasons: Optional[Dict[str, str]] = None):
        self.reasons = dict(reasons or {})
        if self.reasons:
            detail = "; ".join(f"{kind}: {reason}" for kind, reason in self.reasons.items())
            message = f"{message} ({detail})"
        super().__init__(message)


class UsageError(BinequalityException):
    """Argumentos inválidos na linha de comando."""
    pass
