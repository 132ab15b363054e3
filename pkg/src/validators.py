# src/validators.py
"""
Módulo de validações do sistema.
Valida dados de entrada e configurações dos estimadores.
"""

import math
from typing import Tuple, Optional, Any
from pathlib import Path

OUTPUT_FORMATS = ('csv', 'json')


def _as_float(value: Any) -> Optional[float]:
    try:
        number = float(str(value).strip()) if isinstance(value, str) else float(value)
    except (TypeError, ValueError):
        return None
    return number


def _as_int(value: Any) -> Optional[int]:
    try:
        if isinstance(value, str):
            return int(value.strip())
        if isinstance(value, float) and not value.is_integer():
            return None
        return int(value)
    except (TypeError, ValueError):
        return None


class Validators:
    """
    Classe com métodos estáticos para validações.
    """

    @staticmethod
    def validate_file_path(file_path: str, must_exist: bool = True) -> Tuple[bool, Optional[str]]:
        """
        Valida caminho de arquivo.

        Args:
            file_path: Caminho do arquivo
            must_exist: Se True, arquivo deve existir

        Returns:
            tuple: (is_valid, error_message)
        """
        if not file_path or not str(file_path).strip():
            return False, "Caminho do arquivo não pode estar vazio"

        path = Path(file_path)

        if must_exist and not path.exists():
            return False, f"Arquivo não encontrado: {file_path}"

        if must_exist and not path.is_file():
            return False, f"Caminho não é um arquivo: {file_path}"

        return True, None

    @staticmethod
    def validate_scale(scale: Any) -> Tuple[bool, Optional[str]]:
        """
        Valida o divisor aplicado às contagens (fração amostral).

        Returns:
            tuple: (is_valid, error_message)
        """
        number = _as_float(scale)
        if number is None:
            return False, "Escala deve ser um número"
        if not math.isfinite(number) or number <= 0:
            return False, "Escala deve ser um número positivo e finito"
        return True, None

    @staticmethod
    def validate_jobs(jobs: Any) -> Tuple[bool, Optional[str]]:
        """
        Valida o número de processos paralelos.

        Returns:
            tuple: (is_valid, error_message)
        """
        number = _as_int(jobs)
        if number is None:
            return False, "Número de processos deve ser inteiro"
        if number < 1:
            return False, "Número de processos deve ser pelo menos 1"
        return True, None

    @staticmethod
    def validate_alpha_min(flavor: str, alpha_min: Any) -> Tuple[bool, Optional[str]]:
        """
        Valida o limite inferior de α para o sabor de topo escolhido.

        A média aritmética de Pareto só é finita com α > 1; os demais sabores
        exigem apenas α > 0.

        Returns:
            tuple: (is_valid, error_message)
        """
        number = _as_float(alpha_min)
        if number is None or not math.isfinite(number):
            return False, "alpha_min deve ser um número finito"
        if flavor == 'arithmetic' and number <= 1:
            return False, "alpha_min deve ser maior que 1 para o sabor aritmético"
        if number <= 0:
            return False, "alpha_min deve ser positivo"
        return True, None

    @staticmethod
    def validate_quantiles(q: Any) -> Tuple[bool, Optional[str]]:
        """
        Valida o tamanho da grade de quantis.

        Returns:
            tuple: (is_valid, error_message)
        """
        number = _as_int(q)
        if number is None:
            return False, "Número de quantis deve ser inteiro"
        if number < 2:
            return False, "Número de quantis deve ser pelo menos 2"
        return True, None

    @staticmethod
    def validate_fit_settings(rel_tol: Any, max_iter: Any, restarts: Any) -> Tuple[bool, Optional[str]]:
        """
        Valida tolerância, iterações e reinícios do otimizador.

        Returns:
            tuple: (is_valid, error_message)
        """
        tol = _as_float(rel_tol)
        if tol is None or not math.isfinite(tol) or tol <= 0:
            return False, "rel_tol deve ser um número positivo"
        iterations = _as_int(max_iter)
        if iterations is None or iterations < 1:
            return False, "max_iter deve ser um inteiro maior ou igual a 1"
        starts = _as_int(restarts)
        if starts is None or starts < 1:
            return False, "restarts deve ser um inteiro maior ou igual a 1"
        return True, None

    @staticmethod
    def validate_group(group: Any) -> Tuple[bool, Optional[str]]:
        """
        Valida o tamanho do grupo de faixas adjacentes a fundir.

        Returns:
            tuple: (is_valid, error_message)
        """
        number = _as_int(group)
        if number is None:
            return False, "Tamanho do grupo deve ser inteiro"
        if number < 2:
            return False, "Tamanho do grupo deve ser pelo menos 2"
        return True, None

    @staticmethod
    def validate_output_format(fmt: str) -> Tuple[bool, Optional[str]]:
        """
        Valida o formato de saída.

        Returns:
            tuple: (is_valid, error_message)
        """
        if not fmt or fmt.strip().lower() not in OUTPUT_FORMATS:
            return False, f"Formato deve ser um de: {', '.join(OUTPUT_FORMATS)}"
        return True, None
