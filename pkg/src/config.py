# src/config.py
"""
Módulo de configuração do sistema.
Carrega variáveis de ambiente e valores padrão dos estimadores.
"""

import os
import tempfile
from pathlib import Path
from dotenv import load_dotenv

# Carrega variáveis de ambiente do arquivo .env
load_dotenv()

# Diretório raiz do projeto
PROJECT_ROOT = Path(__file__).parent.parent


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.getenv(name, str(default)))
    except ValueError:
        return default


def _env_float(name: str, default: float) -> float:
    try:
        return float(os.getenv(name, str(default)))
    except ValueError:
        return default


# Paralelismo e reprodutibilidade
DEFAULT_JOBS = _env_int('BINEQ_JOBS', os.cpu_count() or 1)
DEFAULT_SEED = _env_int('BINEQ_SEED', 0)

# Grade de quantis do MGBE (0,05º, 0,15º, ..., 99,95º percentis)
DEFAULT_QUANTILES = _env_int('BINEQ_QUANTILES', 1000)

# Otimizador do ajuste por máxima verossimilhança
FIT_REL_TOL = _env_float('BINEQ_FIT_REL_TOL', 1e-8)
FIT_MAX_ITER = _env_int('BINEQ_FIT_MAX_ITER', 2000)
FIT_RESTARTS = _env_int('BINEQ_FIT_RESTARTS', 5)

LOG_LEVEL = os.getenv('BINEQ_LOG_LEVEL', 'INFO').upper()


def _safe_mkdir(path: Path) -> bool:
    """
    Cria um diretório de forma segura, tratando todos os erros possíveis.

    Args:
        path: Caminho do diretório a criar

    Returns:
        bool: True se criado com sucesso, False caso contrário
    """
    try:
        path.mkdir(parents=True, exist_ok=True)
        return True
    except (OSError, PermissionError, FileNotFoundError, ValueError):
        return False


def resolve_logs_dir() -> Path:
    """
    Retorna o diretório de logs, com fallbacks progressivos.

    Ordem: BINEQ_LOGS_DIR -> diretório temporário do sistema -> <projeto>/logs.
    """
    configured = os.getenv('BINEQ_LOGS_DIR')
    candidates = []
    if configured:
        candidates.append(Path(configured))
    candidates.append(Path(tempfile.gettempdir()) / 'Binequality' / 'logs')
    candidates.append(PROJECT_ROOT / 'logs')
    for candidate in candidates:
        if _safe_mkdir(candidate):
            return candidate
    return Path.cwd()


LOGS_DIR = resolve_logs_dir()


def validate_config():
    """
    Valida se as configurações carregadas são utilizáveis.

    Returns:
        tuple: (is_valid, error_message)
    """
    if DEFAULT_JOBS < 1:
        return False, "BINEQ_JOBS deve ser pelo menos 1"
    if DEFAULT_QUANTILES < 2:
        return False, "BINEQ_QUANTILES deve ser pelo menos 2"
    if FIT_REL_TOL <= 0:
        return False, "BINEQ_FIT_REL_TOL deve ser positivo"
    if FIT_MAX_ITER < 1:
        return False, "BINEQ_FIT_MAX_ITER deve ser pelo menos 1"
    if FIT_RESTARTS < 1:
        return False, "BINEQ_FIT_RESTARTS deve ser pelo menos 1"
    return True, ""
