# main.py
"""
Aplicação principal Binequality.
Estatísticas de desigualdade de renda a partir de faixas (linha de comando).
"""

import sys
import warnings
from pathlib import Path

# Avisos de depreciação do pandas/scipy não afetam os resultados
warnings.filterwarnings("ignore", category=FutureWarning)

# Adiciona diretório do projeto ao path
sys.path.insert(0, str(Path(__file__).parent))

REQUIRED_MODULES = [
    ('numpy', 'numpy'),
    ('scipy', 'scipy'),
    ('pandas', 'pandas'),
    ('openpyxl', 'openpyxl'),
    ('dotenv', 'python-dotenv'),
]


def check_dependencies():
    """
    Verifica se todas as dependências necessárias estão instaladas.

    Returns:
        tuple: (bool, str) - (sucesso, mensagem de erro)
    """
    if getattr(sys, 'frozen', False):
        return True, ""

    missing_modules = []
    for module_name, package_name in REQUIRED_MODULES:
        try:
            __import__(module_name)
        except ImportError:
            missing_modules.append(package_name)

    if missing_modules:
        return False, (
            f"Módulos faltando: {', '.join(missing_modules)}\n\n"
            f"Por favor, instale com: pip install {' '.join(missing_modules)}"
        )
    return True, ""


def show_error(title, message):
    """
    Exibe uma mensagem de erro em stderr.
    """
    print(f"\n{'=' * 60}", file=sys.stderr)
    print(f"ERRO: {title}", file=sys.stderr)
    print(f"{'=' * 60}", file=sys.stderr)
    print(message, file=sys.stderr)
    print(f"{'=' * 60}\n", file=sys.stderr)


def main(argv=None):
    """
    Função principal da aplicação.
    """
    deps_ok, deps_message = check_dependencies()
    if not deps_ok:
        show_error("Dependências Faltando", deps_message)
        return 1

    from src import config
    config_ok, config_message = config.validate_config()
    if not config_ok:
        show_error("Configuração Inválida", config_message)
        return 1

    from src.cli import main as cli_main
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
