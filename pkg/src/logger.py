# src/logger.py
"""
Sistema de logging para o Binequality.
Salva logs em arquivo e também exibe no console (stderr).
"""

import logging
import sys
from pathlib import Path
from datetime import datetime
from src import config


class BinequalityLogger:
    """
    Logger customizado para o sistema Binequality.
    """

    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(BinequalityLogger, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        if BinequalityLogger._initialized:
            return

        self.logs_dir = config.LOGS_DIR

        # Configura logger
        self.logger = logging.getLogger('Binequality')
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        # Evita duplicação de handlers
        if self.logger.handlers:
            BinequalityLogger._initialized = True
            return

        # Handler para arquivo (falha silenciosa: o log em disco é opcional)
        try:
            file_handler = logging.FileHandler(self.get_log_file(), encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s - %(levelname)s - %(process)d - %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            ))
            self.logger.addHandler(file_handler)
        except OSError:
            pass

        # Handler para console; stdout fica reservado para relatórios
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(getattr(logging, config.LOG_LEVEL, logging.INFO))
        console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
        self.logger.addHandler(console_handler)
        self.console_handler = console_handler

        BinequalityLogger._initialized = True

    def set_console_level(self, level: str):
        """Altera o nível do log exibido no console."""
        handler = getattr(self, 'console_handler', None)
        if handler is not None:
            handler.setLevel(getattr(logging, level.upper(), logging.INFO))

    def debug(self, message: str):
        """Log de debug."""
        self.logger.debug(message)

    def info(self, message: str):
        """Log de informação."""
        self.logger.info(message)

    def warning(self, message: str):
        """Log de aviso."""
        self.logger.warning(message)

    def error(self, message: str):
        """Log de erro."""
        self.logger.error(message)

    def get_log_file(self) -> Path:
        """Retorna o caminho do arquivo de log atual."""
        return self.logs_dir / f'app_{datetime.now().strftime("%Y%m%d")}.log'


# Instância global
_logger = None


def get_logger() -> BinequalityLogger:
    """Retorna a instância do logger."""
    global _logger
    if _logger is None:
        _logger = BinequalityLogger()
    return _logger
