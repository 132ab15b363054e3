# src/dataset_reader.py
"""
Módulo para leitura de arquivos de faixas de renda.
Aceita CSV e planilhas Excel com as colunas dataset_id, bin_min, bin_max, count.
"""

import pandas as pd
from pathlib import Path
from typing import List, Optional

from src.binned_core import BinnedDataset, frame_to_datasets, parse_datasets
from src.exceptions import BinequalityException
from src.logger import get_logger


class DatasetReader:
    """
    Classe para leitura de conjuntos de faixas a partir de arquivos.
    """

    def __init__(self, input_path: str):
        """
        Inicializa o leitor.

        Args:
            input_path: Caminho para o arquivo (.csv ou .xlsx)
        """
        self.input_path = Path(input_path)
        self.datasets: Optional[List[BinnedDataset]] = None
        self.last_error: str = ""

    def read(self, scale: float = 1.0) -> bool:
        """
        Lê o arquivo e armazena os conjuntos de faixas.

        Returns:
            bool: True se leitura foi bem-sucedida, False caso contrário
        """
        self.last_error = ""
        try:
            extension = self.input_path.suffix.lower()
            if extension == '.xls':
                self.last_error = "Formato .xls não suportado: salve a planilha como .xlsx ou .csv."
                return False
            if extension == '.xlsx':
                df = pd.read_excel(self.input_path, engine='openpyxl', dtype=str, keep_default_na=False)
                self.datasets = frame_to_datasets(df, scale=scale)
            else:
                with open(self.input_path, 'rb') as f:
                    self.datasets = parse_datasets(f, scale=scale)
            get_logger().debug(f"{len(self.datasets)} datasets lidos de {self.input_path}")
            return True

        except FileNotFoundError:
            self.last_error = f"Arquivo não encontrado: {self.input_path}"
            return False
        except PermissionError:
            self.last_error = f"Sem permissão para ler: {self.input_path}"
            return False
        except BinequalityException as e:
            self.last_error = f"Arquivo inválido: {e}"
            return False
        except (OSError, ValueError) as e:
            self.last_error = f"Erro ao ler arquivo: {type(e).__name__}: {e}"
            return False

    def get_datasets(self) -> List[BinnedDataset]:
        """
        Retorna os conjuntos lidos (lista vazia se read() não foi bem-sucedido).
        """
        return list(self.datasets or [])

    def get_count(self) -> int:
        """
        Retorna o número de conjuntos lidos.
        """
        return len(self.datasets or [])
