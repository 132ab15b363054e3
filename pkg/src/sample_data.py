# src/sample_data.py
"""
Dados de exemplo empacotados: distribuição de renda domiciliar de dois
condados dos EUA (ACS 2006-10) nas 16 faixas padrão.
"""

from typing import List

from src.binned_core import BinnedDataset, parse_datasets

# Limites inferiores das 16 faixas da ACS; a última faixa não tem limite superior
ACS_16_LOWER_BOUNDS = (
    0.0, 10000.0, 15000.0, 20000.0, 25000.0, 30000.0, 35000.0, 40000.0,
    45000.0, 50000.0, 60000.0, 75000.0, 100000.0, 125000.0, 150000.0, 200000.0,
)

# Contagens populacionais estimadas (amostra de 1 em 8)
MARICAO_COUNTS = (781, 245, 140, 156, 85, 60, 37, 61, 9, 57, 19, 0, 0, 0, 0, 0)
NANTUCKET_COUNTS = (165, 109, 67, 147, 114, 91, 148, 44, 121, 159, 358, 625, 338, 416, 200, 521)

TABLE1_SAMPLING_FRACTION = 8


def table1_csv() -> str:
    """Retorna a tabela dos dois condados no formato CSV de entrada."""
    lines = ['dataset_id,bin_min,bin_max,count']
    for name, counts in (('maricao', MARICAO_COUNTS), ('nantucket', NANTUCKET_COUNTS)):
        for index, count in enumerate(counts):
            lower = ACS_16_LOWER_BOUNDS[index]
            upper = ACS_16_LOWER_BOUNDS[index + 1] if index + 1 < len(ACS_16_LOWER_BOUNDS) else None
            lines.append(f"{name},{lower:.0f},{'' if upper is None else f'{upper:.0f}'},{count}")
    return '\n'.join(lines) + '\n'


def table1_datasets(scale: float = 1.0) -> List[BinnedDataset]:
    """Maricao e Nantucket como BinnedDataset (nessa ordem)."""
    return parse_datasets(table1_csv().encode('utf-8'), scale=scale)
