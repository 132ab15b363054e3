# src/report_writer.py
"""
Gravação dos relatórios de saída (CSV ou JSON) em arquivo ou stdout.

O CSV usa 6 algarismos significativos; o JSON mantém precisão total e
envolve os resultados em {"summary": {...}, "results": [...]}.
"""

import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.exceptions import ConfigurationError
from src.logger import get_logger
from src.validators import Validators

CSV_FLOAT_FORMAT = '%.6g'
STDOUT = '-'


def _json_default(value: Any):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"tipo não serializável: {type(value).__name__}")


def _clean(value: Any) -> Any:
    # NaN/inf não são JSON válido
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


class ReportWriter:
    """
    Escreve linhas de resultado no destino configurado.
    """

    def __init__(self, output: str = STDOUT, fmt: str = 'csv'):
        ok, msg = Validators.validate_output_format(fmt)
        if not ok:
            raise ConfigurationError(msg)
        self.output = output or STDOUT
        self.fmt = fmt.lower()

    def render_rows(self, rows: Sequence[Dict[str, Any]], columns: List[str],
                    summary: Optional[Dict[str, Any]] = None) -> str:
        if self.fmt == 'json':
            document = {'summary': summary or {}, 'results': [_clean(dict(row)) for row in rows]}
            return json.dumps(document, indent=2, ensure_ascii=False, default=_json_default) + '\n'
        frame = pd.DataFrame.from_records([{c: row.get(c) for c in columns} for row in rows], columns=columns)
        return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n')

    def render_frame(self, frame: pd.DataFrame, summary: Optional[Dict[str, Any]] = None) -> str:
        rows = frame.astype(object).where(frame.notna(), None).to_dict(orient='records')
        return self.render_rows(rows, list(frame.columns), summary)

    def write(self, text: str) -> None:
        """Grava o texto no arquivo de saída ou em stdout ('-')."""
        if self.output == STDOUT:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        path = Path(self.output)
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        get_logger().info(f"Relatório salvo em {path}")

    def write_rows(self, rows: Sequence[Dict[str, Any]], columns: List[str],
                   summary: Optional[Dict[str, Any]] = None) -> None:
        self.write(self.render_rows(rows, columns, summary))

    def write_frame(self, frame: pd.DataFrame, summary: Optional[Dict[str, Any]] = None) -> None:
        self.write(self.render_frame(frame, summary))
