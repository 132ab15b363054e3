# src/binned_core.py
"""
Modelo de dados agrupados em faixas de renda.
Valida e lê conjuntos de faixas, permite reescalar contagens e fundir faixas
adjacentes.
"""

import io
import math
from dataclasses import dataclass
from typing import BinaryIO, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from src.exceptions import DatasetParseError, DatasetValidationError, InvalidArgumentError
from src.validators import Validators

CSV_COLUMNS = ['dataset_id', 'bin_min', 'bin_max', 'count']


@dataclass(frozen=True)
class Bin:
    """
    Faixa de renda semiaberta [lower, upper) com a contagem de casos.

    upper = None indica a faixa superior sem limite.
    """
    lower: float
    upper: Optional[float]
    count: float

    def __post_init__(self):
        if not math.isfinite(self.lower) or self.lower < 0:
            raise DatasetValidationError(f"Limite inferior inválido: {self.lower}")
        if self.upper is not None and (not math.isfinite(self.upper) or self.upper <= self.lower):
            raise DatasetValidationError(
                f"Limite superior {self.upper} deve ser maior que o inferior {self.lower}"
            )
        if not math.isfinite(self.count) or self.count < 0:
            raise DatasetValidationError(f"Contagem inválida: {self.count}")

    @property
    def is_unbounded(self) -> bool:
        return self.upper is None

    @property
    def width(self) -> Optional[float]:
        return None if self.upper is None else self.upper - self.lower

    @property
    def midpoint(self) -> Optional[float]:
        return None if self.upper is None else (self.lower + self.upper) / 2.0


@dataclass(frozen=True)
class BinnedDataset:
    """
    Lista ordenada e contígua de faixas de um mesmo conjunto (ex.: um condado).
    """
    id: str
    bins: Tuple[Bin, ...]

    def __post_init__(self):
        object.__setattr__(self, 'bins', tuple(self.bins))
        if not self.bins:
            raise DatasetValidationError(f"dataset '{self.id}' sem faixas")
        for position, (left, right) in enumerate(zip(self.bins, self.bins[1:]), start=1):
            if left.upper is None:
                raise DatasetValidationError(
                    f"dataset '{self.id}': faixa sem limite superior só pode ser a última (faixa {position})"
                )
            if left.upper != right.lower:
                raise DatasetValidationError(
                    f"dataset '{self.id}': faixas {position} e {position + 1} não são contíguas "
                    f"({left.upper} != {right.lower})"
                )

    @property
    def n(self) -> float:
        return float(math.fsum(b.count for b in self.bins))

    @property
    def B(self) -> int:
        return sum(1 for b in self.bins if b.count > 0)

    @property
    def B_all(self) -> int:
        return len(self.bins)

    @property
    def top(self) -> Bin:
        return self.bins[-1]


def populated(ds: BinnedDataset) -> List[Bin]:
    """Faixas com contagem positiva, na ordem original."""
    return [b for b in ds.bins if b.count > 0]


def merge_adjacent(ds: BinnedDataset, group: int) -> BinnedDataset:
    """
    Funde sequências consecutivas de `group` faixas (o último grupo pode ser menor).

    Args:
        ds: Conjunto de faixas
        group: Número de faixas por grupo (>= 2)

    Returns:
        BinnedDataset: Novo conjunto com as contagens somadas
    """
    ok, msg = Validators.validate_group(group)
    if not ok:
        raise InvalidArgumentError(msg)
    group = int(group)

    merged = []
    for start in range(0, len(ds.bins), group):
        chunk = ds.bins[start:start + group]
        merged.append(Bin(
            lower=chunk[0].lower,
            upper=chunk[-1].upper,
            count=float(math.fsum(b.count for b in chunk)),
        ))
    return BinnedDataset(id=ds.id, bins=tuple(merged))


def _parse_number(raw: str, field: str, dataset_id: str, line: int, allow_empty: bool) -> Optional[float]:
    text = raw.strip()
    if text == '':
        if allow_empty:
            return None
        raise DatasetParseError(f"campo '{field}' vazio", dataset_id, line)
    try:
        value = float(text)
    except ValueError:
        raise DatasetParseError(f"campo '{field}' não numérico: {raw!r}", dataset_id, line) from None
    if not math.isfinite(value):
        raise DatasetParseError(f"campo '{field}' não finito: {raw!r}", dataset_id, line)
    return value


def frame_to_datasets(df: pd.DataFrame, scale: float = 1.0, first_line: int = 2) -> List[BinnedDataset]:
    """
    Converte um DataFrame com as colunas do CSV de entrada em conjuntos de faixas.

    Args:
        df: DataFrame com colunas dataset_id, bin_min, bin_max, count (texto)
        scale: Divisor aplicado às contagens
        first_line: Número da linha do arquivo correspondente à primeira linha do DataFrame

    Returns:
        List[BinnedDataset]: Um conjunto por dataset_id, na ordem da primeira aparição
    """
    ok, msg = Validators.validate_scale(scale)
    if not ok:
        raise InvalidArgumentError(msg)
    scale = float(scale)

    headers = [str(col).strip().lower() for col in df.columns]
    missing = [col for col in CSV_COLUMNS if col not in headers]
    if missing:
        raise DatasetParseError(f"colunas obrigatórias ausentes: {', '.join(missing)}", line=1)
    df = df.rename(columns={col: str(col).strip().lower() for col in df.columns}).fillna('')

    rows: Dict[str, List[Tuple[float, Optional[float], float, int]]] = {}
    records = df[CSV_COLUMNS].itertuples(index=False, name=None)
    for offset, (raw_id, raw_min, raw_max, raw_count) in enumerate(records):
        line = first_line + offset
        dataset_id = str(raw_id).strip()
        if not dataset_id:
            raise DatasetParseError("dataset_id vazio", line=line)
        lower = _parse_number(str(raw_min), 'bin_min', dataset_id, line, allow_empty=True)
        upper = _parse_number(str(raw_max), 'bin_max', dataset_id, line, allow_empty=True)
        count = _parse_number(str(raw_count), 'count', dataset_id, line, allow_empty=False)
        # Faixa inferior sem limite: tratada como começando em zero
        lower = 0.0 if lower is None else lower
        if lower < 0:
            raise DatasetParseError(f"limite inferior negativo: {lower}", dataset_id, line)
        if count < 0:
            raise DatasetParseError(f"contagem negativa: {count}", dataset_id, line)
        if upper is not None and upper <= lower:
            raise DatasetParseError(f"bin_max {upper} não é maior que bin_min {lower}", dataset_id, line)
        rows.setdefault(dataset_id, []).append((lower, upper, count, line))

    datasets = []
    for dataset_id, entries in rows.items():
        entries.sort(key=lambda entry: entry[0])
        for (lower, upper, _, line), (next_lower, _, _, next_line) in zip(entries, entries[1:]):
            if upper is None:
                raise DatasetParseError("faixa sem limite superior antes da última faixa", dataset_id, line)
            if upper > next_lower:
                raise DatasetParseError(f"faixa sobreposta à anterior ({next_lower} < {upper})", dataset_id, next_line)
            if upper != next_lower:
                raise DatasetParseError(f"faixa descontínua ({upper} -> {next_lower})", dataset_id, next_line)
        bins = tuple(Bin(lower=lower, upper=upper, count=count / scale) for lower, upper, count, _ in entries)
        dataset = BinnedDataset(id=dataset_id, bins=bins)
        if dataset.n <= 0:
            raise DatasetParseError("dataset sem casos (n = 0)", dataset_id, entries[0][3])
        datasets.append(dataset)
    return datasets


def parse_datasets(source: Union[BinaryIO, bytes, str], scale: float = 1.0) -> List[BinnedDataset]:
    """
    Lê conjuntos de faixas de um CSV UTF-8 com cabeçalho dataset_id,bin_min,bin_max,count.

    Args:
        source: Fluxo de bytes, bytes, texto CSV ou caminho de arquivo
        scale: Divisor aplicado às contagens (ex.: 8 para uma amostra de 1 em 8)

    Returns:
        List[BinnedDataset]: Um conjunto por dataset_id
    """
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    elif isinstance(source, str) and '\n' in source:
        source = io.StringIO(source)
    try:
        df = pd.read_csv(source, dtype=str, keep_default_na=False, encoding='utf-8', skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise DatasetParseError("arquivo vazio", line=1) from None
    except pd.errors.ParserError as e:
        raise DatasetParseError(f"CSV malformado: {e}") from None
    return frame_to_datasets(df, scale=scale)


def datasets_to_csv(datasets: Sequence[BinnedDataset]) -> str:
    """
    Serializa conjuntos no formato do CSV de entrada (precisão total).

    Returns:
        str: Texto CSV com cabeçalho
    """
    records = []
    for ds in datasets:
        for b in ds.bins:
            records.append({
                'dataset_id': ds.id,
                'bin_min': repr(b.lower),
                'bin_max': '' if b.upper is None else repr(b.upper),
                'count': repr(b.count),
            })
    return pd.DataFrame(records, columns=CSV_COLUMNS).to_csv(index=False, lineterminator='\n')
