"""
Сохранение результатов испытаний: CSV-трасса ошибки, PGM-карта, сводка.
"""

import csv
from pathlib import Path
from typing import List, Tuple, Union

from .exceptions import WorldFileError
from .mapping import MappingConfig, extract_occupancy, write_pgm
from .trial import TrialRecord

CSV_HEADER = ("Time", "Error")

PathLike = Union[str, Path]


def export_csv(record: TrialRecord, path: PathLike) -> Path:
    """
    Записывает трассу ошибки: заголовок `Time,Error`, время с 3 знаками,
    ошибка с 6 знаками.

    Raises:
        ValueError: Если в записи нет выборок
        OSError: Если путь недоступен для записи
    """
    if not record.samples:
        raise ValueError("Запись испытания не содержит выборок")

    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for t, error in record.samples:
            writer.writerow((f"{t:.3f}", f"{error:.6f}"))
    return path


def read_csv(path: PathLike) -> List[Tuple[float, float]]:
    """
    Читает трассу, записанную export_csv.

    Raises:
        WorldFileError: Если заголовок или строки не соответствуют формату
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise WorldFileError(f"{path}: ожидался заголовок {','.join(CSV_HEADER)}")

        samples = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 2:
                raise WorldFileError(f"{path}:{lineno}: ожидалось два столбца")
            try:
                samples.append((float(row[0]), float(row[1])))
            except ValueError:
                raise WorldFileError(f"{path}:{lineno}: нечисловое значение")
    return samples


def export_map(record: TrialRecord, cfg: MappingConfig, path: PathLike) -> Path:
    """Записывает итоговую бинарную карту испытания в PGM; возвращает путь к карте."""
    path = Path(path)
    write_pgm(extract_occupancy(record.final_grid, cfg), record.final_grid, path)
    return path


def write_summary(record: TrialRecord, path: PathLike) -> Path:
    """Сводка испытания: ошибки и счетчики коррекций, по строке `ключ: значение`."""
    stats = record.update_stats
    lines = [
        f"scenario: {record.scenario.value}",
        f"seed: {record.seed}",
        f"agent: {record.agent_id}",
        f"samples: {len(record.samples)}",
        f"peak_error: {record.peak_error:.6f}",
        f"final_error: {record.final_error:.6f}",
        f"max_heading_error: {max(record.heading_errors, default=0.0):.6f}",
        f"predictions: {stats.get('predictions', 0)}",
        f"heading_updates: {stats.get('heading_updates', 0)}",
        f"full_updates: {stats.get('full_updates', 0)}",
    ]
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return path
