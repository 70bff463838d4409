"""
Report serialization: JSON for full data, CSV for per-n tables.

Floats are written with 12 significant digits so that files are
byte-identical across runs.
"""

import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

from loguru import logger

PathLike = Union[str, Path]


def format_float(value: float) -> str:
    """12 significant digits, no negative zero, locale independent."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value + 0.0:.12g}"


def _rounded(obj: Any) -> Any:
    if isinstance(obj, float):
        return float(format_float(obj)) if math.isfinite(obj) else format_float(obj)
    if isinstance(obj, dict):
        return {key: _rounded(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(value) for value in obj]
    return obj


def to_json(data: Dict[str, Any]) -> str:
    return json.dumps(_rounded(data), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(data: Dict[str, Any], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(data), encoding="utf-8")
    logger.debug(f"[EXPORT] wrote {path}")
    return path


def read_json(path: PathLike) -> Dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_csv(rows: Sequence[Dict[str, Any]], path: PathLike, columns: Sequence[str]) -> Path:
    """One header row, then `columns` of every row; floats via format_float."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([
                format_float(row[c]) if isinstance(row[c], float) else row[c] for c in columns
            ])
    logger.debug(f"[EXPORT] wrote {len(rows)} rows to {path}")
    return path


def read_csv(path: PathLike) -> List[Dict[str, Any]]:
    """Rows as dicts; numeric cells become int or float."""
    def parse(cell: str) -> Any:
        try:
            return int(cell)
        except ValueError:
            try:
                return float(cell)
            except ValueError:
                return cell

    with Path(path).open(encoding="utf-8", newline="") as handle:
        return [{key: parse(value) for key, value in row.items()} for row in csv.DictReader(handle)]


def write_report(report: Any, json_path: PathLike, csv_path: PathLike) -> None:
    """JSON of report.to_dict() plus the per-n table as CSV."""
    data = report.to_dict()
    write_json(data, json_path)
    rows = data["per_n"]
    columns = list(rows[0].keys()) if rows else ["index"]
    write_csv(rows, csv_path, columns)
