"""
Export utilities: provenance, CSV tables and JSON-lines records
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Union

import numpy as np
import pandas as pd

from config.settings import FORMAT_VERSION, LIBRARY_VERSION, RNG_NAME

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class ExportError(OSError):
    """An output file could not be written or read; carries the path."""

    def __init__(self, path: PathLike, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = str(path)


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (tuple, set)):
        return list(value)
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _dumps(record: Dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(',', ':'), default=_json_default)


def config_hash(config: Dict) -> str:
    """sha256 of the canonical JSON of a config; output paths are not part of it."""
    return hashlib.sha256(_dumps(config).encode('utf-8')).hexdigest()


def provenance(command: str, config: Dict) -> Dict:
    """
    Fields carried by every output record

    Args:
        command: CLI subcommand name
        config: Full parameter record of the run

    Returns:
        Dictionary with format_version, command, config_hash, library_version, rng
    """
    return {
        'format_version': FORMAT_VERSION,
        'command': command,
        'config_hash': config_hash(config),
        'library_version': LIBRARY_VERSION,
        'rng': RNG_NAME,
    }


def _format_list(items: Iterable) -> str:
    """Space-separated positions for CSV cells."""
    return ' '.join(str(item) for item in items)


def records_to_dataframe(records: List[Dict], columns: Optional[List[str]] = None) -> pd.DataFrame:
    """
    Flatten records into a DataFrame, list cells rendered as space-separated text

    Args:
        records: List of flat dictionaries
        columns: Column order; missing columns become empty

    Returns:
        Pandas DataFrame ready for CSV export
    """
    if not records:
        return pd.DataFrame(columns=columns or [])
    rows = [{key: _format_list(value) if isinstance(value, (list, tuple)) else value
             for key, value in record.items()} for record in records]
    df = pd.DataFrame(rows)
    if columns is not None:
        df = df.reindex(columns=columns)
    return df


def ensure_parent(path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e


def save_csv(df: pd.DataFrame, filename: PathLike) -> str:
    path = Path(filename)
    ensure_parent(path)
    try:
        df.to_csv(path, index=False, encoding='utf-8', lineterminator='\n')
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e
    logger.info("wrote %d rows to %s", len(df), path)
    return str(path)


def write_jsonl(records: Iterable[Dict], filename: PathLike) -> int:
    """Write one canonical JSON object per line; returns the number of lines."""
    path = Path(filename)
    ensure_parent(path)
    count = 0
    try:
        with path.open('w', encoding='utf-8', newline='\n') as handle:
            for record in records:
                handle.write(_dumps(record) + '\n')
                count += 1
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e
    logger.info("wrote %d records to %s", count, path)
    return count


def read_jsonl(filename: PathLike) -> Iterator[Dict]:
    path = Path(filename)
    try:
        with path.open('r', encoding='utf-8') as handle:
            for line in handle:
                if line.strip():
                    yield json.loads(line)
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e


def write_document(document: Dict, filename: PathLike) -> str:
    """Write a single self-describing JSON document."""
    path = Path(filename)
    ensure_parent(path)
    try:
        path.write_text(json.dumps(document, sort_keys=True, indent=2, default=_json_default) + '\n',
                        encoding='utf-8')
    except OSError as e:
        raise ExportError(path, e.strerror or str(e)) from e
    logger.info("wrote %s", path)
    return str(path)


def write_run_meta(filename: PathLike, wall_clock: float) -> str:
    """Sidecar <file>.meta.json with the wall-clock time, kept out of the data file."""
    path = Path(str(filename) + '.meta.json')
    return write_document({'format_version': FORMAT_VERSION, 'wall_clock_seconds': round(wall_clock, 3)},
                          path)
