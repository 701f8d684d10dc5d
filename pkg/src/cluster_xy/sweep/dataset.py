"""
Plot-ready tabular results and their CSV / JSON files.

CSV: header row, minimal RFC-4180 quoting, floats at 17 significant digits, LF line endings, no metadata.
JSON: object with ``schema``, ``rows`` (array of arrays) and ``metadata``.
Writing the same dataset twice gives byte-identical files.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from core import DEGENERATE_FAMILY, Flag

log = logging.getLogger(__name__)

FLAGS_COLUMN = "flags"


def _plain_cell(value: object) -> object:
    """NumPy scalars as the matching builtin, so that both file formats see plain values."""
    return value.item() if isinstance(value, np.generic) else value


class DatasetIOError(OSError):
    """Reading or writing a dataset file failed; the message names the path."""


class DatasetFormat(Enum):
    CSV = "csv"
    JSON = "json"

    @classmethod
    def from_path(cls, path: str | Path) -> "DatasetFormat":
        suffix = Path(path).suffix.lower().lstrip(".")
        try:
            return cls(suffix)
        except ValueError as error:
            msg = f"cannot infer dataset format from {path!s}, use .csv or .json"
            raise DatasetIOError(msg) from error


@dataclass(frozen=True, slots=True)
class Dataset:
    """
    :param schema: ordered column names.
    :param rows: row-major records, each with ``len(schema)`` cells.
    :param metadata: plan echo, code version and timestamp.
    """

    schema: tuple[str, ...]
    rows: tuple[tuple, ...] = field(default=())
    metadata: dict[str, object] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "schema", tuple(self.schema))
        object.__setattr__(self, "rows", tuple(tuple(map(_plain_cell, row)) for row in self.rows))
        bad = [index for index, row in enumerate(self.rows) if len(row) != len(self.schema)]
        if bad:
            msg = f"rows {bad[:5]} do not match the schema of {len(self.schema)} columns"
            raise ValueError(msg)

    def column(self, name: str) -> list:
        index = self.schema.index(name)
        return [row[index] for row in self.rows]

    @property
    def all_flagged(self) -> bool:
        """Whether the dataset has rows and every one of them carries a flag of the degenerate family."""
        if FLAGS_COLUMN not in self.schema or not self.rows:
            return False
        return all(Flag.from_label(label or "") & DEGENERATE_FAMILY for label in self.column(FLAGS_COLUMN))

    def __len__(self) -> int:
        return len(self.rows)


def _csv_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _parse_cell(text: str, column: str) -> object:
    if column == FLAGS_COLUMN:
        return text
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def format_dataset(dataset: Dataset, fmt: DatasetFormat) -> str:
    """Text of ``dataset`` in ``fmt``."""
    if fmt is DatasetFormat.JSON:
        document = {
            "schema": list(dataset.schema),
            "rows": [list(row) for row in dataset.rows],
            "metadata": dataset.metadata,
        }
        return json.dumps(document, indent=2, allow_nan=False, default=str) + "\n"

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(dataset.schema)
    writer.writerows([_csv_cell(value) for value in row] for row in dataset.rows)
    return buffer.getvalue()


def write_dataset(dataset: Dataset, fmt: DatasetFormat | str, destination: str | Path) -> None:
    """
    Writes ``dataset`` to ``destination``.

    :raises DatasetIOError: if the file cannot be written.
    """
    fmt = DatasetFormat(fmt)
    path = Path(destination)
    text = format_dataset(dataset, fmt)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as file:
            file.write(text)
    except OSError as error:
        msg = f"cannot write dataset to {path}: {error.strerror or error}"
        log.error("Dataset write failed", extra={"path": str(path)})
        raise DatasetIOError(msg) from error
    log.info("Dataset written", extra={"path": str(path), "format": fmt.value, "rows": len(dataset)})


def read_dataset(source: str | Path, fmt: DatasetFormat | str | None = None) -> Dataset:
    """
    Reads a dataset written by :func:`write_dataset`; the format follows the file suffix by default.

    CSV files carry no metadata, their cells are parsed back to ``None``, ``bool``, ``int``, ``float`` or ``str``.

    :raises DatasetIOError: if the file cannot be read or parsed.
    """
    path = Path(source)
    fmt = DatasetFormat.from_path(path) if fmt is None else DatasetFormat(fmt)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        msg = f"cannot read dataset from {path}: {error.strerror or error}"
        raise DatasetIOError(msg) from error

    try:
        if fmt is DatasetFormat.JSON:
            document = json.loads(text)
            return Dataset(tuple(document["schema"]), tuple(map(tuple, document["rows"])), document["metadata"])
        records = list(csv.reader(io.StringIO(text, newline="")))
        schema = tuple(records[0])
        rows = tuple(
            tuple(_parse_cell(cell, name) for cell, name in zip(row, schema, strict=True)) for row in records[1:]
        )
        return Dataset(schema, rows)
    except (ValueError, KeyError, IndexError) as error:
        msg = f"malformed dataset file {path}: {error}"
        raise DatasetIOError(msg) from error
