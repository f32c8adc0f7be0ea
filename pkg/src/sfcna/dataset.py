"""Dataset loading, validation, and the per-year ledger containers.

The on-disk format is a flat CSV with header ``year,sector,item,direction,value``
(UTF-8, decimal point, no thousands separators, values at 0.01 M EUR
resolution). A JSON mirror with the same field names is supported. Rows
are keyed by (year, sector, item, direction); duplicates and unknown
codes are hard errors because silent code drift is the main corruption
mode for accounting data.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Union

from .ledger import (
    BALANCING_ITEMS,
    DIRECTIONS,
    ITEM_CODES,
    NET,
    PAID,
    RECEIVED,
    SECTORS,
    SIGNED_ITEMS,
    LedgerError,
    Numeric,
    exact,
    render,
)

log = logging.getLogger(__name__)

CSV_HEADER = ("year", "sector", "item", "direction", "value")

# Row provenance markers used by the embedded calibration fixture.
SOURCE_REPORTED = "reported"
SOURCE_DERIVED = "derived"

RowKey = tuple[str, str, str]  # (sector, item, direction)


class DatasetError(LedgerError):
    """Schema violation while reading a dataset."""

    def __init__(self, message: str, row: int | None = None, fieldname: str | None = None):
        where = ""
        if row is not None:
            where = f"row {row}: "
        if fieldname is not None:
            message = f"field '{fieldname}': {message}"
        super().__init__(where + message)
        self.row = row
        self.fieldname = fieldname


@dataclass(frozen=True)
class DatasetRow:
    """One validated dataset record."""

    year: int
    sector: str
    item: str
    direction: str
    value: Fraction

    def __init__(self, year: int, sector: str, item: str, direction: str, value: Numeric):
        if sector not in SECTORS:
            raise DatasetError(f"unknown sector: {sector!r}")
        spec = ITEM_CODES.get(item)
        if spec is None:
            raise DatasetError(f"unknown item code: {item!r}")
        if direction not in DIRECTIONS:
            raise DatasetError(f"unknown direction: {direction!r}")
        amount = exact(value)
        if direction == NET and not spec.signed:
            raise DatasetError(f"item {item} is a gross item; direction 'net' not allowed")
        if direction != NET and spec.signed:
            raise DatasetError(f"item {item} is signed; use direction 'net'")
        if direction != NET and amount < 0:
            raise DatasetError(f"negative value {render(amount)} for gross item {item}")
        object.__setattr__(self, "year", int(year))
        object.__setattr__(self, "sector", sector)
        object.__setattr__(self, "item", item)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "value", amount)


class SectorLedger:
    """All flow values of one sector for one accounting year."""

    def __init__(self, sector: str, values: Mapping[tuple[str, str], Numeric] | None = None):
        if sector not in SECTORS:
            raise DatasetError(f"unknown sector: {sector!r}")
        self.sector = sector
        self._values: dict[tuple[str, str], Fraction] = {}
        for (item, direction), value in (values or {}).items():
            if item not in ITEM_CODES:
                raise DatasetError(f"unknown item code: {item!r}")
            if direction not in DIRECTIONS:
                raise DatasetError(f"unknown direction: {direction!r}")
            self._values[(item, direction)] = exact(value)

    def get(self, item: str, direction: str) -> Fraction:
        """Value for an item/direction; absent combinations read as zero."""
        if item not in ITEM_CODES:
            raise DatasetError(f"unknown item code: {item!r}")
        return self._values.get((item, direction), Fraction(0))

    def has(self, item: str, direction: str) -> bool:
        return (item, direction) in self._values

    def received(self, item: str) -> Fraction:
        return self.get(item, RECEIVED)

    def paid(self, item: str) -> Fraction:
        return self.get(item, PAID)

    def net(self, item: str) -> Fraction:
        return self.get(item, NET)

    def items(self) -> Iterable[tuple[tuple[str, str], Fraction]]:
        return sorted(self._values.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SectorLedger):
            return NotImplemented
        return self.sector == other.sector and self._values == other._values

    def __repr__(self) -> str:
        return f"SectorLedger({self.sector}, {len(self._values)} entries)"


@dataclass
class EconomyYear:
    """The five sector ledgers of one year; the unit of identity checking."""

    year: int
    ledgers: dict[str, SectorLedger]
    provenance: dict[RowKey, str] = field(default_factory=dict)

    def sector(self, sector: str) -> SectorLedger:
        if sector not in SECTORS:
            raise DatasetError(f"unknown sector: {sector!r}")
        return self.ledgers.setdefault(sector, SectorLedger(sector))

    def rows(self) -> list[DatasetRow]:
        """Flatten back to sorted dataset rows (zero-valued entries kept)."""
        out = []
        for sector in SECTORS:
            ledger = self.ledgers.get(sector)
            if ledger is None:
                continue
            for (item, direction), value in ledger.items():
                out.append(DatasetRow(self.year, sector, item, direction, value))
        return out

    def source(self, sector: str, item: str, direction: str) -> str | None:
        return self.provenance.get((sector, item, direction))


Dataset = dict[int, EconomyYear]

# Item/direction combinations the sector chains read. Used only to warn
# about silently-defaulted inputs at load time; anything else absent is
# a legitimate zero.
_CHAIN_INPUTS: dict[str, tuple[tuple[str, str], ...]] = {
    "NFS": (
        ("P1", RECEIVED), ("P2", PAID), ("K1", PAID), ("D11", PAID), ("D12", PAID),
        ("D29", PAID), ("D39", RECEIVED), ("D4", RECEIVED), ("D4", PAID),
        ("D7", RECEIVED), ("D7", PAID), ("D5", PAID), ("D9", RECEIVED), ("D9", PAID),
        ("P5", PAID), ("K2", NET),
    ),
    "FFS": (
        ("P1", RECEIVED), ("P2", PAID), ("K1", PAID), ("D11", PAID), ("D12", PAID),
        ("D29", PAID), ("D39", RECEIVED), ("D4", RECEIVED), ("D4", PAID),
        ("D61D62", RECEIVED), ("D61D62", PAID), ("D7", RECEIVED), ("D7", PAID),
        ("D5", PAID), ("D9", RECEIVED), ("D9", PAID), ("P5", PAID), ("K2", NET),
    ),
    "HS": (
        ("P1", RECEIVED), ("P2", PAID), ("K1", PAID), ("D11", PAID), ("D11", RECEIVED),
        ("D12", PAID), ("D12", RECEIVED), ("D29", PAID), ("D39", RECEIVED),
        ("D4", RECEIVED), ("D4", PAID), ("D61D62", RECEIVED), ("D61D62", PAID),
        ("D7", RECEIVED), ("D7", PAID), ("D5", PAID), ("P31", PAID),
        ("D9", RECEIVED), ("D9", PAID), ("P5", PAID), ("K2", NET),
    ),
    "GS": (
        ("P1", RECEIVED), ("P2", PAID), ("K1", PAID), ("D11", PAID), ("D12", PAID),
        ("D29", PAID), ("D21", RECEIVED), ("D29", RECEIVED), ("D31", PAID), ("D39", PAID),
        ("D4", RECEIVED), ("D4", PAID), ("D61D62", RECEIVED), ("D61D62", PAID),
        ("D7", RECEIVED), ("D7", PAID), ("D5", RECEIVED), ("D5", PAID),
        ("P31", PAID), ("P32", PAID), ("D9", RECEIVED), ("D9", PAID),
        ("P5", PAID), ("K2", NET),
    ),
    "RS": (
        ("P7", RECEIVED), ("P6", PAID), ("D11", RECEIVED), ("D11", PAID),
        ("D12", RECEIVED), ("D12", PAID), ("D21", RECEIVED), ("D31", PAID), ("D39", PAID),
        ("D4", RECEIVED), ("D4", PAID), ("D61D62", RECEIVED), ("D61D62", PAID),
        ("D7", RECEIVED), ("D7", PAID), ("D9", RECEIVED), ("D9", PAID), ("K2", NET),
    ),
}


def _parse_value(text: str, row: int) -> Fraction:
    try:
        dec = Decimal(text)
    except InvalidOperation:
        raise DatasetError(f"malformed value {text!r}", row=row, fieldname="value") from None
    if not dec.is_finite():
        raise DatasetError(f"non-finite value {text!r}", row=row, fieldname="value")
    if dec.as_tuple().exponent < -2:
        raise DatasetError(
            f"value {text!r} finer than 0.01 resolution", row=row, fieldname="value"
        )
    return exact(dec)


def _build(rows: Iterable[DatasetRow]) -> Dataset:
    staging: dict[int, dict[str, dict[tuple[str, str], Fraction]]] = {}
    seen: set[tuple[int, str, str, str]] = set()
    for row in rows:
        key = (row.year, row.sector, row.item, row.direction)
        if key in seen:
            raise DatasetError(
                f"duplicate key year={row.year} sector={row.sector} "
                f"item={row.item} direction={row.direction}"
            )
        seen.add(key)
        staging.setdefault(row.year, {}).setdefault(row.sector, {})[(row.item, row.direction)] = row.value
    dataset: Dataset = {}
    for year in sorted(staging):
        ledgers = {
            sector: SectorLedger(sector, staging[year].get(sector, {}))
            for sector in SECTORS
        }
        dataset[year] = EconomyYear(year, ledgers)
    return dataset


def _warn_missing(dataset: Dataset) -> None:
    for year, econ in dataset.items():
        missing = []
        for sector, combos in _CHAIN_INPUTS.items():
            ledger = econ.ledgers[sector]
            for item, direction in combos:
                if not ledger.has(item, direction):
                    missing.append(f"{sector}:{item}:{direction}")
        if missing:
            log.warning(
                "%d: %d chain inputs absent, defaulting to 0 (%s)",
                year, len(missing), ", ".join(missing[:8]) + ("..." if len(missing) > 8 else ""),
            )


def load(path: Union[str, Path]) -> Dataset:
    """Load and validate a CSV dataset, indexed by year."""
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as handle:
        return loads(handle.read())


def loads(text: str) -> Dataset:
    """Parse a CSV dataset from a string (same schema as :func:`load`)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DatasetError("empty file: missing header") from None
    if tuple(h.strip() for h in header) != CSV_HEADER:
        raise DatasetError(f"bad header {header!r}, expected {','.join(CSV_HEADER)}", row=1)
    rows = []
    for lineno, record in enumerate(reader, start=2):
        if not record or (len(record) == 1 and not record[0].strip()):
            continue
        if len(record) != len(CSV_HEADER):
            raise DatasetError(f"expected {len(CSV_HEADER)} fields, got {len(record)}", row=lineno)
        year_text, sector, item, direction, value_text = (f.strip() for f in record)
        try:
            year = int(year_text)
        except ValueError:
            raise DatasetError(f"malformed year {year_text!r}", row=lineno, fieldname="year") from None
        value = _parse_value(value_text, lineno)
        try:
            rows.append(DatasetRow(year, sector, item, direction, value))
        except DatasetError as exc:
            raise DatasetError(str(exc), row=lineno) from None
    dataset = _build(rows)
    _warn_missing(dataset)
    return dataset


def dumps(dataset: Dataset) -> str:
    """Serialize a dataset to CSV text; inverse of :func:`loads`."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for year in sorted(dataset):
        for row in dataset[year].rows():
            writer.writerow([row.year, row.sector, row.item, row.direction, render(row.value)])
    return out.getvalue()


def save(dataset: Dataset, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(dataset), encoding="utf-8")


def load_json(path: Union[str, Path]) -> Dataset:
    """JSON mirror of the CSV schema: a list of row objects."""
    records = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(records, list):
        raise DatasetError("JSON dataset must be a list of row objects")
    rows = []
    for i, record in enumerate(records):
        try:
            rows.append(
                DatasetRow(
                    int(record["year"]),
                    record["sector"],
                    record["item"],
                    record["direction"],
                    _parse_value(str(record["value"]), i),
                )
            )
        except KeyError as exc:
            raise DatasetError(f"missing field {exc.args[0]!r}", row=i) from None
    dataset = _build(rows)
    _warn_missing(dataset)
    return dataset


def save_json(dataset: Dataset, path: Union[str, Path]) -> None:
    records = []
    for year in sorted(dataset):
        for row in dataset[year].rows():
            records.append(
                {
                    "year": row.year,
                    "sector": row.sector,
                    "item": row.item,
                    "direction": row.direction,
                    "value": render(row.value),
                }
            )
    Path(path).write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")


__all__ = [
    "CSV_HEADER",
    "Dataset",
    "DatasetError",
    "DatasetRow",
    "EconomyYear",
    "SectorLedger",
    "SOURCE_DERIVED",
    "SOURCE_REPORTED",
    "dumps",
    "load",
    "load_json",
    "loads",
    "save",
    "save_json",
]
