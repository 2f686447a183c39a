"""Reading country-year foundation scores out of a Fraser-style CSV.

The Economic Freedom of the World data changes column labels between
editions, so every column is named by a :class:`ColumnMapping`. Rows whose
country cannot be resolved are set aside (reported, not guessed); rows
missing any foundation score are kept but marked incomplete and never
enter an average.
"""
from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable, Mapping, Optional, Union

from . import countries
from .countries import NameOverrides, Unresolved, normalize_country_name
from .errors import DuplicateRecordError, EmptyPanelError, ParseError, RangeError, SchemaError
from .metrics import DEFAULT_SCALE, FOUNDATIONS, FoundationScale, FoundationVector, mean_vector

MISSING = frozenset({"", "na", "n/a", "-"})
YEAR_RANGE = (1950, 2100)
# Fraser spreadsheets exported to CSV carry a few title rows above the header.
HEADER_SEARCH_ROWS = 20


def _key(label: str) -> str:
    return " ".join(label.split()).casefold()


@dataclass(frozen=True)
class FoundationColumn:
    source: str
    invert: bool = False


@dataclass(frozen=True)
class ColumnMapping:
    mo: FoundationColumn
    po: FoundationColumn
    sg: FoundationColumn
    country: str = "Countries"
    year: str = "Year"
    # Optional column with alpha-3 codes; preferred over the name when filled.
    iso: Optional[str] = None

    def __post_init__(self):
        for name in FOUNDATIONS:
            col = getattr(self, name)
            if isinstance(col, str):
                object.__setattr__(self, name, FoundationColumn(col))
            elif isinstance(col, Mapping):
                object.__setattr__(self, name, FoundationColumn(**col))
        sources = [_key(c.source) for c in self.foundations]
        if len(set(sources)) != len(sources):
            raise ValueError(f"foundation columns must be distinct, got {[c.source for c in self.foundations]}")

    @property
    def foundations(self) -> tuple[FoundationColumn, ...]:
        return (self.mo, self.po, self.sg)

    def columns(self) -> list[str]:
        cols = [self.country, self.year] + [c.source for c in self.foundations]
        if self.iso:
            cols.append(self.iso)
        return cols

    @classmethod
    def from_dict(cls, data: Mapping) -> "ColumnMapping":
        data = dict(data)
        return cls(
            mo=data.pop("mo"),
            po=data.pop("po"),
            sg=data.pop("sg"),
            **data,
        )

    def to_dict(self) -> dict:
        out = {
            name: {"source": col.source, "invert": col.invert}
            for name, col in zip(FOUNDATIONS, self.foundations)
        }
        out.update(country=self.country, year=self.year, iso=self.iso)
        return out


# Current public EFW release: Area 5 summary, the state-ownership component
# of Area 1, and the Area 1 summary.
# Both the state-ownership component and the size-of-government area are
# already scored so that higher means more private / smaller government.
FRASER_DEFAULT = ColumnMapping(
    mo=FoundationColumn("Regulation"),
    po=FoundationColumn("State Ownership of Assets"),
    sg=FoundationColumn("Size of Government"),
    country="Countries",
    year="Year",
)

CANONICAL = ColumnMapping(
    mo=FoundationColumn("mo"),
    po=FoundationColumn("po"),
    sg=FoundationColumn("sg"),
    country="country_id",
    year="year",
)
CANONICAL_HEADER = ("country_id", "country_name", "year", "mo", "po", "sg")


@dataclass(frozen=True)
class CountryYearRecord:
    country_id: str
    year: int
    values: tuple[Optional[float], ...]

    def __post_init__(self):
        lo, hi = YEAR_RANGE
        if not lo <= self.year <= hi:
            raise RangeError(f"year {self.year} outside [{lo}, {hi}]")

    @property
    def complete(self) -> bool:
        return all(v is not None for v in self.values)

    @property
    def scores(self) -> Optional[FoundationVector]:
        """The foundation vector, or ``None`` for an incomplete record."""
        return FoundationVector(self.values) if self.complete else None


@dataclass(frozen=True)
class Provenance:
    source: str
    mapping: ColumnMapping


@dataclass(frozen=True)
class CountryPanel:
    records: Mapping[tuple[str, int], CountryYearRecord]
    provenance: Optional[Provenance] = field(default=None, compare=False)
    # (line number, raw country text) for rows that named no known country
    unresolved: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    def __len__(self):
        return len(self.records)

    def countries(self) -> list[str]:
        return sorted({cid for cid, _ in self.records})

    def years(self) -> list[int]:
        return sorted({y for _, y in self.records})

    def exclusions(self) -> list[str]:
        """Exclusion-report lines for rows that were dropped at ingest."""
        rows: dict[str, list[int]] = {}
        for line, raw in self.unresolved:
            rows.setdefault(raw, []).append(line)
        return [
            f"{raw}: unresolved country name (rows {', '.join(map(str, lines))})"
            for raw, lines in sorted(rows.items())
        ]


def parse_decimal(text: Optional[str]) -> Optional[float]:
    """Plain or comma-grouped decimal; ``None`` for blanks and sentinels."""
    if text is None:
        return None
    text = text.strip()
    if text.lower() in MISSING:
        return None
    try:
        value = float(text.replace(",", ""))
    except ValueError:
        return None
    if value != value:  # NaN
        return None
    return value


def _parse_year(text: Optional[str]) -> Optional[int]:
    value = parse_decimal(text)
    if value is None or value != int(value):
        return None
    return int(value)


def _read_text(source: Union[bytes, str, os.PathLike, BinaryIO]) -> tuple[str, str]:
    if isinstance(source, bytes):
        data, label = source, "<bytes>"
    elif isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
        label = os.fspath(source)
    else:
        data = source.read()
        label = getattr(source, "name", "<stream>")
    try:
        return data.decode("utf-8-sig"), str(label)
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc.reason}", f"byte {exc.start}") from exc


def parse_dataset(
    source: Union[bytes, str, os.PathLike, BinaryIO],
    mapping: ColumnMapping = FRASER_DEFAULT,
    overrides: Optional[NameOverrides] = None,
    scale: FoundationScale = DEFAULT_SCALE,
) -> CountryPanel:
    text, label = _read_text(source)
    reader = csv.reader(io.StringIO(text, newline=""))
    rows = [(reader.line_num, row) for row in reader]
    rows = [(line, row) for line, row in rows if any(cell.strip() for cell in row)]
    if not rows:
        raise SchemaError(mapping.country, f"{label}: empty file, no header row")

    country_key = _key(mapping.country)
    at = next(
        (i for i, (_, row) in enumerate(rows[:HEADER_SEARCH_ROWS])
         if country_key in {_key(c) for c in row}),
        0,
    )
    header_keys = [_key(c) for c in rows[at][1]]
    index = {}
    for col in mapping.columns():
        try:
            index[col] = header_keys.index(_key(col))
        except ValueError:
            raise SchemaError(col, f"{label}: missing column {col!r}") from None

    records: dict[tuple[str, int], CountryYearRecord] = {}
    unresolved = []
    bounds = scale.bounds
    for line, row in rows[at + 1:]:
        cell = lambda col: row[index[col]] if index[col] < len(row) else ""
        raw_name = cell(mapping.country).strip()
        code = None
        if mapping.iso:
            iso = cell(mapping.iso).strip().upper()
            if countries.is_code(iso):
                code = iso
        if code is None:
            resolved = normalize_country_name(raw_name, overrides)
            if isinstance(resolved, Unresolved):
                unresolved.append((line, raw_name))
                continue
            code = resolved
        year = _parse_year(cell(mapping.year))
        if year is None:
            unresolved.append((line, f"{raw_name} (unparseable year {cell(mapping.year)!r})"))
            continue
        values = []
        for name, col, (lo, hi) in zip(FOUNDATIONS, mapping.foundations, bounds):
            value = parse_decimal(cell(col.source))
            if value is not None:
                if col.invert:
                    value = hi - (value - lo)
                if not lo <= value <= hi:
                    raise RangeError(
                        f"{col.source} ({name}) = {value!r} outside [{lo}, {hi}] for {code}",
                        row=line,
                        source=label,
                    )
            values.append(value)
        try:
            record = CountryYearRecord(code, year, tuple(values))
        except RangeError as exc:
            raise RangeError(str(exc), row=line, source=label) from None
        if (code, year) in records:
            raise DuplicateRecordError(f"{label}:{line}: duplicate record for {code} {year}")
        records[(code, year)] = record

    ordered = dict(sorted(records.items()))
    return CountryPanel(ordered, Provenance(label, mapping), tuple(unresolved))


def export_panel_csv(panel: CountryPanel, destination: Union[str, os.PathLike, io.TextIOBase]) -> int:
    """Write the canonical panel CSV; returns the number of records written."""

    def write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CANONICAL_HEADER)
        for (cid, year), rec in sorted(panel.records.items()):
            vals = ["" if v is None else repr(v) for v in rec.values]
            writer.writerow([cid, countries.display_name(cid), year, *vals])
        return len(panel.records)

    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            return write(fh)
    return write(destination)


def read_panel_csv(source, overrides: Optional[NameOverrides] = None) -> CountryPanel:
    return parse_dataset(source, CANONICAL, overrides)


@dataclass(frozen=True)
class PeriodAverages:
    vectors: dict[str, FoundationVector]
    excluded: dict[str, str]

    def report_lines(self) -> list[str]:
        return [f"{cid}: {reason}" for cid, reason in sorted(self.excluded.items())]


def window_vectors(
    panel: CountryPanel, start_year: int, end_year: int, min_years: int = 1
) -> tuple[dict[str, list[FoundationVector]], dict[str, str]]:
    """Complete in-window vectors per country, plus the countries left out."""
    if start_year > end_year:
        raise ValueError(f"window start {start_year} after end {end_year}")
    if min_years < 1:
        raise ValueError("min_years must be at least 1")
    if not panel.records:
        raise EmptyPanelError("panel has no records")
    grouped: dict[str, list[FoundationVector]] = {cid: [] for cid in panel.countries()}
    for (cid, year), rec in sorted(panel.records.items()):
        if start_year <= year <= end_year and rec.complete:
            grouped[cid].append(rec.scores)
    kept, excluded = {}, {}
    for cid, vecs in grouped.items():
        if len(vecs) < min_years:
            excluded[cid] = (
                f"{len(vecs)} complete year(s) in {start_year}-{end_year}, need {min_years}"
            )
        else:
            kept[cid] = vecs
    return kept, excluded


def average_period(
    panel: CountryPanel, start_year: int = 1995, end_year: int = 2020, min_years: int = 1
) -> PeriodAverages:
    kept, excluded = window_vectors(panel, start_year, end_year, min_years)
    return PeriodAverages({cid: mean_vector(v) for cid, v in kept.items()}, excluded)


def panel_from_rows(rows: Iterable[tuple[str, int, Iterable[Optional[float]]]]) -> CountryPanel:
    """Build a panel directly from ``(country_id, year, values)`` triples."""
    records = {}
    for cid, year, values in rows:
        if (cid, year) in records:
            raise DuplicateRecordError(f"duplicate record for {cid} {year}")
        records[(cid, year)] = CountryYearRecord(cid, int(year), tuple(values))
    return CountryPanel(dict(sorted(records.items())))
