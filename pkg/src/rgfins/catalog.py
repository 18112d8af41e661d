"""A JSON Lines store of classification results, and the size-3 sweep.

Each line is one record in canonical JSON (sorted keys). Records are keyed by
``(basis, encoding, mode)`` and a later line with the same key wins, so the
file is only ever appended to. Record fields:

    basis        canonical basis text, e.g. "121 221"
    encoding     "horizontal" or "vertical"
    mode         "rgf" or "matching"
    verdict      "Regular", "Irregular" or "Undecided"
    witnesses    family -> witness pattern or null
    search_bound m_max used for alternation searches (vertical only)
    slot_bound   largest slot count of the automaton, when one was built
    gf           "num_coeffs=[..]; den_coeffs=[..]" or null
    counts       class sizes 0..order, or null
    version      package version that wrote the record
    timestamp    UTC ISO-8601 time of writing
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator

from . import __version__
from .core import Basis, generate_cayley
from .errors import CorruptRecord, InvalidInput
from .regularity import DEFAULT_M_MAX, REGULAR, UNDECIDED, classify

STORE_ENV = "RGFINS_STORE"
DEFAULT_STORE = "rgfins-catalog.jsonl"
ENCODINGS = ("vertical", "horizontal")


def default_store_path() -> str:
    return os.environ.get(STORE_ENV, DEFAULT_STORE)


@dataclass
class CatalogRecord:
    basis: str
    encoding: str
    mode: str
    verdict: str
    witnesses: dict = field(default_factory=dict)
    search_bound: int | None = None
    slot_bound: int | None = None
    gf: str | None = None
    counts: list[int] | None = None
    version: str = __version__
    timestamp: str = ""

    def __post_init__(self):
        self.basis = Basis(self.basis).text()
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.basis, self.encoding, self.mode)

    @property
    def basis_size(self) -> int:
        return len(Basis(self.basis))

    def consistent(self) -> bool:
        """Counts agree with the series of the generating function, when both are present."""
        if self.gf is None or self.counts is None:
            return True
        from .genfunc import RationalGF

        return RationalGF.parse(self.gf).series(len(self.counts) - 1) == self.counts

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> CatalogRecord:
        known = {f for f in cls.__dataclass_fields__}
        missing = {"basis", "encoding", "mode", "verdict"} - data.keys()
        if missing:
            raise ValueError(f"missing fields {sorted(missing)}")
        return cls(**{k: v for k, v in data.items() if k in known})

    @classmethod
    def from_report(cls, report, **extra) -> CatalogRecord:
        return cls(
            basis=report.basis,
            encoding=report.encoding,
            mode=report.mode,
            verdict=report.verdict,
            witnesses=report.witnesses,
            search_bound=report.search_bound,
            **extra,
        )


def record_key(basis, encoding: str, mode: str = "rgf") -> tuple[str, str, str]:
    return (Basis(basis).text(), encoding, mode)


class Store:
    """Append-only JSONL file with last-write-wins reads.

    A line that does not parse raises CorruptRecord with its line number,
    unless ``lenient`` is set, in which case it is skipped and listed in
    ``skipped``.
    """

    def __init__(self, path: str | os.PathLike, lenient: bool = False):
        self.path = os.fspath(path)
        self.lenient = lenient
        self.skipped: list[CorruptRecord] = []

    def put(self, record: CatalogRecord) -> None:
        self.put_many([record])

    def put_many(self, records: Iterable[CatalogRecord]) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            for record in records:
                fh.write(record.to_json() + "\n")

    def records(self) -> dict[tuple[str, str, str], CatalogRecord]:
        out: dict = {}
        self.skipped = []
        if not os.path.exists(self.path):
            return out
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = CatalogRecord.from_dict(json.loads(line))
                except (ValueError, TypeError, InvalidInput) as exc:
                    err = CorruptRecord(lineno, str(exc))
                    if not self.lenient:
                        raise err from exc
                    self.skipped.append(err)
                    continue
                out[record.key] = record
        return out

    def get(self, key: tuple[str, str, str]) -> CatalogRecord | None:
        basis, encoding, mode = key
        return self.records().get(record_key(basis, encoding, mode))

    def scan(
        self,
        predicate: Callable[[CatalogRecord], bool] | None = None,
        *,
        basis_size: int | None = None,
        **fields,
    ) -> Iterator[CatalogRecord]:
        """Records matching every ``field=value`` pair, ``basis_size`` and ``predicate``."""
        for record in self.records().values():
            if any(getattr(record, k) != v for k, v in fields.items()):
                continue
            if basis_size is not None and record.basis_size != basis_size:
                continue
            if predicate is not None and not predicate(record):
                continue
            yield record

    def __len__(self) -> int:
        return len(self.records())


@dataclass
class TableRow:
    basis_size: int | str
    classes: int = 0
    vertical: int = 0
    horizontal: int = 0
    either: int = 0
    undecided: int = 0

    def cells(self) -> list:
        return [self.basis_size, self.classes, self.vertical, self.horizontal, self.either, self.undecided]


@dataclass
class SweepTable:
    rows: list[TableRow]
    classified: int = 0

    HEADER = ("basis_size", "classes", "vertical", "horizontal", "either", "undecided")

    def total(self) -> TableRow:
        out = TableRow("total")
        for row in self.rows:
            out.classes += row.classes
            out.vertical += row.vertical
            out.horizontal += row.horizontal
            out.either += row.either
            out.undecided += row.undecided
        return out

    def row(self, basis_size: int) -> TableRow:
        return next(r for r in self.rows if r.basis_size == basis_size)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.HEADER)
        for row in self.rows + [self.total()]:
            writer.writerow(row.cells())
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [self.HEADER] + [tuple(map(str, r.cells())) for r in self.rows + [self.total()]]
        widths = [max(len(line[k]) for line in lines) for k in range(len(self.HEADER))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in lines) + "\n"


def sweep_bases(pattern_size: int, basis_sizes: Iterable[int]) -> Iterator[tuple[int, Basis]]:
    patterns = list(generate_cayley(pattern_size))
    for size in basis_sizes:
        for combo in itertools.combinations(patterns, size):
            yield size, Basis(combo)


def _classify_basis(args) -> list[CatalogRecord]:
    basis_text, encodings, m_max = args
    return [CatalogRecord.from_report(classify(basis_text, enc, "rgf", m_max)) for enc in encodings]


def sweep_table(
    store: Store,
    pattern_size: int = 3,
    basis_sizes: Iterable[int] = range(1, 6),
    encodings: Iterable[str] = ENCODINGS,
    m_max: int = DEFAULT_M_MAX,
    jobs: int = 1,
) -> SweepTable:
    """Classify every basis of ``pattern_size`` patterns and tabulate regular classes.

    Keys already in ``store`` are not recomputed. Workers only classify; this
    process is the single writer.
    """
    basis_sizes = list(basis_sizes)
    encodings = tuple(encodings)
    for enc in encodings:
        if enc not in ENCODINGS:
            raise InvalidInput(f"unknown encoding {enc!r}")
    bases = list(sweep_bases(pattern_size, basis_sizes))
    known = store.records()
    todo = []
    for _, basis in bases:
        missing = tuple(e for e in encodings if (basis.text(), e, "rgf") not in known)
        if missing:
            todo.append((basis.text(), missing, m_max))

    classified = 0
    if todo:
        if jobs > 1:
            with Pool(jobs) as pool:
                for records in pool.imap(_classify_basis, todo, chunksize=64):
                    store.put_many(records)
                    classified += len(records)
        else:
            for args in todo:
                records = _classify_basis(args)
                store.put_many(records)
                classified += len(records)
        known = store.records()

    rows = {size: TableRow(size) for size in basis_sizes}
    for size, basis in bases:
        row = rows[size]
        row.classes += 1
        verdicts = {e: known[(basis.text(), e, "rgf")].verdict for e in encodings}
        row.vertical += verdicts.get("vertical") == REGULAR
        row.horizontal += verdicts.get("horizontal") == REGULAR
        row.either += REGULAR in verdicts.values()
        row.undecided += UNDECIDED in verdicts.values()
    return SweepTable([rows[s] for s in basis_sizes], classified)
