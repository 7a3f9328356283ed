"""Molecule and logical-count tables

CSV ingest for the batch commands. Rows are validated one by one so that a
bad value is reported with its line number (the header is line 1).
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

import pandas as pd

from .cost_model import MolecularInstance
from .exceptions import ValidationError

DATA_DIR = Path(__file__).parent / "data"
SHIPPED_MOLECULES = DATA_DIR / "molecules.csv"
SHIPPED_COUNTS = DATA_DIR / "logical_counts.csv"

MOLECULE_COLUMNS = ("name", "basis", "N", "R", "M", "alpha")
COUNT_COLUMNS = ("name", "basis", "n_L", "n_T")


def _read_frame(path: Path, required: tuple[str, ...]) -> Optional[pd.DataFrame]:
    """Raw string frame, or None for an empty file"""
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        return None
    except pd.errors.ParserError as e:
        raise ValidationError(f"{path.name}: {e}") from e
    frame.columns = [c.strip() for c in frame.columns]
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise ValidationError(f"{path.name}: missing column(s) {', '.join(missing)}", line=1)
    return frame


def _number(raw: str, column: str, line: int, integer: bool) -> float:
    try:
        value = float(raw)
    except ValueError as e:
        raise ValidationError(f"{column} is not a number: '{raw}'", line=line) from e
    if not value > 0:
        raise ValidationError(f"{column} must be positive, got {raw}", line=line)
    if integer:
        if value != int(value):
            raise ValidationError(f"{column} must be an integer, got {raw}", line=line)
        return int(value)
    return value


@dataclass
class MoleculeTable:
    """Validated molecular instances with their provenance"""
    rows: list[MolecularInstance] = field(default_factory=list)
    provenance: str = ""
    notes: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[MolecularInstance]:
        return iter(self.rows)

    def get(self, name: str, basis: str) -> MolecularInstance:
        for row in self.rows:
            if row.name == name and row.basis == basis:
                return row
        raise KeyError(f"{name}/{basis} not in {self.provenance or 'table'}")

    def select(self, names: Optional[list[str]] = None, bases: Optional[list[str]] = None) -> "MoleculeTable":
        """Subset by molecule and/or basis name, original order kept"""
        rows = [
            r for r in self.rows
            if (not names or r.name in names) and (not bases or r.basis in bases)
        ]
        return MoleculeTable(rows, self.provenance, dict(self.notes), list(self.warnings))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{"name": r.name, "basis": r.basis, "N": r.N, "R": r.R, "M": r.M, "alpha": r.alpha} for r in self.rows],
            columns=list(MOLECULE_COLUMNS),
        )


def ingest(path: str | Path) -> MoleculeTable:
    """Read a molecules CSV with header name,basis,N,R,M,alpha[,note]

    Args:
        path: CSV file

    Returns:
        MoleculeTable (empty with a warning for an empty file)

    Raises:
        FileNotFoundError: path does not exist
        ValidationError: Malformed, non-positive or duplicate row (with line number)
    """
    path = Path(path)
    frame = _read_frame(path, MOLECULE_COLUMNS)
    table = MoleculeTable(provenance=str(path))
    if frame is None or frame.empty:
        table.warnings.append(f"{path.name} contains no molecule rows")
        return table

    seen = {}
    for i, record in enumerate(frame.to_dict("records")):
        line = i + 2
        name, basis = record["name"].strip(), record["basis"].strip()
        if not name or not basis:
            raise ValidationError("name and basis must be non-empty", line=line)
        key = (name, basis)
        if key in seen:
            raise ValidationError(f"duplicate entry {name}/{basis} (first on line {seen[key]})", line=line)
        seen[key] = line
        try:
            inst = MolecularInstance(
                name=name,
                basis=basis,
                N=_number(record["N"], "N", line, integer=True),
                R=_number(record["R"], "R", line, integer=True),
                M=_number(record["M"], "M", line, integer=True),
                alpha=_number(record["alpha"], "alpha", line, integer=False),
            )
        except ValidationError as e:
            if e.line is None:
                raise ValidationError(str(e), line=line) from e
            raise
        table.rows.append(inst)
        note = str(record.get("note", "") or "").strip()
        if note:
            table.notes[key] = note
    return table


def load_shipped() -> MoleculeTable:
    """The 35-row table of seven electrolyte molecules in five bases"""
    return ingest(SHIPPED_MOLECULES)


@dataclass(frozen=True)
class LogicalCounts:
    name: str
    basis: str
    n_L: int
    n_T: float


def read_counts(path: str | Path = SHIPPED_COUNTS) -> dict[tuple[str, str], LogicalCounts]:
    """Published (n_L, n_T) pairs keyed by (name, basis)

    Raises:
        FileNotFoundError: path does not exist
        ValidationError: Malformed or duplicate row (with line number)
    """
    path = Path(path)
    frame = _read_frame(path, COUNT_COLUMNS)
    counts: dict[tuple[str, str], LogicalCounts] = {}
    if frame is None:
        return counts
    for i, record in enumerate(frame.to_dict("records")):
        line = i + 2
        key = (record["name"].strip(), record["basis"].strip())
        if key in counts:
            raise ValidationError(f"duplicate entry {key[0]}/{key[1]}", line=line)
        counts[key] = LogicalCounts(
            name=key[0],
            basis=key[1],
            n_L=_number(record["n_L"], "n_L", line, integer=True),
            n_T=_number(record["n_T"], "n_T", line, integer=False),
        )
    return counts
