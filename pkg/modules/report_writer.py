"""CSV, aligned-table and plot-data output for the batch commands"""

from pathlib import Path
from typing import Iterable, Optional

import pandas as pd

from .cost_model import CostReport
from .exceptions import ValidationError
from .ft_overhead import FtReport, TradeoffPoint
from .utils import format_sig

ESTIMATE_COLUMNS = (
    "name", "basis", "N", "R", "M", "alpha", "objective", "eps_Q", "eps_P",
    "beta", "lambda_rot", "n_T", "D_T", "n_L", "V_n", "V_D",
)
OVERHEAD_COLUMNS = (
    "name", "basis", "regime", "A", "B", "eps_total", "d", "n_L", "n_T", "L_intl",
    "n_distill", "n_RSG", "n_cycles", "t_algo_hours", "msd_ratio",
)
CURVE_COLUMNS = ("name", "basis", "regime", "L_intl", "n_RSG", "t_algo_hours")

FORMATS = ("csv", "table", "plotdata")

_KINDS = {
    "estimate": ESTIMATE_COLUMNS,
    "overhead": OVERHEAD_COLUMNS,
    "curve": CURVE_COLUMNS,
}

# Columns written as 3-significant-digit strings
_SIG_COLUMNS = ("t_algo_hours",)


def estimate_frame(reports: Iterable[CostReport]) -> pd.DataFrame:
    return pd.DataFrame([r.as_row() for r in reports], columns=list(ESTIMATE_COLUMNS))


def overhead_row(name: str, basis: str, report: FtReport) -> dict:
    return {
        "name": name,
        "basis": basis,
        "regime": report.regime.label,
        "A": report.regime.A,
        "B": report.regime.B,
        "eps_total": report.eps_total,
        "d": report.d,
        "n_L": report.n_L,
        "n_T": report.n_T,
        "L_intl": report.interleave,
        "n_distill": int(report.n_distill),
        "n_RSG": report.n_rsg,
        "n_cycles": report.n_cycles,
        "t_algo_hours": format_sig(report.t_algo_hours),
        "msd_ratio": round(report.msd_ratio, 6),
    }


def overhead_frame(rows: Iterable[dict]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=list(OVERHEAD_COLUMNS))


def curve_frame(name: str, basis: str, regime: str, points: Iterable[TradeoffPoint]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "name": name,
                "basis": basis,
                "regime": regime,
                "L_intl": p.interleave,
                "n_RSG": p.n_rsg,
                "t_algo_hours": format_sig(p.t_algo / 3600.0),
            }
            for p in points
        ],
        columns=list(CURVE_COLUMNS),
    )


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    """Write a report frame; the same frame always gives the same bytes"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def detect_kind(columns: Iterable[str]) -> str:
    """Report kind from a header

    Raises:
        ValidationError: The header matches no known report
    """
    columns = tuple(c.strip() for c in columns)
    for kind, expected in _KINDS.items():
        if columns == expected:
            return kind
    raise ValidationError(f"unrecognized report header: {','.join(columns)}", line=1)


def read_report(path: str | Path) -> tuple[str, pd.DataFrame]:
    """Read back an estimate, overhead or curve CSV

    Returns:
        Tuple of (kind, frame); significant-digit columns stay strings

    Raises:
        FileNotFoundError: path does not exist
        ValidationError: Empty file or unknown header
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    try:
        frame = pd.read_csv(path, dtype={c: str for c in _SIG_COLUMNS + ("name", "basis")}, keep_default_na=False)
    except pd.errors.EmptyDataError as e:
        raise ValidationError(f"{path.name} is empty", line=1) from e
    return detect_kind(frame.columns), frame


def format_table(frame: pd.DataFrame, kind: Optional[str] = None) -> str:
    """Aligned plain-text table

    Estimate tables get an extra n_T/D_T column for the count-vs-depth comparison.
    """
    view = frame.copy()
    if kind == "estimate" and len(view):
        view["n_T/D_T"] = (view["n_T"] / view["D_T"]).map(lambda v: f"{v:.2f}")
    for column in ("n_T", "D_T", "V_n", "V_D", "n_RSG", "n_cycles"):
        if column in view.columns:
            view[column] = view[column].map(lambda v: format_sig(float(v)))
    if view.empty:
        return "(no rows)"
    return view.to_string(index=False)


def plot_data(frame: pd.DataFrame, kind: str) -> str:
    """Whitespace-separated columns with a '#' header line, one row per point

    Overhead and curve reports give (L_intl, n_RSG, t_hours) triples;
    estimate reports give (n_L, n_T, D_T).
    """
    if kind == "estimate":
        columns = ["name", "basis", "n_L", "n_T", "D_T"]
    elif kind in ("overhead", "curve"):
        columns = ["name", "basis", "regime", "L_intl", "n_RSG", "t_algo_hours"]
    else:
        raise ValidationError(f"unknown report kind '{kind}'")
    lines = ["# " + " ".join(columns)]
    for record in frame[columns].itertuples(index=False):
        lines.append(" ".join(str(v) for v in record))
    return "\n".join(lines) + "\n"


def render(frame: pd.DataFrame, kind: str, fmt: str) -> str:
    """Render a report frame as csv, table or plotdata"""
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    if fmt == "table":
        return format_table(frame, kind) + "\n"
    if fmt == "plotdata":
        return plot_data(frame, kind)
    raise ValidationError(f"unknown format '{fmt}' (use {', '.join(FORMATS)})")
