"""Render a sweep CSV as an SVG line plot, Y on the abscissa and one line per bound series."""
import logging

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from src.lotto_cli.run_configurations import PLOT_DPI, PLOT_SIZE_INCHES  # noqa: E402
from src.lotto_core.errors import InstanceFormatError  # noqa: E402

log = logging.getLogger(__name__)

PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"]
BASE_SERIES = ["gl", "lb", "ub"]


def series_names(frame: pd.DataFrame) -> list:
    extra = [column for column in frame.columns if column.startswith(("lower_K", "upper_K"))]
    return [name for name in BASE_SERIES if name in frame.columns] + extra


def plot_sweep(frame: pd.DataFrame, out_path: str) -> list:
    """
    Save the plot to out_path. Each line is emitted as an SVG group with id "series_<name>".

    Returns the plotted series names.
    """
    if "Y" not in frame.columns:
        raise InstanceFormatError("sweep table has no Y column")
    names = series_names(frame)
    if not names:
        raise InstanceFormatError("sweep table has none of the gl, lb, ub, lower_K, upper_K columns")

    fig, ax = plt.subplots(figsize=PLOT_SIZE_INCHES, dpi=PLOT_DPI)
    for i, name in enumerate(names):
        (line,) = ax.plot(frame["Y"], frame[name], color=PALETTE[i % len(PALETTE)], label=name)
        line.set_gid(f"series_{name}")

    ax.set_xlabel("Y")
    ax.set_ylabel("payoff to X")
    ax.grid(True)
    ax.legend()
    fig.savefig(out_path, format="svg")
    plt.close(fig)

    log.info(f"Plotted {len(names)} series to {out_path}")
    return names


def plot_sweep_csv(in_path: str, out_path: str) -> list:
    try:
        frame = pd.read_csv(in_path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise InstanceFormatError(f"could not read sweep table {in_path}: {e}") from e
    return plot_sweep(frame, out_path)
