"""
Bounds traced over a range of Y at fixed X and valuations, one row per Y.

Columns, in order: Y, gl, lb, ub, gap, k_star, alpha_1..alpha_C, p_1..p_C and, per requested K,
lower_K<K>, upper_K<K>. Contest columns follow the caller's contest order.
"""
import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.lotto_core.constants import BOUND_TOL
from src.lotto_core.errors import InvalidArgumentError
from src.lotto_core.game_instance import GameInstance
from src.lotto_core.serialization import SIGNIFICANT_DIGITS
from src.multi_bounds.optimizer import optimize_lower_K, optimize_upper_K
from src.single_bounds.bounds_report import compute_bounds

log = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = f"%.{SIGNIFICANT_DIGITS}g"


def parse_y_range(text: str):
    """'lo:hi:step' -> (lo, hi, step) with lo > 0, step > 0 and hi >= lo."""
    try:
        lo, hi, step = (float(part) for part in text.split(":"))
    except ValueError as e:
        raise InvalidArgumentError(f"Y range must look like lo:hi:step, got {text!r}") from e
    if lo <= 0 or step <= 0 or hi < lo:
        raise InvalidArgumentError(f"Y range needs lo > 0, step > 0 and hi >= lo, got {text!r}")
    return lo, hi, step


def y_values(lo: float, hi: float, step: float) -> np.ndarray:
    # lo + i * step avoids accumulating rounding errors
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def sweep_columns(num_contests: int, ks=()) -> list:
    columns = ["Y", "gl", "lb", "ub", "gap", "k_star"]
    columns += [f"alpha_{c + 1}" for c in range(num_contests)]
    columns += [f"p_{c + 1}" for c in range(num_contests)]
    for K in ks:
        columns += [f"lower_K{K}", f"upper_K{K}"]
    return columns


def sweep_frame(
    inst: GameInstance, lo: float, hi: float, step: float, ks=(), restarts: int = 50, seed: int = 0,
    show_progress: bool = False,
) -> pd.DataFrame:
    rows = []
    for Y in tqdm(y_values(lo, hi, step), disable=not show_progress):
        point = inst.with_budgets(Y=float(Y))
        report = compute_bounds(point)

        row = [point.Y, report.gl, report.lb, report.ub, report.gap, report.k_star]
        row += list(report.alpha_star) + list(report.p_star)
        for K in ks:
            lower, _ = optimize_lower_K(point, K, restarts=restarts, seed=seed)
            upper, _ = optimize_upper_K(point, K, restarts=restarts, seed=seed)
            row += [lower, upper]
        rows.append(row)

    frame = pd.DataFrame(rows, columns=sweep_columns(inst.C, ks))
    frame["k_star"] = frame["k_star"].astype(int)
    return frame


def validate_sweep_frame(frame: pd.DataFrame, tol: float = BOUND_TOL) -> list:
    """
    Check lb <= ub, lb >= gl and gap = ub - lb on every row, plus lower_K <= upper_K per K.

    Violations are logged as warnings and returned. Frames re-read from CSV carry 9 significant digits,
    so pass a tolerance of about 1e-8 for them.
    """
    violations = []

    def check(mask, message):
        for Y in frame.loc[mask, "Y"]:
            violations.append(f"Y={Y:g}: {message}")

    check(frame["lb"] > frame["ub"] + tol, "lb exceeds ub")
    check(frame["lb"] < frame["gl"] - tol, "lb below the classic value")
    check((frame["gap"] - (frame["ub"] - frame["lb"])).abs() > tol, "gap differs from ub - lb")
    for column in frame.columns:
        if column.startswith("lower_K"):
            K = column[len("lower_K"):]
            check(frame[column] > frame[f"upper_K{K}"] + tol, f"lower_K{K} exceeds upper_K{K}")

    for violation in violations:
        log.warning(f"Sweep invariant violated at {violation}")
    return violations


def write_sweep_csv(frame: pd.DataFrame, path: str) -> None:
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT)
