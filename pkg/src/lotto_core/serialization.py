import json

import numpy as np

SIGNIFICANT_DIGITS = 9  # enough for values to survive a CSV/JSON round trip at 1e-9 tolerances


def round_significant(value: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    return float(f"{value:.{digits}g}")


def to_jsonable(obj, digits: int = SIGNIFICANT_DIGITS):
    """Recursively convert numpy containers/scalars to plain Python, rounding floats to `digits` significant digits."""
    if isinstance(obj, dict):
        return {key: to_jsonable(value, digits) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value, digits) for value in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist(), digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_significant(float(obj), digits)
    return obj


def dumps_report(report: dict, digits: int = SIGNIFICANT_DIGITS) -> str:
    # sorted keys and fixed rounding keep repeated runs byte-identical
    return json.dumps(to_jsonable(report, digits), indent=2, sort_keys=True)
