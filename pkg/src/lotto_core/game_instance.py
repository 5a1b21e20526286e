"""
Domain types of the restricted General Lotto game.

All per-contest vectors inside the solver live in the canonical order of the instance,
i.e. contests sorted by nonincreasing valuation (ties broken by original index).
GameInstance.to_original / to_sorted translate between canonical and caller order.
"""
from dataclasses import dataclass, replace
import json
import logging
from typing import NamedTuple

import numpy as np

from src.lotto_core.constants import NORMALIZATION_TOL
from src.lotto_core.errors import InstanceFormatError, InvalidArgumentError, NormalizationError

log = logging.getLogger(__name__)

STRICT = "strict"
NORMALIZE = "normalize"


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


class NormalizedValuations(NamedTuple):
    values: np.ndarray
    scale: float  # sum of the raw valuations (1.0 in strict mode)


def validate_or_normalize(raw_v, mode: str = STRICT) -> NormalizedValuations:
    """
    Check the raw contest valuations and bring them onto the unit total value.

    In strict mode the valuations must already sum to one (within NORMALIZATION_TOL),
    in normalize mode they are divided by their sum, which is returned as the scale factor.
    """
    if mode not in (STRICT, NORMALIZE):
        raise InvalidArgumentError(f"mode must be '{STRICT}' or '{NORMALIZE}', got {mode!r}")

    values = np.asarray(raw_v, dtype=float).reshape(-1)
    if values.size == 0:
        raise InvalidArgumentError("at least one contest valuation is required")
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        raise InvalidArgumentError(f"contest valuations must be finite and positive, got {values.tolist()}")

    total = float(values.sum())
    if mode == STRICT:
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(
                f"valuations sum to {total!r}, not 1 (use normalize mode to rescale them)"
            )
        return NormalizedValuations(values, 1.0)

    return NormalizedValuations(values / total, total)


@dataclass(frozen=True)
class SimplexVector:
    """Nonnegative vector summing to one (budget split alpha, contest-selection probabilities p)."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float).reshape(-1)
        if entries.size == 0:
            raise InvalidArgumentError("simplex vector must not be empty")
        if not np.all(np.isfinite(entries)) or np.any(entries < 0):
            raise InvalidArgumentError(f"simplex entries must be finite and nonnegative, got {entries.tolist()}")
        if abs(entries.sum() - 1.0) > NORMALIZATION_TOL:
            raise InvalidArgumentError(f"simplex entries sum to {entries.sum()!r}, not 1")
        object.__setattr__(self, "entries", _frozen_array(entries))

    @classmethod
    def coerce(cls, value) -> "SimplexVector":
        return value if isinstance(value, cls) else cls(value)

    @classmethod
    def unit(cls, index: int, size: int) -> "SimplexVector":
        entries = np.zeros(size)
        entries[index] = 1.0
        return cls(entries)

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.entries > 0)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __len__(self):
        return self.entries.size

    def __getitem__(self, index):
        return self.entries[index]

    def tolist(self) -> list:
        return self.entries.tolist()


@dataclass(frozen=True)
class Allocation:
    """Resources per contest of a single (pure) allocation."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float).reshape(-1)
        if not np.all(np.isfinite(entries)) or np.any(entries < 0):
            raise InvalidArgumentError(f"allocation entries must be finite and nonnegative, got {entries.tolist()}")
        object.__setattr__(self, "entries", _frozen_array(entries))

    @classmethod
    def coerce(cls, value) -> "Allocation":
        return value if isinstance(value, cls) else cls(value)

    @classmethod
    def single(cls, contest, amount: float, num_contests: int) -> "Allocation":
        """Allocation of the restricted player: `amount` on one contest, or nothing if contest is None."""
        entries = np.zeros(num_contests)
        if contest is not None:
            entries[contest] = amount
        return cls(entries)

    @property
    def total(self) -> float:
        return float(self.entries.sum())

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def __len__(self):
        return self.entries.size

    def __getitem__(self, index):
        return self.entries[index]

    def tolist(self) -> list:
        return self.entries.tolist()


@dataclass(frozen=True)
class GameInstance:
    """
    Budgets X, Y and the normalized valuation vector v.

    v is stored sorted in nonincreasing order; order[i] is the caller's index of canonical contest i.
    scale is the total raw value that was divided out in normalize mode.
    """

    X: float
    Y: float
    v: np.ndarray
    order: np.ndarray
    scale: float = 1.0

    def __post_init__(self):
        for name in ("X", "Y"):
            budget = float(getattr(self, name))
            if not np.isfinite(budget) or budget <= 0:
                raise InvalidArgumentError(f"budget {name} must be positive, got {budget!r}")
            object.__setattr__(self, name, budget)

        v = np.asarray(self.v, dtype=float).reshape(-1)
        order = np.asarray(self.order, dtype=np.int64).reshape(-1)
        if v.size == 0 or np.any(v <= 0):
            raise InvalidArgumentError("contest valuations must be positive")
        if abs(v.sum() - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(f"valuations sum to {v.sum()!r}, not 1")
        if np.any(np.diff(v) > 0):
            raise InvalidArgumentError("valuations must be stored in nonincreasing order")
        if order.size != v.size or not np.array_equal(np.sort(order), np.arange(v.size)):
            raise InvalidArgumentError("order must be a permutation of the contest indices")

        object.__setattr__(self, "v", _frozen_array(v))
        object.__setattr__(self, "order", _frozen_array(order, dtype=np.int64))

    @classmethod
    def from_valuations(cls, X: float, Y: float, raw_v, mode: str = STRICT) -> "GameInstance":
        values, scale = validate_or_normalize(raw_v, mode)

        # stable sort keeps ties in original index order
        order = np.argsort(-values, kind="stable")
        instance = cls(X=X, Y=Y, v=values[order], order=order, scale=scale)

        if instance.has_ties:
            log.warning(
                "Contest valuations are not distinct; ties are broken by original index."
            )
        return instance

    @property
    def C(self) -> int:
        return int(self.v.size)

    @property
    def has_ties(self) -> bool:
        return bool(np.any(np.isclose(np.diff(self.v), 0.0, atol=1e-15)))

    @property
    def budget_ratio(self) -> float:
        """Y / X, the only way the budgets enter the classic value."""
        return self.Y / self.X

    def with_budgets(self, X: float = None, Y: float = None) -> "GameInstance":
        return replace(self, X=self.X if X is None else X, Y=self.Y if Y is None else Y)

    def to_original(self, sorted_values) -> np.ndarray:
        """Per-contest vector in canonical order -> caller order."""
        sorted_values = np.asarray(sorted_values)
        original = np.empty_like(sorted_values)
        original[self.order] = sorted_values
        return original

    def to_sorted(self, original_values) -> np.ndarray:
        """Per-contest vector in caller order -> canonical order."""
        return np.asarray(original_values)[self.order]

    def original_indices(self, sorted_indices) -> list:
        return [int(self.order[i]) for i in sorted_indices]

    def to_dict(self) -> dict:
        return {"X": self.X, "Y": self.Y, "v": self.to_original(self.v).tolist()}


def load_instance(path: str, mode: str = STRICT) -> GameInstance:
    """
    Read an instance file of the form {"X": number, "Y": number, "v": [numbers]}.

    File and format problems raise InstanceFormatError, bad values raise InvalidArgumentError.
    """
    try:
        with open(path) as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise InstanceFormatError(f"could not read instance file {path}: {e}") from e

    if not isinstance(raw, dict) or not {"X", "Y", "v"} <= raw.keys():
        raise InstanceFormatError(f"instance file {path} must be an object with keys X, Y and v")
    if not isinstance(raw["v"], list):
        raise InstanceFormatError(f"'v' in {path} must be a list of numbers")

    try:
        X, Y = float(raw["X"]), float(raw["Y"])
        raw_v = [float(value) for value in raw["v"]]
    except (TypeError, ValueError) as e:
        raise InstanceFormatError(f"non-numeric entry in instance file {path}: {e}") from e

    return GameInstance.from_valuations(X, Y, raw_v, mode)
