"""
Bound objectives for the game where Y attacks exactly K contests.

Any feasible point of either objective is a valid bound: eval_lower_K bounds the max-min value from below,
eval_upper_K bounds the min-max value from above. Subsets are enumerated once, in lexicographic order over
the canonical (sorted) contests, and stored as a 0/1 membership matrix.
"""
from dataclasses import dataclass, field
import itertools
import logging

import numpy as np

from src.lotto_core.constants import ALPHA_CLIP, MAX_CONTESTS_FOR_SUBSETS
from src.lotto_core.errors import InvalidArgumentError, UnsupportedSizeError
from src.lotto_core.game_instance import GameInstance, SimplexVector

log = logging.getLogger(__name__)


def enumerate_subsets(num_contests: int, K: int):
    """Size-K subsets of range(num_contests) in lexicographic order, with their membership matrix."""
    if not 1 <= K <= num_contests:
        raise InvalidArgumentError(f"K must lie in 1..{num_contests}, got {K}")
    if K >= 2 and num_contests > MAX_CONTESTS_FOR_SUBSETS:
        raise UnsupportedSizeError(
            f"subset enumeration for K >= 2 supports at most {MAX_CONTESTS_FOR_SUBSETS} contests, got {num_contests}"
        )

    subsets = list(itertools.combinations(range(num_contests), K))
    membership = np.zeros((len(subsets), num_contests))
    for row, subset in enumerate(subsets):
        membership[row, list(subset)] = 1.0
    return subsets, membership


def _subset_key(subset, inst: GameInstance) -> str:
    return ",".join(str(c) for c in sorted(inst.original_indices(subset)))


@dataclass(frozen=True)
class KLowerVars:
    alpha: SimplexVector
    delta: float
    K: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", SimplexVector.coerce(self.alpha))
        if not 0 <= self.delta <= 1:
            raise InvalidArgumentError(f"delta must lie in [0, 1], got {self.delta}")
        if self.K < 1 or self.K > len(self.alpha):
            raise InvalidArgumentError(f"K must lie in 1..{len(self.alpha)}, got {self.K}")
        object.__setattr__(self, "delta", float(self.delta))

    def to_dict(self, inst: GameInstance) -> dict:
        return {"alpha": inst.to_original(np.asarray(self.alpha)).tolist(), "delta": self.delta}


@dataclass(frozen=True)
class KUpperVars:
    """
    Weights p over the size-K subsets and, per subset, a split beta over its members.

    p has one entry per subset in `subsets` order; beta has shape (len(subsets), C) with zeros outside each subset.
    """

    p: np.ndarray
    beta: np.ndarray
    K: int
    subsets: list = field(default_factory=list)

    def __post_init__(self):
        p = np.array(self.p, dtype=float).reshape(-1)
        beta = np.atleast_2d(np.array(self.beta, dtype=float))
        subsets = [tuple(s) for s in self.subsets]
        if not subsets:
            raise InvalidArgumentError("subsets must not be empty")
        num_contests = beta.shape[1]
        if p.size != len(subsets) or beta.shape[0] != len(subsets):
            raise InvalidArgumentError(f"p and beta must have one row per subset ({len(subsets)})")
        if any(len(s) != self.K for s in subsets):
            raise InvalidArgumentError(f"every subset must have exactly K = {self.K} contests")
        if np.any(p < 0) or abs(p.sum() - 1) > 1e-9:
            raise InvalidArgumentError("subset weights p must be nonnegative and sum to 1")

        membership = np.zeros_like(beta)
        for row, subset in enumerate(subsets):
            membership[row, list(subset)] = 1.0
        if np.any(beta < 0) or np.any(beta[membership == 0] != 0):
            raise InvalidArgumentError("beta must be nonnegative and vanish outside its subset")
        if np.any(np.abs(beta.sum(axis=1) - 1) > 1e-9):
            raise InvalidArgumentError("beta must sum to 1 over each subset")
        if num_contests < self.K:
            raise InvalidArgumentError(f"K = {self.K} exceeds the number of contests {num_contests}")

        p.setflags(write=False)
        beta.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "subsets", subsets)

    @classmethod
    def uniform(cls, num_contests: int, K: int) -> "KUpperVars":
        subsets, membership = enumerate_subsets(num_contests, K)
        return cls(p=np.full(len(subsets), 1 / len(subsets)), beta=membership / K, K=K, subsets=subsets)

    @classmethod
    def singletons(cls, p) -> "KUpperVars":
        """K = 1 vars with subset weights given by a per-contest vector p."""
        p = np.asarray(SimplexVector.coerce(p))
        return cls(p=p, beta=np.eye(p.size), K=1, subsets=[(c,) for c in range(p.size)])

    @property
    def p_by_subset(self) -> dict:
        return {subset: float(weight) for subset, weight in zip(self.subsets, self.p)}

    def to_dict(self, inst: GameInstance) -> dict:
        p_by_subset, beta = {}, {}
        for row, subset in enumerate(self.subsets):
            key = _subset_key(subset, inst)
            p_by_subset[key] = float(self.p[row])
            beta[key] = {str(inst.order[c]): float(self.beta[row, c]) for c in subset}
        return {"p_by_subset": p_by_subset, "beta": beta}


def lower_K_value(alpha: np.ndarray, delta: float, membership: np.ndarray, inst: GameInstance) -> float:
    """1 - max_S [v_S (1 - delta) + delta^2 (Y / 2X) max_{c in S} v_c / alpha_c] on raw arrays."""
    ratios = inst.v / np.maximum(alpha, ALPHA_CLIP)
    subset_values = membership @ inst.v
    subset_ratios = np.max(np.where(membership > 0, ratios[None, :], 0.0), axis=1)
    spread = delta**2 * inst.Y / (2 * inst.X) * subset_ratios if delta > 0 else 0.0
    return float(1 - np.max(subset_values * (1 - delta) + spread))


def upper_K_value(p: np.ndarray, beta: np.ndarray, membership: np.ndarray, inst: GameInstance) -> float:
    """
    T1 = sum_c v_c sum_{S containing c} p_S and T2 = (X / 2Y) max_c v_c sum_{S containing c} p_S / beta_{S,c};
    returns 1 - T1^2 / 4 T2 if T1 <= 2 T2, else 1 - T1 + T2.
    """
    active = (p[:, None] > 0) & (membership > 0)
    if np.any(active & (beta <= 0)):
        log.warning("beta vanishes on an attacked subset member; reporting the vacuous upper bound 1")
        return 1.0

    t1 = float(inst.v @ (membership.T @ p))
    weights = np.where(active, p[:, None] / np.where(active, beta, 1.0), 0.0)
    t2 = float(inst.X / (2 * inst.Y) * np.max(inst.v * weights.sum(axis=0)))

    if t1 <= 2 * t2:
        return 1 - t1**2 / (4 * t2)
    return 1 - t1 + t2


def eval_lower_K(point: KLowerVars, inst: GameInstance) -> float:
    if len(point.alpha) != inst.C:
        raise InvalidArgumentError(f"alpha must have {inst.C} entries, got {len(point.alpha)}")
    _, membership = enumerate_subsets(inst.C, point.K)
    return lower_K_value(np.asarray(point.alpha), point.delta, membership, inst)


def eval_upper_K(point: KUpperVars, inst: GameInstance) -> float:
    if point.beta.shape[1] != inst.C:
        raise InvalidArgumentError(f"beta must have {inst.C} columns, got {point.beta.shape[1]}")
    membership = (np.asarray([[c in subset for c in range(inst.C)] for subset in point.subsets])).astype(float)
    return upper_K_value(point.p, point.beta, membership, inst)
