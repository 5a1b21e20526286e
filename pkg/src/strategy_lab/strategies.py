"""
The two parameterized strategy families and their samplers.

XHatStrategy: on every contest c, X allocates nothing with probability 1 - delta_c and otherwise a
Uniform[0, 2 alpha_c X / delta_c] amount, so the mean allocation to c is alpha_c X. Contests are
sampled independently; against single-contest opponents only the marginals matter.

YHatStrategy: with probability 1 - delta_y, Y allocates nothing; otherwise it picks one contest c ~ p and
allocates a Uniform[0, 2Y / delta_y] amount to it, so its mean total allocation is Y.
"""
from dataclasses import dataclass

import numpy as np

from src.lotto_core.errors import InvalidArgumentError
from src.lotto_core.game_instance import Allocation, GameInstance, SimplexVector


def as_generator(rng) -> np.random.Generator:
    """Accept an existing Generator or a seed; seeds map onto the counter-based Philox bit generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(rng)))


def optimal_deltas_X(alpha, inst: GameInstance) -> np.ndarray:
    """Participation probabilities maximizing X's guarantee for a given split: min(alpha_c X / Y, 1)."""
    alpha = np.asarray(SimplexVector.coerce(alpha))
    return np.minimum(alpha * inst.X / inst.Y, 1.0)


def optimal_delta_Y(p, inst: GameInstance) -> float:
    """Participation probability minimizing X's best payoff for a given selection: min((v.p / max v_c p_c) Y / X, 1)."""
    p = np.asarray(SimplexVector.coerce(p))
    return float(min((inst.v @ p) / np.max(inst.v * p) * inst.Y / inst.X, 1.0))


def eval_T_LB(delta, alpha, inst: GameInstance) -> float:
    """
    X's guarantee against single-contest attacks for a split alpha and participation probabilities delta,
    before optimizing delta: 1 - max_c v_c (1 - delta_c + delta_c^2 Y / (2 alpha_c X)).
    """
    delta = np.asarray(delta, dtype=float)
    alpha = np.asarray(SimplexVector.coerce(alpha))
    if np.any((alpha == 0) & (delta > 0)):
        return -np.inf

    with np.errstate(divide="ignore", invalid="ignore"):
        spread = np.where(alpha > 0, delta**2 * inst.Y / (2 * np.where(alpha > 0, alpha, 1.0) * inst.X), 0.0)
    return float(1 - np.max(inst.v * (1 - delta + spread)))


@dataclass(frozen=True)
class XHatStrategy:
    alpha: SimplexVector
    delta: np.ndarray
    inst: GameInstance

    def __post_init__(self):
        alpha = SimplexVector.coerce(self.alpha)
        delta = np.array(self.delta, dtype=float).reshape(-1)
        if alpha.entries.size != self.inst.C or delta.size != self.inst.C:
            raise InvalidArgumentError(f"alpha and delta must have {self.inst.C} entries")
        if np.any(delta < 0) or np.any(delta > 1):
            raise InvalidArgumentError(f"participation probabilities must lie in [0, 1], got {delta.tolist()}")
        if np.any((alpha.entries == 0) & (delta > 0)):
            raise InvalidArgumentError("a contest with alpha_c = 0 must have delta_c = 0")

        delta.setflags(write=False)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "delta", delta)

    @classmethod
    def optimal(cls, alpha, inst: GameInstance) -> "XHatStrategy":
        return cls(alpha=SimplexVector.coerce(alpha), delta=optimal_deltas_X(alpha, inst), inst=inst)

    @property
    def caps(self) -> np.ndarray:
        """Upper end 2 alpha_c X / delta_c of each uniform part (0 where X never participates)."""
        participating = self.delta > 0
        safe_delta = np.where(participating, self.delta, 1.0)
        return np.where(participating, 2 * self.alpha.entries * self.inst.X / safe_delta, 0.0)

    @property
    def mean_allocation(self) -> np.ndarray:
        # only contests where X participates carry their alpha_c X share
        return np.where(self.delta > 0, self.alpha.entries * self.inst.X, 0.0)

    def marginal_cdf(self, c: int, u) -> np.ndarray:
        """F_{X,c}(u) = 1 - delta_c + delta_c min(delta_c u / (2 alpha_c X), 1) for u >= 0."""
        u = np.asarray(u, dtype=float)
        if self.delta[c] == 0:
            return np.where(u >= 0, 1.0, 0.0)
        cdf = 1 - self.delta[c] + self.delta[c] * np.minimum(u / self.caps[c], 1.0)
        return np.where(u >= 0, cdf, 0.0)

    def sample_batch(self, n: int, rng) -> np.ndarray:
        """n independent allocations, shape (n, C); non-participation emits an exact 0.0."""
        rng = as_generator(rng)
        participates = rng.random((n, self.inst.C)) < self.delta
        amounts = rng.random((n, self.inst.C)) * self.caps
        return np.where(participates, amounts, 0.0)


@dataclass(frozen=True)
class YHatStrategy:
    p: SimplexVector
    delta_y: float
    inst: GameInstance

    def __post_init__(self):
        p = SimplexVector.coerce(self.p)
        if p.entries.size != self.inst.C:
            raise InvalidArgumentError(f"p must have {self.inst.C} entries, got {p.entries.size}")
        if not 0 <= self.delta_y <= 1:
            raise InvalidArgumentError(f"delta_y must lie in [0, 1], got {self.delta_y}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "delta_y", float(self.delta_y))

    @classmethod
    def optimal(cls, p, inst: GameInstance) -> "YHatStrategy":
        return cls(p=SimplexVector.coerce(p), delta_y=optimal_delta_Y(p, inst), inst=inst)

    @property
    def cap(self) -> float:
        """Upper end 2Y / delta_y of the attack amount (0 when Y never participates)."""
        return 2 * self.inst.Y / self.delta_y if self.delta_y > 0 else 0.0

    def sample_batch(self, n: int, rng):
        """
        n independent draws as (contests, amounts); contest -1 marks the all-zero allocation.

        The draw order (participation, contest, amount) is fixed so seeded streams are reproducible.
        """
        rng = as_generator(rng)
        participates = rng.random(n) < self.delta_y
        cumulative = np.cumsum(self.p.entries)
        contests = np.searchsorted(cumulative, rng.random(n) * cumulative[-1], side="right")
        contests = np.minimum(contests, self.inst.C - 1)
        amounts = rng.random(n) * self.cap

        contests = np.where(participates, contests, -1)
        amounts = np.where(participates, amounts, 0.0)
        return contests, amounts


def sample_X(strat: XHatStrategy, rng) -> Allocation:
    return Allocation(strat.sample_batch(1, rng)[0])


def sample_Y(strat: YHatStrategy, rng):
    """One draw as (contest index or None, amount)."""
    contests, amounts = strat.sample_batch(1, rng)
    if contests[0] < 0:
        return None, 0.0
    return int(contests[0]), float(amounts[0])


def marginal_ks_distance(samples, strat: XHatStrategy, c: int) -> float:
    """
    Kolmogorov-Smirnov distance between the empirical CDF of contest-c samples and F_{X,c}.

    The marginal has an atom at zero, so both one-sided limits are compared at every distinct sample value.
    """
    samples = np.sort(np.asarray(samples, dtype=float))
    values, counts = np.unique(samples, return_counts=True)
    ecdf_right = np.cumsum(counts) / samples.size
    ecdf_left = np.r_[0.0, ecdf_right[:-1]]

    cdf_right = strat.marginal_cdf(c, values)
    # F is continuous except at 0, where its left limit is 0
    cdf_left = np.where(values > 0, cdf_right, 0.0)

    return float(max(np.max(np.abs(ecdf_right - cdf_right)), np.max(np.abs(ecdf_left - cdf_left))))
