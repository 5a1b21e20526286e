"""
Seeded Monte Carlo estimate of the payoff of an X-hat / Y-hat pair.

Samples are drawn in fixed-size blocks. Block b always draws from the Philox stream keyed by
SeedSequence(seed, spawn_key=(b,)), so the estimate depends only on (seed, n) and never on how
blocks are spread across worker processes.
"""
from dataclasses import dataclass
from functools import partial
import logging
import multiprocessing as mp

import numpy as np

from src.lotto_core.errors import InvalidArgumentError
from src.strategy_lab.strategies import XHatStrategy, YHatStrategy

log = logging.getLogger(__name__)

BLOCK_SIZE = 65536


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: float
    std_error: float
    n: int
    seed: int

    def to_dict(self) -> dict:
        return {"estimate": self.estimate, "std_error": self.std_error, "n": self.n, "seed": self.seed}


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def sample_payoffs(fx: XHatStrategy, fy: YHatStrategy, size: int, rng: np.random.Generator) -> np.ndarray:
    """Payoff to X of `size` independent plays; ties (including 0 vs 0) go to X."""
    x = fx.sample_batch(size, rng)
    contests, amounts = fy.sample_batch(size, rng)

    attacked = contests >= 0
    safe_contests = np.where(attacked, contests, 0)
    held = x[np.arange(size), safe_contests]
    lost = attacked & (held < amounts)
    return 1.0 - np.where(lost, fy.inst.v[safe_contests], 0.0)


def _block_moments(block: int, fx: XHatStrategy, fy: YHatStrategy, n: int, seed: int):
    size = min(BLOCK_SIZE, n - block * BLOCK_SIZE)
    payoffs = sample_payoffs(fx, fy, size, block_generator(seed, block))
    mean = float(payoffs.mean())
    return size, mean, float(np.sum((payoffs - mean) ** 2))


def _combine(moments):
    """Merge per-block (count, mean, sum of squared deviations) in block order."""
    count, mean, m2 = 0, 0.0, 0.0
    for block_count, block_mean, block_m2 in moments:
        total = count + block_count
        delta = block_mean - mean
        mean += delta * block_count / total
        m2 += block_m2 + delta**2 * count * block_count / total
        count = total
    return count, mean, m2


def monte_carlo_payoff(fx: XHatStrategy, fy: YHatStrategy, n: int, seed: int, num_workers: int = 1) -> MonteCarloResult:
    """
    Estimate the expected payoff to X with its standard error sample-stddev / sqrt(n).

    For n = 1 the sample standard deviation is undefined; the standard error is then reported as 0.5,
    the largest possible for a payoff in [0, 1].
    """
    if n < 1:
        raise InvalidArgumentError(f"number of samples must be at least 1, got {n}")
    if (fx.inst.X, fx.inst.Y) != (fy.inst.X, fy.inst.Y) or not np.array_equal(fx.inst.v, fy.inst.v):
        raise InvalidArgumentError("both strategies must belong to the same game instance")

    num_blocks = -(-n // BLOCK_SIZE)
    work = partial(_block_moments, fx=fx, fy=fy, n=n, seed=seed)
    log.debug(f"Monte Carlo: {n} samples in {num_blocks} blocks on {num_workers} worker(s)")

    if num_workers > 1 and num_blocks > 1:
        with mp.Pool(processes=min(num_workers, num_blocks)) as pool:
            moments = pool.map(work, range(num_blocks))
    else:
        moments = [work(block) for block in range(num_blocks)]

    count, mean, m2 = _combine(moments)
    std_error = float(np.sqrt(m2 / (count - 1) / count)) if count > 1 else 0.5
    return MonteCarloResult(estimate=mean, std_error=std_error, n=count, seed=seed)
