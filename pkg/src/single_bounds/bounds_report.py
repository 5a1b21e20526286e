from dataclasses import dataclass

import numpy as np

from src.lotto_core.game_instance import GameInstance
from src.lotto_core.payoff import gl_equilibrium_value
from src.lotto_core.serialization import SIGNIFICANT_DIGITS, to_jsonable
from src.single_bounds.lower_bound import LowerBoundResult, solve_lower_bound
from src.single_bounds.upper_bound import UpperBoundResult, solve_upper_bound


@dataclass(frozen=True)
class BoundsReport:
    """LB*, UB* and the classic value of one instance, optimizers in the caller's contest order."""

    gl: float
    lb: float
    ub: float
    level: float
    k_star: int
    alpha_star: np.ndarray
    p_star: np.ndarray
    top_contests: list  # caller indices of the k* contests Y attacks
    lower: LowerBoundResult
    upper: UpperBoundResult

    @property
    def gap(self) -> float:
        return self.ub - self.lb

    def to_dict(self) -> dict:
        return {
            "gl": self.gl,
            "lb": self.lb,
            "ub": self.ub,
            "gap": self.gap,
            "level": self.level,
            "k_star": self.k_star,
            "alpha_star": self.alpha_star,
            "p_star": self.p_star,
            "top_contests": self.top_contests,
        }

    def format_text(self, digits: int = SIGNIFICANT_DIGITS) -> str:
        rows = to_jsonable(self.to_dict(), digits)
        width = max(len(key) for key in rows)
        return "\n".join(f"{key:<{width}}  {value}" for key, value in rows.items())


def compute_bounds(inst: GameInstance) -> BoundsReport:
    lower = solve_lower_bound(inst)
    upper = solve_upper_bound(inst)

    return BoundsReport(
        gl=gl_equilibrium_value(inst),
        lb=lower.value,
        ub=upper.value,
        level=lower.level,
        k_star=upper.k_star,
        alpha_star=inst.to_original(lower.alpha_star.entries),
        p_star=inst.to_original(upper.p_star.entries),
        top_contests=inst.original_indices(range(upper.k_star)),
        lower=lower,
        upper=upper,
    )
