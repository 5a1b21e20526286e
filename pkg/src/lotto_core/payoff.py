import numpy as np

from src.lotto_core.errors import InvalidArgumentError
from src.lotto_core.game_instance import Allocation, GameInstance


def payoff_pure(x, y, inst: GameInstance) -> float:
    """
    Payoff to player X of the pure allocations x, y (canonical contest order).

    X secures every contest where it allocates at least as much as Y, ties are awarded to X.
    Player Y receives the complement 1 - payoff_pure(x, y, inst).
    """
    x = np.asarray(Allocation.coerce(x))
    y = np.asarray(Allocation.coerce(y))
    if x.size != inst.C or y.size != inst.C:
        raise InvalidArgumentError(
            f"allocations must have {inst.C} entries, got {x.size} and {y.size}"
        )

    return float(np.sum(inst.v[x >= y]))


def payoff_pure_Y(x, y, inst: GameInstance) -> float:
    return 1.0 - payoff_pure(x, y, inst)


def classic_lotto_value(X: float, Y: float) -> float:
    """Equilibrium payoff to X of the unrestricted General Lotto game with unit total value."""
    if X <= Y:
        return X / (2 * Y)
    return 1 - Y / (2 * X)


def gl_equilibrium_value(inst: GameInstance) -> float:
    return classic_lotto_value(inst.X, inst.Y)
