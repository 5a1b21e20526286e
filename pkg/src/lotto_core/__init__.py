from src.lotto_core.errors import (
    InstanceFormatError,
    InvalidArgumentError,
    LottoError,
    NormalizationError,
    SolverError,
    UnsupportedSizeError,
)
from src.lotto_core.game_instance import (
    NORMALIZE,
    STRICT,
    Allocation,
    GameInstance,
    SimplexVector,
    load_instance,
    validate_or_normalize,
)
from src.lotto_core.payoff import classic_lotto_value, gl_equilibrium_value, payoff_pure, payoff_pure_Y
