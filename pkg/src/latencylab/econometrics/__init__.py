from .generators import Ar1Config, gen_ar1, gen_cointegrated_pair
from .latency import EXPOSURE_ELASTICITY, LatencyArbitrage, QuotePair, exposure_elasticity, lao_detect
from .regression import (
    LEVELS,
    AdfResult,
    CointResult,
    DegenerateRegressor,
    LengthMismatch,
    RegressionResult,
    SeriesTooShort,
    adf_test,
    critical_values,
    engle_granger,
    ols,
    schwert_maxlag,
)
from .rng import XorShift64Star, splitmix64

__all__ = [
    "EXPOSURE_ELASTICITY",
    "LEVELS",
    "AdfResult",
    "Ar1Config",
    "CointResult",
    "DegenerateRegressor",
    "LatencyArbitrage",
    "LengthMismatch",
    "QuotePair",
    "RegressionResult",
    "SeriesTooShort",
    "XorShift64Star",
    "adf_test",
    "critical_values",
    "engle_granger",
    "exposure_elasticity",
    "gen_ar1",
    "gen_cointegrated_pair",
    "lao_detect",
    "ols",
    "schwert_maxlag",
    "splitmix64",
]
