"""Exact multiple zeta values of poset integrals and polylogarithm integrands."""

from .beta import (
    ConnectedSumSpec,
    SeriesFamily,
    beta_exact,
    beta_single_formula,
    connected_sum_partial,
    eq_series_partial,
)
from .errors import (
    CycleError,
    DivergentInput,
    DivergentWord,
    InvalidInput,
    LimitExceeded,
    PolyMZVError,
    ToleranceUnreachable,
    UnknownCatalog,
)
from .numeric import NumericValue, PrecisionConfig, formal_sum_value, li_value, riemann_oracle, zeta_word
from .polylog import IntegrandSpec, PolylogFactor, connected_sum_split, integral_value, integral_value_reg
from .poset import LabeledPoset, build_poset, evaluate, evaluate_regularized, linear_extensions
from .regularization import RegularizedValue, decompose, reg
from .words import FormalSum, Letter, reverse_complement, shuffle, word_from_composition

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
