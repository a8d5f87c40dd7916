"""Multiple zeta values and their double tails, computed with certified error.

Two evaluation schemes are provided: a table-wide descending recurrence over
diagonal tails (:mod:`doubletails.dp`) and a single-value central-binomial
series (:mod:`doubletails.series`), next to a polylogarithm baseline, a
nested-series oracle for arbitrary tails (:mod:`doubletails.tails`) and the
integer relation machinery for tails of fixed weight
(:mod:`doubletails.relations`).
"""
__version__ = "0.1.0"

from .dp import choose_N, error_bound, make_plan, run, zeta_table
from .fixnum import FixedReal, PrecisionPlan, to_decimal
from .series import baseline_chasles, general_tail_series, zeta_series
from .tails import TailValue, tail_value
from .words import composition_of_word, dual, parse_composition, word_of_composition

__all__ = [
    "FixedReal",
    "PrecisionPlan",
    "TailValue",
    "baseline_chasles",
    "choose_N",
    "composition_of_word",
    "dual",
    "error_bound",
    "general_tail_series",
    "make_plan",
    "parse_composition",
    "run",
    "tail_value",
    "to_decimal",
    "word_of_composition",
    "zeta_series",
    "zeta_table",
]
