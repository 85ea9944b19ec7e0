"""Wreath Macdonald polynomials, Nekrasov factors and modular Nekrasov-Okounkov checks."""

__version__ = "0.1.0"

from .coeff import (EvalPoint, ExactBackend, InvalidInput, LaurentPoly, PointBackend, RatFunc,
                    SeriesBackend, TruncSeries, random_eval_point)
from .partitions import core_quotient, from_core_quotient, make_partition
from .characters import nekrasov_factor, nekrasov_via_omega
from .wreath import WreathFamily, ext_pairing, solve_h
from .identities import VerificationReport
from .suites import SUITES, SuiteParams, run_suite

__all__ = [
    "EvalPoint", "ExactBackend", "InvalidInput", "LaurentPoly", "PointBackend", "RatFunc",
    "SeriesBackend", "TruncSeries", "random_eval_point", "core_quotient", "from_core_quotient",
    "make_partition", "nekrasov_factor", "nekrasov_via_omega", "WreathFamily", "ext_pairing",
    "solve_h", "VerificationReport", "SUITES", "SuiteParams", "run_suite",
]
