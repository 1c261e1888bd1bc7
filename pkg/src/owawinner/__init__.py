"""Committee selection maximizing total OWA-aggregated utility.

Each agent rates every item; a committee of K items is worth, to each
agent, the ordered weighted average of the agent's utilities for the
committee members.  The package offers exact, greedy and specialised
approximate solvers, an integer-program export, bound calculators and a
scikit-learn style selector.
"""

__version__ = "0.1.0"

from ._validation import BudgetExceededError
from .analysis import BoundQuery, bound, bound_curves, lambert_w, suggested_gamma
from .estimator import OWAWinnerSelector
from .exact import brute_force, kbest_solve
from .formats import InstanceFormatError, parse_instance, read_instance, serialize_instance
from .greedy import greedy_solve, hurwicz_solve, kbest_proxy_solve, ptas_solve
from .ilp import emit_lp, verify_solution
from .model import (Instance, OwaVector, SolveReport, UtilityMatrix, WinnerSet,
                    approval_profile, borda_profile, nonfinicky_beta)
from .nonfinicky import gprog_ptas, segmented_solve, slots_greedy
from .owa import classify, make_owa
from .scoring import check_submodular, committee_score
from .solvers import ALGORITHMS, solve

__all__ = [
    "ALGORITHMS", "BoundQuery", "BudgetExceededError", "Instance", "InstanceFormatError",
    "OWAWinnerSelector", "OwaVector", "SolveReport", "UtilityMatrix", "WinnerSet",
    "approval_profile", "borda_profile", "bound", "bound_curves", "brute_force",
    "check_submodular", "classify", "committee_score", "emit_lp", "gprog_ptas",
    "greedy_solve", "hurwicz_solve", "kbest_proxy_solve", "kbest_solve", "lambert_w",
    "make_owa", "nonfinicky_beta", "parse_instance", "ptas_solve", "read_instance",
    "segmented_solve", "serialize_instance", "slots_greedy", "solve", "suggested_gamma",
    "verify_solution",
]
