"""Single entry point dispatching to every solver by name."""

from .exact import DEFAULT_BUDGET, brute_force, kbest_solve
from .greedy import greedy_solve, hurwicz_solve, kbest_proxy_solve, ptas_solve
from .model import SolveReport
from .nonfinicky import gprog_ptas, segmented_solve, slots_greedy
from .scoring import committee_score

ALGORITHMS = ("brute", "kbest", "greedy", "hurwicz", "kbest-proxy", "ptas",
              "slots", "segmented", "gprog-ptas")


def _need(name, value, algorithm):
    if value is None:
        raise ValueError(f"algorithm {algorithm!r} needs --{name}")
    return value


def solve(instance, algorithm="greedy", *, gamma=None, ell=None, epsilon=None,
          inner="greedy", budget=DEFAULT_BUDGET):
    """Run ``algorithm`` on ``instance`` and return a :class:`SolveReport`."""
    if algorithm == "brute":
        report = SolveReport("brute", brute_force(instance, budget), 1.0)
    elif algorithm == "kbest":
        report = SolveReport("kbest", kbest_solve(instance), 1.0)
    elif algorithm == "greedy":
        report = greedy_solve(instance)
    elif algorithm == "hurwicz":
        report = hurwicz_solve(instance, inner=inner, gamma=gamma, budget=budget)
    elif algorithm == "kbest-proxy":
        report = kbest_proxy_solve(instance)
    elif algorithm == "ptas":
        report = ptas_solve(instance, _need("epsilon", epsilon, algorithm), budget)
    elif algorithm == "slots":
        report = slots_greedy(instance, _need("gamma", gamma, algorithm), ell)
    elif algorithm == "segmented":
        report = segmented_solve(instance, _need("gamma", gamma, algorithm), ell)
    elif algorithm == "gprog-ptas":
        report = gprog_ptas(instance, _need("epsilon", epsilon, algorithm),
                            _need("gamma", gamma, algorithm), budget=budget)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {', '.join(ALGORITHMS)}")
    rescored = committee_score(instance, report.items).total
    if rescored != report.score:
        raise AssertionError(f"{algorithm}: reported score {report.score} != recomputed {rescored}")
    return report
