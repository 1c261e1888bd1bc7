"""Integer program export (CPLEX LP text format) and solution verification.

Variables: ``x_j`` marks item j as selected; ``x_i_j_k`` places item j in
position k of agent i's ranking of the committee (all indices 1-based).

Constraints::

    (a) sum_j x_j = K
    (b) x_i_j_k <= x_j                      for all i, j, k
    (c) sum_j x_i_j_k = 1                   for all i, k
    (d) sum_k x_i_j_k <= 1                  for all i, j
    (e) sum_j u_ij x_i_j_k >= sum_j u_ij x_i_j_(k+1)   for all i, k < K
    (f), (g) all variables binary

(e) is only emitted for OWAs that are not nonincreasing: with a
nonincreasing OWA an optimal solution sorts each agent's items anyway.
The objective maximizes sum alpha_k u_ij x_i_j_k.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from ._validation import BudgetExceededError, as_fraction
from .exact import DEFAULT_BUDGET
from .model import format_number
from .owa import classify
from .scoring import committee_score

_WRAP = 200


def item_var(j):
    return f"x_{j + 1}"


def slot_var(i, j, k):
    return f"x_{i + 1}_{j + 1}_{k + 1}"


def variable_names(instance):
    n, m, K = instance.n, instance.m, instance.K
    names = [item_var(j) for j in range(m)]
    names += [slot_var(i, j, k) for i in range(n) for j in range(m) for k in range(K)]
    return names


def _num(x):
    s = format_number(x)
    if "/" in s:
        s = repr(float(x))
    return s


def _expr(terms):
    """Join (coefficient or None, var) pairs, wrapping long lines."""
    parts = []
    for coef, var in terms:
        if coef is None:
            parts.append(("+", var))
        else:
            sign = "-" if coef < 0 else "+"
            parts.append((sign, f"{_num(abs(coef))} {var}"))
    lines, line = [], ""
    for idx, (sign, body) in enumerate(parts):
        token = body if idx == 0 and sign == "+" else f"{sign} {body}"
        if line and len(line) + len(token) + 1 > _WRAP:
            lines.append(line)
            line = token
        else:
            line = f"{line} {token}" if line else token
    lines.append(line)
    return "\n   ".join(lines)


def emit_lp(instance):
    """The OWA-Winner integer program as deterministic LP-format text."""
    n, m, K = instance.n, instance.m, instance.K
    u = instance.utilities.u
    alpha = instance.owa.alpha
    with_sorting = not classify(alpha).nonincreasing
    out = [
        "\\ OWA-Winner integer program",
        f"\\ agents n={n}, items m={m}, committee size K={K}",
        "Maximize",
    ]
    obj = [(alpha[k] * u[i][j], slot_var(i, j, k))
           for i in range(n) for j in range(m) for k in range(K)]
    out.append(f" obj: {_expr(obj)}")
    out.append("Subject To")
    out.append(f" a: {_expr([(None, item_var(j)) for j in range(m)])} = {K}")
    for i in range(n):
        for j in range(m):
            for k in range(K):
                out.append(f" b_{i + 1}_{j + 1}_{k + 1}: {slot_var(i, j, k)} - {item_var(j)} <= 0")
    for i in range(n):
        for k in range(K):
            terms = [(None, slot_var(i, j, k)) for j in range(m)]
            out.append(f" c_{i + 1}_{k + 1}: {_expr(terms)} = 1")
    for i in range(n):
        for j in range(m):
            terms = [(None, slot_var(i, j, k)) for k in range(K)]
            out.append(f" d_{i + 1}_{j + 1}: {_expr(terms)} <= 1")
    if with_sorting:
        for i in range(n):
            for k in range(K - 1):
                terms = [(u[i][j], slot_var(i, j, k)) for j in range(m)]
                terms += [(-u[i][j], slot_var(i, j, k + 1)) for j in range(m)]
                out.append(f" e_{i + 1}_{k + 1}: {_expr(terms)} >= 0")
    out.append("Binary")
    out.extend(f" {name}" for name in variable_names(instance))
    out.append("End")
    return "\n".join(out) + "\n"


def constraint_counts(instance):
    n, m, K = instance.n, instance.m, instance.K
    counts = {"a": 1, "b": n * m * K, "c": n * K, "d": n * m}
    if not classify(instance.owa.alpha).nonincreasing:
        counts["e"] = n * (K - 1)
    return counts


def parse_solution(text):
    """Read ``name value`` pairs (one per line, ``#`` comments) into a dict."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: expected 'name value', got {raw!r}")
        name, value = tokens
        try:
            values[name] = as_fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: bad value {value!r}") from exc
    return values


def canonical_assignment(instance, W):
    """Assignment induced by committee W, each agent's slots in decreasing utility.

    Ties between equal utilities go to the lower item index.
    """
    W = sorted(W)
    values = {name: 0 for name in variable_names(instance)}
    for j in W:
        values[item_var(j)] = 1
    for i, row in enumerate(instance.utilities.u):
        for k, j in enumerate(sorted(W, key=lambda j: (-row[j], j))):
            values[slot_var(i, j, k)] = 1
    return values


def ilp_objective(instance, assignment):
    u, alpha = instance.utilities.u, instance.owa.alpha
    return sum((alpha[k] * u[i][j] * as_fraction(assignment[slot_var(i, j, k)])
                for i in range(instance.n) for j in range(instance.m)
                for k in range(instance.K)), Fraction(0))


@dataclass
class Verification:
    ok: bool
    objective: Fraction = None
    violations: list = field(default_factory=list)
    committee: tuple = None
    committee_score: Fraction = None
    sorted: bool = None


def verify_solution(instance, assignment):
    """Check an assignment against every constraint and cross-check its objective.

    The sorting constraint (e) is always inspected; it counts as a violation
    only when the OWA is not nonincreasing (the case in which it is part of
    the program).  For a sorted feasible assignment the objective must equal
    the committee score of the selected items; for an unsorted one it can
    only be lower.
    """
    n, m, K = instance.n, instance.m, instance.K
    u = instance.utilities.u
    names = variable_names(instance)
    violations = []
    unknown = sorted(set(assignment) - set(names))
    if unknown:
        violations.append(f"unknown variable(s): {', '.join(unknown[:5])}")
    missing = [v for v in names if v not in assignment]
    if missing:
        violations.append(f"missing variable(s): {', '.join(missing[:5])}")
        return Verification(False, violations=violations)
    val = {name: as_fraction(assignment[name]) for name in names}
    for j in range(m):
        if val[item_var(j)] not in (0, 1):
            violations.append(f"(g) {item_var(j)} = {val[item_var(j)]} is not binary")
    for i in range(n):
        for j in range(m):
            for k in range(K):
                v = val[slot_var(i, j, k)]
                if v not in (0, 1):
                    violations.append(f"(f) {slot_var(i, j, k)} = {v} is not binary")
    if violations:
        return Verification(False, violations=violations)

    selected = sum(val[item_var(j)] for j in range(m))
    if selected != K:
        violations.append(f"(a) {selected} items selected, expected {K}")
    for i in range(n):
        for j in range(m):
            for k in range(K):
                if val[slot_var(i, j, k)] > val[item_var(j)]:
                    violations.append(f"(b) agent {i + 1} puts unselected item a{j + 1} in slot {k + 1}")
    for i in range(n):
        for k in range(K):
            filled = sum(val[slot_var(i, j, k)] for j in range(m))
            if filled != 1:
                violations.append(f"(c) agent {i + 1} slot {k + 1} holds {filled} items")
    for i in range(n):
        for j in range(m):
            used = sum(val[slot_var(i, j, k)] for k in range(K))
            if used > 1:
                violations.append(f"(d) agent {i + 1} places item a{j + 1} in {used} slots")
    is_sorted = True
    enforce_sorting = not classify(instance.owa.alpha).nonincreasing
    for i in range(n):
        for k in range(K - 1):
            here = sum(u[i][j] * val[slot_var(i, j, k)] for j in range(m))
            there = sum(u[i][j] * val[slot_var(i, j, k + 1)] for j in range(m))
            if here < there:
                is_sorted = False
                if enforce_sorting:
                    violations.append(f"(e) agent {i + 1} slot {k + 1} ranks below slot {k + 2}")
    objective = ilp_objective(instance, val)
    if violations:
        return Verification(False, objective, violations, sorted=is_sorted)

    committee = tuple(j for j in range(m) if val[item_var(j)] == 1)
    cs = committee_score(instance, committee).total
    if is_sorted and objective != cs:
        violations.append(f"objective {objective} differs from committee score {cs}")
    elif not is_sorted and objective > cs:
        violations.append(f"objective {objective} exceeds committee score {cs}")
    return Verification(not violations, objective, violations, committee, cs, is_sorted)


def best_canonical_objective(instance, budget=DEFAULT_BUDGET):
    """Maximum ILP objective over the canonical assignments of all committees."""
    total = comb(instance.m, instance.K)
    if total > budget:
        raise BudgetExceededError(f"C({instance.m}, {instance.K}) = {total} exceeds budget {budget}")
    best = None
    for W in combinations(range(instance.m), instance.K):
        obj = ilp_objective(instance, canonical_assignment(instance, W))
        if best is None or obj > best:
            best = obj
    return best
