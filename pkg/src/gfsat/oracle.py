"""Brute-force reference procedures for cross-checking the solver.

Everything here works by exhaustive enumeration of assignments, so it is
only usable on small instances; each entry point takes a cap on the number
of points it is willing to visit and refuses beyond it.
"""

from __future__ import annotations

import time
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .engine import SAT, UNSAT, Stats, Verdict
from .explain import PolySystem
from .field import FieldElement
from .formula import Constraint, Formula, eval_constraint, eval_formula


class OracleCapExceeded(ValueError):
    pass


def _points(field, nvars: int, cap: int):
    if field.q ** nvars > cap:
        raise OracleCapExceeded(
            f"enumerating {field.q}^{nvars} assignments exceeds the cap {cap}")
    return product(field.elements(), repeat=nvars)


def brute_solve(formula: Formula, cap: int = 1_000_000) -> Verdict:
    """Decide the formula by trying every assignment.

    Returns the first satisfying assignment in enumeration order (last
    variable varies fastest) or an unsat verdict.
    """
    t0 = time.monotonic()
    stats = Stats()
    for point in _points(formula.field, formula.nvars, cap):
        stats.steps += 1
        model = {i + 1: v for i, v in enumerate(point)}
        if eval_formula(formula, model):
            stats.time_ms = int((time.monotonic() - t0) * 1000)
            return Verdict(SAT, model, stats)
    stats.time_ms = int((time.monotonic() - t0) * 1000)
    return Verdict(UNSAT, None, stats)


def system_zeros(system: PolySystem, cap: int = 1_000_000
                 ) -> List[Tuple[FieldElement, ...]]:
    """All points over variables 1..top_var where every equation vanishes
    and no disequation does, in enumeration order."""
    zeros = []
    for point in _points(system.field, system.top_var, cap):
        assignment = {i + 1: v for i, v in enumerate(point)}
        if all(p.evaluate(assignment).is_zero() for p in system.eqs) and \
                not any(q.evaluate(assignment).is_zero() for q in system.neqs):
            zeros.append(point)
    return zeros


def extendable(system: PolySystem, alpha: Dict[int, FieldElement]) -> bool:
    """Whether some value of the top variable turns ``alpha`` into a zero of
    the system."""
    for beta in system.field.elements():
        assignment = dict(alpha)
        assignment[system.top_var] = beta
        if all(p.evaluate(assignment).is_zero() for p in system.eqs) and \
                not any(q.evaluate(assignment).is_zero() for q in system.neqs):
            return True
    return False


def weak_projection_problems(system: PolySystem,
                             alpha: Dict[int, FieldElement],
                             constraints: Sequence[Constraint],
                             cap: int = 1_000_000) -> List[str]:
    """Violations of the projection contract, empty when it holds.

    The contract: every constraint mentions only variables below the top
    one and is false at ``alpha``; and every zero of the system satisfies
    at least one constraint on its lower-variable prefix.  (Together these
    imply ``alpha`` cannot be extended to a zero.)
    """
    problems: List[str] = []
    k = system.top_var
    usable: List[Constraint] = []
    for c in constraints:
        if c.level() >= k:
            problems.append(f"constraint {c} mentions x{c.level()}, "
                            f"not below x{k}")
            continue
        usable.append(c)
        if eval_constraint(c, alpha):
            problems.append(f"constraint {c} is not false at the point")
    for zero in system_zeros(system, cap):
        prefix = {i + 1: v for i, v in enumerate(zero[:k - 1])}
        if not any(eval_constraint(c, prefix) for c in usable):
            vals = ", ".join(str(v) for v in zero)
            problems.append(f"zero ({vals}) is not covered by any constraint")
            break
    return problems


def check_weak_projection(system: PolySystem,
                          alpha: Dict[int, FieldElement],
                          constraints: Sequence[Constraint],
                          cap: int = 1_000_000) -> bool:
    """True when ``constraints`` is a valid weak projection of the system at
    ``alpha`` (see ``weak_projection_problems``)."""
    return not weak_projection_problems(system, alpha, constraints, cap)
