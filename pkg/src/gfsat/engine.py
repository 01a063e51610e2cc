"""Search engine deciding conjunctions of polynomial constraint clauses.

The solver builds a model one variable at a time.  A trail records constraint
literals (decided, propagated, or theory-propagated) for the current variable
and the values chosen for earlier variables.  Search alternates three modes:

* search: detect a false clause (conflict), or finish (all variables have
  values), or pick the lowest-index clause that is still undetermined and
  focus on it, or assign the current variable its lowest feasible value and
  move to the next one.

* focus: satisfy the focused clause by unit propagation when only one
  literal is left, by theory propagation when the feasible values of the
  current variable already force a literal one way, or by deciding the first
  literal compatible with the feasible set.

* conflict: walk the trail backwards from a false clause, resolving against
  propagation sources (computing a projection lemma on demand for theory
  propagations), learning the conflict clause when it survives past a
  decision or a variable assignment, and declaring unsatisfiability when the
  trail runs out at the first variable.

Verdicts are "sat" (with a model that is re-checked against the input before
being returned), "unsat", or "unknown" when a step or time budget ran out.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .explain import StepLimit, TraceFn, assignment_lemma, explain
from .field import FieldElement
from .formula import Clause, Constraint, Formula, eval_formula
from .limits import Budget, BudgetExceeded
from .trail import Decision, Propagation, Trail, VarAssignment, is_well_formed

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "unknown"


@dataclass
class Stats:
    decisions: int = 0
    propagations: int = 0
    t_propagations: int = 0
    conflicts: int = 0
    learned: int = 0
    explanations: int = 0
    steps: int = 0
    time_ms: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {
            "decisions": self.decisions,
            "propagations": self.propagations,
            "t_propagations": self.t_propagations,
            "conflicts": self.conflicts,
            "learned": self.learned,
            "explanations": self.explanations,
            "steps": self.steps,
            "time_ms": self.time_ms,
        }


@dataclass
class ExplanationRecord:
    """Snapshot of a lazily computed propagation lemma, for auditing.

    The snapshot describes the trail exactly as it was when the propagation
    was made (equivalently, when its explanation was computed): ``literal``
    is the propagated constraint, ``lemma`` the clause justifying it,
    ``assignment`` the values of the variables below, ``trail_constraints``
    the constraints that were on the trail, and ``level`` the variable index
    being worked on.
    """

    lemma: Clause
    literal: Constraint
    level: int
    assignment: Dict[int, FieldElement]
    trail_constraints: Tuple[Constraint, ...]


@dataclass
class Config:
    var_order: Optional[Sequence[int]] = None
    max_steps: int = 10_000_000
    timeout_s: Optional[float] = None
    validate: str = "never"  # "never" | "final" | "always"
    explanation_sink: Optional[List[ExplanationRecord]] = None
    trace: Optional[TraceFn] = None


@dataclass
class Verdict:
    status: str
    model: Optional[Dict[int, FieldElement]]
    stats: Stats
    reason: Optional[str] = None

    @property
    def is_sat(self) -> bool:
        return self.status == SAT

    @property
    def is_unsat(self) -> bool:
        return self.status == UNSAT


def check_model(formula: Formula, model: Dict[int, FieldElement]) -> bool:
    """True when ``model`` assigns every variable and satisfies every clause."""
    for v in range(1, formula.nvars + 1):
        if v not in model:
            raise ValueError(f"model does not assign x{v}")
    return eval_formula(formula, model)


def resolve(conflict: Clause, explanation: Clause, pivot: Constraint) -> Clause:
    """Resolvent of a false clause with the explanation of ``pivot``.

    ``conflict`` must contain the negation of ``pivot`` and ``explanation``
    must contain ``pivot``; both occurrences are dropped and the remaining
    literals merged.
    """
    neg = pivot.negated()
    if neg not in conflict:
        raise ValueError("conflict clause does not mention the pivot")
    if pivot not in explanation:
        raise ValueError("explanation does not contain the pivot")
    lits = [l for l in conflict.literals if l != neg]
    lits += [l for l in explanation.literals if l != pivot]
    return Clause(lits)


class _Engine:
    def __init__(self, formula: Formula, cfg: Config):
        self.original = formula
        self.cfg = cfg
        self.field = formula.field
        self.budget = Budget(cfg.timeout_s)
        self.stats = Stats()

        order = list(cfg.var_order) if cfg.var_order is not None \
            else list(range(1, formula.nvars + 1))
        if sorted(order) != list(range(1, formula.nvars + 1)):
            raise ValueError("var_order must be a permutation of the variables")

        work = formula.simplified().reduced_exponents().simplified()
        occurring = work.variables()
        ordered_ext = [v for v in order if v in occurring]
        self.int_of_ext = {v: i + 1 for i, v in enumerate(ordered_ext)}
        self.n_int = len(ordered_ext)
        self.work = work.renamed(self.int_of_ext, self.n_int)

        self.clauses: List[Clause] = list(self.work.clauses)
        self.clause_set = set(self.clauses)
        self.trail = Trail(self.field)

        self.mode = "search"
        self.conflict: Optional[Clause] = None
        self.focus: Optional[Clause] = None

    # -- main loop ---------------------------------------------------------

    def run(self) -> Verdict:
        t0 = time.monotonic()
        try:
            status, model, reason = self._loop()
        except BudgetExceeded as exc:
            status, model, reason = UNKNOWN, None, exc.reason
        except StepLimit as exc:
            status, model, reason = UNKNOWN, None, str(exc)
        self.stats.time_ms = int((time.monotonic() - t0) * 1000)
        return Verdict(status, model, self.stats, reason)

    def _loop(self) -> Tuple[str, Optional[Dict[int, FieldElement]], Optional[str]]:
        while True:
            if self.stats.steps >= self.cfg.max_steps:
                return UNKNOWN, None, "step-limit"
            self.stats.steps += 1
            # A single step can be arbitrarily expensive (it may compute a
            # projection), so check the deadline unconditionally here; the
            # sampled check is for tight inner loops.
            self.budget.check_now()
            if self.mode == "conflict":
                out = self._conflict_step()
            elif self.mode == "focus":
                out = self._focus_step()
            else:
                out = self._search_step()
            if out is not None:
                return out
            if self.cfg.validate == "always" and self.mode != "conflict":
                self._validate()

    # -- search ------------------------------------------------------------

    def _search_step(self):
        k = self.trail.level
        false_clause: Optional[Clause] = None
        undef_clause: Optional[Clause] = None
        for c in self.clauses:
            if c.level() > k:
                continue
            v = self.trail.clause_value(c)
            if v is False:
                false_clause = c
                break
            if v is None and undef_clause is None:
                undef_clause = c
        if false_clause is not None:
            self.stats.conflicts += 1
            self.conflict = false_clause
            self.mode = "conflict"
            return None
        if k > self.n_int:
            return self._finish_sat()
        if undef_clause is not None:
            self.focus = undef_clause
            self.mode = "focus"
            return None
        # Every clause mentioning the current variable is satisfied: fix the
        # lowest feasible value and move on.
        alpha = min(self.trail.feasible, key=lambda e: e.index())
        self.trail.push_assignment(k, alpha)
        return None

    def _finish_sat(self):
        if self.cfg.validate != "never":
            self._validate()
        model_int = dict(self.trail.assignment)
        zero = self.field.elements()[0]
        model: Dict[int, FieldElement] = {}
        for v in range(1, self.original.nvars + 1):
            iv = self.int_of_ext.get(v)
            model[v] = model_int[iv] if iv is not None else zero
        if not check_model(self.original, model):
            raise RuntimeError("internal error: model fails the final recheck")
        return SAT, model, None

    # -- clause focus ------------------------------------------------------

    def _focus_step(self):
        clause = self.focus
        self.focus = None
        self.mode = "search"
        values = [self.trail.constraint_value(l) for l in clause.literals]
        undef = [i for i, v in enumerate(values) if v is None]
        if not undef:
            # The clause resolved itself since being selected (it cannot be
            # false here, or search would have entered conflict mode).
            return None

        non_false = [i for i, v in enumerate(values) if v is not False]
        if len(non_false) == 1 and values[non_false[0]] is None:
            lit = clause.literals[non_false[0]]
            if self.trail.compatible(lit):
                self.trail.push_propagation(lit, clause)
                self.stats.propagations += 1
                return None

        feasible = self.trail.feasible
        for i in undef:
            lit = clause.literals[i]
            sat_values = self.trail.satisfying(lit)
            if feasible <= sat_values:
                # Every remaining value satisfies the literal.
                self.trail.push_propagation(lit, None)
                self.stats.t_propagations += 1
                return None
            if not (feasible & sat_values):
                # No remaining value satisfies the literal.
                self.trail.push_propagation(lit.negated(), None)
                self.stats.t_propagations += 1
                return None

        for i in undef:
            lit = clause.literals[i]
            if self.trail.compatible(lit):
                self.trail.push_decision(lit)
                self.stats.decisions += 1
                return None

        raise RuntimeError("internal error: no applicable rule for the "
                           "focused clause")

    # -- conflict resolution ----------------------------------------------

    def _conflict_step(self):
        if self.trail.is_empty():
            return UNSAT, None, None
        top = self.trail.top
        if isinstance(top, Propagation):
            lit = top.constraint
            self.trail.pop()
            if lit.negated() in self.conflict:
                if top.source is not None:
                    lemma = top.source
                else:
                    try:
                        lemma = explain(lit, self.trail, trace=self.cfg.trace,
                                        budget=self.budget)
                    except StepLimit:
                        # Projection work cap: justify the propagation by
                        # pinning the assignment instead.
                        lemma = assignment_lemma(lit, self.trail)
                    self.stats.explanations += 1
                    if self.cfg.explanation_sink is not None:
                        self.cfg.explanation_sink.append(ExplanationRecord(
                            lemma=lemma,
                            literal=lit,
                            level=self.trail.level,
                            assignment=dict(self.trail.assignment),
                            trail_constraints=tuple(self.trail.constraints()),
                        ))
                self.conflict = resolve(self.conflict, lemma, lit)
            return None
        if isinstance(top, Decision):
            lit = top.constraint
            self.trail.pop()
            if lit.negated() in self.conflict:
                self._learn(self.conflict)
                self.focus = self.conflict
                self.conflict = None
                self.mode = "focus"
            return None
        # Variable assignment: undo it and see whether the clause is still
        # false one variable down.
        assert isinstance(top, VarAssignment)
        self.trail.pop()
        if self.trail.clause_value(self.conflict) is False:
            return None
        self._learn(self.conflict)
        self.focus = self.conflict
        self.conflict = None
        self.mode = "focus"
        return None

    def _learn(self, clause: Clause) -> None:
        if clause in self.clause_set:
            return
        self.clauses.append(clause)
        self.clause_set.add(clause)
        self.stats.learned += 1

    # -- checks ------------------------------------------------------------

    def _validate(self) -> None:
        ok, problems = is_well_formed(self.trail, self.clauses)
        if not ok:
            raise RuntimeError("trail invariant violated: " + "; ".join(problems))


def solve(formula: Formula, config: Optional[Config] = None) -> Verdict:
    """Decide the clause system and return a verdict with statistics.

    A "sat" verdict carries a total model (default value for variables the
    clauses do not mention) that has been re-checked against the input
    formula.  "unknown" means a resource limit was hit first; the reason
    field says which.
    """
    cfg = config or Config()
    return _Engine(formula, cfg).run()
