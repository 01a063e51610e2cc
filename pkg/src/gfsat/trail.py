"""Solver trail: ordered constraints and variable assignments.

The trail owns the partial assignment nu (x_1 .. x_{k-1}), the current
level k (highest assigned variable plus one), and the feasible set for x_k:
the values consistent with every level-k constraint on the trail.  The
feasible set is narrowed incrementally on push and snapshot-restored on pop.

Constraint truth relative to a trail is three-valued (True/False/None):
a constraint on the trail is True, one whose negation is on the trail is
False, one whose variables are all assigned evaluates under nu, anything
else is undefined.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .field import Field, FieldElement
from .formula import Clause, Constraint, Rel, eval_clause, eval_constraint, satisfying_values


class TrailError(ValueError):
    pass


class RedundantConstraint(TrailError):
    pass


class LevelViolation(TrailError):
    pass


class InfeasibleValue(TrailError):
    pass


class Decision:
    __slots__ = ("constraint", "saved_feasible")

    def __init__(self, constraint: Constraint, saved_feasible: FrozenSet[FieldElement]):
        self.constraint = constraint
        self.saved_feasible = saved_feasible

    def __repr__(self) -> str:
        return f"Decision({self.constraint})"


class Propagation:
    __slots__ = ("constraint", "source", "saved_feasible")

    def __init__(self, constraint: Constraint, source: Optional[Clause],
                 saved_feasible: FrozenSet[FieldElement]):
        self.constraint = constraint
        self.source = source  # None marks a lazily explained theory propagation
        self.saved_feasible = saved_feasible

    def __repr__(self) -> str:
        tag = "lazy" if self.source is None else "clause"
        return f"Propagation({self.constraint}, {tag})"


class VarAssignment:
    __slots__ = ("var", "value", "saved_feasible")

    def __init__(self, var: int, value: FieldElement,
                 saved_feasible: FrozenSet[FieldElement]):
        self.var = var
        self.value = value
        self.saved_feasible = saved_feasible

    def __repr__(self) -> str:
        return f"VarAssignment(x{self.var} := {self.value})"


TrailElement = Union[Decision, Propagation, VarAssignment]


class Trail:
    """Single-owner mutable trail."""

    __slots__ = ("field", "elements", "assignment", "constraint_set",
                 "level", "_feasible", "_full", "_sat_memo")

    def __init__(self, field: Field):
        self.field = field
        self.elements: List[TrailElement] = []
        self.assignment: Dict[int, FieldElement] = {}
        self.constraint_set: Dict[Constraint, int] = {}
        self.level = 1
        self._full: FrozenSet[FieldElement] = field.element_set()
        self._feasible: FrozenSet[FieldElement] = self._full
        self._sat_memo: Dict[Tuple[Constraint, Tuple], FrozenSet[FieldElement]] = {}

    # -- queries --------------------------------------------------------------

    @property
    def feasible(self) -> FrozenSet[FieldElement]:
        """Values of the current variable consistent with the level-k trail."""
        return self._feasible

    def constraints(self) -> List[Constraint]:
        return [e.constraint for e in self.elements
                if not isinstance(e, VarAssignment)]

    def level_constraints(self, k: int) -> List[Constraint]:
        return [e.constraint for e in self.elements
                if not isinstance(e, VarAssignment) and e.constraint.level() == k]

    def is_empty(self) -> bool:
        return not self.elements

    @property
    def top(self) -> TrailElement:
        return self.elements[-1]

    def satisfying(self, f: Constraint) -> FrozenSet[FieldElement]:
        """Memoized satisfying values of f in its leading variable."""
        key_vars = tuple(sorted(v for v in f.poly.variables() if v != f.level()))
        key = (f, tuple(self.assignment[v] for v in key_vars))
        got = self._sat_memo.get(key)
        if got is None:
            got = satisfying_values(f, self.assignment, f.level())
            self._sat_memo[key] = got
        return got

    def feasible_with(self, f: Constraint) -> FrozenSet[FieldElement]:
        return self._feasible & self.satisfying(f)

    def compatible(self, f: Constraint) -> bool:
        return bool(self._feasible & self.satisfying(f))

    def constraint_value(self, f: Constraint) -> Optional[bool]:
        if f in self.constraint_set:
            return True
        if f.negated() in self.constraint_set:
            return False
        if f.level() < self.level:
            return eval_constraint(f, self.assignment)
        return None

    def clause_value(self, clause: Clause) -> Optional[bool]:
        saw_undef = False
        for lit in clause.literals:
            v = self.constraint_value(lit)
            if v is True:
                return True
            if v is None:
                saw_undef = True
        return None if saw_undef else False

    # -- mutation -------------------------------------------------------------

    def _push_constraint_common(self, f: Constraint) -> FrozenSet[FieldElement]:
        if f in self.constraint_set or f.negated() in self.constraint_set:
            raise RedundantConstraint(f"{f} (or its negation) is already on the trail")
        if f.level() != self.level:
            raise LevelViolation(
                f"constraint level {f.level()} != trail level {self.level}")
        saved = self._feasible
        self._feasible = saved & self.satisfying(f)
        self.constraint_set[f] = len(self.elements)
        return saved

    def push_decision(self, f: Constraint) -> None:
        saved = self._push_constraint_common(f)
        self.elements.append(Decision(f, saved))

    def push_propagation(self, f: Constraint, source: Optional[Clause]) -> None:
        saved = self._push_constraint_common(f)
        self.elements.append(Propagation(f, source, saved))

    def push_assignment(self, var: int, value: FieldElement) -> None:
        if var != self.level:
            raise LevelViolation(f"expected assignment of x{self.level}, got x{var}")
        if value not in self._feasible:
            raise InfeasibleValue(f"{value} is not feasible for x{var}")
        self.elements.append(VarAssignment(var, value, self._feasible))
        self.assignment[var] = value
        self.level += 1
        self._feasible = self._full

    def pop(self) -> TrailElement:
        if not self.elements:
            raise TrailError("pop from an empty trail")
        e = self.elements.pop()
        if isinstance(e, VarAssignment):
            del self.assignment[e.var]
            self.level -= 1
        else:
            del self.constraint_set[e.constraint]
        self._feasible = e.saved_feasible
        return e

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Trail({self.elements!r})"


def is_well_formed(trail: Trail, clauses: Sequence[Clause]) -> Tuple[bool, List[str]]:
    """Check the trail well-formedness conditions; returns (ok, violations)."""
    problems: List[str] = []
    seen: Dict[Constraint, int] = {}
    assigned: List[int] = []
    for i, e in enumerate(trail.elements):
        if isinstance(e, VarAssignment):
            expect = len(assigned) + 1
            if e.var != expect:
                problems.append(f"element {i}: assignment of x{e.var}, expected x{expect}")
            assigned.append(e.var)
            continue
        f = e.constraint
        if f in seen or f.negated() in seen:
            problems.append(f"element {i}: redundant constraint {f}")
        seen[f] = i
        lead = f.level()
        missing = [v for v in f.poly.variables()
                   if v != lead and v not in set(assigned)]
        if missing:
            problems.append(
                f"element {i}: {f} pushed before x{missing[0]} was assigned")
    if trail.level != len(assigned) + 1:
        problems.append(f"level {trail.level} != assigned count {len(assigned)} + 1")

    if not trail._feasible:
        problems.append("feasible set of the current variable is empty")

    # the partial assignment satisfies every clause below the current level
    for clause in clauses:
        if clause.level() < trail.level and not clause.is_empty():
            if not eval_clause(clause, trail.assignment):
                problems.append(f"clause below current level is unsatisfied: {clause}")

    # on-trail constraints hold wherever they are fully evaluated
    for f in trail.constraints():
        if f.level() < trail.level:
            if not eval_constraint(f, trail.assignment):
                problems.append(f"on-trail constraint evaluates false: {f}")

    # propagations with a materialized source must be implied by it
    on_trail = set(trail.constraint_set)
    for i, e in enumerate(trail.elements):
        if isinstance(e, Propagation) and e.source is not None:
            if e.constraint not in e.source:
                problems.append(f"element {i}: propagated literal not in its source")
                continue
            for lit in e.source.literals:
                if lit == e.constraint:
                    continue
                v = trail.constraint_value(lit)
                ok = (v is False) or (lit.negated() in on_trail)
                if not ok:
                    problems.append(
                        f"element {i}: source literal {lit} is not false under the trail")
    return (not problems, problems)
