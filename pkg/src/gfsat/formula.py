"""Constraints, clauses and formulas over a finite field.

A constraint is an atom p = 0 or p != 0; a clause is a disjunction of
constraints; a formula is a conjunction of clauses together with the field
and the number of variables.  The level of a constraint is the index of the
leading variable of its polynomial (0 for constants); the level of a clause
is the maximum over its literals.

Truth values are three-valued throughout: True, False or None (undefined).
"""

from __future__ import annotations

import enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .field import Field, FieldElement
from .poly import Polynomial, render_poly, univariate_roots, reduce_exponents


class Rel(enum.Enum):
    EQ = "="
    NEQ = "!="


class Constraint:
    """Atomic constraint poly <rel> 0."""

    __slots__ = ("poly", "rel", "_hash")

    def __init__(self, poly: Polynomial, rel: Rel):
        self.poly = poly
        self.rel = rel
        self._hash: Optional[int] = None

    def negated(self) -> "Constraint":
        return Constraint(self.poly, Rel.NEQ if self.rel is Rel.EQ else Rel.EQ)

    def level(self) -> int:
        return self.poly.level()

    def is_constant(self) -> bool:
        return self.poly.is_constant()

    def constant_truth(self) -> bool:
        """Truth value of a constant constraint."""
        z = self.poly.constant_value().is_zero()
        return z if self.rel is Rel.EQ else not z

    def __eq__(self, other) -> bool:
        if not isinstance(other, Constraint):
            return NotImplemented
        return self.rel is other.rel and self.poly == other.poly

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((hash(self.poly), self.rel))
        return self._hash

    def __str__(self) -> str:
        return f"{self.poly} {self.rel.value} 0"

    def __repr__(self) -> str:
        return f"Constraint({self})"

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        return f"{render_poly(self.poly, names)} {self.rel.value} 0"


class Clause:
    """Disjunction of constraints; duplicate literals are dropped on build."""

    __slots__ = ("literals", "_hash", "_level")

    def __init__(self, literals: Iterable[Constraint]):
        seen = []
        have = set()
        for lit in literals:
            if lit not in have:
                have.add(lit)
                seen.append(lit)
        self.literals: Tuple[Constraint, ...] = tuple(seen)
        self._hash: Optional[int] = None
        self._level: Optional[int] = None

    def level(self) -> int:
        if self._level is None:
            self._level = max((lit.level() for lit in self.literals), default=0)
        return self._level

    def is_empty(self) -> bool:
        return not self.literals

    def is_tautology(self) -> bool:
        have = set(self.literals)
        return any(lit.negated() in have for lit in self.literals)

    def __contains__(self, lit: Constraint) -> bool:
        return lit in self.literals

    def __eq__(self, other) -> bool:
        if not isinstance(other, Clause):
            return NotImplemented
        return self.literals == other.literals

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.literals)
        return self._hash

    def __str__(self) -> str:
        if not self.literals:
            return "<empty clause>"
        return " | ".join(str(lit) for lit in self.literals)

    def __repr__(self) -> str:
        return f"Clause({self})"


class Formula:
    """Conjunction of clauses over nvars variables."""

    __slots__ = ("field", "nvars", "clauses", "var_names")

    def __init__(self, field: Field, nvars: int, clauses: Iterable[Clause],
                 var_names: Optional[Sequence[str]] = None):
        self.field = field
        self.nvars = nvars
        self.clauses: Tuple[Clause, ...] = tuple(clauses)
        if var_names is None:
            self.var_names: Tuple[str, ...] = tuple(f"x{i}" for i in range(1, nvars + 1))
        else:
            if len(var_names) != nvars:
                raise ValueError("var_names length must equal nvars")
            self.var_names = tuple(var_names)

    def simplified(self) -> "Formula":
        """Drop constant literals and tautologies.

        A constant-true literal deletes its clause, a constant-false literal
        is removed from its clause, and a clause reduced to no literals is
        kept as the empty clause (the formula is then trivially unsat).
        """
        out: List[Clause] = []
        for clause in self.clauses:
            lits: List[Constraint] = []
            drop_clause = False
            for lit in clause.literals:
                if lit.is_constant():
                    if lit.constant_truth():
                        drop_clause = True
                        break
                else:
                    lits.append(lit)
            if drop_clause:
                continue
            c = Clause(lits)
            if c.is_tautology():
                continue
            out.append(c)
        return Formula(self.field, self.nvars, out, self.var_names)

    def reduced_exponents(self) -> "Formula":
        """Apply the per-variable exponent reduction to every literal."""
        out = []
        for clause in self.clauses:
            out.append(Clause(Constraint(reduce_exponents(l.poly), l.rel)
                              for l in clause.literals))
        return Formula(self.field, self.nvars, out, self.var_names)

    def renamed(self, mapping: Mapping[int, int], nvars: int) -> "Formula":
        """Rename variable i to mapping[i] (names are not carried over)."""
        out = []
        for clause in self.clauses:
            lits = []
            for lit in clause.literals:
                terms = {}
                for m, c in lit.poly.terms.items():
                    nm = tuple(sorted((mapping[v], e) for v, e in m))
                    terms[nm] = c
                lits.append(Constraint(Polynomial(lit.poly.field, terms), lit.rel))
            out.append(Clause(lits))
        return Formula(self.field, nvars, out)

    def variables(self) -> FrozenSet[int]:
        vs = set()
        for clause in self.clauses:
            for lit in clause.literals:
                vs |= lit.poly.variables()
        return frozenset(vs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return (self.field == other.field and self.nvars == other.nvars
                and self.clauses == other.clauses
                and self.var_names == other.var_names)

    def __hash__(self) -> int:
        return hash((self.field, self.nvars, self.clauses, self.var_names))

    def __str__(self) -> str:
        return " & ".join(f"({c})" for c in self.clauses)


# ---------------------------------------------------------------------------
# evaluation

def eval_constraint(f: Constraint, assignment: Mapping[int, FieldElement]) -> bool:
    """Truth under a total assignment of the constraint's variables."""
    z = f.poly.evaluate(assignment).is_zero()
    return z if f.rel is Rel.EQ else not z


def eval_clause(clause: Clause, assignment: Mapping[int, FieldElement]) -> bool:
    return any(eval_constraint(lit, assignment) for lit in clause.literals)


def eval_formula(formula: Formula, assignment: Mapping[int, FieldElement]) -> bool:
    return all(eval_clause(c, assignment) for c in formula.clauses)


def satisfying_values(f: Constraint, assignment: Mapping[int, FieldElement],
                      x: int) -> FrozenSet[FieldElement]:
    """Values of x making f true, all other variables of f read from assignment."""
    reduced = f.poly.substitute({v: assignment[v]
                                 for v in f.poly.variables() if v != x})
    roots = univariate_roots(reduced)
    if f.rel is Rel.EQ:
        return frozenset(roots)
    return frozenset(f.poly.field.elements()) - roots
