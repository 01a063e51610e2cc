"""Brute-force oracle: exhaustive solving, zero sets, projection checking."""

import pytest

from gfsat.explain import PolySystem
from gfsat.field import prime_field
from gfsat.formula import Clause, Constraint, Formula, Rel
from gfsat.oracle import (
    OracleCapExceeded,
    brute_solve,
    check_weak_projection,
    extendable,
    system_zeros,
    weak_projection_problems,
)
from gfsat.poly import Polynomial

F3 = prime_field(3)
F5 = prime_field(5)


def pvar(fld, v):
    return Polynomial.variable(fld, v)


def const(fld, z):
    return Polynomial.constant(fld.element(z))


def eq(p):
    return Constraint(p, Rel.EQ)


def neq(p):
    return Constraint(p, Rel.NEQ)


class TestBruteSolve:
    def test_returns_first_model_in_enumeration_order(self):
        # x1 + x2 = 0 over F_3; enumeration varies the last variable fastest,
        # so the first zero met is (0, 0).
        f = Formula(F3, 2, [Clause([eq(pvar(F3, 1) + pvar(F3, 2))])])
        v = brute_solve(f)
        assert v.is_sat
        assert v.model == {1: F3.element(0), 2: F3.element(0)}

    def test_skips_earlier_points(self):
        # x1 = 1 and x2 = 2: the model is the 6th point visited (1-based)
        f = Formula(F3, 2, [
            Clause([eq(pvar(F3, 1) - const(F3, 1))]),
            Clause([eq(pvar(F3, 2) - const(F3, 2))]),
        ])
        v = brute_solve(f)
        assert v.model == {1: F3.element(1), 2: F3.element(2)}
        assert v.stats.steps == 6

    def test_unsat(self):
        # x1^2 = 2 has no root mod 3
        f = Formula(F3, 1, [
            Clause([eq(pvar(F3, 1) * pvar(F3, 1) - const(F3, 2))])])
        v = brute_solve(f)
        assert v.is_unsat and v.model is None

    def test_cap(self):
        f = Formula(F5, 9, [Clause([eq(pvar(F5, 9))])])
        with pytest.raises(OracleCapExceeded):
            brute_solve(f, cap=10_000)


class TestSystemZeros:
    def test_zeros_of_linear_equation(self):
        # x2 - x1 = 0 over F_3: the diagonal
        system = PolySystem(eqs=(pvar(F3, 2) - pvar(F3, 1),), neqs=(),
                            top_var=2, field=F3)
        zeros = system_zeros(system)
        assert zeros == [(F3.element(z), F3.element(z)) for z in range(3)]

    def test_disequation_removes_points(self):
        system = PolySystem(eqs=(pvar(F3, 2) - pvar(F3, 1),),
                            neqs=(pvar(F3, 1),), top_var=2, field=F3)
        zeros = system_zeros(system)
        assert (F3.element(0), F3.element(0)) not in zeros
        assert len(zeros) == 2

    def test_empty_system_all_points(self):
        system = PolySystem(eqs=(), neqs=(), top_var=1, field=F3)
        assert len(system_zeros(system)) == 3


class TestExtendable:
    def test_extendable_point(self):
        system = PolySystem(eqs=(pvar(F3, 2) - pvar(F3, 1),), neqs=(),
                            top_var=2, field=F3)
        assert extendable(system, {1: F3.element(2)})

    def test_non_extendable_point(self):
        # x2^2 = x1 with x1 = 2: 2 is not a square mod 3
        system = PolySystem(
            eqs=(pvar(F3, 2) * pvar(F3, 2) - pvar(F3, 1),), neqs=(),
            top_var=2, field=F3)
        assert not extendable(system, {1: F3.element(2)})
        assert extendable(system, {1: F3.element(1)})


class TestWeakProjectionCheck:
    def setup_method(self):
        # x2^2 = x1 over F_3, alpha = {x1: 2} (non-extendable: 2 is a
        # non-residue); zeros have x1 in {0, 1}.
        self.system = PolySystem(
            eqs=(pvar(F3, 2) * pvar(F3, 2) - pvar(F3, 1),), neqs=(),
            top_var=2, field=F3)
        self.alpha = {1: F3.element(2)}

    def test_accepts_covering_false_constraints(self):
        # x1 - 2 != 0 is false at alpha and true on every zero prefix
        cons = [neq(pvar(F3, 1) - const(F3, 2))]
        assert check_weak_projection(self.system, self.alpha, cons)

    def test_rejects_constraint_true_at_alpha(self):
        cons = [neq(pvar(F3, 1))]  # x1 != 0 is true at alpha
        problems = weak_projection_problems(self.system, self.alpha, cons)
        assert any("not false at the point" in p for p in problems)

    def test_rejects_non_covering_set(self):
        # x1 - 1 = 0 is false at alpha but misses the zeros with x1 = 0
        cons = [eq(pvar(F3, 1) - const(F3, 1))]
        problems = weak_projection_problems(self.system, self.alpha, cons)
        assert any("not covered" in p for p in problems)

    def test_rejects_constraint_at_top_level(self):
        cons = [neq(pvar(F3, 2) - const(F3, 2))]
        problems = weak_projection_problems(self.system, self.alpha, cons)
        assert any("mentions x2" in p for p in problems)

    def test_empty_set_valid_when_system_has_no_zeros(self):
        system = PolySystem(
            eqs=(pvar(F3, 2) * pvar(F3, 2) - const(F3, 2),), neqs=(),
            top_var=2, field=F3)
        assert check_weak_projection(system, {1: F3.element(0)}, [])
