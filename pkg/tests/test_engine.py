"""End-to-end and unit tests for the decision engine.

Covers the two-clause walkthrough formula over F_5 (frozen model and
statistics), clause resolution, model checking, configuration validation,
resource-limit verdicts, and randomized equivalence against the
brute-force oracle with full lemma validation switched on.
"""

import random

import pytest

from gfsat.engine import (Config, ExplanationRecord, Stats, Verdict,
                          check_model, resolve, solve)
from gfsat.explain import clear_caches
from gfsat.field import prime_field
from gfsat.formula import (Clause, Constraint, Formula, Rel, eval_clause,
                           eval_constraint)
from gfsat.oracle import brute_solve
from gfsat.poly import Polynomial

F3 = prime_field(3)
F5 = prime_field(5)


def pvar(field, v):
    return Polynomial.variable(field, v)


def const(field, c):
    return Polynomial.constant(field.element(c))


def eq(p):
    return Constraint(p, Rel.EQ)


def neq(p):
    return Constraint(p, Rel.NEQ)


@pytest.fixture(autouse=True)
def fresh_caches():
    clear_caches()
    yield


def walkthrough_formula():
    """x1^2 - 1 = 0  and  x1*x2 - x2 - 1 = 0 over F_5."""
    x1, x2 = pvar(F5, 1), pvar(F5, 2)
    one = const(F5, 1)
    return Formula(F5, 2, [Clause([eq(x1 * x1 - one)]),
                           Clause([eq(x1 * x2 - x2 - one)])])


class TestWalkthrough:
    def test_sat_with_expected_model(self):
        verdict = solve(walkthrough_formula(), Config(validate="always"))
        assert verdict.status == "sat"
        assert verdict.is_sat and not verdict.is_unsat
        model = {v: el.value for v, el in verdict.model.items()}
        assert model == {1: 4, 2: 2}

    def test_model_and_known_witness_check_out(self):
        formula = walkthrough_formula()
        verdict = solve(formula)
        assert check_model(formula, verdict.model)
        witness = {1: F5.element(4), 2: F5.element(2)}
        assert check_model(formula, witness)

    def test_stats_golden(self):
        verdict = solve(walkthrough_formula())
        stats = verdict.stats.as_dict()
        stats.pop("time_ms")
        assert stats == {
            "decisions": 0,
            "propagations": 3,
            "t_propagations": 1,
            "conflicts": 1,
            "learned": 1,
            "explanations": 1,
            "steps": 14,
        }

    def test_stats_reproducible_across_runs(self):
        first = solve(walkthrough_formula()).stats.as_dict()
        clear_caches()
        second = solve(walkthrough_formula()).stats.as_dict()
        first.pop("time_ms"), second.pop("time_ms")
        assert first == second

    def test_explanation_sink_records_the_lemma(self):
        sink = []
        verdict = solve(walkthrough_formula(), Config(explanation_sink=sink))
        assert verdict.status == "sat"
        assert len(sink) == verdict.stats.explanations == 1
        record = sink[0]
        assert isinstance(record, ExplanationRecord)
        assert record.literal in record.lemma
        # the lemma is valid over the whole space
        for a in F5.elements():
            for b in F5.elements():
                assert eval_clause(record.lemma, {1: a, 2: b})
        # all other literals are false under the snapshot assignment
        # once restricted to fully evaluated ones
        for lit in record.lemma.literals:
            if lit == record.literal:
                continue
            if lit.poly.variables() <= set(record.assignment):
                assert eval_constraint(lit, record.assignment) is False


class TestResolve:
    def test_merges_and_drops_pivot(self):
        pivot = eq(pvar(F5, 2) - const(F5, 1))
        keep_a = neq(pvar(F5, 1))
        keep_b = eq(pvar(F5, 1) - const(F5, 3))
        conflict = Clause([keep_a, pivot.negated()])
        explanation = Clause([pivot, keep_b])
        out = resolve(conflict, explanation, pivot)
        assert set(out.literals) == {keep_a, keep_b}

    def test_duplicate_literals_merge(self):
        pivot = eq(pvar(F5, 2))
        shared = neq(pvar(F5, 1))
        out = resolve(Clause([shared, pivot.negated()]),
                      Clause([pivot, shared]), pivot)
        assert out.literals == (shared,)

    def test_missing_pivot_negation_in_conflict(self):
        pivot = eq(pvar(F5, 1))
        with pytest.raises(ValueError):
            resolve(Clause([neq(pvar(F5, 2))]), Clause([pivot]), pivot)

    def test_missing_pivot_in_explanation(self):
        pivot = eq(pvar(F5, 1))
        with pytest.raises(ValueError):
            resolve(Clause([pivot.negated()]), Clause([neq(pvar(F5, 2))]),
                    pivot)


class TestCheckModel:
    def test_partial_model_raises(self):
        formula = walkthrough_formula()
        with pytest.raises(ValueError):
            check_model(formula, {1: F5.element(4)})

    def test_wrong_model_is_false(self):
        formula = walkthrough_formula()
        assert not check_model(formula, {1: F5.element(0),
                                         2: F5.element(0)})


class TestConfig:
    def test_var_order_must_be_permutation(self):
        formula = walkthrough_formula()
        with pytest.raises(ValueError):
            solve(formula, Config(var_order=[1, 1]))
        with pytest.raises(ValueError):
            solve(formula, Config(var_order=[1, 2, 3]))

    def test_reversed_var_order_still_sound(self):
        formula = walkthrough_formula()
        verdict = solve(formula, Config(var_order=[2, 1],
                                        validate="always"))
        assert verdict.status == "sat"
        assert check_model(formula, verdict.model)


class TestLimits:
    def test_step_limit_gives_unknown(self):
        verdict = solve(walkthrough_formula(), Config(max_steps=1))
        assert verdict.status == "unknown"
        assert verdict.reason == "step-limit"
        assert verdict.model is None

    def test_expired_timeout_gives_unknown(self):
        verdict = solve(walkthrough_formula(), Config(timeout_s=0.0))
        assert verdict.status == "unknown"
        assert verdict.reason == "timeout"


class TestEdgeCases:
    def test_no_clauses_is_sat_with_total_model(self):
        formula = Formula(F3, 2, [])
        verdict = solve(formula)
        assert verdict.status == "sat"
        assert set(verdict.model) == {1, 2}

    def test_empty_clause_is_unsat(self):
        formula = Formula(F3, 1, [Clause([])])
        assert solve(formula).status == "unsat"

    def test_unused_variable_still_assigned(self):
        formula = Formula(F5, 2, [Clause([eq(pvar(F5, 1) - const(F5, 1))])])
        verdict = solve(formula)
        assert verdict.status == "sat"
        assert set(verdict.model) == {1, 2}
        assert check_model(formula, verdict.model)

    def test_rootless_equation_is_unsat(self):
        # x1^2 = 2 has no solution over F_3
        formula = Formula(F3, 1, [Clause([eq(pvar(F3, 1) * pvar(F3, 1)
                                             - const(F3, 2))])])
        assert solve(formula, Config(validate="always")).status == "unsat"

    def test_universally_true_disequation(self):
        # x1^2 + 1 != 0 holds for every value over F_3
        formula = Formula(F3, 1, [Clause([neq(pvar(F3, 1) * pvar(F3, 1)
                                              + const(F3, 1))])])
        verdict = solve(formula)
        assert verdict.status == "sat"
        assert check_model(formula, verdict.model)


class TestOracleEquivalence:
    def test_random_formulas_match_brute_force(self):
        rng = random.Random(20260823)
        for F in (F3, F5):
            els = F.elements()
            for _ in range(25):
                clauses = []
                for _ in range(rng.randint(1, 4)):
                    lits = []
                    for _ in range(rng.randint(1, 2)):
                        terms = {}
                        for _ in range(rng.randint(1, 3)):
                            vs = sorted(rng.sample([1, 2, 3],
                                                   rng.randint(0, 2)))
                            m = tuple((v, rng.randint(1, 2)) for v in vs)
                            terms[m] = els[rng.randrange(1, len(els))]
                        rel = Rel.EQ if rng.random() < 0.7 else Rel.NEQ
                        lits.append(Constraint(Polynomial(F, terms), rel))
                    clauses.append(Clause(lits))
                formula = Formula(F, 3, clauses)
                got = solve(formula, Config(validate="always"))
                want = brute_solve(formula)
                assert got.status == want.status, str(formula)
                if got.status == "sat":
                    assert check_model(formula, got.model)
