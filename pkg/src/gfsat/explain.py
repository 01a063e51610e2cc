"""Conflict explanations for the model-constructing search.

When a clause has no literal the current partial assignment can still accept,
the engine asks this module for a lemma: a clause, valid over the field, whose
literals mention only variables below the current one plus the constraints
already on the trail.  The lemma is produced by projecting the blocking
polynomial system one variable down.

Projection comes in two strengths:

* ``coeff_projection`` handles a single polynomial ``a``: writing ``a`` as a
  polynomial in its top variable with coefficient polynomials ``c_i``, it
  returns the disequalities ``c_i - c_i(alpha) != 0`` (identically-zero ones
  dropped).  A lower-level point falsifying all of them gives ``a`` the same
  univariate shadow as ``alpha`` did, so it inherits the same satisfying
  values.

* ``srs_projection`` handles a system of equations and disequations sharing a
  top variable.  It walks a zero-decomposition recursion: at each step it
  either terminates on a polynomial free of the top variable, descends into a
  reductum when a leading coefficient vanishes at ``alpha``, or splits off a
  subresultant chain of two system members and branches on which chain member
  is regular (nonzero leading coefficient) at ``alpha``.  Each guard tested
  along the way splits the space of lower-level points in two; the recursion
  follows the side ``alpha`` is on and records a constraint describing the
  other side: the guard itself when it failed at ``alpha``, its negation when
  it held.  The recorded constraints therefore cover every zero of the system
  the visited branch does not account for, which is exactly what the lemma
  needs.  Guards that degenerate to constants carry no covering information
  and are not recorded.

The final clause is assembled from the negations of the trail constraints
involved plus the recorded projection constraints, then normalised by exponent
reduction so every literal is in the solver's canonical form.

Projection cost is bounded by a structural work cap on its internal algebra;
past it ``explain`` raises StepLimit and the engine falls back to
``assignment_lemma``, which justifies the same propagation by pinning the
current lower-variable assignment instead of projecting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import poly as poly_mod
from .field import Field, FieldElement
from .formula import Clause, Constraint, Rel
from .limits import Budget
from .poly import (
    DegreeOrder,
    Polynomial,
    WorkCapExceeded,
    pseudo_quo,
    reduce_exponents,
    subresultant_chain,
)
from .trail import Trail


class ExplainError(RuntimeError):
    pass


class GuardViolated(ExplainError):
    """A precondition of the explanation routine does not hold."""


class StepLimit(ExplainError):
    """The projection exceeded its round limit or its algebra work cap.

    The caller can fall back to ``assignment_lemma``, which is always cheap.
    """


TraceFn = Callable[[str, Polynomial, bool], None]

# Chains and whole projections are pure functions of their inputs, and the
# same systems recur across explanations, so both are memoised module-wide.
# A None value marks an input whose computation previously hit the work cap.
_CHAIN_CACHE: Dict[Tuple[Polynomial, Polynomial, int],
                   Optional[Tuple[Polynomial, ...]]] = {}
_PROJ_CACHE: Dict[Tuple["PolySystem", frozenset],
                  Optional[Tuple[Constraint, ...]]] = {}
_CACHE_MAX = 4096

# Bound on the term-pair count of any single multiplication inside a chain or
# pseudo-quotient.  Coefficients of chain elements are minors whose entries
# multiply up; on dense many-variable systems they outgrow any practical
# budget, so past this structural (time-independent) threshold the projection
# raises StepLimit and the caller switches to the assignment fallback lemma.
_OP_CAP = 60_000


def clear_caches() -> None:
    """Drop all module-level memo tables (chains, projections, monomial
    products).  Results never change; this only forces recomputation, e.g.
    so tests can observe trace callbacks or so benchmark instances can be
    timed from a cold start."""
    _CHAIN_CACHE.clear()
    _PROJ_CACHE.clear()
    poly_mod._MUL_MEMO.clear()


@dataclass(frozen=True)
class PolySystem:
    """Equations and disequations sharing a top variable.

    A point over variables ``1..top_var`` is a zero of the system when every
    equation polynomial vanishes on it and no disequation polynomial does.
    """

    eqs: Tuple[Polynomial, ...]
    neqs: Tuple[Polynomial, ...]
    top_var: int
    field: Field

    @classmethod
    def of_constraints(cls, constraints: Sequence[Constraint], top_var: int,
                       field: Field) -> "PolySystem":
        eqs = tuple(c.poly for c in constraints if c.rel is Rel.EQ)
        neqs = tuple(c.poly for c in constraints if c.rel is Rel.NEQ)
        return cls(eqs, neqs, top_var, field)

    def constraints(self) -> List[Constraint]:
        return ([Constraint(p, Rel.EQ) for p in self.eqs]
                + [Constraint(p, Rel.NEQ) for p in self.neqs])


def _shrink(p: Polynomial, x: int) -> Polynomial:
    """Reduce exponents of the variables below ``x``, leaving ``x`` intact.

    Evaluation over the field is preserved (a^q = a), which is all the
    projection relies on, and it keeps the working polynomials from blowing
    up as chains and pseudo-quotients stack multiplications.  On the rare
    cancellation that would change the degree in ``x`` -- the recursion
    branches on that structure -- the original polynomial is kept.
    """
    step = p.field.q - 1
    terms: Dict = {}
    for m, c in p.terms.items():
        nm = tuple((v, e if v == x else (e - 1) % step + 1) for v, e in m)
        if nm in terms:
            s = terms[nm] + c
            if s.is_zero():
                del terms[nm]
            else:
                terms[nm] = s
        else:
            terms[nm] = c
    red = Polynomial._make(p.field, terms)
    if red.degree_in(x) != p.degree_in(x):
        return p
    return red


def coeff_projection(a: Polynomial, alpha: Dict[int, FieldElement],
                     x: Optional[int] = None,
                     trace: Optional[TraceFn] = None) -> List[Constraint]:
    """Constraints pinning the coefficients of ``a`` (in variable ``x``) to
    the values they take at ``alpha``.

    Returns disequalities ``c_i - c_i(alpha) != 0`` for each coefficient
    ``c_i``, ordered by descending degree of the attached power of ``x``;
    members that reduce to the zero polynomial are dropped.  All returned
    constraints are false at ``alpha``, and any lower-level point falsifying
    all of them gives ``a`` the same shadow in ``x`` as ``alpha``.
    """
    if a.is_zero():
        return []
    if x is None:
        x = a.lead_var()
    out: List[Constraint] = []
    coeffs = a.coeffs_in(x)
    for d in sorted(coeffs, reverse=True):
        c = coeffs[d]
        gamma = c.evaluate(alpha)
        diff = c - Polynomial.constant(gamma)
        if diff.is_zero():
            continue
        cons = Constraint(diff, Rel.NEQ)
        if trace is not None:
            trace("coeff-pin", diff, False)
        out.append(cons)
    return out


def srs_projection(system: PolySystem, alpha: Dict[int, FieldElement],
                   trace: Optional[TraceFn] = None,
                   max_rounds: int = 100_000,
                   budget: Optional[Budget] = None) -> List[Constraint]:
    """Project a polynomial system below its top variable at point ``alpha``.

    Walks the zero-decomposition recursion described in the module docstring
    and records one constraint per guard tested along the way -- the guard
    itself when it failed at ``alpha``, its negation when it held --
    deduplicated, in discovery order, plus the terminal constraint of the
    branch ``alpha`` itself follows.  Guards whose polynomial is constant are
    skipped.  Every returned constraint is false at ``alpha`` and mentions
    only variables below ``system.top_var``.

    Raises StepLimit when the round limit is hit or the internal algebra
    exceeds its work cap; both triggers are structural, so the same inputs
    always succeed or always fail.

    Results are memoised per (system, alpha restricted to the variables the
    system mentions); the trace callback fires only when the projection is
    actually computed.
    """
    relevant = set()
    for member in system.eqs + system.neqs:
        relevant |= member.variables()
    relevant.discard(system.top_var)
    key = (system, frozenset((v, c) for v, c in alpha.items()
                             if v in relevant))
    if key in _PROJ_CACHE:
        hit = _PROJ_CACHE[key]
        if hit is None:
            raise StepLimit("projection previously hit its work cap")
        return list(hit)
    try:
        out = _run_projection(system, alpha, trace, max_rounds, budget)
    except (StepLimit, WorkCapExceeded) as exc:
        if len(_PROJ_CACHE) >= _CACHE_MAX:
            _PROJ_CACHE.clear()
        _PROJ_CACHE[key] = None
        raise StepLimit(str(exc)) from None
    if len(_PROJ_CACHE) >= _CACHE_MAX:
        _PROJ_CACHE.clear()
    _PROJ_CACHE[key] = tuple(out)
    return out


def _run_projection(system: PolySystem, alpha: Dict[int, FieldElement],
                    trace: Optional[TraceFn], max_rounds: int,
                    budget: Optional[Budget]) -> List[Constraint]:
    x = system.top_var
    field = system.field
    P: List[Polynomial] = [_shrink(p, x) for p in system.eqs if not p.is_zero()]
    Q: List[Polynomial] = [_shrink(q, x) for q in system.neqs]

    tracked: List[Constraint] = []
    tracked_set = set()

    def emit(poly: Polynomial, rel: Rel, label: str,
             held: bool = False) -> None:
        if poly.is_constant():
            return
        cons = Constraint(poly, rel)
        if cons not in tracked_set:
            tracked_set.add(cons)
            tracked.append(cons)
            if trace is not None:
                trace(label, poly, held)

    def value_at(p: Polynomial) -> FieldElement:
        return p.evaluate(alpha)

    def remove(seq: List[Polynomial], item: Polynomial) -> List[Polynomial]:
        out = list(seq)
        out.remove(item)
        return out

    def chain_for(f: Polynomial, g: Polynomial) -> List[Polynomial]:
        # The chain wants strictly ordered degrees; on a tie the first
        # argument is padded internally, so only a genuine reversal swaps.
        if f.degree_in(x) < g.degree_in(x):
            f, g = g, f
        key = (f, g, x)
        if key in _CHAIN_CACHE:
            hit = _CHAIN_CACHE[key]
            if hit is None:
                raise WorkCapExceeded("chain previously hit its work cap")
            return list(hit)
        try:
            chain = subresultant_chain(f, g, x, budget=budget, cap=_OP_CAP)
        except WorkCapExceeded:
            if len(_CHAIN_CACHE) >= _CACHE_MAX:
                _CHAIN_CACHE.clear()
            _CHAIN_CACHE[key] = None
            raise
        hit = tuple(_shrink(h, x) for h in chain)
        if len(_CHAIN_CACHE) >= _CACHE_MAX:
            _CHAIN_CACHE.clear()
        _CHAIN_CACHE[key] = hit
        return list(hit)

    rounds = 0
    while True:
        rounds += 1
        if rounds > max_rounds:
            raise StepLimit(f"projection exceeded {max_rounds} rounds")
        if budget is not None:
            budget.check()

        # Terminal exits: a member free of the top variable already decides
        # the branch.  An equation that is nonzero at alpha (no zeros exist
        # on this branch), or a disequation that vanishes at alpha.
        done = None
        for p in P:
            if p.degree_in(x) <= 0 and not value_at(p).is_zero():
                done = (p, Rel.EQ, "eq-terminal")
                break
        if done is None:
            for q in Q:
                if q.degree_in(x) <= 0 and value_at(q).is_zero():
                    done = (q, Rel.NEQ, "neq-terminal")
                    break
        if done is not None:
            emit(*done)
            return tracked

        p_top = [p for p in P if p.degree_in(x) > 0]
        q_top = [q for q in Q if q.degree_in(x) > 0]
        if not p_top and not q_top:
            # Nothing carries the top variable and no terminal fired: the
            # residual system puts no further condition on alpha.
            return tracked

        if p_top:
            p = min(p_top, key=lambda t: t.degree_in(x))
            lp = p.lead_coeff(x)
            if value_at(lp).is_zero():
                # Leading coefficient vanishes at alpha: descend into the
                # reductum; the branch not taken keeps it nonzero.
                emit(lp, Rel.NEQ, "lead-coeff-guard", held=True)
                P = remove(P, p) + [p.reductum(x)]
                continue
            emit(lp, Rel.EQ, "lead-coeff-guard")

            if len(p_top) > 1:
                other = next(t for t in p_top if t is not p)
                chain = chain_for(other, p)
                nxt = _chain_branch_eq(P, Q, p, other, chain, x, value_at,
                                       emit)
                if nxt is not None:
                    P, Q = nxt
                    continue
            elif q_top:
                q = q_top[0]
                chain = chain_for(q, p)
                nxt = _chain_branch_neq(P, Q, p, q, chain, x, value_at,
                                        emit)
                if nxt is not None:
                    P, Q = nxt
                    continue
            else:
                chain = None

            # Fallback: every chain guard failed (or there was nothing to
            # pair with).  Pin the coefficients of p and drop it.
            for cons in coeff_projection(p, alpha, x, trace=trace):
                emit(cons.poly, cons.rel, "eq-coeff-projection")
            P = remove(P, p)
            if any(t.degree_in(x) > 0 for t in P) or q_top:
                continue
            return tracked

        # Only disequations carry the top variable.
        descended = False
        for q in q_top:
            lq = q.lead_coeff(x)
            if value_at(lq).is_zero():
                emit(lq, Rel.NEQ, "neq-lead-guard", held=True)
                Q = remove(Q, q) + [q.reductum(x)]
                descended = True
                break
            emit(lq, Rel.EQ, "neq-lead-guard")
        if descended:
            continue

        # All top-carrying disequations are regular at alpha: pinning the
        # coefficients of their product fixes the set of excluded values.
        prod = Polynomial.one(field)
        for q in q_top:
            if len(prod.terms) * len(q.terms) > _OP_CAP:
                raise WorkCapExceeded("disequation product exceeds the work cap")
            prod = _shrink(prod * q, x)
        for cons in coeff_projection(prod, alpha, x, trace=trace):
            emit(cons.poly, cons.rel, "neq-coeff-projection")
        return tracked


def _chain_branch_eq(P, Q, p, other, chain, x, value_at, emit):
    """Branch selection for two equations sharing the top variable.

    Returns the next (P, Q) pair, or None when every guard failed and the
    caller should fall back to coefficient projection.  Each guard records
    its negation when it holds (the branch taken assumes it) and itself when
    it fails.

    A taken branch replaces the pair by the surviving chain member plus the
    leading coefficients of every member below it -- over the *whole* chain.
    Keeping the skipped bottom members' leads matters: the lowest one is the
    chain's resultant-like member, and dropping it would let the residual
    claim more zeros than the pair has.
    """
    work = list(chain)
    leads = [h.lead_coeff(x) for h in work]
    limit = len(work)
    if work and work[-1].degree_in(x) == 0 and len(work) >= 2:
        # The chain bottoms out below the top variable; if the member above
        # it is regular at alpha, the pair collapses to the last two chain
        # members.
        guard = leads[-2]
        if not value_at(guard).is_zero():
            emit(guard, Rel.EQ, "srs-tail-guard", held=True)
            new_p = [t for t in P if t is not p and t is not other]
            return new_p + [work[-1], work[-2]], Q
        emit(guard, Rel.NEQ, "srs-tail-guard")
        limit = len(work) - 2
    for i in range(limit - 1, -1, -1):
        guard = leads[i]
        if not value_at(guard).is_zero():
            emit(guard, Rel.EQ, "srs-chain-guard", held=True)
            new_p = [t for t in P if t is not p and t is not other]
            return new_p + [work[i]] + leads[i + 1:], Q
        emit(guard, Rel.NEQ, "srs-chain-guard")
    return None


def _chain_branch_neq(P, Q, p, q, chain, x, value_at, emit):
    """Branch selection for an equation paired with a disequation.

    On success the equation is replaced by a pseudo-quotient against the
    regular chain member (pulling the common part out of the equation); the
    disequation is dropped only in the bottom-member case.  Guard recording
    follows the same rule as in the two-equation branch.
    """
    work = list(chain)
    leads = [h.lead_coeff(x) for h in work]
    limit = len(work)
    if work and work[-1].degree_in(x) == 0:
        guard = leads[-1]
        if not value_at(guard).is_zero():
            emit(guard, Rel.EQ, "srs-bottom-guard", held=True)
            new_p = remove_first(P, p) + [
                _shrink(pseudo_quo(p, work[-1], x, cap=_OP_CAP), x)]
            return new_p, remove_first(Q, q)
        emit(guard, Rel.NEQ, "srs-bottom-guard")
        limit = len(work) - 1
    for i in range(limit - 1, -1, -1):
        guard = leads[i]
        if not value_at(guard).is_zero():
            emit(guard, Rel.EQ, "srs-chain-guard", held=True)
            new_p = (remove_first(P, p)
                     + [_shrink(pseudo_quo(p, work[i], x, cap=_OP_CAP), x)]
                     + leads[i + 1:])
            return new_p, Q
        emit(guard, Rel.NEQ, "srs-chain-guard")
    return None


def remove_first(seq: List[Polynomial], item: Polynomial) -> List[Polynomial]:
    out = list(seq)
    out.remove(item)
    return out


def conflict_input(f: Constraint, trail: Trail
                   ) -> Tuple[List[Constraint], PolySystem, Dict[int, FieldElement]]:
    """Collect the blocking set for constraint ``f`` against the trail.

    Preconditions: ``f`` has the trail's current level, and no value of the
    current variable satisfies both the trail constraints and the negation of
    ``f`` (otherwise there is nothing to explain).

    The blocking set is minimised: walking the same-level trail constraints
    in trail order, only those that strictly shrink the set of values still
    satisfying the negation are kept.  Any subset that empties that set is
    already unsatisfiable together with the negation, so the lemma built from
    it stays valid while mentioning fewer literals, and each kept constraint
    removes at least one of the at most q candidate values, bounding the
    projection system at q+1 polynomials.
    """
    k = trail.level
    if f.level() != k:
        raise GuardViolated(
            f"constraint level {f.level()} differs from trail level {k}")
    neg = f.negated()
    if trail.compatible(neg):
        raise GuardViolated("negated constraint is still satisfiable")
    rest = trail.satisfying(neg)
    chosen: List[Constraint] = []
    for c in trail.level_constraints(k):
        if not rest:
            break
        narrowed = rest & trail.satisfying(c)
        if narrowed != rest:
            chosen.append(c)
            rest = narrowed
    blocking = chosen + [neg]
    system = PolySystem.of_constraints(blocking, k, trail.field)
    alpha = dict(trail.assignment)
    return blocking, system, alpha


def normalize_clause(clause: Clause) -> Clause:
    """Canonical form: reduce exponents in every literal, drop literals that
    collapse to a false constant, keep constant-true ones (they make the
    clause a tautology, which the caller treats as such)."""
    lits: List[Constraint] = []
    for lit in clause.literals:
        poly = reduce_exponents(lit.poly)
        cons = Constraint(poly, lit.rel)
        if cons.is_constant() and not cons.constant_truth():
            continue
        lits.append(cons)
    return Clause(lits)


def explain(f: Constraint, trail: Trail,
            trace: Optional[TraceFn] = None,
            budget: Optional[Budget] = None) -> Clause:
    """Lemma justifying the propagation of ``f`` on the given trail.

    The returned clause contains the negation of every same-level trail
    constraint, the constraint ``f`` itself, and projection constraints over
    lower variables; it is valid over the field, and every literal other than
    ``f`` is false on the trail.
    """
    blocking, system, alpha = conflict_input(f, trail)
    if len(blocking) == 1:
        projected = coeff_projection(blocking[0].poly, alpha,
                                     x=system.top_var, trace=trace)
    else:
        projected = srs_projection(system, alpha, trace=trace, budget=budget)
    lits = [c.negated() for c in blocking] + projected
    return normalize_clause(Clause(lits))


def assignment_lemma(f: Constraint, trail: Trail) -> Clause:
    """Fallback lemma for ``f`` that pins the lower-variable assignment.

    Same contract as ``explain`` but never expensive: instead of projection
    constraints it carries one disequality ``x_v - value != 0`` per lower
    variable the blocking set mentions.  Valid because a point agreeing with
    the trail on those variables reproduces the exact shadows under which the
    blocking set was found unsatisfiable in the current variable.  Weaker
    than a projection lemma (it excludes a single lower-level point), but
    always available when the projection work cap is hit.
    """
    blocking, system, alpha = conflict_input(f, trail)
    field = trail.field
    used = set()
    for c in blocking:
        used |= c.poly.variables()
    used.discard(system.top_var)
    lits = [c.negated() for c in blocking]
    for v in sorted(used):
        pin = Polynomial.variable(field, v) - Polynomial.constant(alpha[v])
        lits.append(Constraint(pin, Rel.NEQ))
    return normalize_clause(Clause(lits))
