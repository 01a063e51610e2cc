"""Sparse polynomials: accessors, pseudo-division, subresultant chains."""

import random

import pytest

from gfsat.field import extension_field, prime_field
from gfsat.poly import (
    DegreeOrder,
    NotDivisible,
    Polynomial,
    ZeroPolynomial,
    exact_div,
    lex_compare,
    pseudo_divmod,
    pseudo_quo,
    pseudo_rem,
    reduce_exponents,
    render_poly,
    subresultant_chain,
    univariate_gcd,
)

F5 = prime_field(5)
F3 = prime_field(3)


def c5(z):
    return Polynomial.constant(F5.element(z))


def var(v, e=1, field=F5):
    return Polynomial.variable(field, v, e)


def rand_poly(rng, field, nvars, max_terms=4, max_exp=2):
    p = Polynomial.zero(field)
    for _ in range(rng.randint(1, max_terms)):
        m = Polynomial.constant(field.elements()[rng.randrange(1, field.q)])
        for v in range(1, nvars + 1):
            e = rng.randint(0, max_exp)
            if e:
                m = m * Polynomial.variable(field, v, e)
        p = p + m
    return p


# -- accessor conventions ----------------------------------------------------

def test_zero_polynomial_accessors():
    z = Polynomial.zero(F5)
    assert z.is_zero()
    assert z.degree_in(1) == -1
    assert z.total_degree() == -1
    assert z.reductum(1).is_zero()
    assert z.level() == 0


def test_absent_variable_conventions():
    p = var(1) + c5(2)  # x1 + 2, no x2
    assert p.degree_in(2) == 0
    assert p.lead_coeff(2) == p
    assert p.reductum(2).is_zero()


def test_lead_coeff_and_reductum():
    p = c5(3) * var(2, 2) * var(1) + var(2) + c5(1)
    assert p.degree_in(2) == 2
    assert p.lead_coeff(2) == c5(3) * var(1)
    assert p.reductum(2) == var(2) + c5(1)
    assert p.level() == 2


def test_coeffs_in():
    p = c5(2) * var(2, 2) + var(1) * var(2, 2) + var(1, 2)
    cs = p.coeffs_in(2)
    assert set(cs) == {0, 2}
    assert cs[2] == c5(2) + var(1)
    assert cs[0] == var(1, 2)


def test_evaluate_and_substitute():
    p = var(1) * var(2) + c5(3)
    a = {1: F5.element(2), 2: F5.element(4)}
    assert p.evaluate(a) == F5.element(1)
    half = p.substitute({1: F5.element(2)})
    assert half == c5(2) * var(2) + c5(3)


# -- ordering and rendering --------------------------------------------------

def test_lex_order_and_render():
    p = var(1) + var(2) + var(1) * var(2) + c5(1)
    assert render_poly(p) == "x2*x1 + x2 + x1 + 1"
    assert lex_compare(((2, 1),), ((1, 2),)) == 1
    assert lex_compare(((1, 1),), ((1, 1),)) == 0


def test_render_extension_coefficients():
    F4 = extension_field(2, 2)
    a = F4.from_coeffs([0, 1])
    p = Polynomial.constant(a) * Polynomial.variable(F4, 1, 1) \
        + Polynomial.constant(F4.from_coeffs([1, 1]))
    assert render_poly(p) == "(a)*x1 + (1+a)"


# -- pseudo-division ---------------------------------------------------------

def test_pseudo_division_golden():
    # dividing 3*x2*x1^2 + x1 by x2 + x1 in x2
    f = var(2) + var(1)
    g = c5(3) * var(2) * var(1, 2) + var(1)
    quo, rem = pseudo_divmod(g, f, 2)
    assert quo == c5(3) * var(1, 2)
    assert rem == c5(2) * var(1, 3) + var(1)
    assert pseudo_quo(g, f, 2) == quo
    assert pseudo_rem(g, f, 2) == rem


def test_pseudo_division_identity_random():
    rng = random.Random(7)
    for field in (F3, F5, extension_field(2, 2)):
        for _ in range(120):
            g = rand_poly(rng, field, 2)
            f = rand_poly(rng, field, 2)
            if f.degree_in(2) < 1:
                continue
            quo, rem = pseudo_divmod(g, f, 2)
            d = max(g.degree_in(2) - f.degree_in(2) + 1, 0)
            lhs = f.lead_coeff(2) ** d * g
            assert lhs == quo * f + rem
            assert rem.degree_in(2) < f.degree_in(2)


def test_pseudo_division_by_zero():
    with pytest.raises(ZeroPolynomial):
        pseudo_divmod(var(1), Polynomial.zero(F5), 1)


# -- exact division ----------------------------------------------------------

def test_exact_div_roundtrip_random():
    rng = random.Random(11)
    for _ in range(80):
        f = rand_poly(rng, F5, 2)
        g = rand_poly(rng, F5, 2)
        if g.is_zero():
            continue
        assert exact_div(f * g, g) == f


def test_exact_div_rejects_nondivisor():
    with pytest.raises(NotDivisible):
        exact_div(var(1) + c5(1), var(2))


# -- subresultant chains -----------------------------------------------------

def test_subresultant_chain_golden():
    # f = x3^2 + x3*x2 + 4, g = x3*x2 + x1 in x3 over F_5
    f = var(3, 2) + var(3) * var(2) + c5(4)
    g = var(3) * var(2) + var(1)
    chain = subresultant_chain(f, g, 3)
    assert [str(h) for h in chain] == [
        "x3*x2 + x1",
        "4*x2^2*x1 + 4*x2^2 + x1^2",
    ]


def test_subresultant_chain_golden_specialization():
    f = var(3, 2) + var(3) * var(2) + c5(4)
    g = var(3) * var(2) + var(1)
    nu = {1: F5.element(3), 2: F5.element(1)}
    fs, gs = f.substitute(nu), g.substitute(nu)
    gcd = univariate_gcd(fs, gs)
    assert str(gcd) == "x3 + 3"  # x3 - 2
    chain = subresultant_chain(f, g, 3)
    # the last chain member regular at nu agrees with the gcd up to a scalar
    h = chain[-1].substitute(nu)
    assert h.is_zero()  # bottom member vanishes at nu
    h2 = chain[0].substitute(nu)
    lead = h2.lead_coeff(3).constant_value()
    assert h2.scale(lead.inverse()) == gcd


def test_subresultant_chain_requires_degree_order():
    f = var(3) * var(2) + var(1)
    g = var(3, 2) + c5(1)
    with pytest.raises(DegreeOrder):
        subresultant_chain(f, g, 3)


def test_subresultant_chain_equal_degrees():
    f = var(3) + var(1)
    g = var(3) + var(2)
    chain = subresultant_chain(f, g, 3)
    assert chain[0] == g
    assert chain[-1] == var(1) + c5(4) * var(2)  # x1 - x2


def _specialization_gcd_degree(f, g, nu, x):
    fs, gs = f.substitute(nu), g.substitute(nu)
    return univariate_gcd(fs, gs).degree_in(x)


def test_subresultant_specialization_property_random():
    # at any point keeping both leading coefficients nonzero, the last chain
    # member regular there matches the gcd of the specializations up to scale
    rng = random.Random(23)
    checked = 0
    for _ in range(3000):
        if checked >= 60:
            break
        f = rand_poly(rng, F5, 2, max_terms=4, max_exp=2)
        g = rand_poly(rng, F5, 2, max_terms=4, max_exp=2)
        df, dg = f.degree_in(2), g.degree_in(2)
        if not (df >= dg >= 1):
            continue
        nu = {1: F5.elements()[rng.randrange(5)]}
        if f.lead_coeff(2).substitute(nu).is_zero():
            continue
        if g.lead_coeff(2).substitute(nu).is_zero():
            continue
        chain = subresultant_chain(f, g, 2)
        # walk from the bottom: the first member not vanishing at nu, when
        # regular there, carries the gcd of the specializations
        lowest = None
        for h in reversed(chain):
            if not h.substitute(nu).is_zero():
                lowest = h
                break
        assert lowest is not None
        hs = lowest.substitute(nu)
        if hs.degree_in(2) == lowest.degree_in(2):
            gcd = univariate_gcd(f.substitute(nu), g.substitute(nu))
            expect = _specialization_gcd_degree(f, g, nu, 2)
            assert hs.degree_in(2) == gcd.degree_in(2) == expect
            lead = hs.lead_coeff(2)
            assert lead.is_constant()
            assert hs.scale(lead.constant_value().inverse()) == gcd
            checked += 1
    assert checked >= 60


# -- exponent reduction ------------------------------------------------------

@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (4, 2), (5, 1)])
def test_reduce_exponents_preserves_evaluation(q, n):
    from gfsat.field import Field
    from itertools import product
    field = Field.of_order(q)
    rng = random.Random(q * 100 + n)
    for _ in range(20):
        p = rand_poly(rng, field, n, max_terms=4, max_exp=2 * q)
        r = reduce_exponents(p)
        for m in r.terms:
            assert all(1 <= e <= q - 1 or (q == 2 and e == 1) for _, e in m)
        for point in product(field.elements(), repeat=n):
            a = {i + 1: point[i] for i in range(n)}
            assert p.evaluate(a) == r.evaluate(a)


def test_univariate_gcd_basics():
    x = var(1)
    f = (x + c5(1)) * (x + c5(2))
    g = (x + c5(1)) * (x + c5(3))
    assert univariate_gcd(f, g) == x + c5(1)
    assert univariate_gcd(f, Polynomial.zero(F5)) == f  # f is already monic
