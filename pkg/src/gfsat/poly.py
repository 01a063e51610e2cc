"""Sparse multivariate polynomials over a finite field.

A monomial is a tuple of (variable, exponent) pairs, sorted by variable
index, with strictly positive exponents; the empty tuple is the monomial 1.
A polynomial maps monomials to nonzero field elements.  Variables are plain
integers 1, 2, ... and are ordered by index; the term order is lexicographic
with respect to that variable order, comparing exponents at the highest
variable where two monomials differ (so x1^2*x2 < x2^2 and x1 < x2).

Conventions for the main-variable accessors follow triangular-set usage:
if x does not occur in p then degree_in(p, x) = 0, lead_coeff(p, x) = p and
reductum(p, x) = 0.  degree_in of the zero polynomial is the internal
sentinel -1.

The subresultant chain is computed from determinant polynomials of the
Sylvester-style coefficient matrices, evaluated with fraction-free Gaussian
elimination, rather than by a pseudo-remainder sequence.  When both inputs
have the same degree in x the first argument is given formal degree
deg(g) + 1 (a zero-padded leading row).  This convention pins down the exact
leading-coefficient multiples the chain members carry, which the projection
code and its frozen expected values rely on.
"""

from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .field import Field, FieldElement, FieldMismatch

Mono = Tuple[Tuple[int, int], ...]


class PolyError(ValueError):
    """Base class for polynomial errors."""


class ZeroPolynomial(PolyError):
    pass


class IncompleteAssignment(PolyError):
    pass


class DegreeOrder(PolyError):
    pass


class NotDivisible(PolyError):
    pass


class WorkCapExceeded(PolyError):
    """An optional work cap on coefficient growth was hit.

    Raised by the routines that accept a ``cap`` argument before performing a
    polynomial multiplication whose term-pair count would exceed the cap.
    The trigger depends only on the inputs, never on elapsed time.
    """


# ---------------------------------------------------------------------------
# monomial helpers

def lex_key(mono: Mono) -> Tuple[Tuple[int, int], ...]:
    """Sort key realizing the lexicographic term order (higher key = larger).

    Monomials are kept sorted by ascending variable index, so the key is just
    the reversed tuple.
    """
    return mono[::-1]


def _heap_key(mono: Mono) -> Tuple[Tuple[int, ...], ...]:
    """Min-heap key that pops the lex-largest monomial first.

    Negating both members of each pair flips the comparison; the sentinel
    pair compares above every real (negated) pair, so a monomial that is a
    proper prefix of another keys *larger*, matching its smaller lex order.
    """
    return tuple((-v, -e) for v, e in reversed(mono)) + ((1,),)


def lex_compare(m1: Mono, m2: Mono) -> int:
    """-1, 0 or 1 as m1 <, =, > m2 in the lexicographic term order."""
    k1, k2 = lex_key(m1), lex_key(m2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    # merge two var-sorted exponent tuples
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_div(m1: Mono, m2: Mono) -> Optional[Mono]:
    """m1 / m2, or None when m2 does not divide m1."""
    if not m2:
        return m1
    out = []
    i = 0
    n1 = len(m1)
    for v2, e2 in m2:
        while i < n1 and m1[i][0] < v2:
            out.append(m1[i])
            i += 1
        if i >= n1 or m1[i][0] != v2:
            return None
        e1 = m1[i][1]
        if e1 < e2:
            return None
        if e1 > e2:
            out.append((v2, e1 - e2))
        i += 1
    out.extend(m1[i:])
    return tuple(out)


# Product monomials recur heavily inside chain computations; memoising the
# merge is a pure speedup (cleared wholesale when full, never affecting
# results).
_MUL_MEMO: Dict[Tuple[Mono, Mono], Mono] = {}
_MUL_MEMO_MAX = 1 << 18


class Polynomial:
    """Immutable sparse polynomial; do not mutate the terms dict."""

    __slots__ = ("field", "terms", "_hash", "_degs")

    def __init__(self, field: Field, terms: Mapping[Mono, FieldElement]):
        self.field = field
        canon: Dict[Mono, FieldElement] = {}
        for m, c in terms.items():
            if c.is_zero():
                continue
            if any(e <= 0 for _, e in m) or any(
                    m[i][0] >= m[i + 1][0] for i in range(len(m) - 1)):
                exps: Dict[int, int] = {}
                for v, e in m:
                    if e < 0:
                        raise PolyError("negative exponent in a monomial")
                    exps[v] = exps.get(v, 0) + e
                m = tuple(sorted((v, e) for v, e in exps.items() if e))
            if m in canon:
                s = canon[m] + c
                if s.is_zero():
                    del canon[m]
                else:
                    canon[m] = s
            else:
                canon[m] = c
        self.terms: Dict[Mono, FieldElement] = canon
        self._hash: Optional[int] = None
        self._degs: Optional[Dict[int, int]] = None

    @classmethod
    def _make(cls, field: Field, terms: Dict[Mono, FieldElement]) -> "Polynomial":
        p = object.__new__(cls)
        p.field = field
        p.terms = terms
        p._hash = None
        p._degs = None
        return p

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls._make(field, {})

    @classmethod
    def one(cls, field: Field) -> "Polynomial":
        return cls.constant(field.one)

    @classmethod
    def constant(cls, c: FieldElement) -> "Polynomial":
        if c.is_zero():
            return cls._make(c.field, {})
        return cls._make(c.field, {(): c})

    @classmethod
    def variable(cls, field: Field, v: int, exp: int = 1) -> "Polynomial":
        if v < 1 or exp < 1:
            raise PolyError("variable index and exponent must be positive")
        return cls._make(field, {((v, exp),): field.one})

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> FieldElement:
        if not self.terms:
            return self.field.zero
        if self.is_constant():
            return self.terms[()]
        raise PolyError("polynomial is not constant")

    def variables(self) -> Set[int]:
        out: Set[int] = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def lead_var(self) -> int:
        """Largest variable occurring in the polynomial."""
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading variable")
        best = 0
        for m in self.terms:
            for v, _ in m:
                if v > best:
                    best = v
        if best == 0:
            raise PolyError("constant polynomial has no leading variable")
        return best

    def level(self) -> int:
        """Leading variable index, or 0 for constants (including 0)."""
        if self.is_constant():
            return 0
        return self.lead_var()

    def degree_in(self, x: int) -> int:
        """Degree in x; 0 when x is absent, -1 for the zero polynomial."""
        if not self.terms:
            return -1
        degs = self._degs
        if degs is None:
            degs = self._degs = {}
        elif x in degs:
            return degs[x]
        best = 0
        for m in self.terms:
            for v, e in m:
                if v == x and e > best:
                    best = e
        degs[x] = best
        return best

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def coeffs_in(self, x: int) -> Dict[int, "Polynomial"]:
        """Map degree-in-x -> coefficient polynomial (in the other variables)."""
        buckets: Dict[int, Dict[Mono, FieldElement]] = {}
        for m, c in self.terms.items():
            d = 0
            rest = m
            for i, (v, e) in enumerate(m):
                if v == x:
                    d = e
                    rest = m[:i] + m[i + 1:]
                    break
            buckets.setdefault(d, {})[rest] = c
        return {d: Polynomial._make(self.field, t) for d, t in buckets.items()}

    def lead_coeff(self, x: int) -> "Polynomial":
        """Coefficient of the highest power of x (p itself when x is absent)."""
        d = self.degree_in(x)
        if d <= 0:
            return self
        terms: Dict[Mono, FieldElement] = {}
        for m, c in self.terms.items():
            for i, (v, e) in enumerate(m):
                if v == x and e == d:
                    terms[m[:i] + m[i + 1:]] = c
                    break
        return Polynomial._make(self.field, terms)

    def reductum(self, x: int) -> "Polynomial":
        """p minus its leading term in x (0 when x is absent)."""
        d = self.degree_in(x)
        if d <= 0:
            return Polynomial.zero(self.field)
        terms: Dict[Mono, FieldElement] = {}
        for m, c in self.terms.items():
            keep = True
            for v, e in m:
                if v == x and e == d:
                    keep = False
                    break
            if keep:
                terms[m] = c
        return Polynomial._make(self.field, terms)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if isinstance(other, Polynomial) and other.field is self.field:
            return
        if not isinstance(other, Polynomial) or other.field != self.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            if m in terms:
                s = terms[m] + c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
            else:
                terms[m] = c
        return Polynomial._make(self.field, terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            if m in terms:
                s = terms[m] - c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
            else:
                terms[m] = -c
        return Polynomial._make(self.field, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial._make(self.field, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        t1, t2 = self.terms, other.terms
        if not t1 or not t2:
            return Polynomial.zero(self.field)
        field = self.field
        if len(t1) > len(t2):
            t1, t2 = t2, t1
        memo = _MUL_MEMO
        if field.k == 1:
            # Prime field: accumulate on raw integers, one reduction at the
            # end (counts stay far below machine-int precision).
            p_mod = field.p
            acc: Dict[Mono, int] = {}
            for m1, c1 in t1.items():
                v1 = c1.value
                for m2, c2 in t2.items():
                    key = (m1, m2)
                    m = memo.get(key)
                    if m is None:
                        m = _mono_mul(m1, m2)
                        if len(memo) >= _MUL_MEMO_MAX:
                            memo.clear()
                        memo[key] = m
                    w = acc.get(m)
                    acc[m] = v1 * c2.value if w is None else w + v1 * c2.value
            el = field._el
            out: Dict[Mono, FieldElement] = {}
            for m, v in acc.items():
                v %= p_mod
                if v:
                    out[m] = el(v)
            return Polynomial._make(field, out)
        terms: Dict[Mono, FieldElement] = {}
        for m1, c1 in t1.items():
            for m2, c2 in t2.items():
                key = (m1, m2)
                m = memo.get(key)
                if m is None:
                    m = _mono_mul(m1, m2)
                    if len(memo) >= _MUL_MEMO_MAX:
                        memo.clear()
                    memo[key] = m
                c = c1 * c2
                if m in terms:
                    s = terms[m] + c
                    if s.is_zero():
                        del terms[m]
                    else:
                        terms[m] = s
                elif not c.is_zero():
                    terms[m] = c
        return Polynomial._make(self.field, terms)

    def scale(self, c: FieldElement) -> "Polynomial":
        if c.is_zero():
            return Polynomial.zero(self.field)
        return Polynomial._make(self.field,
                                {m: k * c for m, k in self.terms.items()})

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise PolyError("negative power of a polynomial")
        result = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift_in(self, x: int, e: int) -> "Polynomial":
        """Multiply by x^e without a full product."""
        if e == 0 or self.is_zero():
            return self
        terms: Dict[Mono, FieldElement] = {}
        for m, c in self.terms.items():
            terms[_mono_mul(m, ((x, e),))] = c
        return Polynomial._make(self.field, terms)

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, assignment: Mapping[int, FieldElement]) -> FieldElement:
        """Full evaluation; raises IncompleteAssignment on a missing variable."""
        total = self.field.zero
        powers: Dict[Tuple[int, int], FieldElement] = {}
        for m, c in self.terms.items():
            acc = c
            for v, e in m:
                if v not in assignment:
                    raise IncompleteAssignment(f"x{v} is unassigned")
                key = (v, e)
                pw = powers.get(key)
                if pw is None:
                    pw = assignment[v] ** e
                    powers[key] = pw
                acc = acc * pw
            total = total + acc
        return total

    def substitute(self, assignment: Mapping[int, FieldElement]) -> "Polynomial":
        """Partial evaluation of any subset of the variables."""
        terms: Dict[Mono, FieldElement] = {}
        powers: Dict[Tuple[int, int], FieldElement] = {}
        for m, c in self.terms.items():
            acc = c
            rest: List[Tuple[int, int]] = []
            for v, e in m:
                if v in assignment:
                    key = (v, e)
                    pw = powers.get(key)
                    if pw is None:
                        pw = assignment[v] ** e
                        powers[key] = pw
                    acc = acc * pw
                else:
                    rest.append((v, e))
            if acc.is_zero():
                continue
            rm = tuple(rest)
            if rm in terms:
                s = terms[rm] + acc
                if s.is_zero():
                    del terms[rm]
                else:
                    terms[rm] = s
            else:
                terms[rm] = acc
        return Polynomial._make(self.field, terms)

    # -- identity and display -------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.q,
                               frozenset((m, c.value) for m, c in self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def render_poly(p: Polynomial, names: Optional[Sequence[str]] = None) -> str:
    """Canonical text form: descending lex terms, explicit '*', '^' powers.

    Coefficients print as canonical integers (extension elements in
    parentheses); names[i-1] is used for variable i, defaulting to x<i>.
    """
    if p.is_zero():
        return "0"

    def var_name(v: int) -> str:
        if names is not None and v - 1 < len(names):
            return names[v - 1]
        return f"x{v}"

    def coeff_text(c: FieldElement) -> str:
        s = str(c)
        return f"({s})" if c.field.k > 1 else s

    parts = []
    for m in sorted(p.terms, key=lex_key, reverse=True):
        c = p.terms[m]
        factors = []
        for v, e in sorted(m, reverse=True):
            factors.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
        one = c == c.field.one
        if not factors:
            parts.append(coeff_text(c))
        elif one:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([coeff_text(c)] + factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# pseudo-division

def _cap_check(cap: Optional[int], a: Polynomial, b: Polynomial) -> None:
    if cap is not None and len(a.terms) * len(b.terms) > cap:
        raise WorkCapExceeded(
            f"product of {len(a.terms)} x {len(b.terms)} terms exceeds "
            f"the work cap of {cap}")


def pseudo_divmod(g: Polynomial, f: Polynomial, x: int,
                  cap: Optional[int] = None) -> Tuple[Polynomial, Polynomial]:
    """Pseudo-quotient and -remainder of g by f in the variable x.

    With l = lead_coeff(f, x) and d = max(deg_x(g) - deg_x(f) + 1, 0) the
    results satisfy l^d * g = quo * f + rem and deg_x(rem) < deg_x(f).
    A ``cap`` bounds the term-pair count of every internal multiplication
    (WorkCapExceeded beyond it).
    """
    g._check(f)
    if f.is_zero():
        raise ZeroPolynomial("pseudo-division by the zero polynomial")
    df = f.degree_in(x)
    dg = g.degree_in(x)
    d = max(dg - df + 1, 0)
    l = f.lead_coeff(x)
    quo = Polynomial.zero(g.field)
    rem = g
    e = 0
    while not rem.is_zero():
        dr = rem.degree_in(x)
        if dr < df:
            break
        t = rem.lead_coeff(x).shift_in(x, dr - df)
        _cap_check(cap, l, quo)
        _cap_check(cap, l, rem)
        _cap_check(cap, t, f)
        quo = l * quo + t
        rem = l * rem - t * f
        e += 1
    if e < d:
        scale = l ** (d - e)
        _cap_check(cap, quo, scale)
        _cap_check(cap, rem, scale)
        quo = quo * scale
        rem = rem * scale
    return quo, rem


def pseudo_rem(g: Polynomial, f: Polynomial, x: int,
               cap: Optional[int] = None) -> Polynomial:
    return pseudo_divmod(g, f, x, cap=cap)[1]


def pseudo_quo(g: Polynomial, f: Polynomial, x: int,
               cap: Optional[int] = None) -> Polynomial:
    return pseudo_divmod(g, f, x, cap=cap)[0]


def exact_div(p: Polynomial, d: Polynomial) -> Polynomial:
    """Exact division in the polynomial ring; raises NotDivisible otherwise."""
    p._check(d)
    if d.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    if p.is_zero():
        return p
    if len(d.terms) == 1:
        # Single-term divisor: divide term by term.
        (dm, dc), = d.terms.items()
        inv = dc.inverse()
        quo_terms: Dict[Mono, FieldElement] = {}
        for m, c in p.terms.items():
            q = _mono_div(m, dm)
            if q is None:
                raise NotDivisible("quotient is not a polynomial")
            quo_terms[q] = c * inv
        return Polynomial._make(p.field, quo_terms)

    lead_d = max(d.terms, key=lex_key)
    inv = d.terms[lead_d].inverse()
    rest = [(m, c) for m, c in d.terms.items() if m != lead_d]
    rem: Dict[Mono, FieldElement] = dict(p.terms)
    heap = [(_heap_key(m), m) for m in rem]
    heapq.heapify(heap)
    quo_terms = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = rem.get(m)
        if c is None:
            continue  # stale entry: the term cancelled since being pushed
        del rem[m]
        qm = _mono_div(m, lead_d)
        if qm is None:
            raise NotDivisible("quotient is not a polynomial")
        qc = c * inv
        quo_terms[qm] = qc
        for dm, dc in rest:
            nm = _mono_mul(qm, dm)
            nc = qc * dc
            old = rem.get(nm)
            if old is None:
                rem[nm] = -nc
                heapq.heappush(heap, (_heap_key(nm), nm))
            else:
                s = old - nc
                if s.is_zero():
                    del rem[nm]
                else:
                    rem[nm] = s
    return Polynomial._make(p.field, quo_terms)


# ---------------------------------------------------------------------------
# subresultant chain

def _coeff_of(coeffs: Dict[int, Polynomial], d: int, field: Field) -> Polynomial:
    if d < 0:
        return Polynomial.zero(field)
    return coeffs.get(d, Polynomial.zero(field))


def _prefix_dets(rows: List[List[Polynomial]], field: Field,
                 budget=None, cap: Optional[int] = None
                 ) -> Optional[List[Polynomial]]:
    """Determinants of [first t-1 columns | tail column c] for each tail c.

    Fraction-free (Bareiss) elimination of the first t-1 columns of a
    t x w matrix; entry (t-1, c) after elimination is the wanted minor.
    Returns None when the first t-1 columns are rank deficient (all the
    determinants vanish).
    """
    t = len(rows)
    w = len(rows[0])
    if t == 1:
        return rows[0][:]
    mat = [row[:] for row in rows]
    prev = Polynomial.one(field)
    sign = 1
    for col in range(t - 1):
        if budget is not None:
            budget.check()
        piv_row = None
        for r in range(col, t):
            if not mat[r][col].is_zero():
                piv_row = r
                break
        if piv_row is None:
            return None
        if piv_row != col:
            mat[col], mat[piv_row] = mat[piv_row], mat[col]
            sign = -sign
        piv = mat[col][col]
        for r in range(col + 1, t):
            row_r = mat[r]
            row_c = mat[col]
            head = row_r[col]
            for c2 in range(col + 1, w):
                if budget is not None:
                    budget.check()
                _cap_check(cap, piv, row_r[c2])
                _cap_check(cap, head, row_c[c2])
                num = piv * row_r[c2] - head * row_c[c2]
                row_r[c2] = exact_div(num, prev)
            row_r[col] = Polynomial.zero(field)
        prev = piv
    last = mat[t - 1]
    if sign == 1:
        return last[t - 1:]
    return [-v for v in last[t - 1:]]


def subresultant_chain(f: Polynomial, g: Polynomial, x: int,
                       budget=None, cap: Optional[int] = None
                       ) -> List[Polynomial]:
    """Regular subresultant subchain of f and g with respect to x.

    Requires deg_x(f) >= deg_x(g) >= 1 (DegreeOrder otherwise; the caller
    swaps).  Returns [h_2, ..., h_r] where h_2 is g scaled by
    lc(g,x)^(m-l-1) (plain g when the degrees differ by one or are equal)
    and the later members are the nonzero regular subresultants S_j in
    decreasing order of j.  Equal input degrees are handled by giving f
    formal degree deg_x(g) + 1.  A ``cap`` bounds the term-pair count of
    every internal multiplication (WorkCapExceeded beyond it).
    """
    f._check(g)
    field = f.field
    df = f.degree_in(x)
    dg = g.degree_in(x)
    if not (df >= dg >= 1):
        raise DegreeOrder("need deg_x(f) >= deg_x(g) >= 1")
    m = df if df > dg else dg + 1
    l = dg
    fc = f.coeffs_in(x)
    gc = g.coeffs_in(x)
    lcg = _coeff_of(gc, l, field)
    head = g if m - l == 1 else lcg ** (m - l - 1) * g
    chain = [head]
    for j in range(l - 1, -1, -1):
        t = m + l - 2 * j
        w = m + l - j
        rows: List[List[Polynomial]] = []
        # rows x^s * f for s = l-j-1 .. 0, then x^s * g for s = m-j-1 .. 0;
        # column c holds the coefficient of x^(w-1-c)
        for s in range(l - j - 1, -1, -1):
            rows.append([_coeff_of(fc, w - 1 - c - s, field) for c in range(w)])
        for s in range(m - j - 1, -1, -1):
            rows.append([_coeff_of(gc, w - 1 - c - s, field) for c in range(w)])
        dets = _prefix_dets(rows, field, budget, cap)
        if dets is None:
            continue
        s_j = Polynomial.zero(field)
        for i, det in enumerate(dets):
            if not det.is_zero():
                s_j = s_j + det.shift_in(x, j - i)
        if s_j.is_zero() or s_j.degree_in(x) != j:
            continue
        chain.append(s_j)
    return chain


# ---------------------------------------------------------------------------
# univariate utilities

def univariate_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd of two univariate (or constant) polynomials."""
    f._check(g)
    vs = f.variables() | g.variables()
    if len(vs) > 1:
        raise PolyError("univariate_gcd needs polynomials in one variable")
    x = next(iter(vs)) if vs else 1
    a, b = f, g
    while not b.is_zero():
        a, b = b, _uni_mod(a, b, x)
    if a.is_zero():
        return a
    lead = a.lead_coeff(x) if a.degree_in(x) > 0 else a
    return a.scale(lead.constant_value().inverse())


def _uni_mod(a: Polynomial, b: Polynomial, x: int) -> Polynomial:
    """Ordinary univariate remainder (field coefficients)."""
    db = b.degree_in(x)
    if db <= 0:
        return Polynomial.zero(a.field)
    inv = b.lead_coeff(x).constant_value().inverse()
    rem = a
    while not rem.is_zero():
        dr = rem.degree_in(x)
        if dr < db:
            break
        c = rem.lead_coeff(x).constant_value() * inv
        t = Polynomial._make(a.field, {((x, dr - db),) if dr > db else (): c})
        rem = rem - t * b
    return rem


def univariate_roots(f: Polynomial) -> Set[FieldElement]:
    """Roots in F_q by exhaustive evaluation.

    The zero polynomial has every element as a root; a nonzero constant has
    none.
    """
    field = f.field
    if f.is_zero():
        return set(field.elements())
    if f.is_constant():
        return set()
    vs = f.variables()
    if len(vs) != 1:
        raise PolyError("univariate_roots needs a univariate polynomial")
    x = next(iter(vs))
    return {b for b in field.elements() if f.evaluate({x: b}).is_zero()}


def reduce_exponents(p: Polynomial) -> Polynomial:
    """Rewrite exponents d >= 1 to ((d-1) mod (q-1)) + 1.

    By the generalized Fermat identity a^q = a this preserves the evaluation
    map on F_q^n; like terms produced by the rewrite are merged.
    """
    step = p.field.q - 1
    terms: Dict[Mono, FieldElement] = {}
    for m, c in p.terms.items():
        nm = tuple((v, (e - 1) % step + 1) for v, e in m)
        if nm in terms:
            s = terms[nm] + c
            if s.is_zero():
                del terms[nm]
            else:
                terms[nm] = s
        else:
            terms[nm] = c
    return Polynomial._make(p.field, terms)
