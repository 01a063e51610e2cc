"""Exact arithmetic in small finite fields F_q, q = p^k.

Prime fields store elements as integers in [0, p).  Extension fields store
elements as coefficient tuples of length k (lowest degree first) and reduce
products modulo a monic irreducible polynomial of degree k over F_p.  When no
modulus is supplied the lexicographically first monic irreducible found by
deterministic search is used, so two fields built from (p, k) alone are
always identical.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple, Union

MAX_ORDER = 1 << 20


class FieldError(ValueError):
    """Base class for field construction and arithmetic errors."""


class NotPrime(FieldError):
    pass


class NotPrimePower(FieldError):
    pass


class NotIrreducible(FieldError):
    pass


class FieldMismatch(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# univariate helpers over F_p, used only for extension field plumbing;
# polynomials are int lists, lowest degree first, trimmed of high zeros

def _utrim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _umul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _utrim(out)


def _udivmod(a: Sequence[int], b: Sequence[int], p: int) -> Tuple[List[int], List[int]]:
    # NOTE: b must be nonzero; works for any leading coefficient
    rem = list(a)
    _utrim(rem)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * max(len(rem) - db, 0)
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        c = rem[-1] * inv_lead % p
        quo[shift] = c
        for j, bj in enumerate(b):
            rem[shift + j] = (rem[shift + j] - c * bj) % p
        _utrim(rem)
    return _utrim(quo), rem


def _uinv_mod(a: Sequence[int], m: Sequence[int], p: int) -> List[int]:
    """Inverse of a modulo m in F_p[y] via the extended Euclidean algorithm."""
    r0, r1 = list(m), _utrim(list(a))
    s0, s1 = [], [1]
    while r1:
        q, r = _udivmod(r0, r1, p)
        r0, r1 = r1, r
        qs = _umul(q, s1, p)
        ns = [(x - y) % p for x, y in
              zip(s0 + [0] * max(0, len(qs) - len(s0)),
                  qs + [0] * max(0, len(s0) - len(qs)))]
        s0, s1 = s1, _utrim(ns)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = pow(r0[0], p - 2, p)
    return [x * c % p for x in s0]


def _is_irreducible(g: Sequence[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree 1..deg(g)//2."""
    k = len(g) - 1
    for d in range(1, k // 2 + 1):
        for idx in range(p ** d):
            m = [0] * (d + 1)
            t = idx
            for j in range(d):
                m[j] = t % p
                t //= p
            m[d] = 1
            _, rem = _udivmod(g, m, p)
            if not rem:
                return False
    return True


def _find_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Lexicographically first monic irreducible of degree k over F_p."""
    for idx in range(p ** k):
        g = [0] * (k + 1)
        t = idx
        for j in range(k):
            g[j] = t % p
            t //= p
        g[k] = 1
        if _is_irreducible(g, p):
            return tuple(g)
    raise NotIrreducible(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


class Field:
    """Description of F_q with q = p^k, q capped at 2^20."""

    __slots__ = ("p", "k", "q", "modulus", "_elements", "_element_set",
                 "_interned")

    def __init__(self, p: int, k: int = 1,
                 modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        q = p ** k
        if q > MAX_ORDER:
            raise FieldError(f"field order {q} exceeds cap {MAX_ORDER}")
        self.p = p
        self.k = k
        self.q = q
        if k == 1:
            self.modulus: Optional[Tuple[int, ...]] = None
        elif modulus is None:
            self.modulus = _find_irreducible(p, k)
        else:
            m = tuple(c % p for c in modulus)
            if len(m) != k + 1 or m[-1] != 1:
                raise FieldError("modulus must be monic of degree k")
            if not _is_irreducible(m, p):
                raise NotIrreducible("modulus is reducible")
            self.modulus = m
        self._elements: Optional[Tuple["FieldElement", ...]] = None
        self._element_set = None
        self._interned: Optional[Tuple["FieldElement", ...]] = None

    def _el(self, v: int) -> "FieldElement":
        """Interned prime-field element for residue v (k == 1 only)."""
        tab = self._interned
        if tab is None:
            tab = self._interned = tuple(FieldElement(self, z)
                                         for z in range(self.p))
        return tab[v]

    @classmethod
    def of_order(cls, q: int) -> "Field":
        """Build F_q from the order alone, factoring q as p^k."""
        if q < 2:
            raise NotPrimePower(f"{q} is not a prime power")
        p = 2
        while p * p <= q:
            if q % p == 0:
                break
            p += 1
        else:
            p = q
        k = 0
        t = q
        while t % p == 0:
            t //= p
            k += 1
        if t != 1:
            raise NotPrimePower(f"{q} is not a prime power")
        return cls(p, k)

    # -- element construction -------------------------------------------------

    def element(self, z: int) -> "FieldElement":
        """Embed an integer: z mod p, as a constant for extensions."""
        if self.k == 1:
            return FieldElement(self, z % self.p)
        coeffs = [0] * self.k
        coeffs[0] = z % self.p
        return FieldElement(self, tuple(coeffs))

    def from_coeffs(self, coeffs: Iterable[int]) -> "FieldElement":
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.k:
            raise FieldError("too many coefficients")
        cs += [0] * (self.k - len(cs))
        if self.k == 1:
            return FieldElement(self, cs[0])
        return FieldElement(self, tuple(cs))

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    def elements(self) -> Tuple["FieldElement", ...]:
        """All q elements: 0..p-1 for prime fields, coefficient tuples in
        lexicographic order (low-degree coefficient varying fastest) otherwise."""
        if self._elements is None:
            if self.k == 1:
                elems = tuple(FieldElement(self, v) for v in range(self.p))
            else:
                out = []
                for idx in range(self.q):
                    t = idx
                    cs = []
                    for _ in range(self.k):
                        cs.append(t % self.p)
                        t //= self.p
                    out.append(FieldElement(self, tuple(cs)))
                elems = tuple(out)
            self._elements = elems
        return self._elements

    def element_set(self) -> frozenset:
        if self._element_set is None:
            self._element_set = frozenset(self.elements())
        return self._element_set

    # -- identity -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"Field({self.p})"
        return f"Field({self.p}^{self.k})"


def prime_field(p: int) -> Field:
    return Field(p)


def extension_field(p: int, k: int,
                    modulus: Optional[Sequence[int]] = None) -> Field:
    return Field(p, k, modulus)


class FieldElement:
    """Immutable element of a Field; int for k = 1, coefficient tuple else."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: Union[int, Tuple[int, ...]]):
        self.field = field
        self.value = value

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        if self.field.k == 1:
            return self.value == 0
        return all(c == 0 for c in self.value)

    def index(self) -> int:
        """Position of the element in the enumeration order."""
        if self.field.k == 1:
            return self.value
        idx = 0
        for c in reversed(self.value):
            idx = idx * self.field.p + c
        return idx

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "FieldElement") -> None:
        if isinstance(other, FieldElement) and other.field is self.field:
            return
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldMismatch("operands belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        if f.k == 1:
            return f._el((self.value + other.value) % f.p)
        return FieldElement(f, tuple((a + b) % f.p
                                     for a, b in zip(self.value, other.value)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        if f.k == 1:
            return f._el((self.value - other.value) % f.p)
        return FieldElement(f, tuple((a - b) % f.p
                                     for a, b in zip(self.value, other.value)))

    def __neg__(self) -> "FieldElement":
        f = self.field
        if f.k == 1:
            return f._el(-self.value % f.p)
        return FieldElement(f, tuple(-a % f.p for a in self.value))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        if f.k == 1:
            return f._el(self.value * other.value % f.p)
        prod = [0] * (2 * f.k - 1)
        for i, a in enumerate(self.value):
            if a:
                for j, b in enumerate(other.value):
                    prod[i + j] = (prod[i + j] + a * b) % f.p
        # reduce modulo the monic modulus, high degrees first
        m = f.modulus
        for d in range(len(prod) - 1, f.k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for j in range(f.k):
                    prod[d - f.k + j] = (prod[d - f.k + j] - c * m[j]) % f.p
        return FieldElement(f, tuple(prod[:f.k]))

    def inverse(self) -> "FieldElement":
        f = self.field
        if self.is_zero():
            raise ZeroDivisionError("0 has no inverse")
        if f.k == 1:
            return f._el(pow(self.value, f.p - 2, f.p))
        inv = _uinv_mod(list(self.value), list(f.modulus), f.p)
        inv += [0] * (f.k - len(inv))
        return FieldElement(f, tuple(inv[:f.k]))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- identity and display -------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.value == other.value and (self.field is other.field
                                              or self.field == other.field)

    def __hash__(self) -> int:
        return hash((self.value, self.field.q))

    def __str__(self) -> str:
        if self.field.k == 1:
            return str(self.value)
        parts = []
        for d, c in enumerate(self.value):
            if c == 0:
                continue
            if d == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else f"{c}*"
                parts.append(f"{head}a" if d == 1 else f"{head}a^{d}")
        return "+".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"<{self} in {self.field!r}>"
