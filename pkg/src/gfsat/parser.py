"""Text format for constraint files, with positioned errors.

A file is line-oriented: a field declaration, a variable declaration, then
one clause per line.  ``#`` starts a comment, blank lines are ignored.

    field 5                      # prime field
    field 2^2 mod a^2+a+1        # extension field with explicit modulus
    vars x1 x2
    clause x1^2 - 1 = 0
    clause x1*x2 - x2 - 1 = 0 | x2 != 0

A literal is ``<poly> = 0`` or ``<poly> != 0``.  Terms are joined by ``+``
and ``-``; a term is an optional coefficient followed by variable powers,
with ``*`` accepted (and produced by the renderer) between factors.
Coefficients are integers, reduced into the field, or extension-field
elements written in parentheses such as ``(1+a)``.  Variables must be
declared; anything undeclared is an error with its line and column.

``render`` writes a formula back in canonical form; parsing the rendered
text reproduces the formula exactly.
"""

from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .field import Field, FieldError
from .formula import Clause, Constraint, Formula, Rel
from .poly import Polynomial, render_poly


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class Token(NamedTuple):
    kind: str  # "int" | "ident" | "op"
    text: str
    line: int
    col: int


_OPS = {"^", "|", "=", "+", "-", "*", "(", ")"}


def _tokenize_line(text: str, line_no: int) -> List[Token]:
    out: List[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        col = i + 1
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], line_no, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("ident", text[i:j], line_no, col))
            i = j
        elif ch == "!":
            if text[i:i + 2] == "!=":
                out.append(Token("op", "!=", line_no, col))
                i += 2
            else:
                raise ParseError("expected '=' after '!'", line_no, col)
        elif ch in _OPS:
            out.append(Token("op", ch, line_no, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line_no, col)
    return out


class _Cursor:
    """Token stream for one logical line."""

    def __init__(self, tokens: List[Token], line: int):
        self.tokens = tokens
        self.line = line
        self.i = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of line", self.line, self.end_col())
        self.i += 1
        return tok

    def end_col(self) -> int:
        if self.tokens:
            last = self.tokens[-1]
            return last.col + len(last.text)
        return 1

    def match_op(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.kind == "op" and tok.text == text:
            self.i += 1
            return True
        return False

    def match_ident(self, text: str) -> bool:
        tok = self.peek()
        if tok is not None and tok.kind == "ident" and tok.text == text:
            self.i += 1
            return True
        return False

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != "op" or tok.text != text:
            raise self.error(f"expected {text!r}")
        self.i += 1
        return tok

    def expect_int(self, what: str) -> int:
        tok = self.peek()
        if tok is None or tok.kind != "int":
            raise self.error(f"expected {what}")
        self.i += 1
        return int(tok.text)

    def expect_done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            return ParseError(message, self.line, self.end_col())
        return ParseError(f"{message}, found {tok.text!r}", tok.line, tok.col)


class _Env(NamedTuple):
    field: Field
    vars: Dict[str, int]
    gen: str  # extension generator symbol


# -- field declaration -------------------------------------------------------

def _parse_mod_poly(cur: _Cursor) -> Tuple[List[Tuple[int, int, int]], str]:
    """Modulus as signed integer terms (sign, coeff, exponent) in one symbol."""
    entries: List[Tuple[int, int, int]] = []
    gen: Optional[str] = None
    sign = -1 if cur.match_op("-") else 1
    while True:
        coeff = 1
        exp = 0
        saw = False
        while True:
            tok = cur.peek()
            if tok is None:
                break
            if tok.kind == "op" and tok.text == "*":
                if not saw:
                    raise cur.error("expected a factor before '*'")
                cur.take()
                continue
            if tok.kind == "int":
                cur.take()
                coeff *= int(tok.text)
                saw = True
            elif tok.kind == "ident":
                cur.take()
                if gen is None:
                    gen = tok.text
                elif gen != tok.text:
                    raise ParseError("modulus must use a single symbol",
                                     tok.line, tok.col)
                e = 1
                if cur.match_op("^"):
                    e = cur.expect_int("an exponent")
                exp += e
                saw = True
            else:
                break
        if not saw:
            raise cur.error("expected a modulus term")
        entries.append((sign, coeff, exp))
        if cur.match_op("+"):
            sign = 1
        elif cur.match_op("-"):
            sign = -1
        else:
            break
    return entries, (gen or "a")


def _parse_field_decl(cur: _Cursor) -> Tuple[Field, str]:
    if not cur.match_ident("field"):
        raise cur.error("expected 'field'")
    base_tok = cur.peek()
    base = cur.expect_int("a field order")
    k: Optional[int] = None
    if cur.match_op("^"):
        k = cur.expect_int("an extension degree")
    entries = None
    gen = "a"
    if cur.match_ident("mod"):
        entries, gen = _parse_mod_poly(cur)
    cur.expect_done()

    try:
        if k is None:
            probe = Field.of_order(base)
            p, k = probe.p, probe.k
        else:
            p = base
        modulus = None
        if entries is not None:
            if k == 1:
                raise ParseError("modulus given for a prime field",
                                 base_tok.line, base_tok.col)
            coeffs = [0] * (max(e for _, _, e in entries) + 1)
            for sign, coeff, exp in entries:
                coeffs[exp] = (coeffs[exp] + sign * coeff) % p
            modulus = coeffs
        return Field(p, k, modulus), gen
    except FieldError as exc:
        raise ParseError(str(exc), base_tok.line, base_tok.col) from exc


# -- polynomials -------------------------------------------------------------

def _parse_ext_element(cur: _Cursor, env: _Env):
    """Element written inside parentheses, e.g. ``(1+a)``."""
    field = env.field
    total = field.zero
    sign = -1 if cur.match_op("-") else 1
    while True:
        value = field.one
        saw = False
        while True:
            tok = cur.peek()
            if tok is None:
                break
            if tok.kind == "op" and tok.text == "*":
                if not saw:
                    raise cur.error("expected a factor before '*'")
                cur.take()
                continue
            if tok.kind == "int":
                cur.take()
                value = value * field.element(int(tok.text))
                saw = True
            elif tok.kind == "ident":
                if tok.text != env.gen or field.k == 1:
                    raise ParseError(f"unknown symbol {tok.text!r} in a "
                                     "coefficient", tok.line, tok.col)
                cur.take()
                e = 1
                if cur.match_op("^"):
                    e = cur.expect_int("an exponent")
                value = value * field.from_coeffs([0, 1]) ** e
                saw = True
            else:
                break
        if not saw:
            raise cur.error("expected a coefficient term")
        total = total - value if sign < 0 else total + value
        if cur.match_op("+"):
            sign = 1
        elif cur.match_op("-"):
            sign = -1
        else:
            break
    return total


def _parse_term(cur: _Cursor, env: _Env) -> Polynomial:
    field = env.field
    coeff = field.one
    mono: Dict[int, int] = {}
    saw = False
    while True:
        tok = cur.peek()
        if tok is None:
            break
        if tok.kind == "op" and tok.text == "*":
            if not saw:
                raise cur.error("expected a factor before '*'")
            cur.take()
            continue
        if tok.kind == "int":
            cur.take()
            coeff = coeff * field.element(int(tok.text))
            saw = True
        elif tok.kind == "op" and tok.text == "(":
            cur.take()
            coeff = coeff * _parse_ext_element(cur, env)
            cur.expect_op(")")
            saw = True
        elif tok.kind == "ident":
            if tok.text not in env.vars:
                raise ParseError(f"unknown variable {tok.text!r}",
                                 tok.line, tok.col)
            cur.take()
            e = 1
            if cur.match_op("^"):
                e = cur.expect_int("an exponent")
            if e > 0:
                v = env.vars[tok.text]
                mono[v] = mono.get(v, 0) + e
            saw = True
        else:
            break
    if not saw:
        raise cur.error("expected a term")
    key = tuple(sorted(mono.items()))
    return Polynomial(field, {key: coeff})


def _parse_poly(cur: _Cursor, env: _Env) -> Polynomial:
    total = Polynomial.zero(env.field)
    sign = -1 if cur.match_op("-") else 1
    while True:
        term = _parse_term(cur, env)
        total = total - term if sign < 0 else total + term
        if cur.match_op("+"):
            sign = 1
        elif cur.match_op("-"):
            sign = -1
        else:
            break
    return total


def _parse_literal(cur: _Cursor, env: _Env) -> Constraint:
    poly = _parse_poly(cur, env)
    if cur.match_op("="):
        rel = Rel.EQ
    elif cur.match_op("!="):
        rel = Rel.NEQ
    else:
        raise cur.error("expected '=' or '!='")
    zero_tok = cur.peek()
    z = cur.expect_int("'0'")
    if z != 0:
        raise ParseError("constraints compare against 0",
                         zero_tok.line, zero_tok.col)
    return Constraint(poly, rel)


# -- entry points ------------------------------------------------------------

def parse(text: str) -> Formula:
    """Parse a constraint file into a Formula.

    Raises ParseError with a line and column on any syntactic or semantic
    problem (unknown variable, invalid field order, reducible modulus,
    out-of-place token).
    """
    lines: List[_Cursor] = []
    for idx, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize_line(raw, idx)
        if toks:
            lines.append(_Cursor(toks, idx))
    if not lines:
        raise ParseError("expected 'field'", 1, 1)

    field, gen = _parse_field_decl(lines[0])

    if len(lines) < 2:
        raise ParseError("expected 'vars'", lines[0].line + 1, 1)
    vcur = lines[1]
    if not vcur.match_ident("vars"):
        raise vcur.error("expected 'vars'")
    names: List[str] = []
    seen = set()
    while True:
        tok = vcur.peek()
        if tok is None:
            break
        if tok.kind != "ident":
            raise vcur.error("expected a variable name")
        if tok.text in seen:
            raise ParseError(f"duplicate variable {tok.text!r}",
                             tok.line, tok.col)
        if field.k > 1 and tok.text == gen:
            raise ParseError(f"variable {tok.text!r} clashes with the field "
                             "generator", tok.line, tok.col)
        vcur.take()
        seen.add(tok.text)
        names.append(tok.text)
    if not names:
        raise vcur.error("expected a variable name")

    env = _Env(field, {name: i + 1 for i, name in enumerate(names)}, gen)
    clauses: List[Clause] = []
    for cur in lines[2:]:
        if not cur.match_ident("clause"):
            raise cur.error("expected 'clause'")
        literals = [_parse_literal(cur, env)]
        while cur.match_op("|"):
            literals.append(_parse_literal(cur, env))
        cur.expect_done()
        clauses.append(Clause(literals))

    return Formula(field, len(names), clauses, names)


def parse_file(path) -> Formula:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def _render_modulus(field: Field) -> str:
    parts = []
    for e in range(field.k, -1, -1):
        c = field.modulus[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            sym = "a" if e == 1 else f"a^{e}"
            parts.append(sym if c == 1 else f"{c}*{sym}")
    return "+".join(parts)


def render(formula: Formula) -> str:
    """Canonical text for a formula; parse(render(F)) == F."""
    field = formula.field
    if field.k == 1:
        lines = [f"field {field.p}"]
    else:
        lines = [f"field {field.p}^{field.k} mod {_render_modulus(field)}"]
    lines.append("vars " + " ".join(formula.var_names))
    for clause in formula.clauses:
        lines.append("clause " + " | ".join(
            lit.render(formula.var_names) for lit in clause.literals))
    return "\n".join(lines) + "\n"


def write_file(path, formula: Formula) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render(formula))
