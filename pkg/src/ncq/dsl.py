"""Parser for scalar/polynomial expressions and the presentation DSL.

Grammar (``#`` starts a comment)::

    session    := [field-decl] [param-decl] [gens-decl] rels-decl
    field-decl := "field" ("generic" | "cyclotomic" "(" INT "," INT ")") ";"
    param-decl := "param" "b" "=" expr ";"
    gens-decl  := "gens" IDENT ("," IDENT)* ";"
    rels-decl  := "rels" expr ("," expr)* ";"

    expr   := ["+" | "-"] term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ["^" ["-"] INT]
    atom   := INT | IDENT | "(" expr ")"

Identifiers: ``a`` is alpha, ``b`` is beta (only when declared), ``zetaN`` is
the primitive root of the cyclotomic field, anything else must be a declared
generator.  Omitted declarations default to the caller's field mode and the
generators x, y, z.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BadParameter, DSLError, InhomogeneousRelation
from .ncalg import FreePolynomial, QuadraticPresentation
from .scalar import FieldMode, Scalar

_TOKEN = re.compile(r"\s*(?:(#[^\n]*)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class Token:
    kind: str  # "int", "ident", "op", "eof"
    text: str
    line: int
    col: int


def tokenize(text):
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        # account for newlines skipped as whitespace
        skipped = text[pos:start]
        if "\n" in skipped:
            line += skipped.count("\n")
            line_start = pos + skipped.rfind("\n") + 1
        col = start - line_start + 1
        pos = m.end()
        if m.group(1):
            continue
        if m.group(2):
            tokens.append(Token("int", m.group(2), line, col))
        elif m.group(3):
            tokens.append(Token("ident", m.group(3), line, col))
        elif m.group(4):
            ch = m.group(4)
            if ch not in "+-*/^(),;=":
                raise DSLError(f"unexpected character {ch!r}", line, col)
            tokens.append(Token("op", ch, line, col))
    # trailing whitespace may hold newlines
    tail = text[pos:]
    line += tail.count("\n")
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text, mode, generators=(), beta=None):
        self.tokens = tokenize(text)
        self.i = 0
        self.mode = mode
        self.generators = tuple(generators)
        self.beta = beta

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return DSLError(msg, tok.line, tok.col)

    def accept(self, text):
        if self.tok.text == text and self.tok.kind in ("op", "ident"):
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")

    def expect_int(self):
        if self.tok.kind != "int":
            raise self.error("expected an integer")
        self.i += 1
        return int(self.tokens[self.i - 1].text)

    def expect_ident(self):
        if self.tok.kind != "ident":
            raise self.error("expected an identifier")
        self.i += 1
        return self.tokens[self.i - 1].text

    # -- expressions ---------------------------------------------------------

    def expr(self):
        neg = False
        if self.accept("-"):
            neg = True
        else:
            self.accept("+")
        value = self.term()
        if neg:
            value = -value
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            op_tok = self.tok
            self.i += 1
            rhs = self.factor()
            if op_tok.text == "*":
                value = value * rhs
            else:
                if not isinstance(rhs, Scalar):
                    raise self.error("division by a non-scalar", op_tok)
                if not rhs:
                    raise self.error("division by zero", op_tok)
                value = value / rhs
        return value

    def factor(self):
        base = self.atom()
        if self.accept("^"):
            tok = self.tok
            sign = -1 if self.accept("-") else 1
            k = sign * self.expect_int()
            if k < 0:
                if not isinstance(base, Scalar):
                    raise self.error("negative power of a non-scalar", tok)
                if not base:
                    raise self.error("negative power of zero", tok)
            base = base ** k
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return self.mode.scalar(int(tok.text))
        if tok.kind == "ident":
            self.i += 1
            return self.identifier(tok)
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        shown = tok.text or "end of input"
        raise self.error(f"unexpected {shown!r}")

    def identifier(self, tok):
        name = tok.text
        if name in self.generators:
            return FreePolynomial.generator(self.mode, self.generators, self.generators.index(name))
        if name == "a":
            return self.mode.alpha
        if name == "b":
            if self.beta is None:
                raise BadParameter(f"parameter b used but not declared (line {tok.line}, column {tok.col})")
            return self.beta
        m = re.fullmatch(r"zeta(\d+)", name)
        if m:
            if self.mode.is_generic or int(m.group(1)) != self.mode.n:
                raise self.error(f"{name} is not the root of unity of field {self.mode}", tok)
            return self.mode.zeta
        raise self.error(f"unknown identifier {name!r}", tok)

    # -- session -------------------------------------------------------------

    def session(self):
        if self.accept("field"):
            if self.accept("generic"):
                self.mode = FieldMode.generic()
            elif self.accept("cyclotomic"):
                tok = self.tok
                self.expect("(")
                n = self.expect_int()
                self.expect(",")
                e = self.expect_int()
                self.expect(")")
                try:
                    self.mode = FieldMode.cyclotomic(n, e)
                except BadParameter as exc:
                    raise BadParameter(f"{exc} (line {tok.line}, column {tok.col})") from None
            else:
                raise self.error("expected 'generic' or 'cyclotomic'")
            self.expect(";")
        if self.accept("param"):
            name_tok = self.tok
            if self.expect_ident() != "b":
                raise self.error("only parameter 'b' may be declared", name_tok)
            self.expect("=")
            value = self.expr()
            if not isinstance(value, Scalar):
                raise self.error("parameter value must be a scalar", name_tok)
            self.beta = value
            self.expect(";")
        if self.accept("gens"):
            names = []
            while True:
                tok = self.tok
                nm = self.expect_ident()
                if nm in ("a", "b") or re.fullmatch(r"zeta\d+", nm):
                    raise self.error(f"{nm!r} is reserved", tok)
                names.append(nm)
                if not self.accept(","):
                    break
            self.generators = tuple(names)
            self.expect(";")
        elif not self.generators:
            self.generators = ("x", "y", "z")
        self.expect("rels")
        rels = []
        while True:
            tok = self.tok
            r = self.expr()
            if not isinstance(r, FreePolynomial):
                r = FreePolynomial.constant(self.mode, self.generators, r)
            rels.append((r, tok))
            if not self.accept(","):
                break
        self.expect(";")
        if self.tok.kind != "eof":
            raise self.error("trailing input")
        return rels


def parse_expression(text, mode, generators=(), beta=None):
    """Evaluate an expression to a Scalar or FreePolynomial."""
    p = _Parser(text, mode, generators, beta)
    value = p.expr()
    if p.tok.kind != "eof":
        raise p.error("trailing input")
    return value


def parse_presentation(text, mode=None, beta=None):
    """Parse a DSL session into a QuadraticPresentation."""
    p = _Parser(text, mode or FieldMode.generic(), beta=beta)
    rels = p.session()
    for r, tok in rels:
        if not r or not r.is_homogeneous(2):
            raise InhomogeneousRelation(
                f"relation {r} is not homogeneous of degree 2 (line {tok.line}, column {tok.col})")
    return QuadraticPresentation(p.mode, p.generators, tuple(r for r, _ in rels), beta=p.beta)


def parse_polynomial(text, presentation):
    return parse_expression(text, presentation.mode, presentation.generators, presentation.beta)
