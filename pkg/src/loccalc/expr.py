"""Expression grammar shared by the CLI, model files, and the service.

Grammar (whitespace insensitive)::

    expr     := term (('+'|'-') term)*
    term     := factor (('*'|'/') factor)*
    factor   := atom ('^' uint)?
    atom     := rational | 'i' | ident | '(' expr ')' | '-' atom
    rational := int ('/' uint)?

Exponents are nonnegative integer literals. Unknown identifiers are rejected
against the caller-supplied symbol context. Parse errors carry the offending
position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import RatFn


class ParseError(ValueError):
    """Syntax error with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownSymbolError(ParseError):
    pass


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


# -- symbol contexts -----------------------------------------------------------

class SymbolContext:
    """Which identifiers an expression may reference."""

    def __init__(self, names=(), pattern: str | None = None,
                 allow_imaginary: bool = False, description: str = ""):
        self.names = frozenset(names)
        self.pattern = re.compile(pattern) if pattern else None
        self.allow_imaginary = allow_imaginary
        self.description = description

    def allows(self, name: str) -> bool:
        if name in self.names:
            return True
        return bool(self.pattern and self.pattern.match(name))


#: weights l0, l1, ..., the deformation parameter t, and a free shift symbol s
WEIGHT_CONTEXT = SymbolContext(pattern=r"^(t|s|l\d+)$",
                               description="weight symbols l0, l1, ..., t, s")


def class_context(count: int, prefix: str = "c") -> SymbolContext:
    return SymbolContext(names={f"{prefix}{k}" for k in range(1, count + 1)},
                         description=f"classes {prefix}1..{prefix}{count}")


def coordinate_context(dim: int) -> SymbolContext:
    return SymbolContext(names={f"z{k}" for k in range(1, dim + 1)},
                         allow_imaginary=True,
                         description=f"coordinates z1..z{dim} and i")


# -- tokenizer -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}",
                             len(text) - len(stripped))
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, context: SymbolContext):
        self.tokens = tokens
        self.k = 0
        self.context = context

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect_op(self, op):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self):
        node = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                node = BinOp(value, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.advance()
                node = BinOp(value, node, self.factor())
            else:
                return node

    def factor(self):
        node = self.atom()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, pos = self.peek()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer literal", pos)
            self.advance()
            node = Pow(node, int(value))
        return node

    def atom(self):
        kind, value, pos = self.advance()
        if kind == "num":
            # rational := int ('/' uint)?  (greedy when a digit follows)
            nk, nv, _ = self.peek()
            if nk == "op" and nv == "/" and self.tokens[self.k + 1][0] == "num":
                self.advance()
                _, dv, dpos = self.advance()
                if int(dv) == 0:
                    raise ParseError("zero denominator in rational literal", dpos)
                return Num(Fraction(int(value), int(dv)))
            return Num(Fraction(int(value)))
        if kind == "name":
            if value == "i":
                if not self.context.allow_imaginary:
                    raise UnknownSymbolError(
                        "imaginary unit not allowed in this context", pos)
                return Imag()
            if not self.context.allows(value):
                allowed = self.context.description or "no symbols"
                raise UnknownSymbolError(
                    f"unknown symbol {value!r} (allowed: {allowed})", pos)
            return Sym(value)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "op" and value == "-":
            return Neg(self.atom())
        raise ParseError(f"unexpected {value!r}" if value else "unexpected end of input", pos)


def parse_expr(text: str, context: SymbolContext):
    """Parse ``text`` into an AST, rejecting symbols outside ``context``."""
    return _Parser(_tokenize(text), context).parse()


# -- pretty printer --------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 1
    if isinstance(node, Pow):
        return 3
    return 4


def pretty(node) -> str:
    """Canonical rendering; parse_expr(pretty(a)) == a for parser output."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        inner = pretty(node.operand)
        # '-' binds at atom level: anything below a bare atom needs parens
        if _prec(node.operand) < 4:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Pow):
        base = pretty(node.base)
        if isinstance(node.base, (BinOp, Pow)):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, BinOp):
        left = pretty(node.left)
        right = pretty(node.right)
        if _prec(node.left) < _PREC[node.op]:
            left = f"({left})"
        # the grammar is left-associative: equal precedence on the right
        # must be parenthesized to reparse to the same tree
        if _prec(node.right) <= _PREC[node.op]:
            right = f"({right})"
        if node.op == "/" and isinstance(node.right, Num):
            right = f"({right})"
        return f"{left} {node.op} {right}" if node.op in "+-" else f"{left}{node.op}{right}"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation ---------------------------------------------------------------------

def evaluate(node, domain):
    """Fold an AST through a domain (ring with rational/imaginary/symbol atoms)."""
    if isinstance(node, Num):
        return domain.rational(node.value)
    if isinstance(node, Imag):
        return domain.imaginary()
    if isinstance(node, Sym):
        return domain.symbol(node.name)
    if isinstance(node, Neg):
        return domain.neg(evaluate(node.operand, domain))
    if isinstance(node, Pow):
        return domain.power(evaluate(node.base, domain), node.exponent)
    if isinstance(node, BinOp):
        left = evaluate(node.left, domain)
        right = evaluate(node.right, domain)
        if node.op == "+":
            return domain.add(left, right)
        if node.op == "-":
            return domain.sub(left, right)
        if node.op == "*":
            return domain.mul(left, right)
        return domain.div(left, right)
    raise TypeError(f"not an expression node: {node!r}")


class RatFnDomain:
    """Evaluate expressions into the exact rational-function field."""

    def rational(self, value: Fraction) -> RatFn:
        return RatFn.const(value)

    def imaginary(self) -> RatFn:
        raise ValueError("imaginary unit has no exact rational-function value")

    def symbol(self, name: str) -> RatFn:
        return RatFn.var(name)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b.is_zero():
            raise ZeroDivisionError("division by zero")
        return a / b

    def neg(self, a):
        return -a

    def power(self, a, k: int):
        return a ** k


def parse_ratfn(text: str, context: SymbolContext = WEIGHT_CONTEXT) -> RatFn:
    """Parse an expression directly into a RatFn."""
    return evaluate(parse_expr(text, context), RatFnDomain())
