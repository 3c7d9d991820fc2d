"""
Expression mini-language.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)*
    atom   := INT ['/' INT] | NAME | NAME '(' args ')' | '(' expr ')'

Names are generators (x1..xd, p1..pd, th1..thd, b, c, beta, gamma, hbar) or
calls from FUNCTIONS. Error positions are byte offsets into the source text.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from .brackets import moyal_bracket, moyal_term, poisson, scaled_bracket, star
from .config import RunConfig
from .errors import ParseError
from .model import A_k, B_k, DifferentialKind, Model, X_k, Y_k, apply_diff, build_model, eta_k, xi_k
from .superalg import Element, render, render_terms

# ============================
# AST
# ============================
@dataclass(frozen=True)
class Number:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Ast"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Ast"
    right: "Ast"
    pos: int


@dataclass(frozen=True)
class Power:
    base: "Ast"
    exponent: int
    pos: int


@dataclass(frozen=True)
class Call:
    func: str
    k: Optional[int]
    args: Tuple["Ast", ...]
    pos: int


Ast = Union[Number, Name, Neg, BinOp, Power, Call]

# name -> (takes a literal k first, number of expression arguments)
FUNCTIONS: Dict[str, Tuple[bool, int]] = {
    "pb": (False, 2),
    "mb": (False, 2),
    "sb": (False, 2),
    "star": (False, 2),
    "ck": (True, 2),
    "q0": (False, 1),
    "q1": (False, 1),
    "q": (False, 1),
    "page0": (False, 1),
    "page1": (False, 1),
    "page2": (False, 1),
    "xi": (True, 1),
    "eta": (True, 1),
    "X": (True, 1),
    "Y": (True, 1),
    "A": (True, 1),
    "B": (True, 1),
    "Pi": (False, 0),
    "Theta": (False, 0),
    "S": (False, 0),
}

_INDEXED = re.compile(r"(x|p|th)([1-9][0-9]*)$")
_PLAIN = {"b", "c", "beta", "gamma", "hbar"}
_ODD_PLAIN = {"b", "c"}
_LAURENT = {"gamma", "hbar"}


def _is_generator(name: str, d: Optional[int]) -> bool:
    if name in _PLAIN:
        return True
    match = _INDEXED.match(name)
    return bool(match) and (d is None or int(match.group(2)) <= d)


def _is_odd(name: str) -> bool:
    return name in _ODD_PLAIN or name.startswith("th")


# ============================
# Tokens
# ============================
_TOKEN = re.compile(r"\s*(?:(?P<int>[0-9]+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op" or "end"
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    i = 0
    while True:
        while i < len(text) and text[i].isspace():
            i += 1
        if i == len(text):
            break
        match = _TOKEN.match(text, i)
        if not match:
            raise ParseError(f"Unexpected character {text[i]!r}", _byte_offset(text, i))
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), _byte_offset(text, match.start(kind))))
        i = match.end()
    tokens.append(Token("end", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


# ============================
# Parser
# ============================
class Parser:
    def __init__(self, text: str, d: Optional[int] = None):
        self.tokens = tokenize(text)
        self.i = 0
        self.d = d

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(f"Unexpected {self._describe()}", self.tok.pos, [repr(text)])
        return self.advance()

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def parse(self) -> Ast:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"Unexpected {self._describe()}", self.tok.pos, ["'+'", "'-'", "'*'", "end of input"])
        return node

    def expr(self) -> Ast:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            node = BinOp(op.text, node, self.term(), op.pos)
        return node

    def term(self) -> Ast:
        node = self.unary()
        while self.at("*"):
            op = self.advance()
            node = BinOp("*", node, self.unary(), op.pos)
        return node

    def unary(self) -> Ast:
        if self.at("-"):
            op = self.advance()
            return Neg(self.unary(), op.pos)
        return self.power()

    def power(self) -> Ast:
        node = self.atom()
        while self.at("^"):
            op = self.advance()
            negative = False
            if self.at("-"):
                self.advance()
                negative = True
            if self.tok.kind != "int":
                raise ParseError(f"Unexpected {self._describe()}", self.tok.pos, ["integer exponent"])
            exponent = int(self.advance().text) * (-1 if negative else 1)
            self._check_power(node, exponent, op.pos)
            node = Power(node, exponent, op.pos)
        return node

    def _check_power(self, base: Ast, exponent: int, pos: int):
        name = base.name if isinstance(base, Name) else None
        if exponent < 0 and name not in _LAURENT:
            raise ParseError("Negative exponents are allowed only on gamma and hbar", pos)
        if name is not None and _is_odd(name) and exponent >= 2:
            raise ParseError(f"Odd generator {name} raised to power {exponent}", pos)

    def atom(self) -> Ast:
        t = self.tok
        if t.kind == "int":
            self.advance()
            value = Fraction(int(t.text))
            if self.at("/"):
                self.advance()
                if self.tok.kind != "int":
                    raise ParseError(f"Unexpected {self._describe()}", self.tok.pos, ["integer denominator"])
                den = self.advance()
                if int(den.text) == 0:
                    raise ParseError("Zero denominator", den.pos)
                value = value / int(den.text)
            return Number(value, t.pos)
        if t.kind == "name":
            self.advance()
            if t.text in FUNCTIONS:
                return self.call(t)
            if not _is_generator(t.text, self.d):
                raise ParseError(f"Unknown name {t.text!r}", t.pos)
            return Name(t.text, t.pos)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"Unexpected {self._describe()}", t.pos, ["number", "name", "'('", "'-'"])

    def call(self, name: Token) -> Call:
        takes_k, arity = FUNCTIONS[name.text]
        self.expect("(")
        k = None
        args: List[Ast] = []
        if takes_k:
            if self.tok.kind != "int":
                raise ParseError(f"{name.text} needs a literal nonnegative integer k", self.tok.pos)
            k = int(self.advance().text)
            if arity:
                self.expect(",")
        for j in range(arity):
            if j:
                self.expect(",")
            args.append(self.expr())
        if not self.at(")"):
            expected = "," if self.at(",") else ")"
            total = arity + (1 if takes_k else 0)
            raise ParseError(f"{name.text} takes {total} argument(s)", self.tok.pos, [repr(expected)])
        self.advance()
        return Call(name.text, k, tuple(args), name.pos)


def parse_expr(text: str, d: Optional[int] = None) -> Ast:
    """Parse text; with d given, generator indices are checked against it."""
    return Parser(text, d).parse()


# ============================
# Evaluation
# ============================
@dataclass(frozen=True)
class Rendering:
    text: str
    terms: List[Dict[str, object]]
    element: Element


_BINARY: Dict[str, Callable] = {
    "pb": poisson,
    "mb": moyal_bracket,
    "sb": scaled_bracket,
    "star": star,
}

_FAMILIES: Dict[str, Callable] = {"xi": xi_k, "eta": eta_k, "X": X_k, "Y": Y_k, "A": A_k, "B": B_k}

_DIFFERENTIALS = {"q0", "q1", "q", "page0", "page1", "page2"}


def _evaluate(m: Model, node: Ast) -> Element:
    if isinstance(node, Number):
        return m.table.constant(node.value)
    if isinstance(node, Name):
        return m.table.gen(node.name)
    if isinstance(node, Neg):
        return -_evaluate(m, node.operand)
    if isinstance(node, Power):
        return _evaluate(m, node.base) ** node.exponent
    if isinstance(node, BinOp):
        left, right = _evaluate(m, node.left), _evaluate(m, node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    args = [_evaluate(m, a) for a in node.args]
    if node.func in _BINARY:
        return _BINARY[node.func](m.tensor, *args)
    if node.func == "ck":
        return moyal_term(m.tensor, node.k, *args)
    if node.func in _DIFFERENTIALS:
        return apply_diff(m, DifferentialKind(node.func), args[0])
    if node.func in _FAMILIES:
        return _FAMILIES[node.func](m, node.k, args[0])
    return {"Pi": m.pi, "Theta": m.theta, "S": m.s}[node.func]


def eval_expr(source: Union[RunConfig, Model], ast: Ast) -> Rendering:
    m = source if isinstance(source, Model) else build_model(source.d, source.b_field)
    value = _evaluate(m, ast)
    return Rendering(render(value), render_terms(value), value)
