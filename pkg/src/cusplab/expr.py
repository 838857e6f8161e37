"""A small expression language for germs and metrics.

Grammar (lowest to highest precedence)::

    germ     := '(' expr (',' expr)+ ')' | expr
    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' exponent)?
    exponent := ['-'] NUMBER | '(' ['-'] NUMBER ['/' NUMBER] ')'
    atom     := NUMBER | NAME | NAME '(' expr ')'
              | 'int' '(' expr ',' NAME ',' '0' ',' NAME ')' | '(' expr ')'

Names are variables (``u``, ``v``, ``t``, ``tau``), constants (``pi``,
``e``), function names (sin, cos, sinh, cosh, exp, log, sqrt) or parameters
supplied by the caller.  ``int(body, tau, 0, u)`` is the integral of
``body`` from 0 to ``u``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy import integrate

from . import jets
from .errors import DomainViolation, ParseError, UnsupportedIntegral
from .jets import Jet1, Jet2, JetVec

VARIABLES = ("u", "v", "t", "tau")
CONSTANTS = {"pi": math.pi, "e": math.e}
FUNCTIONS = ("sin", "cos", "sinh", "cosh", "exp", "log", "sqrt")


# ---------------------------------------------------------------------------
# AST
@dataclass(frozen=True)
class Node:
    pos: tuple = field(default=(1, 1), compare=False, repr=False)


@dataclass(frozen=True)
class Num(Node):
    value: Fraction = Fraction(0)


@dataclass(frozen=True)
class Const(Node):
    name: str = ""


@dataclass(frozen=True)
class Var(Node):
    name: str = ""


@dataclass(frozen=True)
class Param(Node):
    name: str = ""


@dataclass(frozen=True)
class Neg(Node):
    operand: Node = None


@dataclass(frozen=True)
class BinOp(Node):
    op: str = "+"
    left: Node = None
    right: Node = None


@dataclass(frozen=True)
class Pow(Node):
    base: Node = None
    exponent: Fraction = Fraction(1)


@dataclass(frozen=True)
class Call(Node):
    fn: str = ""
    arg: Node = None


@dataclass(frozen=True)
class Integral(Node):
    body: Node = None
    var: str = "tau"
    upper: str = "u"


@dataclass(frozen=True)
class GermSpec:
    components: tuple
    variables: tuple
    parameters: Mapping = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.components)


# ---------------------------------------------------------------------------
# tokenizer
_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    out = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        elif kind != "ws":
            out.append(Token(kind, s, line, col))
            col += len(s)
        else:
            col += len(s)
        i = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text, params):
        self.toks = tokenize(text)
        self.i = 0
        self.params = dict(params or {})
        self.bound = []

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.tok
        self.i += 1
        return t

    def error(self, message, expected=()):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.col, expected)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "eof":
            self.error(f"expected {text!r}", (text,))
        return self.advance()

    def germ(self):
        if self.tok.text == "(":
            start = self.i
            open_tok = self.advance()
            first = self.expr()
            if self.tok.text == ",":
                items = [first]
                while self.tok.text == ",":
                    self.advance()
                    items.append(self.expr())
                self.expect(")")
                self.finish()
                return tuple(items)
            self.i = start
            del open_tok
        node = self.expr()
        self.finish()
        return (node,)

    def finish(self):
        if self.tok.kind != "eof":
            self.error("unexpected trailing input", ("end of input",))

    def expr(self):
        node = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            t = self.advance()
            node = BinOp((t.line, t.col), t.text, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "op":
            t = self.advance()
            node = BinOp((t.line, t.col), t.text, node, self.unary())
        return node

    def unary(self):
        if self.tok.text == "-":
            t = self.advance()
            return Neg((t.line, t.col), self.unary())
        if self.tok.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text == "^":
            t = self.advance()
            return Pow((t.line, t.col), base, self.exponent())
        return base

    def number(self):
        if self.tok.kind != "num":
            self.error("expected a numeric literal", ("NUMBER",))
        return Fraction(self.advance().text)

    def exponent(self):
        if self.tok.text == "(":
            self.advance()
            sign = -1 if self.tok.text == "-" else 1
            if sign < 0:
                self.advance()
            value = self.number()
            if self.tok.text == "/":
                self.advance()
                den = self.number()
                if den == 0:
                    self.error("zero denominator in exponent")
                value = value / den
            self.expect(")")
            return sign * value
        sign = -1 if self.tok.text == "-" else 1
        if sign < 0:
            self.advance()
        if self.tok.kind != "num":
            self.error("exponent must be a literal rational", ("NUMBER", "(p/q)"))
        return sign * self.number()

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num((t.line, t.col), Fraction(t.text))
        if t.text == "(":
            self.advance()
            node = self.expr()
            if self.tok.text == ",":
                self.error("tuples are only allowed at the top level", (")",))
            self.expect(")")
            return node
        if t.kind == "name":
            self.advance()
            name = t.text
            pos = (t.line, t.col)
            if name == "int":
                return self.integral(pos)
            if name == "abs":
                raise ParseError(
                    "abs() is not available: |x| is not smooth at 0; rewrite the germ "
                    "without absolute values",
                    t.line,
                    t.col,
                )
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                if self.tok.text == ",":
                    self.error(f"{name}() takes exactly one argument", (")",))
                self.expect(")")
                return Call(pos, name, arg)
            if self.tok.text == "(":
                raise ParseError(f"unknown function {name!r}", t.line, t.col, FUNCTIONS)
            if name in self.bound or name in VARIABLES:
                return Var(pos, name)
            if name in self.params:
                return Param(pos, name)
            if name in CONSTANTS:
                return Const(pos, name)
            raise ParseError(
                f"unknown identifier {name!r}",
                t.line,
                t.col,
                VARIABLES + tuple(CONSTANTS) + tuple(sorted(self.params)),
            )
        self.error("expected an expression", ("NUMBER", "NAME", "("))

    def integral(self, pos):
        self.expect("(")
        # the bound variable is only known after the body, so parse the body
        # with a look-ahead for the name in the second slot
        save = self.i
        depth = 0
        var = None
        j = self.i
        while self.toks[j].kind != "eof":
            tx = self.toks[j].text
            if tx == "(":
                depth += 1
            elif tx == ")":
                if depth == 0:
                    break
                depth -= 1
            elif tx == "," and depth == 0:
                nxt = self.toks[j + 1]
                var = nxt.text if nxt.kind == "name" else None
                break
            j += 1
        if var is None:
            self.i = j if self.toks[j].kind != "eof" else self.i
            self.error("int() needs the form int(body, var, 0, upper)", ("NAME",))
        self.i = save
        self.bound.append(var)
        try:
            body = self.expr()
        finally:
            self.bound.pop()
        self.expect(",")
        self.advance()  # bound variable name, validated above
        self.expect(",")
        lo = self.tok
        lower = self.expr()
        if not (isinstance(lower, Num) and lower.value == 0):
            raise UnsupportedIntegral(
                f"integral lower limit must be the literal 0 (line {lo.line}, column {lo.col})"
            )
        self.expect(",")
        up = self.tok
        if up.kind != "name" or up.text not in VARIABLES or up.text == var:
            self.error("integral upper limit must be a declared variable", ("u", "v", "t"))
        self.advance()
        self.expect(")")
        return Integral(pos, body, var, up.text)


def parse_expr(text, params=None):
    """Parse a single scalar expression."""
    items = _Parser(text, params).germ()
    if len(items) != 1:
        raise ParseError("expected a single expression, got a tuple", 1, 1)
    return items[0]


def free_variables(node, bound=()):
    if isinstance(node, Var):
        return set() if node.name in bound else {node.name}
    if isinstance(node, Neg):
        return free_variables(node.operand, bound)
    if isinstance(node, BinOp):
        return free_variables(node.left, bound) | free_variables(node.right, bound)
    if isinstance(node, Pow):
        return free_variables(node.base, bound)
    if isinstance(node, Call):
        return free_variables(node.arg, bound)
    if isinstance(node, Integral):
        return free_variables(node.body, bound + (node.var,)) | {node.upper}
    return set()


def parse_germ(text, params=None, variables=None):
    """Parse ``text`` into a :class:`GermSpec`.

    ``variables`` defaults to ``("t",)`` when only ``t`` occurs and to
    ``("u", "v")`` otherwise.
    """
    items = _Parser(text, params).germ()
    used = set().union(*(free_variables(n) for n in items))
    if variables is None:
        variables = ("t",) if used <= {"t"} and "t" in used else ("u", "v")
    undeclared = used - set(variables)
    if undeclared:
        raise ParseError(
            f"variable(s) {sorted(undeclared)} not declared (declared: {list(variables)})", 1, 1
        )
    return GermSpec(tuple(items), tuple(variables), dict(params or {}))


# ---------------------------------------------------------------------------
# pretty printing
_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _fmt_num(q):
    if q.denominator == 1:
        return str(q.numerator)
    return repr(float(q))


def _fmt_exp(q):
    if q.denominator == 1 and q >= 0:
        return str(q.numerator)
    if q.denominator == 1:
        return f"({q.numerator})"
    return f"({q.numerator}/{q.denominator})"


def pretty(node, parent=0, right=False):
    """Canonical text of an AST with the minimal parentheses."""
    if isinstance(node, Num):
        return _fmt_num(node.value)
    if isinstance(node, (Const, Var, Param)):
        return node.name
    if isinstance(node, Neg):
        s = "-" + pretty(node.operand, 3)
        return f"({s})" if parent >= 3 else s
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        s = f"{pretty(node.left, p)} {node.op} {pretty(node.right, p, True)}"
        if parent > p or (right and parent == p):
            return f"({s})"
        return s
    if isinstance(node, Pow):
        s = f"{pretty(node.base, 5)}^{_fmt_exp(node.exponent)}"
        return f"({s})" if parent >= 5 else s
    if isinstance(node, Call):
        return f"{node.fn}({pretty(node.arg)})"
    if isinstance(node, Integral):
        return f"int({pretty(node.body)}, {node.var}, 0, {node.upper})"
    raise TypeError(f"not an expression node: {node!r}")


def pretty_germ(spec):
    if spec.dim == 1:
        return pretty(spec.components[0])
    return "(" + ", ".join(pretty(c) for c in spec.components) + ")"


# ---------------------------------------------------------------------------
# evaluation over jets
_JET_FUNCS = {
    "sin": jets.sin,
    "cos": jets.cos,
    "sinh": jets.sinh,
    "cosh": jets.cosh,
    "exp": jets.exp,
    "log": jets.log,
    "sqrt": jets.sqrt,
}


def _eval(node, env, params, base):
    if isinstance(node, Num):
        return float(node.value)
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Param):
        return float(params[node.name])
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Neg):
        return -_eval(node.operand, env, params, base)
    if isinstance(node, BinOp):
        a = _eval(node.left, env, params, base)
        b = _eval(node.right, env, params, base)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if not isinstance(b, jets.Jet) and b == 0:
            raise DomainViolation(f"division by zero at line {node.pos[0]}, column {node.pos[1]}")
        return a / b
    if isinstance(node, Pow):
        a = _eval(node.base, env, params, base)
        if isinstance(a, jets.Jet):
            return jets.power(a, node.exponent)
        if a <= 0 and node.exponent.denominator != 1:
            raise DomainViolation(f"non-integer power of {a!r}")
        return a ** float(node.exponent)
    if isinstance(node, Call):
        a = _eval(node.arg, env, params, base)
        if isinstance(a, jets.Jet):
            try:
                return _JET_FUNCS[node.fn](a)
            except DomainViolation as exc:
                raise DomainViolation(
                    f"{node.fn}() at line {node.pos[0]}, column {node.pos[1]}: {exc}"
                ) from None
        return float(_float_call(node.fn, a))
    if isinstance(node, Integral):
        if base.get(node.upper, 0.0) != 0.0:
            raise UnsupportedIntegral(
                f"integral up to {node.upper} can only be expanded at {node.upper} = 0"
            )
        if node.upper in free_variables(node.body, (node.var,)):
            raise UnsupportedIntegral(
                f"integrand may not depend on the upper limit {node.upper!r} directly"
            )
        ref = env[node.upper]
        inner = dict(env)
        inner[node.var] = ref
        body = _eval(node.body, inner, params, base)
        if not isinstance(body, jets.Jet):
            body = ref.constant(body, ref.order)
        if isinstance(body, Jet1):
            return body.antiderivative().truncate(body.order)
        axis = "u" if _axis_of(ref) == 0 else "v"
        return body.antiderivative(axis).truncate(body.order)
    raise TypeError(f"cannot evaluate {node!r}")


def _axis_of(jet2):
    return 0 if jet2.c[1, 0] != 0 else 1


def _float_call(fn, a):
    if fn in ("log", "sqrt") and a <= 0:
        raise DomainViolation(f"{fn}({a!r}) is outside the domain")
    return getattr(np, fn)(a)


def eval_jet(spec, base=None, order=None):
    """Jets of every component of ``spec`` at ``base``."""
    nvars = len(spec.variables)
    if order is None:
        order = jets.DEFAULT_CURVE_ORDER if nvars == 1 else jets.DEFAULT_SURFACE_ORDER
    if base is None:
        base = (0.0,) * nvars
    base = tuple(float(b) for b in np.atleast_1d(base))
    if len(base) != nvars:
        raise ValueError(f"base point needs {nvars} coordinate(s)")
    if nvars == 1:
        env = {spec.variables[0]: Jet1.variable(order, base[0])}
        template = Jet1.constant(0.0, order)
    else:
        u, v = Jet2.variables(order, base)
        env = dict(zip(spec.variables, (u, v)))
        template = Jet2.constant(0.0, order)
    basemap = dict(zip(spec.variables, base))
    out = []
    for comp in spec.components:
        val = _eval(comp, env, spec.parameters, basemap)
        if not isinstance(val, jets.Jet):
            val = template + val
        out.append(val.truncate(order) if val.order > order else val)
    if len(out) == 1:
        return out[0]
    return JetVec(out)


def eval_scalar_jet(text, variables=("u", "v"), base=None, order=None, params=None):
    spec = parse_germ(text, params, variables)
    if spec.dim != 1:
        raise ParseError("expected a scalar expression", 1, 1)
    return eval_jet(spec, base, order)


# ---------------------------------------------------------------------------
# plain floating-point evaluation (for sampling point clouds)
def _feval(node, env, params):
    if isinstance(node, Num):
        return float(node.value)
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Param):
        return float(params[node.name])
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Neg):
        return -_feval(node.operand, env, params)
    if isinstance(node, BinOp):
        a = _feval(node.left, env, params)
        b = _feval(node.right, env, params)
        return {"+": a + b, "-": a - b, "*": a * b}.get(node.op) if node.op != "/" else a / b
    if isinstance(node, Pow):
        return _feval(node.base, env, params) ** float(node.exponent)
    if isinstance(node, Call):
        return _float_call(node.fn, _feval(node.arg, env, params))
    if isinstance(node, Integral):
        upper = env[node.upper]

        def integrand(x):
            inner = dict(env)
            inner[node.var] = x
            return _feval(node.body, inner, params)

        value, _ = integrate.quad(integrand, 0.0, upper, epsabs=1e-14, epsrel=1e-13, limit=200)
        return value
    raise TypeError(f"cannot evaluate {node!r}")


def evaluate(spec, point):
    """Floating-point value of every component of ``spec`` at ``point``."""
    env = dict(zip(spec.variables, (float(x) for x in np.atleast_1d(point))))
    return np.array([float(_feval(c, env, spec.parameters)) for c in spec.components])
