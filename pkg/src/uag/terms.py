"""Terms, equations and systems with constants, plus the text DSL.

Grammar (whitespace insignificant)::

    system   = "vars" [ident {"," ident}] ";" { equation ";" }
    equation = term "=" term
    term     = product { ("+" | "-") product }
    product  = factor { "*" factor }
    factor   = atom [ "^-1" ]
    atom     = ident | "e" | "0" | "c(" int {"," int} ")" | "#" int
             | "[" term "," term "]" | "(" term ")" | "-" atom

``*`` binds tighter than ``+``; binary ``a - b`` is read as ``a + (-b)``.
``[s, t]`` expands to ``s^-1 * t^-1 * s * t``.  The final ``;`` of a system
may be omitted.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from .algebra import ADD, INV, MUL, NEG, FiniteAlgebra, Signature, UnsupportedOperation

__all__ = [
    "Var", "Const", "App", "Term", "Equation", "EqSystem",
    "VarVar", "VarConst", "ConstConst", "Trivial", "NonSimple",
    "ParseError", "parse_system", "parse_equation", "parse_term",
    "print_system", "print_equation", "print_term",
    "free_variables", "symbols_of", "substitute", "substitute_equation",
    "drop_neutral", "commutator", "normalize_zero_mult",
]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    """A constant: a carrier index (``#k``) or a coordinate tuple (``c(...)``)."""
    value: Union[int, tuple]

    def __post_init__(self):
        if isinstance(self.value, (tuple, list)):
            object.__setattr__(self, "value", tuple(int(v) for v in self.value))
        else:
            object.__setattr__(self, "value", int(self.value))


@dataclass(frozen=True)
class App:
    op: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


Term = Union[Var, Const, App]


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term

    def __str__(self):
        return print_equation(self)


@dataclass(frozen=True)
class EqSystem:
    equations: tuple[Equation, ...]
    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(self.equations))
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variables in {self.variables}")
        declared = set(self.variables)
        for eq in self.equations:
            for v in free_variables(eq):
                if v not in declared:
                    raise ValueError(f"variable {v!r} of {eq} is not declared")

    def __len__(self):
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def prefix(self, k: int) -> "EqSystem":
        return EqSystem(self.equations[:k], self.variables)

    def extended(self, *equations: Equation) -> "EqSystem":
        return EqSystem(self.equations + tuple(equations), self.variables)

    def restricted_to(self, variables) -> "EqSystem":
        """Equations whose variables all lie in ``variables``, over those variables."""
        keep = tuple(v for v in self.variables if v in set(variables))
        eqs = tuple(e for e in self.equations if set(free_variables(e)) <= set(keep))
        return EqSystem(eqs, keep)


# ---------------------------------------------------------------------
# structural helpers

def free_variables(t) -> tuple[str, ...]:
    """Variable names in first-occurrence order (left to right)."""
    seen: dict[str, None] = {}

    def walk(u):
        if isinstance(u, Var):
            seen.setdefault(u.name)
        elif isinstance(u, App):
            for s in u.args:
                walk(s)
        elif isinstance(u, Equation):
            walk(u.lhs)
            walk(u.rhs)

    walk(t)
    return tuple(seen)


def symbols_of(t) -> set[str]:
    if isinstance(t, App):
        out = {t.op}
        for s in t.args:
            out |= symbols_of(s)
        return out
    if isinstance(t, Equation):
        return symbols_of(t.lhs) | symbols_of(t.rhs)
    return set()


def substitute(t: Term, binding: Mapping[str, Term]) -> Term:
    """Simultaneous substitution; variables outside ``binding`` stay put."""
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if isinstance(t, App):
        return App(t.op, tuple(substitute(s, binding) for s in t.args))
    return t


def substitute_equation(e: Equation, binding: Mapping[str, Term]) -> Equation:
    return Equation(substitute(e.lhs, binding), substitute(e.rhs, binding))


def drop_neutral(t: Term, neutral: str = "e", op: str = MUL) -> Term:
    """Remove factors equal to the nullary ``neutral`` from products (``x*e -> x``)."""
    if not isinstance(t, App):
        return t
    args = tuple(drop_neutral(s, neutral, op) for s in t.args)
    if t.op == op and len(args) == 2:
        unit = App(neutral)
        if args[0] == unit:
            return args[1]
        if args[1] == unit:
            return args[0]
    return App(t.op, args)


def commutator(s: Term, t: Term) -> Term:
    return App(MUL, (App(MUL, (App(MUL, (App(INV, (s,)), App(INV, (t,)))), s)), t))


# ---------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<inv>\^-1)
  | (?P<tuple>c\()
  | (?P<elem>\#\d+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[=;,()\[\]*+\-])
""", re.VERBOSE)

RESERVED = {"e", "c", "vars"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if ord(ch) > 127)
        line = text.count("\n", 0, bad) + 1
        raise ParseError(f"non-ASCII character {text[bad]!r}", line, bad - text.rfind("\n", 0, bad))
    out, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "ws":
            nl = m.group().count("\n")
            if nl:
                line += nl
                line_start = pos + m.group().rfind("\n") + 1
        else:
            out.append(_Tok(kind, m.group(), line, col))
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text, sig: Signature, target: FiniteAlgebra | None, variables=None):
        self.toks = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.target = target
        self.variables = variables

    def peek(self, offset=0):
        return self.toks[min(self.i + offset, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.col)

    def expect(self, text):
        tok = self.peek()
        if tok.text != text:
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.next()

    def at(self, text):
        return self.peek().text == text

    def need_symbol(self, sym, tok):
        if sym not in self.sig:
            raise self.error(f"unknown symbol {sym!r} for {self.sig.kind} signature", tok)

    # system / equation

    def system(self) -> EqSystem:
        tok = self.peek()
        if tok.text != "vars":
            raise self.error("system must start with 'vars'")
        self.next()
        names = []
        if not self.at(";"):
            while True:
                t = self.next()
                if t.kind != "ident":
                    raise self.error(f"expected a variable name, found {t.text!r}", t)
                if t.text in RESERVED:
                    raise self.error(f"{t.text!r} is reserved for constants and cannot name a variable", t)
                if t.text in names:
                    raise self.error(f"variable {t.text!r} declared twice", t)
                names.append(t.text)
                if not self.at(","):
                    break
                self.next()
        self.expect(";")
        self.variables = names
        eqs = []
        while self.peek().kind != "eof":
            eqs.append(self.equation())
            if self.peek().kind == "eof":
                break
            self.expect(";")
        return EqSystem(tuple(eqs), tuple(names))

    def equation(self) -> Equation:
        lhs = self.term()
        self.expect("=")
        rhs = self.term()
        return Equation(lhs, rhs)

    # terms

    def term(self):
        t = self.product()
        while self.at("+") or self.at("-"):
            tok = self.next()
            self.need_symbol(ADD, tok)
            rhs = self.product()
            if tok.text == "-":
                self.need_symbol(NEG, tok)
                rhs = App(NEG, (rhs,))
            t = App(ADD, (t, rhs))
        return t

    def product(self):
        t = self.factor()
        while self.at("*"):
            tok = self.next()
            self.need_symbol(MUL, tok)
            t = App(MUL, (t, self.factor()))
        return t

    def factor(self):
        t = self.atom()
        if self.peek().kind == "inv":
            tok = self.next()
            self.need_symbol(INV, tok)
            t = App(INV, (t,))
        return t

    def atom(self):
        tok = self.next()
        if tok.kind == "ident":
            if tok.text == "e":
                return self.neutral(tok)
            if tok.text == "c" and self.peek().text == "(":
                raise self.error("write tuple constants as c(...) without a space", tok)
            if self.variables is not None and tok.text not in self.variables:
                raise self.error(f"variable {tok.text!r} is not declared", tok)
            if tok.text in RESERVED:
                raise self.error(f"{tok.text!r} is reserved for constants", tok)
            return Var(tok.text)
        if tok.kind == "num":
            if tok.text != "0":
                raise self.error(f"bare number {tok.text!r}; write carrier elements as #k", tok)
            return self.neutral(tok)
        if tok.kind == "elem":
            k = int(tok.text[1:])
            if self.target is not None and k >= self.target.size:
                raise self.error(f"element #{k} outside carrier of size {self.target.size}", tok)
            return Const(k)
        if tok.kind == "tuple":
            vals = [self.integer()]
            while self.at(","):
                self.next()
                vals.append(self.integer())
            self.expect(")")
            self.check_tuple(vals, tok)
            return Const(tuple(vals))
        if tok.text == "[":
            s = self.term()
            self.expect(",")
            t = self.term()
            self.expect("]")
            self.need_symbol(INV, tok)
            self.need_symbol(MUL, tok)
            return commutator(s, t)
        if tok.text == "(":
            t = self.term()
            self.expect(")")
            return t
        if tok.text == "-":
            self.need_symbol(NEG, tok)
            return App(NEG, (self.atom(),))
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}", tok)

    def integer(self):
        tok = self.next()
        if tok.kind != "num":
            raise self.error(f"expected an integer, found {tok.text!r}", tok)
        return int(tok.text)

    def neutral(self, tok):
        sym = self.sig.neutral_symbol
        if sym is None:
            raise self.error(f"{self.sig.kind} signature has no neutral constant", tok)
        return App(sym)

    def check_tuple(self, vals, tok):
        target = self.target
        if target is None:
            return
        if target.components is None:
            raise self.error(f"tuple constant over {target.name}, which is not a product or power", tok)
        if len(vals) != len(target.components):
            raise self.error(f"tuple has width {len(vals)}, {target.name} has width {len(target.components)}", tok)
        for v, comp in zip(vals, target.components):
            if v >= comp.size:
                raise self.error(f"tuple entry {v} outside carrier of {comp.name}", tok)


def parse_system(text: str, sig: Signature, target: FiniteAlgebra | None = None) -> EqSystem:
    return _Parser(text, sig, target).system()


def parse_equation(text: str, sig: Signature, target: FiniteAlgebra | None = None,
                   variables=None) -> Equation:
    p = _Parser(text, sig, target, variables)
    eq = p.equation()
    if p.peek().kind != "eof":
        raise p.error(f"trailing input {p.peek().text!r}")
    return eq


def parse_term(text: str, sig: Signature, target: FiniteAlgebra | None = None, variables=None) -> Term:
    p = _Parser(text, sig, target, variables)
    t = p.term()
    if p.peek().kind != "eof":
        raise p.error(f"trailing input {p.peek().text!r}")
    return t


# ---------------------------------------------------------------------
# printing

_LEVEL = {ADD: 1, MUL: 2}


def _level(t) -> int:
    if isinstance(t, App) and len(t.args) == 2:
        return _LEVEL[t.op]
    if isinstance(t, App) and t.op == INV:
        return 3
    return 4


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        if isinstance(t.value, tuple):
            return "c(" + ",".join(map(str, t.value)) + ")"
        return f"#{t.value}"
    if not t.args:
        return t.op

    def wrap(s, min_level):
        text = print_term(s)
        return f"({text})" if _level(s) < min_level else text

    if t.op == INV:
        return wrap(t.args[0], 4) + "^-1"
    if t.op == NEG:
        return "-" + wrap(t.args[0], 4)
    if t.op in _LEVEL and len(t.args) == 2:
        lvl = _LEVEL[t.op]
        # left-associative: the right operand needs parens at the same level
        return f"{wrap(t.args[0], lvl)} {t.op} {wrap(t.args[1], lvl + 1)}"
    raise UnsupportedOperation(f"symbol {t.op!r} has no text syntax")


def print_equation(e: Equation) -> str:
    return f"{print_term(e.lhs)} = {print_term(e.rhs)}"


def print_system(s: EqSystem) -> str:
    lines = ["vars " + ", ".join(s.variables) + ";"]
    lines += [print_equation(e) + ";" for e in s.equations]
    return "\n".join(lines)


# ---------------------------------------------------------------------
# zero-multiplication normal form

@dataclass(frozen=True)
class VarVar:
    left: str
    right: str


@dataclass(frozen=True)
class VarConst:
    var: str
    value: int


@dataclass(frozen=True)
class ConstConst:
    left: int
    right: int


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class NonSimple:
    """``sum(coeff * var) = value`` that fits none of the simple shapes."""
    coefficients: tuple[tuple[str, int], ...]
    value: int


def _additive_exponent(r: FiniteAlgebra) -> int:
    add, zero = r.tables[ADD], r.neutral
    exp = 1
    for x in range(r.size):
        n, acc = 1, x
        while acc != zero:
            acc = int(add[acc, x])
            n += 1
        exp = exp * n // _gcd(exp, n)
    return exp


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _linear_form(t: Term, r: FiniteAlgebra) -> tuple[dict[str, int], int]:
    add, neg, zero = r.tables[ADD], r.tables[NEG], r.neutral
    if isinstance(t, Var):
        return {t.name: 1}, zero
    if isinstance(t, Const):
        if isinstance(t.value, tuple):
            return {}, r.encode(t.value)
        return {}, t.value
    if t.op == MUL:
        return {}, zero
    if t.op == "0":
        return {}, zero
    if t.op == NEG:
        coeffs, c = _linear_form(t.args[0], r)
        return {v: -k for v, k in coeffs.items()}, int(neg[c])
    if t.op == ADD:
        c1, k1 = _linear_form(t.args[0], r)
        c2, k2 = _linear_form(t.args[1], r)
        out = dict(c1)
        for v, k in c2.items():
            out[v] = out.get(v, 0) + k
        return out, int(add[k1, k2])
    raise UnsupportedOperation(f"symbol {t.op!r} is not in the ring language")


def normalize_zero_mult(e: Equation, ring: FiniteAlgebra):
    """Rewrite ``e`` over a zero-multiplication ring into a simple equation.

    Products vanish, leaving ``sum(c_i * x_i) + d = 0``.  Coefficients are
    reduced modulo the additive exponent.  The result is ``Trivial``,
    ``ConstConst``, ``VarConst`` or ``VarVar`` when one of those shapes
    captures it, else a ``NonSimple`` linear form with the same solutions.
    """
    if ring.kind != "ring":
        raise UnsupportedOperation(f"normalize_zero_mult needs a ring signature, got {ring.kind}")
    add, neg, zero = ring.tables[ADD], ring.tables[NEG], ring.neutral
    exp = _additive_exponent(ring)
    lc, lk = _linear_form(e.lhs, ring)
    rc, rk = _linear_form(e.rhs, ring)
    coeffs = dict(lc)
    for v, k in rc.items():
        coeffs[v] = coeffs.get(v, 0) - k
    order = [v for v in free_variables(e) if coeffs.get(v, 0) % exp]
    coeffs = {v: coeffs[v] % exp for v in order}
    # sum(c x) = rk - lk
    rhs = int(add[rk, neg[lk]])

    if not coeffs:
        return Trivial() if rhs == zero else ConstConst(int(add[lk, neg[rk]]), zero)
    if len(coeffs) == 1:
        (v, c), = coeffs.items()
        if c == 1:
            return VarConst(v, rhs)
        if c == exp - 1:
            return VarConst(v, int(neg[rhs]))
    if len(coeffs) == 2 and rhs == zero:
        (v, c), (w, d) = coeffs.items()
        if (c + d) % exp == 0 and c in (1, exp - 1):
            return VarVar(v, w)
    return NonSimple(tuple(coeffs.items()), rhs)


def simple_to_equation(s) -> Equation:
    """An ordinary ring equation with the same solutions as ``s``."""
    if isinstance(s, Trivial):
        return Equation(App("0"), App("0"))
    if isinstance(s, ConstConst):
        return Equation(Const(s.left), Const(s.right))
    if isinstance(s, VarConst):
        return Equation(Var(s.var), Const(s.value))
    if isinstance(s, VarVar):
        return Equation(Var(s.left), Var(s.right))
    lhs = None
    for v, c in s.coefficients:
        for _ in range(c):
            lhs = Var(v) if lhs is None else App(ADD, (lhs, Var(v)))
    return Equation(lhs, Const(s.value))
