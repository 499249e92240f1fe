"""Exact integer/rational expression language used by the data files.

The grammar covers what the dimension formulas and constraint lines need and
nothing more::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?          # right-associative
    atom  := INT | VAR | FUNC '(' args ')' | '(' expr ')'

    FUNC  := binom(x, y) | floor_div(x, y) | prod(i, lo, hi, body)
    VAR   := one of  a b n t k p q m s r

Evaluation is exact: values are Python ints / ``fractions.Fraction``, never
floats.  ``^`` requires a non-negative integer exponent (a negative *literal*
exponent is rejected at parse time, a negative computed one at evaluation
time).  ``binom`` follows the combinatorial convention ``binom(x, y) = 0`` for
``y < 0`` or ``y > x >= 0`` and rejects negative upper arguments.  An empty
``prod`` (``hi < lo``) is 1.  ``/`` is exact rational division.

Constraint strings are comma-separated atoms, each either a comparison
(``2*a <= t+1``, single ``=`` means equality) or a parity word (``n even``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Union

Number = Union[int, Fraction]

ALLOWED_VARS = frozenset("abntkpqmsr")

_FUNCS = {"binom": 2, "floor_div": 2, "prod": 4}

_CMP_OPS = ("<=", ">=", "==", "!=", "<", ">", "=")


class ParseError(ValueError):
    """Raised for malformed expression or constraint text."""


class EvalError(ValueError):
    """Raised when a well-formed expression cannot be evaluated exactly."""


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op><=|>=|==|!=|[-+*/^()<>=,]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    # U+2212 (minus sign) appears in typeset sources; treat it as '-'.
    text = text.replace("−", "-")
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r} at position {pos}")
        if m.group("int") is not None:
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


# ---------------------------------------------------------------------------
# AST
#
# Nodes are plain tuples:
#   ('int', n)  ('var', name)  ('neg', e)
#   ('+', l, r) ('-', l, r) ('*', l, r) ('/', l, r) ('^', base, exp)
#   ('binom', x, y)  ('floor_div', x, y)  ('prod', var, lo, hi, body)

Node = tuple


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]], text: str):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r} at position {tok[2]} in {self.text!r}")

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in ops

    # grammar ----------------------------------------------------------

    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.next()[1]
            node = (op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.next()[1]
            node = (op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.at_op("-"):
            self.next()
            return ("neg", self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.at_op("^"):
            self.next()
            exp = self.unary()
            if exp[0] == "neg" and exp[1][0] == "int":
                raise ParseError("negative literal exponent")
            return ("^", base, exp)
        return base

    def atom(self) -> Node:
        tok = self.next()
        kind, value, pos = tok
        if kind == "int":
            return ("int", int(value))
        if kind == "name":
            if self.at_op("("):
                return self.call(value, pos)
            if value not in ALLOWED_VARS:
                raise ParseError(f"unknown identifier {value!r} at position {pos}")
            return ("var", value)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"unexpected token {value!r} at position {pos}")

    def call(self, name: str, pos: int) -> Node:
        if name not in _FUNCS:
            raise ParseError(f"unknown function {name!r} at position {pos}")
        self.expect_op("(")
        args: list[Node] = []
        if name == "prod":
            tok = self.next()
            if tok[0] != "name" or tok[1] not in ALLOWED_VARS:
                raise ParseError("prod index must be a variable name")
            args.append(("var", tok[1]))
            self.expect_op(",")
        while True:
            args.append(self.expr())
            if self.at_op(","):
                self.next()
                continue
            break
        self.expect_op(")")
        if len(args) != _FUNCS[name]:
            raise ParseError(
                f"{name} takes {_FUNCS[name]} arguments, got {len(args)}"
            )
        if name == "prod":
            return ("prod", args[0][1], args[1], args[2], args[3])
        return (name, args[0], args[1])


def _parse_node(text: str) -> Node:
    parser = _Parser(_tokenize(text), text)
    node = parser.expr()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ParseError(f"trailing input at position {tok[2]} in {text!r}")
    return node


# ---------------------------------------------------------------------------
# evaluation

def _as_int(value: Number, what: str) -> int:
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise EvalError(f"{what} must be an integer, got {value}")
        return value.numerator
    return int(value)


def _binom(x: Number, y: Number) -> int:
    xi = _as_int(x, "binom upper argument")
    yi = _as_int(y, "binom lower argument")
    if yi < 0:
        return 0
    if xi < 0:
        raise EvalError(f"binom with negative upper argument {xi}")
    if yi > xi:
        return 0
    import math

    return math.comb(xi, yi)


def _floor_div(x: Number, y: Number) -> int:
    if y == 0:
        raise EvalError("floor_div by zero")
    q = Fraction(x) / Fraction(y)
    return q.numerator // q.denominator


def _div(x: Number, y: Number) -> Number:
    if y == 0:
        raise EvalError("division by zero")
    q = Fraction(x) / Fraction(y)
    return q.numerator if q.denominator == 1 else q


def _ipow(base: Number, exp: Number) -> Number:
    e = _as_int(exp, "exponent")
    if e < 0:
        raise EvalError(f"negative exponent {e}")
    return base**e


def _prod_loop(lo: Number, hi: Number, body: Callable[[int], Number]) -> Number:
    lo_i = _as_int(lo, "prod lower bound")
    hi_i = _as_int(hi, "prod upper bound")
    out: Number = 1
    for i in range(lo_i, hi_i + 1):
        out = out * body(i)
    return out


def _eval_node(node: Node, env: Mapping[str, Number]) -> Number:
    head = node[0]
    if head == "int":
        return node[1]
    if head == "var":
        try:
            return env[node[1]]
        except KeyError:
            raise EvalError(f"unbound variable {node[1]!r}") from None
    if head == "neg":
        return -_eval_node(node[1], env)
    if head == "+":
        return _eval_node(node[1], env) + _eval_node(node[2], env)
    if head == "-":
        return _eval_node(node[1], env) - _eval_node(node[2], env)
    if head == "*":
        return _eval_node(node[1], env) * _eval_node(node[2], env)
    if head == "/":
        return _div(_eval_node(node[1], env), _eval_node(node[2], env))
    if head == "^":
        return _ipow(_eval_node(node[1], env), _eval_node(node[2], env))
    if head == "binom":
        return _binom(_eval_node(node[1], env), _eval_node(node[2], env))
    if head == "floor_div":
        return _floor_div(_eval_node(node[1], env), _eval_node(node[2], env))
    if head == "prod":
        _, var, lo, hi, body = node
        inner = dict(env)

        def body_fn(i: int) -> Number:
            inner[var] = i
            return _eval_node(body, inner)

        return _prod_loop(_eval_node(lo, env), _eval_node(hi, env), body_fn)
    raise AssertionError(f"unhandled node {head!r}")


def _free_vars(node: Node) -> frozenset[str]:
    head = node[0]
    if head == "int":
        return frozenset()
    if head == "var":
        return frozenset((node[1],))
    if head == "neg":
        return _free_vars(node[1])
    if head == "prod":
        _, var, lo, hi, body = node
        return _free_vars(lo) | _free_vars(hi) | (_free_vars(body) - {var})
    out: frozenset[str] = frozenset()
    for child in node[1:]:
        out |= _free_vars(child)
    return out


# ---------------------------------------------------------------------------
# printing (normalized, minimal parentheses)

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _to_str(node: Node, parent_prec: int = 0) -> str:
    head = node[0]
    if head == "int":
        return str(node[1])
    if head == "var":
        return node[1]
    if head == "neg":
        s = "-" + _to_str(node[1], _PREC["neg"])
        return f"({s})" if parent_prec > _PREC["neg"] else s
    if head in ("+", "-", "*", "/"):
        prec = _PREC[head]
        # left-associative: right child needs strictly higher precedence
        s = f"{_to_str(node[1], prec)}{head}{_to_str(node[2], prec + 1)}"
        return f"({s})" if parent_prec > prec else s
    if head == "^":
        prec = _PREC["^"]
        s = f"{_to_str(node[1], prec + 1)}^{_to_str(node[2], prec)}"
        return f"({s})" if parent_prec > prec else s
    if head == "prod":
        _, var, lo, hi, body = node
        return f"prod({var},{_to_str(lo)},{_to_str(hi)},{_to_str(body)})"
    return f"{head}({_to_str(node[1])},{_to_str(node[2])})"


# ---------------------------------------------------------------------------
# compilation to python closures

_RUNTIME = {
    "_binom": _binom,
    "_floor_div": _floor_div,
    "_div": _div,
    "_ipow": _ipow,
    "_prod_loop": _prod_loop,
    "__builtins__": {},
}


def _compile_node(node: Node, bound: frozenset[str]) -> str:
    head = node[0]
    if head == "int":
        return str(node[1])
    if head == "var":
        if node[1] not in bound:
            raise EvalError(f"unbound variable {node[1]!r} in compiled expression")
        return node[1]
    if head == "neg":
        return f"(-{_compile_node(node[1], bound)})"
    if head in ("+", "-", "*"):
        return f"({_compile_node(node[1], bound)}{head}{_compile_node(node[2], bound)})"
    if head == "/":
        return f"_div({_compile_node(node[1], bound)},{_compile_node(node[2], bound)})"
    if head == "^":
        exp = node[2]
        if exp[0] == "int":
            return f"({_compile_node(node[1], bound)}**{exp[1]})"
        return f"_ipow({_compile_node(node[1], bound)},{_compile_node(exp, bound)})"
    if head in ("binom", "floor_div"):
        return (
            f"_{'binom' if head == 'binom' else 'floor_div'}"
            f"({_compile_node(node[1], bound)},{_compile_node(node[2], bound)})"
        )
    if head == "prod":
        _, var, lo, hi, body = node
        body_src = _compile_node(body, bound | {var})
        return (
            f"_prod_loop({_compile_node(lo, bound)},{_compile_node(hi, bound)},"
            f"lambda {var}: {body_src})"
        )
    raise AssertionError(f"unhandled node {head!r}")


# ---------------------------------------------------------------------------
# polynomial expansion (for exact identity checks)
#
# A polynomial is a dict mapping a sorted tuple of (var, exponent) pairs to a
# Fraction coefficient.  Only +, -, *, ^int, unary minus, integers, variables
# and division by a constant expand; anything else raises EvalError.

Poly = dict


def _poly_const(c: Fraction) -> Poly:
    return {(): c} if c else {}


def _poly_add(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for mono, coeff in q.items():
        new = out.get(mono, Fraction(0)) + sign * coeff
        if new:
            out[mono] = new
        else:
            out.pop(mono, None)
    return out


def _poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            exps: dict[str, int] = {}
            for var, e in m1 + m2:
                exps[var] = exps.get(var, 0) + e
            mono = tuple(sorted(exps.items()))
            new = out.get(mono, Fraction(0)) + c1 * c2
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
    return out


def _poly_node(node: Node) -> Poly:
    head = node[0]
    if head == "int":
        return _poly_const(Fraction(node[1]))
    if head == "var":
        return {((node[1], 1),): Fraction(1)}
    if head == "neg":
        return _poly_add({}, _poly_node(node[1]), -1)
    if head == "+":
        return _poly_add(_poly_node(node[1]), _poly_node(node[2]))
    if head == "-":
        return _poly_add(_poly_node(node[1]), _poly_node(node[2]), -1)
    if head == "*":
        return _poly_mul(_poly_node(node[1]), _poly_node(node[2]))
    if head == "^":
        if node[2][0] != "int" or node[2][1] < 0:
            raise EvalError("cannot expand non-literal exponent")
        out = _poly_const(Fraction(1))
        for _ in range(node[2][1]):
            out = _poly_mul(out, _poly_node(node[1]))
        return out
    if head == "/":
        denom = _poly_node(node[2])
        if set(denom) - {()}:
            raise EvalError("cannot expand division by a non-constant")
        c = denom.get((), Fraction(0))
        if c == 0:
            raise EvalError("division by zero in expansion")
        return {m: coeff / c for m, coeff in _poly_node(node[1]).items()}
    raise EvalError(f"cannot expand {head!r} to a polynomial")


def _subst_node(node: Node, mapping: Mapping[str, Node]) -> Node:
    head = node[0]
    if head == "int":
        return node
    if head == "var":
        return mapping.get(node[1], node)
    if head == "prod":
        _, var, lo, hi, body = node
        inner = {k: v for k, v in mapping.items() if k != var}
        return (
            "prod",
            var,
            _subst_node(lo, mapping),
            _subst_node(hi, mapping),
            _subst_node(body, inner),
        )
    return (head,) + tuple(_subst_node(child, mapping) for child in node[1:])


# ---------------------------------------------------------------------------
# public wrapper

class Expr:
    """A parsed expression.  Immutable; compare/hash by normalized text."""

    __slots__ = ("node", "_text")

    def __init__(self, node: Node):
        self.node = node
        self._text = _to_str(node)

    @property
    def free_vars(self) -> frozenset[str]:
        return _free_vars(self.node)

    def evaluate(self, env: Mapping[str, Number]) -> Fraction:
        return Fraction(_eval_node(self.node, env))

    def compile(self, argnames: Iterable[str] | None = None) -> Callable:
        """Compile to a plain positional-argument python function."""
        names = tuple(argnames) if argnames is not None else tuple(sorted(self.free_vars))
        missing = self.free_vars - set(names)
        if missing:
            raise EvalError(f"compile missing variables {sorted(missing)}")
        src = _compile_node(self.node, frozenset(names))
        fn = eval(f"lambda {','.join(names)}: {src}", dict(_RUNTIME))
        fn.argnames = names
        return fn

    def substitute(self, mapping: Mapping[str, "Expr | int"]) -> "Expr":
        node_map = {
            k: (("int", v) if isinstance(v, int) else v.node)
            for k, v in mapping.items()
        }
        return Expr(_subst_node(self.node, node_map))

    def poly(self) -> Poly:
        """Expand to {monomial: coefficient}; raises EvalError if impossible."""
        return _poly_node(self.node)

    def __str__(self) -> str:
        return self._text

    def __repr__(self) -> str:
        return f"Expr({self._text!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Expr) and self._text == other._text

    def __hash__(self) -> int:
        return hash(self._text)


def parse(text: str) -> Expr:
    """Parse expression text; raises ParseError with position on bad input."""
    return Expr(_parse_node(text))


def evaluate(expr: "Expr | str", env: Mapping[str, Number] | None = None) -> Fraction:
    """Evaluate an Expr (or raw text) to an exact Fraction."""
    e = parse(expr) if isinstance(expr, str) else expr
    return e.evaluate(env or {})


# ---------------------------------------------------------------------------
# constraints

class Constraint:
    """One comparison (`2*a <= n`) or parity atom (`n even`)."""

    __slots__ = ("kind", "lhs", "op", "rhs", "var", "parity")

    def __init__(self, text: str):
        text = text.strip().replace("−", "-")
        parity = re.fullmatch(r"\s*([a-z])\s+(even|odd)\s*", text)
        if parity:
            self.kind = "parity"
            self.var = parity.group(1)
            if self.var not in ALLOWED_VARS:
                raise ParseError(f"unknown identifier {self.var!r}")
            self.parity = parity.group(2)
            self.lhs = self.op = self.rhs = None
            return
        for op in _CMP_OPS:
            # scan outside parentheses for the comparison operator
            depth = 0
            idx = -1
            i = 0
            while i < len(text):
                c = text[i]
                if c == "(":
                    depth += 1
                elif c == ")":
                    depth -= 1
                elif depth == 0 and text.startswith(op, i):
                    # don't split '<=' at '<', or '==' / '!=' / '>=' at '='
                    if op == "=" and i > 0 and text[i - 1] in "<>=!":
                        i += 1
                        continue
                    if op == "=" and text.startswith("==", i):
                        i += 1
                        continue
                    idx = i
                    break
                i += 1
            if idx >= 0:
                self.kind = "cmp"
                self.lhs = parse(text[:idx])
                self.op = "==" if op == "=" else op
                self.rhs = parse(text[idx + len(op):])
                self.var = self.parity = None
                return
        raise ParseError(f"not a constraint: {text!r}")

    @property
    def free_vars(self) -> frozenset[str]:
        if self.kind == "parity":
            return frozenset((self.var,))
        return self.lhs.free_vars | self.rhs.free_vars

    def satisfies(self, env: Mapping[str, Number]) -> bool:
        if self.kind == "parity":
            value = _as_int(env[self.var], "parity operand")
            return value % 2 == (0 if self.parity == "even" else 1)
        left = self.lhs.evaluate(env)
        right = self.rhs.evaluate(env)
        return {
            "<=": left <= right,
            ">=": left >= right,
            "<": left < right,
            ">": left > right,
            "==": left == right,
            "!=": left != right,
        }[self.op]

    def source(self, bound: frozenset[str]) -> str:
        if self.kind == "parity":
            want = 0 if self.parity == "even" else 1
            return f"({self.var}%2=={want})"
        return (
            f"({_compile_node(self.lhs.node, bound)}"
            f"{self.op}{_compile_node(self.rhs.node, bound)})"
        )

    def __str__(self) -> str:
        if self.kind == "parity":
            return f"{self.var} {self.parity}"
        op = "=" if self.op == "==" else self.op
        return f"{self.lhs}{op}{self.rhs}"


class ConstraintSet:
    """A conjunction of constraints parsed from comma-separated text."""

    def __init__(self, text: str = ""):
        self.atoms: tuple[Constraint, ...] = tuple(
            Constraint(part) for part in _split_commas(text) if part.strip()
        )

    @property
    def free_vars(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for atom in self.atoms:
            out |= atom.free_vars
        return out

    def satisfies(self, env: Mapping[str, Number]) -> bool:
        return all(atom.satisfies(env) for atom in self.atoms)

    def compile(self, argnames: Iterable[str]) -> Callable:
        names = tuple(argnames)
        bound = frozenset(names)
        missing = self.free_vars - bound
        if missing:
            raise EvalError(f"compile missing variables {sorted(missing)}")
        body = " and ".join(atom.source(bound) for atom in self.atoms) or "True"
        fn = eval(f"lambda {','.join(names)}: {body}", dict(_RUNTIME))
        fn.argnames = names
        return fn

    def equalities(self) -> list[tuple[Expr, Expr]]:
        return [(a.lhs, a.rhs) for a in self.atoms if a.kind == "cmp" and a.op == "=="]

    def __iter__(self) -> Iterator[Constraint]:
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __str__(self) -> str:
        return ", ".join(str(a) for a in self.atoms)


def _split_commas(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    parts: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def poly_equal(*exprs: Expr, minus: Iterable[Expr] = ()) -> bool:
    """True iff sum(exprs) - sum(minus) expands to the zero polynomial."""
    total: Poly = {}
    for e in exprs:
        total = _poly_add(total, e.poly())
    for e in minus:
        total = _poly_add(total, e.poly(), -1)
    return not total
