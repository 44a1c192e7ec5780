"""Text formats: presentations, endomorphism tables and element expressions.

Presentation source::

    field 2;
    family a(1); family b(1);
    family alam(1) range 2;          # index fixed to range(2), ignores Bounds
    rule a[i]*b[j] -> 0;
    rule b[j]*a[i] -> 0 when j >= i;
    rule a[i]*b[0] -> sum(k=1..i)(a[i-k]*b[k]) when i >= 1;

Endomorphism tables use ``kind``, ``map`` and ``inverse`` statements::

    kind endomorphism;
    map a[i] -> a[i+1];
    map b[j] -> b[j+1];

Element expressions: ``2*b[0]*a[1] + a[0]``, polynomials ``(a0[0] - a1[0]*x)*w``
with ``x^k`` powers.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import (
    Comparison,
    Family,
    GeneratorId,
    LetterPattern,
    LinExpr,
    Presentation,
    RewriteRule,
    RhsSum,
    RhsWord,
    RingElem,
)
from .errors import DSLSyntaxError, FieldError, UnknownFamilyError
from .field import check_prime

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|>=|<=|==|!=|\.\.|[\[\](),;*+\-<>=^:])
""", re.VERBOSE)

KEYWORDS = {"field", "family", "rule", "when", "and", "sum", "range", "map", "inverse", "kind"}
RESERVED = KEYWORDS | {"x"}


@dataclass(frozen=True)
class Token:
    kind: str  # num | ident | op | eof
    value: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return DSLSyntaxError(msg, tok.line, tok.col)

    def at(self, value):
        return self.tok.kind in ("op", "ident") and self.tok.value == value

    def accept(self, value):
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            raise self.error(f"expected {value!r}, found {self.tok.value or 'end of input'!r}")

    def number(self):
        if self.tok.kind != "num":
            raise self.error(f"expected a number, found {self.tok.value or 'end of input'!r}")
        self.i += 1
        return int(self.toks[self.i - 1].value)

    def ident(self):
        if self.tok.kind != "ident":
            raise self.error(f"expected a name, found {self.tok.value or 'end of input'!r}")
        self.i += 1
        return self.toks[self.i - 1].value

    # -- index arithmetic --------------------------------------------------

    def linexpr(self):
        const, coeffs = 0, {}
        sign = -1 if self.accept("-") else 1
        while True:
            if self.tok.kind == "num":
                c = self.number() * sign
                if self.accept("*"):
                    v = self.ident()
                    coeffs[v] = coeffs.get(v, 0) + c
                else:
                    const += c
            elif self.tok.kind == "ident" and self.tok.value not in RESERVED:
                v = self.ident()
                coeffs[v] = coeffs.get(v, 0) + sign
            else:
                raise self.error("expected an index expression")
            if self.accept("+"):
                sign = 1
            elif self.accept("-"):
                sign = -1
            else:
                break
        return LinExpr(const, tuple((v, c) for v, c in coeffs.items() if c))

    def letter_pattern(self):
        tok = self.tok
        name = self.ident()
        if name in RESERVED:
            raise self.error(f"{name!r} is reserved", tok)
        indices = []
        if self.accept("["):
            indices.append(self.linexpr())
            while self.accept(","):
                indices.append(self.linexpr())
            self.expect("]")
        return LetterPattern(name, tuple(indices))

    def pattern_word(self):
        letters = [self.letter_pattern()]
        while self.accept("*"):
            letters.append(self.letter_pattern())
        return tuple(letters)

    def rhs(self):
        if self.tok.kind == "num" and self.tok.value == "0" and self.toks[self.i + 1].value != "*":
            self.i += 1
            return ()
        items = [self.rhs_term(1)]
        while True:
            if self.accept("+"):
                items.append(self.rhs_term(1))
            elif self.accept("-"):
                items.append(self.rhs_term(-1))
            else:
                return tuple(items)

    def rhs_term(self, sign):
        if self.accept("-"):
            sign = -sign
        coef = sign
        if self.tok.kind == "num":
            coef *= self.number()
            if not self.accept("*"):
                return RhsWord(coef, ())
        if self.accept("sum"):
            self.expect("(")
            var = self.ident()
            self.expect("=")
            low = self.linexpr()
            self.expect("..")
            high = self.linexpr()
            self.expect(")")
            self.expect("(")
            body = self.rhs()
            self.expect(")")
            if coef != 1:
                body = tuple(_scale_rhs(item, coef) for item in body)
            return RhsSum(var, low, high, body)
        return RhsWord(coef, self.pattern_word())

    def guard(self):
        out = []
        while True:
            left = self.linexpr()
            tok = self.tok
            if tok.value not in (">=", "<=", ">", "<", "==", "!="):
                raise self.error("expected a comparison operator")
            self.i += 1
            out.append(Comparison(left, tok.value, self.linexpr()))
            if not self.accept("and"):
                return tuple(out)


def _scale_rhs(item, c):
    if isinstance(item, RhsSum):
        return RhsSum(item.var, item.low, item.high, tuple(_scale_rhs(x, c) for x in item.body))
    return RhsWord(item.coef * c, item.letters)


def _check_rule_vars(parser, tok, lhs, rhs, guard):
    bound = set()
    for letter in lhs:
        for e in letter.indices:
            bound |= e.variables()

    def walk(items, scope):
        for item in items:
            if isinstance(item, RhsSum):
                for v in item.low.variables() | item.high.variables():
                    if v not in scope:
                        raise parser.error(f"unbound index variable {v!r}", tok)
                walk(item.body, scope | {item.var})
            else:
                for letter in item.letters:
                    for e in letter.indices:
                        for v in e.variables():
                            if v not in scope:
                                raise parser.error(f"unbound index variable {v!r}", tok)

    walk(rhs, bound)
    for cmp in guard:
        for v in cmp.left.variables() | cmp.right.variables():
            if v not in bound:
                raise parser.error(f"unbound index variable {v!r} in guard", tok)


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Parse presentation source; rules keep declaration order."""
    ps = _Parser(text)
    p = 2
    families, rules = [], []
    seen_field = False
    while ps.tok.kind != "eof":
        tok = ps.tok
        if ps.accept("field"):
            if seen_field:
                raise ps.error("field declared twice", tok)
            p = ps.number()
            try:
                check_prime(p)
            except FieldError as exc:
                raise FieldError(f"{exc} (line {tok.line}, column {tok.col})") from None
            seen_field = True
        elif ps.accept("family"):
            fname = ps.ident()
            if fname in RESERVED:
                raise ps.error(f"{fname!r} is reserved", tok)
            if any(f.name == fname for f in families):
                raise ps.error(f"family {fname!r} declared twice", tok)
            ps.expect("(")
            arity = ps.number()
            ps.expect(")")
            fixed = ps.number() if ps.accept("range") else None
            families.append(Family(fname, arity, len(families), fixed))
        elif ps.accept("rule"):
            lhs = ps.pattern_word()
            ps.expect("->")
            rhs = ps.rhs()
            guard = ps.guard() if ps.accept("when") else ()
            known = {f.name for f in families}
            for letter in lhs:
                if letter.family not in known:
                    raise UnknownFamilyError(
                        f"unknown family {letter.family!r} (line {tok.line}, column {tok.col})")
            _check_rule_vars(ps, tok, lhs, rhs, guard)
            rules.append(RewriteRule(lhs, rhs, guard, label=f"line {tok.line}"))
        else:
            raise ps.error(f"unexpected {ps.tok.value!r}")
        ps.expect(";")
    return Presentation(p, families, rules, name=name)


def parse_map_statements(text: str, pres: Presentation):
    """Parse an endomorphism table into (kind, forward rules, inverse rules).

    Each rule has a single-letter left side; the right side is the image.
    """
    ps = _Parser(text)
    kind = "endomorphism"
    forward, backward = [], []
    while ps.tok.kind != "eof":
        tok = ps.tok
        if ps.accept("kind"):
            kind = ps.ident()
            if kind not in ("endomorphism", "automorphism"):
                raise ps.error(f"unknown kind {kind!r}", tok)
        elif ps.at("map") or ps.at("inverse"):
            target = forward if ps.tok.value == "map" else backward
            ps.i += 1
            lhs = (ps.letter_pattern(),)
            ps.expect("->")
            rhs = ps.rhs()
            guard = ps.guard() if ps.accept("when") else ()
            _check_rule_vars(ps, tok, lhs, rhs, guard)
            pres.family(lhs[0].family)
            target.append(RewriteRule(lhs, rhs, guard, label=f"line {tok.line}"))
        else:
            raise ps.error(f"unexpected {ps.tok.value!r}")
        ps.expect(";")
    return kind, forward, backward


# ---------------------------------------------------------------------------
# element expressions


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Gen:
    name: str
    indices: tuple


@dataclass(frozen=True)
class XPow:
    power: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Pow:
    base: object
    power: int


class _ExprParser(_Parser):
    def expr(self):
        if self.accept("-"):
            node = Neg(self.term())
        else:
            self.accept("+")
            node = self.term()
        while True:
            if self.accept("+"):
                node = BinOp("+", node, self.term())
            elif self.accept("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while self.accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.accept("^"):
            node = Pow(node, self.number())
        return node

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            return Num(self.number())
        if self.accept("-"):
            return Neg(self.atom())
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "ident":
            name = self.ident()
            if name == "x":
                return XPow(1)
            if name in KEYWORDS:
                raise self.error(f"{name!r} is reserved", tok)
            indices = []
            if self.accept("["):
                indices.append(self.number())
                while self.accept(","):
                    indices.append(self.number())
                self.expect("]")
            return Gen(name, tuple(indices))
        raise self.error(f"unexpected {tok.value or 'end of input'!r}")


def parse_expression(text: str):
    ps = _ExprParser(text)
    node = ps.expr()
    if ps.tok.kind != "eof":
        raise ps.error(f"unexpected {ps.tok.value!r}")
    return node


def split_elements(text: str) -> list:
    return [part.strip() for part in text.split(";") if part.strip()]


def uses_x(node) -> bool:
    if isinstance(node, XPow):
        return True
    if isinstance(node, BinOp):
        return uses_x(node.left) or uses_x(node.right)
    if isinstance(node, Neg):
        return uses_x(node.operand)
    if isinstance(node, Pow):
        return uses_x(node.base)
    return False


def evaluate(node, pres: Presentation, alpha=None, order: int | None = None, names=None,
             bounds=None, as_series: bool = False):
    """Evaluate an expression tree.

    Returns a RingElem when ``x`` does not occur (and no series is forced),
    otherwise a SkewPoly, or a TruncSeries when ``order`` is given.
    """
    from .skew import Endomorphism, SkewPoly, TruncSeries, skew_mul_poly, skew_mul_series

    if isinstance(node, str):
        node = parse_expression(node)
    alpha = alpha or Endomorphism.identity(pres)
    names = names or {}

    def lift(v):
        if isinstance(v, RingElem):
            v = SkewPoly(pres, (v,))
        if order is not None and isinstance(v, SkewPoly):
            v = TruncSeries.from_poly(v, order)
        return v

    def mul(a, b):
        if isinstance(a, RingElem) and isinstance(b, RingElem):
            from .algebra import multiply
            return multiply(a, b, pres, bounds)
        a, b = lift(a), lift(b)
        if order is not None:
            return skew_mul_series(a, b, alpha, pres, bounds)
        return skew_mul_poly(a, b, alpha, pres, bounds)

    def add(a, b, sign):
        if isinstance(a, RingElem) and isinstance(b, RingElem):
            return a + b if sign > 0 else a - b
        a, b = lift(a), lift(b)
        return a + b if sign > 0 else a - b

    def ev(n):
        if isinstance(n, Num):
            return pres.scalar(n.value)
        if isinstance(n, Gen):
            if n.name in names and not n.indices:
                return names[n.name]
            g = GeneratorId(n.name, n.indices)
            pres.check_generator(g)
            return pres.element({(g,): 1}, bounds)
        if isinstance(n, XPow):
            one = pres.one()
            return lift(SkewPoly(pres, (pres.zero(),) * n.power + (one,)))
        if isinstance(n, Neg):
            v = ev(n.operand)
            return -v
        if isinstance(n, Pow):
            base = ev(n.base)
            out = pres.one()
            for _ in range(n.power):
                out = mul(out, base)
            return out
        if n.op == "*":
            return mul(ev(n.left), ev(n.right))
        return add(ev(n.left), ev(n.right), 1 if n.op == "+" else -1)

    value = ev(node)
    if as_series or order is not None:
        return lift(value)
    return value
