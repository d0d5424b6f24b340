"""Recursive-descent parsers for the group and ring expression grammars.

    group := gterm (('x' | '×') gterm)*
    gterm := '(' group ')' | C<n> | D<n> | Q8 | S<n> | Hol(<n>) | AGL1(<q>) | GL2(<q>) | SL2(<q>) | UC(<q>)

    ring  := rterm (('x' | '×') rterm)*
    rterm := '(' ring ')' | Z<n> | F<q> | M(<k>,<ring>) | U(<k>,<ring>) | TP(<ring>,<k>)
           | GR(<t>,<group>) | End(<d1>,...,<dr>)

Whitespace is ignored everywhere. An unparenthesized chain of products becomes
one flat product, so printing a parsed plan and parsing it again round-trips.
"""

from __future__ import annotations

from .errors import BadParameter, NonPrime, ParseError
from .expr import (AGL1Expr, CyclicExpr, DihedralExpr, EndAb, Fq, GL2Expr, GroupExpr, GroupProductExpr,
                   GroupRing, HolExpr, Matrix, Product, Q8Expr, RingExpr, SL2Expr, SymmetricExpr,
                   TruncPoly, UCExpr, UpperTriangular, Zmod)

_PRODUCT = ("x", "×")

# keyword -> (constructor, parenthesized argument?) ; longer keywords first so SL2 wins over S
_GROUP_ATOMS = [
    ("AGL1", AGL1Expr, True),
    ("Hol", HolExpr, True),
    ("GL2", GL2Expr, True),
    ("SL2", SL2Expr, True),
    ("UC", UCExpr, True),
    ("Q8", Q8Expr, None),
    ("C", CyclicExpr, False),
    ("D", DihedralExpr, False),
    ("S", SymmetricExpr, False),
]
_RING_KEYWORDS = ["End", "GR", "TP", "M", "U", "Z", "F"]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # low-level helpers
    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, literal: str) -> bool:
        self._skip()
        return self.text.startswith(literal, self.pos)

    def accept(self, literal: str) -> bool:
        if self.peek(literal):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str):
        if not self.accept(literal):
            self.fail(f"expected {literal!r}", {literal})

    def fail(self, message: str, expected=(), at: int | None = None):
        raise ParseError(message, self.pos if at is None else at, frozenset(expected))

    def number(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected a number", {"<number>"})
        return int(self.text[start:self.pos])

    def at_end(self) -> bool:
        self._skip()
        return self.pos >= len(self.text)

    def finish(self):
        if not self.at_end():
            self.fail(f"unexpected {self.text[self.pos]!r}", {"end of input", *_PRODUCT})

    def product_op(self) -> bool:
        return any(self.accept(op) for op in _PRODUCT)

    def build(self, start: int, ctor, *args):
        try:
            return ctor(*args)
        except (BadParameter, NonPrime) as exc:
            self.fail(str(exc), at=start)

    # groups
    def group(self) -> GroupExpr:
        factors = [self.group_term()]
        while self.product_op():
            factors.append(self.group_term())
        return factors[0] if len(factors) == 1 else GroupProductExpr(tuple(factors))

    def group_term(self) -> GroupExpr:
        self._skip()
        start = self.pos
        if self.accept("("):
            inner = self.group()
            self.expect(")")
            return inner
        for kw, ctor, paren in _GROUP_ATOMS:
            if not self.accept(kw):
                continue
            if paren is None:
                return ctor()
            if paren:
                self.expect("(")
                n = self.number()
                self.expect(")")
            else:
                n = self.number()
            return self.build(start, ctor, n)
        self.fail("expected a group", {"(", *[k for k, _, _ in _GROUP_ATOMS]})

    # rings
    def ring(self) -> RingExpr:
        factors = [self.ring_term()]
        while self.product_op():
            factors.append(self.ring_term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def ring_term(self) -> RingExpr:
        self._skip()
        start = self.pos
        if self.accept("("):
            inner = self.ring()
            self.expect(")")
            return inner
        if self.accept("End"):
            self.expect("(")
            ds = [self.number()]
            while self.accept(","):
                ds.append(self.number())
            self.expect(")")
            return self.build(start, EndAb, tuple(ds))
        if self.accept("GR"):
            self.expect("(")
            t = self.number()
            self.expect(",")
            g = self.group()
            self.expect(")")
            return self.build(start, GroupRing, t, g)
        if self.accept("TP"):
            self.expect("(")
            sub = self.ring()
            self.expect(",")
            k = self.number()
            self.expect(")")
            return self.build(start, TruncPoly, sub, k)
        for kw, ctor in (("M", Matrix), ("U", UpperTriangular)):
            if self.accept(kw):
                self.expect("(")
                k = self.number()
                self.expect(",")
                sub = self.ring()
                self.expect(")")
                return self.build(start, ctor, k, sub)
        if self.accept("Z"):
            return self.build(start, Zmod, self.number())
        if self.accept("F"):
            return self.build(start, Fq, self.number())
        self.fail("expected a ring", {"(", *_RING_KEYWORDS})


def parse_group_expr(text: str) -> GroupExpr:
    p = _Parser(text)
    out = p.group()
    p.finish()
    return out


def parse_ring_expr(text: str) -> RingExpr:
    p = _Parser(text)
    out = p.ring()
    p.finish()
    return out
