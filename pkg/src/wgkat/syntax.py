"""Abstract syntax, concrete grammar and printer for wGKAT expressions.

Concrete syntax::

    expr    := choice
    choice  := seq ( "+[" bexp "]" seq | "[" weight "," weight "]" seq )?
    seq     := prim ( ";" prim )*
    prim    := "@" weight | ident | "0" | "1" | "(" expr ")"
             | prim "^(" bexp ")" | prim "^^" INT
    bexp    := bterm ( "+" bterm )*
    bterm   := bfact ( "." bfact )*
    bfact   := "!" bfact | "0" | "1" | ident | "(" bexp ")"

A primitive that starts like a test (a test name, ``0``, ``1`` or ``!``) is
read as a whole Boolean expression, so ``t1 + t2 ; p`` is the test
``t1 + t2`` followed by ``p``.  Sequencing associates to the right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields
from typing import NamedTuple

from .semiring import Semiring, SemiringError, format_weight, get_semiring

RESERVED = frozenset({"0", "1", "if", "while", "inf"})
DEFAULT_MAX_TESTS = 6


class SignatureError(ValueError):
    """Ill-formed signature: clashing, reserved or too many names."""


class UnknownNameError(LookupError):
    """An identifier that does not resolve against the signature."""


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1, source: str = "<expr>"):
        super().__init__(f"{source}:{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col
        self.source = source


# -- tree nodes ---------------------------------------------------------------

class _Node:
    """Structural equality with a cached hash; trees are immutable."""

    __slots__ = ()

    def _key(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((type(self).__name__,) + self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __eq__(self, other):
        if self is other:
            return True
        if type(other) is not type(self) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __ne__(self, other):
        return not self == other


def _node(cls):
    cls = dataclass(frozen=True, eq=False, repr=True)(cls)
    cls.__hash__ = _Node.__hash__
    cls.__eq__ = _Node.__eq__
    return cls


# Boolean expressions

class BExp(_Node):
    pass


@_node
class BFalse(BExp):
    pass


@_node
class BTrue(BExp):
    pass


@_node
class Prim(BExp):
    name: str


@_node
class Not(BExp):
    arg: BExp


@_node
class Or(BExp):
    left: BExp
    right: BExp


@_node
class And(BExp):
    left: BExp
    right: BExp


# Expressions

class Expression(_Node):
    pass


@_node
class Test(Expression):
    guard: BExp


@_node
class Action(Expression):
    name: str


@_node
class Output(Expression):
    name: str


@_node
class GuardedChoice(Expression):
    left: Expression
    guard: BExp
    right: Expression


@_node
class WeightedChoice(Expression):
    left: Expression
    r: object
    s: object
    right: Expression


@_node
class Seq(Expression):
    first: Expression
    second: Expression


@_node
class Loop(Expression):
    body: Expression
    guard: BExp


TRUE = BTrue()
FALSE = BFalse()
SKIP = Test(TRUE)
ABORT = Test(FALSE)


def scale(r, sr: Semiring | str) -> Expression:
    """The scaling sugar: continue immediately with weight r."""
    return WeightedChoice(SKIP, r, get_semiring(sr).zero, ABORT)


def is_scale(e: Expression, sr: Semiring | str) -> bool:
    return (
        isinstance(e, WeightedChoice)
        and e.left == SKIP
        and e.right == ABORT
        and e.s == get_semiring(sr).zero
    )


def power(e: Expression, n: int) -> Expression:
    """n-fold sequential composition, right nested; n >= 1."""
    if n < 1:
        raise ValueError("power needs n >= 1")
    out = e
    for _ in range(n - 1):
        out = Seq(e, out)
    return out


# -- signature and atoms -------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    tests: tuple = ()
    actions: frozenset = frozenset()
    outputs: frozenset = frozenset()
    max_tests: int = DEFAULT_MAX_TESTS

    def __post_init__(self):
        object.__setattr__(self, "tests", tuple(self.tests))
        object.__setattr__(self, "actions", frozenset(self.actions))
        object.__setattr__(self, "outputs", frozenset(self.outputs))
        if len(set(self.tests)) != len(self.tests):
            raise SignatureError("duplicate test name")
        names = [set(self.tests), set(self.actions), set(self.outputs)]
        for i in range(3):
            for j in range(i + 1, 3):
                clash = names[i] & names[j]
                if clash:
                    raise SignatureError(f"name declared twice: {sorted(clash)[0]}")
        for n in set().union(*names):
            if n in RESERVED or not _IDENT.fullmatch(n):
                raise SignatureError(f"invalid or reserved name {n!r}")
        if len(self.tests) > self.max_tests:
            raise SignatureError(
                f"{len(self.tests)} tests exceed the cap of {self.max_tests} "
                "(raise it with --max-tests)"
            )

    def kind(self, name: str) -> str | None:
        if name in self.tests:
            return "test"
        if name in self.actions:
            return "action"
        if name in self.outputs:
            return "output"
        return None


class Atom(NamedTuple):
    """A total truth assignment: bit i of ``bits`` (from the top) is test i."""

    tests: tuple
    bits: int

    def value(self, name: str) -> bool:
        i = self.tests.index(name)
        return bool(self.bits >> (len(self.tests) - 1 - i) & 1)

    def __str__(self):
        if not self.tests:
            return "1"
        return "".join(t if self.value(t) else "!" + t for t in self.tests)

    def as_bexp(self) -> BExp:
        out: BExp | None = None
        for t in self.tests:
            lit = Prim(t) if self.value(t) else Not(Prim(t))
            out = lit if out is None else And(out, lit)
        return TRUE if out is None else out


def atoms(sig: Signature) -> list[Atom]:
    """All 2^|T| atoms in binary-counting order; the first test is the high bit."""
    n = len(sig.tests)
    return [Atom(sig.tests, i) for i in range(1 << n)]


def atom_entails(alpha: Atom, b: BExp) -> bool:
    if isinstance(b, BTrue):
        return True
    if isinstance(b, BFalse):
        return False
    if isinstance(b, Prim):
        if b.name not in alpha.tests:
            raise UnknownNameError(f"unknown test {b.name!r}")
        return alpha.value(b.name)
    if isinstance(b, Not):
        return not atom_entails(alpha, b.arg)
    if isinstance(b, Or):
        return atom_entails(alpha, b.left) or atom_entails(alpha, b.right)
    if isinstance(b, And):
        return atom_entails(alpha, b.left) and atom_entails(alpha, b.right)
    raise TypeError(f"not a Boolean expression: {b!r}")


# -- size bound ----------------------------------------------------------------

def size_bound(e: Expression) -> int:
    """Upper bound on the number of reachable derivative states."""
    if isinstance(e, (Test, Output)):
        return 1
    if isinstance(e, Action):
        return 2
    if isinstance(e, (GuardedChoice, WeightedChoice)):
        return size_bound(e.left) + size_bound(e.right)
    if isinstance(e, Seq):
        return size_bound(e.first) + size_bound(e.second)
    if isinstance(e, Loop):
        return size_bound(e.body)
    raise TypeError(f"not an expression: {e!r}")


# -- lexer -----------------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<weight>-?(?:inf\b|\d+(?:/\d+)?))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>\^\^|\^\(|\+\[|[()\[\],;@!.+])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, source: str = "<expr>", line: int = 1, col: int = 1) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col, source)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            out.append(Token(kind, tok, line, col))
        for ch in tok:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


# -- parser ----------------------------------------------------------------------

class Parser:
    """Recursive-descent parser for one expression against a signature."""

    def __init__(self, text: str, sig: Signature, semiring, *, source="<expr>",
                 line=1, col=1, bindings=None):
        self.sig = sig
        self.sr = get_semiring(semiring)
        self.source = source
        self.toks = tokenize(text, source, line, col)
        self.i = 0
        self.bindings = bindings or {}

    # helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, self.source)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text) -> Token:
        if self.tok.text != text:
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        return self.advance()

    def parse(self) -> Expression:
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    # expressions

    def expr(self) -> Expression:
        left = self.seq()
        t = self.tok
        if t.text == "+[":
            self.advance()
            guard = self.bexp()
            self.expect("]")
            right = self.seq()
            e = GuardedChoice(left, guard, right)
        elif t.text == "[":
            self.advance()
            r = self.weight()
            self.expect(",")
            s = self.weight()
            self.expect("]")
            right = self.seq()
            e = WeightedChoice(left, r, s, right)
        else:
            return left
        if self.tok.text in ("+[", "["):
            raise self.error("choice operators do not associate; add parentheses")
        return e

    def seq(self) -> Expression:
        items = [self.prim()]
        while self.tok.text == ";":
            self.advance()
            items.append(self.prim())
        out = items[-1]
        for e in reversed(items[:-1]):
            out = Seq(e, out)
        return out

    def prim(self) -> Expression:
        t = self.tok
        if t.text == "@":
            self.advance()
            e = scale(self.weight(), self.sr)
        elif t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
        elif t.text in ("0", "1", "!") or (t.kind == "ident" and self.sig.kind(t.text) == "test"):
            e = Test(self.bexp())
        elif t.kind == "ident":
            kind = self.sig.kind(t.text)
            self.advance()
            if kind == "action":
                e = Action(t.text)
            elif kind == "output":
                e = Output(t.text)
            elif t.text in self.bindings:
                e = self.bindings[t.text]
            else:
                raise self.error(f"unknown identifier {t.text!r}", t)
        else:
            shown = t.text or "end of input"
            raise self.error(f"expected an expression, found {shown!r}")
        while True:
            if self.tok.text == "^(":
                self.advance()
                guard = self.bexp()
                self.expect(")")
                e = Loop(e, guard)
            elif self.tok.text == "^^":
                self.advance()
                n_tok = self.tok
                if n_tok.kind != "weight" or not n_tok.text.isdigit() or int(n_tok.text) < 1:
                    raise self.error("'^^' needs a positive integer")
                self.advance()
                e = power(e, int(n_tok.text))
            else:
                return e

    def weight(self):
        t = self.tok
        if t.kind != "weight":
            raise self.error(f"expected a weight, found {t.text or 'end of input'!r}")
        self.advance()
        try:
            return self.sr.parse(t.text)
        except SemiringError as exc:
            raise self.error(str(exc), t) from None

    # Boolean expressions

    def bexp(self) -> BExp:
        b = self.bterm()
        # a '+' directly followed by '[' is the guarded-choice operator
        while self.tok.text == "+":
            self.advance()
            b = Or(b, self.bterm())
        return b

    def bterm(self) -> BExp:
        b = self.bfact()
        while self.tok.text == ".":
            self.advance()
            b = And(b, self.bfact())
        return b

    def bfact(self) -> BExp:
        t = self.tok
        if t.text == "!":
            self.advance()
            return Not(self.bfact())
        if t.text == "0":
            self.advance()
            return FALSE
        if t.text == "1":
            self.advance()
            return TRUE
        if t.text == "(":
            self.advance()
            b = self.bexp()
            self.expect(")")
            return b
        if t.kind == "ident":
            if self.sig.kind(t.text) != "test":
                raise self.error(f"unknown test {t.text!r}")
            self.advance()
            return Prim(t.text)
        raise self.error(f"expected a test, found {t.text or 'end of input'!r}")


def parse(text: str, sig: Signature, semiring, **kw) -> Expression:
    return Parser(text, sig, semiring, **kw).parse()


def parse_bexp(text: str, sig: Signature) -> BExp:
    p = Parser(text, sig, "boolean")
    b = p.bexp()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return b


# -- printer ---------------------------------------------------------------------

def pretty_bexp(b: BExp, level: int = 0) -> str:
    """level 0: or-position, 1: and-position, 2: operand of '!'."""
    if isinstance(b, BTrue):
        return "1"
    if isinstance(b, BFalse):
        return "0"
    if isinstance(b, Prim):
        return b.name
    if isinstance(b, Not):
        return "!" + pretty_bexp(b.arg, 2)
    if isinstance(b, Or):
        s = f"{pretty_bexp(b.left, 0)} + {pretty_bexp(b.right, 1)}"
        return s if level == 0 else f"({s})"
    if isinstance(b, And):
        s = f"{pretty_bexp(b.left, 1)} . {pretty_bexp(b.right, 2)}"
        return s if level <= 1 else f"({s})"
    raise TypeError(f"not a Boolean expression: {b!r}")


_CHOICE, _SEQ, _PRIM = 0, 1, 2


def pretty(e: Expression, sr: Semiring | str | None = None) -> str:
    """Concrete syntax for ``e``; with ``sr`` given, scalings print as ``@r``."""
    return _pretty(e, _CHOICE, None if sr is None else get_semiring(sr))


def _pretty(e: Expression, level: int, sr) -> str:
    if isinstance(e, Test):
        return pretty_bexp(e.guard, 2)
    if isinstance(e, (Action, Output)):
        return e.name
    if sr is not None and is_scale(e, sr):
        return "@" + format_weight(e.r)
    if isinstance(e, GuardedChoice):
        s = f"{_pretty(e.left, _SEQ, sr)} +[{pretty_bexp(e.guard)}] {_pretty(e.right, _SEQ, sr)}"
        return s if level == _CHOICE else f"({s})"
    if isinstance(e, WeightedChoice):
        s = (
            f"{_pretty(e.left, _SEQ, sr)} [{format_weight(e.r)}, {format_weight(e.s)}] "
            f"{_pretty(e.right, _SEQ, sr)}"
        )
        return s if level == _CHOICE else f"({s})"
    if isinstance(e, Seq):
        s = f"{_pretty(e.first, _PRIM, sr)} ; {_pretty(e.second, _SEQ, sr)}"
        return s if level <= _SEQ else f"({s})"
    if isinstance(e, Loop):
        body = _pretty(e.body, _PRIM, sr)
        return f"{body}^({pretty_bexp(e.guard)})"
    raise TypeError(f"not an expression: {e!r}")
