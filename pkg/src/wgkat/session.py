"""Line-oriented session files: declarations, let-bindings and checks.

    semiring tropical
    tests t1 t2
    actions p q
    outputs v
    let loop = (p ; v)^(t1)
    check loop == loop ; 1
    check @0 != 0

Declarations must precede the first ``let`` or ``check``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .semiring import Semiring, SemiringError, get_semiring
from .syntax import DEFAULT_MAX_TESTS, Expression, ParseError, Parser, Signature, SignatureError


class SessionError(ValueError):
    """A diagnostic carrying ``file:line:col``."""

    def __init__(self, msg: str, source: str, line: int, col: int = 1):
        super().__init__(f"{source}:{line}:{col}: {msg}")
        self.source = source
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Check:
    lhs: Expression
    rhs: Expression
    expect_equal: bool
    line: int
    text: str


@dataclass
class Session:
    semiring: Semiring
    signature: Signature
    bindings: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    source: str = "<session>"

    def lookup(self, name: str) -> Expression:
        """Resolve a name given on the command line (so no line/column applies)."""
        if name not in self.bindings:
            known = ", ".join(sorted(self.bindings)) or "none"
            raise LookupError(f"{self.source}: unbound name {name!r} (bound: {known})")
        return self.bindings[name]


_LET = re.compile(r"let\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*")
_OP = re.compile(r"==|!=")
_DECLS = ("semiring", "tests", "actions", "outputs")


def _leading(raw: str) -> int:
    return len(raw) - len(raw.lstrip())


def parse_session(text: str, source: str = "<session>", max_tests: int = DEFAULT_MAX_TESTS) -> Session:
    sr_id = None
    decl: dict = {"tests": None, "actions": None, "outputs": None}
    session: Session | None = None

    def begin(line_no):
        nonlocal session
        if session is None:
            if sr_id is None:
                raise SessionError("no 'semiring' declared before first use", source, line_no)
            try:
                sig = Signature(
                    tests=decl["tests"] or (),
                    actions=decl["actions"] or (),
                    outputs=decl["outputs"] or (),
                    max_tests=max_tests,
                )
            except SignatureError as exc:
                raise SessionError(str(exc), source, line_no) from None
            session = Session(get_semiring(sr_id), sig, source=source)
        return session

    def expr(s, body, line_no, col):
        try:
            return Parser(body, s.signature, s.semiring, source=source, line=line_no, col=col,
                          bindings=s.bindings).parse()
        except ParseError as exc:
            raise SessionError(exc.msg, source, exc.line, exc.col) from None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        ind = _leading(body)
        stripped = body.strip()
        word = stripped.split()[0]
        rest = stripped[len(word):].strip()
        if word in _DECLS:
            if session is not None:
                raise SessionError(f"'{word}' must come before any let or check", source, line_no, ind + 1)
            if word == "semiring":
                if sr_id is not None:
                    raise SessionError("semiring declared twice", source, line_no, ind + 1)
                try:
                    sr_id = get_semiring(rest).id
                except SemiringError as exc:
                    raise SessionError(str(exc), source, line_no, ind + len(word) + 2) from None
            else:
                if decl[word] is not None:
                    raise SessionError(f"'{word}' declared twice", source, line_no, ind + 1)
                decl[word] = tuple(rest.split())
        elif word == "let":
            s = begin(line_no)
            m = _LET.match(stripped)
            if not m:
                raise SessionError("expected 'let NAME = EXPR'", source, line_no, ind + 1)
            name = m.group(1)
            if name in s.bindings:
                raise SessionError(f"name {name!r} bound twice", source, line_no, ind + 5)
            if s.signature.kind(name) is not None:
                raise SessionError(f"{name!r} is already a {s.signature.kind(name)}", source, line_no, ind + 5)
            s.bindings[name] = expr(s, stripped[m.end():], line_no, ind + m.end() + 1)
        elif word == "check":
            s = begin(line_no)
            ops = list(_OP.finditer(rest))
            if len(ops) != 1:
                raise SessionError("expected 'check EXPR == EXPR' or 'check EXPR != EXPR'",
                                   source, line_no, ind + 1)
            op = ops[0]
            off = ind + len(stripped) - len(rest)  # column offset of rest, 0-based
            lhs = expr(s, rest[: op.start()], line_no, off + 1)
            rhs = expr(s, rest[op.end():], line_no, off + op.end() + 1)
            s.checks.append(Check(lhs, rhs, op.group() == "==", line_no, rest))
        else:
            raise SessionError(f"unknown directive {word!r}", source, line_no, ind + 1)
    return begin(len(text.splitlines()) + 1)


def load_session(path: str, max_tests: int = DEFAULT_MAX_TESTS) -> Session:
    with open(path, encoding="utf-8") as fh:
        return parse_session(fh.read(), source=path, max_tests=max_tests)
