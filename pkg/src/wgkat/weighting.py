"""Finitely supported weightings over transition targets.

A weighting maps targets (accept, reject, an output, or an action step into a
state) to semiring weights.  Entries equal to the semiring zero are never
stored, so ``support()`` is exactly the set of targets with nonzero weight.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, NamedTuple

from .semiring import Semiring, Weight, format_weight, get_semiring


class _Terminal:
    """Accept/reject markers; compared by identity so no output can collide."""

    __slots__ = ("kind",)

    def __init__(self, kind: str):
        self.kind = kind

    def __repr__(self):
        return self.kind.capitalize()

    def __reduce__(self):
        return (_terminal, (self.kind,))


ACCEPT = _Terminal("accept")
REJECT = _Terminal("reject")


def _terminal(kind):
    return ACCEPT if kind == "accept" else REJECT


class Out(NamedTuple):
    """Return the output value ``name``."""

    name: str


class Step(NamedTuple):
    """Perform ``action`` and continue in ``state`` (an index or an expression)."""

    action: str
    state: object


def is_step(t) -> bool:
    return type(t) is Step


def target_key(t):
    """Canonical order: Accept < Reject < outputs by name < steps by (action, state)."""
    if t is ACCEPT:
        return (0,)
    if t is REJECT:
        return (1,)
    if type(t) is Out:
        return (2, t.name)
    state = t.state
    if isinstance(state, int):
        return (3, t.action, 0, state, "")
    from .syntax import pretty

    return (3, t.action, 1, 0, pretty(state))


class Weighting:
    """Immutable finite map from targets to nonzero weights."""

    __slots__ = ("sr", "_m")

    def __init__(self, sr: Semiring | str, entries: dict | Iterable = ()):
        sr = get_semiring(sr)
        self.sr = sr
        m = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for t, w in items:
            sr.check(w)
            if w == sr.zero:
                continue
            if t in m:
                w = sr.add(m[t], w)
            m[t] = w
        self._m = m

    @classmethod
    def _raw(cls, sr: Semiring, m: dict) -> "Weighting":
        obj = cls.__new__(cls)
        obj.sr = sr
        obj._m = m
        return obj

    # Mapping-like access; missing targets weigh zero.

    def __getitem__(self, t) -> Weight:
        return self._m.get(t, self.sr.zero)

    def __contains__(self, t) -> bool:
        return t in self._m

    def __iter__(self) -> Iterator:
        return iter(self._m)

    def __len__(self) -> int:
        return len(self._m)

    def __bool__(self) -> bool:
        return bool(self._m)

    def items(self):
        return self._m.items()

    def support(self) -> list:
        return sorted(self._m, key=target_key)

    def sorted_items(self) -> list:
        return [(t, self._m[t]) for t in self.support()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Weighting):
            return NotImplemented
        return self.sr is other.sr and self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __repr__(self) -> str:
        body = " + ".join(f"{format_weight(w)}*{t!r}" for t, w in self.sorted_items())
        return f"Weighting({body or '0'})"

    def __add__(self, other: "Weighting") -> "Weighting":
        return w_sum(self, other)

    def scale(self, r: Weight) -> "Weighting":
        return w_scale(r, self)

    def map_targets(self, f: Callable) -> "Weighting":
        """Relabel targets, summing weights of targets that collide."""
        sr = self.sr
        m: dict = {}
        for t, w in self._m.items():
            t2 = f(t)
            m[t2] = sr.add(m[t2], w) if t2 in m else w
        return Weighting._raw(sr, m)


def empty(sr: Semiring | str) -> Weighting:
    return Weighting._raw(get_semiring(sr), {})


def dirac(sr: Semiring | str, x) -> Weighting:
    sr = get_semiring(sr)
    return Weighting._raw(sr, {x: sr.one})


def w_sum(a: Weighting, b: Weighting) -> Weighting:
    sr = a.sr
    if b.sr is not sr:
        raise ValueError("weightings over different semirings")
    if not b._m:
        return a
    if not a._m:
        return b
    m = dict(a._m)
    for t, w in b._m.items():
        if t in m:
            # positivity: a sum of nonzero weights is never zero
            m[t] = sr.add(m[t], w)
        else:
            m[t] = w
    return Weighting._raw(sr, m)


def w_scale(r: Weight, a: Weighting) -> Weighting:
    sr = a.sr
    sr.check(r)
    if r == sr.one:
        return a
    if r == sr.zero:
        return Weighting._raw(sr, {})
    m = {}
    for t, w in a._m.items():
        rw = sr.mul(r, w)
        if rw != sr.zero:
            m[t] = rw
    return Weighting._raw(sr, m)


def mass(a: Weighting, pred: Callable[[object], bool] = lambda t: True) -> Weight:
    sr = a.sr
    total = sr.zero
    for t, w in a._m.items():
        if pred(t):
            total = sr.add(total, w)
    return total


def lin_apply(h: Callable[[object], Weighting], a: Weighting) -> Weighting:
    """Linear extension of ``h``: sum over x of a(x) * h(x)."""
    sr = a.sr
    m: dict = {}
    for t, w in a._m.items():
        for y, hw in h(t)._m.items():
            v = hw if w == sr.one else sr.mul(w, hw)
            if v == sr.zero:
                continue
            m[y] = sr.add(m[y], v) if y in m else v
    return Weighting._raw(sr, m)


def validate(a: Weighting) -> None:
    """Raise AssertionError if a stored entry is zero or outside the carrier."""
    for t, w in a._m.items():
        assert a.sr.contains(w), f"{w!r} outside {a.sr.id}"
        assert w != a.sr.zero, f"stored zero at {t!r}"
