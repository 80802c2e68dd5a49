"""Operational semantics: one-step derivatives and the reachable automaton."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .semiring import Semiring, Weight, get_semiring
from .syntax import (
    Action,
    Atom,
    Expression,
    GuardedChoice,
    Loop,
    Output,
    Seq,
    Signature,
    SKIP,
    Test,
    WeightedChoice,
    atom_entails,
    atoms,
    size_bound,
)
from .weighting import (
    ACCEPT,
    REJECT,
    Out,
    Step,
    Weighting,
    dirac,
    lin_apply,
    target_key,
    w_scale,
    w_sum,
)


def ee(e: Expression, alpha: Atom, sr: Semiring | str) -> Weight:
    """Weight with which ``e`` accepts immediately under ``alpha``.

    Computed by its own recursion, independently of :func:`derivative`.
    """
    sr = get_semiring(sr)
    if isinstance(e, (Action, Output)):
        return sr.zero
    if isinstance(e, Test):
        return sr.one if atom_entails(alpha, e.guard) else sr.zero
    if isinstance(e, WeightedChoice):
        return sr.add(sr.mul(e.r, ee(e.left, alpha, sr)), sr.mul(e.s, ee(e.right, alpha, sr)))
    if isinstance(e, GuardedChoice):
        branch = e.left if atom_entails(alpha, e.guard) else e.right
        return ee(branch, alpha, sr)
    if isinstance(e, Seq):
        return sr.mul(ee(e.first, alpha, sr), ee(e.second, alpha, sr))
    if isinstance(e, Loop):
        return sr.zero if atom_entails(alpha, e.guard) else sr.one
    raise TypeError(f"not an expression: {e!r}")


class Deriver:
    """Derivative computation with a per-(expression, atom) memo table."""

    def __init__(self, sr: Semiring | str):
        self.sr = get_semiring(sr)
        self._memo: dict = {}

    def __call__(self, e: Expression, alpha: Atom) -> Weighting:
        key = (e, alpha.bits)
        got = self._memo.get(key)
        if got is None:
            got = self._derive(e, alpha)
            self._memo[key] = got
        return got

    def _derive(self, e: Expression, alpha: Atom) -> Weighting:
        sr = self.sr
        if isinstance(e, Test):
            return dirac(sr, ACCEPT if atom_entails(alpha, e.guard) else REJECT)
        if isinstance(e, Output):
            return dirac(sr, Out(e.name))
        if isinstance(e, Action):
            return dirac(sr, Step(e.name, SKIP))
        if isinstance(e, GuardedChoice):
            return self(e.left if atom_entails(alpha, e.guard) else e.right, alpha)
        if isinstance(e, WeightedChoice):
            return w_sum(w_scale(e.r, self(e.left, alpha)), w_scale(e.s, self(e.right, alpha)))
        if isinstance(e, Seq):
            f = e.second

            def cont(t):
                if t is ACCEPT:
                    return self(f, alpha)
                if type(t) is Step:
                    return dirac(sr, Step(t.action, Seq(t.state, f)))
                return dirac(sr, t)

            return lin_apply(cont, self(e.first, alpha))
        if isinstance(e, Loop):
            if not atom_entails(alpha, e.guard):
                return dirac(sr, ACCEPT)
            body = self(e.body, alpha)
            k = sr.star(body[ACCEPT])
            m = {}
            for t, w in body.items():
                if t is ACCEPT:
                    continue
                kw = sr.mul(k, w)
                if kw == sr.zero:
                    continue
                if type(t) is Step:
                    t = Step(t.action, Seq(t.state, e))
                m[t] = kw
            return Weighting._raw(sr, m)
        raise TypeError(f"not an expression: {e!r}")


def derivative(e: Expression, alpha: Atom, sr: Semiring | str, resolve: Deriver | None = None) -> Weighting:
    """One-step behaviour of ``e`` under ``alpha``; Step targets hold expressions."""
    d = resolve if resolve is not None else Deriver(sr)
    return d(e, alpha)


@dataclass(frozen=True)
class Automaton:
    """Finite weighted automaton; ``trans[state][atom_index]`` is a Weighting
    whose Step targets carry state indices."""

    states: tuple
    trans: tuple
    atoms: tuple
    semiring: Semiring
    signature: Signature | None = None

    def __post_init__(self):
        n = len(self.states)
        for row in self.trans:
            assert len(row) == len(self.atoms)
            for w in row:
                for t in w:
                    if type(t) is Step:
                        assert 0 <= t.state < n, f"dangling step target {t.state}"

    @property
    def n(self) -> int:
        return len(self.states)

    def actions(self) -> list[str]:
        seen = set()
        for row in self.trans:
            for w in row:
                for t in w:
                    if type(t) is Step:
                        seen.add(t.action)
        return sorted(seen)


def _step_order(t):
    # steps keep derivative order within an action (stable sort), which is
    # deterministic and avoids printing expressions just to order them
    return (3, t.action) if type(t) is Step else target_key(t)


def explore(
    roots: Expression | list[Expression],
    sig: Signature,
    sr: Semiring | str,
    *,
    check_bound: bool = True,
) -> Automaton:
    """Breadth-first closure of the derivative relation from ``roots``.

    Root i becomes state i (shared roots are interned once, so several roots
    may map to the same index; use :func:`explore_roots` to get the mapping).
    """
    aut, _ = explore_roots(roots, sig, sr, check_bound=check_bound)
    return aut


def explore_roots(roots, sig: Signature, sr: Semiring | str, *, check_bound: bool = True):
    sr = get_semiring(sr)
    if isinstance(roots, Expression):
        roots = [roots]
    ats = atoms(sig)
    deriver = Deriver(sr)
    index: dict = {}
    states: list = []

    def intern(e):
        i = index.get(e)
        if i is None:
            i = len(states)
            index[e] = i
            states.append(e)
            work.append(i)
        return i

    work: deque = deque()
    root_ids = [intern(r) for r in roots]
    trans: dict = {}
    while work:
        i = work.popleft()
        e = states[i]
        row = []
        for alpha in ats:
            d = deriver(e, alpha)
            m = {}
            for t in sorted(d, key=_step_order):
                w = d[t]
                if type(t) is Step:
                    t = Step(t.action, intern(t.state))
                m[t] = w
            row.append(Weighting._raw(sr, m))
        trans[i] = tuple(row)
    if check_bound:
        bound = sum(size_bound(r) for r in set(roots))
        assert len(states) <= bound, (
            f"explored {len(states)} states, above the bound {bound}: derivative rule bug"
        )
    aut = Automaton(
        states=tuple(states),
        trans=tuple(trans[i] for i in range(len(states))),
        atoms=tuple(ats),
        semiring=sr,
        signature=sig,
    )
    return aut, root_ids
