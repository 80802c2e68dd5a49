"""Bisimilarity by partition refinement, and the one-step normal form."""

from __future__ import annotations

from dataclasses import dataclass, field

from .semiring import Semiring, get_semiring
from .semantics import Automaton, Deriver, explore_roots
from .syntax import (
    ABORT,
    SKIP,
    Action,
    Expression,
    GuardedChoice,
    Output,
    Seq,
    Signature,
    WeightedChoice,
    atoms,
    scale,
)
from .weighting import ACCEPT, REJECT, Out, Step, target_key


@dataclass(frozen=True)
class Partition:
    """``blocks[i]`` is the block of state i; blocks are numbered in order of
    their smallest member."""

    blocks: tuple
    count: int
    iteration: int = 0

    def same(self, s: int, t: int) -> bool:
        return self.blocks[s] == self.blocks[t]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for i, b in enumerate(self.blocks):
            out[b].append(i)
        return out


def _renumber(keys, iteration: int) -> Partition:
    ids: dict = {}
    blocks = []
    for k in keys:
        b = ids.get(k)
        if b is None:
            b = ids[k] = len(ids)
        blocks.append(b)
    return Partition(tuple(blocks), len(ids), iteration)


def _output_row(aut: Automaton, i: int) -> tuple:
    row = []
    for w in aut.trans[i]:
        row.append(tuple((target_key(t), x) for t, x in w.items() if type(t) is not Step))
    return tuple(row)


def signature(aut: Automaton, i: int, p: Partition) -> tuple:
    """Observable one-step behaviour of state ``i`` relative to ``p``.

    Per atom: the weights at accept/reject/outputs, and the total Step weight
    into each (action, block).  Zero aggregates cannot occur (positivity), so
    equal behaviour gives equal tuples.
    """
    sr = aut.semiring
    out = []
    for w in aut.trans[i]:
        terms = []
        agg: dict = {}
        for t, x in w.items():
            if type(t) is Step:
                k = (t.action, p.blocks[t.state])
                agg[k] = sr.add(agg[k], x) if k in agg else x
            else:
                terms.append((target_key(t), x))
        terms.sort(key=lambda kv: kv[0])
        out.append((tuple(terms), tuple(sorted(agg.items(), key=lambda kv: kv[0]))))
    return tuple(out)


def initial_partition(aut: Automaton) -> Partition:
    return _renumber([_output_row(aut, i) for i in range(aut.n)], 0)


def refine(aut: Automaton, p: Partition) -> Partition:
    """One global splitting round."""
    keys = [(p.blocks[i], signature(aut, i, p)) for i in range(aut.n)]
    return _renumber(keys, p.iteration + 1)


def coarsest_partition(aut: Automaton) -> Partition:
    """Iterate :func:`refine` from the output partition to its fixpoint."""
    p = initial_partition(aut)
    while True:
        q = refine(aut, p)
        if q.count == p.count:
            return Partition(p.blocks, p.count, q.iteration)
        p = q


def bisimilar(aut: Automaton, s: int, t: int) -> bool:
    return coarsest_partition(aut).same(s, t)


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    states: int
    iterations: int
    automaton: Automaton = field(repr=False)
    roots: tuple = ()


def decide(e: Expression, f: Expression, sig: Signature, sr: Semiring | str) -> Verdict:
    """Explore both expressions with shared interning and compare their roots."""
    aut, roots = explore_roots([e, f], sig, sr)
    p = coarsest_partition(aut)
    return Verdict(p.same(*roots), aut.n, p.iteration, aut, tuple(roots))


def equivalent(e: Expression, f: Expression, sig: Signature, sr: Semiring | str) -> bool:
    return decide(e, f, sig, sr).equivalent


# -- normal form -------------------------------------------------------------------

def empty_sum(sr: Semiring | str) -> Expression:
    """The weighted sum over no terms; its derivative is the zero weighting."""
    return Seq(scale(get_semiring(sr).zero, sr), ABORT)


def target_expression(t) -> Expression:
    if t is ACCEPT:
        return SKIP
    if t is REJECT:
        return ABORT
    if type(t) is Out:
        return Output(t.name)
    return Seq(Action(t.action), t.state)


def weighted_sum(terms, sr: Semiring | str) -> Expression:
    """e1 [r1, 1] (e2 [r2, 1] (... (en [rn, 1] Z))) with Z the empty sum."""
    sr = get_semiring(sr)
    out = empty_sum(sr)
    for r, e in reversed(list(terms)):
        out = WeightedChoice(e, r, sr.one, out)
    return out


def guarded_sum(branches) -> Expression:
    """g1 +[a1] (g2 +[a2] (... (gk +[ak] 0))) over (atom, expression) pairs."""
    out: Expression = ABORT
    for alpha, e in reversed(list(branches)):
        out = GuardedChoice(e, alpha.as_bexp(), out)
    return out


def normal_form(e: Expression, sig: Signature, sr: Semiring | str) -> Expression:
    """One derivative unrolling of ``e`` written back as an expression."""
    sr = get_semiring(sr)
    d = Deriver(sr)
    branches = []
    for alpha in atoms(sig):
        w = d(e, alpha)
        branches.append((alpha, weighted_sum([(x, target_expression(t)) for t, x in w.sorted_items()], sr)))
    return guarded_sum(branches)
