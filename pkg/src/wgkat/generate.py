"""Seeded random expressions, tests and weights."""

from __future__ import annotations

import random

from .semiring import Semiring, get_semiring
from .syntax import (
    FALSE,
    TRUE,
    Action,
    And,
    BExp,
    Expression,
    GuardedChoice,
    Loop,
    Not,
    Or,
    Output,
    Prim,
    Seq,
    Signature,
    Test,
    WeightedChoice,
    scale,
)

DEFAULT_SIGNATURE = Signature(tests=("t1", "t2"), actions={"p", "q"}, outputs={"v", "w"})


class ExprGen:
    """Size-bounded random generation over a signature and a semiring's weight pool."""

    def __init__(self, sig: Signature = DEFAULT_SIGNATURE, sr: Semiring | str = "boolean",
                 rng: random.Random | int | None = None, depth: int = 4):
        self.sig = sig
        self.sr = get_semiring(sr)
        self.rng = rng if isinstance(rng, random.Random) else random.Random(rng)
        self.depth = depth
        self._actions = sorted(sig.actions)
        self._outputs = sorted(sig.outputs)

    def weight(self):
        return self.rng.choice(self.sr.pool)

    def bexp(self, depth: int = 2) -> BExp:
        rng = self.rng
        if depth <= 0 or rng.random() < 0.4:
            k = rng.random()
            if self.sig.tests and k < 0.7:
                return Prim(rng.choice(self.sig.tests))
            return TRUE if k < 0.85 else FALSE
        op = rng.randrange(3)
        if op == 0:
            return Not(self.bexp(depth - 1))
        if op == 1:
            return Or(self.bexp(depth - 1), self.bexp(depth - 1))
        return And(self.bexp(depth - 1), self.bexp(depth - 1))

    def action(self) -> Action:
        return Action(self.rng.choice(self._actions))

    def output(self) -> Output:
        return Output(self.rng.choice(self._outputs))

    def leaf(self) -> Expression:
        k = self.rng.randrange(4 if self._outputs else 3)
        if k == 0:
            return Test(self.bexp(1))
        if k == 1:
            return self.action()
        if k == 2:
            return scale(self.weight(), self.sr)
        return self.output()

    def expr(self, depth: int | None = None) -> Expression:
        depth = self.depth if depth is None else depth
        rng = self.rng
        if depth <= 0 or rng.random() < 0.25:
            return self.leaf()
        op = rng.randrange(4)
        if op == 0:
            return GuardedChoice(self.expr(depth - 1), self.bexp(), self.expr(depth - 1))
        if op == 1:
            return WeightedChoice(self.expr(depth - 1), self.weight(), self.weight(), self.expr(depth - 1))
        if op == 2:
            return Seq(self.expr(depth - 1), self.expr(depth - 1))
        return Loop(self.expr(depth - 1), self.bexp())

    def productive(self, depth: int | None = None) -> Expression:
        """An expression that never accepts immediately: it starts with an action."""
        depth = self.depth if depth is None else depth
        return Seq(self.action(), self.expr(max(depth - 1, 0)))
