"""Instantiable axioms and derived facts, checked against the decision procedure.

Each entry maps a name to a function taking an :class:`ExprGen` and returning
the pairs of expressions that must be bisimilar for that instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .equivalence import equivalent
from .generate import DEFAULT_SIGNATURE, ExprGen
from .semiring import get_semiring
from .syntax import (
    ABORT,
    SKIP,
    TRUE,
    And,
    GuardedChoice as GC,
    Loop,
    Not,
    Or,
    Seq,
    Signature,
    Test,
    WeightedChoice as WC,
    scale,
)


def _t(b):
    return Test(b)


def g1(g):
    e, b = g.expr(), g.bexp()
    return [(GC(e, b, e), e)]


def g2(g):
    e, f, b = g.expr(), g.expr(), g.bexp()
    return [(GC(e, b, f), GC(Seq(_t(b), e), b, f))]


def g3(g):
    e, f, b = g.expr(), g.expr(), g.bexp()
    return [(GC(e, b, f), GC(f, Not(b), e))]


def g4(g):
    e, f, h, b, c = g.expr(), g.expr(), g.expr(), g.bexp(), g.bexp()
    return [(GC(GC(e, b, f), c, h), GC(e, And(b, c), GC(f, c, h)))]


def d1(g):
    e, f, h, b = g.expr(), g.expr(), g.expr(), g.bexp()
    r, s = g.weight(), g.weight()
    return [(WC(e, r, s, GC(f, b, h)), GC(WC(e, r, s, f), b, WC(e, r, s, h)))]


def d2(g):
    sr = g.sr
    e, f, h = g.expr(), g.expr(), g.expr()
    r, s, t, u = (g.weight() for _ in range(4))
    return [(WC(e, r, s, WC(f, t, u, h)), WC(e, r, sr.one, WC(f, sr.mul(s, t), sr.mul(s, u), h)))]


def d3(g):
    e, f, b = g.expr(), g.expr(), g.bexp()
    r, s = g.weight(), g.weight()
    return [(Seq(_t(b), WC(e, r, s, f)), Seq(_t(b), WC(Seq(_t(b), e), r, s, Seq(_t(b), f))))]


def s1(g):
    e = g.expr()
    return [(Seq(SKIP, e), e), (Seq(e, SKIP), e)]


def s2(g):
    e, f, h = g.expr(), g.expr(), g.expr()
    return [(Seq(Seq(e, f), h), Seq(e, Seq(f, h)))]


def s3(g):
    return [(Seq(ABORT, g.expr()), ABORT)]


def s4(g):
    e, f, h = g.expr(), g.expr(), g.expr()
    r, s = g.weight(), g.weight()
    return [(Seq(WC(e, r, s, f), h), WC(Seq(e, h), r, s, Seq(f, h)))]


def s5(g):
    e, f, h, b = g.expr(), g.expr(), g.expr(), g.bexp()
    return [(Seq(GC(e, b, f), h), GC(Seq(e, h), b, Seq(f, h)))]


def s6(g):
    v = g.output()
    return [(Seq(v, g.expr()), v)]


def s7(g):
    b, c = g.bexp(), g.bexp()
    return [(Seq(_t(b), _t(c)), _t(And(b, c)))]


def l1(g):
    e, b = g.expr(), g.bexp()
    return [(Loop(e, b), GC(Seq(e, Loop(e, b)), b, SKIP))]


def l2(g):
    sr = g.sr
    f, h, b, c = g.expr(), g.expr(), g.bexp(), g.bexp()
    r, s = g.weight(), g.weight()
    e = GC(WC(f, r, s, SKIP), c, h)
    k = sr.mul(sr.star(s), r)
    lhs = Seq(_t(c), Loop(e, b))
    rhs = Seq(_t(c), GC(Seq(scale(k, sr), Seq(f, Loop(e, b))), b, SKIP))
    return [(lhs, rhs)]


def c1(g):
    return [(scale(g.sr.one, g.sr), SKIP)]


def c2(g):
    z = scale(g.sr.zero, g.sr)
    return [(Seq(z, g.expr()), z)]


def w1(g):
    sr = g.sr
    e, r, s = g.expr(), g.weight(), g.weight()
    return [(WC(e, r, s, e), Seq(scale(sr.add(r, s), sr), e))]


def w2(g):
    e, f, r, s = g.expr(), g.expr(), g.weight(), g.weight()
    return [(WC(e, r, s, f), WC(f, s, r, e))]


def w3(g):
    sr = g.sr
    e, f, h = g.expr(), g.expr(), g.expr()
    r, s, t, u = (g.weight() for _ in range(4))
    return [(WC(e, r, s, WC(f, t, u, h)), WC(WC(e, r, sr.mul(s, t), f), sr.one, sr.mul(s, u), h))]


def w4(g):
    sr = g.sr
    e, f, r, s, u = g.expr(), g.expr(), g.weight(), g.weight(), g.weight()
    return [(WC(e, sr.mul(r, u), s, f), WC(Seq(scale(u, sr), e), r, s, f))]


def w4_mutant(g):
    """W4 with r and s swapped on the right only: must fail somewhere."""
    sr = g.sr
    e, f, r, s, u = g.expr(), g.expr(), g.weight(), g.weight(), g.weight()
    return [(WC(e, sr.mul(r, u), s, f), WC(Seq(scale(u, sr), e), s, r, f))]


def f1(g):
    e, f, b = g.productive(), g.expr(), g.bexp()
    solution = Seq(Loop(e, b), f)
    unrolled = GC(Seq(e, solution), b, f)
    # premise for the loop solution, conclusion for a second solution
    return [
        (solution, GC(Seq(e, solution), b, f)),
        (unrolled, GC(Seq(e, unrolled), b, f)),
        (unrolled, Seq(Loop(e, b), f)),
    ]


def df1(g):
    sr = g.sr
    e, f = g.expr(), g.expr()
    r, s, t = g.weight(), g.weight(), g.weight()
    return [(Seq(scale(t, sr), WC(e, r, s, f)), WC(e, sr.mul(t, r), sr.mul(t, s), f))]


def df2(g):
    e, f, h, b, c = g.expr(), g.expr(), g.expr(), g.bexp(), g.bexp()
    return [(GC(e, b, GC(f, c, h)), GC(GC(e, b, f), Or(b, c), h))]


def df3(g):
    e, b = g.expr(), g.bexp()
    return [(GC(e, b, ABORT), Seq(_t(b), e))]


def df4(g):
    e, f, b = g.expr(), g.expr(), g.bexp()
    return [(Seq(_t(b), GC(e, b, f)), Seq(_t(b), e))]


def df5(g):
    e, f, h, b = g.expr(), g.expr(), g.expr(), g.bexp()
    r, s = g.weight(), g.weight()
    return [(WC(GC(e, b, f), r, s, h), GC(WC(e, r, s, h), b, WC(f, r, s, h)))]


def df6(g):
    e, f, h, k, b = g.expr(), g.expr(), g.expr(), g.expr(), g.bexp()
    r, s = g.weight(), g.weight()
    return [(WC(GC(e, b, f), r, s, GC(h, b, k)), GC(WC(e, r, s, h), b, WC(f, r, s, k)))]


def df7(g):
    e, f = g.expr(), g.expr()
    return [(GC(e, TRUE, f), e)]


def df8(g):
    e, f, b, c = g.expr(), g.expr(), g.bexp(), g.bexp()
    return [(Seq(_t(b), GC(e, c, f)), GC(Seq(_t(b), e), c, Seq(_t(b), f)))]


def df9(g):
    e, f, b, c = g.expr(), g.expr(), g.bexp(), g.bexp()
    return [(Seq(_t(b), GC(e, c, f)), Seq(_t(b), GC(Seq(_t(b), e), c, f)))]


def df10(g):
    sr = g.sr
    r, s = g.weight(), g.weight()
    return [(Seq(scale(r, sr), scale(s, sr)), scale(sr.mul(r, s), sr))]


def df11(g):
    sr = g.sr
    e, f, b, r = g.expr(), g.expr(), g.bexp(), g.weight()
    return [(Seq(scale(r, sr), GC(e, b, f)), GC(Seq(scale(r, sr), e), b, Seq(scale(r, sr), f)))]


def df12(g):
    sr = g.sr
    e, r, s = g.expr(), g.weight(), g.weight()
    return [(WC(e, r, s, scale(sr.zero, sr)), Seq(scale(r, sr), e))]


def df13(g):
    e, f, b = g.expr(), g.expr(), g.bexp()
    r, s = g.weight(), g.weight()
    return [(Seq(_t(b), WC(e, r, s, f)), Seq(_t(b), WC(Seq(_t(b), e), r, s, f)))]


def df14(g):
    sr = g.sr
    e, h = g.expr(), g.expr()
    r, s, t, u = (g.weight() for _ in range(4))
    return [(WC(h, s, t, WC(e, r, u, scale(sr.zero, sr))), WC(h, s, sr.mul(t, r), e))]


AXIOMS: dict[str, Callable] = {
    "G1": g1, "G2": g2, "G3": g3, "G4": g4,
    "D1": d1, "D2": d2, "D3": d3,
    "S1": s1, "S2": s2, "S3": s3, "S4": s4, "S5": s5, "S6": s6, "S7": s7,
    "L1": l1, "L2": l2,
    "C1": c1, "C2": c2,
    "W1": w1, "W2": w2, "W3": w3, "W4": w4,
    "F1": f1,
}

DERIVED: dict[str, Callable] = {
    f"DF{i}": fn
    for i, fn in enumerate(
        [df1, df2, df3, df4, df5, df6, df7, df8, df9, df10, df11, df12, df13, df14], start=1
    )
}

ALL = {**AXIOMS, **DERIVED}
MUTANTS = {"W4-mutant": w4_mutant}


@dataclass
class AxiomResult:
    name: str
    semiring: str
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def check_axiom(name: str, instantiate: Callable, sr, seed: int, count: int,
                sig: Signature = DEFAULT_SIGNATURE, depth: int = 3) -> AxiomResult:
    sr = get_semiring(sr)
    rng = random.Random(f"{seed}:{sr.id}:{name}")
    gen = ExprGen(sig, sr, rng, depth=depth)
    res = AxiomResult(name, sr.id)
    for _ in range(count):
        pairs = instantiate(gen)
        res.total += 1
        bad = [(a, b) for a, b in pairs if not equivalent(a, b, sig, sr)]
        if bad:
            res.failures.append(bad[0])
        else:
            res.passed += 1
    return res


def run_suite(semirings, seed: int = 0, count: int = 100, axioms: dict | None = None,
              **kw) -> list[AxiomResult]:
    axioms = ALL if axioms is None else axioms
    return [
        check_axiom(name, fn, sr, seed, count, **kw)
        for sr in semirings
        for name, fn in axioms.items()
    ]
