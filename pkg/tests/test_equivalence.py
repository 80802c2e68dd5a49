import itertools
import random

import pytest

from oracles import brute_force_bisimilarity, is_homomorphism_kernel, random_automaton
from wgkat.equivalence import (
    Partition,
    bisimilar,
    coarsest_partition,
    decide,
    equivalent,
    initial_partition,
    normal_form,
    refine,
)
from wgkat.generate import DEFAULT_SIGNATURE, ExprGen
from wgkat.semantics import Automaton, explore
from wgkat.semiring import SEMIRINGS, get_semiring
from wgkat.syntax import (
    SKIP,
    Action,
    GuardedChoice,
    Loop,
    Seq,
    Signature,
    WeightedChoice,
    atoms,
    parse,
    pretty,
)
from wgkat.weighting import ACCEPT, REJECT, Out, Step, Weighting

SIG = DEFAULT_SIGNATURE
IDS = sorted(SEMIRINGS)


def three_state_automaton():
    """x1 branches on t; x2 and x3 accept with weight 15 under both atoms."""
    sr = get_semiring("ext_naturals")
    sig = Signature(tests=("t",), actions={"p1", "p2", "p3"}, outputs={"v"})
    beta, alpha = atoms(sig)  # !t, t
    x1 = {
        alpha: Weighting(sr, {REJECT: 4, Step("p1", 1): 3}),
        beta: Weighting(sr, {Out("v"): 1, Step("p2", 1): 5, Step("p3", 2): 2}),
    }
    rows = (
        tuple(x1[a] for a in (beta, alpha)),
        (Weighting(sr, {ACCEPT: 15}),) * 2,
        (Weighting(sr, {ACCEPT: 15}),) * 2,
    )
    return Automaton(("x1", "x2", "x3"), rows, (beta, alpha), sr, sig)


def test_three_state_example():
    aut = three_state_automaton()
    p0 = initial_partition(aut)
    assert p0.same(1, 2) and not p0.same(0, 1)
    assert bisimilar(aut, 1, 2)
    assert not bisimilar(aut, 0, 1)
    assert all(bisimilar(aut, i, i) for i in range(3))


def test_initial_partition_distinct_accepts():
    sr = get_semiring("ext_naturals")
    (a,) = atoms(Signature())
    rows = tuple((Weighting(sr, {ACCEPT: k}),) for k in (1, 2, 3))
    aut = Automaton((0, 1, 2), rows, (a,), sr)
    assert initial_partition(aut).count == 3


def test_abort_and_zero_scaling_in_different_blocks():
    aut = decide(parse("0", SIG, "boolean"), parse("@0", SIG, "boolean"), SIG, "boolean").automaton
    assert initial_partition(aut).count == 2


def test_refine_splits_on_step_weight_into_blocks():
    # states 0 and 1 have equal (empty) output rows; 0 steps with weight 3 into
    # state 2 (accepting), 1 steps with weight 3 into itself
    sr = get_semiring("ext_naturals")
    (a,) = atoms(Signature())
    rows = (
        (Weighting(sr, {Step("p", 2): 3}),),
        (Weighting(sr, {Step("p", 1): 3}),),
        (Weighting(sr, {ACCEPT: 1}),),
    )
    aut = Automaton((0, 1, 2), rows, (a,), sr)
    p0 = initial_partition(aut)
    assert p0.blocks == (0, 0, 1)
    assert refine(aut, p0).blocks == (0, 1, 2)


def test_refine_stable_partition_is_fixed():
    aut = three_state_automaton()
    p = coarsest_partition(aut)
    q = refine(aut, p)
    assert q.blocks == p.blocks
    singletons = Partition(tuple(range(aut.n)), aut.n)
    assert refine(aut, singletons).blocks == singletons.blocks


def test_brute_force_oracle_agrees():
    rng = random.Random("brute")
    nontrivial = 0
    for k in range(200):
        sr = get_semiring(["boolean", "tropical", "ext_naturals", "ext_nonneg_rationals"][k % 4])
        aut = random_automaton(sr, rng)
        want = brute_force_bisimilarity(aut)
        p = coarsest_partition(aut)
        for s, t in itertools.product(range(aut.n), repeat=2):
            assert p.same(s, t) == ((s, t) in want), (k, s, t)
            nontrivial += s < t and p.same(s, t)
    assert nontrivial > 50


def test_fixpoint_is_largest():
    rng = random.Random("merge")
    for k in range(100):
        sr = get_semiring(["boolean", "tropical", "ext_naturals"][k % 3])
        aut = random_automaton(sr, rng, max_states=8)
        p = coarsest_partition(aut)
        blocks = p.classes()
        assert is_homomorphism_kernel(aut, blocks)
        assert refine(aut, p).blocks == p.blocks
        for i, j in itertools.combinations(range(len(blocks)), 2):
            merged = [b for n, b in enumerate(blocks) if n not in (i, j)] + [blocks[i] + blocks[j]]
            assert not is_homomorphism_kernel(aut, merged)


def test_block_count_never_decreases():
    rng = random.Random("mono")
    for _ in range(50):
        aut = random_automaton(get_semiring("tropical"), rng, max_states=8)
        p = initial_partition(aut)
        for _ in range(aut.n + 1):
            q = refine(aut, p)
            assert q.count >= p.count
            p = q


def test_worked_examples():
    tropical = get_semiring("tropical")
    sig = Signature(outputs={"v"})
    assert equivalent(parse("(1 [1,2] v)^^3 ; v", sig, tropical), parse("@2 ; v", sig, tropical), sig, tropical)
    rat = get_semiring("ext_nonneg_rationals")
    sig = Signature(outputs={"dollar"})
    game = parse("((1 [1,1] (@1; dollar)) [1/2,1/2] (@0; dollar))^(1)", sig, rat)
    assert equivalent(game, parse("@1 ; dollar", sig, rat), sig, rat)
    b = get_semiring("boolean")
    assert not equivalent(parse("@0", SIG, b), parse("0", SIG, b), SIG, b)
    assert not equivalent(parse("(1)^(1)", SIG, b), parse("0", SIG, b), SIG, b)


def test_verdict_reports_sizes():
    v = decide(parse("p ; q", SIG, "boolean"), parse("p ; q", SIG, "boolean"), SIG, "boolean")
    assert v.equivalent and v.roots == (0, 0)
    assert v.states == explore(parse("p ; q", SIG, "boolean"), SIG, "boolean").n


def test_normal_form_examples():
    sr = get_semiring("boolean")
    nf = normal_form(Action("p"), SIG, sr)
    shown = pretty(nf, sr)
    branch = "(p ; 1 [1, 1] @0 ; 0)"
    assert shown.count(branch) == 4
    assert shown.startswith(branch + " +[!t1 . !t2] ")
    assert pretty(normal_form(SKIP, SIG, sr), sr).count("(1 [1, 1] @0 ; 0)") == 4
    assert equivalent(nf, Action("p"), SIG, sr)


def test_normal_form_empty_support():
    sr = get_semiring("ext_naturals")
    e = parse("(1)^(1)", SIG, sr)
    nf = normal_form(e, SIG, sr)
    assert pretty(nf, sr).count("@0 ; 0") == 4
    assert equivalent(nf, e, SIG, sr)


@pytest.mark.parametrize("sid", IDS)
def test_normal_form_equivalent(sid):
    gen = ExprGen(SIG, sid, random.Random(f"nf:{sid}"))
    for _ in range(60):
        e = gen.expr()
        nf = normal_form(e, SIG, sid)
        assert equivalent(nf, e, SIG, sid), pretty(e, sid)
        assert parse(pretty(nf, sid), SIG, sid) == nf


def _variant(gen, e):
    """Something equivalent to e by an axiom or the normal form."""
    k = gen.rng.randrange(3)
    if k == 0:
        return normal_form(e, gen.sig, gen.sr)
    if k == 1:
        return Seq(SKIP, e)
    return GuardedChoice(e, gen.bexp(), e)


@pytest.mark.parametrize("sid", ["boolean", "tropical", "ext_naturals", "ext_nonneg_rationals"])
def test_equivalence_relation_and_congruence(sid):
    gen = ExprGen(SIG, sid, random.Random(f"cong:{sid}"), depth=3)
    for _ in range(60):
        e = gen.expr()
        e1 = _variant(gen, e)
        e2 = _variant(gen, e1)
        assert equivalent(e, e, SIG, sid)
        assert equivalent(e, e1, SIG, sid) and equivalent(e1, e, SIG, sid)
        assert equivalent(e1, e2, SIG, sid) and equivalent(e, e2, SIG, sid)
        g, f, b = gen.expr(), gen.expr(), gen.bexp()
        r, s = gen.weight(), gen.weight()
        for ctx in (
            lambda x: Seq(x, g),
            lambda x: Seq(g, x),
            lambda x: WeightedChoice(x, r, s, f),
            lambda x: GuardedChoice(f, b, x),
            lambda x: Loop(x, b),
        ):
            assert equivalent(ctx(e), ctx(e1), SIG, sid)


def test_distinct_expressions_sampled():
    # a random pair is usually not equivalent; guards against a decider that says yes to everything
    gen = ExprGen(SIG, "tropical", random.Random("distinct"))
    verdicts = [equivalent(gen.expr(), gen.expr(), SIG, "tropical") for _ in range(100)]
    assert verdicts.count(False) > 80
