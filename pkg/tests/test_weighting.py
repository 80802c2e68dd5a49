import random

import pytest

from oracles import sample_weight
from wgkat.semiring import INF, SEMIRINGS, get_semiring
from wgkat.weighting import (
    ACCEPT,
    REJECT,
    Out,
    Step,
    Weighting,
    dirac,
    empty,
    lin_apply,
    mass,
    validate,
    w_scale,
    w_sum,
)

TARGETS = [ACCEPT, REJECT, Out("v"), Out("w"), Step("p", 0), Step("p", 1), Step("q", 0)]


def random_weighting(sr, rng):
    return Weighting(sr, {t: sample_weight(sr, rng) for t in rng.sample(TARGETS, rng.randint(0, 4))})


def test_dirac():
    sr = get_semiring("ext_naturals")
    d = dirac(sr, ACCEPT)
    assert dict(d.items()) == {ACCEPT: 1}
    assert d[REJECT] == 0 and d[Step("p", 0)] == 0
    assert len(dirac(sr, Step("p", 3))) == 1


def test_zero_entries_pruned():
    sr = get_semiring("tropical")
    w = Weighting(sr, {ACCEPT: INF, REJECT: 3})
    assert w.support() == [REJECT]
    validate(w)


def test_sum_of_two_diracs():
    assert w_sum(dirac("ext_naturals", ACCEPT), dirac("ext_naturals", ACCEPT))[ACCEPT] == 2
    assert w_sum(dirac("tropical", ACCEPT), dirac("tropical", ACCEPT))[ACCEPT] == 0
    assert w_sum(dirac("boolean", ACCEPT), dirac("boolean", ACCEPT))[ACCEPT] == 1


def test_scale_identities():
    sr = get_semiring("ext_nonneg_rationals")
    a = Weighting(sr, {ACCEPT: 2, Out("v"): 3})
    assert w_scale(sr.zero, a) == empty(sr)
    assert w_scale(sr.one, a) == a
    assert w_scale(INF, a)[ACCEPT] == INF


def test_mass_examples():
    sr = get_semiring("ext_naturals")
    beta = Weighting(sr, {Out("v"): 1, Step("p2", 2): 5, Step("p3", 3): 2})
    assert mass(beta, lambda t: type(t) is Step) == 7
    assert mass(empty(sr)) == 0
    assert mass(dirac(sr, REJECT)) == 1


def test_canonical_order():
    sr = get_semiring("boolean")
    w = Weighting(sr, {Step("q", 0): 1, Step("p", 2): 1, Out("w"): 1, Out("v"): 1, REJECT: 1, ACCEPT: 1})
    assert w.support() == [ACCEPT, REJECT, Out("v"), Out("w"), Step("p", 2), Step("q", 0)]


def test_output_named_accept_is_not_accept():
    sr = get_semiring("boolean")
    w = Weighting(sr, {Out("accept"): 1})
    assert w[ACCEPT] == 0


def test_lin_apply_examples():
    sr = get_semiring("ext_naturals")

    def h(t):
        return Weighting(sr, {ACCEPT: 2, t: 1}) if t is not ACCEPT else dirac(sr, REJECT)

    x = Out("v")
    assert lin_apply(h, dirac(sr, x)) == h(x)
    assert lin_apply(h, empty(sr)) == empty(sr)
    # hand-expanded: 3*(2 Accept + 1 v) + 4*(1 Reject) = 6 Accept + 3 v + 4 Reject
    a = Weighting(sr, {x: 3, ACCEPT: 4})
    assert lin_apply(h, a) == Weighting(sr, {ACCEPT: 6, x: 3, REJECT: 4})
    assert lin_apply(lambda t: dirac(sr, t), a) == a


@pytest.mark.parametrize("sid", sorted(SEMIRINGS))
def test_semimodule_laws(sid):
    sr = get_semiring(sid)
    rng = random.Random(f"semimodule:{sid}")
    for _ in range(300):
        a, b = random_weighting(sr, rng), random_weighting(sr, rng)
        r, s = sample_weight(sr, rng), sample_weight(sr, rng)
        assert w_scale(r, w_sum(a, b)) == w_sum(w_scale(r, a), w_scale(r, b))
        assert w_scale(sr.add(r, s), a) == w_sum(w_scale(r, a), w_scale(s, a))
        assert w_scale(sr.mul(r, s), a) == w_scale(r, w_scale(s, a))
        assert w_scale(sr.one, a) == a
        assert w_scale(sr.zero, a) == empty(sr)
        for w in (w_sum(a, b), w_scale(r, a)):
            validate(w)


@pytest.mark.parametrize("sid", sorted(SEMIRINGS))
def test_lin_apply_is_homomorphism(sid):
    sr = get_semiring(sid)
    rng = random.Random(f"lin:{sid}")
    for _ in range(200):
        images = {t: random_weighting(sr, rng) for t in TARGETS}
        h = images.__getitem__
        a, b = random_weighting(sr, rng), random_weighting(sr, rng)
        r = sample_weight(sr, rng)
        assert lin_apply(h, w_sum(a, b)) == w_sum(lin_apply(h, a), lin_apply(h, b))
        assert lin_apply(h, w_scale(r, a)) == w_scale(r, lin_apply(h, a))
        validate(lin_apply(h, a))


def test_mixing_semirings_rejected():
    with pytest.raises(ValueError):
        w_sum(dirac("boolean", ACCEPT), dirac("tropical", ACCEPT))
