import itertools
from fractions import Fraction

import pytest

from oracles import LAWS, check_law, refinement_holds
from wgkat.semiring import (
    INF,
    NEG_INF,
    SEMIRINGS,
    RefinementError,
    SemiringError,
    WeightParseError,
    format_weight,
    get_semiring,
    parse_literal,
    w_add,
    w_mul,
    w_parse,
    w_refine,
    w_star,
)

ALL_IDS = sorted(SEMIRINGS)


def test_seven_carriers():
    assert ALL_IDS == sorted([
        "boolean", "tropical", "arctic", "bottleneck",
        "viterbi", "ext_naturals", "ext_nonneg_rationals",
    ])


@pytest.mark.parametrize("sid", ALL_IDS)
@pytest.mark.parametrize("law", sorted(LAWS))
def test_law(sid, law):
    ok, witness = check_law(get_semiring(sid), law, 300, seed=11)
    assert ok, f"{law} fails on {witness}"


def test_add_examples():
    assert w_add("tropical", 3, 5) == 3
    assert w_add("ext_nonneg_rationals", Fraction(1, 2), Fraction(1, 2)) == 1
    for sid in ALL_IDS:
        sr = get_semiring(sid)
        for x in sr.pool:
            assert w_add(sr, x, sr.zero) == x


def test_mul_examples():
    assert w_mul("tropical", 3, 5) == 8
    assert w_mul("ext_naturals", INF, 0) == 0
    assert w_mul("ext_nonneg_rationals", 0, INF) == 0
    assert w_mul("bottleneck", 4, 7) == 4


def test_infinity_absorbs_nonzero():
    assert w_add("ext_naturals", INF, 3) == INF
    assert w_mul("ext_naturals", INF, 3) == INF
    assert w_mul("tropical", INF, 0) == INF  # tropical zero is inf, its one is 0
    assert w_mul("arctic", NEG_INF, INF) == NEG_INF


def test_star_examples():
    assert w_star("ext_nonneg_rationals", Fraction(1, 2)) == 2
    assert w_star("ext_nonneg_rationals", 1) == INF
    for x in get_semiring("bottleneck").pool:
        assert w_star("bottleneck", x) == INF
    for x in (0, Fraction(1, 3), 1):
        assert w_star("viterbi", x) == 1


def test_star_tropical_against_partial_minima():
    # min over n*5 for n in 0..10 is the n = 0 term
    assert w_star("tropical", 5) == min(5 * n for n in range(11)) == 0


def test_star_ext_naturals_against_geometric_series():
    def partial(a, terms=10):
        return [sum(a ** k for k in range(n + 1)) for n in range(terms)]

    assert set(partial(0)) == {1}
    assert w_star("ext_naturals", 0) == 1
    sums = partial(2)
    assert all(b > a for a, b in zip(sums, sums[1:]))  # diverges
    assert w_star("ext_naturals", 2) == INF
    for a in (0, 1, 2, INF):
        sr = get_semiring("ext_naturals")
        assert sr.add(sr.mul(a, sr.star(a)), 1) == sr.star(a)


def test_refine_ext_naturals_example():
    sols = [
        q for q in itertools.product(range(5), repeat=4)
        if q[0] + q[1] == 3 and q[2] + q[3] == 1 and q[0] + q[2] == 2 and q[1] + q[3] == 2
    ]
    assert (2, 1, 0, 1) in sols
    assert w_refine("ext_naturals", 3, 1, 2, 2) == (2, 1, 0, 1)


def test_refine_tropical_matrix():
    # row sums (2, 5), column sums (2, 7): the minimum 2 sits in both first slots
    sr = get_semiring("tropical")
    got = sr.refine(2, 5, 2, 7)
    assert got == (2, 7, 5, INF)
    assert refinement_holds(sr, 2, 5, 2, 7, got)


@pytest.mark.parametrize("sid", ALL_IDS)
def test_refine_diagonal(sid):
    sr = get_semiring(sid)
    for x, y in itertools.product(sr.pool, repeat=2):
        assert refinement_holds(sr, x, y, x, y, sr.refine(x, y, x, y))


def test_refine_precondition():
    with pytest.raises(RefinementError):
        w_refine("ext_naturals", 3, 1, 2, 1)


@pytest.mark.parametrize("sid", ALL_IDS)
def test_positivity_exhaustive_pool(sid):
    sr = get_semiring(sid)
    for x, y in itertools.product(sr.pool, repeat=2):
        if sr.add(x, y) == sr.zero:
            assert x == sr.zero and y == sr.zero


def test_parse_examples():
    assert w_parse("1/2", "ext_nonneg_rationals") == Fraction(1, 2)
    assert w_parse("inf", "tropical") == INF == get_semiring("tropical").zero
    assert w_parse("4/2", "ext_nonneg_rationals") == 2
    assert w_parse("-inf", "arctic") == NEG_INF
    assert w_parse("-3/4", "bottleneck") == Fraction(-3, 4)
    with pytest.raises(WeightParseError):
        w_parse("3/2", "viterbi")
    with pytest.raises(WeightParseError):
        w_parse("1/2", "tropical")
    with pytest.raises(WeightParseError):
        w_parse("2", "boolean")
    with pytest.raises(WeightParseError):
        w_parse("-1", "ext_naturals")


@pytest.mark.parametrize("text", ["", "1.5", "1/0", "infinity", "--1", "0x1", " 1 / 2"])
def test_parse_malformed(text):
    with pytest.raises(WeightParseError):
        parse_literal(text)


@pytest.mark.parametrize("sid", ALL_IDS)
def test_parse_format_roundtrip(sid):
    sr = get_semiring(sid)
    for x in sr.pool:
        assert w_parse(format_weight(x), sr) == x
    assert format_weight(Fraction(6, 4)) == "3/2"
    assert format_weight(Fraction(4, 2)) == "2"


def test_unknown_semiring():
    with pytest.raises(SemiringError):
        get_semiring("reals")


def test_carrier_check():
    with pytest.raises(SemiringError):
        w_add("viterbi", 2, 0)
    with pytest.raises(SemiringError):
        w_mul("boolean", INF, 1)


def test_infinity_ordering():
    assert NEG_INF < -10**9 < 0 < Fraction(1, 2) < 10**9 < INF
    assert INF == INF and INF != NEG_INF and INF != 10**9
    assert max(3, INF) is INF and min(3, NEG_INF) is NEG_INF
