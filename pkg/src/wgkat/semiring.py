"""Exact semirings with a Conway star.

Weights are plain Python values: ``int`` for the natural-number carriers,
``fractions.Fraction`` for the rational ones, and the two markers :data:`INF`
and :data:`NEG_INF` for the infinities.  Floating point never appears.

Each :class:`Semiring` bundles the operations, its star, a refinement-witness
construction for its additive monoid, and the literal grammar used by the
parser and the command line.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Callable, Union


class SemiringError(ValueError):
    """Configuration error: unknown semiring or weight outside the carrier."""


class WeightParseError(SemiringError):
    """Malformed weight literal or literal outside the carrier."""


class RefinementError(SemiringError):
    """``refine`` called with x + y != z + w."""


@total_ordering
class Infinity:
    """Signed infinity marker, ordered against ints and Fractions."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        object.__setattr__(self, "sign", sign)

    def __setattr__(self, name, value):
        raise AttributeError("Infinity is immutable")

    def __reduce__(self):
        return (Infinity, (self.sign,))

    def __repr__(self) -> str:
        return "INF" if self.sign > 0 else "NEG_INF"

    def __str__(self) -> str:
        return "inf" if self.sign > 0 else "-inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, Infinity) and other.sign == self.sign

    def __hash__(self) -> int:
        return hash(("Infinity", self.sign))

    def __lt__(self, other) -> bool:
        if isinstance(other, Infinity):
            return self.sign < other.sign
        if isinstance(other, (int, Fraction)):
            return self.sign < 0
        return NotImplemented


INF = Infinity(1)
NEG_INF = Infinity(-1)

Weight = Union[int, Fraction, Infinity]


def is_finite(x: Weight) -> bool:
    return not isinstance(x, Infinity)


def _is_nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def _is_rat(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _norm(x: Weight) -> Weight:
    # Fractions with denominator 1 collapse to int so formatting is canonical.
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def format_weight(x: Weight) -> str:
    """Canonical literal for any weight: ``3``, ``1/2``, ``inf``, ``-inf``."""
    if isinstance(x, Infinity):
        return str(x)
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


_LITERAL = re.compile(r"^(-?)(?:(inf)|(\d+)(?:/(\d+))?)$")


def parse_literal(text: str) -> Weight:
    """Parse a literal without any carrier check."""
    m = _LITERAL.match(text.strip())
    if not m:
        raise WeightParseError(f"malformed weight literal {text!r}")
    neg, inf, num, den = m.groups()
    if inf:
        return NEG_INF if neg else INF
    if den is not None:
        if int(den) == 0:
            raise WeightParseError(f"zero denominator in {text!r}")
        value: Weight = _norm(Fraction(int(num), int(den)))
    else:
        value = int(num)
    return -value if neg else value


# -- ordered infinity-aware helpers -----------------------------------------

def _min(x: Weight, y: Weight) -> Weight:
    return y if y < x else x


def _max(x: Weight, y: Weight) -> Weight:
    return y if y > x else x


def _plus(x: Weight, y: Weight) -> Weight:
    """Extended addition for carriers without -inf."""
    if x is INF or y is INF or x == INF or y == INF:
        return INF
    return _norm(x + y)


def _times(x: Weight, y: Weight) -> Weight:
    """Extended multiplication on [0, inf] with inf * 0 = 0."""
    if x == 0 or y == 0:
        return 0
    if x == INF or y == INF:
        return INF
    return _norm(x * y)


def _monus(x: Weight, y: Weight) -> Weight:
    """Truncated difference for finite x >= y."""
    return _norm(x - y)


class Semiring:
    """A commutative semiring with total star and decidable equality.

    Instances are the seven module-level constants; look them up by id with
    :func:`get_semiring`.
    """

    def __init__(
        self,
        ident: str,
        *,
        zero: Weight,
        one: Weight,
        add: Callable[[Weight, Weight], Weight],
        mul: Callable[[Weight, Weight], Weight],
        star: Callable[[Weight], Weight],
        contains: Callable[[Weight], bool],
        refine: Callable[[Weight, Weight, Weight, Weight], tuple],
        pool: tuple,
    ):
        self.id = ident
        self.zero = zero
        self.one = one
        self._add = add
        self._mul = mul
        self._star = star
        self._contains = contains
        self._refine = refine
        # small weights used by random generators; always includes 0 and 1
        self.pool = pool

    def __repr__(self) -> str:
        return f"Semiring({self.id!r})"

    def __reduce__(self):
        return (get_semiring, (self.id,))

    def contains(self, x) -> bool:
        try:
            return bool(self._contains(x))
        except TypeError:
            return False

    def check(self, x) -> Weight:
        if not self.contains(x):
            raise SemiringError(f"{x!r} is not in the {self.id} carrier")
        return x

    def add(self, x: Weight, y: Weight) -> Weight:
        return self._add(self.check(x), self.check(y))

    def mul(self, x: Weight, y: Weight) -> Weight:
        return self._mul(self.check(x), self.check(y))

    def star(self, x: Weight) -> Weight:
        return self._star(self.check(x))

    def sum(self, xs) -> Weight:
        total = self.zero
        for x in xs:
            total = self.add(total, x)
        return total

    def is_zero(self, x: Weight) -> bool:
        return x == self.zero

    def refine(self, x: Weight, y: Weight, z: Weight, w: Weight) -> tuple:
        """Witness (s, t, u, v) with s+t=x, s+u=z, u+v=y, t+v=w."""
        for a in (x, y, z, w):
            self.check(a)
        if self._add(x, y) != self._add(z, w):
            raise RefinementError(
                f"{self.id}: {format_weight(x)} + {format_weight(y)} != "
                f"{format_weight(z)} + {format_weight(w)}"
            )
        return self._refine(x, y, z, w)

    def parse(self, text: str) -> Weight:
        value = parse_literal(text)
        if self.id in ("ext_nonneg_rationals", "viterbi", "bottleneck") and is_finite(value):
            value = _norm(Fraction(value))
        if not self.contains(value):
            raise WeightParseError(f"weight {text.strip()!r} is outside the {self.id} carrier")
        return value

    def format(self, x: Weight) -> str:
        return format_weight(self.check(x))


# -- refinement witnesses ------------------------------------------------------

def _selective_refine(add):
    """Witness for carriers where x + y is always one of x, y (min/max/or).

    With x = x + y = z the matrix [[x, w], [y, 0]] works; the other three
    cases are the same matrix with rows and/or columns swapped.
    """

    def refine(x, y, z, w, zero):
        m = add(x, y)
        swap_rows = x != m
        if swap_rows:
            x, y = y, x
        swap_cols = z != m
        if swap_cols:
            z, w = w, z
        s, t, u, v = x, w, y, zero
        if swap_cols:
            s, t, u, v = t, s, v, u
        if swap_rows:
            s, t, u, v = u, v, s, t
        return s, t, u, v

    return refine


def _additive_refine(x, y, z, w):
    """North-west-corner witness for (N or Q>=0 with inf, +)."""
    if x == INF and z == INF:
        return INF, w, y, 0
    if x == INF:
        # then w = inf
        return z, INF, 0, y
    if z == INF:
        # then y = inf
        return x, 0, INF, w
    if y == INF:
        # x, z finite and y = w = inf
        s = _min(x, z)
        return s, _monus(x, s), _monus(z, s), INF
    s = _min(x, z)
    t = _monus(x, s)
    u = _monus(z, s)
    return s, t, u, _monus(y, u)


# -- the seven carriers --------------------------------------------------------

def _bool_contains(x):
    return isinstance(x, int) and x in (0, 1)


def _tropical_contains(x):
    return x == INF or _is_nat(x)


def _arctic_contains(x):
    return isinstance(x, Infinity) or _is_nat(x)


def _bottleneck_contains(x):
    return isinstance(x, Infinity) or _is_rat(x)


def _nonneg_rat_contains(x):
    return x == INF or (_is_rat(x) and x >= 0)


def _viterbi_contains(x):
    return _is_rat(x) and 0 <= x <= 1


def _arctic_mul(x, y):
    if x == NEG_INF or y == NEG_INF:
        return NEG_INF
    if x == INF or y == INF:
        return INF
    return x + y


def _make_selective(ident, zero, one, add, mul, star, contains, pool):
    sel = _selective_refine(add)
    return Semiring(
        ident,
        zero=zero,
        one=one,
        add=add,
        mul=mul,
        star=star,
        contains=contains,
        refine=lambda x, y, z, w: sel(x, y, z, w, zero),
        pool=pool,
    )


BOOLEAN = _make_selective(
    "boolean", 0, 1,
    add=lambda x, y: 1 if (x or y) else 0,
    mul=lambda x, y: 1 if (x and y) else 0,
    star=lambda x: 1,
    contains=_bool_contains,
    pool=(0, 1),
)

TROPICAL = _make_selective(
    "tropical", INF, 0,
    add=_min,
    mul=_plus,
    star=lambda x: 0,
    contains=_tropical_contains,
    pool=(INF, 0, 1, 2, 5),
)

ARCTIC = _make_selective(
    "arctic", NEG_INF, 0,
    add=_max,
    mul=_arctic_mul,
    star=lambda x: 0 if (x == NEG_INF or x == 0) else INF,
    contains=_arctic_contains,
    pool=(NEG_INF, 0, INF, 1, 3),
)

BOTTLENECK = _make_selective(
    "bottleneck", NEG_INF, INF,
    add=_max,
    mul=_min,
    star=lambda x: INF,
    contains=_bottleneck_contains,
    pool=(NEG_INF, INF, 0, Fraction(1, 2), -2),
)

VITERBI = _make_selective(
    "viterbi", 0, 1,
    add=_max,
    mul=lambda x, y: _norm(x * y),
    star=lambda x: 1,
    contains=_viterbi_contains,
    pool=(0, 1, Fraction(1, 2), Fraction(1, 3)),
)

EXT_NATURALS = Semiring(
    "ext_naturals",
    zero=0,
    one=1,
    add=_plus,
    mul=_times,
    star=lambda x: 1 if x == 0 else INF,
    contains=_tropical_contains,
    refine=_additive_refine,
    pool=(0, 1, INF, 2, 3),
)


def _rat_star(x):
    if x == INF or x >= 1:
        return INF
    return _norm(1 / (1 - Fraction(x)))


EXT_NONNEG_RATIONALS = Semiring(
    "ext_nonneg_rationals",
    zero=0,
    one=1,
    add=_plus,
    mul=_times,
    star=_rat_star,
    contains=_nonneg_rat_contains,
    refine=_additive_refine,
    pool=(0, 1, INF, Fraction(1, 2), 3),
)

SEMIRINGS = {
    s.id: s
    for s in (
        BOOLEAN,
        TROPICAL,
        ARCTIC,
        BOTTLENECK,
        EXT_NATURALS,
        EXT_NONNEG_RATIONALS,
        VITERBI,
    )
}


def get_semiring(ident) -> Semiring:
    if isinstance(ident, Semiring):
        return ident
    try:
        return SEMIRINGS[ident]
    except KeyError:
        raise SemiringError(
            f"unknown semiring {ident!r}; expected one of {', '.join(SEMIRINGS)}"
        ) from None


# Free-function forms of the operations.

def w_add(sr, x, y):
    return get_semiring(sr).add(x, y)


def w_mul(sr, x, y):
    return get_semiring(sr).mul(x, y)


def w_star(sr, x):
    return get_semiring(sr).star(x)


def w_refine(sr, x, y, z, w):
    return get_semiring(sr).refine(x, y, z, w)


def w_parse(text: str, sr) -> Weight:
    return get_semiring(sr).parse(text)


def w_format(x: Weight) -> str:
    return format_weight(x)
