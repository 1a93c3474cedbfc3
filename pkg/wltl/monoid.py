# coding: utf-8
"""
Weight domains and their ω-valuation functions.

K1, K2 and K3 share the carrier ExtRat (exact rationals with -inf and inf), plus = max,
times = min, zero = -inf and one = inf. They differ in the valuation of infinite weight
sequences: liminf (K1), limsup (K2) and the supremum of the non-infinite values (K3).
PairLex is a lexicographically ordered pair domain with a limsup valuation.
"""

__all__ = ['Tag', 'ExtRat', 'NEG_INF', 'POS_INF', 'fin', 'PairValue', 'WeightSeq', 'Monoid',
           'val_liminf', 'val_limsup', 'val_sup_neginf', 'val_pair_limsup',
           'monoid_make', 'parse_value', 'format_value', 'random_value',
           'valuation_monotone', 'check_axioms', 'check_strict_sum', 'AXIOMS', 'DEFAULT_AXIOMS']

import itertools
import random
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Callable, Tuple

import pandas as pd

from .Profile import get_profile
from .wltlError import WltlError, USAGE


class Tag(Enum):
    NEG_INF = 0
    FIN = 1
    POS_INF = 2


@total_ordering
@dataclass(frozen=True)
class ExtRat:
    tag: Tag
    value: Fraction = None

    def __post_init__(self):
        if (self.tag is Tag.FIN) != (self.value is not None):
            raise ValueError('ExtRat value must be present iff the tag is FIN')
        if self.value is not None and not isinstance(self.value, Fraction):
            object.__setattr__(self, 'value', Fraction(self.value))

    def _key(self):
        return (self.tag.value, self.value if self.tag is Tag.FIN else 0)

    def __lt__(self, other):
        if not isinstance(other, ExtRat):
            return NotImplemented
        return self._key() < other._key()

    @property
    def is_finite(self):
        return self.tag is Tag.FIN

    def __str__(self):
        return format_value(self)

    def __repr__(self):
        return 'ExtRat({})'.format(format_value(self))


NEG_INF = ExtRat(Tag.NEG_INF)
POS_INF = ExtRat(Tag.POS_INF)


def fin(x):
    """
    Returns the finite ExtRat for an int, a Fraction or a fraction string such as '7/2'.
    """
    return ExtRat(Tag.FIN, Fraction(x))


INF_COMPONENT = None


@total_ordering
@dataclass(frozen=True)
class PairValue:
    """
    Pair of naturals extended with infinity (``None``), ordered lexicographically.
    """
    first: int = 0
    second: int = 0

    @staticmethod
    def _component_key(c):
        return (1, 0) if c is None else (0, c)

    def _key(self):
        return (self._component_key(self.first), self._component_key(self.second))

    def __lt__(self, other):
        if not isinstance(other, PairValue):
            return NotImplemented
        return self._key() < other._key()

    def __str__(self):
        return format_value(self)


PAIR_ZERO = PairValue(0, 0)
PAIR_ONE = PairValue(None, None)


@dataclass(frozen=True)
class WeightSeq:
    """
    The infinite weight sequence prefix · cycle^ω.
    """
    prefix: Tuple = ()
    cycle: Tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'prefix', tuple(self.prefix))
        object.__setattr__(self, 'cycle', tuple(self.cycle))
        if not self.cycle:
            raise ValueError('WeightSeq cycle must be nonempty')

    def values(self):
        return self.prefix + self.cycle

    def unrolled(self, n):
        return WeightSeq(self.prefix, self.cycle * n)

    def advanced(self, r):
        """
        Same sequence with r cycle entries moved into the prefix.
        """
        r = r % len(self.cycle)
        return WeightSeq(self.prefix + self.cycle[:r], self.cycle[r:] + self.cycle[:r])


def _val_limit(seq, zero, one, pick):
    values = seq.values()
    if zero in values:
        return zero
    if all(v == one for v in values):
        return one
    tail = [v for v in seq.cycle if v != one]
    if tail:
        return pick(tail)
    return pick(v for v in seq.prefix if v != one)


def val_liminf(seq):
    """
    liminf valuation of K1.

    Parameters
    ----------
    seq : WeightSeq
        Sequence of ExtRat values

    Returns
    -------
    ExtRat
        -inf if some entry is -inf, inf if all entries are inf, else the minimum non-infinite value
        of the cycle or, when the cycle is all inf, of the prefix
    """
    return _val_limit(seq, NEG_INF, POS_INF, min)


def val_limsup(seq):
    """
    limsup valuation of K2: as val_liminf with maximum in place of minimum.
    """
    return _val_limit(seq, NEG_INF, POS_INF, max)


def val_sup_neginf(seq):
    """
    Valuation of K3: -inf if some entry is -inf, inf if all entries are inf,
    else the maximum non-infinite value anywhere in the sequence.
    """
    values = seq.values()
    if NEG_INF in values:
        return NEG_INF
    if all(v == POS_INF for v in values):
        return POS_INF
    return max(v for v in values if v != POS_INF)


def val_pair_limsup(seq):
    return _val_limit(seq, PAIR_ZERO, PAIR_ONE, max)


@dataclass(frozen=True)
class Monoid:
    """
    Descriptor of a totally ordered ω-valuation monoid with plus = max and times = min.
    """
    id: str
    zero: object
    one: object
    valomega: Callable = field(compare=False)

    def plus(self, a, b):
        return max(a, b)

    def times(self, a, b):
        return min(a, b)

    def leq(self, a, b):
        return a <= b

    def sum(self, values):
        return max(values, default=self.zero)

    def product(self, values):
        return min(values, default=self.one)

    def is_boundary(self, v):
        return v == self.zero or v == self.one

    @property
    def is_pair(self):
        return self.id == 'pair'

    def parse_value(self, text):
        return parse_value(text, self)

    def __str__(self):
        return self.id


_MONOIDS = {
    'k1': Monoid('k1', NEG_INF, POS_INF, val_liminf),
    'k2': Monoid('k2', NEG_INF, POS_INF, val_limsup),
    'k3': Monoid('k3', NEG_INF, POS_INF, val_sup_neginf),
    'pair': Monoid('pair', PAIR_ZERO, PAIR_ONE, val_pair_limsup),
}
_ALIASES = {'pairlex': 'pair'}


def monoid_make(monoid_id):
    """
    Returns the monoid descriptor for 'k1', 'k2', 'k3' or 'pair' (case insensitive).
    A Monoid instance is returned unchanged.

    Raises
    ------
    WltlError
        If the id is unknown
    """
    if isinstance(monoid_id, Monoid):
        return monoid_id
    key = str(monoid_id).lower()
    key = _ALIASES.get(key, key)
    if key not in _MONOIDS:
        raise WltlError(USAGE, 'Unknown monoid {}, expected one of k1, k2, k3, pair'.format(monoid_id))
    return _MONOIDS[key]


_PAIR_RE = re.compile(r'^\(\s*([^,\s]+)\s*,\s*([^,\s]+)\s*\)$')


def _parse_pair_component(text):
    if text in ('inf', '+inf'):
        return None
    if not text.isdigit():
        raise WltlError(USAGE, 'Pair component {} is not a natural number or inf'.format(text))
    return int(text)


def parse_value(text, monoid):
    """
    Parse a monoid value.

    Parameters
    ----------
    text : string
        '3', '-2', '7/2', '2.5', 'inf' or '-inf' for K1/K2/K3; '(a,b)' with natural or 'inf'
        components for the pair monoid
    monoid : Monoid or string

    Raises
    ------
    WltlError
        If the text is not a value of the monoid's domain
    """
    monoid = monoid_make(monoid)
    text = text.strip()
    if monoid.is_pair:
        match = _PAIR_RE.match(text)
        if not match:
            raise WltlError(USAGE, 'Pair value expected, found {}'.format(text))
        return PairValue(_parse_pair_component(match.group(1)), _parse_pair_component(match.group(2)))

    if text in ('inf', '+inf'):
        return POS_INF
    if text == '-inf':
        return NEG_INF
    try:
        return fin(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise WltlError(USAGE, 'Value {} is not a rational number or +/-inf'.format(text))


def format_value(value):
    if isinstance(value, PairValue):
        return '({},{})'.format(*('inf' if c is None else str(c) for c in (value.first, value.second)))
    if value.tag is Tag.POS_INF:
        return 'inf'
    if value.tag is Tag.NEG_INF:
        return '-inf'
    return str(value.value)


_RANDOM_FINITE = [fin(Fraction(n, 2)) for n in range(-2, 11)]
_RANDOM_COMPONENTS = [0, 1, 2, 3, None]


def random_value(monoid, rng, proper=False):
    """
    Draw a value of the monoid. With ``proper`` the boundaries zero and one are excluded.
    """
    monoid = monoid_make(monoid)
    while True:
        if monoid.is_pair:
            v = PairValue(rng.choice(_RANDOM_COMPONENTS), rng.choice(_RANDOM_COMPONENTS))
        else:
            roll = rng.random()
            if roll < 0.15:
                v = NEG_INF
            elif roll < 0.35:
                v = POS_INF
            else:
                v = rng.choice(_RANDOM_FINITE)
        if not (proper and monoid.is_boundary(v)):
            return v


def _random_seq(monoid, rng, max_len=3, pool=None):
    draw = (lambda: rng.choice(pool)) if pool else (lambda: random_value(monoid, rng))
    prefix = [draw() for _ in range(rng.randint(0, max_len))]
    cycle = [draw() for _ in range(rng.randint(1, max_len))]
    return WeightSeq(prefix, cycle)


def _fmt_seq(seq):
    return '[{}] | [{}]'.format(', '.join(format_value(v) for v in seq.prefix),
                                ', '.join(format_value(v) for v in seq.cycle))


def valuation_monotone(monoid, a, b):
    """
    Returns True when valomega(a) <= valomega(b). Used to exhibit that pointwise monotonicity
    needs the boundary-pattern condition, e.g. over K1 with a = [2] | [5] and b = [2] | [inf].
    """
    monoid = monoid_make(monoid)
    return monoid.valomega(a) <= monoid.valomega(b)


def _pointwise_pair(monoid, rng, conditional):
    boundary = [monoid.zero, monoid.one]

    def draw_pair():
        if conditional and rng.random() < 0.3:
            x, y = rng.choice(boundary), rng.choice(boundary)
        else:
            x = random_value(monoid, rng, proper=conditional)
            y = random_value(monoid, rng, proper=conditional)
        return min(x, y), max(x, y)

    plen, clen = rng.randint(0, 3), rng.randint(1, 3)
    pairs = [draw_pair() for _ in range(plen + clen)]
    a = WeightSeq([p[0] for p in pairs[:plen]], [p[0] for p in pairs[plen:]])
    b = WeightSeq([p[1] for p in pairs[:plen]], [p[1] for p in pairs[plen:]])
    return a, b


def _random_family(monoid, rng):
    """
    Set-valued lasso: every position holds a nonempty set lying inside {zero, one} or outside it.
    """
    def draw_set():
        if rng.random() < 0.25:
            return tuple(sorted(set(rng.choice([monoid.zero, monoid.one]) for _ in range(rng.randint(1, 2)))))
        return tuple(sorted(set(random_value(monoid, rng, proper=True) for _ in range(rng.randint(1, 2)))))

    prefix = [draw_set() for _ in range(rng.randint(0, 2))]
    cycle = [draw_set() for _ in range(rng.randint(1, 2))]
    return prefix, cycle


def _distributes(monoid, prefix, cycle):
    lhs = monoid.valomega(WeightSeq([max(s) for s in prefix], [max(s) for s in cycle]))
    rhs = monoid.zero
    for unroll in (1, 2):
        cycle_sets = cycle * unroll
        for choice in itertools.product(*(prefix + cycle_sets)):
            seq = WeightSeq(choice[:len(prefix)], choice[len(prefix):])
            rhs = max(rhs, monoid.valomega(seq))
    return lhs == rhs, lhs, rhs


def _check_neutrality(monoid, rng):
    seq = _random_seq(monoid, rng)
    padded = WeightSeq((monoid.one,) + seq.prefix, seq.cycle)
    ok = monoid.valomega(padded) == monoid.valomega(seq)
    return ok, _fmt_seq(seq)


def _check_one_suffix(monoid, rng):
    k = random_value(monoid, rng)
    ok = monoid.valomega(WeightSeq([k], [monoid.one])) == k
    return ok, format_value(k)


def _check_one_max(monoid, rng):
    k = random_value(monoid, rng)
    return k <= monoid.one, format_value(k)


def _check_lower_bound(monoid, rng):
    k = random_value(monoid, rng)
    pool = [v for v in (random_value(monoid, rng) for _ in range(8)) if v >= k] or [k]
    seq = _random_seq(monoid, rng, pool=pool)
    return monoid.valomega(seq) >= k, 'k={} seq={}'.format(format_value(k), _fmt_seq(seq))


def _check_monotonicity(monoid, rng, conditional=True):
    a, b = _pointwise_pair(monoid, rng, conditional)
    return valuation_monotone(monoid, a, b), '{} vs {}'.format(_fmt_seq(a), _fmt_seq(b))


def _check_strict_sum(monoid, rng):
    k, k1, k2 = (random_value(monoid, rng) for _ in range(3))
    ok = not (k1 < k and k2 < k) or monoid.plus(k1, k2) < k
    return ok, 'k={} k1={} k2={}'.format(*map(format_value, (k, k1, k2)))


def _check_distributivity(monoid, rng):
    prefix, cycle = _random_family(monoid, rng)
    ok, lhs, rhs = _distributes(monoid, prefix, cycle)
    return ok, 'prefix={} cycle={} lhs={} rhs={}'.format(
        [[format_value(v) for v in s] for s in prefix], [[format_value(v) for v in s] for s in cycle],
        format_value(lhs), format_value(rhs))


AXIOMS = {
    'neutrality': _check_neutrality,
    'one_suffix': _check_one_suffix,
    'one_is_max': _check_one_max,
    'lower_bound': _check_lower_bound,
    'valuation_inequality': _check_monotonicity,
    'strict_sum': _check_strict_sum,
    'distributivity': _check_distributivity,
    'unconditional_monotonicity': lambda monoid, rng: _check_monotonicity(monoid, rng, conditional=False),
}
DEFAULT_AXIOMS = ('neutrality', 'one_suffix', 'one_is_max', 'lower_bound', 'valuation_inequality',
                  'strict_sum', 'distributivity')


def check_axioms(monoid, sample_count=None, seed=None, axioms=DEFAULT_AXIOMS):
    """
    Randomized verification of the monoid laws the automata constructions rely on.

    Parameters
    ----------
    monoid : Monoid or string
    sample_count : int, optional
        Samples per axiom. Default: the profile sample count
    seed : int, optional
        Default: the profile seed
    axioms : iterable of string
        Names from AXIOMS. 'unconditional_monotonicity' is not part of the default set,
        it is expected to fail over K1.

    Returns
    -------
    pandas.DataFrame
        One row per axiom with columns axiom, samples, failures, passed and witness
        (the first counterexample found, empty when none)
    """
    profile = get_profile()
    monoid = monoid_make(monoid)
    sample_count = profile.samples if sample_count is None else sample_count
    seed = profile.seed if seed is None else seed

    rows = []
    for name in axioms:
        if name not in AXIOMS:
            raise WltlError(USAGE, 'Unknown axiom {}'.format(name))
        rng = random.Random('{}:{}:{}'.format(seed, monoid.id, name))
        failures, witness = 0, ''
        for _ in range(sample_count):
            ok, detail = AXIOMS[name](monoid, rng)
            if not ok:
                failures += 1
                witness = witness or detail
        profile.logger.debug('Axiom {} over {}: {} failures in {} samples'.format(name, monoid.id, failures, sample_count))
        rows.append({'axiom': name, 'samples': sample_count, 'failures': failures,
                     'passed': failures == 0, 'witness': witness})
    return pd.DataFrame(rows, columns=['axiom', 'samples', 'failures', 'passed', 'witness'])


def check_strict_sum(monoid, sample_count=None, seed=None):
    """
    Only the strict sum property: k1 < k and k2 < k imply k1 + k2 < k.
    """
    return check_axioms(monoid, sample_count, seed, ['strict_sum'])
