import random
from fractions import Fraction

import pytest
from wltl.monoid import (NEG_INF, POS_INF, fin, PairValue, PAIR_ZERO, PAIR_ONE, WeightSeq, monoid_make,
                         parse_value, format_value, random_value, valuation_monotone, check_axioms,
                         check_strict_sum)
from wltl.wltlError import WltlError


def seq(prefix, cycle):
    def value(x):
        if x == 'inf':
            return POS_INF
        if x == '-inf':
            return NEG_INF
        return fin(x)
    return WeightSeq([value(x) for x in prefix], [value(x) for x in cycle])


def test_order():
    assert NEG_INF < fin(-100) < fin(Fraction(1, 3)) < fin(1) < POS_INF
    assert fin(Fraction(2, 4)) == fin(Fraction(1, 2))
    assert max(fin(3), POS_INF) == POS_INF


def test_monoid_operations():
    k2 = monoid_make('K2')
    assert k2.plus(fin(3), fin(5)) == fin(5)
    assert k2.times(fin(3), fin(5)) == fin(3)
    assert k2.plus(k2.zero, fin(3)) == fin(3)
    assert k2.times(k2.one, fin(3)) == fin(3)
    assert k2.times(k2.zero, fin(3)) == k2.zero
    assert k2.leq(fin(3), fin(5))
    assert k2.sum([]) == k2.zero
    assert k2.product([]) == k2.one


def test_monoid_make():
    assert monoid_make('pairlex').id == 'pair'
    assert monoid_make(monoid_make('k1')).id == 'k1'

    with pytest.raises(WltlError):
        monoid_make('k4')


def test_liminf():
    k1 = monoid_make('k1')
    assert k1.valomega(seq([], [5])) == fin(5)
    assert k1.valomega(seq([1], ['inf'])) == fin(1)
    assert k1.valomega(seq([2], [5])) == fin(5)
    assert k1.valomega(seq(['-inf'], [7])) == NEG_INF
    assert k1.valomega(seq(['inf'], ['inf'])) == POS_INF


def test_limsup():
    k2 = monoid_make('k2')
    assert k2.valomega(seq([], [3])) == fin(3)
    assert k2.valomega(seq([5], [3, 'inf'])) == fin(3)
    assert k2.valomega(seq([5], ['inf'])) == fin(5)
    assert k2.valomega(seq([1], [2, '-inf'])) == NEG_INF


def test_sup_neginf():
    k3 = monoid_make('k3')
    assert k3.valomega(seq([], [2])) == fin(2)
    assert k3.valomega(seq([8], ['inf'])) == fin(8)
    assert k3.valomega(seq(['-inf'], [9])) == NEG_INF
    assert k3.valomega(seq([8], [2, 'inf'])) == fin(8)


def test_unrolling_invariance():
    rng = random.Random(7)
    for monoid in (monoid_make(m) for m in ('k1', 'k2', 'k3')):
        for _ in range(100):
            prefix = [random_value(monoid, rng) for _ in range(rng.randint(0, 3))]
            cycle = [random_value(monoid, rng) for _ in range(rng.randint(1, 3))]
            s = WeightSeq(prefix, cycle)
            value = monoid.valomega(s)
            assert monoid.valomega(s.unrolled(3)) == value
            assert monoid.valomega(s.advanced(rng.randint(0, 5))) == value
            assert value in set(s.values()) | {monoid.zero, monoid.one}


def test_pair_monoid():
    pair = monoid_make('pair')
    assert PAIR_ZERO < PairValue(0, 1) < PairValue(1, 0) < PairValue(1, None) < PAIR_ONE
    assert pair.valomega(WeightSeq([PairValue(3, 3)], [PairValue(1, 2), PAIR_ONE])) == PairValue(1, 2)
    assert pair.valomega(WeightSeq([], [PAIR_ONE])) == PAIR_ONE


def test_parse_value():
    assert parse_value('7/2', 'k2') == fin(Fraction(7, 2))
    assert parse_value('2.5', 'k2') == fin(Fraction(5, 2))
    assert parse_value('-inf', 'k1') == NEG_INF
    assert parse_value(' inf ', 'k3') == POS_INF
    assert parse_value('(2, inf)', 'pair') == PairValue(2, None)

    with pytest.raises(WltlError):
        parse_value('two', 'k2')

    with pytest.raises(WltlError):
        parse_value('3', 'pair')


def test_format_value():
    assert format_value(fin(Fraction(7, 2))) == '7/2'
    assert format_value(POS_INF) == 'inf'
    assert format_value(NEG_INF) == '-inf'
    assert format_value(PairValue(1, None)) == '(1,inf)'
    assert parse_value(format_value(fin(Fraction(-3, 4))), 'k2') == fin(Fraction(-3, 4))


def test_random_value():
    rng = random.Random(1)
    k2 = monoid_make('k2')
    values = [random_value(k2, rng, proper=True) for _ in range(200)]
    assert not any(k2.is_boundary(v) for v in values)


def test_liminf_unconditional_monotonicity_counterexample():
    assert not valuation_monotone('k1', seq([2], [5]), seq([2], ['inf']))
    assert valuation_monotone('k2', seq([2], [5]), seq([2], [6]))


@pytest.mark.parametrize('monoid', ['k1', 'k2', 'k3', 'pair'])
def test_check_axioms(monoid):
    report = check_axioms(monoid, sample_count=200, seed=0)
    assert list(report.columns) == ['axiom', 'samples', 'failures', 'passed', 'witness']
    assert report['passed'].all(), report[~report['passed']].to_string()
    assert set(report['axiom']) >= {'neutrality', 'strict_sum', 'distributivity', 'valuation_inequality'}


def test_check_axioms_unconditional_monotonicity_fails_over_k1():
    report = check_axioms('k1', sample_count=300, seed=3, axioms=['unconditional_monotonicity'])
    row = report.iloc[0]
    assert not row['passed']
    assert row['failures'] > 0
    assert row['witness']


def test_check_axioms_unknown():
    with pytest.raises(WltlError):
        check_axioms('k2', sample_count=1, seed=0, axioms=['commutativity'])


def test_check_strict_sum():
    report = check_strict_sum('k3', sample_count=100, seed=1)
    assert list(report['axiom']) == ['strict_sum']
    assert report['passed'].all()


def test_check_axioms_pair():
    report = check_strict_sum('pair', sample_count=300, seed=2)
    assert report['failures'].sum() == 0
    rng = random.Random(5)
    pair = monoid_make('pair')
    values = [random_value(pair, rng, proper=True) for _ in range(100)]
    assert all(PAIR_ZERO < v < PAIR_ONE for v in values)
    assert pair.valomega(WeightSeq([PairValue(3, 3)], [PairValue(1, None), PairValue(2, 0)])) == PairValue(2, 0)
