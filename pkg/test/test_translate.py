import random

import pytest
from wltl.automata import (WBA, alphabet, buchi_accepts, muller_accepts, rabin_accepts, wba_behavior,
                           wba_behavior_oracle, parse_automaton)
from wltl.logic import (LUntil, LWeakUntil, LAnd, LOr, LNext, Prop, NotProp, TRUE, FALSE, parse_formula,
                        desugar_weak_until, random_formula, threshold_formula, candidate_values)
from wltl.monoid import fin, POS_INF, NEG_INF, monoid_make, random_value, WeightSeq
from wltl.semantics import Lasso, eval_classical, eval_formula, parse_lasso, random_lasso
from wltl.translate import (WTS, parse_wts, format_wts, wts_to_wba, wts_run_word, ltl_to_buchi, formula_to_wba,
                            k3_to_k2, threshold_muller_k2, threshold_rabin_k1, threshold_buchi_k1,
                            threshold_buchi_k2, threshold_buchi)
from wltl.wltlError import WltlError
from test.config import read_fixture, read_pd

AB = ('a', 'b')


def random_wba(rng, monoid, n=3, density=0.3, initial=(0,)):
    m = monoid_make(monoid)
    states = list(range(n))
    weights = [(s, letter, d, random_value(m, rng)) for s in states for letter in alphabet(AB) for d in states
               if rng.random() < density]
    return WBA(m.id, AB, states, weights, set(initial), {q for q in states if rng.random() < 0.5})


def chain(monoid, values):
    """
    Normalized wBa reading a^ω whose weight sequence is values followed by one forever.
    """
    m = monoid_make(monoid)
    states = list(range(len(values) + 1))
    weights = [(i, {'a'}, i + 1, v) for i, v in enumerate(values)] + [(len(values), {'a'}, len(values), m.one)]
    return WBA(m.id, ('a',), states, weights, {0}, states)


def test_parse_wts():
    system = parse_wts(read_fixture('robot.wts'))
    assert system.aps == ('control', 'gather', 'upload')
    assert system.initial == {'q0'}
    assert system.label('q3') == {'control', 'upload'}
    assert system.label('q0') == frozenset()
    assert system.weight('q1', 'q0') == 10
    assert system.weight('q0', 'q1') is None
    assert parse_wts(format_wts(system)) == system


def test_parse_wts_errors():
    with pytest.raises(WltlError):
        parse_wts('aps a\nstates p\ninitial p')
    with pytest.raises(WltlError):
        parse_wts('wts\naps a\nstates p\ninitial p\nedge p p 0')
    with pytest.raises(WltlError):
        parse_wts('wts\naps a\nstates p\ninitial p\nedge p p two')
    with pytest.raises(WltlError):
        parse_wts('wts\naps a\nstates p\ninitial p\nlabel p {b}')
    with pytest.raises(WltlError):
        parse_wts('wts\naps a\nstates p\ninitial p\nedge p q 1')
    with pytest.raises(WltlError):
        WTS(('a',), ('p',), {'p'}, [('p', 'p', -1)], {})


def test_wts_to_wba():
    wba = wts_to_wba(parse_wts(read_fixture('robot.wts')))
    assert wba.monoid == 'k2'
    assert wba.final == set(wba.states)
    assert wba.wt('q2', {'gather'}, 'q1') == fin(7)
    assert wba == parse_automaton(read_fixture('robot.wba'))


def test_wts_run_word():
    system = parse_wts(read_fixture('robot.wts'))
    word, weights = wts_run_word(system, ((), ('q0', 'q2', 'q3')))
    assert word == parse_lasso('| {} {gather} {control,upload}')
    assert weights == WeightSeq([], [fin(8), fin(5), fin(3)])
    assert monoid_make('k2').valomega(weights) == fin(8)

    word, weights = wts_run_word(system, (('q0', 'q2'), ('q1', 'q0', 'q2')))
    assert word == parse_lasso('{} {gather} | {upload} {} {gather}')
    assert weights == WeightSeq([fin(8), fin(7)], [fin(10), fin(8), fin(7)])

    with pytest.raises(WltlError):
        wts_run_word(system, ((), ('q2', 'q3', 'q0')))
    with pytest.raises(WltlError):
        wts_run_word(system, ((), ('q0', 'q1')))


def test_robot_behavior():
    wba = wts_to_wba(parse_wts(read_fixture('robot.wts')))
    phi = parse_formula(read_fixture('robot.wltl'), 'k2')
    for row in read_pd('robot_behavior.csv', dtype=str).itertuples():
        w = parse_lasso(row.lasso)
        value = monoid_make('k2').zero if row.value == '-inf' else fin(int(row.value))
        assert wba_behavior(wba, w) == value, row.lasso
        assert wba_behavior_oracle(wba, w) == value, row.lasso
        assert eval_formula(phi, w, 'k2') == value, row.lasso


def test_ltl_to_buchi_examples():
    until = ltl_to_buchi(LUntil(Prop('a'), Prop('b')))
    assert until.initial == {'init'}
    assert buchi_accepts(until, parse_lasso('{a} {a} | {b}'))
    assert not buchi_accepts(until, parse_lasso('| {a}'))

    infinitely_often = ltl_to_buchi(LWeakUntil(LUntil(TRUE, Prop('a')), FALSE), AB)
    assert infinitely_often.aps == AB
    assert buchi_accepts(infinitely_often, parse_lasso('{} | {b} {a}'))
    assert not buchi_accepts(infinitely_often, parse_lasso('{a} | {b}'))

    assert not ltl_to_buchi(LAnd(Prop('a'), NotProp('a'))).states
    assert buchi_accepts(ltl_to_buchi(TRUE, AB), parse_lasso('| {a,b}'))


def classical_formulas(rng, depth):
    literals = [Prop('a'), Prop('b'), NotProp('a'), NotProp('b'), TRUE, FALSE]
    if depth == 0:
        return rng.choice(literals)
    kind = rng.choice(['lit', 'and', 'or', 'next', 'until', 'weak'])
    if kind == 'lit':
        return rng.choice(literals)
    if kind == 'next':
        return LNext(classical_formulas(rng, depth - 1))
    node = {'and': LAnd, 'or': LOr, 'until': LUntil, 'weak': LWeakUntil}[kind]
    return node(classical_formulas(rng, depth - 1), classical_formulas(rng, depth - 1))


def test_ltl_to_buchi_random():
    rng = random.Random(23)
    for _ in range(80):
        phi = classical_formulas(rng, 3)
        aut = ltl_to_buchi(phi, AB)
        for _ in range(10):
            w = random_lasso(rng, AB)
            assert buchi_accepts(aut, w) == eval_classical(phi, w), (phi, w)


def test_formula_to_wba_example():
    phi = parse_formula('G((a & 2) | (b & 3))', 'k2')
    aut = formula_to_wba(phi, 'k2')
    assert aut.origin == (phi, 'k2')
    for text, value in {'| {a} {b}': fin(3), '{b} | {a}': fin(2), '| {}': NEG_INF}.items():
        assert wba_behavior_oracle(aut, parse_lasso(text)) == value


@pytest.mark.parametrize('monoid, formulas', [('k1', 40), ('k2', 100), ('k3', 100)])
def test_formula_to_wba_random(monoid, formulas):
    rng = random.Random('translate:' + monoid)
    for _ in range(formulas):
        phi = random_formula(rng, monoid, fin(2), depth=4)
        aut = formula_to_wba(desugar_weak_until(phi), monoid, AB)
        for _ in range(20):
            w = random_lasso(rng, AB)
            value = eval_formula(phi, w, monoid)
            assert wba_behavior(aut, w) == value, (phi, w)
            assert wba_behavior_oracle(aut, w) == value, (phi, w)


def test_formula_to_wba_errors():
    with pytest.raises(WltlError):
        formula_to_wba(parse_formula('a', 'k2'), 'pair')
    with pytest.raises(WltlError):
        formula_to_wba(parse_formula('G (a U (2 & b))', 'k2'), 'k2')


def test_k3_to_k2_example():
    aut = WBA('k3', AB, ['p', 'q'],
              [('p', {'a'}, 'p', fin(2)), ('p', {'b'}, 'q', fin(5)), ('q', {'a'}, 'q', POS_INF),
               ('q', {'b'}, 'q', fin(1))],
              {'p'}, {'p', 'q'})
    k2 = k3_to_k2(aut)
    assert k2.monoid == 'k2'
    for text, value in {'| {a}': fin(2), '{a} {b} | {a}': fin(5), '{b} | {b}': fin(5), '{a} | {a,b}': NEG_INF}.items():
        w = parse_lasso(text)
        assert wba_behavior_oracle(aut, w) == value, text
        assert wba_behavior_oracle(k2, w) == value, text

    with pytest.raises(WltlError):
        k3_to_k2(k2)


def test_k3_to_k2_random():
    rng = random.Random(29)
    for _ in range(50):
        aut = random_wba(rng, 'k3')
        k2 = k3_to_k2(aut)
        for _ in range(20):
            w = random_lasso(rng, AB)
            assert wba_behavior_oracle(k2, w) == wba_behavior_oracle(aut, w), (aut, w)


def test_threshold_k1_examples():
    assert buchi_accepts(threshold_buchi_k1(chain('k1', [fin(7)]), fin(5)), parse_lasso('| {a}'))
    assert not buchi_accepts(threshold_buchi_k1(chain('k1', [fin(3), fin(7)]), fin(5)), parse_lasso('| {a}'))
    assert not buchi_accepts(threshold_buchi_k1(chain('k1', [fin(3), fin(7)]), POS_INF), parse_lasso('| {a}'))
    assert buchi_accepts(threshold_buchi_k1(chain('k1', []), POS_INF), parse_lasso('| {a}'))


def test_threshold_k2_examples():
    wba = parse_automaton(read_fixture('ab_limsup.wba'))
    behavior = {'| {b}': POS_INF, '{a} | {a}': fin(2), '{a} | {b}': fin(3), '{b} | {a}': NEG_INF}
    for v in (fin(3), fin(2), fin(1), POS_INF):
        aut = threshold_buchi_k2(wba, v)
        for text, value in behavior.items():
            assert buchi_accepts(aut, parse_lasso(text)) == (value >= v), (v, text)
    assert buchi_accepts(threshold_buchi_k2(wba, NEG_INF), parse_lasso('{b} | {a}'))


def test_threshold_requires_normalized():
    aut = WBA('k2', AB, ['p', 'q'], [('p', {'a'}, 'p', fin(1))], {'p', 'q'}, {'p'})
    with pytest.raises(WltlError):
        threshold_muller_k2(aut, fin(1))
    with pytest.raises(WltlError):
        threshold_rabin_k1(aut, fin(1))
    assert buchi_accepts(threshold_buchi(aut, fin(1)), parse_lasso('| {a}'))


@pytest.mark.parametrize('monoid', ['k1', 'k2', 'k3'])
def test_threshold_contract(monoid):
    rng = random.Random('threshold-automata:' + monoid)
    for _ in range(25):
        aut = random_wba(rng, monoid, n=rng.randint(2, 5), initial=(0, 1) if rng.random() < 0.3 else (0,))
        values = aut.image() | {monoid_make(monoid).one}
        lassos = [random_lasso(rng, AB) for _ in range(20)]
        expected = [wba_behavior_oracle(aut, w) for w in lassos]
        for v in values:
            result = threshold_buchi(aut, v)
            for w, value in zip(lassos, expected):
                assert buchi_accepts(result, w) == (value >= v), (aut, v, w)


def test_threshold_muller_and_rabin_direct():
    rng = random.Random(31)
    for monoid, build, accepts in (('k2', threshold_muller_k2, muller_accepts), ('k1', threshold_rabin_k1, rabin_accepts)):
        m = monoid_make(monoid)
        for _ in range(20):
            aut = random_wba(rng, monoid)
            for v in aut.image() - {m.zero, m.one}:
                result = build(aut, v)
                for _ in range(6):
                    w = random_lasso(rng, AB)
                    assert accepts(result, w) == (wba_behavior_oracle(aut, w) >= v), (aut, v, w)


def test_threshold_formula_automaton_agrees_with_tableau():
    rng = random.Random(37)
    for _ in range(20):
        phi = random_formula(rng, 'k2', fin(2), depth=2)
        aut = formula_to_wba(desugar_weak_until(phi), 'k2', AB)
        for v in candidate_values(phi, 'k2'):
            direct = ltl_to_buchi(threshold_formula(phi, v, 'k2'), AB)
            through = threshold_buchi(aut, v)
            for _ in range(5):
                w = random_lasso(rng, AB)
                assert buchi_accepts(direct, w) == buchi_accepts(through, w), (phi, v, w)
