import pytest
from wltl.automata import WBA, parse_automaton, wba_behavior_oracle, buchi_accepts
from wltl.decide import (Verdict, Witness, quantitative_inclusion, quantitative_equivalence,
                         decide_formula_automaton, k_safety_counterexample, is_k_safe_wba, is_k_safe_formula)
from wltl.logic import parse_formula
from wltl.monoid import fin, POS_INF, NEG_INF
from wltl.semantics import eval_formula, parse_lasso
from wltl.translate import formula_to_wba, threshold_buchi
from wltl.wltlError import WltlError
from test.config import read_fixture, clean_profile


def ab_limsup():
    return parse_automaton(read_fixture('ab_limsup.wba'))


def lowered(aut, old, new):
    weights = [(s, l, d, new if v == old else v) for s, l, d, v in aut.weights]
    return WBA(aut.monoid, aut.aps, aut.states, weights, aut.initial, aut.final)


def test_inclusion_reflexive():
    verdict = quantitative_inclusion(ab_limsup(), ab_limsup())
    assert verdict
    assert verdict.witness is None
    assert verdict.thresholds_checked == [POS_INF, fin(3), fin(2)]


def test_inclusion_counterexample():
    a, b = ab_limsup(), lowered(ab_limsup(), fin(2), fin(1))
    assert quantitative_inclusion(b, a)
    verdict = quantitative_inclusion(a, b)
    assert verdict.answer == 'no'
    assert (verdict.witness.left, verdict.witness.right) == (fin(2), fin(1))
    assert wba_behavior_oracle(a, verdict.witness.lasso) == fin(2)
    assert verdict.checks[-1] == ('left<=right', fin(2), False)


def test_equivalence():
    assert quantitative_equivalence(ab_limsup(), ab_limsup())
    verdict = quantitative_equivalence(lowered(ab_limsup(), fin(2), fin(1)), ab_limsup())
    assert not verdict
    assert verdict.checks[-1][0] == 'right<=left'
    assert verdict.witness.left < verdict.witness.right


def test_verdict_output():
    verdict = quantitative_equivalence(ab_limsup(), ab_limsup())
    lines = verdict.to_lines()
    assert lines[0] == 'verdict=yes'
    assert 'thresholds=inf,3,2,inf,3,2' in lines
    assert 'check.left<=right.3=yes' in lines
    frame = verdict.to_frame()
    assert list(frame.columns) == ['direction', 'threshold', 'included']
    assert len(frame) == 6
    assert frame['included'].all()

    no = Verdict('no', Witness(parse_lasso('{a} | {a}'), fin(2), fin(1)), [fin(2)], [('left<=right', fin(2), False)])
    assert no.to_lines() == ['verdict=no', 'witness={a} | {a}', 'left=2', 'right=1', 'thresholds=2',
                             'check.left<=right.2=no']


def test_monoid_mismatch():
    k1 = WBA('k1', ('a',), ['p'], [('p', {'a'}, 'p', fin(1))], {'p'}, {'p'})
    with pytest.raises(WltlError) as e:
        quantitative_inclusion(ab_limsup(), k1)
    assert e.value.code == 2
    with pytest.raises(WltlError):
        quantitative_inclusion(ab_limsup(), ab_limsup(), monoid='pair')


def test_complement_cap(clean_profile):
    clean_profile.set_complement_cap(1)
    with pytest.raises(WltlError) as e:
        quantitative_inclusion(ab_limsup(), ab_limsup())
    assert e.value.code == 3


def test_robot_formula_automaton():
    phi = parse_formula(read_fixture('robot.wltl'), 'k2')
    robot = parse_automaton(read_fixture('robot.wba'))
    assert decide_formula_automaton(phi, robot, k=fin(8))

    verdict = decide_formula_automaton(phi, lowered(robot, fin(10), fin(9)), k=fin(8))
    assert verdict.answer == 'no'
    assert verdict.witness.left == fin(10) and verdict.witness.right == fin(9)
    assert eval_formula(phi, verdict.witness.lasso, 'k2') == fin(10)


def test_formula_against_its_translation():
    phi = parse_formula('G((a & 2) | (b & 3))', 'k2')
    assert decide_formula_automaton(phi, formula_to_wba(phi, 'k2'), k=fin(2))

    other = formula_to_wba(parse_formula('G((a & 2) | (b & 4))', 'k2'), 'k2')
    verdict = decide_formula_automaton(phi, other, k=fin(2))
    assert not verdict
    assert verdict.witness.left == fin(3) and verdict.witness.right == fin(4)


def test_formula_against_its_translation_k3():
    phi = parse_formula('G((a & 2) | (b & 3))', 'k3')
    assert decide_formula_automaton(phi, formula_to_wba(phi, 'k3'), k=fin(2))


def test_decide_formula_automaton_errors():
    robot = parse_automaton(read_fixture('robot.wba'))
    phi = parse_formula(read_fixture('robot.wltl'), 'k2')
    with pytest.raises(WltlError):
        decide_formula_automaton(phi, robot)
    with pytest.raises(WltlError):
        decide_formula_automaton(phi, robot, k=POS_INF)
    with pytest.raises(WltlError):
        decide_formula_automaton(phi, robot, k=fin(9))
    with pytest.raises(WltlError):
        decide_formula_automaton(parse_formula('(3 & a) U (3 & b)', 'k2'), robot, k=fin(3))


def test_k_safety_wba():
    assert is_k_safe_wba(parse_automaton(read_fixture('robot.wba')), fin(8))
    aut = ab_limsup()
    assert not is_k_safe_wba(aut, fin(3))
    w = k_safety_counterexample(aut, fin(3))
    assert wba_behavior_oracle(aut, w) < fin(3)
    assert not buchi_accepts(threshold_buchi(aut, fin(3)), w)
    with pytest.raises(WltlError):
        is_k_safe_wba(aut, NEG_INF)


def test_k_safety_formula():
    assert is_k_safe_formula(parse_formula('(3 & a) U (3 & b)', 'k2'), fin(3), 'k2') == (False, 'closure')
    assert is_k_safe_formula(parse_formula('(3 & b) W (3 & a)', 'k2'), fin(2), 'k2') == (True, 'fragment')
    assert is_k_safe_formula(parse_formula('G (a & 2)', 'k2'), fin(2), 'k2') == (True, 'fragment')
    assert is_k_safe_formula(parse_formula('G (a & 2)', 'k2'), fin(2), 'k2', method='closure') == (True, 'closure')


def test_k_safety_formula_errors():
    with pytest.raises(WltlError):
        is_k_safe_formula(parse_formula('(3 & a) U (3 & b)', 'k2'), fin(3), 'k2', method='fragment')
    with pytest.raises(WltlError):
        is_k_safe_formula(parse_formula('G (a U (2 & b))', 'k2'), fin(2), 'k2')
    with pytest.raises(WltlError):
        is_k_safe_formula(parse_formula('G (a & 2)', 'k2'), fin(2), 'k2', method='sampling')
