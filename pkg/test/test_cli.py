import io
import json

import pytest
from wltl.automata import parse_automaton
from wltl.cli import main
from test.config import fixture, read_fixture, clean_profile


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_eval(clean_profile):
    code, out, _ = run('eval', '--monoid', 'k3', '--formula', 'G((a&2)|(b&3))', '--lasso', '| {a}')
    assert code == 0
    assert out == '2\n'

    code, out, _ = run('eval', '--monoid', 'k2', '--formula', 'G((a&2)|(b&3))', '--lasso', '{b} | {a}', '--format', 'kv')
    assert (code, out) == (0, 'value=2\n')


def test_eval_until_factor(clean_profile):
    code, out, _ = run('eval', '--formula', '(3 & a) U (3 & b)', '--lasso', '{a} {a} | {b}', '--until-factor', '3')
    assert (code, out) == (0, '3\n')


def test_parse(clean_profile):
    code, out, _ = run('parse', '--formula', 'G (a&2)')
    assert (code, out) == (0, 'G (a & 2)\n')
    code, out, _ = run('parse', '--lasso', '{a}|{b}', '--format', 'kv')
    assert (code, out) == (0, 'lasso={a} | {b}\n')
    code, out, _ = run('parse', '--automaton', fixture('ab_limsup.wba'))
    assert code == 0
    assert parse_automaton(out) == parse_automaton(read_fixture('ab_limsup.wba'))


def test_parse_usage(clean_profile):
    code, _, err = run('parse', '--formula', 'a', '--lasso', '| {a}')
    assert code == 2
    assert 'Error code 2' in err
    code, _, err = run('parse', '--formula', 'G (a &')
    assert code == 2
    assert run('frobnicate')[0] == 2
    assert run('eval', '--formula', 'a')[0] == 2


def test_classify(clean_profile):
    code, out, _ = run('classify', '--formula', fixture('robot.wltl'), '--k', '8', '--format', 'kv')
    assert code == 0
    lines = out.splitlines()
    assert 'k-or-t-RULTL=yes' in lines
    assert len(lines) == 8
    assert all(line.split('=')[1] in ('yes', 'no', '-') for line in lines)


def test_behavior(clean_profile):
    for lasso, value in (('| {b}', 'inf'), ('{a} | {a}', '2'), ('{a} | {b}', '3'), ('{b} | {a}', '-inf')):
        code, out, _ = run('behavior', '--automaton', fixture('ab_limsup.wba'), '--lasso', lasso)
        assert (code, out) == (0, value + '\n')
        code, out, _ = run('behavior', '--automaton', fixture('ab_limsup.wba'), '--lasso', lasso, '--oracle')
        assert (code, out) == (0, value + '\n')


def test_behavior_needs_weights(clean_profile):
    code, _, err = run('behavior', '--automaton', fixture('aplus.ba'), '--lasso', '| {a}')
    assert code == 2
    assert 'weighted' in err


def test_translate(clean_profile):
    code, out, _ = run('translate', '--formula', 'G((a&2)|(b&3))', '--aps', 'c')
    assert code == 0
    aut = parse_automaton(out)
    assert aut.monoid == 'k2'
    assert aut.aps == ('a', 'b', 'c')

    code, out, _ = run('translate', '--formula', '(3 & b) W (3 & a)', '--threshold', '3', '--format', 'kv')
    assert code == 0
    assert out.startswith('threshold=')


def test_threshold(clean_profile):
    code, out, _ = run('threshold', '--automaton', fixture('ab_limsup.wba'), '--v', '3')
    assert code == 0
    assert 'monoid' not in out
    assert parse_automaton(out).final


def test_wts2wba(clean_profile):
    code, out, _ = run('wts2wba', '--wts', fixture('robot.wts'))
    assert code == 0
    assert parse_automaton(out) == parse_automaton(read_fixture('robot.wba'))


def test_decide_robot(clean_profile):
    code, out, _ = run('decide', '--monoid', 'k2', '--k', '8', '--formula', fixture('robot.wltl'),
                       '--automaton', fixture('robot.wba'), '--format', 'kv')
    assert code == 0
    assert out.splitlines()[0] == 'verdict=yes'


def test_include_and_equiv(clean_profile, tmp_path):
    lowered = read_fixture('ab_limsup.wba').replace(' 2\n', ' 1\n')
    path = tmp_path / 'lowered.wba'
    path.write_text(lowered, encoding='utf-8')

    code, out, _ = run('include', '--left', str(path), '--right', fixture('ab_limsup.wba'))
    assert code == 0
    assert out.splitlines()[0] == 'yes'

    code, out, _ = run('include', '--left', fixture('ab_limsup.wba'), '--right', str(path), '--format', 'kv')
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == 'verdict=no'
    assert 'left=2' in lines and 'right=1' in lines
    assert any(line.startswith('witness=') for line in lines)

    code, out, _ = run('equiv', '--left', fixture('ab_limsup.wba'), '--right', fixture('ab_limsup.wba'),
                       '--extra', '5/2', '--format', 'kv')
    assert code == 0
    assert 'check.left<=right.5/2=yes' in out.splitlines()


def test_include_cap(clean_profile):
    code, _, err = run('include', '--left', fixture('ab_limsup.wba'), '--right', fixture('ab_limsup.wba'), '--cap', '1')
    assert code == 3
    assert 'Error code 3' in err


def test_safety(clean_profile):
    code, out, _ = run('safety', '--automaton', fixture('aplusbplus.ba'), '--format', 'kv')
    assert code == 1
    assert out.splitlines()[0] == 'safe=no'
    assert out.splitlines()[1].startswith('witness=')

    assert run('safety', '--automaton', fixture('aplus.ba'))[0] == 0
    assert run('safety', '--automaton', fixture('robot.wba'), '--k', '8')[0] == 0
    assert run('safety', '--automaton', fixture('ab_limsup.wba'), '--k', '3')[0] == 1
    assert run('safety', '--automaton', fixture('ab_limsup.wba'))[0] == 2


def test_safety_formula(clean_profile):
    code, out, _ = run('safety', '--formula', '(3 & a) U (3 & b)', '--k', '3', '--format', 'kv')
    assert (code, out) == (1, 'safe=no\nmethod=closure\n')
    code, out, _ = run('safety', '--formula', '(3 & b) W (3 & a)', '--k', '2')
    assert (code, out) == (0, 'yes (fragment)\n')
    assert run('safety', '--formula', 'G (a & 2)', '--k', '2', '--method', 'closure')[0] == 0
    assert run('safety', '--formula', 'G (a & 2)')[0] == 2


def test_axioms(clean_profile):
    code, out, _ = run('axioms', '--monoid', 'k2', '--samples', '50', '--format', 'kv')
    assert code == 0
    assert all(line.endswith('=pass') for line in out.splitlines())

    code, out, _ = run('axioms', '--monoid', 'k1', '--samples', '300', '--seed', '3', '--unconditional', '--format', 'kv')
    assert code == 1
    assert any(line.startswith('unconditional_monotonicity=fail:') for line in out.splitlines())


def test_config(clean_profile, tmp_path):
    path = tmp_path / 'wltl.json'
    path.write_text(json.dumps({'monoid': 'k3', 'output_format': 'kv'}), encoding='utf-8')
    code, out, _ = run('eval', '--config', str(path), '--formula', 'G((a&2)|(b&3))', '--lasso', '{b} | {a}')
    assert (code, out) == (0, 'value=3\n')

    assert run('eval', '--config', str(tmp_path / 'missing.json'), '--formula', 'a', '--lasso', '| {a}')[0] == 2
    assert run('eval', '--log-level', 'LOUD', '--formula', 'a', '--lasso', '| {a}')[0] == 2
    assert run('eval', '--monoid', 'k9', '--formula', 'a', '--lasso', '| {a}')[0] == 2


def test_seed_and_samples_scope(clean_profile, capsys):
    assert run('eval', '--seed', '9', '--samples', '5', '--formula', 'a & 2', '--lasso', '| {a}') == (0, '2\n', '')
    assert run('axioms', '--help')[0] == 0
    help_text = ' '.join(capsys.readouterr().out.split())
    assert 'seed of the axioms suite' in help_text
    assert 'samples per property of the axioms suite' in help_text
