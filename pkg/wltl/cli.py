# coding: utf-8
"""
Command line interface.

Exit codes: 0 for yes or success, 1 for no, 2 for usage and parse errors, 3 when a complementation
limit is exceeded. Arguments naming a formula, lasso, automaton or transition system accept either
a path to a file or the text itself.
"""

__all__ = ['main', 'build_parser']

import argparse
import logging
import sys

from .Profile import (OUTPUT_FORMATS, get_profile, load_config, set_log_level, set_monoid, set_seed,
                      set_samples, set_complement_cap, set_output_format)
from .automata import (WBA, parse_automaton, format_automaton, safety_counterexample,
                       wba_behavior, wba_behavior_oracle)
from .decide import (quantitative_inclusion, quantitative_equivalence, decide_formula_automaton,
                     k_safety_counterexample, is_k_safe_formula)
from .logic import parse_formula, format_formula, format_classical, classify, threshold_formula
from .monoid import parse_value, format_value, check_axioms, AXIOMS, DEFAULT_AXIOMS
from .semantics import parse_lasso, format_lasso, eval_formula
from .tools import read_text_argument, build_list
from .translate import parse_wts, format_wts, wts_to_wba, formula_to_wba, threshold_buchi
from .wltlError import WltlError, USAGE, NO


def _formula(args):
    return parse_formula(read_text_argument(args.formula), args.monoid)


def _automaton(text):
    return parse_automaton(read_text_argument(text))


def _weighted(text):
    aut = _automaton(text)
    if not isinstance(aut, WBA):
        raise WltlError(USAGE, 'Expected a weighted automaton (a file with a monoid line)')
    return aut


def _lasso(args):
    return parse_lasso(read_text_argument(args.lasso))


def _value(text, monoid):
    return parse_value(text, monoid) if text is not None else None


def _emit(args, pairs, text=None):
    """
    Print ``key=value`` pairs in kv format, else the given text (default: the values).
    """
    if args.format == 'kv':
        lines = ['{}={}'.format(key, value) for key, value in pairs]
    else:
        lines = text if text is not None else [str(value) for _, value in pairs]
    print('\n'.join(lines), file=args.out)


def _emit_verdict(args, verdict):
    if args.format == 'kv':
        print('\n'.join(verdict.to_lines()), file=args.out)
    else:
        lines = [verdict.answer]
        if verdict.witness is not None:
            lines.append('witness {}  left {}  right {}'.format(format_lasso(verdict.witness.lasso),
                                                                format_value(verdict.witness.left),
                                                                format_value(verdict.witness.right)))
        if verdict.checks:
            lines.append(verdict.to_frame().to_string(index=False))
        print('\n'.join(lines), file=args.out)
    return 0 if verdict else NO


def _yes_no(flag):
    return 'yes' if flag else 'no'


# commands

def cmd_parse(args):
    given = [name for name in ('formula', 'lasso', 'automaton', 'wts') if getattr(args, name)]
    if len(given) != 1:
        raise WltlError(USAGE, 'parse takes exactly one of --formula, --lasso, --automaton, --wts')
    if args.formula:
        _emit(args, [('formula', format_formula(_formula(args)))])
    elif args.lasso:
        _emit(args, [('lasso', format_lasso(_lasso(args)))])
    elif args.automaton:
        print(format_automaton(_automaton(args.automaton)), end='', file=args.out)
    else:
        print(format_wts(parse_wts(read_text_argument(args.wts))), end='', file=args.out)
    return 0


def cmd_classify(args):
    report = classify(_formula(args), args.monoid, _value(args.k, args.monoid), args.literal_or)
    pairs = [(name, '-' if value is None else _yes_no(value)) for name, value in report.as_dict().items()]
    _emit(args, pairs, ['{}: {}'.format(name, value) for name, value in pairs])
    return 0


def cmd_eval(args):
    value = eval_formula(_formula(args), _lasso(args), args.monoid, args.until_factor)
    _emit(args, [('value', format_value(value))])
    return 0


def cmd_behavior(args):
    aut = _weighted(args.automaton)
    behavior = wba_behavior_oracle if args.oracle else wba_behavior
    _emit(args, [('value', format_value(behavior(aut, _lasso(args))))])
    return 0


def cmd_translate(args):
    phi = _formula(args)
    aps = build_list(args.aps, 'aps') if args.aps else None
    if args.threshold is not None:
        v = parse_value(args.threshold, args.monoid)
        _emit(args, [('threshold', format_classical(threshold_formula(phi, v, args.monoid)))])
    else:
        print(format_automaton(formula_to_wba(phi, args.monoid, aps)), end='', file=args.out)
    return 0


def cmd_threshold(args):
    aut = _weighted(args.automaton)
    print(format_automaton(threshold_buchi(aut, parse_value(args.v, aut.monoid))), end='', file=args.out)
    return 0


def _extra(args, monoid):
    return [parse_value(v, monoid) for v in args.extra or ()]


def cmd_include(args):
    left, right = _weighted(args.left), _weighted(args.right)
    return _emit_verdict(args, quantitative_inclusion(left, right, extra_thresholds=_extra(args, left.monoid)))


def cmd_equiv(args):
    left, right = _weighted(args.left), _weighted(args.right)
    return _emit_verdict(args, quantitative_equivalence(left, right, extra_thresholds=_extra(args, left.monoid)))


def cmd_decide(args):
    verdict = decide_formula_automaton(_formula(args), _weighted(args.automaton), args.monoid,
                                       _value(args.k, args.monoid), _extra(args, args.monoid))
    return _emit_verdict(args, verdict)


def cmd_safety(args):
    if bool(args.formula) == bool(args.automaton):
        raise WltlError(USAGE, 'safety takes one of --formula or --automaton')
    if args.formula:
        if args.k is None:
            raise WltlError(USAGE, 'safety of a formula needs --k')
        safe, method = is_k_safe_formula(_formula(args), parse_value(args.k, args.monoid), args.monoid, args.method)
        _emit(args, [('safe', _yes_no(safe)), ('method', method)], ['{} ({})'.format(_yes_no(safe), method)])
        return 0 if safe else NO

    aut = _automaton(args.automaton)
    if isinstance(aut, WBA):
        if args.k is None:
            raise WltlError(USAGE, 'safety of a weighted automaton needs --k')
        witness = k_safety_counterexample(aut, parse_value(args.k, aut.monoid))
    else:
        witness = safety_counterexample(aut)
    pairs = [('safe', _yes_no(witness is None))]
    if witness is not None:
        pairs.append(('witness', format_lasso(witness)))
    _emit(args, pairs, [_yes_no(witness is None)] + (['witness {}'.format(format_lasso(witness))] if witness else []))
    return 0 if witness is None else NO


def cmd_wts2wba(args):
    print(format_automaton(wts_to_wba(parse_wts(read_text_argument(args.wts)))), end='', file=args.out)
    return 0


def cmd_axioms(args):
    axioms = list(args.axiom or DEFAULT_AXIOMS)
    if args.unconditional and 'unconditional_monotonicity' not in axioms:
        axioms.append('unconditional_monotonicity')
    report = check_axioms(args.monoid, args.samples, args.seed, axioms)
    if args.format == 'kv':
        lines = ['{}={}'.format(row.axiom, 'pass' if row.passed else 'fail:' + row.witness)
                 for row in report.itertuples()]
        print('\n'.join(lines), file=args.out)
    else:
        print(report.to_string(index=False), file=args.out)
    return 0 if report['passed'].all() else NO


# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--monoid', help='k1, k2, k3 or pair (default: profile setting)')
    common.add_argument('--seed', type=int, help='seed of the axioms suite (other commands are deterministic)')
    common.add_argument('--samples', type=int, help='samples per property of the axioms suite')
    common.add_argument('--cap', type=int, help='largest Büchi automaton to complement')
    common.add_argument('--format', choices=OUTPUT_FORMATS, help='text or key=value lines')
    common.add_argument('--log-level', help='DEBUG, INFO, WARNING, ... (logs go to wltl.<time>.log)')
    common.add_argument('--config', help='JSON settings file')

    parser = argparse.ArgumentParser(prog='wltl', description='weighted LTL and weighted Büchi automata')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    def command(name, func, help_text):
        sub = commands.add_parser(name, help=help_text, parents=[common])
        sub.set_defaults(func=func)
        return sub

    sub = command('parse', cmd_parse, 'parse and print a formula, lasso, automaton or transition system')
    for name in ('formula', 'lasso', 'automaton', 'wts'):
        sub.add_argument('--' + name)

    sub = command('classify', cmd_classify, 'fragment membership of a formula')
    sub.add_argument('--formula', required=True)
    sub.add_argument('--k', help='index of the k-fragments')
    sub.add_argument('--literal-or', action='store_true', help='also admit λUξ ∨ Gξ disjunctions')

    sub = command('eval', cmd_eval, 'value of a formula on a lasso')
    sub.add_argument('--formula', required=True)
    sub.add_argument('--lasso', required=True)
    sub.add_argument('--until-factor', type=int, default=2)

    sub = command('behavior', cmd_behavior, 'behavior of a weighted automaton on a lasso')
    sub.add_argument('--automaton', required=True)
    sub.add_argument('--lasso', required=True)
    sub.add_argument('--oracle', action='store_true', help='use the run product analysis')

    sub = command('translate', cmd_translate, 'weighted automaton (or threshold formula) of a formula')
    sub.add_argument('--formula', required=True)
    sub.add_argument('--aps', help='additional atomic propositions')
    sub.add_argument('--threshold', help='print the threshold formula at this value instead')

    sub = command('threshold', cmd_threshold, 'threshold Büchi automaton of a weighted automaton')
    sub.add_argument('--automaton', required=True)
    sub.add_argument('--v', required=True)

    for name, func, help_text in (('include', cmd_include, 'quantitative inclusion left ⊑ right'),
                                  ('equiv', cmd_equiv, 'quantitative equivalence')):
        sub = command(name, func, help_text)
        sub.add_argument('--left', required=True)
        sub.add_argument('--right', required=True)
        sub.add_argument('--extra', action='append', help='additional threshold value')

    sub = command('decide', cmd_decide, 'equivalence of a k-fragment formula and a weighted automaton')
    sub.add_argument('--formula', required=True)
    sub.add_argument('--automaton', required=True)
    sub.add_argument('--k', required=True)
    sub.add_argument('--extra', action='append', help='additional threshold value')

    sub = command('safety', cmd_safety, 'safety of a Büchi automaton, k-safety of a weighted automaton or formula')
    sub.add_argument('--formula')
    sub.add_argument('--automaton')
    sub.add_argument('--k')
    sub.add_argument('--method', choices=('fragment', 'closure'))

    sub = command('wts2wba', cmd_wts2wba, 'weighted automaton of a weighted transition system')
    sub.add_argument('--wts', required=True)

    sub = command('axioms', cmd_axioms, 'randomized check of the monoid laws')
    sub.add_argument('--axiom', action='append', choices=sorted(AXIOMS))
    sub.add_argument('--unconditional', action='store_true', help='include unconditional monotonicity')
    return parser


def _configure(args):
    profile = get_profile()
    load_config(args.config)
    if args.log_level:
        level = logging.getLevelName(args.log_level.upper())
        if not isinstance(level, int):
            raise WltlError(USAGE, 'Unknown log level {}'.format(args.log_level))
        set_log_level(level)
    try:
        for name, setter in (('monoid', set_monoid), ('seed', set_seed), ('samples', set_samples),
                             ('cap', set_complement_cap), ('format', set_output_format)):
            if getattr(args, name) is not None:
                setter(getattr(args, name))
    except ValueError as e:
        raise WltlError(USAGE, str(e))
    args.monoid = profile.monoid
    args.seed = profile.seed
    args.samples = profile.samples
    args.format = profile.output_format


def main(argv=None, out=None, err=None):
    """
    Run the command line and return the exit code.
    """
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    args.out = out
    try:
        _configure(args)
        return args.func(args)
    except WltlError as e:
        get_profile().logger.error(str(e))
        print('wltl: {}'.format(e), file=err)
        return e.code
