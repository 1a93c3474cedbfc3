# coding: utf-8
"""
Decision procedures: quantitative inclusion and equivalence of weighted Büchi automata, equivalence
of a formula and an automaton, and k-safety of automata and formulas.

Every procedure reduces to Büchi inclusions between threshold automata, one per value of the weight
images. A negative answer always carries a lasso on which both sides are evaluated independently.
"""

__all__ = ['Witness', 'Verdict', 'quantitative_inclusion', 'quantitative_equivalence',
           'decide_formula_automaton', 'k_safety_counterexample', 'is_k_safe_wba', 'is_k_safe_formula']

from collections import namedtuple
from dataclasses import dataclass, field
from typing import List, Optional

import pandas as pd

from .automata import (buchi_complement, buchi_inclusion, extend_aps, safety_counterexample,
                       wba_behavior_oracle)
from .logic import classify, desugar_weak_until, is_translatable, negate_classical, threshold_formula
from .monoid import monoid_make, format_value
from .Profile import get_profile
from .semantics import eval_formula, format_lasso
from .translate import formula_to_wba, k3_to_k2, ltl_to_buchi, threshold_buchi
from .wltlError import WltlError, USAGE

Witness = namedtuple('Witness', 'lasso left right')


@dataclass
class Verdict:
    """
    Outcome of a decision.

    Attributes
    ----------
    answer : string
        'yes' or 'no'
    witness : Witness, optional
        On 'no': a lasso with the values of the left and the right side
    thresholds_checked : list
        Threshold values in the order they were checked
    checks : list of tuple
        (direction, threshold, included) per Büchi inclusion check
    """
    answer: str
    witness: Optional[Witness] = None
    thresholds_checked: List = field(default_factory=list)
    checks: List = field(default_factory=list)

    def __bool__(self):
        return self.answer == 'yes'

    def to_frame(self):
        frame = pd.DataFrame(self.checks, columns=['direction', 'threshold', 'included'])
        frame['threshold'] = frame['threshold'].map(format_value)
        return frame

    def to_lines(self):
        lines = ['verdict={}'.format(self.answer)]
        if self.witness is not None:
            lines += ['witness={}'.format(format_lasso(self.witness.lasso)),
                      'left={}'.format(format_value(self.witness.left)),
                      'right={}'.format(format_value(self.witness.right))]
        lines.append('thresholds={}'.format(','.join(format_value(v) for v in self.thresholds_checked)))
        for direction, v, included in self.checks:
            lines.append('check.{}.{}={}'.format(direction, format_value(v), 'yes' if included else 'no'))
        return lines


class _Side(object):
    """
    One side of a decision: the automaton the thresholds are taken of, and an independent evaluator
    for witnesses.
    """

    def __init__(self, aut, value, origin=None):
        self.origin = origin if origin is not None else aut.origin
        if aut.monoid == 'k3':
            get_profile().logger.info('Translating a wBa over k3 with {} states to k2'.format(len(aut.states)))
            aut = k3_to_k2(aut)
        self.aut = aut
        self.value = value

    def thresholds(self):
        monoid = self.aut.valuation_monoid
        return sorted(self.aut.image() - {monoid.zero}, reverse=True)

    def positive(self, v):
        return threshold_buchi(self.aut, v)

    def complement(self, v):
        if self.origin is not None:
            formula, monoid = self.origin
            return ltl_to_buchi(negate_classical(threshold_formula(formula, v, monoid)), self.aut.aps)
        return buchi_complement(self.positive(v))


def _automaton_side(aut, aps):
    original = extend_aps(aut, aps)
    return _Side(original, lambda w: wba_behavior_oracle(original, w))


def _check_monoid(monoid, *automata):
    monoid = monoid_make(monoid if monoid is not None else automata[0].monoid)
    if monoid.is_pair:
        raise WltlError(USAGE, 'Decisions need k1, k2 or k3')
    for aut in automata:
        if aut.monoid != monoid.id:
            raise WltlError(USAGE, 'Expected a wBa over {}, found {}'.format(monoid.id, aut.monoid))
    return monoid


def _run(loops):
    """
    Run the threshold loops [(direction, smaller, larger, values)], stopping at the first failed
    inclusion.
    """
    logger = get_profile().logger
    verdict = Verdict('yes')
    for direction, smaller, larger, values in loops:
        for v in values:
            inclusion = buchi_inclusion(smaller.positive(v), larger.positive(v), larger.complement(v))
            verdict.thresholds_checked.append(v)
            verdict.checks.append((direction, v, inclusion.included))
            logger.info('Threshold {} ({}): {}'.format(format_value(v), direction,
                                                       'included' if inclusion.included else 'not included'))
            if not inclusion.included:
                w = inclusion.counterexample
                left, right = (smaller, larger) if direction == 'left<=right' else (larger, smaller)
                verdict.answer = 'no'
                verdict.witness = Witness(w, left.value(w), right.value(w))
                return verdict
    return verdict


def _values(side, extra):
    monoid = side.aut.valuation_monoid
    values = set(side.thresholds()) | set(v for v in extra if v != monoid.zero)
    return sorted(values, reverse=True)


def quantitative_inclusion(a, b, monoid=None, extra_thresholds=()):
    """
    Decide ‖a‖ ⊑ ‖b‖: for every value v of the weights of a, the threshold language of a at v is
    contained in the one of b.

    Parameters
    ----------
    a, b : WBA
    monoid : Monoid or string, optional
        Default: the monoid of a
    extra_thresholds : iterable of values
        Further thresholds to check

    Returns
    -------
    Verdict

    Raises
    ------
    WltlError
        On a monoid mismatch, or with code 3 when a complement exceeds the cap
    """
    _check_monoid(monoid, a, b)
    aps = set(a.aps) | set(b.aps)
    left, right = _automaton_side(a, aps), _automaton_side(b, aps)
    return _run([('left<=right', left, right, _values(left, extra_thresholds))])


def _equivalence(left, right, extra):
    return _run([('left<=right', left, right, _values(left, extra)),
                 ('right<=left', right, left, _values(right, extra))])


def quantitative_equivalence(a, b, monoid=None, extra_thresholds=()):
    """
    Decide ‖a‖ = ‖b‖ by both inclusions, with thresholds from the weights of a and of b.
    """
    _check_monoid(monoid, a, b)
    aps = set(a.aps) | set(b.aps)
    return _equivalence(_automaton_side(a, aps), _automaton_side(b, aps), extra_thresholds)


def _require_k(k, monoid):
    if k is None:
        raise WltlError(USAGE, 'The fragment index k is required')
    if monoid.is_boundary(k):
        raise WltlError(USAGE, 'k must differ from {} and {}'.format(format_value(monoid.zero), format_value(monoid.one)))


def decide_formula_automaton(phi, aut, monoid=None, k=None, extra_thresholds=()):
    """
    Decide ‖phi‖ = ‖aut‖ for a formula of the k-fragments.

    The formula is translated with its weak untils expanded, then both sides go through the two
    threshold loops; over k3 both sides are translated to k2 first.

    Parameters
    ----------
    phi : Formula
        k-∨-t-RULTL over k2 and k3, k-t-RULTL over k1
    aut : WBA
    monoid : Monoid or string, optional
        Default: the monoid of aut
    k : monoid value
        Fragment index, neither zero nor one

    Raises
    ------
    WltlError
        If phi is outside the fragment for k, or with code 3 when a complement exceeds the cap
    """
    monoid = _check_monoid(monoid, aut)
    _require_k(k, monoid)
    report = classify(phi, monoid, k)
    member = report.k_t_rultl if monoid.id == 'k1' else (report.k_t_rultl or report.k_or_t_rultl)
    if not member:
        raise WltlError(USAGE, 'Formula {} is not in the {} fragment for k = {}'.format(
            phi, 'k-t-RULTL' if monoid.id == 'k1' else 'k-∨-t-RULTL', format_value(k)))
    expanded = desugar_weak_until(phi)
    aps = set(aut.aps)
    formula_aut = formula_to_wba(expanded, monoid, aps)
    aps |= set(formula_aut.aps)
    left = _Side(extend_aps(formula_aut, aps), lambda w: eval_formula(phi, w, monoid))
    right = _automaton_side(aut, aps)
    return _equivalence(left, right, extra_thresholds)


def k_safety_counterexample(aut, k, monoid=None):
    """
    A lasso in the safety closure of the threshold language of aut at k but outside it, or None
    when aut is k-safe.
    """
    monoid = _check_monoid(monoid, aut)
    _require_k(k, monoid)
    side = _Side(aut, None)
    return safety_counterexample(side.positive(k), side.complement(k))


def is_k_safe_wba(aut, k, monoid=None):
    return k_safety_counterexample(aut, k, monoid) is None


def is_k_safe_formula(phi, k, monoid, method=None):
    """
    Decide whether ‖phi‖ is k-safe.

    Members of the k-fragments are k-safe; other translatable formulas are decided on the safety
    closure of the threshold automaton of their translation.

    Parameters
    ----------
    phi : Formula
    k : monoid value
    monoid : Monoid or string
    method : string, optional
        'fragment' or 'closure' to force one method

    Returns
    -------
    (bool, string)
        The answer and the method used

    Raises
    ------
    WltlError
        If no method applies
    """
    monoid = monoid_make(monoid)
    _require_k(k, monoid)
    if method not in (None, 'fragment', 'closure'):
        raise WltlError(USAGE, 'Unknown safety method {}'.format(method))
    if method != 'closure':
        report = classify(phi, monoid, k)
        if report.k_t_rultl or (report.k_or_t_rultl and monoid.id != 'k1'):
            return True, 'fragment'
        if method == 'fragment':
            raise WltlError(USAGE, 'Formula {} is not in a k-fragment for k = {}'.format(phi, format_value(k)))
    if not is_translatable(phi, monoid):
        raise WltlError(USAGE, 'Formula {} is neither in a k-fragment nor translatable'.format(phi))
    return is_k_safe_wba(formula_to_wba(phi, monoid), k, monoid), 'closure'
