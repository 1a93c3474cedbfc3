# coding: utf-8
"""
Exact evaluation of weighted and classical LTL on ultimately periodic words.
"""

__all__ = ['Lasso', 'suffix', 'unroll', 'eval_formula', 'eval_classical',
           'parse_lasso', 'format_lasso', 'random_lasso']

from dataclasses import dataclass
from typing import FrozenSet, Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from .logic import (Const, Atom, NegAtom, Or, And, Next, Until, WeakUntil, Always,
                    Lit, Prop, NotProp, LOr, LAnd, LNext, LUntil, LWeakUntil)
from .monoid import monoid_make, WeightSeq
from .wltlError import WltlError, USAGE


@dataclass(frozen=True)
class Lasso:
    """
    The infinite word prefix · cycle^ω over letters that are sets of atomic propositions.

    Positions 0 .. len(prefix) + len(cycle) - 1 stand for the suffix classes of the word:
    the successor of the last position is the first cycle position.
    """
    prefix: Tuple[FrozenSet[str], ...] = ()
    cycle: Tuple[FrozenSet[str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'prefix', tuple(frozenset(letter) for letter in self.prefix))
        object.__setattr__(self, 'cycle', tuple(frozenset(letter) for letter in self.cycle))
        if not self.cycle:
            raise WltlError(USAGE, 'A lasso needs a nonempty cycle')

    @property
    def size(self):
        return len(self.prefix) + len(self.cycle)

    def successor(self, i):
        return i + 1 if i + 1 < self.size else len(self.prefix)

    def letter(self, i):
        """
        Letter at any position i >= 0 of the infinite word.
        """
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def letters(self):
        return self.prefix + self.cycle

    def aps(self):
        return frozenset().union(*self.letters())

    def positions_from(self, i):
        """
        Positions visited from class position i, split into the transient part and the period.
        """
        plen = len(self.prefix)
        if i < plen:
            return list(range(i, plen)), list(range(plen, self.size))
        return [], list(range(i, self.size)) + list(range(plen, i))

    def __str__(self):
        return format_lasso(self)


def suffix(w, i):
    """
    The lasso of the suffix of w starting at position i.
    """
    plen = len(w.prefix)
    if i <= plen:
        return Lasso(w.prefix[i:], w.cycle)
    r = (i - plen) % len(w.cycle)
    return Lasso((), w.cycle[r:] + w.cycle[:r])


def unroll(w, n):
    return Lasso(w.prefix, w.cycle * n)


class _Evaluator(object):

    def __init__(self, w, monoid, until_factor=2):
        self.w = w
        self.monoid = monoid
        self.until_bound = len(w.prefix) + until_factor * len(w.cycle)
        self.memo = {}

    def values(self, phi):
        if phi not in self.memo:
            self.memo[phi] = self._compute(phi)
        return self.memo[phi]

    def _compute(self, phi):
        w, monoid = self.w, self.monoid
        positions = range(w.size)
        if isinstance(phi, Const):
            return [phi.value] * w.size
        if isinstance(phi, Atom):
            return [monoid.one if phi.name in w.letter(i) else monoid.zero for i in positions]
        if isinstance(phi, NegAtom):
            return [monoid.zero if phi.name in w.letter(i) else monoid.one for i in positions]
        if isinstance(phi, Or):
            return [monoid.plus(a, b) for a, b in zip(self.values(phi.left), self.values(phi.right))]
        if isinstance(phi, And):
            return [monoid.times(a, b) for a, b in zip(self.values(phi.left), self.values(phi.right))]
        if isinstance(phi, Next):
            child = self.values(phi.child)
            return [child[w.successor(i)] for i in positions]
        if isinstance(phi, Always):
            child = self.values(phi.child)
            result = []
            for i in positions:
                transient, period = w.positions_from(i)
                result.append(monoid.valomega(WeightSeq([child[j] for j in transient], [child[j] for j in period])))
            return result
        if isinstance(phi, Until):
            return [self._until(i, self.values(phi.left), self.values(phi.right)) for i in positions]
        if isinstance(phi, WeakUntil):
            return self.values(Or(Always(phi.left), Until(phi.left, phi.right)))
        raise TypeError('Unknown formula node {!r}'.format(phi))

    def _until(self, i, left, right):
        # prefix aggregates stabilize after one period, the right operand is periodic afterwards
        best, seen, j = self.monoid.zero, [], i
        for _ in range(self.until_bound):
            term = self.monoid.valomega(WeightSeq(seen + [right[j]], [self.monoid.one]))
            best = self.monoid.plus(best, term)
            seen.append(left[j])
            j = self.w.successor(j)
        return best


def eval_formula(phi, w, monoid, until_factor=2):
    """
    The value of a weighted LTL formula on a lasso.

    Parameters
    ----------
    phi : Formula
    w : Lasso
    monoid : Monoid or string
    until_factor : int
        Until terms are taken over |prefix| + until_factor * |cycle| positions; 2 is sufficient

    Returns
    -------
    monoid value
    """
    return _Evaluator(w, monoid_make(monoid), until_factor).values(phi)[0]


def eval_classical(phi, w):
    """
    Classical LTL satisfaction on a lasso, decided by fixpoints over the lasso positions.
    """
    return _classical_values(phi, w, {})[0]


def _classical_values(phi, w, memo):
    if phi in memo:
        return memo[phi]
    positions = range(w.size)
    if isinstance(phi, Lit):
        result = [phi.value] * w.size
    elif isinstance(phi, Prop):
        result = [phi.name in w.letter(i) for i in positions]
    elif isinstance(phi, NotProp):
        result = [phi.name not in w.letter(i) for i in positions]
    elif isinstance(phi, (LOr, LAnd)):
        left, right = _classical_values(phi.left, w, memo), _classical_values(phi.right, w, memo)
        combine = (lambda a, b: a or b) if isinstance(phi, LOr) else (lambda a, b: a and b)
        result = [combine(a, b) for a, b in zip(left, right)]
    elif isinstance(phi, LNext):
        child = _classical_values(phi.child, w, memo)
        result = [child[w.successor(i)] for i in positions]
    else:
        left, right = _classical_values(phi.left, w, memo), _classical_values(phi.right, w, memo)
        if isinstance(phi, LUntil):
            result = list(right)
            changed = True
            while changed:
                changed = False
                for i in positions:
                    if not result[i] and left[i] and result[w.successor(i)]:
                        result[i] = changed = True
        else:
            result = [a or b for a, b in zip(left, right)]
            changed = True
            while changed:
                changed = False
                for i in positions:
                    if result[i] and not right[i] and not result[w.successor(i)]:
                        result[i] = False
                        changed = True
    memo[phi] = result
    return result


LASSO_GRAMMAR = r'''
start: word "|" word
word: letter*
letter: "{" [NAME ("," NAME)*] "}"

NAME: /[a-z_][a-z0-9_]*/

%import common.WS
%ignore WS
'''

_LASSO_PARSER = Lark(LASSO_GRAMMAR, parser='lalr')


class _LassoBuilder(Transformer):

    def start(self, children):
        return children[0], children[1]

    def word(self, children):
        return list(children)

    def letter(self, children):
        return frozenset(str(name) for name in children if name is not None)


def parse_lasso(text):
    """
    Parse a lasso such as ``{a} {b} | {a,b} {}``: prefix letters, a bar, then cycle letters.

    Raises
    ------
    WltlError
        On syntax errors or an empty cycle
    """
    try:
        prefix, cycle = _LassoBuilder().transform(_LASSO_PARSER.parse(text))
    except UnexpectedInput as e:
        raise WltlError(USAGE, 'Lasso syntax error at column {}: {}'.format(e.column, e.get_context(text).strip()))
    return Lasso(prefix, cycle)


def _format_letter(letter):
    return '{' + ','.join(sorted(letter)) + '}'


def format_lasso(w):
    prefix = ' '.join(_format_letter(letter) for letter in w.prefix)
    cycle = ' '.join(_format_letter(letter) for letter in w.cycle)
    return '{} | {}'.format(prefix, cycle).strip()


def random_lasso(rng, aps, max_prefix=4, max_cycle=4):
    aps = sorted(aps)

    def letter():
        return frozenset(a for a in aps if rng.random() < 0.5)

    return Lasso([letter() for _ in range(rng.randint(0, max_prefix))],
                 [letter() for _ in range(rng.randint(1, max_cycle))])
