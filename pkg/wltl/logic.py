# coding: utf-8
"""
Weighted LTL formulas and their classical counterparts.

Weighted formulas are in negation normal form by construction: negation only occurs on atomic
propositions. Classical formulas are closed under negation and are only used to build Büchi
automata of threshold languages.
"""

__all__ = ['Formula', 'Const', 'Atom', 'NegAtom', 'Or', 'And', 'Next', 'Until', 'WeakUntil', 'Always',
           'ClassicalFormula', 'Lit', 'Prop', 'NotProp', 'LOr', 'LAnd', 'LNext', 'LUntil', 'LWeakUntil',
           'TRUE', 'FALSE', 'c_or', 'c_and', 'c_next', 'c_until', 'c_weak_until', 'c_always', 'c_eventually',
           'parse_formula', 'format_formula', 'format_classical', 'FragmentReport', 'classify',
           'is_bltl', 'is_sbltl', 'step_disjuncts', 'is_r_step', 'is_k_step', 'to_classical',
           'boolean_abstraction', 'candidate_values', 'constants', 'atoms', 'classical_atoms',
           'is_translatable', 'threshold_formula', 'negate_classical', 'desugar_weak_until', 'random_formula']

from dataclasses import dataclass, asdict
from functools import reduce
from typing import Optional

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .monoid import monoid_make, format_value, fin, ExtRat
from .Profile import get_profile
from .wltlError import WltlError, USAGE


class Formula:
    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True, repr=False)
class Const(Formula):
    value: object


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, repr=False)
class NegAtom(Formula):
    name: str


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Next(Formula):
    child: Formula


@dataclass(frozen=True, repr=False)
class Until(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class WeakUntil(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Always(Formula):
    child: Formula


for _cls in (Const, Atom, NegAtom, Or, And, Next, Until, WeakUntil, Always):
    _cls.__repr__ = lambda self: '{}<{}>'.format(type(self).__name__, format_formula(self))


class ClassicalFormula:
    def __str__(self):
        return format_classical(self)

    def __repr__(self):
        return 'Classical<{}>'.format(format_classical(self))


@dataclass(frozen=True, repr=False)
class Lit(ClassicalFormula):
    value: bool


@dataclass(frozen=True, repr=False)
class Prop(ClassicalFormula):
    name: str


@dataclass(frozen=True, repr=False)
class NotProp(ClassicalFormula):
    name: str


@dataclass(frozen=True, repr=False)
class LOr(ClassicalFormula):
    left: ClassicalFormula
    right: ClassicalFormula


@dataclass(frozen=True, repr=False)
class LAnd(ClassicalFormula):
    left: ClassicalFormula
    right: ClassicalFormula


@dataclass(frozen=True, repr=False)
class LNext(ClassicalFormula):
    child: ClassicalFormula


@dataclass(frozen=True, repr=False)
class LUntil(ClassicalFormula):
    left: ClassicalFormula
    right: ClassicalFormula


@dataclass(frozen=True, repr=False)
class LWeakUntil(ClassicalFormula):
    left: ClassicalFormula
    right: ClassicalFormula


TRUE = Lit(True)
FALSE = Lit(False)


def c_or(a, b):
    if a == TRUE or b == TRUE:
        return TRUE
    if a == FALSE:
        return b
    if b == FALSE or a == b:
        return a
    return LOr(a, b)


def c_and(a, b):
    if a == FALSE or b == FALSE:
        return FALSE
    if a == TRUE:
        return b
    if b == TRUE or a == b:
        return a
    return LAnd(a, b)


def c_next(a):
    return a if isinstance(a, Lit) else LNext(a)


def c_until(a, b):
    if isinstance(b, Lit) or a == FALSE:
        return b
    return LUntil(a, b)


def c_weak_until(a, b):
    if a == TRUE or b == TRUE:
        return TRUE
    if a == FALSE:
        return b
    return LWeakUntil(a, b)


def c_always(a):
    return c_weak_until(a, FALSE)


def c_eventually(a):
    return c_until(TRUE, a)


GRAMMAR = r'''
?start: disj

?disj: conj
     | disj "|" conj          -> or_

?conj: binary
     | conj "&" binary        -> and_

?binary: unary
       | unary "U" binary     -> until
       | unary "W" binary     -> weak_until

?unary: primary
      | "X" unary             -> next_
      | "G" unary             -> always
      | "F" unary             -> eventually
      | "!" unary             -> not_

?primary: "(" disj ")"
        | "true"              -> true_
        | "false"             -> false_
        | "inf"               -> pos_inf
        | "-inf"              -> neg_inf
        | NUMBER              -> number
        | PAIR                -> pair
        | NAME                -> atom

NAME: /[a-z_][a-z0-9_]*/
NUMBER: /-?\d+(\.\d+)?(\/\d+)?/
PAIR: /\(\s*(\d+|inf)\s*,\s*(\d+|inf)\s*\)/

%import common.WS
%ignore WS
'''

_PARSER = Lark(GRAMMAR, parser='lalr')


@v_args(inline=True)
class _FormulaBuilder(Transformer):

    def __init__(self, monoid):
        super().__init__()
        self.monoid = monoid

    def or_(self, a, b):
        return Or(a, b)

    def and_(self, a, b):
        return And(a, b)

    def until(self, a, b):
        return Until(a, b)

    def weak_until(self, a, b):
        return WeakUntil(a, b)

    def next_(self, a):
        return Next(a)

    def always(self, a):
        return Always(a)

    def eventually(self, a):
        return Until(Const(self.monoid.one), a)

    def not_(self, a):
        if isinstance(a, Atom):
            return NegAtom(a.name)
        if isinstance(a, NegAtom):
            return Atom(a.name)
        raise WltlError(USAGE, 'Negation is only allowed on atomic propositions, found !({})'.format(a))

    def true_(self):
        return Const(self.monoid.one)

    def false_(self):
        return Const(self.monoid.zero)

    def _scalar(self, value, text):
        if self.monoid.is_pair:
            raise WltlError(USAGE, 'Constant {} is outside the domain of monoid {}'.format(text, self.monoid))
        return Const(value)

    def pos_inf(self):
        return self._scalar(self.monoid.one, 'inf')

    def neg_inf(self):
        return self._scalar(self.monoid.zero, '-inf')

    def number(self, token):
        text = str(token)
        if text == '0':
            return Const(self.monoid.zero)
        return self._scalar(self.monoid.parse_value(text), text)

    def pair(self, token):
        if not self.monoid.is_pair:
            raise WltlError(USAGE, 'Constant {} is outside the domain of monoid {}'.format(token, self.monoid))
        return Const(self.monoid.parse_value(str(token)))

    def atom(self, token):
        return Atom(str(token))


def parse_formula(text, monoid):
    """
    Parse a weighted LTL formula.

    Parameters
    ----------
    text : string
        Formula over the operators ``|``, ``&``, ``U``, ``W``, ``X``, ``G``, ``F`` and ``!`` (on atoms only).
        ``true`` is the monoid one, ``0`` and ``false`` the monoid zero.
    monoid : Monoid or string

    Returns
    -------
    Formula

    Raises
    ------
    WltlError
        On syntax errors (with line and column) and constants outside the monoid's domain
    """
    monoid = monoid_make(monoid)
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as e:
        raise WltlError(USAGE, 'Syntax error at line {}, column {}: {}'.format(
            e.line, e.column, e.get_context(text).strip()))
    try:
        formula = _FormulaBuilder(monoid).transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, WltlError):
            raise e.orig_exc
        raise
    get_profile().logger.debug('Parsed formula {}'.format(formula))
    return formula


def _format_const(value):
    if isinstance(value, ExtRat):
        if value == fin(0):
            return '0/1'
        if value.tag.name == 'NEG_INF':
            return '0'
        if value.tag.name == 'POS_INF':
            return 'true'
    elif value.first == 0 and value.second == 0:
        return '0'
    elif value.first is None and value.second is None:
        return 'true'
    return format_value(value)


_BINARY = {Or: '|', And: '&', Until: 'U', WeakUntil: 'W'}
_UNARY = {Next: 'X', Always: 'G'}


def format_formula(phi):
    """
    Print a formula in the input syntax. Every compound operand is parenthesized.
    """
    def operand(sub):
        text = format_formula(sub)
        return '({})'.format(text) if type(sub) in _BINARY else text

    if isinstance(phi, Const):
        return _format_const(phi.value)
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, NegAtom):
        return '!' + phi.name
    if type(phi) in _UNARY:
        return '{} {}'.format(_UNARY[type(phi)], operand(phi.child))
    return '{} {} {}'.format(operand(phi.left), _BINARY[type(phi)], operand(phi.right))


_C_BINARY = {LOr: '|', LAnd: '&', LUntil: 'U', LWeakUntil: 'W'}


def format_classical(phi):
    def operand(sub):
        text = format_classical(sub)
        return '({})'.format(text) if type(sub) in _C_BINARY and not _is_sugar(sub) else text

    if isinstance(phi, Lit):
        return 'true' if phi.value else 'false'
    if isinstance(phi, Prop):
        return phi.name
    if isinstance(phi, NotProp):
        return '!' + phi.name
    if isinstance(phi, LNext):
        return 'X ' + operand(phi.child)
    if isinstance(phi, LWeakUntil) and phi.right == FALSE:
        return 'G ' + operand(phi.left)
    if isinstance(phi, LUntil) and phi.left == TRUE:
        return 'F ' + operand(phi.right)
    return '{} {} {}'.format(operand(phi.left), _C_BINARY[type(phi)], operand(phi.right))


def _is_sugar(phi):
    return (isinstance(phi, LWeakUntil) and phi.right == FALSE) or (isinstance(phi, LUntil) and phi.left == TRUE)


def desugar_weak_until(phi):
    """
    Replace every weak until by its definition, φ W ψ = G φ | (φ U ψ).
    """
    if isinstance(phi, WeakUntil):
        left, right = desugar_weak_until(phi.left), desugar_weak_until(phi.right)
        return Or(Always(left), Until(left, right))
    if isinstance(phi, (Or, And, Until)):
        return type(phi)(desugar_weak_until(phi.left), desugar_weak_until(phi.right))
    if isinstance(phi, (Next, Always)):
        return type(phi)(desugar_weak_until(phi.child))
    return phi


def constants(phi):
    if isinstance(phi, Const):
        return {phi.value}
    if isinstance(phi, (Atom, NegAtom)):
        return set()
    if isinstance(phi, (Next, Always)):
        return constants(phi.child)
    return constants(phi.left) | constants(phi.right)


def atoms(phi):
    if isinstance(phi, (Atom, NegAtom)):
        return {phi.name}
    if isinstance(phi, Const):
        return set()
    if isinstance(phi, (Next, Always)):
        return atoms(phi.child)
    return atoms(phi.left) | atoms(phi.right)


def classical_atoms(phi):
    if isinstance(phi, (Prop, NotProp)):
        return {phi.name}
    if isinstance(phi, Lit):
        return set()
    if isinstance(phi, LNext):
        return classical_atoms(phi.child)
    return classical_atoms(phi.left) | classical_atoms(phi.right)


# fragments

def is_bltl(phi, monoid):
    if isinstance(phi, Const):
        return monoid.is_boundary(phi.value)
    if isinstance(phi, (Atom, NegAtom)):
        return True
    if isinstance(phi, (Next, Always)):
        return is_bltl(phi.child, monoid)
    return is_bltl(phi.left, monoid) and is_bltl(phi.right, monoid)


def is_sbltl(phi, monoid):
    if isinstance(phi, Const):
        return phi.value == monoid.one
    if isinstance(phi, (Atom, NegAtom)):
        return True
    if isinstance(phi, Until):
        return False
    if isinstance(phi, (Next, Always)):
        return is_sbltl(phi.child, monoid)
    return is_sbltl(phi.left, monoid) and is_sbltl(phi.right, monoid)


def _flatten(phi, kind):
    if isinstance(phi, kind):
        return _flatten(phi.left, kind) + _flatten(phi.right, kind)
    return [phi]


def _split_weighted_conjunction(phi, monoid, boolean_test):
    """
    Returns (k, φ) when phi is a conjunction of exactly one constant outside {zero, one} and of
    boolean formulas, else None. A bare constant k reads as k ∧ true.
    """
    conjuncts = _flatten(phi, And)
    weights = [c for c in conjuncts if isinstance(c, Const) and not monoid.is_boundary(c.value)]
    if len(weights) != 1:
        return None
    rest = list(conjuncts)
    rest.remove(weights[0])
    if not all(boolean_test(c, monoid) for c in rest):
        return None
    body = reduce(And, rest) if rest else Const(monoid.one)
    return weights[0].value, body


def step_disjuncts(phi, monoid, boolean_test=is_bltl):
    """
    Decompose a step formula ⋁(k_i ∧ φ_i) into its (k_i, φ_i) pairs, or return None.
    """
    pairs = []
    for disjunct in _flatten(phi, Or):
        pair = _split_weighted_conjunction(disjunct, monoid, boolean_test)
        if pair is None:
            return None
        pairs.append(pair)
    return pairs


def is_r_step(phi, monoid):
    return step_disjuncts(phi, monoid) is not None


def is_k_step(phi, monoid, k):
    pairs = step_disjuncts(phi, monoid, is_sbltl)
    return pairs is not None and all(weight >= k for weight, _ in pairs)


def _rule6_partner(phi, step):
    if step(phi):
        return True
    if isinstance(phi, Always):
        return step(phi.child)
    return False


def _is_totally_restricted(phi, monoid, or_rule):
    """
    Membership in the totally restricted fragment over bLTL and r-step formulas. ``or_rule`` is None
    for the unrestricted disjunction, else 'default' or 'literal' for the restricted ∨-variant.
    """
    step = lambda f: is_r_step(f, monoid)

    def partner(f):
        if isinstance(f, Until):
            return step(f.left) and step(f.right)
        return _rule6_partner(f, step)

    def member(f):
        if isinstance(f, Const) or is_bltl(f, monoid) or step(f):
            return True
        if isinstance(f, Next):
            return member(f.child)
        if isinstance(f, Or):
            if or_rule is None:
                return member(f.left) and member(f.right)
            return _or_pair(f.left, f.right, step, or_rule, Until) or _or_pair(f.right, f.left, step, or_rule, Until)
        if isinstance(f, And):
            return (is_bltl(f.left, monoid) and partner(f.right)) or (is_bltl(f.right, monoid) and partner(f.left))
        if isinstance(f, Until):
            return step(f.left) and step(f.right)
        if isinstance(f, Always):
            return step(f.child)
        return False

    return member(desugar_weak_until(phi))


def _or_pair(until, always, step, or_rule, until_type):
    """
    The pair λUξ ∨ □λ (and with the literal rule also λUξ ∨ □ξ), λ and ξ step formulas.
    """
    if not (isinstance(until, until_type) and isinstance(always, Always)):
        return False
    if not (step(until.left) and step(until.right)):
        return False
    if always.child == until.left:
        return True
    return or_rule == 'literal' and always.child == until.right


def _is_k_totally_restricted(phi, monoid, k, restricted_or):
    step = lambda f: is_k_step(f, monoid, k)

    def partner(f):
        if isinstance(f, WeakUntil):
            return step(f.left) and step(f.right)
        return _rule6_partner(f, step)

    def member(f):
        if isinstance(f, Const):
            return f.value >= k
        if is_sbltl(f, monoid) or step(f):
            return True
        if isinstance(f, Next):
            return member(f.child)
        if isinstance(f, Or):
            return not restricted_or and member(f.left) and member(f.right)
        if isinstance(f, And):
            return (is_sbltl(f.left, monoid) and partner(f.right)) or (is_sbltl(f.right, monoid) and partner(f.left))
        if isinstance(f, WeakUntil):
            return step(f.left) and step(f.right)
        if isinstance(f, Always):
            return step(f.child)
        return False

    return member(phi)


@dataclass(frozen=True)
class FragmentReport:
    bltl: bool
    sbltl: bool
    r_stltl: bool
    t_rultl: bool
    or_t_rultl: bool
    k: Optional[object] = None
    k_stltl: Optional[bool] = None
    k_t_rultl: Optional[bool] = None
    k_or_t_rultl: Optional[bool] = None
    literal_or_rule: bool = False

    NAMES = {'bltl': 'bLTL', 'sbltl': 'sbLTL', 'r_stltl': 'r-stLTL', 't_rultl': 't-RULTL',
             'or_t_rultl': 'or-t-RULTL', 'k_stltl': 'k-stLTL', 'k_t_rultl': 'k-t-RULTL',
             'k_or_t_rultl': 'k-or-t-RULTL'}

    def as_dict(self):
        return {self.NAMES[key]: value for key, value in asdict(self).items() if key in self.NAMES}

    def members(self):
        return [name for name, value in self.as_dict().items() if value]


def classify(phi, monoid, k=None, literal_or_rule=False):
    """
    Syntactic fragment membership of a formula.

    Parameters
    ----------
    phi : Formula
    monoid : Monoid or string
    k : monoid value, optional
        Threshold of the k-indexed fragments; those flags are None when k is not supplied
    literal_or_rule : bool
        Also admit the disjunction pair λUξ ∨ □ξ in the ∨-restricted fragment

    Raises
    ------
    WltlError
        If k is the monoid zero or one
    """
    monoid = monoid_make(monoid)
    or_rule = 'literal' if literal_or_rule else 'default'
    report = dict(
        bltl=is_bltl(phi, monoid),
        sbltl=is_sbltl(phi, monoid),
        r_stltl=is_r_step(phi, monoid),
        t_rultl=_is_totally_restricted(phi, monoid, None),
        or_t_rultl=_is_totally_restricted(phi, monoid, or_rule),
        literal_or_rule=literal_or_rule)
    if k is not None:
        if monoid.is_boundary(k):
            raise WltlError(USAGE, 'k must differ from the monoid zero and one, found {}'.format(format_value(k)))
        report.update(
            k=k,
            k_stltl=is_k_step(phi, monoid, k),
            k_t_rultl=_is_k_totally_restricted(phi, monoid, k, False),
            k_or_t_rultl=_is_k_totally_restricted(phi, monoid, k, True))
    return FragmentReport(**report)


def to_classical(phi, monoid):
    """
    The classical formula of a boolean (bLTL) formula.
    """
    if isinstance(phi, Const):
        if not monoid.is_boundary(phi.value):
            raise WltlError(USAGE, 'Formula {} is not boolean'.format(phi))
        return TRUE if phi.value == monoid.one else FALSE
    if isinstance(phi, Atom):
        return Prop(phi.name)
    if isinstance(phi, NegAtom):
        return NotProp(phi.name)
    if isinstance(phi, Or):
        return c_or(to_classical(phi.left, monoid), to_classical(phi.right, monoid))
    if isinstance(phi, And):
        return c_and(to_classical(phi.left, monoid), to_classical(phi.right, monoid))
    if isinstance(phi, Next):
        return c_next(to_classical(phi.child, monoid))
    if isinstance(phi, Until):
        return c_until(to_classical(phi.left, monoid), to_classical(phi.right, monoid))
    if isinstance(phi, WeakUntil):
        return c_weak_until(to_classical(phi.left, monoid), to_classical(phi.right, monoid))
    return c_always(to_classical(phi.child, monoid))


def _step_abstraction(phi, monoid, at_least=None):
    """
    ⋁ φ_i over the disjuncts of a step formula, restricted to k_i >= at_least when given.
    """
    pairs = step_disjuncts(phi, monoid)
    if pairs is None:
        raise WltlError(USAGE, 'Formula {} is not a step formula'.format(phi))
    return reduce(c_or, (to_classical(body, monoid) for weight, body in pairs
                         if at_least is None or weight >= at_least), FALSE)


def boolean_abstraction(phi, monoid):
    """
    Drop the weights of a step formula, or of a weak until, always or until over step formulas.

    Raises
    ------
    WltlError
        For any other shape
    """
    monoid = monoid_make(monoid)
    if isinstance(phi, WeakUntil):
        return c_weak_until(_step_abstraction(phi.left, monoid), _step_abstraction(phi.right, monoid))
    if isinstance(phi, Until):
        return c_until(_step_abstraction(phi.left, monoid), _step_abstraction(phi.right, monoid))
    if isinstance(phi, Always):
        return c_always(_step_abstraction(phi.child, monoid))
    return _step_abstraction(phi, monoid)


def candidate_values(phi, monoid):
    """
    Constants of phi together with the monoid one, without the zero, sorted descending.
    """
    monoid = monoid_make(monoid)
    values = (constants(phi) | {monoid.one}) - {monoid.zero}
    return sorted(values, reverse=True)


def is_translatable(phi, monoid):
    """
    True when every weighted subformula has a threshold rule: constants, boolean formulas and step
    formulas combined by disjunction, conjunction and next, and until or always over step formulas.
    Contains the totally restricted fragments and the weak until expansion of the k-indexed ones.
    """
    monoid = monoid_make(monoid)
    phi = desugar_weak_until(phi)

    def member(f):
        if isinstance(f, Const) or is_bltl(f, monoid) or is_r_step(f, monoid):
            return True
        if isinstance(f, Next):
            return member(f.child)
        if isinstance(f, (Or, And)):
            return member(f.left) and member(f.right)
        if isinstance(f, Until):
            return is_r_step(f.left, monoid) and is_r_step(f.right, monoid)
        if isinstance(f, Always):
            return is_r_step(f.child, monoid)
        return False

    return member(phi)


def threshold_formula(phi, v, monoid):
    """
    Classical formula satisfied by exactly the words on which phi evaluates to at least v.

    Parameters
    ----------
    phi : Formula
        Totally restricted formula (weak until is expanded first)
    v : monoid value
        Threshold, different from the monoid zero
    monoid : Monoid or string
        K1, K2 or K3

    Raises
    ------
    WltlError
        If phi is outside the totally restricted fragment, v is zero or the monoid is the pair monoid
    """
    monoid = monoid_make(monoid)
    if monoid.is_pair:
        raise WltlError(USAGE, 'Threshold formulas are only available for k1, k2 and k3')
    if v == monoid.zero:
        raise WltlError(USAGE, 'Threshold formulas need a threshold above the monoid zero')
    phi = desugar_weak_until(phi)
    if not is_translatable(phi, monoid):
        raise WltlError(USAGE, 'Formula {} is outside the translatable fragment'.format(phi))
    return _threshold(phi, v, monoid)


def _threshold(phi, v, monoid):
    if isinstance(phi, Const):
        return TRUE if phi.value >= v else FALSE
    if is_bltl(phi, monoid):
        return to_classical(phi, monoid)
    if is_r_step(phi, monoid):
        return _step_abstraction(phi, monoid, v)
    if isinstance(phi, Or):
        return c_or(_threshold(phi.left, v, monoid), _threshold(phi.right, v, monoid))
    if isinstance(phi, And):
        return c_and(_threshold(phi.left, v, monoid), _threshold(phi.right, v, monoid))
    if isinstance(phi, Next):
        return c_next(_threshold(phi.child, v, monoid))

    # step values are never one, so the valuations only see finite values and zero
    if isinstance(phi, Always):
        nonzero = _step_abstraction(phi.child, monoid)
        high = _step_abstraction(phi.child, monoid, v)
        if monoid.id == 'k1':
            tail = c_eventually(c_always(high))
        elif monoid.id == 'k2':
            tail = c_always(c_eventually(high))
        else:
            tail = c_eventually(high)
        return c_and(c_always(nonzero), tail)

    if isinstance(phi, Until):
        left_high = _step_abstraction(phi.left, monoid, v)
        right_high = _step_abstraction(phi.right, monoid, v)
        if monoid.id == 'k1':
            return c_until(left_high, right_high)
        left_nonzero = _step_abstraction(phi.left, monoid)
        right_nonzero = _step_abstraction(phi.right, monoid)
        return c_or(c_until(left_nonzero, right_high),
                    c_until(left_nonzero, c_and(left_high, c_next(c_until(left_nonzero, right_nonzero)))))

    raise WltlError(USAGE, 'No threshold rule for {}'.format(phi))


def negate_classical(phi):
    """
    Negation pushed to the atomic propositions.
    """
    if isinstance(phi, Lit):
        return Lit(not phi.value)
    if isinstance(phi, Prop):
        return NotProp(phi.name)
    if isinstance(phi, NotProp):
        return Prop(phi.name)
    if isinstance(phi, LOr):
        return c_and(negate_classical(phi.left), negate_classical(phi.right))
    if isinstance(phi, LAnd):
        return c_or(negate_classical(phi.left), negate_classical(phi.right))
    if isinstance(phi, LNext):
        return c_next(negate_classical(phi.child))
    left, right = negate_classical(phi.left), negate_classical(phi.right)
    if isinstance(phi, LUntil):
        return c_weak_until(right, c_and(left, right))
    return c_until(right, c_and(left, right))


# random k-fragment formulas

def _random_sbltl(rng, aps, depth):
    if depth <= 0 or rng.random() < 0.45:
        roll = rng.random()
        name = rng.choice(aps)
        return Atom(name) if roll < 0.6 else NegAtom(name)
    kind = rng.choice(['and', 'or', 'next', 'always', 'weak'])
    if kind == 'next':
        return Next(_random_sbltl(rng, aps, depth - 1))
    if kind == 'always':
        return Always(_random_sbltl(rng, aps, depth - 1))
    left, right = _random_sbltl(rng, aps, depth - 1), _random_sbltl(rng, aps, depth - 1)
    return {'and': And, 'or': Or, 'weak': WeakUntil}[kind](left, right)


def _random_step(rng, aps, weights):
    disjuncts = [And(Const(rng.choice(weights)), _random_sbltl(rng, aps, 1)) for _ in range(rng.randint(1, 2))]
    return reduce(Or, disjuncts)


def random_formula(rng, monoid, k, depth=4, aps=('a', 'b')):
    """
    Random member of the k-indexed totally restricted fragment: the ∨-restricted one over
    K2 and K3, the unrestricted one over K1.

    Parameters
    ----------
    rng : random.Random
    monoid : Monoid or string
    k : ExtRat
        Finite threshold
    depth : int
        Bound on the nesting of the fragment rules
    aps : sequence of string
    """
    monoid = monoid_make(monoid)
    weights = [k, fin(k.value + 1), fin(k.value + 2)]
    aps = list(aps)
    restricted_or = monoid.id != 'k1'

    def build(d):
        options = ['const', 'sbltl', 'step', 'always', 'weak']
        if d > 1:
            options += ['next', 'and', 'and']
            if not restricted_or:
                options.append('or')
        kind = rng.choice(options)
        if kind == 'const':
            return Const(rng.choice(weights + [monoid.one]))
        if kind == 'sbltl':
            return _random_sbltl(rng, aps, min(d, 2))
        if kind == 'step':
            return _random_step(rng, aps, weights)
        if kind == 'always':
            return Always(_random_step(rng, aps, weights))
        if kind == 'weak':
            return WeakUntil(_random_step(rng, aps, weights), _random_step(rng, aps, weights))
        if kind == 'next':
            return Next(build(d - 1))
        if kind == 'or':
            return Or(build(d - 1), build(d - 1))
        partner = rng.choice([_random_step(rng, aps, weights), Always(_random_step(rng, aps, weights)),
                              WeakUntil(_random_step(rng, aps, weights), _random_step(rng, aps, weights))])
        return And(_random_sbltl(rng, aps, 1), partner)

    return build(depth)
