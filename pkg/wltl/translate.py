# coding: utf-8
"""
Constructions between formalisms: formulas to automata, K3 to K2 automata, threshold Büchi
automata of weighted automata, and weighted transition systems.
"""

__all__ = ['WTS', 'parse_wts', 'format_wts', 'wts_to_wba', 'wts_run_word',
           'ltl_to_buchi', 'formula_to_wba', 'k3_to_k2',
           'threshold_muller_k2', 'threshold_rabin_k1', 'threshold_buchi_k2', 'threshold_buchi_k1',
           'threshold_buchi']

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Tuple

from .automata import (BuchiAut, MullerAut, RabinAut, WBA, FormulaOrigin, alphabet, degeneralize, trim,
                       universal_buchi, is_normalized, normalize_wba, muller_to_buchi, rabin_to_buchi)
from .logic import (Lit, Prop, NotProp, LOr, LAnd, LNext, LUntil, FALSE,
                    atoms, classical_atoms, candidate_values, threshold_formula, is_translatable)
from .monoid import monoid_make, fin, WeightSeq
from .Profile import get_profile
from .semantics import Lasso
from .wltlError import WltlError, USAGE


# weighted transition systems

@dataclass(frozen=True)
class WTS:
    """
    Weighted transition system: labeled states and edges with strictly positive rational weights.
    """
    aps: Tuple[str, ...]
    states: Tuple[str, ...]
    initial: FrozenSet[str]
    edges: Tuple
    labels: Tuple

    def __post_init__(self):
        object.__setattr__(self, 'aps', tuple(sorted(set(self.aps))))
        object.__setattr__(self, 'states', tuple(dict.fromkeys(self.states)))
        object.__setattr__(self, 'initial', frozenset(self.initial))
        object.__setattr__(self, 'edges', tuple((s, d, Fraction(w)) for s, d, w in self.edges))
        labels = dict(self.labels)
        object.__setattr__(self, 'labels', tuple((q, frozenset(labels.get(q, ()))) for q in self.states))
        declared = set(self.states)
        for src, dst, weight in self.edges:
            if src not in declared or dst not in declared:
                raise WltlError(USAGE, 'Edge {} -> {} uses an undeclared state'.format(src, dst))
            if weight <= 0:
                raise WltlError(USAGE, 'Edge {} -> {} has weight {}, weights must be positive'.format(src, dst, weight))
        for q, label in self.labels:
            if not label <= set(self.aps):
                raise WltlError(USAGE, 'Label of {} uses undeclared propositions'.format(q))
        if not self.initial <= declared:
            raise WltlError(USAGE, 'Undeclared initial state')

    def label(self, q):
        return dict(self.labels)[q]

    def weight(self, src, dst):
        for s, d, w in self.edges:
            if s == src and d == dst:
                return w
        return None


_LABEL_RE = re.compile(r'^label\s+(\S+)\s+\{([^}]*)\}\s*$')
_EDGE_RE = re.compile(r'^edge\s+(\S+)\s+(\S+)\s+(\S+)\s*$')


def parse_wts(text):
    """
    Parse a weighted transition system file: a ``wts`` header, then ``aps``, ``states``,
    ``initial``, ``label <state> {…}`` and ``edge <src> <dst> <weight>`` lines.

    Raises
    ------
    WltlError
        On malformed lines or weights
    """
    lines = [raw.split('#', 1)[0].strip() for raw in text.splitlines()]
    lines = [(n, line) for n, line in enumerate(lines, start=1) if line]
    if not lines or lines[0][1] != 'wts':
        raise WltlError(USAGE, 'A transition system file starts with the line "wts"')
    fields = {'aps': [], 'states': [], 'initial': []}
    labels, edges = {}, []
    for number, line in lines[1:]:
        keyword = line.split()[0]
        if keyword in fields:
            fields[keyword] = line.split()[1:]
        elif keyword == 'label':
            match = _LABEL_RE.match(line)
            if not match:
                raise WltlError(USAGE, 'Line {}: malformed label "{}"'.format(number, line))
            labels[match.group(1)] = [a.strip() for a in match.group(2).split(',') if a.strip()]
        elif keyword == 'edge':
            match = _EDGE_RE.match(line)
            if not match:
                raise WltlError(USAGE, 'Line {}: malformed edge "{}"'.format(number, line))
            try:
                weight = Fraction(match.group(3))
            except (ValueError, ZeroDivisionError):
                raise WltlError(USAGE, 'Line {}: weight {} is not rational'.format(number, match.group(3)))
            edges.append((match.group(1), match.group(2), weight))
        else:
            raise WltlError(USAGE, 'Line {}: unknown keyword {}'.format(number, keyword))
    return WTS(fields['aps'], fields['states'], fields['initial'], edges, labels.items())


def format_wts(system):
    lines = ['wts',
             ' '.join(['aps'] + list(system.aps)),
             ' '.join(['states'] + list(system.states)),
             ' '.join(['initial'] + [q for q in system.states if q in system.initial])]
    lines += ['label {} {{{}}}'.format(q, ','.join(sorted(label))) for q, label in system.labels]
    lines += ['edge {} {} {}'.format(s, d, w) for s, d, w in system.edges]
    return '\n'.join(lines) + '\n'


def wts_to_wba(system):
    """
    Weighted Büchi automaton over K2 whose transition from q to q' reads the label of q and weighs
    the edge weight. Every state is final.
    """
    weights = [(s, system.label(s), d, fin(w)) for s, d, w in system.edges]
    return WBA('k2', system.aps, system.states, weights, system.initial, system.states)


def wts_run_word(system, run):
    """
    Word and weight sequence of a lasso-shaped run.

    Parameters
    ----------
    system : WTS
    run : tuple of (prefix states, cycle states)
        The run prefix · cycle^ω; it must start in an initial state and follow edges

    Returns
    -------
    (Lasso, WeightSeq)
    """
    prefix, cycle = list(run[0]), list(run[1])
    if not cycle:
        raise WltlError(USAGE, 'A run needs a nonempty cycle')
    states = prefix + cycle
    if states[0] not in system.initial:
        raise WltlError(USAGE, 'A run starts in an initial state')
    successors = [states[i + 1] for i in range(len(states) - 1)] + [cycle[0]]
    weights = []
    for q, nxt in zip(states, successors):
        weight = system.weight(q, nxt)
        if weight is None:
            raise WltlError(USAGE, 'No edge from {} to {}'.format(q, nxt))
        weights.append(fin(weight))
    word = Lasso([system.label(q) for q in prefix], [system.label(q) for q in cycle])
    return word, WeightSeq(weights[:len(prefix)], weights[len(prefix):])


# classical LTL to Büchi

class _Node(object):

    __slots__ = ('name', 'incoming', 'new', 'old', 'next')

    def __init__(self, name, incoming, new, old=None, nxt=None):
        self.name = name
        self.incoming = dict.fromkeys(incoming)
        self.new = dict.fromkeys(new)
        self.old = dict(old or {})
        self.next = dict(nxt or {})

    def split(self, name, new, nxt=()):
        node = _Node(name, self.incoming, self.new, self.old, self.next)
        for f in new:
            if f not in node.old:
                node.new[f] = None
        for f in nxt:
            node.next[f] = None
        return node


_INIT = 'init'


def _expand(phi):
    counter = iter(range(1, 1 << 30))
    done = []
    stack = [_Node(next(counter), [_INIT], [phi])]
    while stack:
        node = stack.pop()
        if not node.new:
            for other in done:
                if other.old.keys() == node.old.keys() and other.next.keys() == node.next.keys():
                    other.incoming.update(node.incoming)
                    break
            else:
                done.append(node)
                stack.append(_Node(next(counter), [node.name], node.next))
            continue

        eta = next(iter(node.new))
        del node.new[eta]
        if eta in node.old:
            stack.append(node)
            continue
        if eta == FALSE:
            continue
        if isinstance(eta, Prop) and NotProp(eta.name) in node.old:
            continue
        if isinstance(eta, NotProp) and Prop(eta.name) in node.old:
            continue
        node.old[eta] = None
        if isinstance(eta, (Lit, Prop, NotProp)):
            stack.append(node)
        elif isinstance(eta, LAnd):
            for f in (eta.left, eta.right):
                if f not in node.old:
                    node.new[f] = None
            stack.append(node)
        elif isinstance(eta, LNext):
            node.next[eta.child] = None
            stack.append(node)
        elif isinstance(eta, LOr):
            stack.append(node.split(next(counter), [eta.right]))
            stack.append(node.split(next(counter), [eta.left]))
        else:
            # until and weak until unfold alike, only until gets an acceptance set
            stack.append(node.split(next(counter), [eta.right]))
            stack.append(node.split(next(counter), [eta.left], [eta]))
    return done


def _untils(phi):
    if isinstance(phi, LUntil):
        yield phi
    for child in ('left', 'right', 'child'):
        if hasattr(phi, child):
            yield from _untils(getattr(phi, child))


def ltl_to_buchi(phi, aps=None):
    """
    Büchi automaton of a classical LTL formula by tableau expansion.

    Each tableau node becomes a state entered on the letters that agree with its literals; every
    until subformula contributes an acceptance set of the generalized automaton, which is then
    degeneralized and trimmed.

    Parameters
    ----------
    phi : ClassicalFormula
    aps : iterable of string, optional
        Propositions of the alphabet in addition to those of phi
    """
    aps = sorted(set(aps or ()) | classical_atoms(phi))
    nodes = _expand(phi)
    letters = alphabet(aps)
    transitions = []
    for node in nodes:
        positive = {f.name for f in node.old if isinstance(f, Prop)}
        negative = {f.name for f in node.old if isinstance(f, NotProp)}
        for letter in letters:
            if positive <= letter and not negative & letter:
                transitions += [(src, letter, node.name) for src in node.incoming]
    sets = []
    for until in dict.fromkeys(_untils(phi)):
        sets.append({n.name for n in nodes if until not in n.old or until.right in n.old})
    states = [_INIT] + [n.name for n in nodes]
    result = trim(degeneralize(aps, states, transitions, [_INIT], sets))
    get_profile().logger.debug('Tableau of {} has {} nodes, Büchi automaton {} states'.format(
        phi, len(nodes), len(result.states)))
    return result


def formula_to_wba(phi, monoid, aps=None):
    """
    Weighted Büchi automaton with the behavior of a weighted LTL formula.

    For every candidate value v the Büchi automaton of the threshold formula of v gets the constant
    weight v; the result is the disjoint union of these components, so the behavior on a word is the
    largest v whose threshold formula holds, which is the value of the formula.

    Parameters
    ----------
    phi : Formula
        Member of a totally restricted fragment (weak until is expanded)
    monoid : Monoid or string
        k1, k2 or k3
    aps : iterable of string, optional
        Alphabet propositions in addition to those of phi

    Raises
    ------
    WltlError
        If phi has no threshold rules or the monoid is the pair monoid
    """
    monoid = monoid_make(monoid)
    if monoid.is_pair:
        raise WltlError(USAGE, 'Formula translation needs k1, k2 or k3')
    if not is_translatable(phi, monoid):
        raise WltlError(USAGE, 'Formula {} is outside the translatable fragment'.format(phi))
    aps = sorted(set(aps or ()) | atoms(phi))
    states, weights, initial, final = [], [], [], []
    for index, v in enumerate(candidate_values(phi, monoid)):
        component = ltl_to_buchi(threshold_formula(phi, v, monoid), aps)
        tag = lambda q, index=index: (index, q)
        states += [tag(q) for q in component.states]
        weights += [(tag(s), l, tag(d), v) for s, l, d in component.transitions]
        initial += [tag(q) for q in component.initial]
        final += [tag(q) for q in component.final]
    result = WBA(monoid.id, aps, states, weights, initial, final, FormulaOrigin(phi, monoid.id))
    get_profile().logger.debug('Translated {} into a wBa with {} states'.format(phi, len(states)))
    return result


def k3_to_k2(aut):
    """
    Weighted Büchi automaton over K2 with the behavior of one over K3.

    Next to a copy of the automaton, a run may fork on a transition of finite weight c into the
    level c, where it keeps weight c as long as every further transition weighs at most c or one.

    Raises
    ------
    WltlError
        If the automaton is not over k3
    """
    if aut.monoid != 'k3':
        raise WltlError(USAGE, 'k3_to_k2 expects a wBa over k3, found {}'.format(aut.monoid))
    monoid = aut.valuation_monoid
    levels = sorted(v for v in aut.image() if v != monoid.one)
    weights = list(aut.weights)
    for src, letter, dst, value in aut.weights:
        if value != monoid.one:
            weights.append((src, letter, (dst, value), value))
        for c in levels:
            if value == monoid.one or value <= c:
                weights.append(((src, c), letter, (dst, c), c))
    states = list(aut.states) + [(q, c) for q in aut.states for c in levels]
    final = list(aut.final) + [(q, c) for q in aut.final for c in levels]
    return WBA('k2', aut.aps, states, weights, aut.initial, final)


# threshold automata

def _weight_class(value, v, monoid):
    if value == monoid.one:
        return 'inf'
    return 'high' if value >= v else 'low'


_LEVEL = {'low': 1, 'high': 3, 'inf': 4}


def _threshold_states(aut, v, rules):
    """
    Explore the product of a normalized wBa with the phase automaton given by ``rules``, a function
    of (phase, weight class) returning the target phases. States are (q, phase, flag) where the flag
    is 'B' when q is final.
    """
    monoid = aut.valuation_monoid
    by_source = {}
    for (src, letter), targets in aut.out.items():
        by_source.setdefault(src, []).append((letter, targets))
    (q0,) = aut.initial
    start = (q0, 0, 'C')
    seen = {start: None}
    queue = deque([start])
    transitions = []
    while queue:
        state = queue.popleft()
        q, phase, _ = state
        for letter, targets in by_source.get(q, ()):
            for dst, value in targets:
                flag = 'B' if dst in aut.final else 'C'
                for target_phase in rules(phase, _weight_class(value, v, monoid)):
                    target = (dst, target_phase, flag)
                    transitions.append((state, letter, target))
                    if target not in seen:
                        seen[target] = None
                        queue.append(target)
    return list(seen), transitions, start


def _k2_rules(phase, weight_class):
    targets = []
    if phase in (0, 1, 3, 4):
        targets.append(_LEVEL[weight_class])
        if phase == 0 and weight_class == 'inf':
            targets.append(2)
        if phase == 3:
            targets.append(5)
    elif phase == 2 and weight_class == 'inf':
        targets.append(2)
    elif phase == 5:
        targets.append(5)
        if weight_class == 'inf':
            targets.append(6)
    elif phase == 6 and weight_class == 'inf':
        targets.append(6)
    return targets


def _k1_rules(phase, weight_class):
    targets = []
    if phase in (0, 1, 3, 4):
        targets.append(_LEVEL[weight_class])
        if phase == 0 and weight_class == 'inf':
            targets.append(2)
        if phase == 0 and weight_class != 'low':
            targets.append(5)
    elif phase == 2 and weight_class == 'inf':
        targets.append(2)
    elif phase == 5 and weight_class != 'low':
        targets.append(5)
    return targets


def _require_normalized(aut, monoid_id):
    if aut.monoid != monoid_id:
        raise WltlError(USAGE, 'Expected a wBa over {}, found {}'.format(monoid_id, aut.monoid))
    if not is_normalized(aut):
        raise WltlError(USAGE, 'Threshold automata need a normalized wBa (a single initial state)')


def threshold_muller_k2(aut, v):
    """
    Muller automaton of the words with limsup behavior at least the finite value v.

    Phases: 1, 3 and 4 follow a run after a transition below v, at least v and finite, or of weight
    one; 2 follows runs of weight one only; 5 follows a run after a finite transition of weight at
    least v, and 6 continues it with weight one only.
    """
    _require_normalized(aut, 'k2')
    states, transitions, start = _threshold_states(aut, v, _k2_rules)
    f1 = {s for s in states if s[1] in (2, 3, 6)}
    f2 = {s for s in states if s[2] == 'B'}
    f3 = {s for s in states if s[1] in (1, 4)}
    return MullerAut(aut.aps, states, transitions, [start], f1, f2, f1 | f2 | f3)


def threshold_rabin_k1(aut, v):
    """
    Generalized Rabin automaton of the words with liminf behavior at least the finite value v: runs
    that eventually avoid transitions below v while taking finite ones at least v infinitely often,
    runs of weight one only, and runs never below v.
    """
    _require_normalized(aut, 'k1')
    states, transitions, start = _threshold_states(aut, v, _k1_rules)
    low = {s for s in states if s[1] == 1}
    high = {s for s in states if s[1] == 3}
    final_main = {s for s in states if s[2] == 'B' and s[1] in (0, 1, 3, 4)}
    final_of = lambda phase: {s for s in states if s[1] == phase and s[2] == 'B'}
    pairs = [(low, (high, final_main)), ((), (final_of(2),)), ((), (final_of(5),))]
    return RabinAut(aut.aps, states, transitions, [start], pairs)


def _boundary_threshold(aut, v):
    monoid = aut.valuation_monoid
    if v == monoid.zero:
        return universal_buchi(aut.aps)
    transitions = [(s, l, d) for s, l, d, value in aut.weights if value == monoid.one]
    return trim(BuchiAut(aut.aps, aut.states, transitions, aut.initial, aut.final))


def threshold_buchi_k2(aut, v):
    """
    Büchi automaton of the words whose behavior under a normalized wBa over K2 is at least v.

    Raises
    ------
    WltlError
        If the automaton is not normalized or not over k2
    """
    _require_normalized(aut, 'k2')
    if aut.valuation_monoid.is_boundary(v):
        return _boundary_threshold(aut, v)
    return muller_to_buchi(threshold_muller_k2(aut, v))


def threshold_buchi_k1(aut, v):
    """
    Büchi automaton of the words whose behavior under a normalized wBa over K1 is at least v.
    """
    _require_normalized(aut, 'k1')
    if aut.valuation_monoid.is_boundary(v):
        return _boundary_threshold(aut, v)
    return rabin_to_buchi(threshold_rabin_k1(aut, v))


@lru_cache(maxsize=512)
def threshold_buchi(aut, v):
    """
    Threshold Büchi automaton for a wBa over K1, K2 or K3. Automata over K3 go through k3_to_k2;
    automata with several initial states are normalized first.
    """
    logger = get_profile().logger
    if aut.monoid == 'k3':
        aut = k3_to_k2(aut)
    if not is_normalized(aut):
        logger.info('Normalized a wBa with {} initial states before the threshold construction'.format(len(aut.initial)))
        aut = normalize_wba(aut)
    if aut.monoid == 'k2':
        result = threshold_buchi_k2(aut, v)
    elif aut.monoid == 'k1':
        result = threshold_buchi_k1(aut, v)
    else:
        raise WltlError(USAGE, 'Threshold automata need k1, k2 or k3')
    logger.debug('Threshold automaton at {} has {} states'.format(v, len(result.states)))
    return result
