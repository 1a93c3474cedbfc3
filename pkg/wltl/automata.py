# coding: utf-8
"""
Classical and weighted ω-automata over letters that are sets of atomic propositions.

Membership of a lasso is decided on the product of an automaton with the lasso positions:
a run exists with a given infinity set iff the product has a suitable strongly connected
component reachable from an initial node.
"""

__all__ = ['alphabet', 'BuchiAut', 'MullerAut', 'RabinAut', 'WBA', 'FormulaOrigin',
           'universal_buchi', 'empty_buchi', 'extend_aps', 'trim', 'degeneralize',
           'buchi_accepts', 'muller_accepts', 'rabin_accepts', 'buchi_empty',
           'buchi_complement', 'buchi_intersect', 'buchi_inclusion',
           'muller_to_buchi', 'rabin_to_buchi', 'safety_closure', 'is_safety_language',
           'safety_counterexample', 'is_normalized', 'normalize_wba',
           'wba_behavior', 'wba_behavior_oracle', 'parse_automaton', 'format_automaton']

import re
from collections import namedtuple, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Optional, Tuple

import networkx as nx

from .monoid import monoid_make, parse_value, format_value
from .Profile import get_profile
from .semantics import Lasso
from .wltlError import WltlError, USAGE, CAP


def alphabet(aps):
    """
    All letters over the atomic propositions, in a fixed order.
    """
    aps = sorted(aps)
    return [frozenset(a for bit, a in enumerate(aps) if mask >> bit & 1) for mask in range(2 ** len(aps))]


@dataclass(frozen=True)
class _TransitionSystem:
    aps: Tuple[str, ...]
    states: Tuple
    transitions: Tuple
    initial: FrozenSet

    def __post_init__(self):
        object.__setattr__(self, 'aps', tuple(sorted(set(self.aps))))
        object.__setattr__(self, 'states', tuple(dict.fromkeys(self.states)))
        object.__setattr__(self, 'transitions', tuple(dict.fromkeys(
            (src, frozenset(letter), dst) for src, letter, dst in self.transitions)))
        object.__setattr__(self, 'initial', frozenset(self.initial))
        declared, aps = set(self.states), set(self.aps)
        for src, letter, dst in self.transitions:
            if src not in declared or dst not in declared:
                raise WltlError(USAGE, 'Transition {} -> {} uses an undeclared state'.format(src, dst))
            if not letter <= aps:
                raise WltlError(USAGE, 'Letter {} uses undeclared propositions'.format(sorted(letter)))
        if not self.initial <= declared:
            raise WltlError(USAGE, 'Undeclared initial state')

    @cached_property
    def succ(self):
        index = {}
        for src, letter, dst in self.transitions:
            index.setdefault((src, letter), []).append(dst)
        return index

    def successors(self, state, letter):
        return self.succ.get((state, letter), ())

    @cached_property
    def graph(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        for src, letter, dst in self.transitions:
            if not g.has_edge(src, dst):
                g.add_edge(src, dst, letter=letter)
        return g

    def reachable(self):
        found = set(self.initial)
        for q in self.initial:
            found |= nx.descendants(self.graph, q)
        return found


@dataclass(frozen=True)
class BuchiAut(_TransitionSystem):
    """
    Büchi automaton: a run is accepting when it visits a final state infinitely often.
    """
    final: FrozenSet = frozenset()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, 'final', frozenset(self.final))
        if not self.final <= set(self.states):
            raise WltlError(USAGE, 'Undeclared final state')


@dataclass(frozen=True)
class MullerAut(_TransitionSystem):
    """
    Muller automaton with structural acceptance: a run is accepting when its infinity set
    meets f1 and f2 and is contained in s.
    """
    f1: FrozenSet = frozenset()
    f2: FrozenSet = frozenset()
    s: FrozenSet = frozenset()

    def __post_init__(self):
        super().__post_init__()
        for name in ('f1', 'f2', 's'):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if len(self.initial) != 1:
            raise WltlError(USAGE, 'A Muller automaton has a single initial state')
        if not (self.f1 <= self.s and self.f2 <= self.s and self.s <= set(self.states)):
            raise WltlError(USAGE, 'Muller acceptance needs f1, f2 inside s inside the states')


@dataclass(frozen=True)
class RabinAut(_TransitionSystem):
    """
    Rabin automaton with generalized pairs (avoid, visits): a run is accepting when for some pair
    its infinity set misses avoid and meets every set of visits.
    """
    pairs: Tuple = ()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, 'pairs', tuple((frozenset(avoid), tuple(frozenset(v) for v in visits))
                                                for avoid, visits in self.pairs))
        if len(self.initial) != 1:
            raise WltlError(USAGE, 'A Rabin automaton has a single initial state')
        if any(not visits for _, visits in self.pairs):
            raise WltlError(USAGE, 'Every Rabin pair needs at least one set to visit')


FormulaOrigin = namedtuple('FormulaOrigin', 'formula monoid')


@dataclass(frozen=True)
class WBA:
    """
    Weighted Büchi automaton. ``weights`` lists (src, letter, dst, value) for every transition whose
    weight differs from the monoid zero; all other transitions weigh zero.
    """
    monoid: str
    aps: Tuple[str, ...]
    states: Tuple
    weights: Tuple
    initial: FrozenSet
    final: FrozenSet
    origin: Optional[FormulaOrigin] = field(default=None, compare=False)

    def __post_init__(self):
        monoid = monoid_make(self.monoid)
        object.__setattr__(self, 'monoid', monoid.id)
        object.__setattr__(self, 'aps', tuple(sorted(set(self.aps))))
        object.__setattr__(self, 'states', tuple(dict.fromkeys(self.states)))
        entries = {}
        for src, letter, dst, value in self.weights:
            if value != monoid.zero:
                entries[(src, frozenset(letter), dst)] = value
        object.__setattr__(self, 'weights', tuple((s, l, d, v) for (s, l, d), v in entries.items()))
        object.__setattr__(self, 'initial', frozenset(self.initial))
        object.__setattr__(self, 'final', frozenset(self.final))
        declared, aps = set(self.states), set(self.aps)
        for src, letter, dst, _ in self.weights:
            if src not in declared or dst not in declared:
                raise WltlError(USAGE, 'Transition {} -> {} uses an undeclared state'.format(src, dst))
            if not letter <= aps:
                raise WltlError(USAGE, 'Letter {} uses undeclared propositions'.format(sorted(letter)))
        if not (self.initial <= declared and self.final <= declared):
            raise WltlError(USAGE, 'Undeclared initial or final state')

    @property
    def valuation_monoid(self):
        return monoid_make(self.monoid)

    @cached_property
    def out(self):
        index = {}
        for src, letter, dst, value in self.weights:
            index.setdefault((src, letter), []).append((dst, value))
        return index

    def wt(self, src, letter, dst):
        for target, value in self.out.get((src, frozenset(letter)), ()):
            if target == dst:
                return value
        return self.valuation_monoid.zero

    def image(self):
        return {value for _, _, _, value in self.weights}


def universal_buchi(aps):
    return BuchiAut(aps, ('u',), [('u', letter, 'u') for letter in alphabet(aps)], {'u'}, {'u'})


def empty_buchi(aps):
    return BuchiAut(aps, (), (), frozenset(), frozenset())


def extend_aps(aut, aps):
    """
    The same automaton over a larger proposition set; the new propositions are unconstrained.
    """
    extra = sorted(set(aps) - set(aut.aps))
    if not extra:
        return aut
    extensions = alphabet(extra)
    new_aps = tuple(sorted(set(aut.aps) | set(aps)))
    if isinstance(aut, WBA):
        weights = [(s, letter | x, d, v) for s, letter, d, v in aut.weights for x in extensions]
        return WBA(aut.monoid, new_aps, aut.states, weights, aut.initial, aut.final, aut.origin)
    transitions = [(s, letter | x, d) for s, letter, d in aut.transitions for x in extensions]
    if isinstance(aut, BuchiAut):
        return BuchiAut(new_aps, aut.states, transitions, aut.initial, aut.final)
    if isinstance(aut, MullerAut):
        return MullerAut(new_aps, aut.states, transitions, aut.initial, aut.f1, aut.f2, aut.s)
    return RabinAut(new_aps, aut.states, transitions, aut.initial, aut.pairs)


def _nontrivial(g, component):
    if len(component) > 1:
        return True
    node = next(iter(component))
    return g.has_edge(node, node)


def _accepting_components(g, requirements):
    """
    Nontrivial strongly connected components of g that meet every node set in requirements.
    """
    for component in nx.strongly_connected_components(g):
        if _nontrivial(g, component) and all(component & required for required in requirements):
            yield component


def _reach(g, sources):
    found = set(s for s in sources if s in g)
    for s in list(found):
        found |= nx.descendants(g, s)
    return found


def trim(aut):
    """
    Restrict a Büchi automaton to the states that are reachable and from which an accepting run starts.
    """
    reachable = aut.reachable()
    g = aut.graph.subgraph(reachable)
    good = set()
    for component in _accepting_components(g, [aut.final]):
        good |= component
    live = set(good)
    for q in good:
        live |= nx.ancestors(g, q)
    states = [q for q in aut.states if q in live]
    transitions = [(s, l, d) for s, l, d in aut.transitions if s in live and d in live]
    return BuchiAut(aut.aps, states, transitions, aut.initial & live, aut.final & live)


def degeneralize(aps, states, transitions, initial, sets):
    """
    Büchi automaton of a generalized Büchi automaton given by its acceptance ``sets``, with a
    counter over the sets. An empty list of sets accepts every infinite run.
    """
    sets = [frozenset(s) for s in sets]
    if not sets:
        return BuchiAut(aps, states, transitions, initial, states)
    if len(sets) == 1:
        return BuchiAut(aps, states, transitions, initial, sets[0])
    m = len(sets)
    succ = {}
    for src, letter, dst in transitions:
        succ.setdefault(src, []).append((letter, dst))
    start = [(q, 0) for q in initial]
    seen = dict.fromkeys(start)
    queue = deque(start)
    new_transitions = []
    while queue:
        q, i = queue.popleft()
        j = (i + 1) % m if q in sets[i] else i
        for letter, dst in succ.get(q, ()):
            target = (dst, j)
            new_transitions.append(((q, i), letter, target))
            if target not in seen:
                seen[target] = None
                queue.append(target)
    final = [(q, i) for q, i in seen if i == 0 and q in sets[0]]
    return BuchiAut(aps, list(seen), new_transitions, start, final)


# lasso products

def _product(aut, w, weighted=False):
    g = nx.DiGraph()
    for q in aut.states:
        for i in range(w.size):
            g.add_node((q, i))
    for q in aut.states:
        for i in range(w.size):
            letter = w.letter(i)
            j = w.successor(i)
            if weighted:
                for dst, value in aut.out.get((q, letter), ()):
                    g.add_edge((q, i), (dst, j), weight=value)
            else:
                for dst in aut.successors(q, letter):
                    g.add_edge((q, i), (dst, j))
    starts = [(q, 0) for q in aut.initial]
    return g, starts


def _check_aps(aut, w):
    if not w.aps() <= set(aut.aps):
        # letters with undeclared propositions have no transitions
        return False
    return True


def _nodes_of(g, states):
    return {node for node in g if node[0] in states}


def buchi_accepts(aut, w):
    """
    True iff the lasso w is accepted by the Büchi automaton.
    """
    if not _check_aps(aut, w):
        return False
    g, starts = _product(aut, w)
    g = g.subgraph(_reach(g, starts))
    return any(True for _ in _accepting_components(g, [_nodes_of(g, aut.final)]))


def muller_accepts(aut, w):
    """
    Direct evaluation of the structural Muller condition on the lasso product.
    """
    if not _check_aps(aut, w):
        return False
    g, starts = _product(aut, w)
    g = g.subgraph(_reach(g, starts) & _nodes_of(g, aut.s))
    return any(True for _ in _accepting_components(g, [_nodes_of(g, aut.f1), _nodes_of(g, aut.f2)]))


def rabin_accepts(aut, w):
    if not _check_aps(aut, w):
        return False
    g, starts = _product(aut, w)
    reachable = _reach(g, starts)
    for avoid, visits in aut.pairs:
        sub = g.subgraph(reachable - _nodes_of(g, avoid))
        if any(True for _ in _accepting_components(sub, [_nodes_of(sub, v) for v in visits])):
            return True
    return False


Emptiness = namedtuple('Emptiness', 'empty witness')


def _path_letters(aut, path):
    return [aut.graph.edges[a, b]['letter'] for a, b in zip(path, path[1:])]


def buchi_empty(aut):
    """
    Emptiness check.

    Returns
    -------
    Emptiness
        (empty, witness): witness is an accepted Lasso when the language is nonempty, else None
    """
    g = aut.graph.subgraph(aut.reachable())
    for component in _accepting_components(g, [aut.final]):
        target = next(q for q in aut.states if q in component and q in aut.final)
        lengths = {q: nx.shortest_path_length(g, q, target) for q in aut.initial if nx.has_path(g, q, target)}
        origin = min(lengths, key=lengths.get)
        stem = nx.shortest_path(g, origin, target)
        if g.has_edge(target, target):
            cycle = [target, target]
        else:
            inner = g.subgraph(component)
            nxt = next(d for d in inner.successors(target))
            cycle = [target] + nx.shortest_path(inner, nxt, target)
        return Emptiness(False, Lasso(_path_letters(aut, stem), _path_letters(aut, cycle)))
    return Emptiness(True, None)


def buchi_intersect(a, b):
    """
    Product automaton accepting L(a) ∩ L(b); a flag alternates between waiting for a final
    state of a and of b.
    """
    aps = set(a.aps) | set(b.aps)
    a, b = extend_aps(a, aps), extend_aps(b, aps)
    start = [(p, q, 0) for p in a.initial for q in b.initial]
    seen = dict.fromkeys(start)
    queue = deque(start)
    transitions = []
    letters = alphabet(aps)
    while queue:
        p, q, flag = queue.popleft()
        if flag == 0 and p in a.final:
            nflag = 1
        elif flag == 1 and q in b.final:
            nflag = 0
        else:
            nflag = flag
        for letter in letters:
            for p2 in a.successors(p, letter):
                for q2 in b.successors(q, letter):
                    target = (p2, q2, nflag)
                    transitions.append(((p, q, flag), letter, target))
                    if target not in seen:
                        seen[target] = None
                        queue.append(target)
    final = [s for s in seen if s[2] == 1 and s[1] in b.final]
    return BuchiAut(aps, list(seen), transitions, start, final)


# complementation

def _tight_rankings(states, finals, bound):
    """
    Tight level rankings on ``states``: the maximal rank r is odd, every odd rank up to r is used,
    final states get even ranks, and each state respects its bound when one is given.
    """
    states = sorted(states)
    if not states:
        yield ()
        return
    for r in range(1, 2 * len(states), 2):
        odd_needed = set(range(1, r + 1, 2))

        def assign(k, used, ranks):
            remaining = len(states) - k
            if len(odd_needed - used) > remaining:
                return
            if k == len(states):
                yield tuple(zip(states, ranks))
                return
            q = states[k]
            top = r if bound is None else min(r, bound[q])
            for rank in range(top, -1, -1):
                if q in finals and rank % 2:
                    continue
                yield from assign(k + 1, used | ({rank} if rank % 2 else set()), ranks + [rank])

        yield from assign(0, frozenset(), [])


def buchi_complement(aut, cap=None, state_limit=None):
    """
    Complement of a Büchi automaton by a rank-based construction restricted to tight rankings.

    A first phase tracks the reachable subset; it may guess a tight ranking at any step and continue
    in the second phase, whose states (ranking, obligation set) are accepting when the obligation
    set is empty.

    Parameters
    ----------
    aut : BuchiAut
    cap : int, optional
        Largest accepted input size after trimming. Default: the profile complement cap
    state_limit : int, optional
        Largest number of generated states. Default: the profile complement state limit

    Raises
    ------
    WltlError
        With code 3 when either limit is exceeded
    """
    profile = get_profile()
    logger = profile.logger
    cap = profile.complement_cap if cap is None else cap
    state_limit = profile.complement_state_limit if state_limit is None else state_limit

    aut = trim(aut)
    if len(aut.states) > cap:
        logger.error('Complementation input has {} states, cap is {}'.format(len(aut.states), cap))
        raise WltlError(CAP, 'Complementation input has {} states after trimming, cap is {}'.format(len(aut.states), cap))

    index = {q: i for i, q in enumerate(aut.states)}
    finals = frozenset(index[q] for q in aut.final)
    letters = alphabet(aut.aps)
    delta = {(index[s], l): frozenset(index[d] for d in ds) for (s, l), ds in aut.succ.items()}

    def post(states, letter):
        return frozenset().union(*(delta.get((i, letter), frozenset()) for i in states))

    start = ('S', frozenset(index[q] for q in aut.initial))
    seen = {start: None}
    queue = deque([start])
    transitions = []

    def add(src, letter, dst):
        transitions.append((src, letter, dst))
        if dst not in seen:
            seen[dst] = None
            if len(seen) > state_limit:
                logger.error('Complement construction exceeded {} states'.format(state_limit))
                raise WltlError(CAP, 'Complement construction exceeded {} states'.format(state_limit))
            queue.append(dst)

    while queue:
        state = queue.popleft()
        if state[0] == 'S':
            current = state[1]
            for letter in letters:
                nxt = post(current, letter)
                add(state, letter, ('S', nxt))
                for ranking in _tight_rankings(nxt, finals, None):
                    add(state, letter, ('R', ranking, frozenset()))
            continue

        _, ranking, obligations = state
        ranks = dict(ranking)
        for letter in letters:
            nxt = post(ranks, letter)
            bound = {}
            for i, rank in ranks.items():
                for j in delta.get((i, letter), ()):
                    bound[j] = min(rank, bound.get(j, rank))
            for new_ranking in _tight_rankings(nxt, finals, bound):
                new_ranks = dict(new_ranking)
                if obligations:
                    pending = frozenset(j for j in post(obligations, letter) if new_ranks[j] % 2 == 0)
                else:
                    pending = frozenset(j for j in nxt if new_ranks[j] % 2 == 0)
                add(state, letter, ('R', new_ranking, pending))

    final = [s for s in seen if s[0] == 'R' and not s[2]]
    result = trim(BuchiAut(aut.aps, list(seen), transitions, [start], final))
    logger.debug('Complemented {} states into {} states ({} after trimming)'.format(
        len(aut.states), len(seen), len(result.states)))
    return result


Inclusion = namedtuple('Inclusion', 'included counterexample')


def buchi_inclusion(a, b, complement=None):
    """
    Decide L(a) ⊆ L(b) as emptiness of a ∩ ¬b.

    Parameters
    ----------
    a, b : BuchiAut
    complement : BuchiAut, optional
        An automaton for the complement of L(b), used instead of complementing b

    Returns
    -------
    Inclusion
        (included, counterexample): the counterexample lasso is accepted by a and rejected by b
    """
    if complement is None:
        complement = buchi_complement(b)
    emptiness = buchi_empty(buchi_intersect(a, complement))
    return Inclusion(emptiness.empty, emptiness.witness)


# conversions

def _cycle_states(aut, reachable):
    g = aut.graph.subgraph(reachable)
    cyclic = set()
    for component in nx.strongly_connected_components(g):
        if _nontrivial(g, component):
            cyclic |= component
    return g, cyclic


def muller_to_buchi(aut):
    """
    Büchi automaton with the language of a structural Muller automaton.

    Components that cannot host an accepting infinity set are merged into s. When s then covers
    every reachable state the generalized condition (f1, f2) is degeneralized directly, dropping a
    set that contains all states on cycles; otherwise a free first copy jumps nondeterministically
    into a second copy restricted to s.
    """
    reachable = aut.reachable()
    g, cyclic = _cycle_states(aut, reachable)
    s = set(aut.s) | (reachable - cyclic)
    for component in nx.strongly_connected_components(g):
        if not (component & aut.f1 and component & aut.f2):
            s |= component

    transitions = [(src, l, dst) for src, l, dst in aut.transitions if src in reachable and dst in reachable]
    states = [q for q in aut.states if q in reachable]
    if reachable <= s:
        sets = [f for f in (aut.f1, aut.f2) if not cyclic <= f]
        result = degeneralize(aut.aps, states, transitions, aut.initial, sets)
        return trim(result)

    sets = [aut.f1, aut.f2]
    two_phase = []
    for src, letter, dst in transitions:
        two_phase.append((('free', src), letter, ('free', dst)))
        if dst in s:
            two_phase.append((('free', src), letter, ('inner', dst)))
            if src in s:
                two_phase.append((('inner', src), letter, ('inner', dst)))
    phase_states = [('free', q) for q in states] + [('inner', q) for q in states if q in s]
    initial = [('free', q) for q in aut.initial] + [('inner', q) for q in aut.initial if q in s]
    inner_sets = [{('inner', q) for q in f} for f in sets]
    return trim(degeneralize(aut.aps, phase_states, two_phase, initial, inner_sets))


def rabin_to_buchi(aut):
    """
    Büchi automaton with the language of a generalized Rabin automaton: a free copy, and per pair a
    copy without the avoided states whose counter runs through the visit sets. Runs jump from the
    free copy at any step.
    """
    transitions = [(('free', s), l, ('free', d)) for s, l, d in aut.transitions]
    states = [('free', q) for q in aut.states]
    initial = [('free', q) for q in aut.initial]
    final = []
    for j, (avoid, visits) in enumerate(aut.pairs):
        m = len(visits)
        kept = [q for q in aut.states if q not in avoid]
        states += [('pair', j, q, i) for q in kept for i in range(m)]
        initial += [('pair', j, q, 0) for q in aut.initial if q not in avoid]
        final += [('pair', j, q, 0) for q in kept if q in visits[0]]
        for s, l, d in aut.transitions:
            if d in avoid:
                continue
            transitions.append((('free', s), l, ('pair', j, d, 0)))
            if s in avoid:
                continue
            for i in range(m):
                nxt = (i + 1) % m if s in visits[i] else i
                transitions.append((('pair', j, s, i), l, ('pair', j, d, nxt)))
    return trim(BuchiAut(aut.aps, states, transitions, initial, final))


# safety

def safety_closure(aut):
    """
    Smallest safety language containing L(aut): the trimmed automaton with every state final.
    """
    live = trim(aut)
    return BuchiAut(live.aps, live.states, live.transitions, live.initial, live.states)


def safety_counterexample(aut, complement=None):
    """
    A lasso in the safety closure of L(aut) but not in L(aut), or None when L(aut) is a safety language.
    """
    return buchi_inclusion(safety_closure(aut), aut, complement).counterexample


def is_safety_language(aut, complement=None):
    return safety_counterexample(aut, complement) is None


# weighted automata

def is_normalized(aut):
    return len(aut.initial) == 1


def normalize_wba(aut):
    """
    Equivalent weighted Büchi automaton with a single initial state.

    The fresh initial state takes, per letter and target, the largest weight outside {zero, one} of
    the initial transitions into the original states; initial transitions of weight one lead into a
    copy of the automaton instead. Only the part reachable from the new initial state is kept.
    """
    monoid = aut.valuation_monoid
    init = ('init',)
    copy = lambda q: ('copy', q)
    weights = list(aut.weights)
    best = {}
    for src, letter, dst, value in aut.weights:
        if src not in aut.initial:
            continue
        if value == monoid.one:
            weights.append((init, letter, copy(dst), monoid.one))
        elif (letter, dst) not in best or best[(letter, dst)] < value:
            best[(letter, dst)] = value
    weights += [(init, letter, dst, value) for (letter, dst), value in best.items()]
    weights += [(copy(s), l, copy(d), v) for s, l, d, v in aut.weights]

    g = nx.DiGraph()
    g.add_node(init)
    g.add_edges_from((s, d) for s, _, d, _ in weights)
    keep = {init} | nx.descendants(g, init)
    states = [init] + [q for q in aut.states if q in keep] + [copy(q) for q in aut.states if copy(q) in keep]
    final = [q for q in aut.final if q in keep] + [copy(q) for q in aut.final if copy(q) in keep]
    result = WBA(aut.monoid, aut.aps, states, [e for e in weights if e[0] in keep],
                 {init}, final, aut.origin)
    get_profile().logger.debug('Normalized a wBa with {} initial states into {} states'.format(
        len(aut.initial), len(result.states)))
    return result


def wba_behavior(aut, w):
    """
    Behavior of a weighted Büchi automaton on a lasso: the largest v among the weights and the monoid
    one whose threshold automaton accepts w, else the monoid zero.

    Raises
    ------
    WltlError
        For the pair monoid, which has no threshold construction
    """
    from .translate import threshold_buchi

    monoid = aut.valuation_monoid
    if monoid.is_pair:
        raise WltlError(USAGE, 'Behavior through threshold automata needs k1, k2 or k3')
    for v in sorted((aut.image() | {monoid.one}) - {monoid.zero}, reverse=True):
        if buchi_accepts(threshold_buchi(aut, v), w):
            return v
    return monoid.zero


def wba_behavior_oracle(aut, w):
    """
    Behavior of a weighted Büchi automaton on a lasso by direct analysis of the run product,
    following the case table of the valuation. Independent of the threshold constructions.
    """
    monoid = aut.valuation_monoid
    if not w.aps() <= set(aut.aps):
        return monoid.zero
    g, starts = _product(aut, w, weighted=True)
    g = g.subgraph(_reach(g, starts)).copy()
    final_nodes = _nodes_of(g, aut.final)

    def restricted(keep_edge):
        sub = nx.DiGraph()
        sub.add_nodes_from(g)
        sub.add_edges_from((a, b) for a, b, v in g.edges(data='weight') if keep_edge(v))
        return sub

    def accepting_nodes(sub):
        nodes = set()
        for component in _accepting_components(sub, [final_nodes]):
            nodes |= component
        return nodes

    one_graph = restricted(lambda v: v == monoid.one)
    one_accepting = accepting_nodes(one_graph)
    live = set()
    for node in accepting_nodes(g):
        live |= {node} | nx.ancestors(g, node)
    reaches_one_tail = set()
    for node in one_accepting:
        reaches_one_tail |= {node} | nx.ancestors(g, node)

    if _reach(one_graph, starts) & one_accepting:
        return monoid.one

    def holds(v):
        high_edges = [(a, b) for a, b, value in g.edges(data='weight') if value != monoid.one and value >= v]
        if monoid.id == 'k3':
            return any(b in live for a, b in high_edges)
        if monoid.id == 'k1':
            at_least = restricted(lambda value: value >= v)
            if _reach(at_least, starts) & accepting_nodes(one_graph):
                return True
            for component in _accepting_components(at_least, [final_nodes]):
                if any(a in component and b in component for a, b in high_edges):
                    return True
            return False
        # limsup-style valuations
        for component in _accepting_components(g, [final_nodes]):
            if any(a in component and b in component for a, b in high_edges):
                return True
        return any(b in reaches_one_tail for a, b in high_edges)

    for v in sorted(aut.image() - {monoid.zero, monoid.one}, reverse=True):
        if holds(v):
            return v
    return monoid.zero


# files

_LETTER_RE = r'\{[^}]*\}'
_TRANS_RE = re.compile(r'^trans\s+(\S+)\s+(' + _LETTER_RE + r')\s+(\S+)(?:\s+(\S+))?\s*$')


def _parse_letter(text):
    inner = text.strip()[1:-1]
    return frozenset(a.strip() for a in inner.split(',') if a.strip())


def _format_letter(letter):
    return '{' + ','.join(sorted(letter)) + '}'


def parse_automaton(text):
    """
    Parse a line-based automaton file.

    A ``monoid`` line makes it a weighted Büchi automaton, whose ``trans`` lines carry a weight
    (a missing weight means the monoid zero); otherwise it is a Büchi automaton. Lines starting
    with ``#`` are comments.

    Returns
    -------
    BuchiAut or WBA

    Raises
    ------
    WltlError
        On malformed lines, unknown keywords or undeclared states and propositions
    """
    monoid = None
    fields = {'aps': [], 'states': [], 'initial': [], 'final': []}
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        keyword = line.split()[0]
        if keyword == 'trans':
            match = _TRANS_RE.match(line)
            if not match:
                raise WltlError(USAGE, 'Line {}: malformed transition "{}"'.format(number, line))
            entries.append((number,) + match.groups())
        elif keyword == 'monoid':
            monoid = monoid_make(line.split()[1] if len(line.split()) > 1 else '')
        elif keyword in fields:
            fields[keyword] = line.split()[1:]
        else:
            raise WltlError(USAGE, 'Line {}: unknown keyword {}'.format(number, keyword))

    if monoid is None:
        transitions = []
        for number, src, letter, dst, weight in entries:
            if weight is not None:
                raise WltlError(USAGE, 'Line {}: weight on a transition of an unweighted automaton'.format(number))
            transitions.append((src, _parse_letter(letter), dst))
        return BuchiAut(fields['aps'], fields['states'], transitions, fields['initial'], fields['final'])

    weights = []
    for number, src, letter, dst, weight in entries:
        value = monoid.zero if weight is None else parse_value(weight, monoid)
        weights.append((src, _parse_letter(letter), dst, value))
    return WBA(monoid.id, fields['aps'], fields['states'], weights, fields['initial'], fields['final'])


def _state_names(states):
    if all(isinstance(q, str) and q and not re.search(r'[\s#{}]', q) for q in states):
        return {q: q for q in states}
    return {q: 's{}'.format(i) for i, q in enumerate(states)}


def format_automaton(aut):
    """
    Print a BuchiAut or WBA in the file syntax read by parse_automaton. Generated state names are
    replaced by s0, s1, ...
    """
    names = _state_names(aut.states)
    lines = []
    if isinstance(aut, WBA):
        lines.append('monoid {}'.format(aut.monoid))
    lines.append(' '.join(['aps'] + list(aut.aps)))
    lines.append(' '.join(['states'] + [names[q] for q in aut.states]))
    lines.append(' '.join(['initial'] + [names[q] for q in aut.states if q in aut.initial]))
    lines.append(' '.join(['final'] + [names[q] for q in aut.states if q in aut.final]))
    if isinstance(aut, WBA):
        for src, letter, dst, value in aut.weights:
            lines.append('trans {} {} {} {}'.format(names[src], _format_letter(letter), names[dst], format_value(value)))
    else:
        for src, letter, dst in aut.transitions:
            lines.append('trans {} {} {}'.format(names[src], _format_letter(letter), names[dst]))
    return '\n'.join(lines) + '\n'
