# coding: utf-8
__version__ = '0.1.0'

"""
Weighted LTL over the valuation monoids K1 (liminf), K2 (limsup) and K3 (sup of the non-infinite
weights) and weighted Büchi automata:
    - exact evaluation of formulas on ultimately periodic words
    - translation of the totally restricted fragments into weighted Büchi automata
    - threshold Büchi automata, quantitative inclusion and equivalence
    - k-safety of automata and formulas
"""

from .Profile import *
from .wltlError import WltlError
from .monoid import monoid_make, parse_value, format_value, check_axioms
from .logic import parse_formula, format_formula, classify, threshold_formula
from .semantics import Lasso, eval_formula, parse_lasso, format_lasso
from .automata import BuchiAut, WBA, parse_automaton, format_automaton, wba_behavior
from .translate import WTS, parse_wts, wts_to_wba, formula_to_wba, k3_to_k2, threshold_buchi
from .decide import (Verdict, quantitative_inclusion, quantitative_equivalence, decide_formula_automaton,
                     is_k_safe_wba, is_k_safe_formula)
