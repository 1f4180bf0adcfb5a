"""
Formula extensions by recursion on the formula, one world at a time, and
the partition of worlds by the formulas they satisfy.
"""

import itertools

from kripkelab.kripkelab_lib.kfformula import (
    Bottom, Diamond, Implies, Var, variables
)
from kripkelab.contrib.oracles.brute import pairs_of, restrict, subsets


def holds(f, valuation, phi, a):
    """Whether ``phi`` holds at world ``a`` under ``valuation``."""
    if isinstance(phi, Bottom):
        return False
    if isinstance(phi, Var):
        return a in valuation[phi.index]
    if isinstance(phi, Implies):
        return not holds(f, valuation, phi.left, a) or \
            holds(f, valuation, phi.right, a)
    if isinstance(phi, Diamond):
        r = pairs_of(f, phi.modality)
        return any(holds(f, valuation, phi.operand, b)
                   for b in range(f.n) if (a, b) in r)
    raise TypeError(phi)


def extension(f, valuation, phi):
    return frozenset(a for a in range(f.n) if holds(f, valuation, phi, a))


def valid(f, phi):
    """Validity by trying every valuation of the variables of ``phi``."""
    used = sorted(variables(phi))
    k = max(used) + 1 if used else 0
    choices = list(subsets(f.n))
    for picked in itertools.product(choices, repeat=len(used)):
        valuation = [frozenset()] * k
        for index, ws in zip(used, picked):
            valuation[index] = ws
        if extension(f, valuation, phi) != frozenset(range(f.n)):
            return False
    return True


def subframe_valid(f, phi):
    """Validity of ``phi`` on every restriction of ``f``."""
    for ys in subsets(f.n):
        if not valid(restrict(f, ys), phi):
            return False
    return True


def theta_blocks(f, valuation):
    """
    Worlds grouped by the extensions of all formulas over the valuation's
    variables. Extensions are grown one formula depth at a time from ``false``
    and the variables, by implication and every diamond, until no new set
    appears.
    """
    top = frozenset(range(f.n))
    relations = [pairs_of(f, name) for name in f.alphabet]
    found = set([frozenset()]) | set(frozenset(ws) for ws in valuation)
    while True:
        grown = set(found)
        for x in found:
            grown.update((top - x) | y for y in found)
            grown.update(frozenset(a for a in top
                                   if any((a, b) in r for b in x))
                         for r in relations)
        if grown == found:
            break
        found = grown
    groups = {}
    for a in sorted(top):
        groups.setdefault(frozenset(x for x in found if a in x), []).append(a)
    return sorted((frozenset(g) for g in groups.values()), key=min)
