# -*- coding: utf-8 -*-
"""
This module contains the modal formula language of kripkelab: the abstract
syntax tree, the text parser and printer, the schemas used in correspondence
experiments and the three formula translations.

The AST core is :class:`Bottom`, :class:`Var`, :class:`Implies` and
:class:`Diamond`. Negation, conjunction, disjunction, truth and boxes are
constructor shorthands that expand to the core, so two formulas are equal iff
their core trees are equal::

    >>> from kripkelab.kripkelab_lib.kfformula import parse, Box, Var
    >>> parse('[a]p0') == Box('a', Var(0))
    True

Text grammar, loosest binding first: ``->`` (right associative), ``|``,
``&``, then the prefix operators ``~``, ``<name>`` and ``[name]``. Atoms are
``false``, ``true``, ``p<NAT>`` and parenthesized formulas.
"""

import functools
import logging
from dataclasses import dataclass

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from kripkelab.kripkelab_lib.kfconstants import DEFAULT_MODALITY
from kripkelab.kripkelab_lib.kfexceptions import (
    KFAlphabetError, KFFormulaError, KFParseError
)

LOGGER = logging.getLogger(__name__)

GRAMMAR = r'''
?start: implication

?implication: disjunction
    | disjunction "->" implication -> implies

?disjunction: conjunction
    | disjunction "|" conjunction -> or_

?conjunction: prefix
    | conjunction "&" prefix -> and_

?prefix: "~" prefix -> not_
    | "<" NAME ">" prefix -> diamond
    | "[" NAME "]" prefix -> box
    | atom

?atom: "false" -> bottom
    | "true" -> top
    | VAR -> var
    | "(" implication ")"

VAR: /p[0-9]+/
NAME: /[A-Za-z_][A-Za-z0-9_]*/

%import common.WS
%ignore WS
'''


class Formula(object):
    """Base of the formula AST; printing gives the re-sugared text form."""
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self):
        return 'Bottom()'


@dataclass(frozen=True, repr=False)
class Var(Formula):
    index: int

    def __post_init__(self):
        if isinstance(self.index, bool) or not isinstance(self.index, int) \
                or self.index < 0:
            raise KFFormulaError(self.index, 'variable index must be natural')

    def __repr__(self):
        return 'Var(%d)' % self.index


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return 'Implies(%r, %r)' % (self.left, self.right)


@dataclass(frozen=True, repr=False)
class Diamond(Formula):
    modality: str
    operand: Formula

    def __repr__(self):
        return 'Diamond(%r, %r)' % (self.modality, self.operand)


# derived connectives, normalized to the core at construction
BOTTOM = Bottom()


def Not(phi):
    return Implies(phi, BOTTOM)


def Top():
    return Not(BOTTOM)


def Or(phi, psi):
    return Implies(Not(phi), psi)


def And(phi, psi):
    return Not(Implies(phi, Not(psi)))


def Box(modality, phi):
    return Not(Diamond(modality, Not(phi)))


def disjunction(formulas):
    """Left-folded disjunction; the empty disjunction is ``false``."""
    formulas = list(formulas)
    if not formulas:
        return BOTTOM
    return functools.reduce(Or, formulas)


def conjunction(formulas):
    """Left-folded conjunction; the empty conjunction is ``true``."""
    formulas = list(formulas)
    if not formulas:
        return Top()
    return functools.reduce(And, formulas)


def _alphabet(alphabet):
    alphabet = list(alphabet)
    if not alphabet:
        raise KFAlphabetError(alphabet, 'the alphabet must not be empty')
    return alphabet


def diamond_all(alphabet, phi):
    """Disjunction of ``<a>phi`` over the alphabet."""
    return disjunction(Diamond(name, phi) for name in _alphabet(alphabet))


def box_all(alphabet, phi):
    """Conjunction of ``[a]phi`` over the alphabet."""
    return conjunction(Box(name, phi) for name in _alphabet(alphabet))


def diamond_power(i, alphabet, phi):
    """``phi`` under ``i`` nested alphabet diamonds."""
    _alphabet(alphabet)
    for _ in range(i):
        phi = diamond_all(alphabet, phi)
    return phi


def box_power(i, alphabet, phi):
    _alphabet(alphabet)
    for _ in range(i):
        phi = box_all(alphabet, phi)
    return phi


def diamond_upto(m, alphabet, phi):
    """``phi | <A>phi | .. | <A>^m phi``; ``m=0`` gives ``phi``."""
    _alphabet(alphabet)
    disjuncts = [phi]
    for _ in range(m):
        disjuncts.append(diamond_all(alphabet, disjuncts[-1]))
    return disjunction(disjuncts)


def box_upto(m, alphabet, phi):
    """``phi & [A]phi & .. & [A]^m phi``; ``m=0`` gives ``phi``."""
    _alphabet(alphabet)
    conjuncts = [phi]
    for _ in range(m):
        conjuncts.append(box_all(alphabet, conjuncts[-1]))
    return conjunction(conjuncts)


# structural queries
def variables(phi):
    """Indices of the variables occurring in ``phi``."""
    if isinstance(phi, Var):
        return frozenset([phi.index])
    if isinstance(phi, Implies):
        return variables(phi.left) | variables(phi.right)
    if isinstance(phi, Diamond):
        return variables(phi.operand)
    return frozenset()


def modalities(phi):
    """Modality names occurring in ``phi``."""
    if isinstance(phi, Implies):
        return modalities(phi.left) | modalities(phi.right)
    if isinstance(phi, Diamond):
        return frozenset([phi.modality]) | modalities(phi.operand)
    return frozenset()


def modal_depth(phi):
    if isinstance(phi, Implies):
        return max(modal_depth(phi.left), modal_depth(phi.right))
    if isinstance(phi, Diamond):
        return 1 + modal_depth(phi.operand)
    return 0


def is_modal_free(phi):
    return not modalities(phi)


# parser
class FormulaTransformer(Transformer):
    """Builds the core AST from the parse tree."""
    def implies(self, children):
        return Implies(children[0], children[1])

    def or_(self, children):
        return Or(children[0], children[1])

    def and_(self, children):
        return And(children[0], children[1])

    def not_(self, children):
        return Not(children[0])

    def diamond(self, children):
        return Diamond(str(children[0]), children[1])

    def box(self, children):
        return Box(str(children[0]), children[1])

    def bottom(self, children):
        return BOTTOM

    def top(self, children):
        return Top()

    def var(self, children):
        return Var(int(children[0][1:]))


PARSER = Lark(GRAMMAR, parser='lalr')


def parse(text):
    """
    Parse a formula.

    :param text: formula text, e.g. ``"<a>(p0 & ~p1)"``
    :type text: str
    :return: the core AST
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFParseError`
        with the position of the offending input
    """
    if not text or not text.strip():
        raise KFParseError(text, 0, 'empty input')
    try:
        tree = PARSER.parse(text)
    except UnexpectedInput as exc:
        position = getattr(exc, 'pos_in_stream', None)
        if not isinstance(position, int) or position < 0:
            position = len(text)
        raise KFParseError(text, position, type(exc).__name__)
    return FormulaTransformer().transform(tree)


def parse_lines(text):
    """
    Parse one formula per line, skipping blank lines and ``#`` comments.

    :return: list of formulas
    """
    formulas = []
    for line in text.splitlines():
        line = line.split('#', 1)[0].strip()
        if line:
            formulas.append(parse(line))
    return formulas


# printer, binding strength: 1 "->", 2 "|", 3 "&", 4 prefix and atoms
def _sugar(phi):
    # recognize the derived shapes, most specific first
    if isinstance(phi, Implies):
        left, right = phi.left, phi.right
        if right == BOTTOM:
            if left == BOTTOM:
                return ('true',)
            if isinstance(left, Diamond) and \
                    isinstance(left.operand, Implies) \
                    and left.operand.right == BOTTOM:
                return ('box', left.modality, left.operand.left)
            if isinstance(left, Implies) and isinstance(left.right, Implies) \
                    and left.right.right == BOTTOM:
                return ('and', left.left, left.right.left)
            return ('not', left)
        if isinstance(left, Implies) and left.right == BOTTOM:
            return ('or', left.left, right)
        return ('implies', left, right)
    return None


def _text(phi, strength):
    sugar = _sugar(phi)
    if sugar is None:
        if isinstance(phi, Bottom):
            return 'false'
        if isinstance(phi, Var):
            return 'p%d' % phi.index
        text, own = '<%s>%s' % (phi.modality, _text(phi.operand, 4)), 4
    elif sugar[0] == 'true':
        text, own = 'true', 4
    elif sugar[0] == 'box':
        text, own = '[%s]%s' % (sugar[1], _text(sugar[2], 4)), 4
    elif sugar[0] == 'not':
        text, own = '~%s' % _text(sugar[1], 4), 4
    elif sugar[0] == 'and':
        text, own = '%s & %s' % (_text(sugar[1], 3), _text(sugar[2], 4)), 3
    elif sugar[0] == 'or':
        text, own = '%s | %s' % (_text(sugar[1], 2), _text(sugar[2], 3)), 2
    else:
        text, own = '%s -> %s' % (_text(sugar[1], 2), _text(sugar[2], 1)), 1
    if own < strength:
        return '(%s)' % text
    return text


def to_text(phi):
    """
    Print a formula with ``~``, ``&``, ``|``, ``true`` and boxes re-sugared
    and the fewest parentheses that parse back to the same tree.
    """
    return _text(phi, 1)


# schemas
def b_formula(h, modality=DEFAULT_MODALITY):
    """
    Height formula ``B_h = p_h -> [](<>p_h | B_{h-1})`` with ``B_0 = false``.

    :param h: height bound
    :param modality: name of the single modality
    """
    phi = BOTTOM
    for i in range(1, h + 1):
        phi = Implies(Var(i), Box(modality, Or(Diamond(modality, Var(i)),
                                               phi)))
    return phi


def b_m_formula(h, m, alphabet):
    """
    Height formula for ``m``-transitive frames,
    ``p_h -> []^{<=m}(<>^{<=m}p_h | B_{h-1})`` over the whole alphabet.
    """
    _alphabet(alphabet)
    phi = BOTTOM
    for i in range(1, h + 1):
        phi = Implies(Var(i), box_upto(m, alphabet,
                                       Or(diamond_upto(m, alphabet, Var(i)),
                                          phi)))
    return phi


def pretransitivity_axiom(m, alphabet):
    """``<A>^{m+1}p0 -> <A>^{<=m}p0``."""
    p0 = Var(0)
    return Implies(diamond_power(m + 1, alphabet, p0),
                   diamond_upto(m, alphabet, p0))


def phi_axioms(vertical, horizontal):
    """
    Interaction axioms of a vertical and a horizontal alphabet, three per
    ``(v, h)`` pair in lexicographic order:
    ``<h><v>p0 -> <v>p0``, ``<v><h>p0 -> <v>p0``, ``<v>p0 -> [h]<v>p0``.

    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFAlphabetError`
        for an empty or overlapping alphabet
    """
    vertical, horizontal = _alphabet(vertical), _alphabet(horizontal)
    overlap = sorted(set(vertical) & set(horizontal))
    if overlap:
        raise KFAlphabetError(overlap, 'vertical and horizontal overlap')
    p0 = Var(0)
    axioms = []
    for v in vertical:
        for h in horizontal:
            vp = Diamond(v, p0)
            axioms.append(Implies(Diamond(h, vp), vp))
            axioms.append(Implies(Diamond(v, Diamond(h, p0)), vp))
            axioms.append(Implies(vp, Box(h, vp)))
    return axioms


# translations
def reflexive_translate(phi, modalities=None):
    """
    ``(<a>psi)^r = <a>psi^r | psi^r``; Boolean cases are homomorphic.

    :param phi: formula
    :param modalities: translate only these diamonds, all by default
    """
    if isinstance(phi, Implies):
        return Implies(reflexive_translate(phi.left, modalities),
                       reflexive_translate(phi.right, modalities))
    if isinstance(phi, Diamond):
        operand = reflexive_translate(phi.operand, modalities)
        if modalities is None or phi.modality in modalities:
            return Or(Diamond(phi.modality, operand), operand)
        return Diamond(phi.modality, operand)
    return phi


def relativize(phi, xi):
    """``(<a>psi)^xi = <a>(xi & psi^xi)``; ``false`` and variables stay."""
    if isinstance(phi, Implies):
        return Implies(relativize(phi.left, xi), relativize(phi.right, xi))
    if isinstance(phi, Diamond):
        return Diamond(phi.modality, And(xi, relativize(phi.operand, xi)))
    return phi


def m_translate(phi, m, alphabet):
    """
    Replace every diamond of a unimodal formula with ``<A>^{<=m}``.

    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFFormulaError`
        if ``phi`` uses more than one modality
    """
    _alphabet(alphabet)
    if len(modalities(phi)) > 1:
        raise KFFormulaError(to_text(phi), 'more than one modality')

    def translate(psi):
        if isinstance(psi, Implies):
            return Implies(translate(psi.left), translate(psi.right))
        if isinstance(psi, Diamond):
            return diamond_upto(m, alphabet, translate(psi.operand))
        return psi

    return translate(phi)
