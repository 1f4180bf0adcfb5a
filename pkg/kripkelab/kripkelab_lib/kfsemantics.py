# -*- coding: utf-8 -*-
"""
This module contains Kripke models, :class:`Model`, formula evaluation,
frame validity by exhaustive valuation enumeration and the partition of a
model into worlds that no formula tells apart.

Extensions are computed for a whole batch of valuations at once: every
subformula evaluates to an ``n x B`` boolean matrix, one column per valuation,
and a diamond is a single matrix product with its relation.
"""

import itertools
import logging

import numpy as np

from kripkelab.kripkelab_lib import kfconstants
from kripkelab.kripkelab_lib.kfconstants import as_mask, as_worlds, world_set
from kripkelab.kripkelab_lib.kfexceptions import (
    KFAlphabetError, KFCapExceededError, KFFormulaError
)
from kripkelab.kripkelab_lib.kfformula import (
    Bottom, Diamond, Implies, Var, box_upto, is_modal_free, relativize,
    to_text, variables
)
from kripkelab.kripkelab_lib.kfframe import restriction, star
from kripkelab.kripkelab_lib.kfpartition import (
    coarsest_tuned_refinement, induced_partition
)

LOGGER = logging.getLogger(__name__)


class Model(object):
    """
    A frame plus a valuation of the variables ``p0 .. p{k-1}``.

    :param frame: the frame
    :type frame: :class:`~kripkelab.kripkelab_lib.kfframe.Frame`
    :param valuation: world set of each variable, in index order
    :type valuation: list
    """
    def __init__(self, frame, valuation=()):
        self.frame = frame  #: the frame
        #: world set of each variable
        self.valuation = tuple(world_set(frame.n, ws) for ws in valuation)

    @property
    def k(self):
        """number of variables"""
        return len(self.valuation)

    @classmethod
    def from_dict(cls, frame, data):
        """
        Model from the valuation file format ``{"p0": [worlds], ...}``;
        variables up to the largest index given, missing ones empty.
        """
        indices = {}
        for key, worlds in data.items():
            if not (key.startswith('p') and key[1:].isdigit()):
                raise KFFormulaError(key, 'not a variable name')
            indices[int(key[1:])] = worlds
        k = max(indices) + 1 if indices else 0
        return cls(frame, [indices.get(i, ()) for i in range(k)])

    def to_dict(self):
        return dict(('p%d' % i, sorted(ws))
                    for i, ws in enumerate(self.valuation))

    def restrict(self, worlds):
        """``M`` restricted to ``worlds``, with the index map."""
        frame, index_map = restriction(self.frame, worlds)
        return Model(frame, [[index_map[w] for w in ws if w in index_map]
                             for ws in self.valuation]), index_map

    def __str__(self):
        return '<Model(n=%d, k=%d)>' % (self.frame.n, self.k)

    def __repr__(self):
        return str(self)


def _extension(frame, phi, env, batch, operators, cache):
    # n x batch extension matrix of phi, one column per valuation
    key = id(phi)
    if key in cache:
        return cache[key]
    if isinstance(phi, Bottom):
        ext = np.zeros((frame.n, batch), dtype=bool)
    elif isinstance(phi, Var):
        try:
            ext = env[phi.index]
        except KeyError:
            raise KFFormulaError(to_text(phi), 'variable out of range')
    elif isinstance(phi, Implies):
        ext = ~_extension(frame, phi.left, env, batch, operators, cache) | \
            _extension(frame, phi.right, env, batch, operators, cache)
    elif isinstance(phi, Diamond):
        try:
            op = operators[phi.modality]
        except KeyError:
            raise KFAlphabetError([phi.modality], 'not in the alphabet %r'
                                  % (list(frame.alphabet),))
        inner = _extension(frame, phi.operand, env, batch, operators, cache)
        ext = np.dot(op, inner.astype(np.float64)) > 0
    else:
        raise KFFormulaError(phi, 'not a formula')
    cache[key] = ext
    return ext


def _operators(frame):
    return dict((name, frame.matrix(name).astype(np.float64))
                for name in frame.alphabet)


def evaluate(m, phi):
    """
    Extension of ``phi`` in a model.

    :param m: model
    :type m: :class:`Model`
    :param phi: formula whose variables are below ``m.k``
    :return: worlds where ``phi`` holds
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFFormulaError`,
        :class:`~kripkelab.kripkelab_lib.kfexceptions.KFAlphabetError`
    """
    n = m.frame.n
    env = dict((i, as_mask(n, ws).reshape(n, 1))
               for i, ws in enumerate(m.valuation))
    ext = _extension(m.frame, phi, env, 1, _operators(m.frame), {})
    return as_worlds(ext[:, 0])


def _valuation_batches(n, indices, chunk):
    # all 2^(n*k) valuations of the given variables, bit j*n+w = w in p_j
    bits = n * len(indices)
    total = 1 << bits
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        env = {}
        for j, index in enumerate(indices):
            shifts = np.arange(j * n, (j + 1) * n, dtype=np.int64)
            env[index] = ((codes[np.newaxis, :] >> shifts[:, np.newaxis])
                          & 1).astype(bool)
        yield codes, env


def _decode(frame, indices, code):
    n = frame.n
    valuation = [()] * (max(indices) + 1 if indices else 0)
    for j, index in enumerate(indices):
        valuation[index] = [w for w in range(n) if code >> (j * n + w) & 1]
    return Model(frame, valuation)


def find_countermodel(f, phi, cap=None, kfconst=None):
    """
    First valuation refuting ``phi`` somewhere in ``f``.

    :param f: frame
    :param phi: formula
    :param cap: max ``n*k`` (``k`` the variables occurring in ``phi``)
    :param kfconst: configuration, supplies the cap and the batch size
    :return: refuting :class:`Model` or ``None`` if ``phi`` is valid
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFCapExceededError`
    """
    cap = kfconstants.resolve(cap, kfconst, 'cap')
    chunk = kfconstants.resolve(None, kfconst, 'chunk')
    indices = sorted(variables(phi))
    needed = f.n * len(indices)
    if needed > cap:
        raise KFCapExceededError(needed, cap)
    operators = _operators(f)
    for codes, env in _valuation_batches(f.n, indices, chunk):
        ext = _extension(f, phi, env, len(codes), operators, {})
        refuted = np.flatnonzero(~ext.all(axis=0))
        if refuted.size:
            return _decode(f, indices, int(codes[refuted[0]]))
    return None


def valid_on_frame(f, phi, cap=None, kfconst=None):
    """
    Whether ``phi`` holds everywhere under every valuation of its variables.

    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFCapExceededError`
    """
    return find_countermodel(f, phi, cap, kfconst) is None


def theta_partition(m):
    """
    Worlds of a model grouped by the ``k``-formulas they satisfy: the
    coarsest tuned refinement of the partition induced by the valuation.
    """
    return coarsest_tuned_refinement(
        m.frame, induced_partition(m.frame.n, m.valuation))


def subframe_formula(phi):
    """``q -> phi^q`` with ``q`` the least variable absent from ``phi``."""
    used = variables(phi)
    q = Var(min(set(range(len(used) + 1)) - used))
    return Implies(q, relativize(phi, q))


def subframe_validity(f, phi, cap=None, kfconst=None):
    """
    Whether ``phi`` is valid on every restriction of ``f``.

    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFCapExceededError`
        when ``n + n*k`` exceeds the cap
    """
    cap = kfconstants.resolve(cap, kfconst, 'cap')
    needed = f.n * (len(variables(phi)) + 1)
    if needed > cap:
        raise KFCapExceededError(needed, cap)
    for size in range(f.n + 1):
        for ys in itertools.combinations(range(f.n), size):
            sub, _ = restriction(f, ys)
            if not valid_on_frame(sub, phi, cap, kfconst):
                LOGGER.debug('%s fails on the subframe %r', to_text(phi), ys)
                return False
    return True


def relativized_box_reach(m, xi, phi, mm, a, modality=None):
    """
    Compare ``M, a |= ([]^{<=mm} phi)^xi`` against the direct check that
    every world ``R_V``-reachable from ``a`` satisfies ``phi``, where ``V``
    is the extension of ``xi`` and ``R_V`` is ``R`` restricted to ``V``.

    :param m: model
    :param xi: relativizing formula
    :param phi: modal-free formula
    :param mm: box depth
    :param a: world inside ``V``
    :param modality: relation ``R``, the first of the alphabet by default
    :return: ``True`` iff both sides agree
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFFormulaError`
        if ``phi`` is modal or ``a`` is outside ``V``
    """
    if not is_modal_free(phi):
        raise KFFormulaError(to_text(phi), 'must be modal-free')
    if modality is None:
        if not m.frame.alphabet:
            raise KFAlphabetError([], 'the frame has no modalities')
        modality = m.frame.alphabet[0]
    region = evaluate(m, xi)
    if a not in region:
        raise KFFormulaError(to_text(xi), 'world %d is outside its extension'
                             % a)
    boxed = relativize(box_upto(mm, [modality], phi), xi)
    holds = a in evaluate(m, boxed)
    reach = star(m.frame.relation(modality).restrict(region)).successors(a)
    direct = reach <= evaluate(m, phi)
    LOGGER.debug('relativized box at %d: %s, direct reach: %s', a, holds,
                 direct)
    return holds == direct
