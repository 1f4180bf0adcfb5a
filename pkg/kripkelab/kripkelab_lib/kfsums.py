# -*- coding: utf-8 -*-
"""
This module contains the frame constructions of kripkelab: disjoint sums,
sums over an index frame (:class:`SumFrame`), lexicographic sums, the
transfer of tuned partitions from summands to their sum, p-morphisms
(:class:`WorldMap`) and the cover of a frame satisfying the interaction
conditions by a lexicographic sum.

Worlds of a sum are laid out summand after summand in index order; the pair
``(index_of[w], inner_of[w])`` is the coordinate of world ``w``.
"""

import collections
import logging

import numpy as np

from kripkelab.kripkelab_lib.kfconstants import Verdict
from kripkelab.kripkelab_lib.kfexceptions import (
    KFAlphabetError, KFFrameError, KFInvariantError, KFPreconditionError,
    KFSizeMismatchError, KFWorldRangeError
)
from kripkelab.kripkelab_lib.kfframe import (
    Frame, Relation, compose, irreflexive_part, restriction, star,
    union_relation
)
from kripkelab.kripkelab_lib.kfpartition import (
    Partition, coarsest_tuned_refinement, is_tuned, meet, refines
)

LOGGER = logging.getLogger(__name__)

PmorphismWitness = collections.namedtuple(
    'PmorphismWitness', ['condition', 'modality', 'a', 'target'])
ConditionWitness = collections.namedtuple(
    'ConditionWitness', ['condition', 'vertical', 'horizontal', 'pair'])


class SumFrame(object):
    """
    A sum of frames with its coordinate system.

    :param frame: the sum itself
    :param index: the index frame
    :param summands: one frame per index world
    """
    def __init__(self, frame, index, summands):
        self.frame = frame  #: the sum frame
        self.index = index  #: index frame
        self.summands = tuple(summands)  #: summand frames, in index order
        index_of, inner_of, layout = [], [], []
        start = 0
        for i, summand in enumerate(self.summands):
            layout.append(range(start, start + summand.n))
            index_of.extend([i] * summand.n)
            inner_of.extend(range(summand.n))
            start += summand.n
        if start != frame.n:
            raise KFSizeMismatchError(start, frame.n)
        self.index_of = tuple(index_of)  #: index world of each world
        self.inner_of = tuple(inner_of)  #: summand world of each world
        self.layout = tuple(layout)  #: world range of each summand

    def world(self, i, a):
        """World with coordinates ``(i, a)``."""
        if not 0 <= a < self.summands[i].n:
            raise KFWorldRangeError(a, self.summands[i].n)
        return self.layout[i].start + a

    def __str__(self):
        return '<SumFrame(index=%d, n=%d)>' % (self.index.n, self.frame.n)

    def __repr__(self):
        return str(self)


class WorldMap(object):
    """
    Total map from the worlds of one frame to the worlds of another.

    :param domain: source frame
    :param codomain: target frame
    :param mapping: image of each source world
    """
    def __init__(self, domain, codomain, mapping):
        mapping = tuple(int(b) for b in mapping)
        if len(mapping) != domain.n:
            raise KFSizeMismatchError(len(mapping), domain.n)
        for b in mapping:
            if not 0 <= b < codomain.n:
                raise KFWorldRangeError(b, codomain.n)
        self.domain = domain  #: source frame
        self.codomain = codomain  #: target frame
        self.mapping = mapping  #: image of each source world

    @property
    def surjective(self):
        return len(set(self.mapping)) == self.codomain.n

    def __str__(self):
        return '<WorldMap(%d -> %d)>' % (self.domain.n, self.codomain.n)

    def __repr__(self):
        return str(self)


def _same_alphabet(frames, alphabet=None):
    for f in frames:
        if alphabet is None:
            alphabet = f.alphabet
        elif f.alphabet != alphabet:
            raise KFAlphabetError(list(f.alphabet), 'expected %r'
                                  % (list(alphabet),))
    return alphabet


def _block_diagonal(summands, name, n):
    matrix = np.zeros((n, n), dtype=bool)
    start = 0
    for summand in summands:
        stop = start + summand.n
        matrix[start:stop, start:stop] = summand.matrix(name)
        start = stop
    return matrix


def _expand(index_matrix, sizes):
    # index-level relation blown up to every pair of summand worlds
    return np.repeat(np.repeat(index_matrix, sizes, axis=0), sizes, axis=1)


def sum_over_index(index, summands):
    """
    Sum of frames over an index frame: inside a summand its own relations,
    between distinct summands ``i != j`` the index relation ``i S j``.

    :param index: index frame
    :param summands: one frame per index world, same alphabet as the index
    :return: :class:`SumFrame`
    """
    summands = list(summands)
    if len(summands) != index.n:
        raise KFSizeMismatchError(len(summands), index.n)
    _same_alphabet(summands, index.alphabet)
    sizes = [s.n for s in summands]
    n = sum(sizes)
    off_diagonal = ~np.eye(index.n, dtype=bool)
    relations = {}
    for name in index.alphabet:
        cross = _expand(index.matrix(name) & off_diagonal, sizes)
        relations[name] = cross | _block_diagonal(summands, name, n)
    return SumFrame(Frame(index.alphabet, n, relations), index, summands)


def disjoint_sum(frames, alphabet=None):
    """
    Disjoint sum: summands side by side, no edges between them.

    :param frames: frames with equal alphabets
    :param alphabet: alphabet to use when ``frames`` is empty
    :return: :class:`SumFrame` over an index with empty relations
    """
    frames = list(frames)
    alphabet = _same_alphabet(frames, alphabet)
    if alphabet is None:
        raise KFAlphabetError([], 'no frames and no alphabet given')
    return sum_over_index(Frame(alphabet, len(frames)), frames)


def _lex_alphabets(index, summands):
    inner = _same_alphabet(summands)
    if inner is None:
        raise KFFrameError('a lexicographic sum needs at least one summand')
    if len(summands) != index.n:
        raise KFSizeMismatchError(len(summands), index.n)
    overlap = sorted(set(index.alphabet) & set(inner))
    if overlap:
        raise KFAlphabetError(overlap, 'vertical and horizontal overlap')
    return inner


def lex_sum(index, summands):
    """
    Lexicographic sum: vertical (index) relations hold between ``(i, a)`` and
    ``(j, b)`` iff ``i S j``; horizontal (summand) relations stay inside a
    summand.

    :param index: index frame over the vertical alphabet
    :param summands: frames over the horizontal alphabet
    :return: :class:`~kripkelab.kripkelab_lib.kfframe.Frame` over both
    """
    summands = list(summands)
    inner = _lex_alphabets(index, summands)
    sizes = [s.n for s in summands]
    n = sum(sizes)
    relations = dict((name, _expand(index.matrix(name), sizes))
                     for name in index.alphabet)
    relations.update((name, _block_diagonal(summands, name, n))
                     for name in inner)
    return Frame(tuple(index.alphabet) + tuple(inner), n, relations)


def lex_product(index, summand):
    """Lexicographic sum with a copy of ``summand`` at every index world."""
    return lex_sum(index, [summand] * index.n)


def lex_as_sum(index, summands):
    """
    The lexicographic sum written as an ordinary sum: the index gains empty
    horizontal relations and each summand gains vertical relations that are
    full when the index world is reflexive and empty otherwise.

    :return: :class:`SumFrame` whose frame equals :func:`lex_sum`
    """
    summands = list(summands)
    inner = _lex_alphabets(index, summands)
    alphabet = tuple(index.alphabet) + tuple(inner)
    extended = Frame(alphabet, index.n, index.relations)
    expansions = []
    for i, summand in enumerate(summands):
        relations = summand.relations
        for name in index.alphabet:
            full = index.matrix(name)[i, i]
            relations[name] = np.full((summand.n, summand.n), full,
                                      dtype=bool)
        expansions.append(Frame(alphabet, summand.n, relations))
    return sum_over_index(extended, expansions)


def t_profile_partition(s, v):
    """
    Partition of the index grouping ``i`` and ``j`` when their summands meet
    exactly the same blocks of ``v``.
    """
    if v.n != s.frame.n:
        raise KFSizeMismatchError(v.n, s.frame.n)
    labels = v.labels
    return Partition.from_labels(
        [frozenset(labels[list(span)].tolist()) for span in s.layout])


def transfer_partition(s, v, u, check=False):
    """
    Tuned partition of a sum from tuned partitions of its parts: worlds
    ``(i, a)`` and ``(j, b)`` are together iff they share a block of ``v``
    and ``i``, ``j`` share a block of ``u``.

    :param s: the sum
    :type s: :class:`SumFrame`
    :param v: partition of the sum, tuned in the disjoint sum of summands
    :param u: partition of the index, tuned in its irreflexive part and
        refining :func:`t_profile_partition`
    :param check: re-check the guarantees (test mode)
    :return: :class:`~kripkelab.kripkelab_lib.kfpartition.Partition`
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFPreconditionError`
    """
    apart = disjoint_sum(s.summands, s.index.alphabet).frame
    verdict = is_tuned(apart, v)
    if not verdict:
        raise KFPreconditionError('transfer_partition: v tuned in the'
                                  ' disjoint sum', verdict.witness)
    verdict = is_tuned(irreflexive_part(s.index), u)
    if not verdict:
        raise KFPreconditionError('transfer_partition: u tuned in the index',
                                  verdict.witness)
    if not refines(u, t_profile_partition(s, v)):
        raise KFPreconditionError('transfer_partition: u refines t-profiles',
                                  str(u))
    index_labels = u.labels
    result = meet(v, Partition.from_labels(
        [index_labels[i] for i in s.index_of]))
    if check:
        verdict = is_tuned(s.frame, result)
        if not verdict:
            raise KFInvariantError('transfer_partition', verdict.witness)
        if len(result) > len(v) * len(u):
            raise KFInvariantError('transfer_partition',
                                   (len(result), len(v), len(u)))
    return result


def transfer_stages(s, v0, check=False):
    """
    The transfer construction staged from a base partition: refine ``v0`` in
    the disjoint sum, refine the t-profiles in the index and intersect.

    :return: dict with the partitions and the sizes of every stage
    """
    apart = disjoint_sum(s.summands, s.index.alphabet).frame
    v = coarsest_tuned_refinement(apart, v0)
    u0 = t_profile_partition(s, v)
    u = coarsest_tuned_refinement(irreflexive_part(s.index), u0)
    result = transfer_partition(s, v, u, check=check)
    report = {
        'v0': len(v0), 'v': len(v), 'u0': len(u0), 'u': len(u),
        'S': len(result),
        'tuned': bool(is_tuned(s.frame, result)),
        'refines_v0': refines(result, v0),
        'bound': len(result) <= len(v) * len(u),
        'profile_bound': len(u0) <= 2 ** len(v)
    }
    LOGGER.debug('transfer stages %r', report)
    return {'v': v, 'u0': u0, 'u': u, 'S': result, 'report': report}


def is_pmorphism(m):
    """
    Check the forth condition (``a R b`` implies ``f(a) S f(b)``) and the
    lift condition (``f(a) S u`` implies ``a R a'`` with ``f(a') = u``) for
    every modality.

    :param m: world map
    :type m: :class:`WorldMap`
    :return: :class:`~kripkelab.kripkelab_lib.kfconstants.Verdict` with a
        :class:`PmorphismWitness`
    """
    dom, cod = m.domain, m.codomain
    if dom.alphabet != cod.alphabet:
        raise KFAlphabetError(list(dom.alphabet), 'expected %r'
                              % (list(cod.alphabet),))
    f = np.array(m.mapping, dtype=np.intp)
    onto = np.zeros((dom.n, cod.n), dtype=bool)
    onto[np.arange(dom.n), f] = True
    for name in dom.alphabet:
        r, s = dom.matrix(name), cod.matrix(name)
        broken = np.argwhere(r & ~s[np.ix_(f, f)])
        if broken.size:
            a, b = broken[0]
            return Verdict.failed(PmorphismWitness('forth', name, int(a),
                                                   int(b)))
        lifted = np.dot(r.astype(np.float64), onto.astype(np.float64)) > 0
        missing = np.argwhere(s[f] & ~lifted)
        if missing.size:
            a, u = missing[0]
            return Verdict.failed(PmorphismWitness('lift', name, int(a),
                                                   int(u)))
    return Verdict.passed()


def _split(f, vertical, horizontal):
    vertical, horizontal = list(vertical), list(horizontal)
    if set(vertical) & set(horizontal) or \
            sorted(vertical + horizontal) != sorted(f.alphabet):
        raise KFAlphabetError(vertical + horizontal,
                              'must split the alphabet %r'
                              % (list(f.alphabet),))
    return vertical, horizontal


def phi_conditions(f, vertical, horizontal):
    """
    Check ``R_h o R_v``, ``R_v o R_h`` and ``R_h^-1 o R_v`` are contained in
    ``R_v`` for every vertical ``v`` and horizontal ``h``.

    :return: :class:`~kripkelab.kripkelab_lib.kfconstants.Verdict` with a
        :class:`ConditionWitness` naming the failed inclusion and a pair
    """
    vertical, horizontal = _split(f, vertical, horizontal)
    for v in vertical:
        rv = f.relation(v)
        for h in horizontal:
            rh = f.relation(h)
            for condition, composed in (
                    ('h;v', compose(rh, rv)), ('v;h', compose(rv, rh)),
                    ('h^-1;v', compose(rh.converse(), rv))):
                extra = composed - rv
                if len(extra):
                    return Verdict.failed(ConditionWitness(
                        condition, v, h, min(extra.pairs)))
    return Verdict.passed()


def _union(f, names):
    union = Relation(f.n)
    for name in names:
        union = union | f.relation(name)
    return union


def star_factorizes(f, vertical, horizontal):
    """Whether ``(V u H)* = V* o H*`` for the vertical and horizontal union."""
    vertical, horizontal = _split(f, vertical, horizontal)
    v, h = _union(f, vertical), _union(f, horizontal)
    return star(v | h) == compose(star(v), star(h))


def find_root(f):
    """Least world reaching every world, or ``None``."""
    reach = star(union_relation(f)).matrix
    roots = np.flatnonzero(reach.all(axis=1))
    return int(roots[0]) if roots.size else None


def oplus_cover(f, root, vertical, horizontal):
    """
    Cover a rooted frame satisfying :func:`phi_conditions` by a lexicographic
    sum: the index is the vertical cone of the root, the summand at ``i`` the
    horizontal cone of ``i``, and ``(i, a)`` maps to ``a``.

    :param f: frame
    :param root: world reaching every world
    :param vertical: vertical modality names
    :param horizontal: horizontal modality names
    :return: the cover :class:`SumFrame`-style coordinates in a dict with
        keys ``frame``, ``map`` (:class:`WorldMap` onto ``f``), ``index_of``,
        ``inner_of`` (original worlds) and ``report``
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFPreconditionError`
    """
    verdict = phi_conditions(f, vertical, horizontal)
    if not verdict:
        raise KFPreconditionError('oplus_cover: interaction conditions',
                                  verdict.witness)
    vertical, horizontal = _split(f, vertical, horizontal)
    if not 0 <= root < f.n:
        raise KFWorldRangeError(root, f.n)
    if star(union_relation(f)).successors(root) != frozenset(range(f.n)):
        raise KFPreconditionError('oplus_cover: root', root)
    vframe = Frame(vertical, f.n, dict((v, f.relation(v)) for v in vertical))
    hframe = Frame(horizontal, f.n,
                   dict((h, f.relation(h)) for h in horizontal))
    vstar = star(_union(f, vertical))
    hstar = star(_union(f, horizontal))
    index, index_map = restriction(vframe, vstar.successors(root))
    index_worlds = sorted(index_map, key=index_map.get)
    summands, coordinates = [], []
    for i in index_worlds:
        summand, inner_map = restriction(hframe, hstar.successors(i))
        summands.append(summand)
        coordinates.extend((i, a) for a in sorted(inner_map,
                                                  key=inner_map.get))
    cover = lex_sum(index, summands)
    # the cover's alphabet is vertical + horizontal; compare in f's order
    cover = Frame(f.alphabet, cover.n, cover.relations)
    projection = WorldMap(cover, f, [a for _, a in coordinates])
    pmorphism = is_pmorphism(projection)
    report = {
        'worlds': cover.n,
        'pmorphism': bool(pmorphism),
        'pmorphism_witness': pmorphism.witness and list(pmorphism.witness),
        'surjective': projection.surjective,
        'star_factorizes': star_factorizes(f, vertical, horizontal)
    }
    LOGGER.debug('cover of %d worlds by %d: %r', f.n, cover.n, report)
    return {
        'frame': cover, 'map': projection,
        'index_of': [i for i, _ in coordinates],
        'inner_of': [a for _, a in coordinates],
        'report': report
    }
