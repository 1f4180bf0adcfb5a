# -*- coding: utf-8 -*-
"""
This module contains the finite Kripke frame, :class:`Frame`, its relations,
:class:`Relation`, and the relation algebra everything else is built on:
composition, powers, reflexive-transitive closure, restriction, skeletons,
heights and pretransitivity degrees.

Relations are stored as ``n x n`` boolean :class:`numpy.ndarray` matrices and
worlds are the integers ``0..n-1``. Composition reads left to right:
``(a, c)`` is in ``compose(r, s)`` iff ``a r b`` and ``b s c`` for some ``b``.
All values are read-only after construction.
"""

import logging

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from kripkelab.kripkelab_lib.kfconstants import world_set
from kripkelab.kripkelab_lib.kfexceptions import (
    KFAlphabetError, KFFrameError, KFSizeMismatchError, KFWorldRangeError
)

LOGGER = logging.getLogger(__name__)
FRAME_KEYS = ('alphabet', 'worlds', 'relations')  # keys of the frame format


def bool_product(x, y):
    """Boolean matrix product; float dot keeps the counts exact and fast."""
    return np.dot(x.astype(np.float64), y.astype(np.float64)) > 0


class ModalityAlphabet(tuple):
    """
    Ordered tuple of distinct modality names. The order fixes how relations
    are indexed.
    """
    def __new__(cls, names=()):
        if isinstance(names, str):
            raise KFAlphabetError(names, 'expected a list of names')
        try:
            names = tuple(names)
        except TypeError:
            raise KFAlphabetError(names, 'expected a list of names')
        for name in names:
            if not isinstance(name, str) or not name:
                raise KFAlphabetError(names, 'names must be nonempty strings')
        if len(set(names)) != len(names):
            raise KFAlphabetError(names, 'names must be distinct')
        return super(ModalityAlphabet, cls).__new__(cls, names)

    def isdisjoint(self, other):
        return not set(self) & set(other)

    def __repr__(self):
        return 'ModalityAlphabet(%r)' % (list(self),)


class Relation(object):
    """
    Binary relation on the worlds ``0..n-1``.

    :param n: world count
    :type n: int
    :param pairs: ``(source, target)`` pairs
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFWorldRangeError`
    """
    def __init__(self, n, pairs=()):
        if n < 0:
            raise KFFrameError('negative world count %d' % n)
        matrix = np.zeros((n, n), dtype=bool)
        for pair in pairs:
            try:
                a, b = pair
            except (TypeError, ValueError):
                raise KFFrameError('pair %r is not [source, target]' % (pair,))
            for w in (a, b):
                if isinstance(w, bool) or not isinstance(w, (int, np.integer)):
                    raise KFFrameError('world %r is not an integer' % (w,))
                if not 0 <= w < n:
                    raise KFWorldRangeError(w, n)
            matrix[a, b] = True
        self._freeze(matrix)

    def _freeze(self, matrix):
        matrix.setflags(write=False)
        self.matrix = matrix  #: boolean adjacency matrix

    @classmethod
    def from_matrix(cls, matrix):
        """Relation with a copy of a square boolean matrix."""
        matrix = np.array(matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise KFFrameError('relation matrix must be square, got %r'
                               % (matrix.shape,))
        rel = cls.__new__(cls)
        rel._freeze(matrix)
        return rel

    @classmethod
    def identity(cls, n):
        return cls.from_matrix(np.eye(n, dtype=bool))

    @classmethod
    def full(cls, n):
        return cls.from_matrix(np.ones((n, n), dtype=bool))

    @property
    def n(self):
        """world count"""
        return self.matrix.shape[0]

    @property
    def pairs(self):
        """set of ``(source, target)`` pairs"""
        return frozenset((int(a), int(b)) for a, b in np.argwhere(self.matrix))

    def successors(self, a):
        return frozenset(int(b) for b in np.flatnonzero(self.matrix[a]))

    def image(self, worlds):
        """``R[worlds]``"""
        worlds = _index(self.n, worlds)
        return frozenset(
            int(b) for b in np.flatnonzero(self.matrix[worlds].any(axis=0)))

    def preimage(self, worlds):
        """``R^{-1}[worlds]``"""
        worlds = _index(self.n, worlds)
        return frozenset(
            int(a) for a in np.flatnonzero(self.matrix[:, worlds].any(axis=1)))

    def restrict(self, worlds):
        """Pairs with both ends in ``worlds``; the world count is kept."""
        inside = np.zeros(self.n, dtype=bool)
        inside[_index(self.n, worlds)] = True
        return Relation.from_matrix(self.matrix & np.outer(inside, inside))

    def converse(self):
        return Relation.from_matrix(self.matrix.T)

    def issubset(self, other):
        _check_same(self, other)
        return not (self.matrix & ~other.matrix).any()

    def __or__(self, other):
        _check_same(self, other)
        return Relation.from_matrix(self.matrix | other.matrix)

    def __and__(self, other):
        _check_same(self, other)
        return Relation.from_matrix(self.matrix & other.matrix)

    def __sub__(self, other):
        _check_same(self, other)
        return Relation.from_matrix(self.matrix & ~other.matrix)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.matrix, other.matrix)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.n, np.packbits(self.matrix).tobytes()))

    def __len__(self):
        return int(self.matrix.sum())

    def __contains__(self, pair):
        a, b = pair
        return 0 <= a < self.n and 0 <= b < self.n and bool(self.matrix[a, b])

    def __str__(self):
        return '<Relation(n=%d, pairs=%s)>' % (self.n, sorted(self.pairs))

    def __repr__(self):
        return str(self)


def _index(n, worlds):
    return np.array(sorted(world_set(n, worlds)), dtype=np.intp)


def _check_same(r, s):
    if r.n != s.n:
        raise KFSizeMismatchError(r.n, s.n)


def compose(r, s):
    """
    Relational composition, left to right.

    :param r: first relation
    :param s: second relation
    :return: ``{(a, c) | a r b and b s c for some b}``
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFSizeMismatchError`
    """
    _check_same(r, s)
    return Relation.from_matrix(bool_product(r.matrix, s.matrix))


def converse(r):
    return r.converse()


def power(r, i):
    """``R^i`` with ``R^0`` the diagonal and ``R^{i+1} = R o R^i``."""
    result = np.eye(r.n, dtype=bool)
    for _ in range(i):
        result = bool_product(r.matrix, result)
    return Relation.from_matrix(result)


def upto(r, m):
    """``R^{<=m}``, the union of ``R^0 .. R^m`` (the diagonal included)."""
    within = np.eye(r.n, dtype=bool)
    step = within
    for _ in range(m):
        step = bool_product(r.matrix, step)
        within = within | step
    return Relation.from_matrix(within)


def star(r):
    """
    Reflexive-transitive closure, by repeated squaring to a fixpoint.

    :param r: relation
    :return: least reflexive transitive relation containing ``r``
    """
    closure = r.matrix | np.eye(r.n, dtype=bool)
    while True:
        squared = bool_product(closure, closure)
        if np.array_equal(squared, closure):
            return Relation.from_matrix(closure)
        closure = squared


class Frame(object):
    """
    Finite Kripke frame: worlds ``0..n-1`` and one relation per modality.

    :param alphabet: modality names
    :type alphabet: list, :class:`ModalityAlphabet`
    :param n: world count, zero allowed
    :type n: int
    :param relations: per modality name, a :class:`Relation`, a boolean
        matrix or an iterable of pairs; missing names get the empty relation
    :type relations: dict
    """
    def __init__(self, alphabet, n, relations=None):
        self.alphabet = ModalityAlphabet(alphabet)  #: modality names
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise KFFrameError('world count %r is not an integer' % (n,))
        if n < 0:
            raise KFFrameError('negative world count %d' % n)
        self.n = int(n)  #: world count
        relations = dict(relations or {})
        unknown = sorted(name for name in relations
                         if name not in self.alphabet)
        if unknown:
            raise KFAlphabetError(unknown, 'not in the alphabet %r'
                                  % (list(self.alphabet),))
        rels = []
        for name in self.alphabet:
            rel = relations.get(name, ())
            if isinstance(rel, np.ndarray):
                rel = Relation.from_matrix(rel)
            elif not isinstance(rel, Relation):
                rel = Relation(self.n, rel)
            if rel.n != self.n:
                raise KFSizeMismatchError(rel.n, self.n)
            rels.append(rel)
        self._relations = tuple(rels)

    @property
    def relations(self):
        """relations keyed by modality name, in alphabet order"""
        return dict(zip(self.alphabet, self._relations))

    @property
    def worlds(self):
        return range(self.n)

    def relation(self, name):
        """
        Relation of one modality.

        :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFAlphabetError`
        """
        try:
            return self._relations[self.alphabet.index(name)]
        except ValueError:
            raise KFAlphabetError([name], 'not in the alphabet %r'
                                  % (list(self.alphabet),))

    __getitem__ = relation

    def matrix(self, name):
        return self.relation(name).matrix

    def with_relations(self, relations):
        """Copy of this frame with some relations replaced."""
        merged = self.relations
        merged.update(relations)
        return Frame(self.alphabet, self.n, merged)

    def to_dict(self):
        """Frame in the JSON file format."""
        return {
            'alphabet': list(self.alphabet),
            'worlds': self.n,
            'relations': dict(
                (name, [list(p) for p in sorted(rel.pairs)])
                for name, rel in zip(self.alphabet, self._relations))
        }

    @classmethod
    def from_dict(cls, data):
        """
        Frame from the JSON file format
        ``{"alphabet": [...], "worlds": n, "relations": {"a": [[s, t]]}}``.
        """
        if not isinstance(data, dict):
            raise KFFrameError('expected an object, got %r' % (data,))
        unknown = sorted(set(data) - set(FRAME_KEYS))
        if unknown:
            raise KFFrameError('unknown keys %r' % unknown)
        for key in FRAME_KEYS[:2]:
            if key not in data:
                raise KFFrameError('missing key "%s"' % key)
        relations = data.get('relations', {})
        if not isinstance(relations, dict):
            raise KFFrameError('"relations" must be an object')
        for name, pairs in relations.items():
            if not isinstance(pairs, list):
                raise KFFrameError('relation "%s" must be a list of pairs'
                                   % (name,))
        return cls(data['alphabet'], data['worlds'], relations)

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.n == other.n and
                self._relations == other._relations)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.alphabet, self.n, self._relations))

    def __str__(self):
        return '<Frame(alphabet=%r, n=%d)>' % (list(self.alphabet), self.n)

    def __repr__(self):
        return str(self)


def reflexive_closure(f, modalities=None):
    """
    Union each relation (or just the named ones) with the diagonal.

    :param f: frame
    :param modalities: names to close, all by default
    :return: :class:`Frame` ``F^r``
    """
    if modalities is None:
        modalities = f.alphabet
    diagonal = Relation.identity(f.n)
    return f.with_relations(
        dict((name, f.relation(name) | diagonal) for name in modalities))


def irreflexive_part(f):
    """Remove the diagonal from every relation."""
    diagonal = Relation.identity(f.n)
    return f.with_relations(
        dict((name, rel - diagonal) for name, rel in f.relations.items()))


def restriction(f, ys):
    """
    Restriction of a frame to a subset of its worlds.

    :param f: frame
    :param ys: world subset
    :return: restricted :class:`Frame` with worlds renumbered in increasing
        order, and the index map ``{old world: new world}``
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFWorldRangeError`
    """
    kept = sorted(world_set(f.n, ys))
    index_map = dict((old, new) for new, old in enumerate(kept))
    idx = np.array(kept, dtype=np.intp)
    return Frame(f.alphabet, len(kept), dict(
        (name, rel.matrix[np.ix_(idx, idx)])
        for name, rel in f.relations.items())), index_map


def union_relation(f):
    """``R_F``, the union of all relations of a frame."""
    union = np.zeros((f.n, f.n), dtype=bool)
    for rel in f.relations.values():
        union |= rel.matrix
    return Relation.from_matrix(union)


def cone(f, a):
    """``R*_F(a)``, the worlds reachable from ``a``."""
    if not 0 <= a < f.n:
        raise KFWorldRangeError(a, f.n)
    return star(union_relation(f)).successors(a)


def generated_subframe(f, a):
    """The cone ``F`` up-arrow ``a`` as a restriction, with its index map."""
    return restriction(f, cone(f, a))


def _components(matrix):
    # strongly connected components, canonical order by least world
    if matrix.shape[0] == 0:
        return []
    _, labels = connected_components(csr_matrix(matrix), directed=True,
                                     connection='strong')
    groups = {}
    for w, label in enumerate(labels):
        groups.setdefault(label, []).append(w)
    return sorted((frozenset(ws) for ws in groups.values()), key=min)


class Skeleton(object):
    """
    Quotient of a frame by mutual reachability.

    :param clusters: clusters in canonical order
    :param order: pairs ``(i, j)``, ``i != j``, with cluster ``i`` below ``j``
    """
    def __init__(self, clusters, order):
        self.clusters = tuple(clusters)  #: clusters, sorted by least world
        self.order = frozenset(order)  #: strict order on cluster indices

    def cluster_of(self, a):
        for i, cluster in enumerate(self.clusters):
            if a in cluster:
                return i
        raise KFWorldRangeError(a, sum(len(c) for c in self.clusters))

    @property
    def height(self):
        """longest chain of clusters, 0 when there are none"""
        if not self.clusters:
            return 0
        poset = nx.DiGraph()
        poset.add_nodes_from(range(len(self.clusters)))
        poset.add_edges_from(self.order)
        return nx.dag_longest_path_length(poset) + 1

    def __str__(self):
        return '<Skeleton(clusters=%d, height=%d)>' % (len(self.clusters),
                                                       self.height)

    def __repr__(self):
        return str(self)


def skeleton(f):
    """
    Skeleton of a frame: its clusters (strongly connected components of
    ``R_F``) ordered by reachability between representatives.
    """
    union = union_relation(f)
    reach = star(union).matrix
    clusters = _components(union.matrix)
    reps = [min(c) for c in clusters]
    order = [(i, j) for i, a in enumerate(reps) for j, b in enumerate(reps)
             if i != j and reach[a, b]]
    return Skeleton(clusters, order)


def height(f):
    """Height of the skeleton of ``f``; 0 for the empty frame."""
    return skeleton(f).height


def transitivity_degree(f):
    """
    Least ``m`` with ``R_F^{m+1}`` contained in ``R_F^{<=m}``.

    :param f: frame
    :return: pretransitivity degree
    """
    r = union_relation(f).matrix
    within = np.eye(f.n, dtype=bool)  # R^{<=m}
    step = r.copy()  # R^{m+1}
    m = 0
    while (step & ~within).any():
        within = within | step
        step = bool_product(r, step)
        m += 1
    LOGGER.debug('transitivity degree %d on %d worlds', m, f.n)
    return m


def clusters_of(r, restricted_to):
    """
    Clusters of the preorder ``(r restricted)*`` on a world subset.

    :param r: relation
    :param restricted_to: world subset
    :return: list of clusters (sorted by least world) and the list of flags
        telling which clusters are maximal, i.e. reach no other cluster
    """
    worlds = sorted(world_set(r.n, restricted_to))
    if not worlds:
        return [], []
    idx = np.array(worlds, dtype=np.intp)
    sub = r.matrix[np.ix_(idx, idx)]
    reach = star(Relation.from_matrix(sub)).matrix
    clusters, maximal = [], []
    for local in _components(sub):
        members = sorted(local)
        inside = np.zeros(len(worlds), dtype=bool)
        inside[members] = True
        clusters.append(frozenset(worlds[j] for j in members))
        maximal.append(not (reach[members[0]] & ~inside).any())
    return clusters, maximal
