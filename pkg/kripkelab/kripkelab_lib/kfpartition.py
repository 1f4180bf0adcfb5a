# -*- coding: utf-8 -*-
"""
This module contains partitions of a frame's worlds, :class:`Partition`,
families of world sets, :class:`SubsetFamily`, and the bridge between them:
tuned partitions, the coarsest tuned refinement of a partition and the
subalgebra of the complex algebra generated by a list of world sets.

A partition is tuned in a frame when, for every relation and every pair of
blocks ``U, V``, either every world of ``U`` has a successor in ``V`` or none
has. The coarsest tuned refinement is computed by splitting blocks by their
reach profile until nothing changes; the subalgebra closure is the
brute-force worklist the refinement is checked against.
"""

import collections
import logging

import numpy as np

from kripkelab.kripkelab_lib import kfconstants
from kripkelab.kripkelab_lib.kfconstants import Verdict, world_set
from kripkelab.kripkelab_lib.kfexceptions import (
    KFBudgetExceededError, KFPartitionError, KFSizeMismatchError
)
from kripkelab.kripkelab_lib.kfframe import bool_product

LOGGER = logging.getLogger(__name__)

TunedWitness = collections.namedtuple('TunedWitness',
                                      ['U', 'V', 'a', 'modality'])


class Partition(object):
    """
    Partition of the worlds ``0..n-1`` into nonempty blocks, kept in
    canonical order (sorted by least world).

    :param n: world count
    :type n: int
    :param blocks: disjoint nonempty world sets covering the domain
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFPartitionError`
    """
    def __init__(self, n, blocks):
        blocks = [world_set(n, b) for b in blocks]
        if any(not b for b in blocks):
            raise KFPartitionError(blocks, 'empty block')
        if sum(len(b) for b in blocks) != n or \
                len(frozenset().union(*blocks)) != n:
            raise KFPartitionError(blocks, 'blocks must be disjoint and cover'
                                   ' 0..%d' % (n - 1))
        self.n = n  #: world count
        self.blocks = tuple(sorted(blocks, key=min))  #: canonical blocks

    @classmethod
    def from_labels(cls, labels):
        """Partition whose blocks are the worlds sharing a label."""
        groups = collections.OrderedDict()
        for w, label in enumerate(labels):
            groups.setdefault(label, []).append(w)
        return cls(len(labels), groups.values())

    @classmethod
    def from_string(cls, text, n=None):
        """
        Parse the text form ``"0,1|2"``; ``n`` defaults to the largest world
        plus one.
        """
        text = text.strip()
        try:
            blocks = [[int(w) for w in block.split(',')]
                      for block in text.split('|')] if text else []
        except ValueError:
            raise KFPartitionError(text, 'expected worlds like "0,1|2"')
        if n is None:
            n = max(max(b) for b in blocks) + 1 if blocks else 0
        return cls(n, blocks)

    @classmethod
    def trivial(cls, n):
        return cls(n, [range(n)] if n else [])

    @classmethod
    def discrete(cls, n):
        return cls(n, [[w] for w in range(n)])

    @property
    def labels(self):
        """block index of every world"""
        labels = np.empty(self.n, dtype=np.intp)
        for i, block in enumerate(self.blocks):
            labels[sorted(block)] = i
        return labels

    def block_of(self, a):
        for block in self.blocks:
            if a in block:
                return block
        raise KFPartitionError(self.blocks, 'world %r not covered' % (a,))

    def to_list(self):
        return [sorted(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __str__(self):
        return '|'.join(','.join(str(w) for w in sorted(b))
                        for b in self.blocks)

    def __repr__(self):
        return '<Partition(n=%d, %s)>' % (self.n, self)


class SubsetFamily(object):
    """
    Family of world sets over ``0..n-1``, e.g. a subalgebra of the complex
    algebra of a frame.
    """
    def __init__(self, n, members):
        self.n = n  #: world count
        self.members = frozenset(world_set(n, m) for m in members)  #: sets

    def atoms(self):
        """Minimal nonempty members, sorted by least world."""
        nonempty = [m for m in self.members if m]
        return sorted((m for m in nonempty
                       if not any(o < m for o in nonempty)), key=min)

    def issubset(self, other):
        return self.n == other.n and self.members <= other.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members, key=lambda m: (len(m), sorted(m))))

    def __contains__(self, worlds):
        return frozenset(worlds) in self.members

    def __eq__(self, other):
        if not isinstance(other, SubsetFamily):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.n, self.members))

    def __str__(self):
        return '<SubsetFamily(n=%d, members=%d)>' % (self.n, len(self))

    def __repr__(self):
        return str(self)


def induced_partition(n, sets):
    """
    Classes of worlds with the same membership in every given set.

    :param n: world count
    :param sets: list of world sets
    """
    profiles = np.zeros((n, len(sets)), dtype=bool)
    for j, ws in enumerate(sets):
        profiles[np.array(sorted(world_set(n, ws)), dtype=np.intp), j] = True
    return Partition.from_labels([p.tobytes() for p in profiles])


def refines(u, v):
    """Whether every block of ``u`` lies inside a block of ``v``."""
    if u.n != v.n:
        raise KFSizeMismatchError(u.n, v.n)
    labels = v.labels
    return all(len(set(labels[sorted(b)])) == 1 for b in u.blocks)


def _membership(u):
    member = np.zeros((u.n, len(u)), dtype=bool)
    member[np.arange(u.n), u.labels] = True
    return member


def is_tuned(f, u):
    """
    Check that ``u`` is tuned in ``f`` for every modality.

    :param f: frame
    :param u: partition of the frame's worlds
    :return: :class:`~kripkelab.kripkelab_lib.kfconstants.Verdict`, the
        witness is a :class:`TunedWitness` ``(U, V, a, modality)``: some
        world of ``U`` reaches ``V`` but ``a`` in ``U`` does not
    """
    if u.n != f.n:
        raise KFSizeMismatchError(u.n, f.n)
    member = _membership(u)
    for name in f.alphabet:
        reach = bool_product(f.matrix(name), member)
        for block in u.blocks:
            rows = reach[sorted(block)]
            mixed = np.flatnonzero(rows.any(axis=0) & ~rows.all(axis=0))
            if mixed.size:
                target = u.blocks[mixed[0]]
                a = min(w for w in block if not reach[w, mixed[0]])
                return Verdict.failed(TunedWitness(block, target, a, name))
    return Verdict.passed()


def _canonical(labels):
    # relabel by first occurrence so equal partitions get equal labels
    _, first, inverse = np.unique(labels, return_index=True,
                                  return_inverse=True)
    rank = np.empty(len(first), dtype=np.intp)
    rank[np.argsort(first)] = np.arange(len(first))
    return rank[inverse.reshape(-1)]


def coarsest_tuned_refinement(f, v):
    """
    Coarsest tuned refinement of ``v`` in ``f``: blocks are split by the set
    of ``(modality, block)`` pairs their worlds reach, until stable.

    :param f: frame
    :param v: partition to refine
    :return: :class:`Partition`
    """
    if v.n != f.n:
        raise KFSizeMismatchError(v.n, f.n)
    if f.n == 0:
        return v
    matrices = [f.matrix(name) for name in f.alphabet]
    labels = v.labels
    count = len(v)
    rounds = 0
    while True:
        member = np.zeros((f.n, count), dtype=bool)
        member[np.arange(f.n), labels] = True
        profile = [labels[:, np.newaxis]]
        profile.extend(bool_product(m, member) for m in matrices)
        _, split = np.unique(np.hstack([p.astype(np.intp) for p in profile]),
                             axis=0, return_inverse=True)
        split = _canonical(split.reshape(-1))
        rounds += 1
        if split.max() + 1 == count:
            break
        labels, count = split, split.max() + 1
    LOGGER.debug('refined %d blocks into %d in %d rounds', len(v), count,
                 rounds)
    return Partition.from_labels(labels)


def _bits(worlds):
    return sum(1 << int(w) for w in worlds)


def _unbits(n, bits):
    return frozenset(w for w in range(n) if bits >> w & 1)


def subalgebra_closure(f, generators):
    """
    Least family containing the generators and the empty set, closed under
    complement, union and the preimage of every relation.

    :param f: frame
    :param generators: list of world sets
    :return: :class:`SubsetFamily`
    """
    n = f.n
    full = (1 << n) - 1
    # predecessors of each world, per modality, as bit sets
    preds = [[_bits(np.flatnonzero(f.matrix(name)[:, w])) for w in range(n)]
             for name in f.alphabet]
    members = set()
    agenda = collections.deque([0, full])
    agenda.extend(_bits(world_set(n, g)) for g in generators)
    while agenda:
        s = agenda.popleft()
        if s in members:
            continue
        found = [full ^ s] + [s | t for t in members]
        for pred in preds:
            found.append(_bits_union(pred, s))
        members.add(s)
        agenda.extend(t for t in found if t not in members)
    LOGGER.debug('closure of %d generators has %d members', len(generators),
                 len(members))
    return SubsetFamily(n, (_unbits(n, s) for s in members))


def _bits_union(pred, s):
    result, w = 0, 0
    while s:
        if s & 1:
            result |= pred[w]
        s >>= 1
        w += 1
    return result


def subalgebra_from_partition(u):
    """All unions of blocks of ``u``: ``2^|u|`` sets."""
    blocks = u.blocks
    return SubsetFamily(u.n, (
        frozenset().union(*(blocks[i] for i in range(len(blocks))
                            if pick >> i & 1))
        for pick in range(1 << len(blocks))))


def set_partitions(n, max_blocks=None):
    """
    Label lists of all partitions of ``0..n-1`` with at most ``max_blocks``
    blocks, as restricted-growth strings in lexicographic order.
    """
    if max_blocks is None:
        max_blocks = n
    if n == 0:
        yield []
        return
    if max_blocks < 1:
        return
    labels = [0] * n
    highest = [0] * n  # highest label among labels[0..i]

    def extend(i):
        if i == n:
            yield list(labels)
            return
        top = min(highest[i - 1] + 1, max_blocks - 1)
        for label in range(top + 1):
            labels[i] = label
            highest[i] = max(highest[i - 1], label)
            for found in extend(i + 1):
                yield found

    for found in extend(1):
        yield found


def count_set_partitions(n, max_blocks):
    """Number of partitions of an ``n``-set into at most ``max_blocks``."""
    # Stirling numbers of the second kind, row by row
    row = [1] + [0] * max_blocks
    for i in range(1, n + 1):
        row = [0] + [j * row[j] + row[j - 1] for j in range(1, max_blocks + 1)]
    return sum(row)


def tunability_profile(f, k, budget=None, kfconst=None):
    """
    Largest coarsest tuned refinement over all partitions with at most
    ``2^k`` blocks.

    :param f: frame
    :param k: number of generators
    :param budget: max partitions to enumerate
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFBudgetExceededError`
    """
    budget = kfconstants.resolve(budget, kfconst, 'partition_budget')
    max_blocks = min(2 ** k, max(f.n, 1))
    needed = count_set_partitions(f.n, max_blocks)
    if needed > budget:
        raise KFBudgetExceededError(needed, budget)
    best = 0
    for labels in set_partitions(f.n, max_blocks):
        v = Partition.from_labels(labels)
        best = max(best, len(coarsest_tuned_refinement(f, v)))
    return best


def restrict_partition(u, ys):
    """
    Blocks of ``u`` inside ``ys``, renumbered like
    :func:`~kripkelab.kripkelab_lib.kfframe.restriction`.

    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFPartitionError`
        if a block meets both ``ys`` and its complement
    """
    ys = world_set(u.n, ys)
    index_map = dict((old, new) for new, old in enumerate(sorted(ys)))
    for block in u.blocks:
        if block & ys and block - ys:
            raise KFPartitionError(u.blocks, 'block %s straddles the subset'
                                   % sorted(block))
    return Partition(len(ys), [[index_map[w] for w in b]
                               for b in u.blocks if b <= ys])


def partitions_of(n, max_blocks=None):
    """Every partition of ``0..n-1`` as a :class:`Partition`."""
    return (Partition.from_labels(labels)
            for labels in set_partitions(n, max_blocks))


def meet(u, v):
    """Common refinement: worlds together iff together in both."""
    if u.n != v.n:
        raise KFSizeMismatchError(u.n, v.n)
    return Partition.from_labels(list(zip(u.labels.tolist(),
                                          v.labels.tolist())))

