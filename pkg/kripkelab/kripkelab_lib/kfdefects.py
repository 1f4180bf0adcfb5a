# -*- coding: utf-8 -*-
"""
This module contains the defect construction. Given a frame, one designated
relation ``R`` and generator sets ``P``, it computes three extra world sets
``Q``, ``E`` and ``S`` such that the subalgebra generated by ``P`` in the
frame embeds into the subalgebra generated by ``P, Q, E, S`` once ``R`` is
made reflexive. Every stage is kept in a :class:`QesTrace`, and the
``verify_*`` functions check the claims the construction rests on.

A defect of a world set ``U`` is a world of ``U`` without ``R``-successors in
``U``; a set without internal ``R``-edges has none. Stage ``n`` partitions
the worlds in the reflexive companion frame using ``P`` and the defect sets
of the earlier stages, collects the defects of its classes as ``Q_n`` and
stops when ``Q_n`` is empty.
"""

import collections
import logging

import numpy as np

from kripkelab.kripkelab_lib.kfconstants import Verdict, world_set
from kripkelab.kripkelab_lib.kfexceptions import (
    KFInvariantError, KFPreconditionError
)
from kripkelab.kripkelab_lib.kfframe import (
    clusters_of, reflexive_closure, star
)
from kripkelab.kripkelab_lib.kfpartition import (
    is_tuned, refines, subalgebra_closure
)
from kripkelab.kripkelab_lib.kfsemantics import Model, theta_partition

LOGGER = logging.getLogger(__name__)

DefectiveClass = collections.namedtuple('DefectiveClass', [
    'block', 'index', 'defects', 'rank', 'sigma_up', 'closure',
    'maximal_clusters'])
MainClaimWitness = collections.namedtuple('MainClaimWitness', [
    'block', 'index', 'a', 'in_defects', 'predicted'])


def defects(r, u):
    """
    Worlds of ``u`` with no ``r``-successor in ``u``, or the empty set when
    ``u`` has no internal edge.

    :param r: relation
    :type r: :class:`~kripkelab.kripkelab_lib.kfframe.Relation`
    :param u: world set
    """
    u = sorted(world_set(r.n, u))
    if not u:
        return frozenset()
    idx = np.array(u, dtype=np.intp)
    inner = r.matrix[np.ix_(idx, idx)]
    if not inner.any():
        return frozenset()
    return frozenset(u[j] for j in np.flatnonzero(~inner.any(axis=1)))


def _family(sets):
    return [sorted(s) for s in sets]


def _canonical_family(sets):
    return sorted(set(sets), key=lambda s: (min(s), sorted(s)))


def choose_separators(c_min, c_one):
    """
    Pick the separating worlds of the cluster families: the two least worlds
    of each minimal cluster give ``T+`` and ``T-``; clusters of ``c_one`` are
    visited from the outermost in, each taking its two least worlds not
    already picked by a cluster containing it, for ``S+`` and ``S-``.

    :param c_min: minimal clusters
    :param c_one: clusters above no minimal cluster (a laminar family)
    :return: ``(T+, T-, S+, S-)``
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFPreconditionError`
        when a cluster has fewer than two worlds to pick from
    """
    t_plus, t_minus = set(), set()
    for cluster in c_min:
        least = sorted(cluster)
        if len(least) < 2:
            raise KFPreconditionError('choose_separators', least)
        t_plus.add(least[0])
        t_minus.add(least[1])
    c_one = [frozenset(c) for c in c_one]
    depth = dict((c, sum(1 for d in c_one if c < d)) for c in c_one)
    picks = {}
    for cluster in sorted(c_one, key=lambda c: (depth[c], sorted(c))):
        used = set()
        for outer in c_one:
            if cluster < outer:
                used.update(picks[outer])
        free = sorted(cluster - used)
        if len(free) < 2:
            raise KFPreconditionError('choose_separators', sorted(cluster))
        picks[cluster] = (free[0], free[1])
    s_plus = frozenset(p[0] for p in picks.values())
    s_minus = frozenset(p[1] for p in picks.values())
    return frozenset(t_plus), frozenset(t_minus), s_plus, s_minus


class QesTrace(object):
    """
    Record of one run of the defect construction.

    :param frame: the frame ``F``
    :param designated: modality of the relation ``R``
    :param companion: ``F`` with ``R`` made reflexive
    :param generators: generator sets ``P``
    :param stages: partitions ``~_0 .. ~_N``
    :param defect_sets: ``Q_0 .. Q_N`` (``Q_N`` empty)
    """
    def __init__(self, frame, designated, companion, generators, stages,
                 defect_sets):
        self.frame = frame  #: frame F
        self.designated = designated  #: modality of R
        self.companion = companion  #: F with R reflexive
        self.generators = tuple(generators)  #: generator sets
        self.stages = tuple(stages)  #: partition of each stage
        self.defect_sets = tuple(defect_sets)  #: Q_n of each stage
        self.N = len(self.stages) - 1  #: first stage without defects
        self.Q = frozenset().union(*self.defect_sets)  #: all defects
        #: stage at which each world of Q is a defect
        self.index = dict((a, n) for n, q in enumerate(self.defect_sets)
                          for a in q)
        self._classify()

    @property
    def relation(self):
        """the designated relation R of F"""
        return self.frame.relation(self.designated)

    def _classify(self):
        r = self.relation
        #: defective classes with the stage they occur at
        self.defective = collections.OrderedDict()
        self._defects = {}
        for n, part in enumerate(self.stages):
            for block in part.blocks:
                found = defects(r, block)
                if found and block not in self.defective:
                    self.defective[block] = n
                    self._defects[block] = found
        #: rank of each world of Q
        self.rank = dict(
            (a, self.class_rank(self.stages[self.index[a]].block_of(a)))
            for a in self.Q)
        self.E = frozenset(a for a, rk in self.rank.items() if rk % 2 == 0)
        records, found_clusters = [], set()
        for block, n in self.defective.items():
            closure = (block - self.defect_sets[n]) & self.Q
            clusters, maximal = clusters_of(r, closure)
            tops = [c for c, top in zip(clusters, maximal) if top]
            found_clusters.update(c for c in tops if len(c) > 1)
            records.append(DefectiveClass(
                block, n, self._defects[block], self.class_rank(block),
                self.sigma_up(block), closure, tuple(tops)))
        self.defective_classes = tuple(records)  #: per defective class
        #: maximal clusters with more than one world
        self.clusters = tuple(_canonical_family(found_clusters))
        self.clusters_min = tuple(
            c for c in self.clusters if not any(d < c for d in self.clusters))
        self.clusters_0 = tuple(
            c for c in self.clusters if any(d <= c for d in self.clusters_min))
        self.clusters_1 = tuple(
            c for c in self.clusters if c not in self.clusters_0)
        self.T_plus, self.T_minus, self.S_plus, self.S_minus = \
            choose_separators(self.clusters_min, self.clusters_1)
        self.S = self.T_plus | self.S_plus

    def sigma_up(self, u):
        """
        Defective classes strictly containing ``u`` whose defects some world
        of ``u`` reaches by ``R``, outermost first.
        """
        r = self.relation.matrix
        rows = np.array(sorted(u), dtype=np.intp)
        found = [v for v, found in self._defects.items()
                 if u < v and r[np.ix_(rows, sorted(found))].any()]
        return sorted(found, key=lambda v: (-len(v), sorted(v)))

    def class_rank(self, u):
        return len(self.sigma_up(u))

    def to_dict(self):
        """Trace as JSON-ready data; world maps use string keys."""
        return {
            'frame': self.frame.to_dict(),
            'designated': self.designated,
            'generators': _family(self.generators),
            'stages': [{'partition': part.to_list(), 'defects': sorted(q)}
                       for part, q in zip(self.stages, self.defect_sets)],
            'N': self.N,
            'Q': sorted(self.Q),
            'index': dict((str(a), n) for a, n in sorted(self.index.items())),
            'rank': dict((str(a), rk) for a, rk in sorted(self.rank.items())),
            'E': sorted(self.E),
            'defective_classes': [{
                'class': sorted(rec.block), 'index': rec.index,
                'defects': sorted(rec.defects), 'rank': rec.rank,
                'sigma_up': _family(rec.sigma_up),
                'closure': sorted(rec.closure),
                'maximal_clusters': _family(rec.maximal_clusters)
            } for rec in self.defective_classes],
            'clusters': _family(self.clusters),
            'clusters_min': _family(self.clusters_min),
            'clusters_0': _family(self.clusters_0),
            'clusters_1': _family(self.clusters_1),
            'T_plus': sorted(self.T_plus), 'T_minus': sorted(self.T_minus),
            'S_plus': sorted(self.S_plus), 'S_minus': sorted(self.S_minus),
            'S': sorted(self.S)
        }

    def __str__(self):
        return '<QesTrace(%s, N=%d, Q=%s, E=%s, S=%s)>' % (
            self.designated, self.N, sorted(self.Q), sorted(self.E),
            sorted(self.S))

    def __repr__(self):
        return str(self)


def run_qes(f, designated, generators=()):
    """
    Run the defect construction for one designated relation.

    :param f: frame
    :param designated: modality name of ``R``
    :param generators: generator world sets
    :return: :class:`QesTrace`
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFAlphabetError`
        for an unknown modality
    """
    r = f.relation(designated)
    companion = reflexive_closure(f, [designated])
    generators = [world_set(f.n, g) for g in generators]
    stages, defect_sets = [], []
    while True:
        part = theta_partition(Model(companion, generators + defect_sets))
        found = frozenset().union(*[defects(r, b) for b in part.blocks])
        stages.append(part)
        defect_sets.append(found)
        LOGGER.debug('stage %d: %d classes, defects %s', len(stages) - 1,
                     len(part), sorted(found))
        if not found:
            break
        if len(stages) > f.n:
            raise KFInvariantError('run_qes', 'no termination after %d'
                                   ' stages' % len(stages))
    return QesTrace(f, designated, companion, generators, stages,
                    defect_sets)


def verify_main_claim(t):
    """
    Check, for every defective class ``V`` of stage ``n`` and ``a`` in ``V``,
    that ``a`` is in ``Q_n`` iff the worlds ``R_V*``-reachable from ``a`` lie
    in ``Q`` and are uniform with respect to ``E`` and to ``S``.

    :return: :class:`~kripkelab.kripkelab_lib.kfconstants.Verdict` with a
        :class:`MainClaimWitness`
    """
    r = t.relation
    for block, n in t.defective.items():
        reach = star(r.restrict(block))
        for a in sorted(block):
            cone = reach.successors(a)
            predicted = (cone <= t.Q and
                         (cone <= t.E or not cone & t.E) and
                         (cone <= t.S or not cone & t.S))
            actual = a in t.defect_sets[n]
            if predicted != actual:
                return Verdict.failed(MainClaimWitness(
                    sorted(block), n, a, actual, predicted))
    return Verdict.passed()


def verify_embedding(t):
    """
    Check that the subalgebra generated by ``P`` in ``F`` lies inside the one
    generated by ``P, Q, E, S`` in the reflexive companion.

    :return: :class:`~kripkelab.kripkelab_lib.kfconstants.Verdict`, the
        witness is a missing member
    """
    small = subalgebra_closure(t.frame, t.generators)
    big = subalgebra_closure(t.companion,
                             list(t.generators) + [t.Q, t.E, t.S])
    missing = small.members - big.members
    if missing:
        return Verdict.failed(sorted(min(missing, key=sorted)))
    return Verdict.passed()


def verify_final_partition(t):
    """
    Check that the last partition has no defective class and is tuned in
    ``F`` itself.
    """
    last = t.stages[-1]
    for block in last.blocks:
        if defects(t.relation, block):
            return Verdict.failed(('defective', sorted(block)))
    verdict = is_tuned(t.frame, last)
    if not verdict:
        return Verdict.failed(('untuned', verdict.witness))
    return Verdict.passed()


def trace_invariants(t):
    """
    Structural properties every trace has.

    :return: ordered dict of named
        :class:`~kripkelab.kripkelab_lib.kfconstants.Verdict`
    """
    r = t.relation
    checks = collections.OrderedDict()
    checks['monotone'] = Verdict.passed()
    for n in range(t.N):
        if not refines(t.stages[n + 1], t.stages[n]):
            checks['monotone'] = Verdict.failed(n + 1)
            break
    checks['disjoint'] = Verdict.passed()
    for i, qi in enumerate(t.defect_sets):
        for j in range(i + 1, len(t.defect_sets)):
            if qi & t.defect_sets[j]:
                checks['disjoint'] = Verdict.failed((i, j))
    ok = t.N <= t.frame.n and not t.defect_sets[-1]
    checks['termination'] = Verdict(ok, None if ok else t.N)
    checks['detached_defects'] = Verdict.passed()
    for n, part in enumerate(t.stages):
        for block in part.blocks:
            found = defects(r, block)
            for a in found:
                for m in range(n + 1, t.N + 1):
                    later = t.stages[m].block_of(a)
                    if not later <= found or defects(r, later):
                        checks['detached_defects'] = Verdict.failed(
                            (sorted(block), a, m))
    checks['rank_ladder'] = Verdict.passed()
    for rec in t.defective_classes:
        for a in sorted(rec.block & t.Q):
            rk = t.rank[a]
            below = [b for b in rec.block & t.Q
                     if r.matrix[a, b] and t.rank[b] == rk - 1]
            if rk < rec.rank or (rk > rec.rank and not below):
                checks['rank_ladder'] = Verdict.failed((sorted(rec.block), a))
    checks['laminar'] = Verdict.passed()
    for c in t.clusters:
        for d in t.clusters:
            if c & d and not (c <= d or d <= c):
                checks['laminar'] = Verdict.failed((sorted(c), sorted(d)))
    checks['separated'] = Verdict.passed()
    for c in t.clusters:
        if not c & t.S or c <= t.S:
            checks['separated'] = Verdict.failed(sorted(c))
    checks['finite_degenerate'] = Verdict(
        not t.clusters_1, _family(t.clusters_1) or None)
    return checks


def run_qes_all(f, generators=()):
    """
    Make every relation reflexive in turn, in alphabet order, each step
    running the defect construction on the previous step's companion with the
    generators grown by its ``Q, E, S``.

    :return: list of :class:`QesTrace` and the final ``k + 3|A|`` generators
    """
    generators = [world_set(f.n, g) for g in generators]
    traces = []
    frame = f
    for name in f.alphabet:
        trace = run_qes(frame, name, generators)
        traces.append(trace)
        generators = generators + [trace.Q, trace.E, trace.S]
        frame = trace.companion
    return traces, generators


def verify_embedding_all(f, generators=()):
    """
    Check that the subalgebra generated by ``P`` in ``F`` lies inside the one
    generated by the ``k + 3|A|`` sets of :func:`run_qes_all` in ``F^r``.
    """
    _, grown = run_qes_all(f, generators)
    small = subalgebra_closure(f, generators)
    big = subalgebra_closure(reflexive_closure(f), grown)
    missing = small.members - big.members
    if missing:
        return Verdict.failed(sorted(min(missing, key=sorted)))
    return Verdict.passed()
