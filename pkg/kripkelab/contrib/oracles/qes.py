"""
The defect construction computed from its definitions: stages from the
atoms of generated subalgebras, ranks by quantifying over all classes of all
stages and the separating set from the maximal clusters of each defective
class.
"""

from kripkelab.kripkelab_lib.kfframe import Frame
from kripkelab.contrib.oracles.brute import (
    atoms, closure, clusters, pairs_of, star_pairs
)


def defects(r, u):
    if not any((a, b) in r for a in u for b in u):
        return frozenset()
    return frozenset(c for c in u if not any((c, d) in r for d in u))


def stages(f, designated, generators=()):
    """
    Partitions and defect sets of every stage.

    :return: ``(partitions, defect_sets)``, partitions as lists of frozensets
    """
    r = pairs_of(f, designated)
    relations = dict((name, pairs_of(f, name)) for name in f.alphabet)
    relations[designated] = r | set((a, a) for a in range(f.n))
    companion = Frame(f.alphabet, f.n, relations)
    generators = [frozenset(g) for g in generators]
    partitions, defect_sets = [], []
    while True:
        blocks = atoms(closure(companion, generators + defect_sets))
        found = frozenset().union(*[defects(r, u) for u in blocks])
        partitions.append(blocks)
        defect_sets.append(found)
        if not found:
            return partitions, defect_sets


def separators(f, designated, generators=()):
    """
    ``Q``, ``E`` and ``S`` with the ranks of the worlds of ``Q``.

    :return: dict with keys ``Q``, ``E``, ``S``, ``rank``
    """
    r = pairs_of(f, designated)
    partitions, defect_sets = stages(f, designated, generators)
    q = frozenset().union(*defect_sets)
    every = set(u for blocks in partitions for u in blocks)
    defective = [v for v in every if defects(r, v)]
    rank = {}
    for n, found in enumerate(defect_sets):
        for a in found:
            u = [b for b in partitions[n] if a in b][0]
            rank[a] = len([v for v in defective if u < v and any(
                (x, y) in r for x in u for y in defects(r, v))])
    even = frozenset(a for a in q if rank[a] % 2 == 0)
    found_clusters = set()
    for v in defective:
        n = min(i for i, blocks in enumerate(partitions) if v in blocks)
        inside = (v - defect_sets[n]) & q
        sub = set((a, b) for (a, b) in r if a in inside and b in inside)
        reach = star_pairs(f.n, sub)
        for c in clusters(f.n, sub):
            if len(c) > 1 and c <= inside and not any(
                    (min(c), b) in reach and b not in c for b in inside):
                found_clusters.add(c)
    minimal = [c for c in found_clusters
               if not any(d < c for d in found_clusters)]
    separating = frozenset(min(c) for c in minimal)
    return {'Q': q, 'E': even, 'S': separating, 'rank': rank}
