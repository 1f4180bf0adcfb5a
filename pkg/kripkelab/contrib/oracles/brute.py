"""
Relation, partition and algebra oracles.
"""

import itertools

from kripkelab.kripkelab_lib.kfframe import Frame


def pairs_of(f, name):
    """Pairs of one relation of a frame as a plain set."""
    return set(f.relation(name).pairs)


def compose_pairs(r, s):
    """``{(a, c) | a r b and b s c for some b}``"""
    return set((a, c) for (a, b) in r for (b2, c) in s if b == b2)


def star_pairs(n, r):
    """Reflexive transitive closure by repeated composition."""
    closure = set((a, a) for a in range(n)) | set(r)
    while True:
        grown = closure | compose_pairs(closure, closure)
        if grown == closure:
            return closure
        closure = grown


def union_pairs(f):
    return set().union(*[pairs_of(f, name) for name in f.alphabet])


def clusters(n, r):
    """Mutual reachability classes of ``r*``, sorted by least world."""
    reach = star_pairs(n, r)
    found = []
    for a in range(n):
        cluster = frozenset(b for b in range(n)
                            if (a, b) in reach and (b, a) in reach)
        if cluster not in found:
            found.append(cluster)
    return found


def height(f):
    """Longest chain of clusters, found by depth-first search."""
    r = union_pairs(f)
    reach = star_pairs(f.n, r)
    found = clusters(f.n, r)

    def above(c):
        return [d for d in found if d != c and (min(c), min(d)) in reach]

    def chain(c):
        return 1 + max([chain(d) for d in above(c)] or [0])

    return max([chain(c) for c in found] or [0])


def transitivity_degree(f):
    """Least ``m`` such that every path of ``m + 1`` steps has a shortcut."""
    r = union_pairs(f)
    within = set((a, a) for a in range(f.n))
    step = set(r)
    m = 0
    while not step <= within:
        within |= step
        step = compose_pairs(r, step)
        m += 1
    return m


def all_partitions(worlds):
    """Every partition of a list of worlds, as lists of frozensets."""
    worlds = list(worlds)
    if not worlds:
        yield []
        return
    first, rest = worlds[0], worlds[1:]
    for smaller in all_partitions(rest):
        yield [frozenset([first])] + smaller
        for i, block in enumerate(smaller):
            yield smaller[:i] + [block | {first}] + smaller[i + 1:]


def is_tuned(f, blocks):
    """Every world of a block reaches the same blocks, per relation."""
    for name in f.alphabet:
        r = pairs_of(f, name)
        for u in blocks:
            for v in blocks:
                hits = [any((a, b) in r for b in v) for a in u]
                if any(hits) and not all(hits):
                    return False
    return True


def refines(finer, coarser):
    return all(any(u <= v for v in coarser) for u in finer)


def coarsest_tuned_refinement(f, blocks):
    """
    Tuned refinement of ``blocks`` with the fewest blocks, by enumerating
    every partition of the worlds.
    """
    best = None
    for candidate in all_partitions(range(f.n)):
        if refines(candidate, blocks) and is_tuned(f, candidate):
            if best is None or len(candidate) < len(best):
                best = candidate
    return sorted(best, key=min)


def closure(f, generators):
    """
    Subalgebra generated by world sets: closed under complement, union and
    the preimage of every relation, by a worklist.
    """
    top = frozenset(range(f.n))
    members = set()
    todo = [frozenset(), top] + [frozenset(g) for g in generators]
    while todo:
        x = todo.pop()
        if x in members:
            continue
        members.add(x)
        new = [top - x]
        new.extend(frozenset(a for a in range(f.n)
                             if any((a, b) in pairs_of(f, name) for b in x))
                   for name in f.alphabet)
        new.extend(x | y for y in list(members))
        todo.extend(y for y in new if y not in members)
    return members


def atoms(members):
    nonempty = [m for m in members if m]
    return sorted((m for m in nonempty if not any(o < m for o in nonempty)),
                  key=min)


def is_pmorphism(dom, cod, mapping):
    """Forth and back conditions checked pair by pair."""
    for name in dom.alphabet:
        r, s = pairs_of(dom, name), pairs_of(cod, name)
        for (a, b) in r:
            if (mapping[a], mapping[b]) not in s:
                return False
        for a in range(dom.n):
            for u in range(cod.n):
                if (mapping[a], u) in s and not any(
                        (a, b) in r and mapping[b] == u
                        for b in range(dom.n)):
                    return False
    return True


def subsets(n):
    """Every subset of ``0..n-1``."""
    for size in range(n + 1):
        for ys in itertools.combinations(range(n), size):
            yield frozenset(ys)


def restrict(f, ys):
    """Frame on the sorted worlds ``ys`` with the relations cut down."""
    ys = sorted(ys)
    index = dict((w, i) for i, w in enumerate(ys))
    return Frame(f.alphabet, len(ys), dict(
        (name, [(index[a], index[b]) for (a, b) in pairs_of(f, name)
                if a in index and b in index])
        for name in f.alphabet))
