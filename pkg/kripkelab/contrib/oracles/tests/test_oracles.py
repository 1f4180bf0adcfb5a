"""
Test the oracles on hand-checked frames and against each other.
"""

import logging

from kripkelab import *
from kripkelab.contrib.oracles import brute, extensions, qes

LOGGER = logging.getLogger(__name__)

CHAIN = Frame(['a'], 3, {'a': [(0, 1), (1, 2)]})
CYCLE = Frame(['a'], 2, {'a': [(0, 1), (1, 0)]})


def test_relations():
    r = brute.pairs_of(CHAIN, 'a')
    assert brute.compose_pairs(r, r) == set([(0, 2)])
    assert brute.star_pairs(3, r) == set(
        [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)])
    assert brute.clusters(2, brute.pairs_of(CYCLE, 'a')) == [
        frozenset([0, 1])]


def test_height_and_degree():
    assert brute.height(CHAIN) == 3
    assert brute.height(CYCLE) == 1
    assert brute.height(Frame(['a'], 0)) == 0
    assert brute.transitivity_degree(CHAIN) == 2
    assert brute.transitivity_degree(Frame(['a'], 3)) == 0


def test_partitions():
    assert len(list(brute.all_partitions(range(4)))) == 15
    assert list(brute.all_partitions([])) == [[]]
    assert brute.coarsest_tuned_refinement(CHAIN, [frozenset(range(3))]) == [
        frozenset([0]), frozenset([1]), frozenset([2])]
    assert brute.is_tuned(CYCLE, [frozenset([0, 1])])
    assert not brute.is_tuned(CHAIN, [frozenset([0, 1]), frozenset([2])])


def test_closure():
    members = brute.closure(Frame(['a'], 2, {'a': [(0, 1)]}), [])
    assert members == set([frozenset(), frozenset([0]), frozenset([1]),
                           frozenset([0, 1])])
    assert brute.atoms(members) == [frozenset([0]), frozenset([1])]
    assert len(brute.closure(CYCLE, [])) == 2


def test_is_pmorphism():
    point = Frame(['a'], 1, {'a': [(0, 0)]})
    assert brute.is_pmorphism(CYCLE, point, [0, 0])
    assert not brute.is_pmorphism(Frame(['a'], 2, {'a': [(0, 1)]}), point,
                                  [0, 0])


def test_restrict():
    sub = brute.restrict(CHAIN, [0, 2])
    assert sub.n == 2 and len(sub['a']) == 0
    assert len(list(brute.subsets(3))) == 8


def test_extensions():
    valuation = [frozenset([2])]
    assert extensions.extension(CHAIN, valuation, parse('<a>p0')) == \
        frozenset([1])
    assert extensions.valid(CYCLE, parse('p0 -> [a]<a>p0'))
    assert not extensions.valid(CHAIN, parse('[a]p0 -> p0'))
    assert extensions.subframe_valid(CHAIN, parse('[a][a][a]false'))
    assert not extensions.subframe_valid(CYCLE, parse('<a>true'))


def test_qes_oracle():
    f = Frame(['a'], 2, {'a': [(0, 1)]})
    partitions, defect_sets = qes.stages(f, 'a')
    assert partitions == [[frozenset([0, 1])],
                          [frozenset([0]), frozenset([1])]]
    assert defect_sets == [frozenset([1]), frozenset()]
    found = qes.separators(f, 'a')
    LOGGER.debug('separators of the 2-chain: %r', found)
    assert found == {'Q': frozenset([1]), 'E': frozenset([1]),
                     'S': frozenset(), 'rank': {1: 0}}


def test_qes_oracle_ranks():
    f = Frame(['a'], 3, {'a': [(0, 1), (0, 2), (1, 2)]})
    found = qes.separators(f, 'a')
    assert found['rank'] == {1: 1, 2: 0}
    assert found['E'] == frozenset([2])


def test_theta_blocks():
    assert extensions.theta_blocks(CHAIN, []) == [
        frozenset([0]), frozenset([1]), frozenset([2])]
    assert extensions.theta_blocks(CYCLE, []) == [frozenset([0, 1])]
    assert extensions.theta_blocks(CYCLE, [[0]]) == [
        frozenset([0]), frozenset([1])]
