"""
Test sums, lexicographic sums, the transfer of tuned partitions,
p-morphisms and covers.
"""

from kripkelab import *
from kripkelab.kripkelab_lib.kfsums import (
    disjoint_sum, find_root, is_pmorphism, lex_as_sum, lex_product, lex_sum,
    oplus_cover, phi_conditions, star_factorizes, sum_over_index,
    transfer_partition, transfer_stages
)
from kripkelab.kripkelab_lib.kfpartition import is_tuned
from kripkelab.kripkelab_lib.kfexceptions import (
    KFAlphabetError, KFFrameError, KFPreconditionError, KFSizeMismatchError
)
import pytest


def chain(n, name='a'):
    return Frame([name], n, {name: [(a, a + 1) for a in range(n - 1)]})


def two_level():
    # v: 0,1 -> 2 and h: 0 -> 1
    return Frame(['v', 'h'], 3, {'v': [(0, 2), (1, 2)], 'h': [(0, 1)]})


def test_disjoint_sum():
    s = disjoint_sum([chain(2), chain(2)])
    assert s.frame['a'].pairs == frozenset([(0, 1), (2, 3)])
    assert s.index_of == (0, 0, 1, 1)
    assert s.inner_of == (0, 1, 0, 1)
    assert s.world(1, 1) == 3
    assert disjoint_sum([], ['a']).frame.n == 0
    with pytest.raises(KFAlphabetError):
        disjoint_sum([])
    with pytest.raises(KFAlphabetError):
        disjoint_sum([chain(2), chain(2, 'b')])


def test_sum_over_index():
    index = Frame(['a'], 2, {'a': [(0, 1), (0, 0)]})
    s = sum_over_index(index, [chain(2), Frame(['a'], 1)])
    assert s.frame['a'].pairs == frozenset([(0, 1), (0, 2), (1, 2)])
    assert s.layout == (range(0, 2), range(2, 3))
    with pytest.raises(KFSizeMismatchError):
        sum_over_index(index, [chain(2)])


def test_lex_sum():
    index = Frame(['v'], 2, {'v': [(0, 1), (1, 1)]})
    summands = [Frame(['h'], 1), chain(2, 'h')]
    lex = lex_sum(index, summands)
    assert lex.alphabet == ('v', 'h')
    assert lex['v'].pairs == frozenset(
        [(0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (2, 2)])
    assert lex['h'].pairs == frozenset([(1, 2)])
    assert lex_as_sum(index, summands).frame == lex


def test_lex_sum_errors():
    index = Frame(['v'], 2)
    with pytest.raises(KFAlphabetError):
        lex_sum(index, [chain(1, 'v'), chain(1, 'v')])
    with pytest.raises(KFFrameError):
        lex_sum(Frame(['v'], 0), [])
    with pytest.raises(KFSizeMismatchError):
        lex_sum(index, [chain(1, 'h')])


def test_lex_product():
    index = Frame(['v'], 2, {'v': [(0, 1)]})
    lex = lex_product(index, chain(2, 'h'))
    assert lex.n == 4
    assert lex['h'].pairs == frozenset([(0, 1), (2, 3)])
    assert len(lex['v']) == 4


def test_transfer_stages():
    index = Frame(['a'], 2, {'a': [(0, 1)]})
    s = sum_over_index(index, [chain(2), Frame(['a'], 1)])
    stages = transfer_stages(s, Partition.trivial(3), check=True)
    assert stages['v'] == Partition.from_string('0|1,2')
    assert stages['S'] == Partition.discrete(3)
    report = stages['report']
    assert report['tuned'] and report['refines_v0']
    assert report['bound'] and report['profile_bound']
    assert (report['v'], report['u'], report['S']) == (2, 2, 3)


def test_transfer_coarse_on_clusters():
    full = Frame(['a'], 2, {'a': Relation.full(2)})
    index = Frame(['a'], 2, {'a': [(0, 1)]})
    s = sum_over_index(index, [full, full])
    stages = transfer_stages(s, Partition.trivial(4), check=True)
    assert stages['S'] == Partition.from_string('0,1|2,3')
    assert is_tuned(s.frame, stages['S'])


def test_transfer_preconditions():
    index = Frame(['a'], 2, {'a': [(0, 1)]})
    s = sum_over_index(index, [chain(2), Frame(['a'], 1)])
    with pytest.raises(KFPreconditionError):
        transfer_partition(s, Partition.trivial(3), Partition.discrete(2))
    with pytest.raises(KFPreconditionError):
        transfer_partition(s, Partition.from_string('0|1,2'),
                           Partition.trivial(2))


def test_is_pmorphism():
    point = Frame(['a'], 1, {'a': [(0, 0)]})
    verdict = is_pmorphism(WorldMap(chain(2), point, [0, 0]))
    assert not verdict
    assert verdict.witness.condition == 'lift'
    assert (verdict.witness.a, verdict.witness.target) == (1, 0)
    f = chain(3)
    assert is_pmorphism(WorldMap(f, f, [0, 1, 2]))
    verdict = is_pmorphism(WorldMap(f, Frame(['a'], 1), [0, 0, 0]))
    assert verdict.witness.condition == 'forth'
    cycle = Frame(['a'], 2, {'a': [(0, 1), (1, 0)]})
    assert is_pmorphism(WorldMap(cycle, point, [0, 0]))


def test_world_map():
    f = chain(2)
    assert WorldMap(f, f, [0, 1]).surjective
    assert not WorldMap(f, f, [0, 0]).surjective
    with pytest.raises(KFSizeMismatchError):
        WorldMap(f, f, [0])


def test_phi_conditions():
    f = Frame(['v', 'h'], 2, {'v': [(0, 1)], 'h': [(1, 0)]})
    verdict = phi_conditions(f, ['v'], ['h'])
    assert not verdict
    assert verdict.witness.condition == 'h;v'
    assert verdict.witness.pair == (1, 1)
    assert phi_conditions(two_level(), ['v'], ['h'])
    with pytest.raises(KFAlphabetError):
        phi_conditions(f, ['v'], ['v'])
    with pytest.raises(KFAlphabetError):
        phi_conditions(f, ['v'], [])


def test_star_factorizes():
    assert star_factorizes(two_level(), ['v'], ['h'])
    f = Frame(['v', 'h'], 3, {'v': [(1, 2)], 'h': [(0, 1)]})
    assert not phi_conditions(f, ['v'], ['h'])
    assert not star_factorizes(f, ['v'], ['h'])


def test_find_root():
    assert find_root(two_level()) == 0
    assert find_root(Frame(['a'], 2)) is None
    assert find_root(chain(3)) == 0


def test_cover_of_lex_sum_is_identity():
    f = two_level()
    cover = oplus_cover(f, 0, ['v'], ['h'])
    assert cover['frame'] == f
    assert cover['map'].mapping == (0, 1, 2)
    assert cover['index_of'] == [0, 0, 2]
    assert cover['report'] == {
        'worlds': 3, 'pmorphism': True, 'pmorphism_witness': None,
        'surjective': True, 'star_factorizes': True}


def test_cover_unravels_shared_cones():
    f = Frame(['v', 'h'], 3, {'v': [(0, 1), (0, 2)], 'h': [(1, 2)]})
    cover = oplus_cover(f, 0, ['v'], ['h'])
    assert cover['frame'].n == 4
    assert cover['map'].mapping == (0, 1, 2, 2)
    assert cover['index_of'] == [0, 1, 1, 2]
    assert cover['report']['pmorphism']
    assert cover['report']['surjective']


def test_cover_preconditions():
    f = Frame(['v', 'h'], 2, {'v': [(0, 1)], 'h': [(1, 0)]})
    with pytest.raises(KFPreconditionError):
        oplus_cover(f, 0, ['v'], ['h'])
    g = Frame(['v', 'h'], 2)
    with pytest.raises(KFPreconditionError):
        oplus_cover(g, 0, ['v'], ['h'])
