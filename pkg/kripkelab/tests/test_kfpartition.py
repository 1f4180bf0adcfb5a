"""
Test partitions, tuned refinements and generated subalgebras.
"""

from kripkelab import *
from kripkelab.kripkelab_lib.kfframe import height, restriction
from kripkelab.kripkelab_lib.kfpartition import (
    SubsetFamily, count_set_partitions, coarsest_tuned_refinement,
    induced_partition, is_tuned, meet, partitions_of, refines,
    restrict_partition, set_partitions, subalgebra_closure,
    subalgebra_from_partition, tunability_profile
)
from kripkelab.kripkelab_lib.kfexceptions import (
    KFBudgetExceededError, KFPartitionError, KFSizeMismatchError
)
from kripkelab.kripkelab_cli.kfgenerators import (
    omega_truncation, random_frame, random_partition
)
from hypothesis import given, settings
from hypothesis import strategies as st
import numpy as np
import pytest


def chain(n):
    return Frame(['a'], n, {'a': [(a, a + 1) for a in range(n - 1)]})


def test_partition_forms():
    u = Partition.from_string('2|0,1')
    assert u.blocks == (frozenset([0, 1]), frozenset([2]))
    assert str(u) == '0,1|2'
    assert u.to_list() == [[0, 1], [2]]
    assert u.labels.tolist() == [0, 0, 1]
    assert Partition.from_labels(['x', 'y', 'x']) == \
        Partition.from_string('0,2|1')
    assert Partition.from_string('', 0) == Partition.trivial(0)
    assert len(Partition.discrete(3)) == 3


def test_partition_errors():
    for text in ('0,1|1', '0|2', 'a|b'):
        with pytest.raises(KFPartitionError):
            Partition.from_string(text, 3)
    with pytest.raises(KFPartitionError):
        Partition(2, [[0, 1], []])
    with pytest.raises(KFPartitionError):
        Partition.trivial(2).block_of(5)


def test_refines():
    assert refines(Partition.discrete(3), Partition.trivial(3))
    assert not refines(Partition.trivial(3), Partition.discrete(3))
    assert refines(Partition.from_string('0|1|2'),
                   Partition.from_string('0,1|2'))
    with pytest.raises(KFSizeMismatchError):
        refines(Partition.trivial(2), Partition.trivial(3))


def test_meet():
    assert meet(Partition.from_string('0,1|2'),
                Partition.from_string('0|1,2')) == Partition.discrete(3)


def test_induced_partition():
    assert induced_partition(3, []) == Partition.trivial(3)
    assert induced_partition(4, [[0, 1], [1, 2]]) == \
        Partition.from_string('0|1|2|3')
    assert induced_partition(3, [[0, 2]]) == Partition.from_string('0,2|1')


def test_is_tuned():
    assert is_tuned(chain(2), Partition.discrete(2))
    verdict = is_tuned(chain(2), Partition.trivial(2))
    assert not verdict
    assert verdict.witness.a == 1
    assert verdict.witness.modality == 'a'
    assert verdict.witness.U == frozenset([0, 1])


def test_coarsest_tuned_refinement():
    assert coarsest_tuned_refinement(chain(3), Partition.trivial(3)) == \
        Partition.discrete(3)
    full = Frame(['a'], 4, {'a': Relation.full(4)})
    v = Partition.from_string('0,1|2,3')
    assert coarsest_tuned_refinement(full, v) == v
    empty = Frame(['a'], 0)
    assert coarsest_tuned_refinement(empty, Partition.trivial(0)) == \
        Partition.trivial(0)


@given(st.integers(0, 2 ** 31 - 1), st.integers(1, 6),
       st.sampled_from([0.2, 0.4, 0.7]))
@settings(max_examples=50, deadline=None)
def test_refinement_is_coarsest_tuned(seed, n, density):
    rng = np.random.default_rng(seed)
    f = random_frame(rng, n, ['a', 'b'], density)
    v = random_partition(rng, n, 3)
    u = coarsest_tuned_refinement(f, v)
    assert is_tuned(f, u)
    assert refines(u, v)
    # every tuned refinement of v refines u
    for w in partitions_of(n):
        if refines(w, v) and is_tuned(f, w):
            assert refines(w, u)


@given(st.integers(0, 2 ** 31 - 1), st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_closure_atoms_are_refinement_blocks(seed, n):
    rng = np.random.default_rng(seed)
    f = random_frame(rng, n, ['a'], 0.4)
    gens = [[w for w in range(n) if rng.random() < 0.5] for _ in range(2)]
    closure = subalgebra_closure(f, gens)
    refined = coarsest_tuned_refinement(f, induced_partition(n, gens))
    assert closure.atoms() == list(refined.blocks)
    assert closure == subalgebra_from_partition(refined)


@given(st.integers(0, 2 ** 31 - 1), st.integers(1, 5), st.booleans())
@settings(max_examples=80, deadline=None)
def test_tuned_iff_unions_closed_under_preimage(seed, n, refine):
    rng = np.random.default_rng(seed)
    f = random_frame(rng, n, ['a', 'b'], 0.4)
    u = random_partition(rng, n, 3)
    if refine:
        u = coarsest_tuned_refinement(f, u)
    unions = subalgebra_from_partition(u)
    closed = all(f.relation(name).preimage(x) in unions.members
                 for x in unions.members for name in f.alphabet)
    assert bool(is_tuned(f, u)) == closed


@given(st.integers(0, 2 ** 31 - 1), st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_restricted_tuned_partition_stays_tuned(seed, n):
    rng = np.random.default_rng(seed)
    f = random_frame(rng, n, ['a'], 0.4)
    u = coarsest_tuned_refinement(f, random_partition(rng, n, 2))
    picked = [b for b in u.blocks if rng.random() < 0.5] or [u.blocks[0]]
    ys = frozenset().union(*picked)
    sub, _ = restriction(f, ys)
    assert is_tuned(sub, restrict_partition(u, ys))


def test_subalgebra_closure():
    closure = subalgebra_closure(chain(2), [])
    assert closure.members == frozenset(
        [frozenset(), frozenset([0]), frozenset([1]), frozenset([0, 1])])
    assert closure.atoms() == [frozenset([0]), frozenset([1])]
    full = Frame(['a'], 3, {'a': Relation.full(3)})
    assert len(subalgebra_closure(full, [])) == 2
    assert [0] in subalgebra_closure(full, [[0]])


def test_subset_family():
    fam = SubsetFamily(3, [[0], [0, 1], []])
    assert fam.atoms() == [frozenset([0])]
    assert fam.issubset(SubsetFamily(3, [[0], [0, 1], [], [2]]))
    assert list(fam) == [frozenset(), frozenset([0]), frozenset([0, 1])]


def test_set_partitions():
    assert list(set_partitions(0)) == [[]]
    assert list(set_partitions(3)) == [
        [0, 0, 0], [0, 0, 1], [0, 1, 0], [0, 1, 1], [0, 1, 2]]
    assert len(list(set_partitions(4, 2))) == count_set_partitions(4, 2) == 8
    assert count_set_partitions(5, 5) == 52
    assert list(set_partitions(2, 0)) == []


def test_tunability_profile():
    assert tunability_profile(Frame(['a'], 0), 1) == 0
    assert tunability_profile(chain(3), 0) == 3
    full = Frame(['a'], 4, {'a': Relation.full(4)})
    assert tunability_profile(full, 1) == 2
    with pytest.raises(KFBudgetExceededError):
        tunability_profile(chain(4), 2, budget=3)


def test_profile_of_omega_truncation():
    for n in range(2, 6):
        f = omega_truncation(n)
        assert tunability_profile(f, 1) <= 3
        assert height(restriction(f, range(n))[0]) == n


def test_restrict_partition():
    u = Partition.from_string('0,1|2|3')
    assert restrict_partition(u, [2, 3]) == Partition.discrete(2)
    assert restrict_partition(u, [0, 1]) == Partition.trivial(2)
    with pytest.raises(KFPartitionError):
        restrict_partition(u, [1, 2])
