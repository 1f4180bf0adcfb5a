"""
Test the defect construction and its checks.
"""

from kripkelab import *
from kripkelab.kripkelab_lib.kfdefects import (
    choose_separators, defects, run_qes, run_qes_all, trace_invariants,
    verify_embedding, verify_embedding_all, verify_final_partition,
    verify_main_claim
)
from kripkelab.kripkelab_lib.kfexceptions import (
    KFAlphabetError, KFPreconditionError
)
from kripkelab.kripkelab_cli.kfgenerators import random_frame
from hypothesis import given, settings
from hypothesis import strategies as st
import json
import numpy as np
import os
import pytest

BASEDIR = os.path.dirname(__file__)
TWO_CHAIN = os.path.join(BASEDIR, 'qes_two_chain.json')


def two_chain():
    return Frame(['a'], 2, {'a': [(0, 1)]})


def three_chain():
    # irreflexive and transitive
    return Frame(['a'], 3, {'a': [(0, 1), (0, 2), (1, 2)]})


def test_defects():
    r = Relation(3, [(0, 1)])
    assert defects(r, [0, 1, 2]) == frozenset([1, 2])
    assert defects(r, [0, 2]) == frozenset()
    assert defects(r, []) == frozenset()
    assert defects(Relation(2, [(1, 1)]), [0, 1]) == frozenset([0])


def test_two_chain_trace():
    t = run_qes(two_chain(), 'a')
    assert [p.to_list() for p in t.stages] == [[[0, 1]], [[0], [1]]]
    assert t.defect_sets == (frozenset([1]), frozenset())
    assert t.N == 1
    assert t.Q == frozenset([1])
    assert t.index == {1: 0}
    assert t.rank == {1: 0}
    assert t.E == frozenset([1])
    assert t.clusters == ()
    assert t.S == frozenset()
    (rec,) = t.defective_classes
    assert rec.block == frozenset([0, 1])
    assert (rec.index, rec.defects, rec.rank) == (0, frozenset([1]), 0)
    assert rec.closure == frozenset()
    assert t.companion['a'].pairs == frozenset([(0, 0), (0, 1), (1, 1)])


def test_two_chain_golden():
    with open(TWO_CHAIN, 'r') as fp:
        expected = json.load(fp)
    calculated = json.loads(json.dumps(run_qes(two_chain(), 'a').to_dict()))
    assert calculated == expected


def test_three_chain_ranks():
    t = run_qes(three_chain(), 'a')
    assert [sorted(q) for q in t.defect_sets] == [[2], [1], []]
    assert t.index == {2: 0, 1: 1}
    assert t.rank == {1: 1, 2: 0}
    assert t.E == frozenset([2])
    inner = frozenset([0, 1])
    assert t.defective[inner] == 1
    assert t.sigma_up(inner) == [frozenset([0, 1, 2])]
    assert t.class_rank(inner) == 1
    assert verify_main_claim(t)
    assert verify_embedding(t)
    assert verify_final_partition(t)
    assert all(trace_invariants(t).values())


def test_main_claim_detects_wrong_parity():
    t = run_qes(three_chain(), 'a')
    t.E = frozenset()
    verdict = verify_main_claim(t)
    assert not verdict
    assert verdict.witness.a == 1
    assert verdict.witness.index == 0
    assert not verdict.witness.in_defects and verdict.witness.predicted


def test_reflexive_relation_has_no_defects():
    f = Frame(['a'], 3, {'a': Relation.full(3)})
    t = run_qes(f, 'a')
    assert t.N == 0
    assert t.Q == t.E == t.S == frozenset()
    assert not t.defective_classes


def test_generators():
    t = run_qes(two_chain(), 'a', [[0]])
    assert t.stages[0] == Partition.discrete(2)
    assert t.N == 0
    assert verify_embedding(t)
    with pytest.raises(KFAlphabetError):
        run_qes(two_chain(), 'b')


def test_choose_separators():
    c_min = [frozenset([0, 1]), frozenset([5, 6])]
    c_one = [frozenset([2, 3, 4, 7]), frozenset([3, 4, 7])]
    t_plus, t_minus, s_plus, s_minus = choose_separators(c_min, c_one)
    assert (t_plus, t_minus) == (frozenset([0, 5]), frozenset([1, 6]))
    assert (s_plus, s_minus) == (frozenset([2, 4]), frozenset([3, 7]))
    assert choose_separators([], []) == (frozenset(),) * 4


def test_choose_separators_needs_two_worlds():
    with pytest.raises(KFPreconditionError):
        choose_separators([frozenset([0])], [])
    with pytest.raises(KFPreconditionError):
        choose_separators([], [frozenset([0, 1, 2]), frozenset([1, 2])])


def test_run_qes_all():
    f = Frame(['a', 'b'], 3, {'a': [(0, 1)], 'b': [(1, 2)]})
    traces, grown = run_qes_all(f, [[0]])
    assert [t.designated for t in traces] == ['a', 'b']
    assert len(grown) == 1 + 3 * 2
    assert traces[1].frame == traces[0].companion
    assert verify_embedding_all(f, [[0]])


@given(st.integers(0, 2 ** 31 - 1), st.integers(1, 5),
       st.sampled_from([0.2, 0.4, 0.6]))
@settings(max_examples=40, deadline=None)
def test_random_traces(seed, n, density):
    rng = np.random.default_rng(seed)
    f = random_frame(rng, n, ['a'], density)
    t = run_qes(f, 'a')
    assert verify_main_claim(t)
    assert verify_embedding(t)
    assert verify_final_partition(t)
    for name, verdict in trace_invariants(t).items():
        assert verdict, (name, verdict.witness)


if __name__ == '__main__':
    with open(TWO_CHAIN, 'w') as fp:
        json.dump(run_qes(two_chain(), 'a').to_dict(), fp, sort_keys=True,
                  indent=2)
        fp.write('\n')
