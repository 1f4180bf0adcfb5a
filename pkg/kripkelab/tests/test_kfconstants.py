"""
Test configuration constants and shared helpers.
"""

from kripkelab import *
from kripkelab.kripkelab_lib.kfconstants import (
    CAP, Verdict, as_mask, as_worlds, resolve, world_set
)
from kripkelab.kripkelab_lib.kfexceptions import (
    KFValidationError, KFWorldRangeError
)
import numpy as np
import pytest


def test_defaults():
    kfconst = KFconstants()
    assert kfconst.cap == CAP == 22
    assert kfconst.partition_budget > 0
    assert not kfconst.check_invariants
    assert str(kfconst).startswith('<KFconstants(cap=22')


def test_setters_validate():
    kfconst = KFconstants()
    kfconst.cap = 10
    assert kfconst.cap == 10
    for bad in (0, -1, 2.5, True, None):
        with pytest.raises(KFValidationError):
            kfconst.cap = bad
    with pytest.raises(KFValidationError):
        KFconstants(chunk=0)


def test_resolve():
    kfconst = KFconstants(cap=7)
    assert resolve(3, kfconst, 'cap') == 3
    assert resolve(None, kfconst, 'cap') == 7
    assert resolve(None, None, 'cap') == CAP


def test_verdict():
    assert Verdict.passed()
    assert Verdict.passed().witness is None
    failed = Verdict.failed({'world': 1})
    assert not failed
    assert failed.witness == {'world': 1}


def test_masks():
    mask = as_mask(4, [0, 2])
    assert mask.tolist() == [True, False, True, False]
    assert as_worlds(mask) == frozenset([0, 2])
    assert as_worlds(np.zeros(0, dtype=bool)) == frozenset()
    with pytest.raises(KFWorldRangeError):
        as_mask(2, [2])


def test_world_set():
    assert world_set(3, range(3)) == frozenset([0, 1, 2])
    assert world_set(0, []) == frozenset()
    with pytest.raises(KFWorldRangeError):
        world_set(3, [-1])
