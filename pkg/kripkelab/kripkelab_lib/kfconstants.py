# -*- coding: utf-8 -*-
"""
This module contains configuration constants for kripkelab, such as the cap on
valuation enumeration, the budget for set-partition enumeration and the number
of valuations evaluated per numpy batch. The small helpers shared by all
library modules live here too: the :class:`Verdict` result of every check and
the conversions between world sets and boolean masks,
:func:`~kripkelab.kripkelab_lib.kfconstants.as_mask()` and
:func:`~kripkelab.kripkelab_lib.kfconstants.as_worlds()`.
"""

import collections

import numpy as np

from kripkelab.kripkelab_lib.kfexceptions import (
    KFValidationError, KFWorldRangeError
)

# Constants
CAP = 22  # max n*k bits enumerated by a validity check
PARTITION_BUDGET = 50000  # max set partitions visited by tunability_profile
CHUNK = 4096  # valuations evaluated per numpy batch
DEFAULT_MODALITY = 'a'  # modality of the unimodal schemas


class Verdict(collections.namedtuple('Verdict', ['ok', 'witness'])):
    """
    Outcome of a check. Truthiness follows ``ok``; ``witness`` describes the
    first failure found and is ``None`` when the check passes.
    """
    __slots__ = ()

    def __bool__(self):
        return bool(self.ok)

    @classmethod
    def passed(cls):
        return cls(True, None)

    @classmethod
    def failed(cls, witness):
        return cls(False, witness)


def as_mask(n, worlds):
    """
    Boolean mask of length ``n`` selecting ``worlds``.

    :param n: world count
    :param worlds: iterable of world indices
    :return: :class:`numpy.ndarray` of bool
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFWorldRangeError`
    """
    mask = np.zeros(n, dtype=bool)
    for w in worlds:
        if not 0 <= w < n:
            raise KFWorldRangeError(w, n)
        mask[w] = True
    return mask


def as_worlds(mask):
    """Frozen set of the worlds selected by a boolean mask."""
    return frozenset(int(w) for w in np.flatnonzero(mask))


def world_set(n, worlds):
    """Validate ``worlds`` against the domain 0..n-1 and freeze them."""
    worlds = frozenset(int(w) for w in worlds)
    for w in worlds:
        if not 0 <= w < n:
            raise KFWorldRangeError(w, n)
    return worlds


def resolve(value, kfconst, name):
    """
    Pick an explicit setting, else the one carried by ``kfconst``, else the
    module default.
    """
    if value is not None:
        return value
    if kfconst is None:
        kfconst = KFconstants()
    return getattr(kfconst, name)


class KFconstants(object):
    """
    Class for configuration constants

    :param cap: max ``n*k`` bits of a valuation enumeration
    :type cap: int
    :param partition_budget: max set partitions enumerated
    :type partition_budget: int
    :param chunk: valuations evaluated per batch
    :type chunk: int
    :param check_invariants: re-check guaranteed properties (test mode)
    :type check_invariants: bool
    """
    def __init__(self, cap=CAP, partition_budget=PARTITION_BUDGET,
                 chunk=CHUNK, check_invariants=False):
        self._cap = None
        self._partition_budget = None
        self._chunk = None
        # call property setters
        self.cap = cap  #: max n*k bits of a valuation enumeration
        self.partition_budget = partition_budget  #: set-partition budget
        self.chunk = chunk  #: valuations per numpy batch
        self.check_invariants = bool(check_invariants)  #: test mode

    @staticmethod
    def _positive(argname, value):
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise KFValidationError(argname, value)
        return value

    @property
    def cap(self):
        """max n*k bits of a valuation enumeration"""
        return self._cap

    @cap.setter
    def cap(self, cap):
        self._cap = self._positive('cap', cap)

    @property
    def partition_budget(self):
        """max set partitions enumerated by tunability_profile"""
        return self._partition_budget

    @partition_budget.setter
    def partition_budget(self, partition_budget):
        self._partition_budget = self._positive('partition_budget',
                                                partition_budget)

    @property
    def chunk(self):
        """valuations evaluated per numpy batch"""
        return self._chunk

    @chunk.setter
    def chunk(self, chunk):
        self._chunk = self._positive('chunk', chunk)

    def __str__(self):
        return '<KFconstants(cap=%d, partition_budget=%d, chunk=%d)>' % (
            self.cap, self.partition_budget, self.chunk)

    def __repr__(self):
        return str(self)
