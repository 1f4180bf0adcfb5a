# -*- coding: utf-8 -*-
"""
Exceptions of the kripkelab command line front end.
"""

from kripkelab.kripkelab_lib.kfexceptions import KFexception


class KFUsageError(KFexception):
    """
    Malformed command line input, e.g. a bad ``--split``.
    """
    def __init__(self, flag, value, detail):  # IGNORE:W0231
        self.flag = flag
        self.value = value
        self.detail = detail

    def __str__(self):
        return 'Invalid value, %r, for %s: %s.' % (self.value, self.flag,
                                                   self.detail)
