# -*- coding: utf-8 -*-
"""
This is the kripkelab Package, a workbench for finite Kripke frames. It
contains :mod:`~kripkelab.kripkelab_lib` and :mod:`~kripkelab.kripkelab_cli`.

:mod:`~kripkelab.kripkelab_lib`
===============================
This package contains the library modules: relations and frames, the formula
language, model checking and frame validity, tuned partitions and generated
subalgebras, frame sums and covers, and the defect construction.

.. note::
   The main library classes and modules are exposed through this package for
   convenience.

   For example::

       >>> from kripkelab import Frame  # imports the Frame class
       >>> # import kfconstants, kfframe, kfformula, kfsemantics, ...
       >>> from kripkelab import *

:mod:`~kripkelab.kripkelab_cli`
===============================
This package contains the command line front end, run with ``kf_cli.py`` or
the ``kripkelab`` console script.
"""

import os
import importlib

# try to import Dulwich or create dummies
try:
    from dulwich.contrib.release_robot import get_current_version
    from dulwich.repo import NotGitRepository
except ImportError:
    NotGitRepository = NotImplementedError

    def get_current_version(*args, **kwargs):
        raise NotGitRepository

import kripkelab.kripkelab_lib.kfconstants as kfconstants
import kripkelab.kripkelab_lib.kfexceptions as kfexceptions
import kripkelab.kripkelab_lib.kfframe as kfframe
import kripkelab.kripkelab_lib.kfformula as kfformula
import kripkelab.kripkelab_lib.kfsemantics as kfsemantics
import kripkelab.kripkelab_lib.kfpartition as kfpartition
import kripkelab.kripkelab_lib.kfsums as kfsums
import kripkelab.kripkelab_lib.kfdefects as kfdefects

# expose constructors to package's top level
KFconstants = kfconstants.KFconstants
Relation = kfframe.Relation
Frame = kfframe.Frame
Model = kfsemantics.Model
Partition = kfpartition.Partition
SumFrame = kfsums.SumFrame
WorldMap = kfsums.WorldMap
QesTrace = kfdefects.QesTrace
parse = kfformula.parse

# Dulwich Release Robot
BASEDIR = os.path.dirname(__file__)
PROJDIR = os.path.dirname(BASEDIR)
VER_FILE = 'version'


def _release_version():
    """
    Version from the current Git tag when dulwich finds one, else from the
    ``version`` module; a differing tag is written back to that module.
    """
    try:
        tag = get_current_version(PROJDIR)
    except NotGitRepository:
        tag = None
    try:
        recorded = importlib.import_module(
            '%s.%s' % (__name__, VER_FILE)).VERSION
    except ImportError:
        recorded = None
    if tag is None:
        return recorded
    if tag != recorded:
        with open(os.path.join(BASEDIR, VER_FILE + '.py'), 'w') as vf:
            vf.write('VERSION = "%s"\n' % tag)
    return tag


VERSION = _release_version()

__author__ = 'kripkelab developers'
__email__ = u''
__url__ = u''
__version__ = VERSION
__release__ = 'Reflexive Reach'
__all__ = ['kfconstants', 'kfexceptions', 'kfframe', 'kfformula',
           'kfsemantics', 'kfpartition', 'kfsums', 'kfdefects', 'KFconstants',
           'Relation', 'Frame', 'Model', 'Partition', 'SumFrame', 'WorldMap',
           'QesTrace', 'parse']
