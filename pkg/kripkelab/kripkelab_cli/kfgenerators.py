# -*- coding: utf-8 -*-
"""
This module contains :class:`ExperimentConfig` and the seeded generators of
random frames, world sets, partitions and formulas used by the experiment
suites. All randomness flows from :func:`numpy.random.default_rng`.
"""

import json
import logging
import os

import numpy as np

from kripkelab.kripkelab_lib.kfexceptions import KFValidationError
from kripkelab.kripkelab_lib.kfformula import (
    BOTTOM, And, Box, Diamond, Implies, Not, Or, Var
)
from kripkelab.kripkelab_lib.kfframe import Frame
from kripkelab.kripkelab_lib.kfpartition import Partition

LOGGER = logging.getLogger(__name__)
PKG_BASEDIR = os.path.dirname(os.path.dirname(__file__))
JSONDIR = os.path.join(PKG_BASEDIR, 'kripkelab_json')
LANGUAGE = 'English'
EXPERIMENT = 'experiment'
MODALITY_NAMES = 'abcd'  # alphabet of generated frames, in order
LEAF_PROBABILITY = 0.3  # chance a formula node below the depth bound is a leaf


def readJSON(JSONfilename):
    """Load a JSON file of the :mod:`kripkelab.kripkelab_json` package."""
    if not JSONfilename.endswith('json'):
        JSONfilename += '.json'
    JSONfullpath = os.path.join(JSONDIR, JSONfilename)
    with open(JSONfullpath, 'r') as JSONfile:
        JSONObjects = json.load(JSONfile)
        LOGGER.debug('JSON objects loaded from %s.', JSONfullpath)
    return JSONObjects


class ExperimentConfig(object):
    """
    Settings of a random experiment. Defaults and inclusive bounds come from
    ``validationConstants.json``.

    :param seed: seed of the generator
    :param frames: number of frames
    :param worlds: world bound, frames have ``1..worlds`` worlds
    :param density: probability of each pair in each relation
    :param modalities: modality bound, frames have ``1..modalities``
    :param variables: variable bound of formulas and valuations
    :param depth: depth bound of formulas
    :param cap: max ``n*k`` of validity checks
    :param timings: report the time spent per property
    :param image_formulas: random formulas checked on every verified
        p-morphism image
    """
    validationConstants = readJSON('validationConstants')
    messagetext = readJSON('messagetext' + '.' + LANGUAGE)
    SETTINGS = tuple(validationConstants[EXPERIMENT])

    def __init__(self, **kwargs):
        unknown = sorted(set(kwargs) - set(self.SETTINGS))
        if unknown:
            LOGGER.error(self.messagetext[EXPERIMENT]['unknown'])
            raise KFValidationError(unknown[0], kwargs[unknown[0]])
        for name in self.SETTINGS:
            value = kwargs.get(name)
            if value is None:
                value = self.validationConstants[EXPERIMENT][name]
            setattr(self, name, self._validate(name, value))

    def _validate(self, name, value):
        if name == 'timings':
            if not isinstance(value, bool):
                self._invalid(name, value)
            return value
        low, high = self.validationConstants['bounds'][name]
        if name == 'density':
            ok = isinstance(value, (int, float)) and \
                not isinstance(value, bool)
        else:
            ok = isinstance(value, (int, np.integer)) and \
                not isinstance(value, bool)
        if not ok or not low <= value <= high:
            self._invalid(name, value)
        return value

    def _invalid(self, name, value):
        LOGGER.error(self.messagetext[EXPERIMENT][name])
        raise KFValidationError(name, value)

    def to_dict(self):
        return dict((name, getattr(self, name)) for name in self.SETTINGS)

    def __str__(self):
        return '<ExperimentConfig(seed=%d, frames=%d, worlds=%d)>' % (
            self.seed, self.frames, self.worlds)

    def __repr__(self):
        return str(self)


def random_frame(rng, n, alphabet, density):
    """Frame with every pair of every relation drawn independently."""
    return Frame(alphabet, n, dict(
        (name, rng.random((n, n)) < density) for name in alphabet))


def generate_frames(cfg, rng=None):
    """
    Frames of an experiment, deterministic under ``cfg.seed``.

    :param cfg: settings
    :type cfg: :class:`ExperimentConfig`
    :param rng: generator to draw from, seeded from ``cfg`` by default
    :return: list of frames
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    frames = []
    for _ in range(cfg.frames):
        n = int(rng.integers(1, cfg.worlds + 1))
        k = int(rng.integers(1, cfg.modalities + 1))
        frames.append(random_frame(rng, n, list(MODALITY_NAMES[:k]),
                                   cfg.density))
    LOGGER.debug('generated %d frames', len(frames))
    return frames


def random_subset(rng, n, p=0.5):
    return frozenset(np.flatnonzero(rng.random(n) < p).tolist())


def random_valuation(rng, n, k):
    return [random_subset(rng, n) for _ in range(k)]


def random_partition(rng, n, max_blocks):
    """Partition from labels drawn uniformly below ``max_blocks``."""
    return Partition.from_labels(rng.integers(0, max_blocks, n).tolist())


def random_formula(rng, k, depth, alphabet, modal=True):
    """
    Random formula over ``p0 .. p{k-1}`` of depth at most ``depth``.

    :param modal: allow diamonds and boxes
    """
    if depth == 0 or rng.random() < LEAF_PROBABILITY:
        if k == 0 or rng.random() < 0.1:
            return BOTTOM
        return Var(int(rng.integers(k)))
    ops = ['implies', 'not', 'and', 'or']
    if modal and len(alphabet):
        ops += ['diamond', 'box']
    op = ops[int(rng.integers(len(ops)))]
    sub = random_formula(rng, k, depth - 1, alphabet, modal)
    if op in ('diamond', 'box'):
        name = alphabet[int(rng.integers(len(alphabet)))]
        return Diamond(name, sub) if op == 'diamond' else Box(name, sub)
    if op == 'not':
        return Not(sub)
    other = random_formula(rng, k, depth - 1, alphabet, modal)
    return {'implies': Implies, 'and': And, 'or': Or}[op](sub, other)


def omega_truncation(n):
    """
    Worlds ``0..n`` with ``a R b`` iff ``a <= b`` or ``a = n``: a chain with
    a top world that sees everything. Its restriction to ``0..n-1`` is a
    chain of height ``n`` while every 2-block partition of the whole frame
    has a tuned refinement with at most 3 blocks.
    """
    pairs = [(a, b) for a in range(n + 1) for b in range(n + 1)
             if a <= b or a == n]
    return Frame(['a'], n + 1, {'a': pairs})
