# -*- coding: utf-8 -*-
"""
File formats of the command line front end: frames, valuations, generator
sets, formula files and the sidecar map files written next to constructed
frames. Everything is UTF-8 JSON except formula files, which hold one
formula per line with ``#`` comments.
"""

import io
import json
import logging
import os

from kripkelab.kripkelab_lib.kfexceptions import KFFrameError
from kripkelab.kripkelab_lib.kfformula import parse, parse_lines
from kripkelab.kripkelab_lib.kfframe import Frame
from kripkelab.kripkelab_lib.kfsemantics import Model

LOGGER = logging.getLogger(__name__)
MAP_SUFFIX = '.map.json'  # sidecar of a written frame


def load_json(path):
    """
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFFrameError` for
        unreadable or malformed files
    """
    try:
        with io.open(path, 'r', encoding='utf-8') as fp:
            data = json.load(fp)
    except (IOError, OSError) as exc:
        raise KFFrameError('cannot read %s: %s' % (path, exc))
    except ValueError as exc:
        raise KFFrameError('%s is not JSON: %s' % (path, exc))
    LOGGER.debug('JSON objects loaded from %s.', path)
    return data


def dumps(data):
    """Byte-stable JSON text."""
    return json.dumps(data, sort_keys=True, indent=2)


def dump_json(data, path):
    with io.open(path, 'w', encoding='utf-8') as fp:
        fp.write(dumps(data) + '\n')
    LOGGER.debug('wrote %s', path)


def load_frame(path):
    return Frame.from_dict(load_json(path))


def dump_frame(frame, path, mapping=None):
    """
    Write a frame and, when given, its sidecar ``{"map": [...]}``.

    :return: path of the sidecar or ``None``
    """
    dump_json(frame.to_dict(), path)
    if mapping is None:
        return None
    sidecar = map_path(path)
    dump_json({'map': list(mapping)}, sidecar)
    return sidecar


def map_path(path):
    root, ext = os.path.splitext(path)
    return (root if ext == '.json' else path) + MAP_SUFFIX


def load_valuation(path, frame):
    """Model from a file mapping ``"p0"``, ``"p1"``... to world arrays."""
    data = load_json(path)
    if not isinstance(data, dict):
        raise KFFrameError('%s: expected an object of world arrays' % path)
    return Model.from_dict(frame, data)


def load_generators(path):
    """
    Generator sets: a JSON list of world arrays or a valuation object (sets
    taken in variable order).
    """
    data = load_json(path)
    if isinstance(data, dict):
        keys = sorted(data, key=lambda key: (len(key), key))
        return [data[key] for key in keys]
    if not isinstance(data, list):
        raise KFFrameError('%s: expected a list of world arrays' % path)
    return data


def read_formulas(inline=None, path=None):
    """
    Formulas given inline (one) or in a formula file (many).

    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFParseError`
    """
    formulas = []
    if inline is not None:
        formulas.append(parse(inline))
    if path is not None:
        try:
            with io.open(path, 'r', encoding='utf-8') as fp:
                formulas.extend(parse_lines(fp.read()))
        except (IOError, OSError) as exc:
            raise KFFrameError('cannot read %s: %s' % (path, exc))
    return formulas
