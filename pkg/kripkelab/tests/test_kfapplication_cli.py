"""
Test the command line front end.
"""

from kripkelab import *
from kripkelab.kripkelab_cli import kfio
from kripkelab.kripkelab_cli.kfapplication_cli import (
    EXIT_CAP, EXIT_ERROR, EXIT_FAILED, EXIT_OK, main, parse_split
)
from kripkelab.kripkelab_cli.kfexceptions import KFUsageError
import json
import pytest


def write(tmp_path, name, data):
    path = str(tmp_path / name)
    with open(path, 'w') as fp:
        json.dump(data, fp)
    return path


def frame_file(tmp_path, name, frame):
    return write(tmp_path, name, frame.to_dict())


def run(capsys, *argv):
    code = main([str(arg) for arg in argv])
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None


@pytest.fixture
def chain3(tmp_path):
    return frame_file(tmp_path, 'chain3.json',
                      Frame(['a'], 3, {'a': [(0, 1), (1, 2)]}))


def test_parse_split():
    assert parse_split('v:a,b;h:c') == (['a', 'b'], ['c'])
    assert parse_split(' h: c ; v: a ') == (['a'], ['c'])
    for bad in ('v:a', 'v:a;x:b', 'v:;h:b', 'v:a;v:b', 'va;hb', None):
        with pytest.raises(KFUsageError):
            parse_split(bad)


def test_parse_command(capsys):
    code, report = run_json(capsys, 'parse', '--formula', '[a](p0 & ~p1)')
    assert code == EXIT_OK
    assert report['formulas'][0]['text'] == '[a](p0 & ~p1)'
    code, _ = run(capsys, 'parse', '--formula', 'p0 &')
    assert code == EXIT_ERROR
    code, _ = run(capsys, 'parse')
    assert code == EXIT_ERROR


def test_formula_file(capsys, tmp_path):
    path = tmp_path / 'formulas.txt'
    path.write_text(u'# axioms\n[a]p0 -> p0\n\n<a>true\n')
    code, report = run_json(capsys, 'parse', '--formulas', str(path))
    assert code == EXIT_OK
    assert [f['text'] for f in report['formulas']] == ['[a]p0 -> p0',
                                                      '<a>true']


def test_modelcheck(capsys, tmp_path, chain3):
    val = write(tmp_path, 'val.json', {'p0': [2]})
    code, report = run_json(capsys, 'modelcheck', '--frame', chain3,
                            '--val', val, '--formula', '<a>p0')
    assert code == EXIT_OK
    assert report['results'] == [{'formula': '<a>p0', 'extension': [1]}]


def test_valid(capsys, chain3):
    code, report = run_json(capsys, 'valid', '--frame', chain3,
                            '--formula', 'p0 -> p0')
    assert code == EXIT_OK
    assert report['results'][0]['countermodel'] is None
    code, report = run_json(capsys, 'valid', '--frame', chain3,
                            '--formula', '[a]p0 -> p0')
    assert code == EXIT_FAILED
    result = report['results'][0]
    assert not result['valid']
    assert set(result['countermodel']) == set(['p0'])


def test_cap_exit_code(capsys, tmp_path):
    five = frame_file(tmp_path, 'five.json', Frame(['a'], 5))
    code, out = run(capsys, '--cap', 9, 'valid', '--frame', five,
                    '--formula', 'p0 -> p1')
    assert code == EXIT_CAP
    assert out == ''
    code, _ = run(capsys, '--cap', 10, 'valid', '--frame', five,
                  '--formula', 'p0 -> p1')
    assert code == EXIT_FAILED


def test_bad_frame_file(capsys, tmp_path):
    bad = write(tmp_path, 'bad.json', {'alphabet': ['a'], 'worlds': 2,
                                       'relations': {'a': [[0, 5]]}})
    assert run(capsys, 'height', '--frame', bad)[0] == EXIT_ERROR
    missing = str(tmp_path / 'missing.json')
    assert run(capsys, 'height', '--frame', missing)[0] == EXIT_ERROR
    garbage = tmp_path / 'garbage.json'
    garbage.write_text(u'{not json')
    assert run(capsys, 'degree', '--frame', str(garbage))[0] == EXIT_ERROR


@pytest.mark.parametrize('pairs', [[[0, '1']], [[0, 1.0]], [[True, 1]], 5])
def test_mistyped_frame_file(capsys, tmp_path, pairs):
    bad = write(tmp_path, 'bad.json', {'alphabet': ['a'], 'worlds': 2,
                                       'relations': {'a': pairs}})
    assert run(capsys, 'height', '--frame', bad)[0] == EXIT_ERROR
    assert run(capsys, 'qes', '--frame', bad, '--modality', 'a')[0] == \
        EXIT_ERROR


def test_frame_queries(capsys, chain3):
    assert run_json(capsys, 'height', '--frame', chain3)[1] == {'height': 3}
    assert run_json(capsys, 'degree', '--frame', chain3)[1] == {'degree': 2}
    code, report = run_json(capsys, 'skeleton', '--frame', chain3)
    assert report['clusters'] == [[0], [1], [2]]
    assert report['order'] == [[0, 1], [0, 2], [1, 2]]


def test_refine(capsys, chain3):
    code, report = run_json(capsys, 'refine', '--frame', chain3,
                            '--partition', '0,1,2')
    assert code == EXIT_OK
    assert report['refined'] == '0|1|2'
    assert not report['already_tuned']
    assert report['witness']['a'] == 2
    code, _ = run(capsys, 'refine', '--frame', chain3, '--partition', '0|1')
    assert code == EXIT_ERROR


def test_sum_writes_sidecar(capsys, tmp_path):
    index = frame_file(tmp_path, 'index.json', Frame(['a'], 2))
    one = frame_file(tmp_path, 'one.json', Frame(['a'], 2, {'a': [(0, 1)]}))
    out = str(tmp_path / 'sum.json')
    code, report = run_json(capsys, 'sum', '--index', index, '--summands',
                            one, one, '--out', out)
    assert code == EXIT_OK
    assert report['frame']['relations']['a'] == [[0, 1], [2, 3]]
    assert report['files'] == [out, str(tmp_path / 'sum.map.json')]
    assert kfio.load_frame(out).n == 4
    assert kfio.load_json(kfio.map_path(out)) == {
        'map': [[0, 0], [0, 1], [1, 0], [1, 1]]}


def test_lexsum(capsys, tmp_path):
    index = frame_file(tmp_path, 'v.json', Frame(['v'], 2, {'v': [(0, 1)]}))
    summand = frame_file(tmp_path, 'h.json',
                         Frame(['h'], 2, {'h': [(0, 1)]}))
    code, report = run_json(capsys, 'lexsum', '--index', index,
                            '--summands', summand, '--product',
                            '--split', 'v:v;h:h')
    assert code == EXIT_OK
    assert report['frame']['worlds'] == 4
    assert report['map'] == [[0, 0], [0, 1], [1, 0], [1, 1]]
    code, _ = run(capsys, 'lexsum', '--index', index, '--summands', summand,
                  summand, '--split', 'v:h;h:v')
    assert code == EXIT_ERROR


def test_transfer(capsys, tmp_path):
    index = frame_file(tmp_path, 'index.json',
                       Frame(['a'], 2, {'a': [(0, 1)]}))
    two = frame_file(tmp_path, 'two.json', Frame(['a'], 2, {'a': [(0, 1)]}))
    one = frame_file(tmp_path, 'one.json', Frame(['a'], 1))
    code, report = run_json(capsys, '--check', 'transfer', '--index', index,
                            '--summands', two, one, '--partition', '0,1,2')
    assert code == EXIT_OK
    assert report['S'] == '0|1|2'
    assert all(report['checks'].values())


def test_cover_and_phi_check(capsys, tmp_path):
    good = frame_file(tmp_path, 'good.json', Frame(['v', 'h'], 3, {
        'v': [(0, 1), (0, 2)], 'h': [(1, 2)]}))
    code, report = run_json(capsys, 'cover', '--frame', good,
                            '--split', 'v:v;h:h')
    assert code == EXIT_OK
    assert report['root'] == 0
    assert report['map'] == [0, 1, 2, 2]
    assert report['report']['pmorphism']
    bad = frame_file(tmp_path, 'bad.json', Frame(['v', 'h'], 2, {
        'v': [(0, 1)], 'h': [(1, 0)]}))
    code, report = run_json(capsys, 'phi-check', '--frame', bad,
                            '--split', 'v:v;h:h')
    assert code == EXIT_FAILED
    assert report['witness']['pair'] == [1, 1]
    assert run(capsys, 'cover', '--frame', bad, '--split',
               'v:v;h:h')[0] == EXIT_ERROR
    assert run(capsys, 'phi-check', '--frame', good, '--split',
               'v:v')[0] == EXIT_ERROR


def test_translate(capsys):
    code, report = run_json(capsys, 'translate', '--mode', 'reflexive',
                            '--formula', '<a>p0')
    assert report['results'][0]['translation'] == '<a>p0 | p0'
    code, report = run_json(capsys, 'translate', '--mode', 'relativize',
                            '--xi', 'p1', '--formula', '<a>p0')
    assert report['results'][0]['translation'] == '<a>(p1 & p0)'
    code, report = run_json(capsys, 'translate', '--mode', 'm', '--m', 1,
                            '--alphabet', 'a', '--formula', '<a>p0')
    assert report['results'][0]['translation'] == 'p0 | <a>p0'
    assert run(capsys, 'translate', '--mode', 'relativize',
               '--formula', 'p0')[0] == EXIT_ERROR


def test_qes(capsys, tmp_path):
    two = frame_file(tmp_path, 'two.json', Frame(['a'], 2, {'a': [(0, 1)]}))
    code, report = run_json(capsys, 'qes', '--frame', two, '--modality', 'a',
                            '--all')
    assert code == EXIT_OK
    assert report['trace']['Q'] == [1]
    assert report['trace']['E'] == [1]
    assert all(v['ok'] for v in report['verdicts'].values())
    assert report['summary'][0] == 'stages: 2, N = 1'
    code, out = run(capsys, '--format', 'text', 'qes', '--frame', two,
                    '--modality', 'a')
    assert out.splitlines()[0] == 'stages: 2, N = 1'
    gens = write(tmp_path, 'gens.json', [[0]])
    code, report = run_json(capsys, 'qes', '--frame', two, '--modality', 'a',
                            '--generators', gens)
    assert report['trace']['N'] == 0
    assert run(capsys, 'qes', '--frame', two, '--modality', 'b')[0] == \
        EXIT_ERROR


def test_suite_command(capsys):
    code, report = run_json(capsys, '--seed', 5, 'suite', 'reflexive',
                            '--frames', 4, '--worlds', 3)
    assert code == EXIT_OK
    assert report['config']['seed'] == 5
    assert report['instances'] == 4
    assert run(capsys, 'suite', 'reflexive', '--worlds', 0)[0] == EXIT_ERROR
    with pytest.raises(SystemExit):
        main(['suite', 'nonsense'])


def test_profile(capsys, chain3):
    code, report = run_json(capsys, 'profile', '--frame', chain3, '--k', 1)
    assert report == {'k': 1, 'profile': 3}
    code, _ = run(capsys, 'profile', '--frame', chain3, '--k', 2,
                  '--budget', 2)
    assert code == EXIT_CAP


def test_generate(capsys, tmp_path):
    out = str(tmp_path / 'frames.json')
    code, report = run_json(capsys, '--seed', 2, 'generate', '--frames', 3,
                            '--out', out)
    assert report == {'frames': 3, 'files': [out]}
    frames = [Frame.from_dict(d) for d in kfio.load_json(out)]
    code, again = run_json(capsys, '--seed', 2, 'generate', '--frames', 3)
    assert [Frame.from_dict(d) for d in again['frames']] == frames


def test_text_format(capsys, chain3):
    code, out = run(capsys, '--format', 'text', 'height', '--frame', chain3)
    assert out == 'height: 3\n'
