"""
Test the experiment suites and their reports.
"""

from kripkelab import *
from kripkelab.kripkelab_cli import kfsuites
from kripkelab.kripkelab_cli.kfgenerators import ExperimentConfig
from kripkelab.kripkelab_lib.kfconstants import Verdict
from kripkelab.kripkelab_lib.kfexceptions import (
    KFCapExceededError, KFInvariantError, KFValidationError
)
import json
import pytest

SMALL = dict(seed=11, frames=6, worlds=3, density=0.4, variables=2, depth=2)


@pytest.mark.parametrize('name', list(kfsuites.SUITES))
def test_suite_passes(name):
    report = kfsuites.run_suite(name, ExperimentConfig(**SMALL))
    assert report['ok'], report['failures']
    assert report['suite'] == name
    assert report['instances'] == 6
    assert report['failures'] == []
    assert any(c['passed'] for c in report['properties'].values())
    json.dumps(report)


def test_suite_is_reproducible():
    cfg = ExperimentConfig(**SMALL)
    assert kfsuites.run_suite('refinement', cfg) == \
        kfsuites.run_suite('refinement', cfg)


def test_bimodal_frames():
    cfg = ExperimentConfig(modalities=2, **SMALL)
    for name in ('refinement', 'correspondence', 'qes'):
        assert kfsuites.run_suite(name, cfg)['ok']


def test_empty_suite_warns():
    cfg = ExperimentConfig(frames=0)
    report = kfsuites.run_suite('qes', cfg)
    assert report['ok']
    assert report['instances'] == 0
    assert report['warnings'] == [
        ExperimentConfig.messagetext['suite']['empty']]


def test_unknown_suite():
    with pytest.raises(KFValidationError):
        kfsuites.run_suite('nonsense')


def test_timings():
    report = kfsuites.run_suite(
        'reflexive', ExperimentConfig(timings=True, **SMALL))
    assert set(report['timings']) == set(report['properties'])
    assert 'timings' not in kfsuites.run_suite(
        'reflexive', ExperimentConfig(**SMALL))


def test_cap_comes_from_config():
    kfconst = KFconstants()
    kfsuites.run_suite('reflexive', ExperimentConfig(cap=5, **SMALL), kfconst)
    assert kfconst.cap == 5


def test_corrupted_refinement_is_reported(monkeypatch):
    chain = Frame(['a'], 3, {'a': [(0, 1), (1, 2)]})
    monkeypatch.setattr(kfsuites, 'generate_frames', lambda cfg, rng: [chain])
    monkeypatch.setattr(kfsuites, 'coarsest_tuned_refinement',
                        lambda f, v: Partition.trivial(f.n))
    report = kfsuites.run_suite('refinement', ExperimentConfig(**SMALL))
    assert not report['ok']
    assert report['properties']['tuned']['failed'] == 1
    failure = [x for x in report['failures'] if x['property'] == 'tuned'][0]
    assert failure['instance']['frame'] == chain.to_dict()
    assert failure['instance']['partition'] == [[0, 1, 2]]
    assert 'witness' in failure


def test_recorder():
    rec = kfsuites.SuiteRecorder('demo')
    assert rec.check('yes', {}, lambda: True)
    assert rec.check('verdict', {'n': 1}, lambda: Verdict.failed([1])) \
        is not None

    def capped():
        raise KFCapExceededError(30, 22)

    def broken():
        raise KFInvariantError('demo', 'witness')

    assert rec.check('capped', {}, capped) is None
    assert not rec.check('broken', {}, broken)
    rec.skip('yes')
    assert not rec.ok
    assert rec.counts['yes'] == {'passed': 1, 'failed': 0, 'skipped': 1}
    assert rec.counts['capped']['skipped'] == 1
    assert rec.failures[0] == {'property': 'verdict', 'instance': {'n': 1},
                               'witness': [1]}
    assert rec.failures[1]['property'] == 'broken'


def test_image_formula_count():
    assert ExperimentConfig().image_formulas == 100
    none = kfsuites.run_suite('cover', ExperimentConfig(
        image_formulas=0, **SMALL))
    assert 'image_validity' not in none['properties']
    three = kfsuites.run_suite('cover', ExperimentConfig(
        image_formulas=3, **SMALL))
    assert three['ok']
    counts = three['properties'].get('image_validity')
    if counts is not None:
        assert sum(counts.values()) % 3 == 0
    with pytest.raises(KFValidationError):
        ExperimentConfig(image_formulas=-1)
