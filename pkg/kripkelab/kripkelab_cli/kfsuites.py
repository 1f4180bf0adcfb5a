# -*- coding: utf-8 -*-
"""
This module contains the experiment suites. Each suite draws its instances
from one generator seeded by :class:`~.kfgenerators.ExperimentConfig`,
checks the properties of one part of the library on every instance, and
cross-checks against the brute-force oracles of
:mod:`kripkelab.contrib.oracles` where an instance is small enough.

A report counts passes, failures and skips per property and embeds every
failing instance in re-ingestible JSON.
"""

import collections
import logging
import time

import numpy as np

from kripkelab.contrib.oracles import brute, extensions
from kripkelab.contrib.oracles import qes as qes_oracle
from kripkelab.kripkelab_lib import kfconstants
from kripkelab.kripkelab_lib.kfdefects import (
    run_qes, trace_invariants, verify_embedding, verify_embedding_all,
    verify_final_partition, verify_main_claim
)
from kripkelab.kripkelab_lib.kfexceptions import (
    KFBudgetExceededError, KFCapExceededError, KFInvariantError,
    KFValidationError
)
from kripkelab.kripkelab_lib.kfformula import (
    b_m_formula, phi_axioms, pretransitivity_axiom, reflexive_translate,
    relativize, to_text, variables
)
from kripkelab.kripkelab_lib.kfframe import (
    height, irreflexive_part, reflexive_closure, transitivity_degree
)
from kripkelab.kripkelab_lib.kfpartition import (
    coarsest_tuned_refinement, induced_partition, is_tuned, refines,
    subalgebra_closure
)
from kripkelab.kripkelab_lib.kfsemantics import (
    Model, evaluate, relativized_box_reach, subframe_formula,
    subframe_validity, theta_partition, valid_on_frame
)
from kripkelab.kripkelab_lib.kfsums import (
    WorldMap, find_root, is_pmorphism, lex_as_sum, lex_sum, oplus_cover,
    phi_conditions, star_factorizes, sum_over_index, transfer_stages
)
from kripkelab.kripkelab_cli.kfgenerators import (
    ExperimentConfig, generate_frames, random_formula,
    random_frame, random_partition, random_valuation
)

LOGGER = logging.getLogger(__name__)
ORACLE_WORLDS = 5  # largest frame handed to the exponential oracles
MAX_FAILURES = 20  # failing instances embedded in a report


def _jsonable(value):
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return dict((str(k), _jsonable(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


class SuiteRecorder(object):
    """
    Counts property outcomes of one suite run.

    :param name: suite name
    :param timings: also sum the time spent per property
    """
    def __init__(self, name, timings=False):
        self.name = name  #: suite name
        self.timings = timings  #: record elapsed time per property
        #: passed, failed and skipped counts per property
        self.counts = collections.OrderedDict()
        self.elapsed = collections.OrderedDict()  #: seconds per property
        self.failures = []  #: failing instances with witnesses
        self.warnings = []  #: messages for the report

    def _count(self, prop, outcome):
        counts = self.counts.setdefault(
            prop, collections.OrderedDict(
                [('passed', 0), ('failed', 0), ('skipped', 0)]))
        counts[outcome] += 1

    def check(self, prop, instance, func, *args):
        """
        Evaluate ``func(*args)`` and record it as a pass when truthy. A
        :class:`~kripkelab.kripkelab_lib.kfconstants.Verdict` contributes its
        witness; exceeding a cap or budget is a skip.

        :param instance: JSON-ready description of the instance
        :return: the result, ``None`` when skipped
        """
        start = time.perf_counter()
        try:
            result = func(*args)
        except (KFCapExceededError, KFBudgetExceededError) as exc:
            LOGGER.debug('%s skipped: %s', prop, exc)
            self._count(prop, 'skipped')
            return None
        except KFInvariantError as exc:
            result = kfconstants.Verdict.failed(str(exc))
        finally:
            if self.timings:
                self.elapsed[prop] = self.elapsed.get(prop, 0.0) + \
                    time.perf_counter() - start
        if result:
            self._count(prop, 'passed')
        else:
            self._count(prop, 'failed')
            LOGGER.info('%s failed on instance %r', prop, instance)
            if len(self.failures) < MAX_FAILURES:
                failure = {'property': prop, 'instance': _jsonable(instance)}
                witness = getattr(result, 'witness', None)
                if witness is not None:
                    failure['witness'] = _jsonable(witness)
                self.failures.append(failure)
        return result

    def skip(self, prop):
        self._count(prop, 'skipped')

    @property
    def ok(self):
        return all(c['failed'] == 0 for c in self.counts.values())

    def report(self, cfg, instances):
        report = collections.OrderedDict([
            ('suite', self.name),
            ('config', cfg.to_dict()),
            ('instances', instances),
            ('ok', self.ok),
            ('properties', self.counts),
            ('failures', self.failures),
            ('warnings', self.warnings)
        ])
        if self.timings:
            report['timings'] = dict((k, round(v, 6))
                                     for k, v in self.elapsed.items())
        return report


def _frame_instance(f, **extra):
    instance = {'frame': f.to_dict()}
    instance.update(extra)
    return instance


def _partition_equal(u, blocks):
    return list(u.blocks) == list(blocks)


def suite_refinement(frames, rng, cfg, kfconst, rec):
    for f in frames:
        k = int(rng.integers(0, cfg.variables + 1))
        gens = random_valuation(rng, f.n, k)
        v = induced_partition(f.n, gens)
        u = coarsest_tuned_refinement(f, v)
        closure = subalgebra_closure(f, gens)
        instance = _frame_instance(f, generators=gens, partition=u.to_list())
        rec.check('tuned', instance, is_tuned, f, u)
        rec.check('refines', instance, refines, u, v)
        rec.check('closure_size', instance,
                  lambda: len(closure) == 2 ** len(u))
        rec.check('atoms_are_blocks', instance,
                  lambda: _partition_equal(u, closure.atoms()))
        if f.n <= ORACLE_WORLDS:
            rec.check('coarsest_oracle', instance, lambda: _partition_equal(
                u, brute.coarsest_tuned_refinement(f, v.blocks)))
            rec.check('closure_oracle', instance,
                      lambda: set(closure.members) == brute.closure(f, gens))
            rec.check('theta_oracle', instance, lambda: _partition_equal(
                theta_partition(Model(f, gens)),
                extensions.theta_blocks(f, gens)))
        else:
            rec.skip('coarsest_oracle')
            rec.skip('closure_oracle')
            rec.skip('theta_oracle')


def suite_correspondence(frames, rng, cfg, kfconst, rec):
    for f in frames:
        degree = transitivity_degree(f)
        depth = height(f)
        instance = _frame_instance(f, degree=degree, height=depth)
        rec.check('degree_oracle', instance,
                  lambda: degree == brute.transitivity_degree(f))
        rec.check('height_oracle', instance,
                  lambda: depth == brute.height(f))
        for m in range(4):
            axiom = pretransitivity_axiom(m, f.alphabet)
            rec.check('pretransitivity', dict(instance, m=m), lambda: (
                valid_on_frame(f, axiom, kfconst=kfconst) == (degree <= m)))
        if degree > 3:
            continue
        for m in range(degree, 4):
            for h in range(1, 4):
                formula = b_m_formula(h, m, f.alphabet)
                rec.check('height_formula', dict(instance, h=h, m=m),
                          lambda: (valid_on_frame(f, formula, kfconst=kfconst)
                                   == (depth <= h)))
        phi = random_formula(rng, min(cfg.variables, 2), cfg.depth,
                             f.alphabet)
        if f.n * len(variables(phi)) <= min(kfconst.cap, 8):
            rec.check('validity_oracle', _frame_instance(f, formula=to_text(
                phi)), lambda: (valid_on_frame(f, phi, kfconst=kfconst) ==
                                extensions.valid(f, phi)))
        else:
            rec.skip('validity_oracle')


def suite_relativization(frames, rng, cfg, kfconst, rec):
    for f in frames:
        k = max(cfg.variables, 1)
        m = Model(f, random_valuation(rng, f.n, k))
        xi = random_formula(rng, k, cfg.depth, f.alphabet)
        phi = random_formula(rng, k, cfg.depth, f.alphabet)
        region = evaluate(m, xi)
        inner, index_map = m.restrict(region)
        instance = _frame_instance(f, valuation=m.to_dict(), xi=to_text(xi),
                                   phi=to_text(phi))
        outer = evaluate(m, relativize(phi, xi)) & region
        local = evaluate(inner, phi)
        rec.check('relativization', instance, lambda: (
            frozenset(index_map[a] for a in outer) == local))
        plain = random_formula(rng, k, cfg.depth, f.alphabet, modal=False)
        for a in sorted(region):
            rec.check('box_reach', dict(instance, plain=to_text(plain), a=a),
                      relativized_box_reach, m, xi, plain, len(region), a)
        if f.n <= 4:
            rec.check('subframe_validity', instance, lambda: (
                subframe_validity(f, phi, kfconst=kfconst) ==
                extensions.subframe_valid(f, phi)))
            rec.check('subframe_formula', instance, lambda: (
                subframe_validity(f, phi, kfconst=kfconst) ==
                valid_on_frame(f, subframe_formula(phi), kfconst=kfconst)))
        else:
            rec.skip('subframe_validity')
            rec.skip('subframe_formula')


def suite_reflexive(frames, rng, cfg, kfconst, rec):
    for f in frames:
        k = int(rng.integers(1, max(cfg.variables, 1) + 1))
        phi = random_formula(rng, k, cfg.depth, f.alphabet)
        closed = reflexive_closure(f)
        m = Model(f, random_valuation(rng, f.n, k))
        instance = _frame_instance(f, valuation=m.to_dict(),
                                   formula=to_text(phi))
        rec.check('pointwise', instance, lambda: (
            evaluate(m, reflexive_translate(phi)) ==
            evaluate(Model(closed, m.valuation), phi)))
        rec.check('validity', instance, lambda: (
            valid_on_frame(f, reflexive_translate(phi), kfconst=kfconst) ==
            valid_on_frame(closed, phi, kfconst=kfconst)))


def _random_sum(rng, cfg, alphabet):
    index = random_frame(rng, int(rng.integers(1, 5)), alphabet, cfg.density)
    summands = [random_frame(rng, int(rng.integers(1, 4)), alphabet,
                             cfg.density) for _ in range(index.n)]
    return index, summands


def _sum_instance(index, summands, **extra):
    instance = {'index': index.to_dict(),
                'summands': [s.to_dict() for s in summands]}
    instance.update(extra)
    return instance


def suite_sums(frames, rng, cfg, kfconst, rec):
    for f in frames:
        index, summands = _random_sum(rng, cfg, f.alphabet)
        instance = _sum_instance(index, summands)
        plain = sum_over_index(index, summands).frame
        rec.check('reflexivity_independence', instance, lambda: (
            plain == sum_over_index(reflexive_closure(index),
                                    summands).frame ==
            sum_over_index(irreflexive_part(index), summands).frame))
        vertical, _ = _random_sum(rng, cfg, ['v'])
        horizontal = [random_frame(rng, int(rng.integers(1, 4)), ['h'],
                                   cfg.density) for _ in range(vertical.n)]
        lex = lex_sum(vertical, horizontal)
        lex_instance = _sum_instance(vertical, horizontal)
        rec.check('lex_encoding', lex_instance,
                  lambda: lex_as_sum(vertical, horizontal).frame == lex)
        rec.check('lex_conditions', lex_instance, phi_conditions, lex,
                  ['v'], ['h'])
        if lex.n <= 6:
            for axiom in phi_axioms(['v'], ['h']):
                rec.check('lex_axioms', dict(lex_instance,
                                             formula=to_text(axiom)),
                          valid_on_frame, lex, axiom, None, kfconst)
        else:
            rec.skip('lex_axioms')


def suite_transfer(frames, rng, cfg, kfconst, rec):
    for f in frames:
        index, summands = _random_sum(rng, cfg, f.alphabet)
        s = sum_over_index(index, summands)
        v0 = random_partition(rng, s.frame.n, 2 ** max(cfg.variables, 1))
        instance = _sum_instance(index, summands, v0=v0.to_list())
        staged = rec.check('transfer', instance, transfer_stages, s, v0, True)
        if staged is None:
            continue
        report = staged['report']
        for prop in ('tuned', 'refines_v0', 'bound', 'profile_bound'):
            rec.check(prop, instance, lambda: report[prop])
        rec.check('tuned_oracle', instance,
                  brute.is_tuned, s.frame, staged['S'].blocks)


def _check_pmorphism_validity(rec, instance, projection, rng, cfg, kfconst):
    # validity on the cover carries over to its image
    dom, cod = projection.domain, projection.codomain
    for _ in range(cfg.image_formulas):
        phi = random_formula(rng, min(cfg.variables, 2), cfg.depth,
                             dom.alphabet)
        try:
            on_dom = valid_on_frame(dom, phi, kfconst=kfconst)
        except KFCapExceededError:
            rec.skip('image_validity')
            continue
        rec.check('image_validity', dict(instance, formula=to_text(phi)),
                  lambda: not on_dom or valid_on_frame(cod, phi,
                                                       kfconst=kfconst))


def _cover(rec, instance, f, rng, cfg, kfconst):
    root = find_root(f)
    if root is None:
        rec.skip('cover')
        return
    cover = rec.check('cover', instance, oplus_cover, f, root, ['v'], ['h'])
    if cover is None:
        return
    report = cover['report']
    for prop in ('pmorphism', 'surjective', 'star_factorizes'):
        rec.check(prop, instance, lambda: report[prop])
    if cover['frame'].n <= 8:
        rec.check('pmorphism_oracle', instance, brute.is_pmorphism,
                  cover['frame'], f, cover['map'].mapping)
    _check_pmorphism_validity(rec, instance, cover['map'], rng, cfg, kfconst)


def suite_cover(frames, rng, cfg, kfconst, rec):
    for f in frames:
        candidate = random_frame(rng, min(f.n, 5), ['v', 'h'], cfg.density)
        instance = _frame_instance(candidate)
        if phi_conditions(candidate, ['v'], ['h']):
            _cover(rec, instance, candidate, rng, cfg, kfconst)
        vertical, _ = _random_sum(rng, cfg, ['v'])
        horizontal = [random_frame(rng, int(rng.integers(1, 3)), ['h'],
                                   cfg.density) for _ in range(vertical.n)]
        lex = lex_sum(vertical, horizontal)
        _cover(rec, _frame_instance(lex), lex, rng, cfg, kfconst)
        identity = WorldMap(f, f, range(f.n))
        rec.check('identity_pmorphism', _frame_instance(f), is_pmorphism,
                  identity)
        rec.check('star_factorizes_lex', _frame_instance(lex),
                  star_factorizes, lex, ['v'], ['h'])


def suite_qes(frames, rng, cfg, kfconst, rec):
    for f in frames:
        designated = f.alphabet[0]
        gens = random_valuation(rng, f.n, min(cfg.variables, 1))
        instance = _frame_instance(f, designated=designated, generators=gens)
        t = run_qes(f, designated, gens)
        for prop, verdict in trace_invariants(t).items():
            rec.check(prop, instance, lambda: verdict)
        rec.check('main_claim', instance, verify_main_claim, t)
        rec.check('embedding', instance, verify_embedding, t)
        rec.check('final_partition', instance, verify_final_partition, t)
        if f.n > ORACLE_WORLDS:
            rec.skip('stages_oracle')
            rec.skip('separators_oracle')
            rec.skip('embedding_all')
            continue
        partitions, defect_sets = qes_oracle.stages(f, designated, gens)
        rec.check('stages_oracle', instance, lambda: (
            [list(p.blocks) for p in t.stages] == partitions and
            list(t.defect_sets) == defect_sets))
        expected = qes_oracle.separators(f, designated, gens)
        rec.check('separators_oracle', instance, lambda: (
            (t.Q, t.E, t.S, t.rank) ==
            (expected['Q'], expected['E'], expected['S'], expected['rank'])))
        rec.check('embedding_all', instance, verify_embedding_all, f, gens)


#: suite name -> runner
SUITES = collections.OrderedDict([
    ('refinement', suite_refinement),
    ('correspondence', suite_correspondence),
    ('relativization', suite_relativization),
    ('reflexive', suite_reflexive),
    ('sums', suite_sums),
    ('transfer', suite_transfer),
    ('cover', suite_cover),
    ('qes', suite_qes)
])


def run_suite(name, cfg=None, kfconst=None):
    """
    Run one suite on the frames of an experiment.

    :param name: one of :data:`SUITES`
    :param cfg: settings, defaults from ``validationConstants.json``
    :type cfg: :class:`~kripkelab.kripkelab_cli.kfgenerators.ExperimentConfig`
    :param kfconst: library configuration, its cap replaced by ``cfg.cap``
    :return: report dict; ``report["ok"]`` iff every property held
    :raises: :class:`~kripkelab.kripkelab_lib.kfexceptions.KFValidationError`
        for an unknown suite
    """
    if name not in SUITES:
        LOGGER.error(ExperimentConfig.messagetext['suite']['unknown'])
        raise KFValidationError('suite', name)
    if cfg is None:
        cfg = ExperimentConfig()
    if kfconst is None:
        kfconst = kfconstants.KFconstants()
    kfconst.cap = cfg.cap
    rng = np.random.default_rng(cfg.seed)
    frames = generate_frames(cfg, rng)
    rec = SuiteRecorder(name, cfg.timings)
    if not frames:
        message = ExperimentConfig.messagetext['suite']['empty']
        LOGGER.warning(message)
        rec.warnings.append(message)
    LOGGER.info('running suite %s on %d frames', name, len(frames))
    SUITES[name](frames, rng, cfg, kfconst, rec)
    report = rec.report(cfg, len(frames))
    LOGGER.info('suite %s: %s', name, 'ok' if report['ok'] else 'FAILED')
    return report


__all__ = ['SUITES', 'SuiteRecorder', 'run_suite']
