# -*- coding: utf-8 -*-
"""
Command line front end of kripkelab.

Every subcommand builds a report, prints it as JSON (default) or text on
stdout and returns an exit code: 0 ok, 1 a checked property failed, 2 usage,
parse or library error, 3 an enumeration cap or budget was exceeded. Log
messages go to stderr.
"""

import argparse
import json
import logging
import sys

from kripkelab import __version__
from kripkelab.kripkelab_cli import kfio
from kripkelab.kripkelab_cli.kfexceptions import KFUsageError
from kripkelab.kripkelab_cli.kfgenerators import (
    ExperimentConfig, generate_frames
)
from kripkelab.kripkelab_cli.kfsuites import SUITES, run_suite
from kripkelab.kripkelab_lib.kfconstants import CAP, KFconstants
from kripkelab.kripkelab_lib.kfdefects import (
    run_qes, trace_invariants, verify_embedding, verify_embedding_all,
    verify_final_partition, verify_main_claim
)
from kripkelab.kripkelab_lib.kfexceptions import (
    KFBudgetExceededError, KFCapExceededError, KFexception
)
from kripkelab.kripkelab_lib.kfformula import (
    m_translate, reflexive_translate, relativize, to_text
)
from kripkelab.kripkelab_lib.kfframe import (
    height, skeleton, transitivity_degree
)
from kripkelab.kripkelab_lib.kfpartition import (
    Partition, coarsest_tuned_refinement, is_tuned, tunability_profile
)
from kripkelab.kripkelab_lib.kfsemantics import (
    evaluate, find_countermodel
)
from kripkelab.kripkelab_lib.kfsums import (
    find_root, lex_product, lex_sum, oplus_cover, phi_conditions,
    sum_over_index, transfer_stages
)

LOGGER = logging.getLogger(__name__)
LOG_FORMAT = '[%(levelname)s] (%(name)s) %(message)s'
LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]
EXIT_OK, EXIT_FAILED, EXIT_ERROR, EXIT_CAP = 0, 1, 2, 3


def parse_split(text):
    """
    Alphabet split ``"v:a,b;h:c"`` into the vertical and horizontal names.

    :raises: :class:`~kripkelab.kripkelab_cli.kfexceptions.KFUsageError`
    """
    parts = {}
    for item in (text or '').split(';'):
        key, sep, names = item.partition(':')
        key = key.strip()
        if not sep or key not in ('v', 'h') or key in parts:
            raise KFUsageError('--split', text, 'expected "v:a;h:b"')
        parts[key] = [name.strip() for name in names.split(',')
                      if name.strip()]
    if set(parts) != set(['v', 'h']) or not parts['v'] or not parts['h']:
        raise KFUsageError('--split', text, 'needs nonempty v and h parts')
    return parts['v'], parts['h']


def _formula(args):
    formulas = kfio.read_formulas(args.formula, args.formulas)
    if not formulas:
        raise KFUsageError('--formula', None, 'give a formula or a file')
    return formulas


def _verdict(verdict):
    return {'ok': bool(verdict), 'witness': _plain(verdict.witness)}


def _plain(value):
    if isinstance(value, tuple) and hasattr(value, '_asdict'):
        return dict((k, _plain(v)) for k, v in value._asdict().items())
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


# commands: each returns (report, ok)
def cmd_parse(args, kfconst):
    formulas = _formula(args)
    return {'formulas': [{'text': to_text(phi), 'ast': repr(phi)}
                         for phi in formulas]}, True


def cmd_modelcheck(args, kfconst):
    frame = kfio.load_frame(args.frame)
    model = kfio.load_valuation(args.val, frame)
    return {'results': [{'formula': to_text(phi),
                         'extension': sorted(evaluate(model, phi))}
                        for phi in _formula(args)]}, True


def cmd_valid(args, kfconst):
    frame = kfio.load_frame(args.frame)
    results, ok = [], True
    for phi in _formula(args):
        counter = find_countermodel(frame, phi, kfconst=kfconst)
        results.append({'formula': to_text(phi), 'valid': counter is None,
                        'countermodel': counter and counter.to_dict()})
        ok = ok and counter is None
    return {'results': results}, ok


def cmd_refine(args, kfconst):
    frame = kfio.load_frame(args.frame)
    v = Partition.from_string(args.partition, frame.n)
    verdict = is_tuned(frame, v)
    refined = coarsest_tuned_refinement(frame, v)
    return {'input': str(v), 'refined': str(refined), 'blocks': len(refined),
            'already_tuned': bool(verdict),
            'witness': _plain(verdict.witness)}, True


def cmd_height(args, kfconst):
    return {'height': height(kfio.load_frame(args.frame))}, True


def cmd_degree(args, kfconst):
    return {'degree': transitivity_degree(kfio.load_frame(args.frame))}, True


def cmd_skeleton(args, kfconst):
    skel = skeleton(kfio.load_frame(args.frame))
    return {'clusters': [sorted(c) for c in skel.clusters],
            'order': sorted([i, j] for i, j in skel.order),
            'height': skel.height}, True


def _write(args, frame, mapping):
    report = {'frame': frame.to_dict(), 'map': mapping}
    if args.out:
        report['files'] = [args.out, kfio.dump_frame(frame, args.out,
                                                      mapping)]
    return report


def cmd_sum(args, kfconst):
    index = kfio.load_frame(args.index)
    s = sum_over_index(index, [kfio.load_frame(p) for p in args.summands])
    return _write(args, s.frame,
                  [[i, a] for i, a in zip(s.index_of, s.inner_of)]), True


def cmd_lexsum(args, kfconst):
    index = kfio.load_frame(args.index)
    summands = [kfio.load_frame(p) for p in args.summands]
    if args.split:
        vertical, horizontal = parse_split(args.split)
        if list(index.alphabet) != vertical or any(
                list(s.alphabet) != horizontal for s in summands):
            raise KFUsageError('--split', args.split,
                               'does not match the input alphabets')
    if args.product:
        if len(summands) != 1:
            raise KFUsageError('--product', len(summands),
                               'takes exactly one summand')
        frame = lex_product(index, summands[0])
        summands = summands * index.n
    else:
        frame = lex_sum(index, summands)
    mapping = [[i, a] for i, s in enumerate(summands) for a in range(s.n)]
    return _write(args, frame, mapping), True


def cmd_transfer(args, kfconst):
    index = kfio.load_frame(args.index)
    s = sum_over_index(index, [kfio.load_frame(p) for p in args.summands])
    v0 = Partition.from_string(args.partition, s.frame.n)
    staged = transfer_stages(s, v0, check=kfconst.check_invariants)
    report = dict((key, str(staged[key])) for key in ('v', 'u0', 'u', 'S'))
    report['v0'] = str(v0)
    report['sizes'] = dict((k, v) for k, v in staged['report'].items()
                           if isinstance(v, int) and not isinstance(v, bool))
    checks = dict((k, v) for k, v in staged['report'].items()
                  if isinstance(v, bool))
    report['checks'] = checks
    return report, all(checks.values())


def cmd_cover(args, kfconst):
    frame = kfio.load_frame(args.frame)
    vertical, horizontal = parse_split(args.split)
    root = args.root
    if root is None:
        root = find_root(frame)
        if root is None:
            raise KFUsageError('--root', None, 'the frame has no root')
        LOGGER.info('using root %d', root)
    cover = oplus_cover(frame, root, vertical, horizontal)
    report = _write(args, cover['frame'], list(cover['map'].mapping))
    report['root'] = root
    report['coordinates'] = [[i, a] for i, a in zip(cover['index_of'],
                                                    cover['inner_of'])]
    report['report'] = _plain(cover['report'])
    checks = cover['report']
    return report, checks['pmorphism'] and checks['surjective'] and \
        checks['star_factorizes']


def cmd_phi_check(args, kfconst):
    frame = kfio.load_frame(args.frame)
    vertical, horizontal = parse_split(args.split)
    verdict = phi_conditions(frame, vertical, horizontal)
    return _verdict(verdict), bool(verdict)


def cmd_translate(args, kfconst):
    results = []
    for phi in _formula(args):
        if args.mode == 'reflexive':
            out = reflexive_translate(phi, args.modalities)
        elif args.mode == 'relativize':
            if args.xi is None:
                raise KFUsageError('--xi', None, 'required by relativize')
            out = relativize(phi, kfio.read_formulas(args.xi)[0])
        else:
            if args.m is None or not args.alphabet:
                raise KFUsageError('--m', args.m,
                                   'm mode needs --m and --alphabet')
            out = m_translate(phi, args.m, args.alphabet)
        results.append({'formula': to_text(phi), 'translation': to_text(out)})
    return {'mode': args.mode, 'results': results}, True


def cmd_qes(args, kfconst):
    frame = kfio.load_frame(args.frame)
    generators = kfio.load_generators(args.generators) \
        if args.generators else []
    trace = run_qes(frame, args.modality, generators)
    verdicts = {
        'main_claim': _verdict(verify_main_claim(trace)),
        'embedding': _verdict(verify_embedding(trace)),
        'final_partition': _verdict(verify_final_partition(trace))
    }
    if args.all:
        verdicts['embedding_all'] = _verdict(
            verify_embedding_all(frame, generators))
    invariants = dict((k, _verdict(v))
                      for k, v in trace_invariants(trace).items())
    report = {'trace': trace.to_dict(), 'verdicts': verdicts,
              'invariants': invariants}
    report['summary'] = [
        'stages: %d, N = %d' % (len(trace.stages), trace.N),
        'Q = %s, E = %s, S = %s' % (sorted(trace.Q), sorted(trace.E),
                                    sorted(trace.S))
    ] + ['%s: %s' % (k, 'ok' if v['ok'] else 'FAILED')
         for k, v in sorted(verdicts.items())]
    ok = all(v['ok'] for v in verdicts.values()) and \
        all(v['ok'] for v in invariants.values())
    return report, ok


def _experiment(args):
    settings = dict((name, getattr(args, name, None))
                    for name in ExperimentConfig.SETTINGS)
    return ExperimentConfig(**settings)


def cmd_suite(args, kfconst):
    report = run_suite(args.name, _experiment(args), kfconst)
    return report, report['ok']


def cmd_profile(args, kfconst):
    frame = kfio.load_frame(args.frame)
    return {'k': args.k, 'profile': tunability_profile(
        frame, args.k, args.budget, kfconst)}, True


def cmd_generate(args, kfconst):
    frames = [f.to_dict() for f in generate_frames(_experiment(args))]
    if args.out:
        kfio.dump_json(frames, args.out)
        return {'frames': len(frames), 'files': [args.out]}, True
    return {'frames': frames}, True


def _add_formula(parser):
    parser.add_argument('--formula', help='formula text')
    parser.add_argument('--formulas', metavar='FILE',
                        help='one formula per line, "#" comments')


def _add_experiment(parser):
    parser.add_argument('--frames', type=int)
    parser.add_argument('--worlds', type=int)
    parser.add_argument('--density', type=float)
    parser.add_argument('--modalities', type=int)
    parser.add_argument('--variables', type=int)
    parser.add_argument('--depth', type=int)
    parser.add_argument('--timings', action='store_true', default=None)
    parser.add_argument('--image-formulas', type=int,
                        help='random formulas per verified p-morphism')


def build_parser():
    parser = argparse.ArgumentParser(
        prog='kripkelab', description='Finite Kripke-frame workbench.')
    parser.add_argument('--version', action='version',
                        version=str(__version__))
    parser.add_argument('--seed', type=int, help='seed of random experiments')
    parser.add_argument('--cap', type=int, default=CAP,
                        help='max n*k of a validity check')
    parser.add_argument('--format', choices=['json', 'text'], default='json')
    parser.add_argument('--check', action='store_true',
                        help='re-check guaranteed properties')
    parser.add_argument('-v', '--verbose', action='count', default=0)
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    _add_formula(command('parse', cmd_parse, 'parse and print formulas'))
    p = command('modelcheck', cmd_modelcheck, 'extension of formulas')
    p.add_argument('--frame', required=True)
    p.add_argument('--val', required=True, help='valuation file')
    _add_formula(p)
    p = command('valid', cmd_valid, 'frame validity with a countermodel')
    p.add_argument('--frame', required=True)
    _add_formula(p)
    p = command('refine', cmd_refine, 'coarsest tuned refinement')
    p.add_argument('--frame', required=True)
    p.add_argument('--partition', required=True, help='e.g. "0,1|2"')
    for name, func in (('height', cmd_height), ('degree', cmd_degree),
                       ('skeleton', cmd_skeleton)):
        command(name, func, 'frame %s' % name).add_argument(
            '--frame', required=True)
    p = command('sum', cmd_sum, 'sum over an index frame')
    p.add_argument('--index', required=True)
    p.add_argument('--summands', nargs='+', required=True)
    p.add_argument('--out', help='write the frame and its sidecar map')
    p = command('lexsum', cmd_lexsum, 'lexicographic sum')
    p.add_argument('--index', required=True)
    p.add_argument('--summands', nargs='+', required=True)
    p.add_argument('--split', help='e.g. "v:a;h:b"')
    p.add_argument('--product', action='store_true',
                   help='one summand copied at every index world')
    p.add_argument('--out')
    p = command('transfer', cmd_transfer, 'staged tuned partition transfer')
    p.add_argument('--index', required=True)
    p.add_argument('--summands', nargs='+', required=True)
    p.add_argument('--partition', required=True, help='base partition')
    p = command('cover', cmd_cover, 'lexicographic-sum cover of a frame')
    p.add_argument('--frame', required=True)
    p.add_argument('--split', required=True, help='e.g. "v:a;h:b"')
    p.add_argument('--root', type=int, help='default: least root')
    p.add_argument('--out')
    p = command('phi-check', cmd_phi_check, 'interaction conditions')
    p.add_argument('--frame', required=True)
    p.add_argument('--split', required=True)
    p = command('translate', cmd_translate, 'formula translations')
    p.add_argument('--mode', choices=['reflexive', 'relativize', 'm'],
                   required=True)
    p.add_argument('--xi', help='relativizing formula')
    p.add_argument('--m', type=int)
    p.add_argument('--alphabet', nargs='+')
    p.add_argument('--modalities', nargs='+',
                   help='reflexive mode: diamonds to translate')
    _add_formula(p)
    p = command('qes', cmd_qes, 'defect construction trace')
    p.add_argument('--frame', required=True)
    p.add_argument('--modality', required=True)
    p.add_argument('--generators', help='list of world arrays')
    p.add_argument('--all', action='store_true',
                   help='also check the embedding over every modality')
    p = command('suite', cmd_suite, 'run an experiment suite')
    p.add_argument('name', choices=list(SUITES))
    _add_experiment(p)
    p = command('profile', cmd_profile, 'tunability profile')
    p.add_argument('--frame', required=True)
    p.add_argument('--k', type=int, required=True)
    p.add_argument('--budget', type=int)
    p = command('generate', cmd_generate, 'write random frames')
    _add_experiment(p)
    p.add_argument('--out')
    return parser


def render_text(report):
    """Text form: the summary lines if any, else one line per key."""
    if 'summary' in report:
        return '\n'.join(report['summary'])
    return '\n'.join('%s: %s' % (key, json.dumps(report[key], sort_keys=True))
                     for key in sorted(report))


def main(argv=None):
    """
    Run one command.

    :param argv: arguments, ``sys.argv[1:]`` by default
    :return: exit code
    """
    args = build_parser().parse_args(argv)
    level = LOG_LEVELS[min(args.verbose, len(LOG_LEVELS) - 1)]
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    try:
        kfconst = KFconstants(cap=args.cap, check_invariants=args.check)
        report, ok = args.func(args, kfconst)
    except (KFCapExceededError, KFBudgetExceededError) as exc:
        LOGGER.error('%s', exc)
        return EXIT_CAP
    except KFexception as exc:
        LOGGER.error('%s', exc)
        return EXIT_ERROR
    if args.format == 'json':
        sys.stdout.write(kfio.dumps(report) + '\n')
    else:
        sys.stdout.write(render_text(report) + '\n')
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
