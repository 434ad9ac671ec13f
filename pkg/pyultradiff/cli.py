# -*- coding: utf-8 -*-

'''
Command-line front end for pyultradiff

    python -m pyultradiff analyze weight --spec gevrey:s=2 --conditions om1,om5,om_snq
    python -m pyultradiff gamma --spec logpow:s=2 --gamma-max 10
    python -m pyultradiff verify --suite all
'''

import sys
import time
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from chirptext.cli import CLIApp, setup_logging

from .defaults import VERIFY_CORPUS, MATRIX_INDICES, MATRIX_P_MAX, GAMMA_MAX, GAMMA_TOL, JET_LENGTH
from .defaults import TailGrid, thread_count
from .errors import BudgetExhaustedError, ConfigError, DomainError, PreconditionError, UltradiffError
from .render import Report, write_report, write_csv
from .sequences import parse_sequence, check_sequence_condition
from .weights import GevreyPower, parse_weight, check_weight_condition, check_weight_axioms
from .conjugates import verify_sandwich, SANDWICH_ANCHORS
from .matrices import build_matrix, check_matrix_condition, check_matrix_omega7, MATRIX_ANCHORS
from .gamma import GammaConfig, estimate_gamma, verify_index_identity, IDENTITY_ANCHORS
from .flat import FlatFunction, SectorPoint, check_flat_bounds, check_kernel_integrability, check_outer_bounds
from .flat import write_sector_grid
from .jets import (random_jet, jet_norm, y_operator_coefficients, check_y_bound,
                   check_complexification, check_ramified_taylor)
from .surgery import SurgeryConfig, build_surgery_weight, check_surgery


try:
    setup_logging('logging.json', 'logs')
except Exception:
    pass


def getLogger():
    return logging.getLogger(__name__)


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3

SUITES = ('sequences', 'weights', 'gamma', 'conjugates', 'matrices', 'flat', 'jets', 'surgery')


# ------------------------------------------------------------------------------
# Run configuration
# ------------------------------------------------------------------------------

@dataclass
class RunConfig:
    ''' Echo of the command line; descriptors are parsed before any computation '''
    command: str
    options: Dict[str, Any] = field(default_factory=dict)

    @staticmethod
    def from_args(args):
        options = {k: v for k, v in sorted(vars(args).items())
                   if k not in ('func', 'verbose', 'quiet', 'output', 'overwrite', 'timing')}
        return RunConfig(args.command, options)

    def get(self, key, default=None):
        value = self.options.get(key)
        return default if value is None else value

    def to_dict(self):
        return {'command': self.command, **self.options}


def _split(text):
    return [x.strip() for x in text.split(',') if x.strip()] if text else []


def _floats(text):
    try:
        return [float(x) for x in _split(text)]
    except ValueError:
        raise ConfigError(f"Expected a comma separated list of numbers, found {text!r}")


def _gamma_config(config):
    return GammaConfig(gamma_max=config.get('gamma_max', GAMMA_MAX), tol=config.get('tol', GAMMA_TOL))


# ------------------------------------------------------------------------------
# Commands
# ------------------------------------------------------------------------------

def run_analyze(config, report):
    conditions = _split(config.get('conditions'))
    if config.get('target') == 'sequence':
        seq = parse_sequence(config.get('spec'), config.get('p_max', 256))
        other = parse_sequence(config.get('other')) if config.get('other') else None
        report.add(*[check_sequence_condition(seq, c, other) for c in conditions or ('lc', 'mg', 'nq')])
    else:
        w = parse_weight(config.get('spec'))
        report.add(*[check_weight_condition(w, c) for c in conditions or ('om1', 'om5', 'om_snq')])


def run_gamma(config, report):
    w = parse_weight(config.get('spec'))
    gcfg = _gamma_config(config)
    report.gamma.append(estimate_gamma(w, gcfg))
    for kind in _split(config.get('identities')):
        report.add(verify_index_identity(kind, w, gcfg))


def run_matrix(config, report):
    w = parse_weight(config.get('spec'))
    indices = _floats(config.get('indices')) or MATRIX_INDICES
    m = build_matrix(w, indices, config.get('p_max', MATRIX_P_MAX))
    for cond in _split(config.get('conditions')) or ('mg_roumieu', 'sc'):
        if cond == 'omega7':
            report.add(check_matrix_omega7(m))
        else:
            report.add(check_matrix_condition(m, cond))
    if config.get('csv'):
        m.write_csv(config.get('csv'), overwrite=True)


def run_conjugate(config, report):
    kinds = _split(config.get('kinds')) or ('conjugate_vs_matrix', 'conjugate_doubling')
    for kind in kinds:
        if kind in ('omega_star_vs_omega_m', 'mixed_moderate_growth'):
            subject = parse_sequence(config.get('spec'))
            other = parse_sequence(config.get('other')) if config.get('other') else None
        else:
            subject, other = parse_weight(config.get('spec')), None
        report.add(verify_sandwich(kind, subject, other))


def _sector_points(config, f):
    radii = _floats(config.get('radii')) or [0.25, 0.5, 1.0, 2.0]
    thetas = _floats(config.get('thetas')) or [0.0, 0.5 * f.gamma, -0.5 * f.gamma]
    return [SectorPoint(r, th * np.pi / 2) for r in radii for th in thetas], radii, thetas


def run_flat(config, report):
    w = parse_weight(config.get('spec'))
    a = config.get('a', 1.0)
    if config.get('s'):
        f = FlatFunction(w, a, config.get('s'))
    else:
        f = FlatFunction.build(w, a, config.get('gamma'))
    points, radii, thetas = _sector_points(config, f)
    report.add(check_kernel_integrability(w, f.s))
    report.add(check_flat_bounds(f, points))
    if f.s == 1.0:
        report.add(check_outer_bounds(f, [p.to_complex() for p in points]))
    report.tables['flat'] = [[f.a, f.s, f.gamma, f.delta]]
    if config.get('csv'):
        write_sector_grid(f, radii, [th * np.pi / 2 for th in thetas], config.get('csv'), overwrite=True)


def run_surgery(config, report):
    w = parse_weight(config.get('spec'))
    sw = build_surgery_weight(w, config.get('majorant', 'power:a=0.75'), config.get('gamma_target', 1.5),
                              SurgeryConfig(gamma=_gamma_config(config)))
    est = estimate_gamma(sw, _gamma_config(config))
    report.add(check_surgery(sw, estimate=est))
    report.gamma.append(est)
    report.tables['breakpoints'] = [[r['n'], r['x'], r['growth'], r['doubling'], r['majorant']]
                                    for r in sw.margins()]


def run_jets(config, report):
    length = config.get('length', JET_LENGTH)
    w = parse_weight(config.get('spec', 'gevrey:s=2'))
    l = config.get('l', 1.0)
    row = build_matrix(w, (l,), max(MATRIX_P_MAX, length)).row(l)
    jet = random_jet(length, config.get('seed', 0), bound=row)
    report.add(check_complexification(jet, row))
    q = config.get('q', 2)
    report.add(check_ramified_taylor(jet, q, min(8, length)))
    report.add(check_y_bound(y_operator_coefficients(q, config.get('y_order', 20))))
    report.tables['jet_norm'] = [[l, jet_norm(jet, row)]]
    if config.get('csv'):
        jet.to_csv(config.get('csv'), overwrite=True)


def run_dump(config, report):
    kind = config.get('kind')
    path = config.get('csv')
    if not path:
        raise ConfigError("dump needs --csv")
    spec = config.get('spec')
    if kind == 'sequence':
        write_csv(path, ('p', 'logM'), parse_sequence(spec).rows(), overwrite=True)
    elif kind == 'weight':
        w = parse_weight(spec)
        t = TailGrid().full()
        write_csv(path, ('t', 'omega'), zip(t, w(t)), overwrite=True)
    elif kind == 'matrix':
        build_matrix(parse_weight(spec), _floats(config.get('indices')) or MATRIX_INDICES).write_csv(path, overwrite=True)
    elif kind == 'flat':
        f = FlatFunction.build(parse_weight(spec), config.get('a', 1.0))
        _, radii, thetas = _sector_points(config, f)
        write_sector_grid(f, radii, [th * np.pi / 2 for th in thetas], path, overwrite=True)
    elif kind == 'jet':
        random_jet(config.get('length', JET_LENGTH), config.get('seed', 0)).to_csv(path, overwrite=True)
    else:
        raise ConfigError(f"Unknown dump kind {kind!r}")
    report.tables['dump'] = [[kind, path]]


# ------------------------------------------------------------------------------
# Verification suite
# ------------------------------------------------------------------------------

def _corpus():
    return [parse_weight(d) for d in VERIFY_CORPUS]


def _suite_checks(suite):
    ''' (name, thunk) pairs; each thunk returns a list of records '''
    checks = []
    corpus = _corpus()
    if suite in ('all', 'sequences'):
        for s in (1.0, 2.0):
            seq = parse_sequence(f"gevrey-seq:s={s:g}")
            conds = ('lc', 'slc', 'mg', 'nq', 'beta1', 'gamma1') if s > 1 else ('lc', 'mg')
            checks.append((f"sequence {seq.name}", lambda seq=seq, conds=conds:
                           [check_sequence_condition(seq, c) for c in conds]))
    if suite in ('all', 'weights'):
        for w in corpus:
            conds = ['om1', 'om3', 'om4', 'om5']
            if isinstance(w, GevreyPower):
                conds += ['om_nq', 'om_snq']
            checks.append((f"weight {w.name}", lambda w=w, conds=conds:
                           [check_weight_axioms(w)] + [check_weight_condition(w, c) for c in conds]))
    if suite in ('all', 'gamma'):
        for w in corpus:
            checks.append((f"gamma {w.name}", lambda w=w: [estimate_gamma(w)]))
        gev2, gev4 = GevreyPower(2.0), GevreyPower(4.0)
        for kind, w in (('upper_conjugate_shift', gev2), ('upper_conjugate_shift', gev4),
                        ('scaling', gev2), ('matrix_chain', gev2)):
            checks.append((f"{kind} {w.name}", lambda kind=kind, w=w: [verify_index_identity(kind, w)]))
    if suite in ('all', 'conjugates'):
        gev2, sigma2 = GevreyPower(2.0), parse_weight('logpow:s=2')
        checks.append(("conjugates", lambda: [verify_sandwich('conjugate_vs_matrix', sigma2),
                                              verify_sandwich('conjugate_vs_h', sigma2),
                                              verify_sandwich('conjugate_doubling', gev2),
                                              verify_sandwich('omega_star_vs_omega_m',
                                                              parse_sequence('gevrey-seq:s=2'))]))
    if suite in ('all', 'matrices'):
        checks.append(("matrices", lambda: [check_matrix_condition(build_matrix(GevreyPower(2.0)), 'mg_roumieu'),
                                            check_matrix_condition(build_matrix(GevreyPower(2.0)), 'sc'),
                                            check_matrix_omega7(build_matrix(parse_weight('logpow:s=2')))]))
    if suite in ('all', 'flat'):
        def flat_checks():
            w = GevreyPower(4.0)
            f = FlatFunction(w, 1.0, 1.0)
            pts = [complex(r * np.cos(t), r * np.sin(t)) for r in (0.5, 1.0, 2.0) for t in (0.0, 0.5, -0.5)]
            return [check_kernel_integrability(w), check_outer_bounds(f, pts)]
        checks.append(("flat", flat_checks))
    if suite in ('all', 'jets'):
        def jet_checks():
            row = build_matrix(GevreyPower(2.0), (1.0,)).row(1.0)
            jet = random_jet(JET_LENGTH, 0, bound=row)
            return [check_complexification(jet, row), check_ramified_taylor(jet, 2, 8),
                    check_y_bound(y_operator_coefficients(2, 20))]
        checks.append(("jets", jet_checks))
    if suite in ('all', 'surgery'):
        checks.append(("surgery", lambda: [check_surgery(build_surgery_weight(GevreyPower(2.0), 'power:a=0.75', 1.5))]))
    if not checks:
        raise ConfigError(f"Unknown suite {suite!r}; choose all or one of {', '.join(SUITES)}")
    return checks


def run_verify(config, report):
    checks = _suite_checks(config.get('suite', 'all'))
    workers = config.get('threads') or thread_count()
    getLogger().info(f"Running {len(checks)} verification groups on {workers} thread(s)")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda item: item[1](), checks))
    for items in results:
        for item in items:
            if hasattr(item, 'verdict'):
                report.add(item)
            else:
                report.gamma.append(item)


COMMANDS = {
    'analyze': run_analyze,
    'gamma': run_gamma,
    'matrix': run_matrix,
    'conjugate': run_conjugate,
    'flat': run_flat,
    'surgery': run_surgery,
    'jets': run_jets,
    'verify': run_verify,
    'dump': run_dump,
}


def exit_status(report):
    if any(r.fails for r in report.records):
        return EXIT_FAILED
    return EXIT_OK


def run(config, timing=False):
    ''' Execute one command; errors become exit statuses 2 (input) and 3 (numerical budget)

    :rtype: (Report, int)
    '''
    report = Report(config.command, config.to_dict())
    started = time.perf_counter()
    try:
        COMMANDS[config.command](config, report)
        status = exit_status(report)
    except (ConfigError, PreconditionError, DomainError) as e:
        getLogger().error(f"{config.command}: {e}")
        report.tables['error'] = [[type(e).__name__, str(e)]]
        status = EXIT_CONFIG
    except (BudgetExhaustedError, UltradiffError) as e:
        getLogger().error(f"{config.command}: {e}")
        report.tables['error'] = [[type(e).__name__, str(e)]]
        status = EXIT_BUDGET
    report.exit_status = status
    if timing:
        report.timing = {'seconds': time.perf_counter() - started}
    return report, status


# ------------------------------------------------------------------------------
# Argument parsing
# ------------------------------------------------------------------------------

def _task(app, name, helptext):
    task = app.add_task(name, func=_dispatch, help=helptext)
    task.set_defaults(command=name)
    task.add_argument('-o', '--output', help='JSON report path (stdout when omitted)')
    task.add_argument('--overwrite', action='store_true')
    task.add_argument('--timing', action='store_true', help='include wall-clock timing in the report')
    return task


def build_app():
    app = CLIApp(desc='Weight sequences, weight functions, weight matrices and flat functions', add_vq=True)
    task = _task(app, 'analyze', 'decide conditions on a weight or a weight sequence')
    task.add_argument('target', choices=('weight', 'sequence'))
    task.add_argument('--spec', required=True)
    task.add_argument('--other')
    task.add_argument('--conditions')
    task.add_argument('--p-max', type=int)
    task = _task(app, 'gamma', 'estimate the growth index')
    task.add_argument('--spec', required=True)
    task.add_argument('--gamma-max', type=float)
    task.add_argument('--tol', type=float)
    task.add_argument('--identities', help=f"any of {', '.join(IDENTITY_ANCHORS)}")
    task = _task(app, 'matrix', 'tabulate the weight matrix and decide matrix conditions')
    task.add_argument('--spec', required=True)
    task.add_argument('--indices')
    task.add_argument('--p-max', type=int)
    task.add_argument('--conditions', help=f"any of {', '.join(MATRIX_ANCHORS)}, omega7")
    task.add_argument('--csv')
    task = _task(app, 'conjugate', 'check conjugate sandwich inequalities')
    task.add_argument('--spec', required=True)
    task.add_argument('--other')
    task.add_argument('--kinds', help=f"any of {', '.join(SANDWICH_ANCHORS)}")
    task = _task(app, 'flat', 'build a sectorially flat function and check its bounds')
    task.add_argument('--spec', required=True)
    task.add_argument('-a', type=float)
    task.add_argument('-s', type=float)
    task.add_argument('--gamma', type=float)
    task.add_argument('--radii')
    task.add_argument('--thetas', help='arguments in units of pi/2')
    task.add_argument('--csv')
    task = _task(app, 'surgery', 'build a surgery weight between omega and a majorant')
    task.add_argument('--spec', required=True)
    task.add_argument('--majorant')
    task.add_argument('--gamma-target', type=float)
    task.add_argument('--gamma-max', type=float)
    task.add_argument('--tol', type=float)
    task = _task(app, 'jets', 'complexify and ramify a random jet')
    task.add_argument('--spec')
    task.add_argument('--length', type=int)
    task.add_argument('--seed', type=int)
    task.add_argument('-l', type=float)
    task.add_argument('--ramify-order', dest='q', type=int)
    task.add_argument('--y-order', type=int)
    task.add_argument('--csv')
    task = _task(app, 'verify', 'run the verification suite')
    task.add_argument('--suite', default='all', help=f"all or one of {', '.join(SUITES)}")
    task.add_argument('--threads', type=int)
    task = _task(app, 'dump', 'write plot-ready CSV tables')
    task.add_argument('kind', choices=('sequence', 'weight', 'matrix', 'flat', 'jet'))
    task.add_argument('--spec')
    task.add_argument('--indices')
    task.add_argument('--radii')
    task.add_argument('--thetas')
    task.add_argument('-a', type=float)
    task.add_argument('--length', type=int)
    task.add_argument('--seed', type=int)
    task.add_argument('--csv')
    return app


def _dispatch(cli, args):
    if getattr(args, 'verbose', False):
        logging.getLogger('pyultradiff').setLevel(logging.DEBUG)
    elif getattr(args, 'quiet', False):
        logging.getLogger('pyultradiff').setLevel(logging.ERROR)
    report, status = run(RunConfig.from_args(args), timing=args.timing)
    if args.output:
        write_report(report, args.output, overwrite=args.overwrite)
    else:
        print(report.to_json())
    return status


def main(argv=None):
    app = build_app()
    args = app.parser.parse_args(argv)
    if not hasattr(args, 'func'):
        app.parser.print_help()
        return EXIT_CONFIG
    return args.func(app, args)


if __name__ == '__main__':
    sys.exit(main())
