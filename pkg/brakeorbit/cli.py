# -*- coding: utf-8 -*-

# brakeorbit
# ----------
# Python library for periodic minimizers of constrained interacting
# agent energies and their mean-field brake orbits.
#
# Author:   sonntagsgesicht
# Version:  0.1, copyright Saturday, 17 October 2026
# Website:  https://github.com/sonntagsgesicht/brakeorbit
# License:  Apache License 2.0 (see LICENSE file)


import csv
import json
import logging
import os
from argparse import ArgumentParser
from dataclasses import asdict, dataclass, field
from math import isfinite

import numpy as np

from . import __version__
from .config import ConfigError, ProblemConfig
from .constraints import project_feasible
from .meanfield import block_from_orbit, meanfield_energy, solve_brake_orbit
from .measures import gamma_convergence_report
from .optimizer import initial_guess, minimize, multi_start, \
    optimality_residuals, resample, verify_saturation, verify_support
from .potentials import averaged_potential_limit
from .selftest import run_selftest
from .svg import loglog_svg, orbit_svg, trajectories_svg
from .timegrid import TimeGrid, TrajectoryGrid

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_CONFIG = 2
EXIT_NOT_CONVERGED = 3
EXIT_TRIVIAL = 4


@dataclass
class RunManifest:
    """ provenance of one command run """
    command: str
    digest: str
    seed: int
    version: str = __version__
    outputs: list = field(default_factory=list)

    def add(self, name):
        self.outputs.append(name)
        return name

    def write(self, out):
        self.outputs.append('manifest.json')
        _write_json(asdict(self), os.path.join(out, 'manifest.json'))


# --- file formats ---------------------------------------------------------

def _clean(obj):
    """ json friendly copy, non finite floats become `null` """
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if isfinite(obj) else None
    return obj


def _write_json(obj, path):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(_clean(obj), f, indent=2, sort_keys=True, allow_nan=False)
        f.write('\n')


def write_trajectories_csv(traj, path):
    """ header `t,x1,...,xN`, one row per node, 17 significant digits """
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['t'] + ['x%d' % i
                                 for i in range(1, traj.n_agents + 1)])
        for t, row in zip(traj.times, traj.positions):
            writer.writerow(['%.17g' % t] + ['%.17g' % v for v in row])


def read_trajectories_csv(path, grid=None):
    """ inverse of :func:`write_trajectories_csv` """
    with open(path, newline='') as f:
        rows = list(csv.reader(f))
    data = np.array([[float(v) for v in row] for row in rows[1:]])
    if grid is None:
        grid = TimeGrid(-2.0 * data[0, 0], len(data))
    return TrajectoryGrid(grid, data[:, 1:])


def write_history_csv(history, path):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(('iteration', 'energy', 'grad_norm', 'saturation_dev'))
        for it, e, g, s in history:
            writer.writerow((it, '%.17g' % e, '%.17g' % g, '%.17g' % s))


def write_orbit_csv(orbit, path):
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(('t', 'a', 'v'))
        for t, a, v in zip(orbit.times, orbit.a, orbit.v):
            writer.writerow(('%.17g' % t, '%.17g' % a, '%.17g' % v))


# --- commands -------------------------------------------------------------

def _threads(args):
    if getattr(args, 'threads', None):
        return args.threads
    value = os.environ.get('BRAKE_THREADS', '0')
    try:
        return int(value) or None
    except ValueError:
        raise ConfigError("BRAKE_THREADS %s must be an integer" % repr(value))


def _prepare(args, command):
    cfg = ProblemConfig.from_json(args.config)
    os.makedirs(args.out, exist_ok=True)
    return cfg, RunManifest(command, cfg.digest(), cfg.opt.seed)


def cmd_minimize(args):
    """ multi start minimization with csv, json and svg output """
    cfg, manifest = _prepare(args, 'minimize')
    modes = [m.strip() for m in args.starts.split(',') if m.strip()]
    if not modes:
        raise ConfigError("no initial guess mode given")
    threads = _threads(args)
    try:
        results = multi_start(cfg, modes, threads)
    except ValueError as e:
        raise ConfigError(str(e))
    best = results[0]
    out = args.out

    write_trajectories_csv(
        best.traj, os.path.join(out, manifest.add('trajectories.csv')))
    write_history_csv(
        best.history, os.path.join(out, manifest.add('history.csv')))
    diagnostics = best.diagnostics.to_dict()
    diagnostics.update({
        'converged': best.converged,
        'iterations': best.iterations,
        'start': best.mode,
        'energies': best.energy.to_dict(),
        'support_verified': verify_support(best, cfg.potential),
        'saturation': verify_saturation(best, cfg).to_dict(),
        'optimality': [r.to_dict() for r in optimality_residuals(best, cfg)],
        'starts': [{'start': r.mode, 'energy': r.energy.total,
                    'converged': r.converged,
                    'saturation_dev': r.diagnostics.saturation_dev}
                   for r in results],
    })
    _write_json(diagnostics,
                os.path.join(out, manifest.add('diagnostics.json')))
    trajectories_svg(
        best.traj, os.path.join(out, manifest.add('trajectories.svg')),
        'N = %d, T = %g' % (cfg.n_agents, cfg.period))
    manifest.write(out)
    return EXIT_OK if best.converged else EXIT_NOT_CONVERGED


def cmd_brake(args):
    """ mean-field brake orbit with csv, json and svg output """
    cfg, manifest = _prepare(args, 'brake')
    orbit = solve_brake_orbit(cfg.potential, cfg.grid)
    out = args.out
    write_orbit_csv(orbit, os.path.join(out, manifest.add('orbit.csv')))
    lo, hi = orbit.turning_points()
    boundary, brake, reflect = orbit.symmetry_residuals()
    diagnostics = {
        'trivial': orbit.trivial,
        'v0': orbit.v0,
        'ode_residual': orbit.ode_residual,
        'shooting_residual': orbit.shooting_residual,
        'turning_points': [lo, hi],
        'turning_point_potential': [
            averaged_potential_limit(cfg.potential, lo),
            averaged_potential_limit(cfg.potential, hi)],
        'symmetry_residuals': {'boundary': boundary, 'brake': brake,
                               'reflection': reflect},
        'roots': [{'v0': v, 'energy': e} for v, e in orbit.roots],
        'energies': meanfield_energy(
            orbit, cfg.potential, cfg.kernel).to_dict(),
    }
    _write_json(diagnostics,
                os.path.join(out, manifest.add('diagnostics.json')))
    orbit_svg(orbit, os.path.join(out, manifest.add('orbit.svg')),
              'brake orbit, T = %g' % cfg.period)
    manifest.write(out)
    return EXIT_TRIVIAL if orbit.trivial else EXIT_OK


def cmd_gamma(args):
    """ sequence of minimizers for increasing N against the brake orbit """
    cfg, manifest = _prepare(args, 'gamma')
    agents = [int(n) for n in args.agents.split(',') if n.strip()]
    orbit = solve_brake_orbit(cfg.potential, cfg.grid)
    out = args.out
    write_orbit_csv(orbit, os.path.join(out, manifest.add('orbit.csv')))

    solves, failures, iterations, previous = list(), dict(), dict(), None
    for n in agents:
        cfg_n = cfg.with_agents(n)
        try:
            if previous is None:
                start = block_from_orbit(orbit, n)
            else:
                start = resample(previous.traj, n)
            result = minimize(cfg_n, project_feasible(start, cfg_n))
        except (ValueError, AssertionError) as e:
            _logger.error("N=%d failed: %s" % (n, e))
            failures[n] = str(e)
            continue
        if not result.converged:
            failures[n] = 'not converged'
        iterations[n] = {'warm': result.iterations}
        if args.cold_compare:
            cold = minimize(cfg_n, initial_guess(cfg_n, 'wells_oscillation'))
            iterations[n]['cold'] = cold.iterations
        solves.append(result)
        previous = result

    report = gamma_convergence_report(
        orbit, solves, cfg.potential, cfg.kernel)
    report.to_csv(os.path.join(out, manifest.add('gamma.csv')))
    ns = sorted(report.max_d2)
    series = {'d2': (np.array(ns, dtype=float),
                     np.array([report.max_d2[n] for n in ns]))}
    gaps = np.array([report.energy_gap[n] for n in ns])
    if ns and np.all(np.isfinite(gaps)) and np.all(gaps > 0):
        series['energy_gap'] = (np.array(ns, dtype=float), gaps)
    if ns:
        loglog_svg(series, os.path.join(out, manifest.add('gamma.svg')),
                   'distance to the brake orbit profile')
    diagnostics = {
        'orbit_trivial': orbit.trivial,
        'meanfield_energy': report.meanfield_energy,
        'max_d2': report.max_d2,
        'energy_gap': report.energy_gap,
        'equicontinuity': report.equicontinuity,
        'iterations': iterations,
        'failures': failures,
    }
    _write_json(diagnostics,
                os.path.join(out, manifest.add('diagnostics.json')))
    manifest.write(out)
    return EXIT_NOT_CONVERGED if failures else EXIT_OK


def cmd_selftest(args):
    """ fast property suites, exit 1 on any failure """
    results = run_selftest(inject_fault=args.inject_fault)
    width = max(len(name) for name, _, _ in results)
    for name, passed, seconds in results:
        print('%s  %s  %6.2fs' % (name.ljust(width),
                                  'pass' if passed else 'FAIL', seconds))
    ok = all(passed for _, passed, _ in results)
    print('%d of %d suites passed' % (sum(p for _, p, _ in results),
                                      len(results)))
    return EXIT_OK if ok else EXIT_SELFTEST


# --- entry point ----------------------------------------------------------

def parser():
    p = ArgumentParser(
        prog='brakeorbit',
        description='periodic minimizers of constrained interacting agent '
                    'energies and their mean-field brake orbits')
    p.add_argument('-v', '--verbose', action='count', default=0,
                   help='log INFO (-v) or DEBUG (-vv) messages')
    p.add_argument('--version', action='version', version=__version__)
    sub = p.add_subparsers(dest='command', required=True)

    def common(s):
        s.add_argument('--config', required=True, help='JSON config file')
        s.add_argument('--out', required=True, help='output directory')
        s.add_argument('--threads', type=int, default=None,
                       help='worker threads (default: BRAKE_THREADS)')

    s = sub.add_parser('minimize', help=cmd_minimize.__doc__)
    common(s)
    s.add_argument('--starts', default='wells,stationary,random',
                   help='comma separated initial guess modes')
    s.set_defaults(func=cmd_minimize)

    s = sub.add_parser('brake', help=cmd_brake.__doc__)
    common(s)
    s.set_defaults(func=cmd_brake)

    s = sub.add_parser('gamma', help=cmd_gamma.__doc__)
    common(s)
    s.add_argument('--agents', default='8,16,32,64',
                   help='comma separated increasing numbers of agents')
    s.add_argument('--cold-compare', action='store_true',
                   help='also solve every N from a cold start')
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser('selftest', help=cmd_selftest.__doc__)
    s.add_argument('--inject-fault', action='store_true',
                   help='flip the interaction gradient (must fail)')
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    args = parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    try:
        return args.func(args)
    except ConfigError as e:
        _logger.error(str(e))
        return EXIT_CONFIG
