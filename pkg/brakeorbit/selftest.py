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


import logging
import os
from itertools import product
from tempfile import TemporaryDirectory
from time import perf_counter

import numpy as np

from .config import ProblemConfig
from .constraints import barycenter_report, coefficients_positive, \
    min_mJ_bound_check, project_gaps, symmetrize
from .energy import gradient_array, total_energy
from .meanfield import indicator_interaction, integrate_orbit, orbit_energy
from .measures import EmpiricalMeasure, IntervalIndicator, wasserstein2
from .potentials import AveragedPotential, KernelSpec, PotentialSpec
from .timegrid import TimeGrid, TrajectoryGrid, symmetry_index_maps

_logger = logging.getLogger(__name__)


def brute_force_projection(row, min_gap):
    """ euclidean projection onto `x^{i+1} - x^i >= min_gap`
    by enumeration of all `2^(N-1)` partitions into pooled blocks """
    row = np.asarray(row, dtype=float)
    n = len(row)
    shift = min_gap * np.arange(n)
    y = row - shift
    best, best_dist = None, np.inf
    for cuts in product((False, True), repeat=n - 1):
        bounds = [0] + [i + 1 for i, c in enumerate(cuts) if c] + [n]
        z = np.empty(n)
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            z[lo:hi] = np.mean(y[lo:hi])
        if np.any(np.diff(z) < -1e-12):
            continue
        dist = float(np.sum((z - y) ** 2))
        if dist < best_dist:
            best, best_dist = z, dist
    return best + shift


# --- suites ---------------------------------------------------------------

def _gradient_suite(inject_fault=False):
    """ analytic gradient against central differences """
    grid = TimeGrid(4.0, 8)
    cfg = ProblemConfig(3, grid, KernelSpec('inverse_sqrt', 1.0),
                        PotentialSpec(), symmetric_class=False)
    rng = np.random.default_rng(1)
    x = np.cumsum(0.5 + 0.3 * rng.random((grid.steps, 3)), axis=1) - 1.0
    sign = -1.0 if inject_fault else 1.0
    g = gradient_array(x, cfg, interaction_sign=sign)
    h = 1e-6
    fd = np.zeros_like(x)
    for k, i in product(range(grid.steps), range(3)):
        e = np.zeros_like(x)
        e[k, i] = h
        fd[k, i] = (total_energy(x + e, cfg) - total_energy(x - e, cfg)) \
            / (2.0 * h)
    return float(np.max(np.abs(g - fd))) <= 1e-6 * max(1.0, np.max(np.abs(fd)))


def _barycenter_suite():
    """ exact coefficients, linear identity and the minimal `m^J` bound """
    if not all(coefficients_positive(n) for n in range(2, 13)):
        return False
    rng = np.random.default_rng(2)
    for n in (2, 3, 7, 12):
        row = np.cumsum(rng.random(n))
        if barycenter_report(row).residual > 1e-10:
            return False
    return min_mJ_bound_check(6, 1.0 / 6.0, 200)


def _projection_suite():
    """ pool adjacent violators against the enumeration oracle """
    rng = np.random.default_rng(3)
    for n in (1, 2, 3, 5, 8):
        for _ in range(20):
            row = rng.normal(0.0, 1.0, n)
            c = 1.0 / n
            if np.max(np.abs(project_gaps(row, c) -
                             brute_force_projection(row, c))) > 1e-12:
                return False
    return True


def _wasserstein_suite():
    """ closed forms of midpoint atoms and shifted indicators """
    for n in (1, 4, 16):
        points = 0.3 + (np.arange(n) + 0.5) / n
        d = wasserstein2(EmpiricalMeasure(points), IntervalIndicator(0.3))
        if abs(d - 1.0 / (n * np.sqrt(12.0))) > 1e-12:
            return False
    d = wasserstein2(IntervalIndicator(-0.2), IntervalIndicator(0.45))
    return abs(d - 0.65) <= 1e-12


def _drift_suite(t_span=5.0):
    """ energy drift of the symplectic integrator """
    pot = PotentialSpec()
    averaged = AveragedPotential(pot, lo=-1.0, hi=0.0)
    t, a, v = integrate_orbit(pot, -0.5, 0.01, t_span, 1e-3)
    e = orbit_energy(averaged, a, v)
    return float(np.max(np.abs(e - e[0]))) <= 1e-8


def _symmetry_suite():
    """ both maps are involutions and symmetrization is idempotent """
    grid = TimeGrid(8.0, 16)
    rng = np.random.default_rng(4)
    traj = TrajectoryGrid(grid, rng.normal(0.0, 1.0, (16, 5)))
    for s in symmetry_index_maps(grid, 5):
        if s(s(traj)) != traj:
            return False
    once = symmetrize(traj)
    twice = symmetrize(once)
    residual = max(s.residual(once) for s in symmetry_index_maps(grid, 5))
    return residual <= 1e-14 and \
        np.max(np.abs(once.positions - twice.positions)) <= 1e-14


def _indicator_suite():
    """ `int int |x-y|^(-1/2)` over the unit square equals `8/3` """
    value = indicator_interaction(KernelSpec('inverse_sqrt', 1.0))
    return abs(value - 8.0 / 3.0) <= 1e-8


def _csv_suite():
    """ trajectories survive the csv round trip bit for bit """
    from .cli import read_trajectories_csv, write_trajectories_csv
    grid = TimeGrid(50.0, 16)
    rng = np.random.default_rng(5)
    traj = TrajectoryGrid(grid, np.cumsum(rng.random((16, 4)), axis=1))
    with TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'trajectories.csv')
        write_trajectories_csv(traj, path)
        back = read_trajectories_csv(path, grid)
    return back == traj


def run_selftest(inject_fault=False):
    """ runs all property suites

    :param bool inject_fault: flip the sign of the interaction gradient,
        the gradient suite must fail then
    :return: list of `(name, passed, seconds)`

    """
    suites = (
        ('gradient', lambda: _gradient_suite(inject_fault)),
        ('barycenter', _barycenter_suite),
        ('projection', _projection_suite),
        ('wasserstein', _wasserstein_suite),
        ('symplectic', _drift_suite),
        ('symmetry', _symmetry_suite),
        ('indicator', _indicator_suite),
        ('csv', _csv_suite),
    )
    results = list()
    for name, suite in suites:
        start = perf_counter()
        try:
            passed = bool(suite())
        except Exception as e:
            _logger.error("suite %s raised %s" % (name, repr(e)))
            passed = False
        seconds = perf_counter() - start
        _logger.info("suite %s %s in %.2fs"
                     % (name, 'passed' if passed else 'failed', seconds))
        results.append((name, passed, seconds))
    return results
