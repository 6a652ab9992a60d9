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
import os
import sys
import unittest

from datetime import datetime
from fractions import Fraction
from math import isnan, sqrt
from tempfile import TemporaryDirectory
from xml.etree import ElementTree

import numpy as np

sys.path.append('.')
sys.path.append('..')

from brakeorbit import (TimeGrid, TrajectoryGrid, symmetry_index_maps,
                        validate, PotentialSpec, KernelSpec,
                        AveragedPotential, ConfigError, OptimizerSettings,
                        ProblemConfig, shipped_config)
from brakeorbit.potentials import smooth_positive_part, smooth_double_well, \
    smooth_double_well_derivative, averaged_potential_N, \
    averaged_potential_N_derivative, averaged_potential_limit, \
    averaged_potential_limit_derivative, inverse_sqrt_kernel
from brakeorbit.energy import energy, total_energy, gradient, \
    gradient_array, interaction_energy, kN_constant, saturated_energy
from brakeorbit.constraints import symmetrize, project_gaps, \
    project_feasible, barycenter_report, barycenter_coefficient, \
    coefficients_positive, min_mJ_bound_check
from brakeorbit.optimizer import SolveResult, initial_guess, minimize, \
    multi_start, diagnose, verify_support, verify_saturation, \
    verify_reduced_ode, optimality_residuals, truncate, resample, \
    saturation_deviation
from brakeorbit.meanfield import BrakeOrbit, IntervalProfile, \
    integrate_orbit, orbit_energy, solve_brake_orbit, \
    indicator_interaction, meanfield_energy, block_from_orbit
from brakeorbit.measures import EmpiricalMeasure, IntervalIndicator, \
    DensityGrid, wasserstein1, wasserstein2, quantile_particles, mollify, \
    density_bound_check, gamma_convergence_report, equicontinuity_ratio
from brakeorbit.selftest import brute_force_projection, run_selftest
from brakeorbit.svg import trajectories_svg, orbit_svg, loglog_svg
from brakeorbit.cli import main, read_trajectories_csv, \
    write_trajectories_csv

SLOW = bool(os.environ.get('BRAKE_SLOW_TESTS'))
ZETA_HALF = -1.4603545088095868


def _silent(func, *args):
    _stout = sys.stdout
    sys.stdout = open(os.devnull, 'w')
    _res = func(*args)
    sys.stdout.close()
    sys.stdout = _stout
    return _res


def _random_feasible(rng, steps, n, spread=0.5):
    """ sorted rows with gaps of at least 1/n """
    gaps = 1.0 / n + spread * rng.random((steps, n - 1))
    start = rng.uniform(-1.0, 1.0, (steps, 1))
    return np.concatenate((start, start + np.cumsum(gaps, axis=1)), axis=1)


def _result(traj, cfg):
    return SolveResult(traj, ((0, 0.0, 0.0, 0.0),), True,
                       diagnose(traj, cfg), energy(traj, cfg))


def _rigid_orbit(grid, amplitude=0.3):
    t = grid.times
    w = 2.0 * np.pi / grid.period
    a = -0.5 + amplitude * np.sin(w * t)
    v = amplitude * w * np.cos(w * t)
    return BrakeOrbit(grid, a, v, 0.0)


class TimeGridUnitTests(unittest.TestCase):
    def setUp(self):
        self.grid = TimeGrid(8.0, 8)
        self.rng = np.random.default_rng(11)

    def test_grid(self):
        self.assertRaises(ValueError, TimeGrid, 8.0, 6)
        self.assertRaises(ValueError, TimeGrid, -1.0, 8)
        g = self.grid
        self.assertEqual(1.0, g.dt)
        self.assertEqual(-4.0, g.times[0])
        self.assertEqual(0.0, g.times[g.zero])
        self.assertEqual(2.0, g.times[g.quarter])
        self.assertEqual(-2.0, g.times[g.minus_quarter])
        self.assertEqual(0, g.half)
        self.assertEqual(TimeGrid(8.0, 8), g)
        self.assertNotEqual(TimeGrid(8.0, 16), g)

    def test_symmetry_index_maps(self):
        s1, s2 = symmetry_index_maps(self.grid, 3)
        self.assertEqual(7, s1.time_index[5])
        self.assertEqual(5, s1.time_index[7])
        self.assertEqual(6, s1.time_index[self.grid.quarter])
        self.assertEqual(4, s2.time_index[self.grid.zero])
        self.assertEqual([2, 1, 0], list(s2.agent_index))
        self.assertEqual(-1.0, s2.sign)
        self.assertRaises(ValueError, symmetry_index_maps, 10, 3)

    def test_involutions(self):
        for m in range(4, 68, 4):
            grid = TimeGrid(1.0, m)
            traj = TrajectoryGrid(grid, self.rng.normal(0.0, 1.0, (m, 3)))
            for s in symmetry_index_maps(grid, 3):
                self.assertEqual(traj, s(s(traj)))

    def test_trajectory_grid(self):
        traj = TrajectoryGrid.constant(self.grid, (0.0, 0.5))
        self.assertEqual((8, 2), traj.positions.shape)
        self.assertEqual(2, traj.n_agents)
        self.assertTrue(np.all(traj.agent(2) == 0.5))
        self.assertTrue(np.all(traj.gaps == 0.5))
        self.assertRaises(ValueError, TrajectoryGrid, self.grid, np.zeros((7, 2)))
        with self.assertRaises(ValueError):
            traj.positions[0, 0] = 1.0

    def test_validate(self):
        cfg = ProblemConfig(4, self.grid, symmetric_class=False)
        traj = TrajectoryGrid.constant(self.grid, np.arange(4) / 4.0)
        report = validate(traj, cfg)
        self.assertTrue(report.feasible)
        self.assertEqual(0.0, report.violation)

        row = np.array((0.0, 0.25, 0.49, 0.74))
        report = validate(TrajectoryGrid.constant(self.grid, row), cfg)
        self.assertFalse(report.feasible)
        self.assertTrue(report.ordered)
        self.assertAlmostEqual(0.01, report.violation, places=12)

        self.assertRaises(ValueError, validate,
                          TrajectoryGrid.constant(self.grid, (0.0, 1.0)), cfg)

        for _ in range(20):
            x = TrajectoryGrid(self.grid, self.rng.normal(0.0, 1.0, (8, 4)))
            report = validate(symmetrize(x), cfg)
            self.assertTrue(report.symmetric)
            self.assertLessEqual(report.symmetry_residual, 1e-12)


class PotentialsUnitTests(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(12)
        self.double_well = PotentialSpec()
        self.quadratic = PotentialSpec('quadratic')
        self.zero = PotentialSpec('zero')

    def test_smooth_positive_part(self):
        self.assertAlmostEqual(0.05, smooth_positive_part(0.0), places=15)
        self.assertAlmostEqual(
            (0.1 * sqrt(1.0 + 10000.0) + 10.0) / 2.0,
            smooth_positive_part(10.0), places=15)
        self.assertLess(abs(smooth_positive_part(10.0) - 10.0), 1e-3)
        self.assertLess(abs(smooth_positive_part(-10.0)), 1e-3)
        self.assertGreater(smooth_positive_part(-10.0), 0.0)

    def test_paper_potential(self):
        x = self.rng.uniform(-3.0, 3.0, 100)
        self.assertTrue(np.all(smooth_double_well(x) == smooth_double_well(-x)))
        h = 1e-6
        fd = (smooth_double_well(x + h) - smooth_double_well(x - h)) / (2 * h)
        an = smooth_double_well_derivative(x)
        self.assertTrue(np.all(np.abs(an - fd) <= 1e-5 * np.maximum(1.0, np.abs(fd))))
        self.assertLess(smooth_double_well(1.2), 1.0)
        self.assertGreater(smooth_double_well(0.0), 4.0)
        self.assertEqual(smooth_double_well(1.2), self.double_well(1.2))

    def test_derivatives(self):
        x = self.rng.uniform(-5.0, 5.0, 1000)
        h = 1e-6
        for pot in (self.double_well, self.quadratic, self.zero,
                    PotentialSpec('quadratic', [2.5])):
            fd = (pot.W(x + h) - pot.W(x - h)) / (2 * h)
            err = np.abs(pot.dW(x) - fd)
            self.assertTrue(np.all(err <= 1e-5 * np.maximum(1.0, np.abs(fd))))

    def test_potential_spec(self):
        for pot in (self.double_well, self.quadratic, self.zero):
            self.assertTrue(pot.check())
            self.assertTrue(pot.symmetric)
        self.assertAlmostEqual(sqrt(3.0) + 0.1, self.double_well.r0)
        self.assertEqual(self.double_well, PotentialSpec('double_well'))
        self.assertEqual(1.5, PotentialSpec('paper', r0=1.5).r0)
        self.assertRaises(ValueError, PotentialSpec, 'cosine')
        self.assertRaises(ValueError, PotentialSpec, 'zero', [1.0, 2.0])

    def test_kernel(self):
        self.assertEqual((1.0, -0.5), inverse_sqrt_kernel(1.0, 1.0))
        self.assertAlmostEqual(2.0, inverse_sqrt_kernel(1.0, 0.25)[0])
        self.assertAlmostEqual(5.0 * sqrt(2.0), inverse_sqrt_kernel(5.0, 0.5)[0])
        self.assertRaises(ValueError, inverse_sqrt_kernel, 1.0, 0.0)
        self.assertRaises(ValueError, inverse_sqrt_kernel, 1.0, -1.0)
        k = KernelSpec('inverse_sqrt', 5.0)
        self.assertTrue(k.check())
        self.assertAlmostEqual(5.0, k.K(1.0))
        self.assertAlmostEqual(-2.5, k.dK(1.0))
        self.assertTrue(KernelSpec('constant', 2.0).check())
        self.assertEqual(2.0, KernelSpec('constant', 2.0).K(0.3))
        self.assertRaises(ValueError, KernelSpec, 'gaussian')
        self.assertRaises(ValueError, KernelSpec, 'inverse_sqrt', 0.0)
        self.assertRaises(ValueError, k.K, 0.0)

    def test_averaged_potential_N(self):
        x = self.rng.uniform(-3.0, 3.0, 50)
        self.assertTrue(np.allclose(self.double_well.W(x),
                                    averaged_potential_N(self.double_well, 1, x),
                                    rtol=0.0, atol=1e-15))
        self.assertAlmostEqual(0.125, averaged_potential_N(self.quadratic, 2, 0.0))
        self.assertAlmostEqual(0.5, averaged_potential_N_derivative(
            self.quadratic, 2, 0.0))
        for x in (-1.5, -0.5, 0.0):
            limit = averaged_potential_limit(self.double_well, x)
            jump = self.double_well.W(x + 1.0) - self.double_well.W(x)
            for n, tol in ((64, 1e-2), (256, 1e-3)):
                trapezoid = averaged_potential_N(self.double_well, n, x) + \
                    jump / (2.0 * n)
                self.assertLessEqual(abs(trapezoid - limit), tol)
            err_64 = abs(averaged_potential_N(self.double_well, 64, x) - limit)
            err_256 = abs(averaged_potential_N(self.double_well, 256, x) - limit)
            self.assertLessEqual(err_256, err_64)

    def test_averaged_potential_limit(self):
        self.assertEqual(0.0, averaged_potential_limit(self.zero, 0.3))
        self.assertEqual(0.0, averaged_potential_limit_derivative(self.zero, 0.3))
        self.assertAlmostEqual(1.0 / 3.0,
                               averaged_potential_limit(self.quadratic, 0.0),
                               places=10)
        self.assertEqual(1.0, averaged_potential_limit_derivative(
            self.quadratic, 0.0))
        for x in self.rng.uniform(-3.0, 3.0, 20):
            self.assertAlmostEqual(averaged_potential_limit(self.double_well, x),
                                   averaged_potential_limit(self.double_well, -x - 1.0),
                                   places=9)

    def test_averaged_potential_memo(self):
        memo = AveragedPotential(self.double_well, lo=-3.0, hi=3.0)
        x = self.rng.uniform(-3.5, 3.5, 40)
        for v, y in zip(memo(x), x):
            self.assertAlmostEqual(averaged_potential_limit(self.double_well, y), v,
                                   places=8)
        memo_n = AveragedPotential(self.double_well, 8)
        self.assertTrue(np.allclose(memo_n(x), averaged_potential_N(self.double_well, 8, x),
                                    rtol=0.0, atol=1e-7))
        self.assertTrue(np.allclose(memo.derivative(x),
                                    averaged_potential_limit_derivative(self.double_well, x)))


class ConfigUnitTests(unittest.TestCase):
    def setUp(self):
        self.doc = {"n_agents": 4, "period": 10.0, "time_steps": 64,
                    "kernel": {"alpha": 5.0},
                    "potential": {"name": "paper_smooth_double_well"},
                    "symmetric_class": True,
                    "opt": {"max_iters": 100, "grad_tol": 1e-6, "seed": 3}}

    def test_from_dict(self):
        cfg = ProblemConfig.from_dict(self.doc)
        self.assertEqual(4, cfg.n_agents)
        self.assertEqual(TimeGrid(10.0, 64), cfg.grid)
        self.assertEqual(KernelSpec('inverse_sqrt', 5.0), cfg.kernel)
        self.assertEqual(PotentialSpec(), cfg.potential)
        self.assertEqual(0.25, cfg.min_gap)
        self.assertEqual(3, cfg.opt.seed)
        self.assertEqual(100, cfg.opt.max_iters)
        self.assertEqual(cfg, ProblemConfig.from_dict(cfg.to_dict()))

    def test_rejects(self):
        for key, value in (('colour', 1), ('time_steps', 66),
                           ('n_agents', 0), ('n_agents', 2.5),
                           ('period', -1.0), ('symmetric_class', 'yes')):
            d = dict(self.doc)
            d[key] = value
            self.assertRaises(ConfigError, ProblemConfig.from_dict, d)
        for key, value in (('kernel', {'alpha': 1.0, 'beta': 2.0}),
                           ('potential', {'name': 'cosine'}),
                           ('opt', {'tolerance': 1e-3})):
            d = dict(self.doc)
            d[key] = value
            self.assertRaises(ConfigError, ProblemConfig.from_dict, d)
        d = dict(self.doc)
        del d['period']
        self.assertRaises(ConfigError, ProblemConfig.from_dict, d)
        self.assertRaises(ConfigError, ProblemConfig.from_json, 'no/such/file.json')
        self.assertTrue(issubclass(ConfigError, ValueError))

    def test_digest(self):
        cfg = ProblemConfig.from_dict(self.doc)
        reordered = dict(reversed(list(self.doc.items())))
        self.assertEqual(cfg.digest(), ProblemConfig.from_dict(reordered).digest())
        self.assertNotEqual(cfg.digest(), cfg.with_agents(5).digest())
        self.assertEqual(64, len(cfg.digest()))

    def test_settings(self):
        opt = OptimizerSettings()
        self.assertEqual(1e-4, opt.sigma)
        self.assertEqual(60, opt.max_halvings)
        self.assertEqual(7, opt.replace(seed=7).seed)
        self.assertRaises(ConfigError, OptimizerSettings.from_dict, {'max_iters': -1})

    def test_shipped(self):
        cfg = shipped_config('strong_kernel')
        self.assertEqual(18, cfg.n_agents)
        self.assertEqual(5.0, cfg.kernel.alpha)
        self.assertEqual(TimeGrid(50.0, 256), cfg.grid)
        self.assertEqual(17, shipped_config('weak_kernel_n17').n_agents)
        self.assertEqual(1.0, shipped_config('weak_kernel_n18.json').kernel.alpha)
        self.assertEqual(3.1, shipped_config('intermediate_kernel').kernel.alpha)
        shipped_config('brake')
        shipped_config('gamma')


class EnergyUnitTests(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(13)

    def test_energy(self):
        grid = TimeGrid(1.0, 4)
        cfg = ProblemConfig(2, grid, KernelSpec(), PotentialSpec('zero'))
        e = energy(TrajectoryGrid.constant(grid, (-0.25, 0.25)), cfg)
        self.assertEqual(0.0, e.kinetic)
        self.assertEqual(0.0, e.potential)
        self.assertAlmostEqual(sqrt(2.0) / 2.0, e.interaction, places=14)
        self.assertAlmostEqual(-sqrt(2.0) / 2.0, e.total, places=14)

        cfg = ProblemConfig(1, grid, KernelSpec(), PotentialSpec('zero'))
        self.assertEqual(0.0, energy(TrajectoryGrid.constant(grid, (0.7,)), cfg).total)

        cfg = ProblemConfig(2, grid)
        self.assertRaises(ValueError, energy,
                          TrajectoryGrid.constant(grid, (0.1, 0.1)), cfg)

    def test_time_refinement(self):
        def value(m):
            grid = TimeGrid(4.0, m)
            a = -0.25 + 0.3 * np.sin(2.0 * np.pi * grid.times / 4.0)
            x = np.stack((a, a + 0.5), axis=1)
            cfg = ProblemConfig(2, grid, KernelSpec(), PotentialSpec('quadratic'))
            return energy(TrajectoryGrid(grid, x), cfg).total

        ref = value(4096)
        err_64, err_128 = abs(value(64) - ref), abs(value(128) - ref)
        self.assertLessEqual(err_128, err_64)
        self.assertLessEqual(err_64, 4.0 / 64)

    def test_gradient(self):
        grid = TimeGrid(1.0, 4)
        cfg = ProblemConfig(1, grid, KernelSpec(), PotentialSpec('zero'))
        g = gradient(TrajectoryGrid.constant(grid, (0.3,)), cfg)
        self.assertTrue(np.all(g == 0.0))

        cfg = ProblemConfig(2, grid)
        g = gradient(TrajectoryGrid.constant(grid, (-0.25, 0.25)), cfg)
        self.assertTrue(np.allclose(g[:, 0], -g[:, 1], rtol=0.0, atol=1e-14))

    def test_gradient_finite_differences(self):
        h = 1e-5
        for _ in range(20):
            n = int(self.rng.integers(2, 7))
            m = 4 * int(self.rng.integers(2, 17))
            grid = TimeGrid(float(self.rng.uniform(1.0, 10.0)), m)
            cfg = ProblemConfig(n, grid, KernelSpec('inverse_sqrt', 2.0),
                                PotentialSpec(), symmetric_class=False)
            x = _random_feasible(self.rng, m, n)
            g = gradient_array(x, cfg)
            fd = np.zeros_like(x)
            for k in range(m):
                for i in range(n):
                    e = np.zeros_like(x)
                    e[k, i] = h
                    fd[k, i] = (total_energy(x + e, cfg) -
                                total_energy(x - e, cfg)) / (2.0 * h)
            scale = max(1.0, float(np.max(np.abs(fd))))
            self.assertLessEqual(float(np.max(np.abs(g - fd))), 1e-6 * scale)

    def test_symmetry_invariance(self):
        grid = TimeGrid(6.0, 16)
        cfg = ProblemConfig(3, grid, symmetric_class=False)
        for _ in range(10):
            traj = TrajectoryGrid(grid, _random_feasible(self.rng, 16, 3))
            value = energy(traj, cfg).total
            for s in symmetry_index_maps(grid, 3):
                self.assertAlmostEqual(value, energy(s(traj), cfg).total, places=10)

    def test_interaction_energy(self):
        k0 = KernelSpec()
        self.assertAlmostEqual(sqrt(2.0) / 2.0, interaction_energy(
            EmpiricalMeasure((0.0, 0.5)), k0), places=15)
        self.assertEqual(0.0, interaction_energy(EmpiricalMeasure((0.3,)), k0))
        self.assertRaises(ValueError, interaction_energy, (0.0, 0.0), k0)
        for _ in range(50):
            n = int(self.rng.integers(2, 40))
            row = _random_feasible(self.rng, 1, n)[0]
            value = interaction_energy(row, k0)
            self.assertLessEqual(value, 17.0)
            i = int(self.rng.integers(1, n))
            wider = row.copy()
            wider[i:] += 0.1
            self.assertLess(interaction_energy(wider, k0), value)

    def test_kN_constant(self):
        k0 = KernelSpec()
        self.assertAlmostEqual(sqrt(2.0) / 2.0, kN_constant(2, k0), places=15)
        self.assertEqual(0.0, kN_constant(1, k0))
        for n in (64, 128, 256, 1024):
            expansion = 8.0 / 3.0 + 2.0 * ZETA_HALF / sqrt(n)
            self.assertLessEqual(abs(kN_constant(n, k0) - expansion), 1e-2)
        self.assertLessEqual(abs(kN_constant(256, k0) - 8.0 / 3.0), 0.2)
        for n in list(range(1, 65)) + [100, 255, 256, 511, 1000, 1024]:
            self.assertLessEqual(kN_constant(n, k0), 17.0)
        self.assertAlmostEqual(5.0 * kN_constant(9, k0),
                               kN_constant(9, KernelSpec('k0', 5.0)), places=12)

    def test_saturated_energy(self):
        grid = TimeGrid(4.0, 16)
        cfg = ProblemConfig(5, grid, KernelSpec(), PotentialSpec())
        a = -0.4 + 0.2 * np.cos(2.0 * np.pi * grid.times / 4.0)
        block = a[:, None] + np.arange(5)[None, :] / 5.0
        full = energy(TrajectoryGrid(grid, block), cfg)
        reduced = saturated_energy(a, cfg)
        self.assertAlmostEqual(full.kinetic, reduced.kinetic, places=12)
        self.assertAlmostEqual(full.potential, reduced.potential, places=12)
        self.assertAlmostEqual(full.interaction, reduced.interaction, places=12)


class ConstraintsUnitTests(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(14)

    def test_project_gaps(self):
        self.assertTrue(np.allclose((-0.5, -0.5), project_gaps((0.0, -1.0), 0.0)))
        self.assertTrue(np.allclose((-0.25, 0.25), project_gaps((0.0, 0.0), 0.5)))
        self.assertTrue(np.all(np.array((0.0, 1.0, 2.0)) ==
                               project_gaps((0.0, 1.0, 2.0), 0.5)))
        self.assertEqual([0.3], list(project_gaps((0.3,), 1.0)))

    def test_project_gaps_oracle(self):
        for _ in range(500):
            n = int(self.rng.integers(1, 6))
            c = 1.0 / n
            row = self.rng.normal(0.0, 1.0, n)
            p = project_gaps(row, c)
            self.assertLessEqual(float(np.max(np.abs(
                p - brute_force_projection(row, c)))), 1e-9)
            self.assertTrue(np.all(np.diff(p) >= c - 1e-14))
            self.assertLessEqual(float(np.max(np.abs(project_gaps(p, c) - p))), 1e-12)
            other = self.rng.normal(0.0, 1.0, n)
            self.assertLessEqual(np.linalg.norm(p - project_gaps(other, c)),
                                 np.linalg.norm(row - other) + 1e-12)

    def test_symmetrize(self):
        grid = TimeGrid(8.0, 16)
        for _ in range(100):
            n = int(self.rng.integers(1, 6))
            cfg = ProblemConfig(n, grid)
            traj = TrajectoryGrid(grid, _random_feasible(self.rng, 16, n))
            once = symmetrize(traj)
            self.assertTrue(validate(once, cfg).feasible)
            self.assertLessEqual(max(s.residual(once) for s in
                                     symmetry_index_maps(grid, n)), 1e-14)
            twice = symmetrize(once)
            self.assertLessEqual(float(np.max(np.abs(
                twice.positions - once.positions))), 1e-15)

    def test_project_feasible(self):
        grid = TimeGrid(8.0, 16)
        cfg = ProblemConfig(4, grid)
        block = initial_guess(cfg, 'stationary_block')
        self.assertEqual(block, project_feasible(block, cfg))
        for _ in range(20):
            traj = TrajectoryGrid(grid, self.rng.normal(0.0, 0.5, (16, 4)))
            p = project_feasible(traj, cfg)
            report = validate(p, cfg)
            self.assertTrue(report.feasible)
            self.assertTrue(report.symmetric)
            self.assertEqual(p, project_feasible(p, cfg))
            distance = np.linalg.norm(p.positions - traj.positions)
            for _ in range(10):
                noise = self.rng.normal(0.0, 0.5, (16, 4))
                competitor = project_feasible(traj.with_positions(
                    traj.positions + noise), cfg)
                self.assertLessEqual(distance, np.linalg.norm(
                    competitor.positions - traj.positions) + 1e-12)

    def test_barycenter_report(self):
        report = barycenter_report((0.0, 1.0, 3.0))
        self.assertEqual((1.0, 2.0), report.d)
        self.assertEqual((2.0, 2.5), report.m)
        self.assertLessEqual(report.residual, 1e-15)
        self.assertEqual(3, report.n)
        report = barycenter_report((0.0, 0.25, 0.5, 0.75))
        self.assertEqual((0.5, 0.5, 0.5), report.m)
        self.assertRaises(ValueError, barycenter_report, (1.0,))
        for _ in range(1000):
            n = int(self.rng.integers(2, 13))
            row = np.sort(self.rng.normal(0.0, 2.0, n))
            self.assertLessEqual(barycenter_report(row).residual, 1e-10)

    def test_coefficients(self):
        self.assertEqual(Fraction(3, 2), barycenter_coefficient(3, 1, 2))
        self.assertIsInstance(barycenter_coefficient(7, 2, 5), Fraction)
        for n in range(2, 13):
            self.assertTrue(coefficients_positive(n))

    def test_min_mJ_bound(self):
        self.assertTrue(min_mJ_bound_check(4, 0.25, 1000))
        self.assertTrue(min_mJ_bound_check(12, 1.0 / 12.0, 1000, seed=5))
        self.assertRaises(ValueError, min_mJ_bound_check, 1, 0.25, 10)
        self.assertRaises(ValueError, min_mJ_bound_check, 4, 0.0, 10)

    def test_perturbed_gap(self):
        n, alpha = 6, 1.0 / 6.0
        bound = alpha * n / 2.0
        saturated = alpha * np.arange(n)
        m = np.array(barycenter_report(saturated).m)
        np.testing.assert_allclose(m, bound, atol=1e-12)
        for j in range(1, n):
            row = saturated.copy()
            row[j:] += 0.1
            m = np.array(barycenter_report(row).m)
            self.assertGreater(np.max(m), bound + 0.001)
            self.assertGreater(np.min(m), bound)


class OptimizerUnitTests(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(15)

    def test_initial_guess(self):
        grid = TimeGrid(10.0, 64)
        cfg = ProblemConfig(2, grid, KernelSpec('inverse_sqrt', 5.0))
        block = initial_guess(cfg, 'stationary_block')
        self.assertTrue(np.allclose(block.positions[:, 0], -0.25))
        self.assertTrue(np.allclose(block.positions[:, 1], 0.25))
        for mode in ('wells_oscillation', 'random', 'split_groups', 'wells'):
            report = validate(initial_guess(cfg, mode), cfg)
            self.assertTrue(report.feasible)
            self.assertTrue(report.symmetric)
        self.assertEqual(initial_guess(cfg, 'random', seed=4),
                         initial_guess(cfg, 'random', seed=4))
        self.assertNotEqual(initial_guess(cfg, 'random', seed=4),
                            initial_guess(cfg, 'random', seed=5))
        self.assertRaises(ValueError, initial_guess, cfg, 'anywhere')

    def test_single_agent(self):
        grid = TimeGrid(16.0, 16)
        cfg = ProblemConfig(1, grid, KernelSpec(), PotentialSpec(),
                            symmetric_class=False)
        start = TrajectoryGrid.constant(grid, (-1.2,))
        result = minimize(cfg, start)
        self.assertTrue(result.converged)
        self.assertLessEqual(result.history[-1][2], cfg.opt.grad_tol)
        self.assertLess(float(np.max(np.abs(result.traj.positions + 1.2))), 0.2)
        self.assertLess(abs(result.traj.positions[0, 0] + sqrt(1.75)), 1e-2)
        values = [h[1] for h in result.history]
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(values, values[1:])))
        self.assertTrue(verify_support(result, cfg.potential))

    def test_strong_kernel_pair(self):
        grid = TimeGrid(10.0, 64)
        cfg = ProblemConfig(2, grid, KernelSpec('inverse_sqrt', 5.0),
                            opt=OptimizerSettings(max_iters=50000))
        result = minimize(cfg, initial_guess(cfg, 'wells_oscillation'))
        self.assertLessEqual(result.diagnostics.saturation_dev, 1e-2)
        self.assertLessEqual(float(verify_saturation(result, cfg)), 1e-2)
        self.assertTrue(verify_support(result, cfg.potential))
        values = [h[1] for h in result.history]
        self.assertTrue(all(b <= a + 1e-12 for a, b in zip(values, values[1:])))
        if result.converged:
            again = minimize(cfg, result.traj)
            self.assertLessEqual(again.iterations, 1)
            self.assertLessEqual(abs(again.energy.total - result.energy.total), 1e-10)

    def test_infeasible_start(self):
        grid = TimeGrid(4.0, 8)
        cfg = ProblemConfig(2, grid)
        start = TrajectoryGrid.constant(grid, (0.0, 0.1))
        self.assertRaises(ValueError, minimize, cfg, start)

    def test_multi_start(self):
        grid = TimeGrid(4.0, 16)
        cfg = ProblemConfig(2, grid, opt=OptimizerSettings(max_iters=2000))
        results = multi_start(cfg, ('wells', 'stationary', 'random'), threads=2)
        self.assertEqual(3, len(results))
        totals = [r.energy.total for r in results]
        self.assertEqual(sorted(totals), totals)
        self.assertEqual({'wells_oscillation', 'stationary_block', 'random'},
                         set(r.mode for r in results))

    def test_verify_support(self):
        grid = TimeGrid(4.0, 8)
        cfg = ProblemConfig(1, grid, symmetric_class=False)
        far = TrajectoryGrid.constant(grid, (10.0,))
        self.assertFalse(verify_support(_result(far, cfg), cfg.potential))
        near = TrajectoryGrid.constant(grid, (1.0,))
        self.assertTrue(verify_support(_result(near, cfg), cfg.potential))

    def test_truncation(self):
        grid = TimeGrid(6.0, 16)
        pot = PotentialSpec()
        for _ in range(100):
            n = int(self.rng.integers(1, 6))
            cfg = ProblemConfig(n, grid, KernelSpec(), pot, symmetric_class=False)
            x = _random_feasible(self.rng, 16, n, spread=2.0)
            x += self.rng.uniform(-4.0, 4.0, (16, 1))
            traj = TrajectoryGrid(grid, x)
            clamped = truncate(traj, pot.r0)
            self.assertTrue(validate(clamped, cfg).feasible)
            before, after = energy(traj, cfg).total, energy(clamped, cfg).total
            self.assertLessEqual(after, before + 1e-12 * max(1.0, abs(before)))

    def test_verify_saturation(self):
        grid = TimeGrid(10.0, 16)
        cfg = ProblemConfig(4, grid, KernelSpec('inverse_sqrt', 5.0))
        block = initial_guess(cfg, 'stationary_block')
        report = verify_saturation(_result(block, cfg), cfg)
        self.assertLessEqual(report.deviation, 1e-15)
        self.assertLessEqual(float(report), 1e-15)
        r0 = cfg.potential.r0
        self.assertAlmostEqual(2.5 * (2.0 * r0 + 2.0) ** -1.5, report.kernel_side)
        self.assertGreater(report.potential_side, 0.0)
        self.assertEqual(report.kernel_side > report.potential_side, report.applies)
        self.assertIn('condition_holds', report.to_dict())

    def test_reduced_ode(self):
        grid = TimeGrid(10.0, 256)
        pot = PotentialSpec()
        n = 4
        cfg = ProblemConfig(n, grid, KernelSpec('inverse_sqrt', 5.0), pot)
        orbit = solve_brake_orbit(pot, grid, n_agents=n, max_step=grid.dt)
        self.assertAlmostEqual(-(n - 1) / (2.0 * n), orbit.center)
        block = TrajectoryGrid(grid, orbit.a[:, None] +
                               np.arange(n)[None, :] / n)
        self.assertTrue(validate(block, cfg).symmetric)
        self.assertLessEqual(verify_reduced_ode(block, cfg), 1e-3)

        rest = initial_guess(cfg, 'stationary_block')
        self.assertLessEqual(verify_reduced_ode(_result(rest, cfg), cfg), 1e-12)

        split = initial_guess(cfg, 'split_groups')
        self.assertTrue(isnan(verify_reduced_ode(split, cfg)))
        free = ProblemConfig(n, grid, symmetric_class=False)
        self.assertTrue(isnan(verify_reduced_ode(rest, free)))

    def test_optimality_residuals(self):
        grid = TimeGrid(10.0, 16)
        cfg = ProblemConfig(4, grid, KernelSpec('inverse_sqrt', 5.0))
        reports = optimality_residuals(initial_guess(cfg, 'stationary_block'), cfg)
        self.assertEqual([1, 2, 3], [r.J for r in reports])
        self.assertTrue(all(r.open_nodes == 0 for r in reports))
        self.assertTrue(all(isnan(r.equality_residual) for r in reports))
        split = initial_guess(cfg, 'split_groups')
        reports = optimality_residuals(split, cfg)
        self.assertGreater(reports[1].open_nodes, 0)
        self.assertIn('upper_slack', reports[0].to_dict())

    def test_resample(self):
        grid = TimeGrid(4.0, 8)
        cfg = ProblemConfig(4, grid)
        block = initial_guess(cfg, 'stationary_block')
        finer = resample(block, 8)
        self.assertEqual((8, 8), finer.positions.shape)
        self.assertLessEqual(saturation_deviation(finer, 8), 1e-12)
        self.assertTrue(np.allclose(np.mean(finer.positions, axis=1),
                                    np.mean(block.positions, axis=1)))
        single = resample(TrajectoryGrid.constant(grid, (0.0,)), 4)
        self.assertTrue(np.allclose(single.positions[0],
                                    (-0.375, -0.125, 0.125, 0.375)))


class MeanfieldUnitTests(unittest.TestCase):
    def setUp(self):
        self.double_well = PotentialSpec()
        self.zero = PotentialSpec('zero')

    def test_integrate_orbit(self):
        t, a, v = integrate_orbit(self.zero, -0.5, 0.0, 5.0, 1e-2)
        self.assertTrue(np.all(a == -0.5))
        self.assertTrue(np.all(v == 0.0))
        self.assertEqual(501, len(t))
        self.assertRaises(ValueError, integrate_orbit, self.zero, 0.0, 0.0, 1.0, 0.0)
        self.assertRaises(ValueError, integrate_orbit, self.zero, 0.0, 0.0, 1.0,
                          0.1, 'averaged_N')

    def test_time_reversal(self):
        t, a, v = integrate_orbit(self.double_well, -0.5, 0.3, 5.0, 1e-3)
        s, b, w = integrate_orbit(self.double_well, a[-1], v[-1], -5.0, 1e-3)
        self.assertAlmostEqual(-0.5, b[-1], delta=1e-9)
        self.assertAlmostEqual(0.3, w[-1], delta=1e-9)
        self.assertAlmostEqual(-5.0, s[-1])

    def test_energy_drift(self):
        averaged = AveragedPotential(self.double_well, lo=-1.0, hi=0.0)
        t, a, v = integrate_orbit(self.double_well, -0.5, 0.01, 50.0, 1e-3)
        e = orbit_energy(averaged, a, v)
        self.assertLessEqual(float(np.max(np.abs(e - e[0]))), 1e-8)
        _, b, _ = integrate_orbit(self.double_well, -0.5, 0.01, 50.0, 1e-3, 'averaged_N', 8)
        self.assertEqual(len(a), len(b))

    def test_trivial_orbit(self):
        orbit = solve_brake_orbit(self.zero, TimeGrid(50.0, 64))
        self.assertTrue(orbit.trivial)
        self.assertTrue(np.all(orbit.a == -0.5))
        self.assertEqual(0.0, orbit.ode_residual)

    def test_brake_orbit(self):
        grid = TimeGrid(50.0, 256)
        orbit = solve_brake_orbit(self.double_well, grid)
        self.assertFalse(orbit.trivial)
        self.assertGreater(orbit.v0, 0.0)
        self.assertLessEqual(orbit.shooting_residual, 1e-8)
        for residual in orbit.symmetry_residuals():
            self.assertLessEqual(residual, 1e-6)
        lo, hi = orbit.turning_points()
        self.assertLess(lo + 0.5, -0.5)
        self.assertGreater(hi + 0.5, 0.5)
        xs = np.linspace(-4.0, 3.0, 7001)
        floor = float(np.min(AveragedPotential(self.double_well, lo=-4.0, hi=3.0)(xs)))
        for x in (lo, hi):
            self.assertLessEqual(averaged_potential_limit(self.double_well, x), floor + 0.05)
        self.assertTrue(any(abs(r - orbit.v0) < 1e-12 for r, _ in orbit.roots))
        self.assertEqual(min(e for _, e in orbit.roots),
                         [e for r, e in orbit.roots if r == orbit.v0][0])
        lowest = min(orbit.roots, key=lambda root: (root[1], root[0]))
        self.assertEqual(lowest[0], orbit.v0)

    def test_indicator_interaction(self):
        self.assertAlmostEqual(8.0 / 3.0, indicator_interaction(KernelSpec()), delta=1e-4)
        self.assertAlmostEqual(2.0, indicator_interaction(KernelSpec('constant', 2.0)),
                               places=10)
        self.assertAlmostEqual(5.0 * indicator_interaction(KernelSpec()),
                               indicator_interaction(KernelSpec('inverse_sqrt', 5.0)),
                               places=8)

    def test_meanfield_energy(self):
        grid = TimeGrid(10.0, 16)
        profile = IntervalProfile(grid, np.full(16, -0.5))
        e = meanfield_energy(profile, self.zero, KernelSpec())
        self.assertEqual(0.0, e.kinetic)
        self.assertAlmostEqual(-10.0 * 8.0 / 3.0, e.total, delta=1e-4)

        orbit = _rigid_orbit(TimeGrid(4.0, 16))
        self.assertGreater(meanfield_energy(orbit, self.zero, KernelSpec()).kinetic, 0.0)

    def test_block_consistency(self):
        grid = TimeGrid(4.0, 16)
        orbit = _rigid_orbit(grid)
        pot, kernel = PotentialSpec('quadratic'), KernelSpec()
        limit = meanfield_energy(orbit, pot, kernel)
        gaps = list()
        for n in (16, 64, 256):
            cfg = ProblemConfig(n, grid, kernel, pot, symmetric_class=False)
            block = block_from_orbit(orbit, n)
            self.assertLessEqual(saturation_deviation(block, n), 1e-12)
            e = energy(block, cfg)
            self.assertAlmostEqual(limit.kinetic, e.kinetic, places=10)
            gaps.append(abs(e.total - limit.total))
            self.assertLessEqual(gaps[-1], 4.0 * 4.0 / sqrt(n))
        self.assertTrue(gaps[0] > gaps[1] > gaps[2])


class MeasuresUnitTests(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(16)
        self.triangle = DensityGrid.from_function(
            lambda x: 0.5 * (1.0 - np.abs(x) / 2.0), -2.0, 2.0)

    def test_closed_forms(self):
        self.assertAlmostEqual(1.5, wasserstein2(EmpiricalMeasure((0.5,)),
                                                 EmpiricalMeasure((2.0,))))
        self.assertAlmostEqual(0.3, wasserstein2(IntervalIndicator(0.0),
                                                 IntervalIndicator(0.3)))
        self.assertAlmostEqual(sqrt(1.0 / 12.0), wasserstein2(
            EmpiricalMeasure((0.0, 1.0)), IntervalIndicator(0.0)), places=12)
        for n in (1, 2, 7, 64, 1024):
            points = 0.2 + (np.arange(n) + 0.5) / n
            self.assertAlmostEqual(1.0 / (n * sqrt(12.0)), wasserstein2(
                EmpiricalMeasure(points), IntervalIndicator(0.2)), places=12)
        self.assertAlmostEqual(0.25, wasserstein2(
            DensityGrid(0.0, 1.0, (1.0, 1.0)), IntervalIndicator(0.25)), places=6)

    def test_metric(self):
        for _ in range(200):
            n = int(self.rng.integers(1, 10))
            a, b, c = (EmpiricalMeasure(self.rng.normal(0.0, 1.0, n))
                       for _ in range(3))
            ab, bc, ac = wasserstein2(a, b), wasserstein2(b, c), wasserstein2(a, c)
            self.assertEqual(ab, wasserstein2(b, a))
            self.assertLessEqual(ac, ab + bc + 1e-12)
            self.assertEqual(0.0, wasserstein2(a, a))

    def test_errors(self):
        self.assertRaises(ValueError, wasserstein2,
                          EmpiricalMeasure((0.0,), mass=0.5), IntervalIndicator(0.0))
        self.assertRaises(TypeError, wasserstein2, (0.0,), IntervalIndicator(0.0))
        self.assertRaises(ValueError, EmpiricalMeasure, ())
        self.assertRaises(ValueError, DensityGrid, 0.0, 1.0, (1.0, -1.0))
        self.assertRaises(ValueError, DensityGrid, 0.0, 1.0, (1.0, 1.0), 2.0)

    def test_density_grid(self):
        m = self.triangle
        self.assertAlmostEqual(1.0, m.mass, places=6)
        self.assertAlmostEqual(0.5, float(m.cdf(0.0)), places=6)
        self.assertAlmostEqual(0.0, float(m.quantile(0.5)), places=6)
        self.assertAlmostEqual(0.25, m(1.0))
        self.assertEqual(0.0, m(3.0))
        u = np.linspace(0.01, 0.99, 50)
        self.assertTrue(np.allclose(m.cdf(m.quantile(u)), u, rtol=0.0, atol=1e-12))

    def test_wasserstein1(self):
        self.assertAlmostEqual(0.3, wasserstein1(IntervalIndicator(0.0),
                                                 IntervalIndicator(0.3)), places=12)
        self.assertAlmostEqual(0.25, wasserstein1(EmpiricalMeasure((0.0, 1.0)),
                                                  IntervalIndicator(0.0)), places=12)
        self.assertAlmostEqual(1.0, wasserstein1(EmpiricalMeasure((0.0,)),
                                                 EmpiricalMeasure((1.0,))), places=12)

    def test_quantile_particles(self):
        half = DensityGrid(-1.0, 1.0, (0.5, 0.5))
        mu, mass = quantile_particles(half, 1.0, 2)
        self.assertAlmostEqual(1.0, mass, places=12)
        self.assertTrue(np.allclose((-0.5, 0.5), mu.points, rtol=0.0, atol=1e-10))
        mu, _ = quantile_particles(half, 1.0, 1)
        self.assertAlmostEqual(0.0, mu.points[0], places=10)
        mu, _ = quantile_particles(half, 1.0, 10)
        self.assertTrue(density_bound_check(mu, 1.0))
        self.assertRaises(ValueError, quantile_particles,
                          DensityGrid(-1.0, 1.0, (0.5, 0.0, 0.5)), 1.0, 2)
        self.assertRaises(ValueError, quantile_particles, half, 1.0, 0)

    def test_narrow_convergence(self):
        m, r = self.triangle, 1.0
        target = m.restrict(-r, r)
        decay = dict()
        for n in (8, 64, 256):
            mu, mass = quantile_particles(m, r, n)
            self.assertAlmostEqual(0.75, mass, places=5)
            decay[n] = wasserstein1(EmpiricalMeasure(mu.points, mass), target)
        c = decay[8] * 8
        for n in (64, 256):
            self.assertLessEqual(decay[n], 1.5 * c / n)

    def test_mollify(self):
        m = self.triangle
        out = mollify(m, 0.01)
        self.assertAlmostEqual(m.mass, out.mass, delta=1e-9)
        box = DensityGrid.from_function(
            lambda x: ((x >= 0.0) & (x <= 1.0)).astype(float), -1.0, 2.0, 3001)
        smooth = mollify(box, 0.01)
        self.assertLess(float(np.max(smooth.values)), 1.0)
        self.assertGreater(float(np.max(smooth.values)), 0.95)
        self.assertAlmostEqual(box.mass, smooth.mass, delta=1e-9)
        for eps in (1e-3, 1e-4):
            self.assertLessEqual(wasserstein2(mollify(m, eps), m), 1.5 * sqrt(eps))
        self.assertRaises(ValueError, mollify, m, 0.0)

    def test_density_bound_check(self):
        self.assertTrue(density_bound_check(EmpiricalMeasure(np.arange(10) / 10.0), 1.0))
        self.assertFalse(density_bound_check(EmpiricalMeasure((0.0, 0.0, 1.0)), 1.0))
        self.assertTrue(density_bound_check(EmpiricalMeasure((0.4,)), 1.0))

    def test_gamma_report(self):
        grid = TimeGrid(4.0, 16)
        orbit = _rigid_orbit(grid)
        kernel, pot = KernelSpec(), PotentialSpec('quadratic')
        solves = list()
        for n in (4, 8, 16):
            cfg = ProblemConfig(n, grid, kernel, pot, symmetric_class=False)
            solves.append(_result(block_from_orbit(orbit, n), cfg))
        report = gamma_convergence_report(orbit, solves, pot, kernel)
        self.assertEqual(3 * 8, len(report.rows))
        for n in (4, 8, 16):
            self.assertAlmostEqual(1.0 / (n * sqrt(12.0)), report.max_d2[n], places=12)
            self.assertLessEqual(report.equicontinuity[n], 1.0 + 1e-6)
        self.assertTrue(report.energy_gap[4] > report.energy_gap[16])
        with TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'gamma.csv')
            report.to_csv(path)
            with open(path) as f:
                rows = list(csv.reader(f))
        self.assertEqual(['N', 't', 'd2', 'energy_gap'], rows[0])
        self.assertEqual(25, len(rows))

        other = _rigid_orbit(TimeGrid(4.0, 32))
        self.assertRaises(ValueError, gamma_convergence_report, other, solves)


class SelftestUnitTests(unittest.TestCase):
    def test_brute_force_projection(self):
        self.assertTrue(np.allclose((-0.25, 0.25), brute_force_projection((0.0, 0.0), 0.5)))
        self.assertTrue(np.allclose((-0.5, -0.5), brute_force_projection((0.0, -1.0), 0.0)))

    def test_run_selftest(self):
        results = run_selftest()
        self.assertTrue(all(passed for _, passed, _ in results))
        self.assertLessEqual(sum(s for _, _, s in results), 60.0)

    def test_inject_fault(self):
        results = dict((name, passed) for name, passed, _ in
                       run_selftest(inject_fault=True))
        self.assertFalse(results['gradient'])
        self.assertTrue(results['projection'])


class CommandLineUnitTests(unittest.TestCase):
    def setUp(self):
        self.doc = {"n_agents": 2, "period": 4.0, "time_steps": 16,
                    "kernel": {"alpha": 1.0},
                    "potential": {"name": "paper_smooth_double_well"},
                    "opt": {"max_iters": 3000, "grad_tol": 1e-6, "seed": 0}}

    def _config(self, tmp, doc):
        path = os.path.join(tmp, 'config.json')
        with open(path, 'w') as f:
            json.dump(doc, f)
        return path

    def test_csv_round_trip(self):
        grid = TimeGrid(50.0, 16)
        rng = np.random.default_rng(17)
        traj = TrajectoryGrid(grid, rng.normal(0.0, 1.0, (16, 3)) / 3.0)
        with TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'trajectories.csv')
            write_trajectories_csv(traj, path)
            self.assertEqual(traj, read_trajectories_csv(path, grid))
            self.assertEqual(traj, read_trajectories_csv(path))
            with open(path) as f:
                self.assertEqual('t,x1,x2,x3', f.readline().strip())

    def test_minimize(self):
        with TemporaryDirectory() as tmp:
            out = os.path.join(tmp, 'out')
            code = main(['minimize', '--config', self._config(tmp, self.doc),
                         '--out', out, '--starts', 'wells,stationary'])
            self.assertIn(code, (0, 3))
            with open(os.path.join(out, 'manifest.json')) as f:
                manifest = json.load(f)
            for name in ('trajectories.csv', 'history.csv', 'diagnostics.json',
                         'trajectories.svg', 'manifest.json'):
                self.assertIn(name, manifest['outputs'])
                self.assertTrue(os.path.exists(os.path.join(out, name)))
            cfg = ProblemConfig.from_dict(self.doc)
            self.assertEqual(cfg.digest(), manifest['digest'])
            traj = read_trajectories_csv(os.path.join(out, 'trajectories.csv'), cfg.grid)
            self.assertTrue(validate(traj, cfg).feasible)
            with open(os.path.join(out, 'diagnostics.json')) as f:
                diagnostics = json.load(f)
            self.assertIn('saturation_dev', diagnostics)
            self.assertEqual(2, len(diagnostics['starts']))
            root = ElementTree.parse(os.path.join(out, 'trajectories.svg')).getroot()
            self.assertTrue(root.tag.endswith('svg'))

    def test_config_error(self):
        doc = dict(self.doc)
        doc['unknown'] = 1
        with TemporaryDirectory() as tmp:
            code = main(['minimize', '--config', self._config(tmp, doc),
                         '--out', os.path.join(tmp, 'out')])
            self.assertEqual(2, code)
            code = main(['minimize', '--config', self._config(tmp, self.doc),
                         '--out', os.path.join(tmp, 'out'), '--starts', 'nowhere'])
            self.assertEqual(2, code)
            code = main(['minimize', '--config', os.path.join(tmp, 'missing.json'),
                         '--out', os.path.join(tmp, 'out')])
        self.assertEqual(2, code)

    def test_threads_environment(self):
        previous = os.environ.get('BRAKE_THREADS')
        os.environ['BRAKE_THREADS'] = 'many'
        try:
            with TemporaryDirectory() as tmp:
                code = main(['minimize', '--config', self._config(tmp, self.doc),
                             '--out', os.path.join(tmp, 'out')])
        finally:
            if previous is None:
                del os.environ['BRAKE_THREADS']
            else:
                os.environ['BRAKE_THREADS'] = previous
        self.assertEqual(2, code)

    def test_brake(self):
        doc = dict(self.doc)
        doc['potential'] = {'name': 'zero'}
        with TemporaryDirectory() as tmp:
            out = os.path.join(tmp, 'out')
            code = main(['brake', '--config', self._config(tmp, doc), '--out', out])
            self.assertEqual(4, code)
            self.assertTrue(os.path.exists(os.path.join(out, 'orbit.csv')))
            with open(os.path.join(out, 'diagnostics.json')) as f:
                self.assertTrue(json.load(f)['trivial'])

    def test_gamma(self):
        with TemporaryDirectory() as tmp:
            out = os.path.join(tmp, 'out')
            code = main(['gamma', '--config', self._config(tmp, self.doc),
                         '--out', out, '--agents', '2,4', '--threads', '1'])
            self.assertIn(code, (0, 3))
            with open(os.path.join(out, 'gamma.csv')) as f:
                rows = list(csv.reader(f))
            self.assertEqual(['N', 't', 'd2', 'energy_gap'], rows[0])
            self.assertEqual(1 + 2 * 8, len(rows))

    def test_selftest(self):
        self.assertEqual(0, _silent(main, ['selftest']))
        self.assertEqual(1, _silent(main, ['selftest', '--inject-fault']))


class SvgUnitTests(unittest.TestCase):
    def test_files(self):
        grid = TimeGrid(4.0, 16)
        orbit = _rigid_orbit(grid)
        with TemporaryDirectory() as tmp:
            for name, func, arg in (
                    ('t.svg', trajectories_svg, block_from_orbit(orbit, 3)),
                    ('o.svg', orbit_svg, orbit),
                    ('g.svg', loglog_svg, {'d2': (np.array((8.0, 16.0)),
                                                  np.array((0.1, 0.05)))})):
                path = os.path.join(tmp, name)
                func(arg, path)
                root = ElementTree.parse(path).getroot()
                self.assertTrue(root.tag.endswith('svg'))

    def test_agent_ids(self):
        grid = TimeGrid(4.0, 16)
        traj = block_from_orbit(_rigid_orbit(grid), 3)
        with TemporaryDirectory() as tmp:
            path = trajectories_svg(traj, os.path.join(tmp, 't.svg'), 'N = 3')
            root = ElementTree.parse(path).getroot()
        ids = set(e.get('id') for e in root.iter() if e.get('id'))
        self.assertTrue({'agent1', 'agent2', 'agent3'} <= ids)
        self.assertNotIn('agent4', ids)


@unittest.skipUnless(SLOW, 'set BRAKE_SLOW_TESTS to run the full size experiments')
class ExperimentUnitTests(unittest.TestCase):
    def test_strong_kernel(self):
        cfg = shipped_config('strong_kernel')
        result = minimize(cfg, initial_guess(cfg, 'wells_oscillation'))
        self.assertLessEqual(result.diagnostics.saturation_dev, 1e-2)
        self.assertTrue(verify_support(result, cfg.potential))
        self.assertLessEqual(verify_reduced_ode(result, cfg), 5e-2)
        n = cfg.n_agents
        x1 = result.traj.positions[cfg.grid.zero, 0]
        self.assertLessEqual(abs(x1 + (n - 1) / (2.0 * n)), 1e-2)
        for report in optimality_residuals(result, cfg):
            self.assertGreaterEqual(report.upper_slack, -1e-2)
            self.assertGreaterEqual(report.lower_slack, -1e-2)
        nodes = [p * cfg.grid.steps // 8 for p in range(8)]
        self.assertLessEqual(equicontinuity_ratio(result.traj, nodes), 1.0 + 1e-6)

    def test_weak_kernel(self):
        cfg = shipped_config('weak_kernel_n18')
        result = multi_start(cfg)[0]
        self.assertGreater(result.diagnostics.saturation_dev, 0.1)
        self.assertTrue(verify_support(result, cfg.potential))
        grid, half = cfg.grid, cfg.n_agents // 2
        for k in (grid.zero, grid.half):
            row = result.traj.positions[k]
            self.assertGreater(row[half] - row[half - 1], 0.5)
            for group in (row[:half], row[half:]):
                self.assertTrue(np.all(np.diff(group) < 0.5))
        opened = [r for r in optimality_residuals(result, cfg) if r.open_nodes]
        self.assertTrue(opened)
        for r in opened:
            self.assertLessEqual(r.equality_residual, 5e-2)

    def test_weak_kernel_odd(self):
        cfg = shipped_config('weak_kernel_n17')
        result = multi_start(cfg)[0]
        self.assertTrue(verify_support(result, cfg.potential))
        middle = result.traj.agent((cfg.n_agents + 1) // 2)
        self.assertGreater(np.ptp(middle), 1.0)

    def test_intermediate_kernel(self):
        cfg = shipped_config('intermediate_kernel')
        result = multi_start(cfg)[0]
        self.assertTrue(verify_support(result, cfg.potential))
        gaps = result.traj.gaps[:, 1:-1]
        closed = 1.0 / cfg.n_agents
        temporary = (np.max(gaps, axis=0) > closed + 1e-3) & \
            (np.min(gaps, axis=0) <= closed + 1e-6)
        self.assertTrue(np.any(temporary))

    def test_gamma_sequence(self):
        cfg = shipped_config('gamma')
        agents = (8, 16, 32, 64)
        orbit = solve_brake_orbit(cfg.potential, cfg.grid)
        solves, previous = list(), None
        for n in agents:
            cfg_n = cfg.with_agents(n)
            start = block_from_orbit(orbit, n) if previous is None \
                else resample(previous.traj, n)
            previous = minimize(cfg_n, project_feasible(start, cfg_n))
            cold = minimize(cfg_n, initial_guess(cfg_n, 'wells_oscillation'))
            self.assertLessEqual(previous.iterations, cold.iterations)
            solves.append(previous)
        report = gamma_convergence_report(orbit, solves, cfg.potential, cfg.kernel)
        d2 = [report.max_d2[n] for n in agents]
        self.assertTrue(all(b <= 1.5 * a for a, b in zip(d2, d2[1:])))
        gaps = [report.energy_gap[n] for n in agents]
        self.assertTrue(all(b <= 1.5 * a for a, b in zip(gaps, gaps[1:])))
        self.assertLess(gaps[-1], gaps[0])
        for n in agents:
            self.assertLessEqual(report.equicontinuity[n], 1.0 + 1e-6)


if __name__ == "__main__":
    import sys

    start_time = datetime.now()

    print('')
    print('======================================================================')
    print('')
    print(('run %s' % __file__))
    print(('in %s' % os.getcwd()))
    print(('started  at %s' % str(start_time)))
    print('')
    print('----------------------------------------------------------------------')
    print('')

    unittest.main(verbosity=2)

    print('')
    print('======================================================================')
    print('')
    print(('ran %s' % __file__))
    print(('in %s' % os.getcwd()))
    print(('started  at %s' % str(start_time)))
    print(('finished at %s' % str(datetime.now())))
    print('')
    print('----------------------------------------------------------------------')
    print('')
