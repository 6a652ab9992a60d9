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
from dataclasses import dataclass
from itertools import combinations
from logging import getLogger
from math import ceil, sqrt

import numpy as np
from numpy.polynomial.legendre import leggauss

from .meanfield import meanfield_energy

_logger = getLogger(__name__)

MASS_TOL = 1e-6
QUANTILE_NODES = 10000
SAMPLE_NODES = 8


# --- measure types --------------------------------------------------------

class EmpiricalMeasure:
    __slots__ = '_points', '_mass'

    def __init__(self, points, mass=1.0):
        """ equal weight measure `(mass/N) sum_i delta_{x^i}`

        :param points: particle positions (sorted on construction)
        :param float mass: total mass (default: 1)

        """
        points = np.sort(np.array(points, dtype=float).ravel())
        if not len(points):
            raise ValueError("%s requires at least one point"
                             % self.__class__.__name__)
        points.setflags(write=False)
        self._points = points
        self._mass = float(mass)

    @property
    def points(self):
        return self._points

    @property
    def n(self):
        return len(self._points)

    @property
    def mass(self):
        return self._mass

    @property
    def weights(self):
        return np.full(self.n, self._mass / self.n)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        count = np.searchsorted(self._points, x, side='right')
        return self._mass * count / self.n

    def quantile(self, u):
        """ left continuous inverse of the normalized cdf, `u` in `(0, 1]` """
        u = np.asarray(u, dtype=float)
        i = np.clip(np.ceil(u * self.n - 1e-12).astype(int), 1, self.n)
        return self._points[i - 1]

    def shifted(self, h):
        return self.__class__(self._points + h, self._mass)

    def __repr__(self):
        return '%s(<%d points>)' % (self.__class__.__name__, self.n)


class IntervalIndicator:
    __slots__ = '_left', '_width'

    def __init__(self, left, width=1.0):
        """ uniform probability measure on `(left, left + width)`,
        for `width = 1` the indicator `chi_(a, a+1)` """
        if not width > 0:
            raise ValueError("width %s must be positive" % str(width))
        self._left = float(left)
        self._width = float(width)

    @property
    def left(self):
        return self._left

    @property
    def width(self):
        return self._width

    @property
    def mass(self):
        return 1.0

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.clip((x - self._left) / self._width, 0.0, 1.0)

    def quantile(self, u):
        return self._left + self._width * np.asarray(u, dtype=float)

    def shifted(self, h):
        return self.__class__(self._left + h, self._width)

    def __repr__(self):
        return '%s(%s, %s)' % (
            self.__class__.__name__, repr(self._left), repr(self._width))


class DensityGrid:
    __slots__ = '_x_min', '_x_max', '_values', '_cells'

    def __init__(self, x_min, x_max, values, mass=None):
        """ piecewise linear density on a uniform spatial grid

        :param float x_min: left end of the grid
        :param float x_max: right end of the grid
        :param values: nonnegative density values at the grid nodes
        :param float mass: declared mass, checked against the trapezoid
            mass to `1e-6` (optional)

        The density vanishes outside `[x_min, x_max]`.
        Its cdf is piecewise quadratic and inverted in closed form.

        """
        values = np.array(values, dtype=float)
        if values.ndim != 1 or len(values) < 2 or not x_max > x_min:
            raise ValueError("%s requires at least two nodes on a "
                             "nonempty interval" % self.__class__.__name__)
        if np.any(values < 0.0):
            raise ValueError("density values must be nonnegative")
        values.setflags(write=False)
        self._x_min, self._x_max = float(x_min), float(x_max)
        self._values = values
        h = self.step
        self._cells = np.concatenate(
            ([0.0], np.cumsum(0.5 * h * (values[:-1] + values[1:]))))
        if mass is not None and abs(self.mass - mass) > MASS_TOL:
            raise ValueError("trapezoid mass %s differs from declared mass %s"
                             % (self.mass, mass))

    @classmethod
    def from_function(cls, func, x_min, x_max, nodes=2001):
        x = np.linspace(x_min, x_max, nodes)
        return cls(x_min, x_max, func(x))

    @property
    def x_min(self):
        return self._x_min

    @property
    def x_max(self):
        return self._x_max

    @property
    def values(self):
        return self._values

    @property
    def nodes(self):
        return np.linspace(self._x_min, self._x_max, len(self._values))

    @property
    def step(self):
        return (self._x_max - self._x_min) / (len(self._values) - 1)

    @property
    def mass(self):
        return float(self._cells[-1])

    def __call__(self, x):
        return np.interp(x, self.nodes, self._values, left=0.0, right=0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        h, v = self.step, self._values
        s = np.clip((x - self._x_min) / h, 0.0, len(v) - 1.0)
        j = np.minimum(np.floor(s).astype(int), len(v) - 2)
        r = (s - j) * h
        return self._cells[j] + v[j] * r + \
            (v[j + 1] - v[j]) * r * r / (2.0 * h)

    def quantile(self, u):
        """ smallest `x` with `cdf(x) = u`, `u` in `[0, mass]` """
        u = np.asarray(u, dtype=float)
        h, v = self.step, self._values
        j = np.clip(np.searchsorted(self._cells, u, side='left') - 1,
                    0, len(v) - 2)
        r = np.maximum(u - self._cells[j], 0.0)
        slope = (v[j + 1] - v[j]) / h
        root = np.sqrt(np.maximum(v[j] * v[j] + 2.0 * slope * r, 0.0))
        with np.errstate(divide='ignore', invalid='ignore'):
            s = np.where(v[j] + root > 0.0, 2.0 * r / (v[j] + root), 0.0)
        return self._x_min + j * h + np.minimum(s, h)

    def restrict(self, lo, hi):
        """ density times the indicator of `[lo, hi]`, resampled on `[lo, hi]` """
        count = max(2, int(round((hi - lo) / self.step)) + 1)
        x = np.linspace(lo, hi, count)
        return self.__class__(lo, hi, self(x))

    def __repr__(self):
        return '%s(%s, %s, <%d values>)' % (
            self.__class__.__name__, repr(self._x_min), repr(self._x_max),
            len(self._values))


# --- distances ------------------------------------------------------------

_MEASURES = (EmpiricalMeasure, IntervalIndicator, DensityGrid)


def _check(mu):
    if not isinstance(mu, _MEASURES):
        raise TypeError("cannot compute distances of %s"
                        % mu.__class__.__name__)
    if abs(mu.mass - 1.0) > MASS_TOL:
        raise ValueError("%s has mass %s but probability measures are "
                         "required" % (mu.__class__.__name__, mu.mass))


def _empirical_empirical(mu, nu):
    if mu.n == nu.n:
        return float(np.mean((mu.points - nu.points) ** 2))
    u = np.union1d(np.arange(mu.n + 1) / mu.n, np.arange(nu.n + 1) / nu.n)
    mid, width = 0.5 * (u[1:] + u[:-1]), np.diff(u)
    return float(np.sum(width * (mu.quantile(mid) - nu.quantile(mid)) ** 2))


def _empirical_interval(mu, chi):
    h = 1.0 / mu.n
    mid = (np.arange(mu.n) + 0.5) * h
    c = mu.points - chi.quantile(mid)
    return float(np.sum(h * c * c) + mu.n * chi.width ** 2 * h ** 3 / 12.0)


def _interval_interval(mu, nu):
    da, dw = mu.left - nu.left, mu.width - nu.width
    return da * da + da * dw + dw * dw / 3.0


def _quantile_quadrature(mu, nu, nodes=QUANTILE_NODES):
    u = (np.arange(nodes) + 0.5) / nodes
    return float(np.mean((mu.quantile(u) - nu.quantile(u)) ** 2))


def wasserstein2(mu, nu):
    """ quadratic Wasserstein distance of two probability measures on the line

    :param mu: :class:`EmpiricalMeasure`, :class:`IntervalIndicator`
        or :class:`DensityGrid`
    :param nu: same as `mu`
    :return: `d_2(mu, nu)`, the `L^2` distance of the quantile functions

    Exact for empirical and interval operands, a midpoint rule on
    `10^4` quantile levels if a :class:`DensityGrid` is involved.

    """
    _check(mu)
    _check(nu)
    if isinstance(nu, EmpiricalMeasure) and \
            not isinstance(mu, EmpiricalMeasure):
        mu, nu = nu, mu
    if isinstance(mu, EmpiricalMeasure) and isinstance(nu, EmpiricalMeasure):
        sq = _empirical_empirical(mu, nu)
    elif isinstance(mu, EmpiricalMeasure) and \
            isinstance(nu, IntervalIndicator):
        sq = _empirical_interval(mu, nu)
    elif isinstance(mu, IntervalIndicator) and \
            isinstance(nu, IntervalIndicator):
        sq = _interval_interval(mu, nu)
    else:
        sq = _quantile_quadrature(mu, nu)
    return sqrt(max(sq, 0.0))


def _breakpoints(mu):
    if isinstance(mu, EmpiricalMeasure):
        return mu.points
    if isinstance(mu, IntervalIndicator):
        return np.array((mu.left, mu.left + mu.width))
    return mu.nodes


def wasserstein1(mu, nu, refine=8):
    """ `L^1` distance of the cdfs of two measures of equal mass

    Integrates `|F - G|` on the merged breakpoints of both cdfs,
    every cell refined `refine` times with a 4 point Gauss rule.
    Exact where both cdfs are piecewise linear.
    """
    for m in (mu, nu):
        if not isinstance(m, _MEASURES):
            raise TypeError("cannot compute distances of %s"
                            % m.__class__.__name__)
    if abs(mu.mass - nu.mass) > MASS_TOL:
        raise ValueError("masses %s and %s differ" % (mu.mass, nu.mass))
    x = np.union1d(_breakpoints(mu), _breakpoints(nu))
    if len(x) < 2:
        return 0.0
    sub = np.linspace(0.0, 1.0, refine + 1)
    edges = (x[:-1, None] + np.diff(x)[:, None] * sub[None, :])
    edges = np.append(edges[:, :-1].ravel(), x[-1])
    u, w = leggauss(4)
    mid, half = 0.5 * (edges[1:] + edges[:-1]), 0.5 * np.diff(edges)
    pts = mid[:, None] + half[:, None] * u[None, :]
    # cdfs jump at atoms, evaluate strictly inside the cells only
    diff = np.abs(mu.cdf(pts) - nu.cdf(pts))
    return float(np.sum(half * (diff @ w)))


# --- particle constructions -----------------------------------------------

def quantile_particles(m, R, n):
    """ particles at the quantiles of a density restricted to `[-R, R]`

    :param DensityGrid m: density, positive on `[-R, R]`
    :param float R: radius
    :param int n: number of particles
    :return: tuple `(EmpiricalMeasure, M_R)` with `M_R = m([-R, R])`
        and `m([-R, x^i]) = M_R/(2n) + (i-1) M_R/n`

    """
    if n < 1:
        raise ValueError("number of particles %s must be positive" % str(n))
    nodes = m.nodes
    inside = (nodes >= -R) & (nodes <= R)
    if np.any(m.values[inside] <= 0.0) or -R < m.x_min or R > m.x_max:
        raise ValueError("density must be positive on [-%s, %s]" % (R, R))
    base = float(m.cdf(-R))
    mass = float(m.cdf(R)) - base
    targets = base + mass / (2.0 * n) + np.arange(n) * mass / n
    return EmpiricalMeasure(m.quantile(targets)), mass


def mollify(m, eps):
    """ convolution with the Gaussian of variance `eps`

    :param DensityGrid m: density
    :param float eps: variance (positive)
    :return: :class:`DensityGrid` on the grid extended by `6 sqrt(eps)`

    The discrete kernel is truncated at `6 sqrt(eps)` and the result is
    rescaled to the input mass. A density bounded by 1 must come out
    strictly below 1.
    """
    if not eps > 0:
        raise ValueError("variance %s must be positive" % str(eps))
    h = m.step
    width = int(ceil(6.0 * sqrt(eps) / h))
    offsets = h * np.arange(-width, width + 1)
    kernel = np.exp(-offsets ** 2 / (2.0 * eps))
    kernel /= np.sum(kernel)
    values = np.convolve(np.pad(m.values, width), kernel, mode='same')
    out = DensityGrid(m.x_min - width * h, m.x_max + width * h, values)
    if out.mass > 0.0:
        out = DensityGrid(out.x_min, out.x_max, values * m.mass / out.mass)
    if np.max(m.values) <= 1.0 and np.max(out.values) >= 1.0:
        raise AssertionError("smoothed density reaches %s"
                             % np.max(out.values))
    return out


def density_bound_check(mu, c):
    """ `True` iff all gaps are at least `c/N` """
    points = np.asarray(getattr(mu, 'points', mu), dtype=float)
    if len(points) < 2:
        return True
    return bool(np.min(np.diff(points)) >= c / len(points) - 1e-12)


# --- diagnostics ----------------------------------------------------------

@dataclass(frozen=True)
class GammaRow:
    n: int
    t: float
    d2: float
    energy_gap: float


@dataclass(frozen=True)
class GammaReport:
    """ distances of the empirical measures to the interval profile

    `max_d2` and `equicontinuity` hold per `N` the max over the sample nodes
    of the distance and of the ratio
    `d_2^2(m(t), m(s)) / ((t - s) int_s^t mean |x'|^2)`.
    """
    rows: tuple
    max_d2: dict
    energy_gap: dict
    equicontinuity: dict
    meanfield_energy: float

    def to_csv(self, path):
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(('N', 't', 'd2', 'energy_gap'))
            for row in self.rows:
                writer.writerow((row.n, '%.17g' % row.t, '%.17g' % row.d2,
                                 '%.17g' % row.energy_gap))


def equicontinuity_ratio(traj, nodes):
    """ max over node pairs `s < t` of
    `d_2^2(m(t), m(s)) / ((t - s) int_s^t (1/N) sum |x'|^2)` """
    x, dt = traj.positions, traj.grid.dt
    n = traj.n_agents
    step = np.diff(x, axis=0)
    action = np.concatenate(([0.0], np.cumsum(
        np.sum(step * step, axis=1) / (n * dt))))
    ratio = 0.0
    for ks, kt in combinations(sorted(nodes), 2):
        d2 = wasserstein2(EmpiricalMeasure(x[kt]), EmpiricalMeasure(x[ks]))
        bound = (kt - ks) * dt * (action[kt] - action[ks])
        if bound > 0.0:
            ratio = max(ratio, d2 * d2 / bound)
    return ratio


def gamma_convergence_report(orbit, solves, potential=None, kernel=None):
    """ distances of N-agent minimizers to the brake orbit profile

    :param BrakeOrbit orbit: the limit orbit
    :param solves: sequence of
        :class:`brakeorbit.optimizer.SolveResult` for increasing **N**
    :param PotentialSpec potential: potential to evaluate the limit energy
    :param KernelSpec kernel: kernel to evaluate the limit energy
    :return: :class:`GammaReport`

    At the sample nodes `k = p M/8` the distance
    `d_2(m^N(t_k), chi_(a(t_k), a(t_k)+1))` is tabulated with the gap
    `|J^N - J|` of the energies (`nan` without potential and kernel).

    """
    grid = orbit.grid
    nodes = [p * grid.steps // SAMPLE_NODES for p in range(SAMPLE_NODES)]
    limit = float('nan')
    if potential is not None and kernel is not None:
        limit = meanfield_energy(orbit, potential, kernel).total
    rows, max_d2, gaps, ratios = list(), dict(), dict(), dict()
    for solve in solves:
        traj = solve.traj
        if traj.grid != grid:
            raise ValueError("solve on %s does not match orbit grid %s"
                             % (repr(traj.grid), repr(grid)))
        n = traj.n_agents
        gap = abs(solve.energy.total - limit)
        values = list()
        for k in nodes:
            d2 = wasserstein2(EmpiricalMeasure(traj.positions[k]),
                              IntervalIndicator(orbit.a[k]))
            values.append(d2)
            rows.append(GammaRow(n, float(grid.times[k]), d2, gap))
        max_d2[n], gaps[n] = max(values), gap
        ratios[n] = equicontinuity_ratio(traj, nodes)
        _logger.info("N=%d max d2 %.6g energy gap %.6g equicontinuity %.6g"
                     % (n, max_d2[n], gap, ratios[n]))
    return GammaReport(tuple(rows), max_d2, gaps, ratios, limit)
