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


from dataclasses import dataclass

import numpy as np


class TimeGrid:
    __slots__ = '_period', '_steps'

    def __init__(self, period, steps):
        """ uniform periodic time grid

        :param float period: period **T** of the trajectories (positive)
        :param int steps: number of nodes **M** (positive and divisible by 4)

        Node `k` carries the time `t_k = -T/2 + k * T/M`
        for `k = 0 ... M-1`, indices are taken modulo **M**.
        With **M** divisible by 4 the times `-T/4, 0, T/4, T/2` are nodes.

        >>> from brakeorbit import TimeGrid
        >>> g = TimeGrid(10., 8)
        >>> g.dt
        1.25
        >>> g.index_of(2.5)
        6

        """
        period = float(period)
        if not period > 0.0:
            raise ValueError(
                "period %s must be positive for %s"
                % (str(period), self.__class__.__name__))
        if isinstance(steps, float) and steps.is_integer():
            steps = int(steps)
        if not isinstance(steps, (int, np.integer)) or steps <= 0:
            raise ValueError(
                "steps %s must be a positive integer for %s"
                % (str(steps), self.__class__.__name__))
        if steps % 4:
            raise ValueError(
                "steps %d must be divisible by 4 for %s"
                % (steps, self.__class__.__name__))
        self._period = period
        self._steps = int(steps)

    @property
    def period(self):
        return self._period

    @property
    def steps(self):
        return self._steps

    @property
    def dt(self):
        return self._period / self._steps

    @property
    def times(self):
        """ node times as :class:`numpy.ndarray` """
        return -0.5 * self._period + self.dt * np.arange(self._steps)

    @property
    def zero(self):
        """ index of node `t = 0` """
        return self._steps // 2

    @property
    def quarter(self):
        """ index of node `t = T/4` """
        return 3 * self._steps // 4

    @property
    def minus_quarter(self):
        """ index of node `t = -T/4` """
        return self._steps // 4

    @property
    def half(self):
        """ index of node `t = T/2` (which is `t = -T/2` by periodicity) """
        return 0

    def index_of(self, t):
        """ index of the node closest to time `t` (modulo the period) """
        k = int(round((t + 0.5 * self._period) / self.dt))
        return k % self._steps

    def __eq__(self, other):
        if not isinstance(other, TimeGrid):
            return False
        return self._period == other.period and self._steps == other.steps

    def __hash__(self):
        return hash((self._period, self._steps))

    def __repr__(self):
        return '%s(%s, %d)' % (
            self.__class__.__name__, repr(self._period), self._steps)


class SymmetryMap:
    __slots__ = '_time', '_agent', '_sign', 'name'

    def __init__(self, time_index, agent_index, sign=1.0, name=''):
        """ index permutation acting on trajectory grids

        :param time_index: time permutation, `(S x)[k] = x[time_index[k]]`
        :param agent_index: agent permutation
        :param float sign: sign applied to the permuted values
        :param str name: label used in reports

        """
        self._time = np.asarray(time_index, dtype=int)
        self._agent = np.asarray(agent_index, dtype=int)
        self._time.setflags(write=False)
        self._agent.setflags(write=False)
        self._sign = float(sign)
        self.name = name

    @property
    def time_index(self):
        return self._time

    @property
    def agent_index(self):
        return self._agent

    @property
    def sign(self):
        return self._sign

    def __call__(self, positions):
        """ applies the map to a `M x N` array (or a :class:`TrajectoryGrid`) """
        if isinstance(positions, TrajectoryGrid):
            return positions.with_positions(self(positions.positions))
        positions = np.asarray(positions, dtype=float)
        return self._sign * positions[self._time][:, self._agent]

    def residual(self, positions):
        """ max norm of `S x - x` """
        positions = np.asarray(getattr(positions, 'positions', positions))
        if not positions.size:
            return 0.0
        return float(np.max(np.abs(self(positions) - positions)))

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, self.name)


def symmetry_index_maps(grid, n_agents):
    """ the two involutive symmetries of the symmetric constraint class

    :param TimeGrid grid: time grid (steps divisible by 4)
    :param int n_agents: number of agents **N**
    :return: tuple of :class:`SymmetryMap` `(S1, S2)`

    **S1** reflects time about `T/4`, i.e. `k -> M/2 - k`,
    agents unchanged.
    **S2** reflects time about `0`, i.e. `k -> M - k`,
    maps agent `i` to `N+1-i` and flips the sign.

    """
    steps = grid.steps if isinstance(grid, TimeGrid) else int(grid)
    if steps % 4:
        raise ValueError("steps %d must be divisible by 4" % steps)
    k = np.arange(steps)
    i = np.arange(n_agents)
    s1 = SymmetryMap((steps // 2 - k) % steps, i, 1.0, 'S1')
    s2 = SymmetryMap((steps - k) % steps, i[::-1], -1.0, 'S2')
    return s1, s2


class TrajectoryGrid:
    __slots__ = '_grid', '_positions'

    def __init__(self, grid, positions):
        """ positions of **N** agents sampled on a :class:`TimeGrid`

        :param TimeGrid grid: the time grid
        :param positions: `M x N` array, `positions[k, i]` is the
            position of agent `i+1` at time `t_k`

        The positions are copied into a read-only array.
        Feasibility is not enforced here, see :func:`validate`.

        """
        positions = np.array(positions, dtype=float)
        if positions.ndim == 1:
            positions = positions.reshape(grid.steps, -1)
        if positions.ndim != 2 or positions.shape[0] != grid.steps:
            raise ValueError(
                "positions of shape %s do not match %d steps of %s"
                % (str(positions.shape), grid.steps, repr(grid)))
        if not positions.shape[1]:
            raise ValueError("%s requires at least one agent"
                             % self.__class__.__name__)
        positions.setflags(write=False)
        self._grid = grid
        self._positions = positions

    @classmethod
    def constant(cls, grid, row):
        """ trajectory with every agent at rest """
        row = np.asarray(row, dtype=float)
        return cls(grid, np.tile(row, (grid.steps, 1)))

    @property
    def grid(self):
        return self._grid

    @property
    def positions(self):
        return self._positions

    @property
    def n_agents(self):
        return self._positions.shape[1]

    @property
    def steps(self):
        return self._positions.shape[0]

    @property
    def times(self):
        return self._grid.times

    @property
    def gaps(self):
        """ `M x (N-1)` array of consecutive gaps `x^{i+1} - x^i` """
        return np.diff(self._positions, axis=1)

    def agent(self, i):
        """ path of agent `i` (1-based as in `x^i`) """
        return self._positions[:, i - 1]

    def with_positions(self, positions):
        return self.__class__(self._grid, positions)

    def __eq__(self, other):
        if not isinstance(other, TrajectoryGrid):
            return False
        return self._grid == other.grid and \
            np.array_equal(self._positions, other.positions)

    def __repr__(self):
        return '%s(%s, <%d x %d>)' % (
            self.__class__.__name__, repr(self._grid), *self._positions.shape)


@dataclass(frozen=True)
class ValidationReport:
    feasible: bool
    ordered: bool
    symmetric: bool
    violation: float
    symmetry_residual: float

    def __bool__(self):
        return self.feasible


def validate(traj, cfg):
    """ checks the distance constraint and the symmetries

    :param TrajectoryGrid traj: trajectory to check
    :param cfg: :class:`brakeorbit.config.ProblemConfig`
    :return: :class:`ValidationReport`

    The violation is the max over all rows and gaps of `1/N - gap`
    clipped at zero. Ordering requires all gaps strictly positive.
    The symmetry residual is the max of the residuals under
    **S1** and **S2**.

    """
    if traj.n_agents != cfg.n_agents or traj.steps != cfg.grid.steps:
        raise ValueError(
            "trajectory of shape %d x %d does not match config %d x %d"
            % (traj.steps, traj.n_agents, cfg.grid.steps, cfg.n_agents))
    gaps = traj.gaps
    if gaps.size:
        ordered = bool(np.all(gaps > 0.0))
        violation = float(max(0.0, np.max(1.0 / cfg.n_agents - gaps)))
    else:
        ordered, violation = True, 0.0
    s1, s2 = symmetry_index_maps(traj.grid, traj.n_agents)
    residual = max(s1.residual(traj), s2.residual(traj))
    return ValidationReport(
        feasible=ordered and violation <= cfg.feas_tol,
        ordered=ordered,
        symmetric=residual <= cfg.feas_tol,
        violation=violation,
        symmetry_residual=residual)
