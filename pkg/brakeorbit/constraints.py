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
from fractions import Fraction
from logging import getLogger

import numpy as np
from numba import njit

from .timegrid import symmetry_index_maps

_logger = getLogger(__name__)

MAX_PASSES = 3


# --- symmetry subspace ----------------------------------------------------

def symmetrize_array(x):
    """ :func:`symmetrize` on a plain `M x N` array """
    x = np.asarray(x, dtype=float)
    s1, s2 = symmetry_index_maps(x.shape[0], x.shape[1])
    y = 0.5 * (x + s1(x))
    return 0.5 * (y + s2(y))


def symmetrize(traj):
    """ orthogonal projection onto the symmetric trajectories

    :param TrajectoryGrid traj: trajectory on a grid with `M` divisible by 4
    :return: :class:`TrajectoryGrid`

    First averages with the reflection **S1** about `T/4`,
    then with the space-time reflection **S2**.
    Both maps commute, so the result is invariant under both
    (bit-exactly) and the map is idempotent.
    Averages of feasible rows are feasible.

    """
    return traj.with_positions(symmetrize_array(traj.positions))


# --- chain constraint -----------------------------------------------------

@njit(cache=True)
def _project_row(x, c, out):
    # pool adjacent violators on y_i = x_i - i c
    n = x.shape[0]
    sums = np.empty(n)
    counts = np.empty(n, dtype=np.int64)
    top = -1
    for i in range(n):
        top += 1
        sums[top] = x[i] - i * c
        counts[top] = 1
        while top > 0 and \
                sums[top - 1] / counts[top - 1] > sums[top] / counts[top]:
            sums[top - 1] += sums[top]
            counts[top - 1] += counts[top]
            top -= 1
    pos = 0
    for b in range(top + 1):
        if counts[b] == 1:
            out[pos] = x[pos]
            pos += 1
        else:
            mean = sums[b] / counts[b]
            for _ in range(counts[b]):
                out[pos] = mean + pos * c
                pos += 1


@njit(cache=True)
def _project_rows(x, c):
    out = np.empty_like(x)
    for k in range(x.shape[0]):
        _project_row(x[k], c, out[k])
    return out


def project_gaps(row, min_gap):
    """ Euclidean projection onto `{x : x^{i+1} - x^i >= min_gap}`

    :param row: sequence of **N** reals
    :param float min_gap: minimal gap
    :return: :class:`numpy.ndarray`

    Isotonic regression by pool adjacent violators on
    `y^i = x^i - (i-1) min_gap`, blocks merged left to right.
    Agents in singleton blocks keep their value exactly.

    """
    row = np.ascontiguousarray(row, dtype=float)
    out = np.empty_like(row)
    _project_row(row, float(min_gap), out)
    return out


def project_gaps_array(x, min_gap):
    """ :func:`project_gaps` applied to every row of a `M x N` array """
    return _project_rows(np.ascontiguousarray(x, dtype=float), float(min_gap))


def project_feasible_array(x, cfg):
    """ :func:`project_feasible` on a plain `M x N` array """
    x = np.asarray(x, dtype=float)
    min_gap = cfg.min_gap
    for _ in range(MAX_PASSES):
        if cfg.symmetric_class:
            x = symmetrize_array(x)
        x = project_gaps_array(x, min_gap)
        if cfg.symmetric_class:
            x = symmetrize_array(x)
        violation = float(np.max(min_gap - np.diff(x, axis=1))) \
            if x.shape[1] > 1 else 0.0
        residual = 0.0
        if cfg.symmetric_class:
            residual = max(m.residual(x)
                           for m in symmetry_index_maps(*x.shape))
        if violation <= cfg.feas_tol and residual <= cfg.feas_tol:
            return x
        _logger.debug("projection pass left violation %s, residual %s"
                      % (violation, residual))
    raise AssertionError(
        "projection failed after %d passes (violation %s, residual %s)"
        % (MAX_PASSES, violation, residual))


def project_feasible(traj, cfg):
    """ projection onto the (symmetric) feasible set

    :param TrajectoryGrid traj: any trajectory
    :param ProblemConfig cfg: the problem (`symmetric_class` and **N**)
    :return: :class:`TrajectoryGrid`

    Symmetrizes (in the symmetric class), projects every row onto
    gaps `>= 1/N` and verifies both constraint families.
    The constraint set is invariant under both symmetries, so
    one pass suffices, at most three passes are made before an
    :class:`AssertionError` is raised.

    """
    return traj.with_positions(project_feasible_array(traj.positions, cfg))


# --- barycenters ----------------------------------------------------------

@dataclass(frozen=True)
class BarycenterReport:
    """ gaps `d^i`, `i = 2 .. N`, barycenter differences `m^J`,
    `J = 1 .. N-1`, and the residual of their linear identity """
    d: tuple
    m: tuple
    residual: float

    @property
    def n(self):
        return len(self.d) + 1


def barycenter_coefficient(n, j, big_j):
    """ coefficient `(N-j)/(N-J) - j/J` as exact :class:`fractions.Fraction` """
    return Fraction(n - j, n - big_j) - Fraction(j, big_j)


def coefficients_positive(n):
    """ `True` iff all coefficients with `j < J < N` are positive """
    return all(barycenter_coefficient(n, j, big_j) > 0
               for big_j in range(1, n) for j in range(1, big_j))


def barycenter_differences(row):
    """ `m^J` = mean of the top `N-J` minus mean of the bottom `J` agents """
    row = np.sort(np.asarray(row, dtype=float))
    n = len(row)
    csum = np.cumsum(row)
    big_j = np.arange(1, n)
    bottom = csum[:-1] / big_j
    top = (csum[-1] - csum[:-1]) / (n - big_j)
    return top - bottom


def barycenter_report(row):
    """ gaps, barycenter differences and the identity

    `m^J = (N-1)/(N-J) m^1 - sum_{j<J} ((N-j)/(N-J) - j/J) d^{j+1}`

    :param row: positions of `N >= 2` agents
    :return: :class:`BarycenterReport`

    """
    row = np.sort(np.asarray(row, dtype=float))
    n = len(row)
    if n < 2:
        raise ValueError("barycenter report requires at least two agents")
    d = np.diff(row)
    m = barycenter_differences(row)
    residual = 0.0
    for big_j in range(1, n):
        j = np.arange(1, big_j)
        coeff = (n - j) / (n - big_j) - j / big_j
        rhs = (n - 1) / (n - big_j) * m[0] - float(np.sum(coeff * d[j - 1]))
        residual = max(residual, abs(m[big_j - 1] - rhs))
    return BarycenterReport(tuple(d), tuple(m), residual)


def min_mJ_bound_check(n, alpha, trials, seed=0):
    """ sampled check of `min_J m^J >= alpha N / 2` on rows with gaps
    `>= alpha` and of equality only for the saturated row

    :param int n: number of agents (at least 2)
    :param float alpha: minimal gap
    :param int trials: number of random rows
    :param int seed: random seed
    :return: `True` iff all rows pass

    """
    if n < 2 or not alpha > 0:
        raise ValueError("requires n >= 2 and alpha > 0")
    rng = np.random.default_rng(seed)
    bound = alpha * n / 2.0
    gaps = alpha * (1.0 + rng.exponential(1.0, (trials, n - 1)))
    # some rows with saturated gaps, the first one fully saturated
    saturated = rng.random((trials, n - 1)) < 0.5
    saturated[0] = True
    gaps = np.where(saturated, alpha, gaps)
    start = rng.uniform(-1.0, 1.0, trials)
    eq_tol, bound_tol = 1e-9, 1e-12
    for x0, g in zip(start, gaps):
        row = np.concatenate(([x0], x0 + np.cumsum(g)))
        excess = float(np.min(barycenter_differences(row))) - bound
        if excess < -bound_tol * max(1.0, bound):
            _logger.info("barycenter bound violated by %s" % -excess)
            return False
        if excess <= eq_tol and np.max(np.abs(g - alpha)) > n * eq_tol:
            _logger.info("barycenter bound attained by unsaturated row")
            return False
    return True
