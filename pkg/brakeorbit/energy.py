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

from .potentials import averaged_potential_N


@dataclass(frozen=True)
class EnergyBreakdown:
    """ the three terms of the energy, the interaction entering with minus """
    kinetic: float
    potential: float
    interaction: float

    @property
    def total(self):
        return self.kinetic + self.potential - self.interaction

    def to_dict(self):
        return {'kinetic': self.kinetic, 'potential': self.potential,
                'interaction': self.interaction, 'total': self.total}


def _check_gaps(x):
    if x.shape[1] > 1:
        gaps = np.diff(x, axis=1)
        if np.any(gaps <= 0.0):
            k, i = np.unravel_index(np.argmin(gaps), gaps.shape)
            raise ValueError(
                "agents %d and %d collide or cross at node %d (gap %s)"
                % (i + 1, i + 2, k, repr(float(gaps[k, i]))))


def _pair_matrix(x):
    """ differences `x^i - x^j` per row and the off-diagonal mask """
    diff = x[:, :, None] - x[:, None, :]
    mask = ~np.eye(x.shape[1], dtype=bool)
    return diff, mask


def energy_terms(x, cfg):
    """ kinetic, potential and interaction term of a `M x N` array """
    x = np.asarray(x, dtype=float)
    _check_gaps(x)
    n, dt = x.shape[1], cfg.dt
    step = np.roll(x, -1, axis=0) - x
    kinetic = float(np.sum(step * step)) / (2.0 * n * dt)
    potential = dt / n * float(np.sum(cfg.potential.W(x)))
    if n > 1:
        diff, mask = _pair_matrix(x)
        kernel = cfg.kernel.K(np.abs(diff[:, mask]))
        interaction = dt / (n * n) * float(np.sum(kernel))
    else:
        interaction = 0.0
    return kinetic, potential, interaction


def total_energy(x, cfg):
    kinetic, potential, interaction = energy_terms(x, cfg)
    return kinetic + potential - interaction


def energy(traj, cfg):
    """ discrete energy of a trajectory

    :param TrajectoryGrid traj: the trajectory
    :param ProblemConfig cfg: the problem
    :return: :class:`EnergyBreakdown`

    With `dx_k = x_{k+1} - x_k` (periodic) the terms read

    * kinetic `sum_k sum_i dx_k^2 / (2 N dt)`
    * potential `dt / N sum_k sum_i W(x^i_k)`
    * interaction `dt / N^2 sum_k sum_{i != j} K(|x^i_k - x^j_k|)`

    Rows with a nonpositive gap raise a :class:`ValueError`.

    """
    return EnergyBreakdown(*energy_terms(traj.positions, cfg))


def gradient_array(x, cfg, interaction_sign=1.0):
    x = np.asarray(x, dtype=float)
    _check_gaps(x)
    n, dt = x.shape[1], cfg.dt
    g = (2.0 * x - np.roll(x, -1, axis=0) - np.roll(x, 1, axis=0)) / (n * dt)
    g += dt / n * cfg.potential.dW(x)
    if n > 1:
        diff, mask = _pair_matrix(x)
        force = np.zeros_like(diff)
        force[:, mask] = cfg.kernel.dK(np.abs(diff[:, mask])) * \
            np.sign(diff[:, mask])
        g -= interaction_sign * 2.0 * dt / (n * n) * np.sum(force, axis=2)
    return g


def gradient(traj, cfg, interaction_sign=1.0):
    """ exact gradient of :func:`energy` with respect to all node values

    :param TrajectoryGrid traj: the trajectory
    :param ProblemConfig cfg: the problem
    :param float interaction_sign: `-1.0` flips the interaction part
        (fault injection of the self test only)
    :return: `M x N` :class:`numpy.ndarray`

    """
    return gradient_array(traj.positions, cfg, interaction_sign)


def interaction_energy(mu, kernel):
    """ `(1/N^2) sum_{i != j} K(|x^i - x^j|)` of an empirical measure """
    points = np.sort(np.asarray(getattr(mu, 'points', mu), dtype=float))
    n = len(points)
    if n < 2:
        return 0.0
    if np.any(np.diff(points) <= 0.0):
        raise ValueError("coincident points in empirical measure")
    r = points[None, :] - points[:, None]
    upper = np.triu_indices(n, 1)
    return 2.0 * float(np.sum(kernel.K(r[upper]))) / (n * n)


def kN_constant(n, kernel):
    """ interaction `(1/N^2) sum_{i != j} K(|i-j|/N)` of a saturated block """
    if n < 1:
        raise ValueError("number of agents %s must be positive" % str(n))
    if n == 1:
        return 0.0
    d = np.arange(1, n)
    return 2.0 * float(np.sum((n - d) * kernel.K(d / n))) / (n * n)


def saturated_energy(a, cfg):
    """ energy of the saturated block `x^i = a + (i-1)/N`

    :param a: path of the lowest agent on the grid of `cfg`
    :param ProblemConfig cfg: the problem
    :return: :class:`EnergyBreakdown`

    The block moves rigidly, so the energy reduces to
    `sum (da)^2 / (2 dt) + dt sum W_N(a) - T K^N`
    with the discrete window average `W_N`.
    """
    a = np.asarray(a, dtype=float)
    dt = cfg.dt
    step = np.roll(a, -1) - a
    kinetic = float(np.sum(step * step)) / (2.0 * dt)
    potential = dt * float(np.sum(
        averaged_potential_N(cfg.potential, cfg.n_agents, a)))
    interaction = cfg.period * kN_constant(cfg.n_agents, cfg.kernel)
    return EnergyBreakdown(kinetic, potential, interaction)
