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
from logging import getLogger
from math import ceil, inf, sqrt

import numpy as np
from scipy.integrate import quad

from .energy import EnergyBreakdown
from .potentials import AveragedPotential, averaged_potential_limit, \
    averaged_potential_limit_derivative, averaged_potential_N_derivative
from .timegrid import TrajectoryGrid

_logger = getLogger(__name__)

MAX_STEP = 1e-2
V_MIN = 1e-4
SCAN_CANDIDATES = 64
ESCAPE_CANDIDATES = 48
BISECTION_STEPS = 200


# --- orbit integration ----------------------------------------------------

def _force(pot, n_agents=None):
    if n_agents is None:
        return lambda a: averaged_potential_limit_derivative(pot, a)
    return lambda a: averaged_potential_N_derivative(pot, n_agents, a)


def _verlet(force, a, v, h, steps, every=1):
    """ velocity Verlet for `a'' = force(a)`, vectorized over `a` and `v` """
    a = np.array(a, dtype=float)
    v = np.array(v, dtype=float)
    samples_a, samples_v = [a.copy()], [v.copy()]
    f = force(a)
    for step in range(1, steps + 1):
        v = v + 0.5 * h * f
        a = a + h * v
        f = force(a)
        v = v + 0.5 * h * f
        if not step % every:
            samples_a.append(a.copy())
            samples_v.append(v.copy())
    return np.array(samples_a), np.array(samples_v)


def integrate_orbit(pot, a0, v0, t_span, dt, force='limit', n_agents=None):
    """ symplectic integration of `a'' = F(a)`

    :param PotentialSpec pot: potential **W**
    :param a0: initial position (scalar or array)
    :param v0: initial velocity (scalar or array)
    :param float t_span: integration time, negative to integrate backwards
    :param float dt: step size (positive)
    :param str force: `limit` for `F(a) = W(a+1) - W(a)`
        or `averaged_N` for `F = W_N'` with `n_agents` terms
    :param int n_agents: number of agents of `averaged_N`
    :return: tuple `(t, a, v)` of sampled arrays

    """
    if not dt > 0:
        raise ValueError("step size %s must be positive" % str(dt))
    if str(force).lower() in ('averaged_n', 'averaged') or \
            isinstance(force, int):
        n_agents = force if isinstance(force, int) else n_agents
        if not n_agents:
            raise ValueError("averaged_N force requires n_agents")
    else:
        n_agents = None
    steps = int(round(abs(t_span) / dt))
    h = dt if t_span >= 0 else -dt
    a, v = _verlet(_force(pot, n_agents), a0, v0, h, steps)
    return h * np.arange(steps + 1), a, v


def orbit_energy(averaged, a, v):
    """ conserved quantity `v^2/2 - W(a)` of the averaged potential """
    return 0.5 * np.asarray(v) ** 2 - averaged(a)


# --- profiles -------------------------------------------------------------

class IntervalProfile:
    __slots__ = '_grid', '_a'

    def __init__(self, grid, a):
        """ interval profile `m(t) = chi_(a(t), a(t)+1)`
        with momentum `w(t) = -a'(t) m(t)`

        :param TimeGrid grid: time grid
        :param a: left end points on the grid

        """
        a = np.array(a, dtype=float)
        if a.shape != (grid.steps,):
            raise ValueError("profile of shape %s does not match %s"
                             % (str(a.shape), repr(grid)))
        a.setflags(write=False)
        self._grid = grid
        self._a = a

    @property
    def grid(self):
        return self._grid

    @property
    def a(self):
        return self._a

    @property
    def mass(self):
        return 1.0

    @property
    def density_bound(self):
        return 1.0

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, repr(self._grid))


@dataclass(frozen=True, eq=False)
class BrakeOrbit:
    """ periodic orbit with `a(0) = a(T/2) = c`, `a'(+-T/4) = 0`,
    `a(T/4+s) = a(T/4-s)` and `a(-t) = 2c - a(t)`

    `c = -1/2` for the limit force and `c = -(N-1)/(2N)` for `N` agents.
    `roots` lists all bracketed shooting roots as `(v0, energy)`.
    """
    grid: object
    a: np.ndarray
    v: np.ndarray
    ode_residual: float
    v0: float = 0.0
    shooting_residual: float = 0.0
    trivial: bool = False
    center: float = -0.5
    n_agents: object = None
    roots: tuple = ()

    @property
    def times(self):
        return self.grid.times

    @property
    def profile(self):
        return IntervalProfile(self.grid, self.a)

    def symmetry_residuals(self):
        """ boundary, brake and reflection residuals at the grid nodes """
        g, a, c = self.grid, self.a, self.center
        k = np.arange(g.steps)
        boundary = max(abs(a[g.zero] - c), abs(a[g.half] - c))
        brake = float(np.max(np.abs(a[(g.steps // 2 - k) % g.steps] - a)))
        reflect = float(np.max(np.abs(a[(g.steps - k) % g.steps] - 2 * c + a)))
        return boundary, brake, reflect

    def turning_points(self):
        """ positions `a(-T/4)` and `a(T/4)` """
        return self.a[self.grid.minus_quarter], self.a[self.grid.quarter]


def _extend(grid, a_quarter, v_quarter, center):
    """ extends samples on `[0, T/4]` to the full period """
    steps, z, q = grid.steps, grid.zero, grid.steps // 4
    a, v = np.empty(steps), np.empty(steps)
    j = np.arange(q + 1)
    a[z + j], v[z + j] = a_quarter, v_quarter
    j = np.arange(q + 1, steps // 2 + 1)
    a[(z + j) % steps] = a[z + steps // 2 - j]
    v[(z + j) % steps] = -v[z + steps // 2 - j]
    j = np.arange(1, steps // 2)
    a[z - j] = 2.0 * center - a[z + j]
    v[z - j] = v[z + j]
    return a, v


def _grid_residual(force, a, dt):
    second = (np.roll(a, -1) - 2.0 * a + np.roll(a, 1)) / dt ** 2
    return float(np.max(np.abs(second - force(a))))


def solve_brake_orbit(pot, grid, n_agents=None, max_step=MAX_STEP,
                      v_min=V_MIN):
    """ shooting for the brake orbit of `a'' = W'(a)`

    :param PotentialSpec pot: even potential **W**
    :param TimeGrid grid: time grid of the orbit
    :param int n_agents: `None` for the window average `int_a^{a+1} W`,
        otherwise the discrete average `W_N` of `n_agents` terms
    :param float max_step: maximal integrator step, each grid step is
        split into equal substeps not longer than `max_step`
    :param float v_min: smallest initial velocity scanned
    :return: :class:`BrakeOrbit`

    Starting at `a(0) = c` with `a'(0) = v0 > 0` the residual
    `r(v0) = a'(T/4)` is scanned on log spaced velocities up to
    `v_max = sqrt(2 (max W - min W)) + 1` and on velocities accumulating
    at the escape velocity of the well, every sign change is bisected.
    Of all roots the orbit of least energy
    `sum (da)^2 / (2 dt) + dt sum W(a)` is returned (ties by smaller v0),
    extended to the full period by the brake symmetries.
    This is the lowest energy root, not necessarily the one of smallest
    `v0`; all roots with their energies are kept in `roots`.
    Without any root the constant orbit `a = c` is returned and
    flagged `trivial`.

    """
    center = -0.5 if n_agents is None else -(n_agents - 1) / (2.0 * n_agents)
    force = _force(pot, n_agents)
    averaged = AveragedPotential(pot, n_agents)
    dt = grid.dt
    substeps = max(1, int(ceil(dt / max_step - 1e-9)))
    steps = grid.steps // 4 * substeps
    h = dt / substeps

    reach = pot.r0 if pot.r0 < inf else 5.0
    xs = np.linspace(-reach - 1.0, reach, 2001)
    ws = averaged(xs)
    v_max = sqrt(2.0 * (float(np.max(ws)) - float(np.min(ws)))) + 1.0
    right = xs >= center
    v_esc = sqrt(max(0.0, 2.0 * (float(averaged(center)) -
                                 float(np.min(ws[right])))))
    candidates = np.geomspace(v_min, v_max, SCAN_CANDIDATES)
    if v_esc > v_min:
        near = v_esc * (1.0 - 10.0 ** (-np.arange(1, ESCAPE_CANDIDATES + 1)
                                       / 4.0))
        candidates = np.concatenate((candidates, near[near > v_min]))
    candidates = np.unique(candidates)

    def shoot(v0):
        a, v = _verlet(force, np.full_like(v0, center), v0, h, steps, steps)
        return v[-1]

    with np.errstate(over='ignore', invalid='ignore'):
        residual = shoot(candidates)
    finite = np.isfinite(residual)
    change = finite[:-1] & finite[1:] & \
        (np.sign(residual[:-1]) * np.sign(residual[1:]) < 0)
    lo, hi = candidates[:-1][change], candidates[1:][change]
    r_lo = residual[:-1][change]
    _logger.debug("scanned %d velocities up to %s, escape velocity %s, "
                  "%d brackets" % (len(candidates), v_max, v_esc, len(lo)))

    if not len(lo):
        _logger.info("no nontrivial brake orbit found")
        a = np.full(grid.steps, center)
        return BrakeOrbit(grid, a, np.zeros(grid.steps),
                          _grid_residual(force, a, dt),
                          trivial=True, center=center, n_agents=n_agents)

    with np.errstate(over='ignore', invalid='ignore'):
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            if np.all((mid <= lo) | (mid >= hi)):
                break
            r_mid = shoot(mid)
            left = np.sign(r_mid) == np.sign(r_lo)
            lo, r_lo = np.where(left, mid, lo), np.where(left, r_mid, r_lo)
            hi = np.where(left, hi, mid)
    roots = np.where(np.abs(shoot(lo)) <= np.abs(shoot(hi)), lo, hi)

    every = substeps
    a_q, v_q = _verlet(force, np.full_like(roots, center), roots, h,
                       steps, every)
    orbits = list()
    for r in range(len(roots)):
        a, v = _extend(grid, a_q[:, r], v_q[:, r], center)
        step = np.roll(a, -1) - a
        value = float(np.sum(step * step)) / (2.0 * dt) + \
            dt * float(np.sum(averaged(a)))
        orbits.append((value, roots[r], abs(v_q[-1, r]), a, v))
    orbits.sort(key=lambda o: (o[0], o[1]))
    value, v0, shooting, a, v = orbits[0]
    _logger.info("brake orbit v0=%.15g of %d roots, shooting residual %.3e"
                 % (v0, len(orbits), shooting))
    return BrakeOrbit(
        grid, a, v, _grid_residual(force, a, dt),
        v0=float(v0), shooting_residual=float(shooting), trivial=False,
        center=center, n_agents=n_agents,
        roots=tuple((float(o[1]), o[0]) for o in
                    sorted(orbits, key=lambda o: o[1])))


# --- energies -------------------------------------------------------------

def indicator_interaction(kernel, abs_tol=1e-10):
    """ interaction `int int chi(x) chi(y) K(|x-y|)` of `chi_(0,1)`
    reduced to `2 int_0^1 (1-u) K(u) du`

    raises :class:`ValueError` if the quadrature error estimate
    exceeds `abs_tol`
    """
    value, error = quad(lambda u: 2.0 * (1.0 - u) * kernel.K(u), 0.0, 1.0,
                        epsabs=abs_tol, epsrel=0.0, limit=500)
    if error > abs_tol:
        raise ValueError("quadrature error %s exceeds tolerance %s"
                         % (error, abs_tol))
    return value


def meanfield_energy(profile, pot, kernel, abs_tol=1e-10):
    """ energy of an interval profile

    :param IntervalProfile profile: the profile (or a :class:`BrakeOrbit`)
    :param PotentialSpec pot: potential **W**
    :param KernelSpec kernel: kernel **K**
    :return: :class:`EnergyBreakdown` with kinetic
        `sum (da)^2 / (2 dt)`, potential `dt sum int_a^{a+1} W`
        and interaction `T I(chi_(0,1))`

    """
    grid = profile.grid
    a = np.asarray(profile.a)
    step = np.roll(a, -1) - a
    kinetic = float(np.sum(step * step)) / (2.0 * grid.dt)
    potential = grid.dt * float(np.sum(averaged_potential_limit(pot, a)))
    interaction = grid.period * indicator_interaction(kernel, abs_tol)
    return EnergyBreakdown(kinetic, potential, interaction)


def block_from_orbit(orbit, n):
    """ saturated block of `n` agents filling the orbit's interval

    For the limit orbit this is `x^i = a + (i - 1/2)/n`.
    """
    a = np.asarray(orbit.a) - orbit.center
    offsets = -(n - 1) / (2.0 * n) + np.arange(n) / n
    return TrajectoryGrid(orbit.grid, a[:, None] + offsets[None, :])
