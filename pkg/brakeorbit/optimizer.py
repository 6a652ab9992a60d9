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


from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from logging import getLogger
from math import inf, nan, pi, sqrt

import numpy as np

from .constraints import project_feasible_array, barycenter_differences
from .energy import energy_terms, gradient_array, total_energy, \
    EnergyBreakdown
from .potentials import averaged_potential_N_derivative
from .timegrid import TrajectoryGrid, validate

_logger = getLogger(__name__)

WELLS_AMPLITUDE = (sqrt(0.5) + sqrt(3.0)) / 2.0
RANDOM_JITTER = 0.25
SATURATION_GATE = 0.05
OPEN_GAP_MARGIN = 1e-3


# --- result types ---------------------------------------------------------

@dataclass(frozen=True)
class MinimizerDiagnostics:
    """ qualitative properties of a computed minimizer """
    support_radius: float
    saturation_dev: float
    ode_residual: float
    stationarity_dev: float

    def to_dict(self):
        return {'support_radius': self.support_radius,
                'saturation_dev': self.saturation_dev,
                'ode_residual': self.ode_residual,
                'stationarity_dev': self.stationarity_dev}


@dataclass(frozen=True)
class SolveResult:
    """ final iterate of :func:`minimize`

    `history` holds rows `(iteration, energy, projected gradient norm,
    saturation deviation)`
    """
    traj: TrajectoryGrid
    history: tuple
    converged: bool
    diagnostics: MinimizerDiagnostics
    energy: EnergyBreakdown
    mode: str = ''

    @property
    def iterations(self):
        return self.history[-1][0] if self.history else 0


@dataclass(frozen=True)
class ReducedOdeReport:
    residual: float
    interior: float
    boundary: float
    meaningful: bool


@dataclass(frozen=True)
class SaturationReport:
    """ saturation deviation and the sufficient saturation condition
    `min |K'| on (0, 2R_0+2]  >  max |W'| on [-R_0-1, R_0+1]` """
    deviation: float
    kernel_side: float
    potential_side: float
    applies: bool
    convexity_bound: float

    def __float__(self):
        return self.deviation

    def to_dict(self):
        return {'saturation_dev': self.deviation,
                'min_abs_kernel_derivative': self.kernel_side,
                'max_abs_potential_derivative': self.potential_side,
                'condition_holds': self.applies,
                'convexity_bound': self.convexity_bound}


@dataclass(frozen=True)
class OptimalityReport:
    """ slacks of the optimality inequalities of the upper group
    `i > J` and the lower group `i <= J`, the equality residual where
    the gap `d^{J+1}` is open and the convexity of `m^J` there """
    J: int
    upper_slack: float
    lower_slack: float
    equality_residual: float
    open_nodes: int
    convexity_slack: float

    def to_dict(self):
        return asdict(self)


# --- helpers --------------------------------------------------------------

def saturation_deviation(x, n):
    x = np.asarray(getattr(x, 'positions', x))
    if x.shape[1] < 2:
        return 0.0
    return float(np.max(np.abs(np.diff(x, axis=1) - 1.0 / n)))


def _block_offsets(n):
    return -(n - 1) / (2.0 * n) + np.arange(n) / n


def truncate(traj, r0):
    """ clamps agent `i` to `[-R_0 - (N+1-i)/N, R_0 + i/N]`

    The clamp keeps the distance constraint and does not increase
    the energy when `x W'(x) > 0` beyond `R_0`.
    """
    if r0 == inf:
        return traj
    n = traj.n_agents
    i = np.arange(1, n + 1)
    lower = -r0 - (n + 1 - i) / n
    upper = r0 + i / n
    return traj.with_positions(np.clip(traj.positions, lower, upper))


# --- initial guesses ------------------------------------------------------

def _stationary_block(cfg):
    return np.tile(_block_offsets(cfg.n_agents), (cfg.grid.steps, 1))


def _wells_oscillation(cfg):
    t = cfg.grid.times
    center = WELLS_AMPLITUDE * np.cos(2.0 * pi * (t - cfg.period / 4.0)
                                      / cfg.period)
    return center[:, None] + _block_offsets(cfg.n_agents)[None, :]


def _random(cfg, rng):
    x = _stationary_block(cfg)
    return x + rng.uniform(-RANDOM_JITTER, RANDOM_JITTER, x.shape)


def _split_groups(cfg):
    n = cfg.n_agents
    lower = n // 2
    row = np.zeros(n)
    left = -WELLS_AMPLITUDE + (np.arange(lower) - (lower - 1) / 2.0) / n
    row[:lower] = left
    row[n - lower:] = -left[::-1]
    return np.tile(row, (cfg.grid.steps, 1))


INITIAL_GUESS_MODES = ('wells_oscillation', 'stationary_block', 'random',
                       'split_groups')

_mode_alias = {
    'wells_oscillation': 'wells_oscillation',
    'wells': 'wells_oscillation',
    'stationary_block': 'stationary_block',
    'stationary': 'stationary_block',
    'block': 'stationary_block',
    'random': 'random',
    'split_groups': 'split_groups',
    'split': 'split_groups',
}


def initial_guess(cfg, mode='wells_oscillation', seed=None):
    """ feasible starting trajectory

    :param ProblemConfig cfg: the problem
    :param str mode: one of

        * `wells_oscillation` saturated block with center
          `A cos(2 pi (t - T/4) / T)`, `A = (sqrt(0.5)+sqrt(3))/2`
        * `stationary_block` saturated block at rest with
          `x^1 = -(N-1)/(2N)`
        * `random` uniformly jittered stationary block
        * `split_groups` two saturated groups at rest in the two wells
          (and the middle agent at 0 for odd **N**)

    :param int seed: seed of `random` (default: `cfg.opt.seed`)
    :return: :class:`TrajectoryGrid` projected onto the feasible
        (and symmetric, if required) set

    """
    key = str(mode).lower()
    if key not in _mode_alias:
        raise ValueError("unknown initial guess mode %s" % mode)
    key = _mode_alias[key]
    if key == 'wells_oscillation':
        x = _wells_oscillation(cfg)
    elif key == 'stationary_block':
        x = _stationary_block(cfg)
    elif key == 'random':
        seed = cfg.opt.seed if seed is None else seed
        x = _random(cfg, np.random.default_rng(seed))
    else:
        x = _split_groups(cfg)
    return TrajectoryGrid(cfg.grid, project_feasible_array(x, cfg))


# --- descent --------------------------------------------------------------

def minimize(cfg, start):
    """ projected gradient descent with Armijo backtracking

    :param ProblemConfig cfg: the problem
    :param TrajectoryGrid start: feasible (and symmetric, if required) start
    :return: :class:`SolveResult`

    Iterates `x <- P(x - s g)` with the projection **P** of
    :func:`brakeorbit.constraints.project_feasible` and accepts a step if
    `J(x_new) <= J(x) - sigma <g, x - x_new>`, halving `s` otherwise.
    Each line search starts at `min(s_0, 2 s)` with the last accepted `s`.
    The default trial step `s_0 = N dt / 4` is the inverse Lipschitz
    constant of the kinetic term.
    Stops when `|x - P(x - s_0 g)| / s_0 <= grad_tol`.
    Running out of line search halvings or iterations is reported by
    `converged=False`, not raised.

    """
    report = validate(start, cfg)
    if not report.feasible or (cfg.symmetric_class and not report.symmetric):
        raise ValueError(
            "start is not feasible (violation %s, symmetry residual %s)"
            % (report.violation, report.symmetry_residual))

    opt, n = cfg.opt, cfg.n_agents
    s0 = opt.step if opt.step else 0.25 * n * cfg.dt
    x = start.positions
    f = total_energy(x, cfg)
    g = gradient_array(x, cfg)
    s = s0
    history = list()
    converged = False

    for it in range(opt.max_iters + 1):
        trial = project_feasible_array(x - s0 * g, cfg)
        pg_norm = float(np.linalg.norm(x - trial)) / s0
        history.append((it, f, pg_norm, saturation_deviation(x, n)))
        if not it % 1000:
            _logger.debug("iteration %d energy %.12g projected gradient %.3e"
                          % (it, f, pg_norm))
        if pg_norm <= opt.grad_tol:
            converged = True
            break
        if it == opt.max_iters:
            break

        s = min(s0, 2.0 * s)
        for _ in range(opt.max_halvings + 1):
            cand = trial if s == s0 else project_feasible_array(x - s * g, cfg)
            fc = total_energy(cand, cfg)
            if fc <= f - opt.sigma * float(np.sum(g * (x - cand))):
                break
            s *= 0.5
        else:
            _logger.warning("line search failed at iteration %d" % it)
            break
        x, f = cand, fc
        g = gradient_array(x, cfg)

    traj = TrajectoryGrid(cfg.grid, x)
    result = SolveResult(
        traj=traj,
        history=tuple(history),
        converged=converged,
        diagnostics=diagnose(traj, cfg),
        energy=EnergyBreakdown(*energy_terms(x, cfg)))
    _logger.info(
        "%s after %d iterations: energy %.12g, saturation deviation %.3e"
        % ('converged' if converged else 'stopped', result.iterations, f,
           result.diagnostics.saturation_dev))
    return result


def multi_start(cfg, modes=INITIAL_GUESS_MODES[:3], threads=None):
    """ runs :func:`minimize` from several initial guesses in parallel

    :return: list of :class:`SolveResult`, the best first
        (lowest energy, ties broken by lowest saturation deviation)
    """
    unknown = [m for m in modes if str(m).lower() not in _mode_alias]
    if unknown:
        raise ValueError("unknown initial guess modes %s" % ', '.join(unknown))

    def run(mode):
        result = minimize(cfg, initial_guess(cfg, mode))
        return SolveResult(result.traj, result.history, result.converged,
                           result.diagnostics, result.energy,
                           _mode_alias[mode.lower()])

    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(run, modes))
    results.sort(key=lambda r: (r.energy.total, r.diagnostics.saturation_dev))
    return results


# --- verification ---------------------------------------------------------

def diagnose(traj, cfg):
    x = traj.positions
    return MinimizerDiagnostics(
        support_radius=float(np.max(np.abs(x))),
        saturation_dev=saturation_deviation(x, cfg.n_agents),
        ode_residual=reduced_ode_report(traj, cfg).residual,
        stationarity_dev=float(np.max(np.ptp(x, axis=0))))


def verify_support(result, pot):
    """ `True` iff all agents stay within `R_0 + 1` """
    return result.diagnostics.support_radius <= pot.r0 + 1.0 + 1e-6


def saturation_condition(cfg, samples=10001):
    """ both sides of the sufficient saturation condition and the
    convexity bound `2 min |K'| - 2 max |W'|` """
    r0 = cfg.potential.r0
    if r0 == inf:
        return 0.0, inf, False, -inf
    # K is nonincreasing, so |K'| is smallest at the far end
    kernel_side = abs(float(cfg.kernel.dK(2.0 * r0 + 2.0)))
    x = np.linspace(-r0 - 1.0, r0 + 1.0, samples)
    potential_side = float(np.max(np.abs(cfg.potential.dW(x))))
    bound = 2.0 * kernel_side - 2.0 * potential_side
    return kernel_side, potential_side, kernel_side > potential_side, bound


def verify_saturation(result, cfg):
    """ saturation deviation `max |d^i - 1/N|` with the sufficient
    condition for saturation evaluated on samples

    :return: :class:`SaturationReport` (which converts to `float`)
    """
    kernel_side, potential_side, applies, bound = saturation_condition(cfg)
    return SaturationReport(
        deviation=result.diagnostics.saturation_dev,
        kernel_side=kernel_side,
        potential_side=potential_side,
        applies=applies,
        convexity_bound=bound)


def reduced_ode_report(traj, cfg):
    """ residual of `(x^1)'' = W_N'(x^1)` with `x^1 = -(N-1)/(2N)`
    at `t = 0` and `t = T/2` """
    n, grid = cfg.n_agents, cfg.grid
    x1 = traj.positions[:, 0]
    saturated = saturation_deviation(traj, n) <= SATURATION_GATE
    second = (x1[2:] - 2.0 * x1[1:-1] + x1[:-2]) / grid.dt ** 2
    force = averaged_potential_N_derivative(cfg.potential, n, x1[1:-1])
    interior = float(np.max(np.abs(second - force))) if len(second) else 0.0
    target = -(n - 1) / (2.0 * n)
    boundary = max(abs(x1[grid.zero] - target), abs(x1[grid.half] - target))
    meaningful = cfg.symmetric_class and saturated
    return ReducedOdeReport(
        residual=max(interior, boundary) if meaningful else nan,
        interior=interior,
        boundary=boundary,
        meaningful=meaningful)


def verify_reduced_ode(result, cfg):
    """ residual of the reduced ode of the lowest agent,
    `nan` for nonsymmetric or unsaturated minimizers """
    traj = getattr(result, 'traj', result)
    return reduced_ode_report(traj, cfg).residual


def optimality_residuals(result, cfg):
    """ discrete optimality conditions of the group shifts

    :return: tuple of :class:`OptimalityReport` for `J = 1 .. N-1`

    Shifting the upper group `i > J` up (the lower group `i <= J` down)
    is feasible, so at a minimizer

        `-(x_up^{J+1})'' + mean_{i>J} W'(x^i)
            - 2/(N(N-J)) sum_{i>J, j<=J} K'(x^i - x^j) >= 0`

        `(x_low^J)'' - mean_{i<=J} W'(x^i)
            - 2/(NJ) sum_{i>J, j<=J} K'(x^i - x^j) >= 0`

    with the group means `x_up`, `x_low`. Both are computed
    as scaled group sums of the gradient. Where `d^{J+1} > 1/N + 1e-3`
    equality holds and `m^J = x_up - x_low`
    satisfies `(m^J)'' >= 2 min |K'| - 2 max |W'|`.

    """
    traj = getattr(result, 'traj', result)
    x = traj.positions
    n, dt = cfg.n_agents, cfg.dt
    g = gradient_array(x, cfg)
    bound = saturation_condition(cfg)[3]
    m = np.array([barycenter_differences(row) for row in x]) \
        if n > 1 else np.zeros((len(x), 0))
    m2 = (np.roll(m, -1, axis=0) - 2.0 * m + np.roll(m, 1, axis=0)) / dt ** 2
    gaps = np.diff(x, axis=1)
    reports = list()
    for big_j in range(1, n):
        upper = np.sum(g[:, big_j:], axis=1) * n / (dt * (n - big_j))
        lower = -np.sum(g[:, :big_j], axis=1) * n / (dt * big_j)
        open_ = gaps[:, big_j - 1] > 1.0 / n + OPEN_GAP_MARGIN
        if np.any(open_):
            eq = float(np.max(np.maximum(np.abs(upper[open_]),
                                         np.abs(lower[open_]))))
            convex = float(np.min(m2[open_, big_j - 1])) - bound
        else:
            eq, convex = nan, nan
        reports.append(OptimalityReport(
            J=big_j,
            upper_slack=float(np.min(upper)),
            lower_slack=float(np.min(lower)),
            equality_residual=eq,
            open_nodes=int(np.sum(open_)),
            convexity_slack=convex))
    return tuple(reports)


def resample(traj, n_agents):
    """ warm start for another number of agents

    Every row's quantile function, linear through `((i - 1/2)/N, x^i)`
    and extended linearly, is evaluated at `(j - 1/2)/n_agents`.
    A saturated block maps to a saturated block. The result still
    needs :func:`brakeorbit.constraints.project_feasible`.
    """
    x = traj.positions
    n = traj.n_agents
    u_old = (np.arange(n) + 0.5) / n
    u_new = (np.arange(n_agents) + 0.5) / n_agents
    if n == 1:
        rows = np.tile(x, (1, n_agents)) + (u_new - 0.5)[None, :]
    else:
        slope_lo = (x[:, 1] - x[:, 0]) / (u_old[1] - u_old[0])
        slope_hi = (x[:, -1] - x[:, -2]) / (u_old[-1] - u_old[-2])
        rows = np.empty((x.shape[0], n_agents))
        for k, row in enumerate(x):
            rows[k] = np.interp(u_new, u_old, row)
        lo, hi = u_new < u_old[0], u_new > u_old[-1]
        rows[:, lo] = x[:, :1] + slope_lo[:, None] * (u_new[lo] - u_old[0])
        rows[:, hi] = x[:, -1:] + slope_hi[:, None] * (u_new[hi] - u_old[-1])
    return TrajectoryGrid(traj.grid, rows)
