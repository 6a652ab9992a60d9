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


import json
import os
from hashlib import sha256

from .potentials import KernelSpec, PotentialSpec
from .timegrid import TimeGrid


class ConfigError(ValueError):
    """ invalid or unreadable problem configuration """
    pass


def _check_keys(d, allowed, where):
    if not isinstance(d, dict):
        raise ConfigError("%s must be a JSON object but got %s"
                          % (where, d.__class__.__name__))
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise ConfigError("unknown field(s) %s in %s"
                          % (', '.join(unknown), where))


def _integer(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError("%s must be an integer but got %s"
                          % (where, repr(value)))
    return value


def _real(value, where, positive=True):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError("%s must be a number but got %s"
                          % (where, repr(value)))
    if positive and not value > 0:
        raise ConfigError("%s must be positive but got %s"
                          % (where, repr(value)))
    return float(value)


class OptimizerSettings:
    __slots__ = '_max_iters', '_grad_tol', '_seed', '_step', \
                '_sigma', '_max_halvings'

    MAX_ITERS = 200000
    GRAD_TOL = 1e-6
    SIGMA = 1e-4
    MAX_HALVINGS = 60

    def __init__(self, max_iters=None, grad_tol=None, seed=0, step=None,
                 sigma=None, max_halvings=None):
        """ settings of the projected gradient descent

        :param int max_iters: iteration budget (default: 200000)
        :param float grad_tol: tolerance on the projected gradient
            mapping (default: 1e-6)
        :param int seed: seed of every random choice (default: 0)
        :param float step: initial trial step **s_0**
            (default: `N dt / 4`, see :func:`brakeorbit.optimizer.minimize`)
        :param float sigma: Armijo constant (default: 1e-4)
        :param int max_halvings: line search budget (default: 60)

        """
        self._max_iters = self.MAX_ITERS if max_iters is None \
            else int(max_iters)
        self._grad_tol = self.GRAD_TOL if grad_tol is None \
            else float(grad_tol)
        self._seed = int(seed)
        self._step = None if step is None else float(step)
        self._sigma = self.SIGMA if sigma is None else float(sigma)
        self._max_halvings = self.MAX_HALVINGS if max_halvings is None \
            else int(max_halvings)
        if self._max_iters < 0 or self._max_halvings < 0:
            raise ValueError("iteration budgets must be nonnegative")
        if not (self._grad_tol > 0 and self._sigma > 0):
            raise ValueError("tolerances must be positive")
        if self._step is not None and not self._step > 0:
            raise ValueError("step must be positive")

    max_iters = property(lambda self: self._max_iters)
    grad_tol = property(lambda self: self._grad_tol)
    seed = property(lambda self: self._seed)
    step = property(lambda self: self._step)
    sigma = property(lambda self: self._sigma)
    max_halvings = property(lambda self: self._max_halvings)

    @classmethod
    def from_dict(cls, d):
        allowed = ('max_iters', 'grad_tol', 'seed', 'step', 'sigma',
                   'max_halvings')
        _check_keys(d, allowed, 'opt')
        kw = dict()
        for key in ('max_iters', 'seed', 'max_halvings'):
            if key in d:
                kw[key] = _integer(d[key], 'opt.' + key)
        for key in ('grad_tol', 'step', 'sigma'):
            if key in d:
                kw[key] = _real(d[key], 'opt.' + key)
        try:
            return cls(**kw)
        except ValueError as e:
            raise ConfigError(str(e))

    def to_dict(self):
        d = {'max_iters': self._max_iters, 'grad_tol': self._grad_tol,
             'seed': self._seed, 'sigma': self._sigma,
             'max_halvings': self._max_halvings}
        if self._step is not None:
            d['step'] = self._step
        return d

    def replace(self, **kwargs):
        d = self.to_dict()
        d.update(kwargs)
        return self.__class__(**d)

    def __eq__(self, other):
        return isinstance(other, OptimizerSettings) and \
            self.to_dict() == other.to_dict()

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, ', '.join(
            '%s=%s' % (k, repr(v)) for k, v in self.to_dict().items()))


class ProblemConfig:
    __slots__ = '_n_agents', '_grid', '_kernel', '_potential', \
                '_symmetric_class', '_opt', '_feas_tol'

    FEAS_TOL = 1e-9

    def __init__(self, n_agents, grid, kernel=None, potential=None,
                 symmetric_class=True, opt=None, feas_tol=None):
        """ all parameters of one minimization problem

        :param int n_agents: number of agents **N**
        :param TimeGrid grid: periodic time grid
        :param KernelSpec kernel: interaction kernel
            (default: `inverse_sqrt` with `alpha=1`)
        :param PotentialSpec potential: confining potential
            (default: `paper_smooth_double_well`)
        :param bool symmetric_class: minimize over the symmetric class
            (default: `True`)
        :param OptimizerSettings opt: solver settings
        :param float feas_tol: slack of the distance constraint
            (default: 1e-9)

        """
        if isinstance(n_agents, bool) or int(n_agents) != n_agents \
                or n_agents < 1:
            raise ValueError("n_agents %s must be a positive integer"
                             % str(n_agents))
        self._n_agents = int(n_agents)
        self._grid = grid
        self._kernel = KernelSpec() if kernel is None else kernel
        self._potential = PotentialSpec() if potential is None else potential
        self._symmetric_class = bool(symmetric_class)
        self._opt = OptimizerSettings() if opt is None else opt
        self._feas_tol = self.FEAS_TOL if feas_tol is None \
            else float(feas_tol)
        if not self._feas_tol > 0:
            raise ValueError("feas_tol %s must be positive"
                             % str(self._feas_tol))

    n_agents = property(lambda self: self._n_agents)
    grid = property(lambda self: self._grid)
    kernel = property(lambda self: self._kernel)
    potential = property(lambda self: self._potential)
    symmetric_class = property(lambda self: self._symmetric_class)
    opt = property(lambda self: self._opt)
    feas_tol = property(lambda self: self._feas_tol)

    @property
    def period(self):
        return self._grid.period

    @property
    def dt(self):
        return self._grid.dt

    @property
    def min_gap(self):
        return 1.0 / self._n_agents

    # --- serialization ----------------------------------------------------

    @classmethod
    def from_dict(cls, d):
        """ builds a config from a parsed JSON document

        unknown fields on every level raise :class:`ConfigError`
        """
        allowed = ('n_agents', 'period', 'time_steps', 'kernel',
                   'potential', 'symmetric_class', 'feas_tol', 'opt')
        _check_keys(d, allowed, 'config')
        for key in ('n_agents', 'period', 'time_steps'):
            if key not in d:
                raise ConfigError("missing field %s in config" % key)
        n_agents = _integer(d['n_agents'], 'n_agents')
        period = _real(d['period'], 'period')
        steps = _integer(d['time_steps'], 'time_steps')
        try:
            grid = TimeGrid(period, steps)
        except ValueError as e:
            raise ConfigError(str(e))

        k = d.get('kernel', {})
        _check_keys(k, ('alpha', 'name'), 'kernel')
        p = d.get('potential', {})
        _check_keys(p, ('name', 'params', 'r0'), 'potential')
        if not isinstance(p.get('params', []), list):
            raise ConfigError("potential.params must be a list")
        params = [_real(v, 'potential.params', False)
                  for v in p.get('params', [])]
        r0 = p.get('r0')
        r0 = None if r0 is None else _real(r0, 'potential.r0', False)
        try:
            kernel = KernelSpec(k.get('name', 'inverse_sqrt'),
                                _real(k.get('alpha', 1.0), 'kernel.alpha'))
            potential = PotentialSpec(
                p.get('name', 'paper_smooth_double_well'), params, r0)
        except ValueError as e:
            raise ConfigError(str(e))

        symmetric_class = d.get('symmetric_class', True)
        if not isinstance(symmetric_class, bool):
            raise ConfigError("symmetric_class must be true or false")
        feas_tol = d.get('feas_tol')
        if feas_tol is not None:
            feas_tol = _real(feas_tol, 'feas_tol')
        opt = OptimizerSettings.from_dict(d.get('opt', {}))
        try:
            return cls(n_agents, grid, kernel, potential,
                       symmetric_class, opt, feas_tol)
        except ValueError as e:
            raise ConfigError(str(e))

    @classmethod
    def from_json(cls, path):
        """ reads a config from a JSON file """
        try:
            with open(path, encoding='utf-8') as f:
                d = json.load(f)
        except (OSError, ValueError) as e:
            raise ConfigError("unable to read config %s: %s" % (path, e))
        return cls.from_dict(d)

    def to_dict(self):
        return {
            'n_agents': self._n_agents,
            'period': self._grid.period,
            'time_steps': self._grid.steps,
            'kernel': self._kernel.to_dict(),
            'potential': self._potential.to_dict(),
            'symmetric_class': self._symmetric_class,
            'feas_tol': self._feas_tol,
            'opt': self._opt.to_dict(),
        }

    def canonical(self):
        """ canonical JSON bytes (sorted keys, compact, repr floats) """
        return json.dumps(self.to_dict(), sort_keys=True,
                          separators=(',', ':')).encode('utf-8')

    def digest(self):
        """ sha256 hex digest of :meth:`canonical` """
        return sha256(self.canonical()).hexdigest()

    # --- variations -------------------------------------------------------

    def replace(self, **kwargs):
        """ copy with some constructor arguments replaced """
        d = {'n_agents': self._n_agents, 'grid': self._grid,
             'kernel': self._kernel, 'potential': self._potential,
             'symmetric_class': self._symmetric_class, 'opt': self._opt,
             'feas_tol': self._feas_tol}
        d.update(kwargs)
        return self.__class__(**d)

    def with_agents(self, n_agents):
        return self.replace(n_agents=n_agents)

    def __eq__(self, other):
        return isinstance(other, ProblemConfig) and \
            self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return '%s(%d, %s, %s, %s)' % (
            self.__class__.__name__, self._n_agents, repr(self._grid),
            repr(self._kernel), repr(self._potential))


DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')


def shipped_config(name):
    """ one of the configs shipped in the package `data` folder

    :param str name: file name with or without `.json`,
        e.g. `strong_kernel`, `weak_kernel_n17`, `weak_kernel_n18`,
        `intermediate_kernel`, `brake` or `gamma`
    :return: :class:`ProblemConfig`

    """
    if not name.endswith('.json'):
        name += '.json'
    return ProblemConfig.from_json(os.path.join(DATA_DIR, name))
