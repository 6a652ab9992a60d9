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


from logging import getLogger
from math import inf, sqrt

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline

_logger = getLogger(__name__)

QUAD_ABS_TOL = 1e-10


def _out(value, x):
    """ float for scalar input, array otherwise """
    return float(value) if np.ndim(x) == 0 else value


# --- potential families ---------------------------------------------------

def smooth_positive_part(x):
    """ regularized positive part `(0.1 sqrt(1+(10x)^2) + x) / 2`. """
    x = np.asarray(x, dtype=float)
    return _out(0.5 * (0.1 * np.sqrt(1.0 + (10.0 * x) ** 2) + x), x)


def smooth_positive_part_derivative(x):
    """ derivative `(1 + 10x / sqrt(1+(10x)^2)) / 2`
    of :func:`smooth_positive_part`. """
    x = np.asarray(x, dtype=float)
    return _out(0.5 * (1.0 + 10.0 * x / np.sqrt(1.0 + 100.0 * x * x)), x)


def smooth_double_well(x):
    """ smooth double well `10((0.5-x^2)^+ + (x^2-3)^+)`
    nearly flat on `sqrt(0.5) < |x| < sqrt(3)`. """
    x = np.asarray(x, dtype=float)
    xx = x * x
    return _out(10.0 * (smooth_positive_part(0.5 - xx) +
                        smooth_positive_part(xx - 3.0)), x)


def smooth_double_well_derivative(x):
    """ exact derivative of :func:`smooth_double_well`. """
    x = np.asarray(x, dtype=float)
    xx = x * x
    return _out(20.0 * x * (smooth_positive_part_derivative(xx - 3.0) -
                            smooth_positive_part_derivative(0.5 - xx)), x)


def quadratic(x, c=1.0):
    """ quadratic well `c x^2`. """
    x = np.asarray(x, dtype=float)
    return _out(c * x * x, x)


def quadratic_derivative(x, c=1.0):
    """ derivative `2 c x` of :func:`quadratic`. """
    x = np.asarray(x, dtype=float)
    return _out(2.0 * c * x, x)


def zero(x):
    """ vanishing potential. """
    x = np.asarray(x, dtype=float)
    return _out(np.zeros_like(x), x)


def zero_derivative(x):
    """ vanishing force. """
    return zero(x)


# --- kernel families ------------------------------------------------------

def _positive(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError(
            "kernel argument must be positive but got %s" % str(np.min(r)))
    return r


def inverse_sqrt(r, alpha=1.0):
    """ attractive kernel `alpha / sqrt(r)`. """
    r = _positive(r)
    return _out(alpha / np.sqrt(r), r)


def inverse_sqrt_derivative(r, alpha=1.0):
    """ derivative `-alpha r^(-3/2) / 2` of :func:`inverse_sqrt`. """
    r = _positive(r)
    return _out(-0.5 * alpha / (r * np.sqrt(r)), r)


def constant(r, alpha=1.0):
    """ constant kernel `alpha` (no attraction force). """
    r = _positive(r)
    return _out(np.full_like(r, alpha), r)


def constant_derivative(r, alpha=1.0):
    """ vanishing derivative of :func:`constant`. """
    r = _positive(r)
    return _out(np.zeros_like(r), r)


def inverse_sqrt_kernel(alpha, r):
    """ value and derivative of `alpha / sqrt(r)` as tuple `(K, K')` """
    return inverse_sqrt(r, alpha), inverse_sqrt_derivative(r, alpha)


# --- specs ----------------------------------------------------------------

class PotentialSpec:
    __slots__ = '_name', '_params', '_r0'

    # name: (value, derivative, default r0, symmetric)
    _potential_func = {
        'paper_smooth_double_well':
            (smooth_double_well, smooth_double_well_derivative,
             sqrt(3.0) + 0.1, True),
        'quadratic': (quadratic, quadratic_derivative, 0.0, True),
        'zero': (zero, zero_derivative, inf, True),
    }
    _alias = {
        'paper_smooth_double_well': 'paper_smooth_double_well',
        'smooth_double_well': 'paper_smooth_double_well',
        'double_well': 'paper_smooth_double_well',
        'paper': 'paper_smooth_double_well',
        'quadratic': 'quadratic',
        'quad': 'quadratic',
        'zero': 'zero',
        'none': 'zero',
    }

    def __init__(self, name='paper_smooth_double_well', params=(), r0=None):
        """ confining potential **W** of a registered family

        :param str name: family name (see below)
        :param params: family parameters, e.g. `[c]` for `quadratic`
        :param float r0: radius **R_0** with `x W'(x) > 0` for `|x| > R_0`
            (optional, defaults to the family value)

        The family value `r0` of `paper_smooth_double_well` is
        `sqrt(3) + 0.1`, of `quadratic` it is `0`
        and `zero` has no such radius (`inf`).

        """
        key = str(name).lower()
        if key not in self._alias:
            raise ValueError(
                "unknown potential %s for %s" % (name, self.__class__.__name__))
        self._name = self._alias[key]
        self._params = tuple(float(p) for p in params)
        default = self._potential_func[self._name][2]
        self._r0 = default if r0 is None else float(r0)
        try:
            self.W(0.0)
        except TypeError:
            raise ValueError(
                "invalid parameters %s for potential %s"
                % (str(self._params), self._name))

    @property
    def name(self):
        return self._name

    @property
    def params(self):
        return self._params

    @property
    def r0(self):
        return self._r0

    @property
    def symmetric(self):
        return self._potential_func[self._name][3]

    def W(self, x):
        """ potential value """
        return self._potential_func[self._name][0](x, *self._params)

    def dW(self, x):
        """ potential derivative **W'** """
        return self._potential_func[self._name][1](x, *self._params)

    def __call__(self, x):
        return self.W(x)

    def check(self, samples=1001, span=10.0):
        """ sampled check of the structural assumptions on **W**

        returns `True` iff `W >= 0` on `[-R_0-span, R_0+span]`,
        `W(x) = W(-x)` there (when symmetric)
        and `x W'(x) > 0` for `R_0 < |x| <= R_0 + span`
        """
        reach = (0.0 if self._r0 == inf else self._r0) + span
        x = np.linspace(-reach, reach, samples)
        ok = bool(np.all(self.W(x) >= 0.0))
        if self.symmetric:
            ok = ok and bool(np.allclose(self.W(x), self.W(-x),
                                         rtol=1e-12, atol=1e-12))
        if self._r0 < inf:
            y = np.linspace(self._r0, self._r0 + span, samples)[1:]
            y = np.concatenate((y, -y))
            ok = ok and bool(np.all(y * self.dW(y) > 0.0))
        return ok

    def to_dict(self):
        d = {'name': self._name}
        if self._params:
            d['params'] = list(self._params)
        if self._r0 != self._potential_func[self._name][2]:
            d['r0'] = self._r0
        return d

    def __eq__(self, other):
        if not isinstance(other, PotentialSpec):
            return False
        return (self._name, self._params, self._r0) == \
            (other.name, other.params, other.r0)

    def __hash__(self):
        return hash((self._name, self._params, self._r0))

    def __repr__(self):
        return '%s(%s)' % (self.__class__.__name__, repr(self._name))


class KernelSpec:
    __slots__ = '_name', '_alpha'

    _kernel_func = {
        'inverse_sqrt': (inverse_sqrt, inverse_sqrt_derivative),
        'constant': (constant, constant_derivative),
    }
    _alias = {
        'inverse_sqrt': 'inverse_sqrt',
        'inversesqrt': 'inverse_sqrt',
        'k0': 'inverse_sqrt',
        'constant': 'constant',
        'const': 'constant',
    }

    def __init__(self, name='inverse_sqrt', alpha=1.0):
        """ attractive interaction kernel **K** of a registered family

        :param str name: family name
        :param float alpha: strength, `K = alpha K_0`

        """
        key = str(name).lower()
        if key not in self._alias:
            raise ValueError(
                "unknown kernel %s for %s" % (name, self.__class__.__name__))
        alpha = float(alpha)
        if not alpha > 0.0:
            raise ValueError(
                "kernel strength %s must be positive" % str(alpha))
        self._name = self._alias[key]
        self._alpha = alpha

    @property
    def name(self):
        return self._name

    @property
    def alpha(self):
        return self._alpha

    def K(self, r):
        """ kernel value for `r > 0` """
        return self._kernel_func[self._name][0](r, self._alpha)

    def dK(self, r):
        """ kernel derivative **K'** for `r > 0` """
        return self._kernel_func[self._name][1](r, self._alpha)

    def __call__(self, r):
        return self.K(r)

    def check(self, samples=1000):
        """ sampled check that **K** is nonnegative,
        nonincreasing on `(0, 10]` and decays at infinity """
        r = np.linspace(10.0 / samples, 10.0, samples)
        k = self.K(r)
        ok = bool(np.all(k >= 0.0)) and bool(np.all(self.dK(r) <= 0.0))
        ok = ok and bool(np.all(np.diff(k) <= 0.0))
        if self._name != 'constant':
            ok = ok and self.K(1e6) < 1e-2 * self.K(1.0)
        return ok

    def to_dict(self):
        return {'name': self._name, 'alpha': self._alpha}

    def __eq__(self, other):
        if not isinstance(other, KernelSpec):
            return False
        return (self._name, self._alpha) == (other.name, other.alpha)

    def __hash__(self):
        return hash((self._name, self._alpha))

    def __repr__(self):
        return '%s(%s, %s)' % (
            self.__class__.__name__, repr(self._name), repr(self._alpha))


# --- averaged potentials --------------------------------------------------

def averaged_potential_N(pot, n, x):
    """ discrete window average `(1/n) sum_{i<n} W(x + i/n)` """
    if n < 1:
        raise ValueError("number of agents %s must be positive" % str(n))
    x = np.asarray(x, dtype=float)
    offsets = np.arange(n) / n
    return _out(np.mean(pot.W(x[..., None] + offsets), axis=-1), x)


def averaged_potential_N_derivative(pot, n, x):
    """ derivative `(1/n) sum_{i<n} W'(x + i/n)`
    of :func:`averaged_potential_N` """
    if n < 1:
        raise ValueError("number of agents %s must be positive" % str(n))
    x = np.asarray(x, dtype=float)
    offsets = np.arange(n) / n
    return _out(np.mean(pot.dW(x[..., None] + offsets), axis=-1), x)


def averaged_potential_limit(pot, x):
    """ window average `int_x^{x+1} W(s) ds` by adaptive quadrature """
    x = np.asarray(x, dtype=float)
    values = np.empty(x.shape)
    flat = values.reshape(-1)
    for j, a in enumerate(x.reshape(-1)):
        flat[j] = quad(pot.W, a, a + 1.0,
                       epsabs=QUAD_ABS_TOL, epsrel=1e-13, limit=200)[0]
    return _out(values, x)


def averaged_potential_limit_derivative(pot, x):
    """ exact derivative `W(x+1) - W(x)` of :func:`averaged_potential_limit` """
    x = np.asarray(x, dtype=float)
    return _out(pot.W(x + 1.0) - pot.W(x), x)


class AveragedPotential:
    __slots__ = 'potential', 'n', '_lo', '_hi', '_step', '_spline'

    def __init__(self, potential, n=None, lo=-6.0, hi=6.0, step=1e-3):
        """ memoized window average of a potential

        :param PotentialSpec potential: the potential **W**
        :param int n: number of agents for the discrete average
            or `None` for the limit `int_x^{x+1} W`
        :param float lo: left end of the memoized range
        :param float hi: right end of the memoized range
        :param float step: node spacing

        Values are served from a cubic Hermite spline through exact node
        values and exact node derivatives, outside the range
        they are computed directly.
        The derivative is always computed exactly.

        """
        self.potential = potential
        self.n = n
        self._lo, self._hi, self._step = float(lo), float(hi), float(step)
        self._spline = None

    def _build(self):
        shift = int(round(1.0 / self._step))
        count = int(round((self._hi - self._lo) / self._step)) + 1
        nodes = self._lo + self._step * np.arange(count)
        if self.n is None:
            # primitive on [lo, hi + 1] from 8-point Gauss cells
            ext = self._lo + self._step * np.arange(count + shift)
            u, w = leggauss(8)
            mid, half = ext[:-1] + 0.5 * self._step, 0.5 * self._step
            cells = half * self.potential.W(
                mid[:, None] + half * u[None, :]) @ w
            primitive = np.concatenate(([0.0], np.cumsum(cells)))
            values = primitive[shift:shift + count] - primitive[:count]
        else:
            values = averaged_potential_N(self.potential, self.n, nodes)
        self._spline = CubicHermiteSpline(nodes, values, self.derivative(nodes))
        _logger.debug("memoized averaged potential on %d nodes" % count)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        flat = np.atleast_1d(x).ravel()
        inside = (self._lo <= flat) & (flat <= self._hi)
        values = np.empty(flat.shape)
        if not np.all(inside):
            values[~inside] = self._direct(flat[~inside])
        if np.any(inside):
            if self._spline is None:
                self._build()
            values[inside] = self._spline(flat[inside])
        return _out(values.reshape(x.shape), x)

    def _direct(self, x):
        if self.n is None:
            return averaged_potential_limit(self.potential, x)
        return averaged_potential_N(self.potential, self.n, x)

    def derivative(self, x):
        """ exact derivative of the window average """
        if self.n is None:
            return averaged_potential_limit_derivative(self.potential, x)
        return averaged_potential_N_derivative(self.potential, self.n, x)

    def __repr__(self):
        return '%s(%s, %s)' % (
            self.__class__.__name__, repr(self.potential), str(self.n))


# add additional __doc__ at runtime (during import)
try:
    s = '\n' \
        '        Registered families and alias key words: \n\n'
    for k, v in PotentialSpec._alias.items():
        s += '           * ' + (":code:`%s`" % k).ljust(30) + '' + \
            PotentialSpec._potential_func[v][0].__doc__ + '\n\n'
    PotentialSpec.__init__.__doc__ += s

    s = '\n' \
        '        Registered families and alias key words: \n\n'
    for k, v in KernelSpec._alias.items():
        s += '           * ' + (":code:`%s`" % k).ljust(20) + '' + \
            KernelSpec._kernel_func[v][0].__doc__ + '\n\n'
    KernelSpec.__init__.__doc__ += s

    del s
    del k
    del v
except TypeError:
    # __doc__ is None under -OO
    pass
