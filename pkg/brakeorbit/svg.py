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



import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

import numpy as np  # noqa: E402

FIGSIZE = (12, 6)
COLORS = ('#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
          '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf')


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, format='svg')
    plt.close(fig)
    return path


def trajectories_svg(traj, path, title=''):
    """ one line per agent, time horizontal and position vertical

    :param traj: |TrajectoryGrid| to draw
    :param str path: target file
    :param str title: axes title
    :return: **path**

    Each agent line carries the svg id `agent<i>` with `i` counted from 1.

    """
    t, x = traj.times, traj.positions
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for i in range(traj.n_agents):
        line, = ax.plot(t, x[:, i], color=COLORS[i % len(COLORS)], lw=1.5)
        line.set_gid('agent%d' % (i + 1))
    ax.set_xlabel('t')
    ax.set_ylabel('x')
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def orbit_svg(orbit, path, title=''):
    """ band between `a(t)` and `a(t) + 1` with both boundaries """
    t, a = orbit.times, np.asarray(orbit.a)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.fill_between(t, a, a + 1.0, color='#9ecae1', alpha=0.6, gid='support')
    ax.plot(t, a, color=COLORS[0], lw=1.5, gid='lower')
    ax.plot(t, a + 1.0, color=COLORS[0], lw=1.5, gid='upper')
    ax.set_xlabel('t')
    ax.set_ylabel('x')
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return _save(fig, path)


def loglog_svg(series, path, title=''):
    """ log-log plot of `{name: (xs, ys)}` with positive data """
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for j, (name, (x, y)) in enumerate(series.items()):
        y = np.maximum(np.asarray(y, dtype=float), 1e-300)
        ax.loglog(x, y, 'o-', color=COLORS[j % len(COLORS)], label=name,
                  gid=name)
    ax.set_xlabel('N')
    ax.set_title(title)
    ax.grid(True, which='both', alpha=0.3)
    ax.legend()
    return _save(fig, path)
