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


__doc__ = 'Python library for periodic minimizers of constrained interacting agent energies and their mean-field brake orbits.'
__version__ = '0.1'
__dev_status__ = '3 - Alpha'
__date__ = 'Saturday, 17 October 2026'
__author__ = 'sonntagsgesicht'
__email__ = 'sonntagsgesicht@icloud.com'
__url__ = 'https://github.com/sonntagsgesicht/' + __name__
__license__ = 'Apache License 2.0'
__dependencies__ = ('numpy', 'scipy', 'numba', 'matplotlib')
__dependency_links__ = ()
__data__ = ('data/*.json',)
__scripts__ = ()
__entry_points__ = {'console_scripts': ['brakeorbit=brakeorbit.cli:main']}
__theme__ = 'sphinx_rtd_theme'

import logging
logging.getLogger(__name__).addHandler(logging.NullHandler())


from .timegrid import TimeGrid, TrajectoryGrid, SymmetryMap, \
    symmetry_index_maps, validate
from .potentials import PotentialSpec, KernelSpec, AveragedPotential, \
    averaged_potential_N, averaged_potential_limit
from .config import ConfigError, OptimizerSettings, ProblemConfig, \
    shipped_config
from .energy import EnergyBreakdown, energy, gradient, interaction_energy, \
    kN_constant, saturated_energy
from .constraints import project_feasible, project_gaps, symmetrize, \
    barycenter_report, min_mJ_bound_check
from .optimizer import SolveResult, initial_guess, minimize, multi_start, \
    resample, truncate, verify_support, verify_saturation, \
    verify_reduced_ode, optimality_residuals
from .meanfield import BrakeOrbit, solve_brake_orbit, integrate_orbit, \
    indicator_interaction, meanfield_energy, block_from_orbit
from .measures import EmpiricalMeasure, IntervalIndicator, DensityGrid, \
    wasserstein1, wasserstein2, quantile_particles, mollify, \
    density_bound_check, gamma_convergence_report
