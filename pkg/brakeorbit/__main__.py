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


import sys

from .cli import main

sys.exit(main())
