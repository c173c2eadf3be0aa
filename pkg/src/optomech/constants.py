"""Physical constants (CODATA 2018) used throughout the package.

All frequencies and rates elsewhere in the package are angular (rad/s);
conversion from ordinary frequencies in Hz happens once, at the config/CLI
boundary, via ``TWO_PI``.
"""

import math

HBAR = 1.054571817e-34   # reduced Planck constant, J s
K_B = 1.380649e-23       # Boltzmann constant, J/K
C_LIGHT = 299792458.0    # speed of light, m/s

TWO_PI = 2.0 * math.pi
