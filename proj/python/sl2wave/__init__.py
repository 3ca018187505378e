"""Geometric one-dimensional wave propagation.

Envelope dynamics of Bragg-modulated media as boost/rotation flows on a
two-by-two matrix group: quadrature envelopes, Bloch vectors on the cone
and hyperboloid, gauge transformations of the modulation frame, and the
phase holonomy of cyclic evolutions, all cross-checked against direct
integration of the carrier-resolved wave equation.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
