"""Fracture network generation, graph metrics, advection and lattice-Boltzmann permeability."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
