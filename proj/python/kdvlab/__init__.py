"""Explicit and Crank-Nicolson solvers for the KdV equation u_t - 1.5 u u_x + u_xxx = 0."""

from ._core import *  # noqa: F401,F403
from ._core import KdvError, __doc__  # noqa: F401

__version__ = "0.1.0"
