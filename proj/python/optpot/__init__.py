"""Optimal potentials for -Delta u + m u = f on the unit disc."""

from ._optpot import *  # noqa: F401,F403
from ._optpot import __doc__  # noqa: F401
