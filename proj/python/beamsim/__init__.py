# SPDX-License-Identifier: Apache-2.0
"""Wideband beamspace mmWave MIMO simulation: channel generation, energy-max
beam selection, SIC beamspace precoding and link metrics."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401
