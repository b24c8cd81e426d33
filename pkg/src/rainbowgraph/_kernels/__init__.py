"""Kernel backend selection.

The compiled Cython module is used when importable; otherwise the numpy
implementations are used. ``RAINBOWGRAPH_PURE_PYTHON=1`` forces the fallback.
"""
import os

from . import _pykernels

try:
    if os.environ.get("RAINBOWGRAPH_PURE_PYTHON"):
        raise ImportError("pure-python backend forced")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

rainbow_states = _impl.rainbow_states
rainbow_reach = _impl.rainbow_reach
bfs_distances = _impl.bfs_distances
component_labels = _impl.component_labels
neighborhood_sizes = _impl.neighborhood_sizes

__all__ = [
    "BACKEND",
    "rainbow_states",
    "rainbow_reach",
    "bfs_distances",
    "component_labels",
    "neighborhood_sizes",
]
