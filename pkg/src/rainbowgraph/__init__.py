"""Randomly perturbed, randomly colored graphs."""
from ._kernels import BACKEND
from .graph import ColoredGraph, Graph, InputError

__version__ = "0.1.0"
__all__ = ["BACKEND", "ColoredGraph", "Graph", "InputError"]
