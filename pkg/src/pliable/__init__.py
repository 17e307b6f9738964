"""Exact computations for birational links between Calabi-Yau pairs."""
from __future__ import annotations

__version__ = "0.1.0"
