"""Exact verification engine for scalar-extension Hopf algebroids ``A # T``."""

from __future__ import annotations

__version__ = "0.1.0"
