"""Exact-arithmetic checks on generalized Burniat type surfaces."""

from __future__ import annotations

__version__ = "0.1.0"
