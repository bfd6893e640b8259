"""Exact deciders for homological smoothness of dg algebras over graded polynomial bases."""

from __future__ import annotations

__version__ = "0.1.0"
