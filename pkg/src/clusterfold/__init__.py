"""Exact computations for the preprojective algebra of type A3, its cluster characters, and the folding to type C2."""
from __future__ import annotations

__version__ = "0.1.0"
