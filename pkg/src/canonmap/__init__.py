"""Canonical maps of quotients (F x F) / Z_p^2 of products of Fermat curves."""

from .action import SurfaceSpec, surface_report
from .arith import AutoMatrix, GroupVec
from .classify import analyze, classify_all
from .resolve import LocalPairs, resolve_local, resolve_net

__all__ = [
    "AutoMatrix",
    "GroupVec",
    "LocalPairs",
    "SurfaceSpec",
    "analyze",
    "classify_all",
    "resolve_local",
    "resolve_net",
    "surface_report",
]
