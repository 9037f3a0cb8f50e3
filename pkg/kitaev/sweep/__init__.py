# -*- coding: utf-8 -*-

"""
    kitaev.sweep
    ~~~~~~~~~~~~

    Sweep range and job file parser using ply
"""

from .job import Job, SweepRange
from .parser import load, parse, parse_range

__all__ = ["Job", "SweepRange", "load", "parse", "parse_range"]
