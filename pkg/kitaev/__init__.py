# -*- coding: utf-8 -*-

"""
    kitaev
    ~~~~~~

    Circuit complexity of Kitaev chain and p+ip ground states, quenches
    and optimal circuits.
"""

__version__ = "0.3.0"
