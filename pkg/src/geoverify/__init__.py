"""Executable verification of classic geometry puzzles.

Exact modules (finite planes, free-group words, rational flux networks,
enumerated probabilities) compute with arbitrary-precision rationals;
numerical modules (confocal conics, polygon dynamics, Lie brackets, root
tracking) report residuals against stated tolerances.  The ``geoverify``
command line runs one self-checking verification per puzzle.
"""

__version__ = "0.1.0"
