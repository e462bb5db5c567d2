"""Desk-scale toolkit for multilinear Fourier multipliers on periodic grids.

Modules:
    geometry   exact admissible-exponent polytope, hull membership, interpolation trees
    fourier    grids, symbols, product Sobolev norms, the regularity constant A, T_sigma
    hardy      dyadic cubes, maximal functions, atoms, H^p and weak norms, CZ decomposition
    probes     ratio probes, pointwise-domination checks, sharpness sweeps
    container  binary/text serialization of grid functions and symbols
"""

from .errors import ConfigError, DimensionMismatch, GuardError, MemoryGuardError, ToolkitError
from .fourier import (GridFunction, GridSpec, Partition, SymbolGrid, apply_multiplier, make_symbol,
                      product_sobolev_norm, regularity_constant_A)
from .geometry import (ReciprocalExponents, SmoothnessProfile, check_admissible, enumerate_vertices,
                       hull_membership, interpolation_split)
from .hardy import DyadicCube, SteinParams, cz_decompose, make_atom, stein_combine, weak_norm
from .probes import ProbeConfig, ratio_probe, sharpness_sweep, tomita_check

__version__ = "0.1.0"
