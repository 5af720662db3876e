"""Exact computations with left-invariant connections on sl(n, R) and sl(n, H).

The main entry points are :func:`build_algebra`, :func:`canonical_connection`,
the parabolic builders in :mod:`projflat.parabolic` and :func:`decide`.
"""

from __future__ import annotations

from .connection import (Connection, canonical_connection, curvature, induced_connection, is_autoparallel,
                         is_flat, is_projectively_flat, projective_change, ricci_and_p, weyl)
from .decider import DecideOptions, FlatnessVerdict, build_condition_system, decide, solve, verify_witness
from .lie import LieAlgebraModel, Subalgebra, build_algebra
from .parabolic import (SimpleRootSubset, dynkin_render, langlands, parabolic, proper_subsets, solvable_part,
                        thm1_predicate)
from .poly import MultiPoly, poly_det
from .quaternion import Quaternion
from .rep import Representation, build_rep_symmetric, build_rep_traceless, invariant_poly

__version__ = "0.1.0"

__all__ = [
    "Connection",
    "DecideOptions",
    "FlatnessVerdict",
    "LieAlgebraModel",
    "MultiPoly",
    "Quaternion",
    "Representation",
    "SimpleRootSubset",
    "Subalgebra",
    "annotations",
    "build_algebra",
    "build_condition_system",
    "build_rep_symmetric",
    "build_rep_traceless",
    "canonical_connection",
    "curvature",
    "decide",
    "dynkin_render",
    "induced_connection",
    "invariant_poly",
    "is_autoparallel",
    "is_flat",
    "is_projectively_flat",
    "langlands",
    "parabolic",
    "poly_det",
    "projective_change",
    "proper_subsets",
    "ricci_and_p",
    "solvable_part",
    "solve",
    "thm1_predicate",
    "verify_witness",
    "weyl",
]
