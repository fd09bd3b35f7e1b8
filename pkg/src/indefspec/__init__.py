"""Eigenvalue enclosures and computation for the indefinite Sturm-Liouville
operator sgn(x)(-d^2/dx^2 + V) on the real line."""

from .contour import ContourSpec
from .eigensolver import EigenvalueResult, Method, find_all_eigenvalues, find_eigenvalues
from .enclosures import BoundId, EnclosureSpec, Margin, margin
from .potentials import (
    Delta,
    PiecewiseConstant,
    SquareWellDesign,
    WignerVonNeumann,
    load_potential,
    p_norm,
    square_well,
    wigner_von_neumann,
)
from .spectral_core import ComplexEnergy, DomainError, sqrt_upper

__all__ = [
    "BoundId",
    "ComplexEnergy",
    "ContourSpec",
    "Delta",
    "DomainError",
    "EigenvalueResult",
    "EnclosureSpec",
    "Margin",
    "Method",
    "PiecewiseConstant",
    "SquareWellDesign",
    "WignerVonNeumann",
    "find_all_eigenvalues",
    "find_eigenvalues",
    "load_potential",
    "margin",
    "p_norm",
    "square_well",
    "sqrt_upper",
    "wigner_von_neumann",
]
