"""Exact integer linear algebra: Smith form, solving, presented groups and homology."""
from .homology import (
    ChainMap,
    GroupHom,
    HomologyGroup,
    NotAChainMapError,
    NotAComplexError,
    PresentedComplex,
    free_complex,
    homology_at,
    induced_map_on_homology,
    is_exact_at,
)
from .kernels import BACKEND
from .matrix import IntMatrix, block_diagonal, hstack, vstack
from .presentation import FinAbPresentation, Summand, invariant_factors, same_subgroup
from .smith import (
    AbGroupStructure,
    LinearSolution,
    LinearSolver,
    NoIntegerSolution,
    SmithDecomposition,
    cokernel_structure,
    column_span_basis,
    determinant,
    kernel_basis,
    lattice_basis,
    preimage_lattice,
    smith_normal_form,
    solve_linear,
    solve_or_raise,
)

__all__ = [
    "AbGroupStructure", "BACKEND", "ChainMap", "FinAbPresentation", "GroupHom", "HomologyGroup", "IntMatrix",
    "LinearSolution", "LinearSolver", "NoIntegerSolution", "NotAChainMapError", "NotAComplexError",
    "PresentedComplex", "SmithDecomposition", "Summand", "block_diagonal", "cokernel_structure",
    "column_span_basis", "determinant", "free_complex", "homology_at", "hstack", "induced_map_on_homology",
    "invariant_factors", "is_exact_at", "kernel_basis", "lattice_basis", "preimage_lattice", "same_subgroup",
    "smith_normal_form", "solve_linear", "solve_or_raise", "vstack",
]
