from ._kernel import BACKEND
from .core import (
    LinearMap,
    Matrix,
    Subspace,
    add_scaled,
    annihilator,
    intersect,
    intersect_all,
    inverse,
    kernel_basis,
    kernel_vectors,
    rank_vectors,
    rref,
    rref_vectors,
    scale,
    subspace_sum,
)

__all__ = [
    "BACKEND", "LinearMap", "Matrix", "Subspace", "add_scaled", "annihilator",
    "intersect", "intersect_all", "inverse", "kernel_basis", "kernel_vectors", "rank_vectors",
    "rref", "rref_vectors", "scale", "subspace_sum",
]
