"""Singular minimal surfaces in Euclidean and Lorentz-Minkowski space."""

from ._core import (
    GeometryError,
    RuledSurface,
    Surface,
    catenary_heights,
    causal_character,
    cross,
    descend,
    flat_heights,
    height_energy,
    height_residual,
    helicoid,
    hyperbolic_angle,
    inner,
    integrate_catenary,
    interior_gradient,
    lightlike_reference,
    noisy_heights,
    random_ruled_surface,
    run_cli,
    solve_catenary_bvp,
    surface,
    sweep,
    triple,
)

__all__ = [
    "GeometryError",
    "RuledSurface",
    "Surface",
    "catenary_heights",
    "causal_character",
    "cross",
    "descend",
    "flat_heights",
    "height_energy",
    "height_residual",
    "helicoid",
    "hyperbolic_angle",
    "inner",
    "integrate_catenary",
    "interior_gradient",
    "lightlike_reference",
    "noisy_heights",
    "random_ruled_surface",
    "run_cli",
    "solve_catenary_bvp",
    "surface",
    "sweep",
    "triple",
]
