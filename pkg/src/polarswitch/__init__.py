"""Collinearity graphs of finite classical polar spaces, subgeometry
switching, and triangle-spectrum non-isomorphism certificates."""

__version__ = "0.1.0"

from . import errors
from .gf import Field, FieldElement, field_create, field_from_order
from .linalg import ProjectivePoint, Subspace, gaussian_binomial
from .graph import (
    Graph,
    SrgParams,
    TriangleSpectrum,
    graph6_read,
    graph6_write,
    graphs_equal,
)
from .polar import PolarKind, PolarSpace, polar_create
from .switching import (
    SplitMix64,
    SwitchFrame,
    SwitchSpec,
    build_switched_graph,
    gm_switch,
    make_frame,
    sigma_complement,
    sigma_identity,
    sigma_random,
    sigma_single_swap,
    spec_from_text,
    spec_to_text,
)
from .noniso import (
    NonIsoCertificate,
    SwapRecipe,
    build_single_swap_graph,
    certify_noniso,
    find_swap_recipe,
    render_certificate,
)

__all__ = [
    "errors",
    "Field",
    "FieldElement",
    "field_create",
    "field_from_order",
    "ProjectivePoint",
    "Subspace",
    "gaussian_binomial",
    "Graph",
    "SrgParams",
    "TriangleSpectrum",
    "graph6_read",
    "graph6_write",
    "graphs_equal",
    "PolarKind",
    "PolarSpace",
    "polar_create",
    "SplitMix64",
    "SwitchFrame",
    "SwitchSpec",
    "build_switched_graph",
    "gm_switch",
    "make_frame",
    "sigma_complement",
    "sigma_identity",
    "sigma_random",
    "sigma_single_swap",
    "spec_from_text",
    "spec_to_text",
    "NonIsoCertificate",
    "SwapRecipe",
    "build_single_swap_graph",
    "certify_noniso",
    "find_swap_recipe",
    "render_certificate",
    "__version__",
]
