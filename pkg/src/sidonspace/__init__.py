"""Subspace calculus over finite field towers: Sidon-type product
properties, linearized polynomials, named constructions, orbit codes,
and additive B_r sets."""

from .brset import BrSet, discrete_log, extract_brset, is_br_set
from .constructions import (
    ConstructionRecord,
    binomial_family,
    is_qm1_power,
    maxspan_from_brset,
    maxspan_from_irreducibles,
    monomial,
    monomial_decomposition_check,
    polynomial_independence_check,
    trace_space,
)
from .errors import BudgetError, ConstructionError, NoSuchElementError, SupplyError
from .experiments import (
    EXPERIMENTS,
    ExperimentReport,
    ExperimentSpec,
    register_experiment,
    run_experiment,
)
from .field import (
    DiscreteLogTable,
    FieldCtx,
    FieldElement,
    field_from_spec,
    find_generator,
    make_field,
    minimal_polynomial,
    norm,
    prime_ctx,
    random_irreducibles,
    trace,
)
from .gfpoly import Poly
from .orbit import (
    OrbitReport,
    orbit_report,
    semilinear_equivalent,
    subspace_distance,
    verify_glk2_certificate,
)
from .qpoly import LinearizedPoly, interpolate, is_scattered, v_f_gamma
from .sidon import (
    BoundAudit,
    BoundCheck,
    SidonReport,
    audit_bounds,
    is_max_span,
    is_r_sidon,
    is_sidon,
    is_sidon_intersection,
    max_span_bound,
    r_sidon_profile,
)
from .subspace import (
    SpanChain,
    StabilizerInfo,
    Subspace,
    all_projective_points,
    frob_image,
    full_space,
    intersect,
    intersection_dims_with_scaled,
    orbit_size,
    power,
    product,
    random_subspace,
    scale,
    span,
    span_chain,
    stabilizer,
    subfield_space,
    sum_spaces,
)

__version__ = "0.1.0"

__all__ = [
    "BoundAudit",
    "BoundCheck",
    "BrSet",
    "BudgetError",
    "ConstructionError",
    "ConstructionRecord",
    "DiscreteLogTable",
    "EXPERIMENTS",
    "ExperimentReport",
    "ExperimentSpec",
    "FieldCtx",
    "FieldElement",
    "LinearizedPoly",
    "NoSuchElementError",
    "OrbitReport",
    "Poly",
    "SidonReport",
    "SpanChain",
    "StabilizerInfo",
    "Subspace",
    "SupplyError",
    "all_projective_points",
    "audit_bounds",
    "binomial_family",
    "discrete_log",
    "extract_brset",
    "field_from_spec",
    "find_generator",
    "frob_image",
    "full_space",
    "intersect",
    "intersection_dims_with_scaled",
    "interpolate",
    "is_br_set",
    "is_max_span",
    "is_qm1_power",
    "is_r_sidon",
    "is_scattered",
    "is_sidon",
    "is_sidon_intersection",
    "make_field",
    "max_span_bound",
    "maxspan_from_brset",
    "maxspan_from_irreducibles",
    "minimal_polynomial",
    "monomial",
    "monomial_decomposition_check",
    "norm",
    "orbit_report",
    "orbit_size",
    "polynomial_independence_check",
    "power",
    "prime_ctx",
    "product",
    "r_sidon_profile",
    "random_irreducibles",
    "random_subspace",
    "register_experiment",
    "run_experiment",
    "scale",
    "semilinear_equivalent",
    "span",
    "span_chain",
    "stabilizer",
    "subfield_space",
    "subspace_distance",
    "sum_spaces",
    "trace",
    "trace_space",
    "v_f_gamma",
    "verify_glk2_certificate",
]
