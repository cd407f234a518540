"""Harmonic analysis on finite abelian groups, spectral-set combinatorics
with verified inequalities, and certified finite approximations of the
classical Fourier transforms (circle, reals, integers, p-adic towers).
"""

from .groups import (
    Group,
    Subset,
    annihilator,
    as_subset,
    difference_set,
    element_array,
    pairing,
    subgroup_generated,
    subset_from_indices,
    subset_from_mask,
    sumset,
)
from .harmonic import Signal, Spectrum, convolve, dft, idft, inner, modulate, norm, shift
from .bohr import (
    bohr,
    check_bohr_in_spec,
    check_energy_lower_bound,
    check_smoothness_decay,
    check_spec_bohr_in_diffset,
    check_spec_size_bounds,
    spec_set,
)
from .lca import (
    Arc,
    Box,
    Circle,
    FiniteSeq,
    Gaussian,
    IndicatorInterval,
    IntegerLine,
    Interval,
    LocallyConstant,
    ProductModel,
    QuotientTower,
    RealLine,
    SincKernel,
    SubgroupLevel,
    TrigPoly,
    eval_ref,
    reference_transform,
)
from .approx import (
    AdjointPair,
    ApproxMap,
    ParameterError,
    build_adjoint_pair_circle,
    build_adjoint_pair_reals,
    build_adjoint_pair_tower,
    build_circle_approx,
    build_integer_approx,
    build_real_approx,
    build_tower_approx,
    make_adjoint_pairs,
    product_approx,
    verify_strong_adjointness,
)
from .lifting import (
    MeasureModel,
    TransformFrame,
    check_function_transform_bound,
    check_measure_transform_bound,
    is_approximation,
    is_weak_lifting,
    modified_ft,
    sample_lifting,
    transform_experiment,
)
from .stability import (
    FitResult,
    PartialMap,
    bohr_chain_check,
    character_map,
    closeness_to_character,
    fit_character,
    is_eps_close,
    is_eps_homomorphic,
    perturbed_character,
)
from .reports import ApproxCertificate, BoundReport, LiftingReport, TransformErrorReport

__version__ = "0.1.0"

__all__ = [
    "Group", "Subset", "annihilator", "as_subset", "difference_set", "element_array",
    "pairing", "subgroup_generated", "subset_from_indices", "subset_from_mask", "sumset",
    "Signal", "Spectrum", "convolve", "dft", "idft", "inner", "modulate", "norm", "shift",
    "bohr", "spec_set", "check_energy_lower_bound", "check_bohr_in_spec",
    "check_spec_bohr_in_diffset", "check_spec_size_bounds", "check_smoothness_decay",
    "Circle", "RealLine", "IntegerLine", "QuotientTower", "ProductModel",
    "Arc", "Interval", "Box", "SubgroupLevel",
    "Gaussian", "TrigPoly", "IndicatorInterval", "SincKernel", "FiniteSeq", "LocallyConstant",
    "eval_ref", "reference_transform",
    "ApproxMap", "AdjointPair", "ParameterError",
    "build_circle_approx", "build_integer_approx", "build_real_approx", "build_tower_approx",
    "product_approx", "make_adjoint_pairs",
    "build_adjoint_pair_circle", "build_adjoint_pair_reals", "build_adjoint_pair_tower",
    "verify_strong_adjointness",
    "MeasureModel", "TransformFrame", "sample_lifting", "modified_ft",
    "is_weak_lifting", "is_approximation", "transform_experiment",
    "check_measure_transform_bound", "check_function_transform_bound",
    "PartialMap", "FitResult", "character_map", "perturbed_character",
    "is_eps_close", "is_eps_homomorphic", "closeness_to_character",
    "fit_character", "bohr_chain_check",
    "BoundReport", "ApproxCertificate", "LiftingReport", "TransformErrorReport",
    "__version__",
]
