"""Fuzzy line bundles over the fuzzy sphere: projectors, Chern character, charges."""
from .calculus import (
    FiberForm,
    FuzzyContext,
    derive,
    exterior_d,
    fuzzy_context,
    invariant_two_form,
    nc_integral,
    theta,
    theta_basis,
    two_form_coefficient,
    volume_form,
    wedge,
)
from .chern import (
    ChargeReport,
    Lemma3Report,
    LambdaMuRecord,
    charge_q,
    charge_report,
    chern_component,
    chern_number,
    connection_consistency,
    curvature_components,
    curvature_two_form,
    d_projector,
    extract_f,
    f_closed_exact,
    f_closed_form,
    k_limit,
    lambda_mu_check,
    lemma3_check,
)
from .errors import (
    BranchDomainError,
    BranchMismatch,
    DimensionMismatch,
    DomainError,
    FuzzyBundleError,
    ModuleMembershipError,
    NonRealResult,
    NumericalBreakdown,
    ZeroBasis,
)
from .projectors import (
    EquivariantProjector,
    Method,
    TotalGenerators,
    projector_haar_mc,
    projector_orbit,
    projector_spectral,
    total_generators,
)
from .su2 import (
    Branch,
    SpinRep,
    WeightVector,
    binomial_identity,
    highest_weight,
    make_spin_rep,
    schwinger_rep,
    total_lowering,
    total_raising,
    total_x3,
)
from .sweep import ChargeRecord, SweepConfig, records_to_csv, records_to_json, run_sweep

__version__ = "0.1.0"
