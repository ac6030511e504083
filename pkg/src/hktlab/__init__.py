"""hktlab: exact chart-level verification of quaternionic Hermitian geometry.

Everything is computed in exact arithmetic over the rationals
(complexified); verdicts are symbolic identities wherever possible and
deterministic sampled checks otherwise.
"""

__version__ = "0.1.0"

from ._kernels import backend_name
from .forms import (
    BidegreeError,
    BigradedForm,
    Form,
    antiholomorphic_coframe,
    bidegree_decompose,
    bidegree_project,
    del_J,
    dolbeault_del,
    dolbeault_delbar,
    exterior_derivative,
    holomorphic_coframe,
    j_conjugate,
    pure_bidegree,
    wedge,
)
from .hkt import (
    HKTCandidate,
    NotQuaternionicHermitianError,
    averaging_comparison,
    candidate_from_metric,
    candidate_from_omega,
    canonical_section,
    cyclic_permute,
    fundamental_form,
    hkt_cyclic_invariance,
    hkt_from_potential,
    holomorphic_symplectic_check,
    is_hkt,
    is_j_positive,
    is_j_real,
    kahler_to_hkt,
    metric_from_omega,
    omega_from_metric,
)
from .models import (
    ModelEntry,
    catalog,
    conformal_model,
    entry_to_manifest,
    flat_model,
    kahler_model,
    potential_model,
    run_entry,
)
from .parsing import ParseError, parse_polynomial, parse_scalar
from .quaternionic import (
    HypercomplexStructure,
    Metric,
    is_quaternionic_hermitian,
    positive_definite_report,
    quaternion_group_average,
    standard_structure,
    structure_from_matrices,
    verify_structure,
)
from .report import CheckReport
from .sampling import SamplingPlan
from .scalars import (
    ComplexRational,
    PoleError,
    Polynomial,
    RationalFunction,
)

__all__ = [
    "__version__",
    "backend_name",
    # scalars
    "ComplexRational",
    "PoleError",
    "Polynomial",
    "RationalFunction",
    "ParseError",
    "parse_polynomial",
    "parse_scalar",
    # structures and metrics
    "HypercomplexStructure",
    "Metric",
    "standard_structure",
    "structure_from_matrices",
    "verify_structure",
    "quaternion_group_average",
    "is_quaternionic_hermitian",
    "positive_definite_report",
    # forms
    "Form",
    "BigradedForm",
    "BidegreeError",
    "wedge",
    "exterior_derivative",
    "bidegree_decompose",
    "bidegree_project",
    "pure_bidegree",
    "j_conjugate",
    "dolbeault_del",
    "dolbeault_delbar",
    "del_J",
    "holomorphic_coframe",
    "antiholomorphic_coframe",
    # core checks
    "HKTCandidate",
    "NotQuaternionicHermitianError",
    "omega_from_metric",
    "metric_from_omega",
    "fundamental_form",
    "candidate_from_metric",
    "candidate_from_omega",
    "is_j_real",
    "is_j_positive",
    "is_hkt",
    "hkt_from_potential",
    "kahler_to_hkt",
    "cyclic_permute",
    "hkt_cyclic_invariance",
    "canonical_section",
    "holomorphic_symplectic_check",
    "averaging_comparison",
    "CheckReport",
    "SamplingPlan",
    # catalog
    "ModelEntry",
    "catalog",
    "flat_model",
    "conformal_model",
    "potential_model",
    "kahler_model",
    "run_entry",
    "entry_to_manifest",
]
