"""Catalog of named example charts with frozen expected verdicts.

Each entry exercises the full check battery and doubles as documentation
of the manifest format via ``entry_to_manifest``.  Expected verdicts for
entries that are not direct constructions (the conformal factors, the
quartic perturbation) were recorded from the tool's own exact
computation and are kept as regressions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from . import suite
from .forms import Form
from .parsing import parse_scalar
from .quaternionic import HypercomplexStructure, Metric, standard_structure
from .sampling import SamplingPlan
from .scalars import RationalFunction


@dataclass(frozen=True)
class ModelEntry:
    name: str
    n: int
    structure: HypercomplexStructure
    data_kind: str
    payload: object
    source: object  # expression-string representation used for manifest export
    checks: Tuple[str, ...]
    expected: Dict[str, str]
    notes: str = ""


def run_entry(entry: ModelEntry, plan: Optional[SamplingPlan] = None):
    """Execute the entry's checks; deterministic for a fixed plan."""
    return suite.run_checks(
        entry.structure, entry.data_kind, entry.payload, list(entry.checks), plan
    )


def verdict_map(reports) -> Dict[str, str]:
    return {report.check: report.verdict for report in reports}


def _computed_expected(entry: ModelEntry) -> Dict[str, str]:
    return verdict_map(run_entry(entry, SamplingPlan()))


def _metric_entry(name, n, diag_expr, checks, expected, notes=""):
    num_vars = 4 * n
    factor = parse_scalar(diag_expr, num_vars)
    metric = Metric.euclidean(num_vars).scale(factor)
    source = [
        [diag_expr if a == b else "0" for b in range(num_vars)] for a in range(num_vars)
    ]
    entry = ModelEntry(
        name=name,
        n=n,
        structure=standard_structure(n),
        data_kind=suite.METRIC,
        payload=metric,
        source=source,
        checks=tuple(checks),
        expected=expected,
        notes=notes,
    )
    if expected is None:
        entry = replace(entry, expected=_computed_expected(entry))
    return entry


def flat_model(n: int, expected: Optional[Dict[str, str]] = None) -> ModelEntry:
    """Standard structure with the Euclidean metric; everything passes."""
    checks = ["structure", "quaternionic_hermitian", "positive_definite"] + [
        c for c in suite.default_checks(suite.METRIC) if c not in ("structure", "quaternionic_hermitian")
    ]
    return _metric_entry(
        f"flat_n{n}",
        n,
        "1",
        checks,
        expected,
        notes="Euclidean metric on the standard structure; the closed non-degenerate case.",
    )


def conformal_model(
    factor_expr: str,
    n: int,
    expected: Optional[Dict[str, str]] = None,
    name: Optional[str] = None,
    extra_checks: Tuple[str, ...] = (),
    notes: str = "",
) -> ModelEntry:
    """Conformally flat metric f * g_E; del-closure fails for non-constant f, n >= 2."""
    checks = list(suite.default_checks(suite.METRIC))
    for c in extra_checks:
        if c not in checks:
            checks.insert(2, c)
    return _metric_entry(
        name or f"conformal_n{n}",
        n,
        factor_expr,
        checks,
        expected,
        notes=notes or f"Conformal factor {factor_expr} on the Euclidean metric.",
    )


def potential_model(
    phi_expr: str,
    n: int,
    expected: Optional[Dict[str, str]] = None,
    name: Optional[str] = None,
    notes: str = "",
) -> ModelEntry:
    """Candidate built from a real potential; del-closure holds by construction."""
    num_vars = 4 * n
    phi = parse_scalar(phi_expr, num_vars)
    if not phi.is_real():
        raise ValueError("potential must be real-valued")
    entry = ModelEntry(
        name=name or f"potential_n{n}",
        n=n,
        structure=standard_structure(n),
        data_kind=suite.POTENTIAL,
        payload=phi,
        source=phi_expr,
        checks=tuple(suite.default_checks(suite.POTENTIAL)),
        expected=expected,
        notes=notes,
    )
    if expected is None:
        entry = replace(entry, expected=_computed_expected(entry))
    return entry


def kahler_model(
    n: int, expected: Optional[Dict[str, str]] = None, name: Optional[str] = None
) -> ModelEntry:
    """The Euclidean form of the second structure fed through the (2,0)-part pipeline."""
    from .hkt import fundamental_form

    H = standard_structure(n)
    g = Metric.euclidean(4 * n)
    omega1 = fundamental_form(g, H, "J")
    source = [
        {
            "indices": list(indices),
            "re": str(coeff.real_part()),
            "im": str(coeff.imag_part()),
        }
        for indices, coeff in sorted(omega1.components.items())
    ]
    entry = ModelEntry(
        name=name or f"kahler_flat_n{n}",
        n=n,
        structure=H,
        data_kind=suite.KAHLER,
        payload=omega1,
        source=source,
        checks=tuple(suite.default_checks(suite.KAHLER)),
        expected=expected,
        notes="Flat Kahler form on (M, J); the (2,0)-part pipeline end to end.",
    )
    if expected is None:
        entry = replace(entry, expected=_computed_expected(entry))
    return entry


def _sum_of_squares(num_vars):
    return " + ".join(f"x{a}^2" for a in range(num_vars))


def catalog() -> List[ModelEntry]:
    """The built-in regression corpus; expected maps are frozen literals."""
    all_pass_metric = {
        "structure": "pass",
        "quaternionic_hermitian": "pass",
        "positive_definite": "pass",
        "round_trip": "pass",
        "j_real": "pass",
        "j_positive": "pass",
        "hkt": "pass",
        "hkt_cyclic": "pass",
        "canonical_section": "pass",
        "holomorphic_symplectic": "pass",
    }
    return [
        flat_model(1, expected=dict(all_pass_metric)),
        flat_model(2, expected=dict(all_pass_metric)),
        flat_model(3, expected=dict(all_pass_metric)),
        potential_model(
            _sum_of_squares(8),
            2,
            name="potential_flat_n2",
            expected={
                "structure": "pass",
                "potential_closure": "pass",
                "round_trip": "pass",
                "j_real": "pass",
                "j_positive": "pass",
                "hkt": "pass",
                "hkt_cyclic": "pass",
                "canonical_section": "pass",
                "holomorphic_symplectic": "pass",
            },
            notes="Flat potential; the candidate is twice the flat form (calibration constant).",
        ),
        potential_model(
            _sum_of_squares(8) + " + x0^4/10",
            2,
            name="potential_quartic_n2",
            expected={
                "structure": "pass",
                "potential_closure": "pass",
                "round_trip": "pass",
                "j_real": "pass",
                "j_positive": "pass",
                "hkt": "pass",
                "hkt_cyclic": "pass",
                "canonical_section": "pass",
                "holomorphic_symplectic": "fail",
            },
            notes="Quartic perturbation: del-closed but not d-closed, separating the two conditions.",
        ),
        potential_model(
            "-(" + _sum_of_squares(8) + ")",
            2,
            name="potential_negative_n2",
            expected={
                "structure": "pass",
                "potential_closure": "pass",
                "round_trip": "pass",
                "j_real": "pass",
                "j_positive": "fail",
                "hkt": "pass",
                "hkt_cyclic": "pass",
                "canonical_section": "pass",
                "holomorphic_symplectic": "pass",
            },
            notes="Negated flat potential: closure holds, strict positivity fails.",
        ),
        conformal_model(
            "1 + x0^2",
            2,
            name="conformal_x0_n2",
            expected={
                "structure": "pass",
                "quaternionic_hermitian": "pass",
                "round_trip": "pass",
                "j_real": "pass",
                "j_positive": "pass",
                "hkt": "fail",
                "hkt_cyclic": "pass",
                "canonical_section": "pass",
                "holomorphic_symplectic": "fail",
            },
            notes="Non-constant conformal factor: quaternionic Hermitian but not del-closed.",
        ),
        conformal_model(
            "1 + x0^2",
            1,
            name="conformal_n1",
            expected={
                "structure": "pass",
                "quaternionic_hermitian": "pass",
                "round_trip": "pass",
                "j_real": "pass",
                "j_positive": "pass",
                "hkt": "pass",
                "hkt_cyclic": "pass",
                "canonical_section": "pass",
                "holomorphic_symplectic": "fail",
            },
            notes=(
                "Quaternionic dimension 1: del-closure is vacuous, yet d-closure fails; "
                "the candidate is not of flat type."
            ),
        ),
        conformal_model(
            "2",
            2,
            name="conformal_const_n2",
            expected={
                "structure": "pass",
                "quaternionic_hermitian": "pass",
                "round_trip": "pass",
                "j_real": "pass",
                "j_positive": "pass",
                "hkt": "pass",
                "hkt_cyclic": "pass",
                "canonical_section": "pass",
                "holomorphic_symplectic": "pass",
            },
            notes="Constant conformal factor: still flat type.",
        ),
        conformal_model(
            "1/(" + _sum_of_squares(8) + ")",
            2,
            name="conformal_hopf_n2",
            extra_checks=("positive_definite",),
            expected={
                "structure": "pass",
                "quaternionic_hermitian": "pass",
                "positive_definite": "pass",
                "round_trip": "pass",
                "j_real": "pass",
                "j_positive": "pass",
                "hkt": "fail",
                "hkt_cyclic": "pass",
                "canonical_section": "pass",
                "holomorphic_symplectic": "fail",
            },
            notes=(
                "Single chart on the punctured quaternionic plane with a 1/|q|^2 factor; "
                "the origin is a pole and is skipped by sampling.  Verdicts recorded from "
                "the tool's own exact computation."
            ),
        ),
        kahler_model(
            2,
            expected={
                "structure": "pass",
                "kahler_input_positive": "pass",
                "j_real": "pass",
                "j_positive": "pass",
                "del_part_identity": "pass",
                "hkt": "pass",
                "hkt_cyclic": "pass",
                "canonical_section": "pass",
                "holomorphic_symplectic": "pass",
            },
        ),
    ]


def entry_to_manifest(entry: ModelEntry, seed: int = 0, count: int = 16) -> dict:
    """Export an entry as a manifest document (the format documentation)."""
    return {
        "dim_h": entry.n,
        "structure": "standard",
        entry.data_kind: entry.source,
        "checks": list(entry.checks),
        "sampling": {"seed": seed, "count": count},
    }
