"""Named check registry and execution over a single chart context.

The CLI manifest runner and the built-in model catalog both execute
checks through this module, so verdicts are identical regardless of the
entry point.  Checks run in the requested order; a check whose inputs
cannot be constructed (e.g. the metric is not quaternionic Hermitian, so
no candidate form exists) reports an indeterminate verdict rather than
aborting the run.
"""

from __future__ import annotations

from typing import Dict, List

from .forms import Form
from .hkt import (
    averaging_comparison,
    candidate_from_metric,
    candidate_from_omega,
    canonical_section,
    del_closure_report,
    hkt_cyclic_invariance,
    hkt_from_potential,
    holomorphic_symplectic_check,
    is_j_positive,
    is_j_real,
    kahler_to_hkt,
)
from .quaternionic import (
    HypercomplexStructure,
    Metric,
    is_quaternionic_hermitian,
    positive_definite_report,
    verify_structure,
)
from .report import INDETERMINATE, CheckReport, passed_report
from .sampling import SamplingPlan
from .scalars import RationalFunction

METRIC = "metric"
POTENTIAL = "potential"
OMEGA = "omega"
KAHLER = "kahler_form_on_J"

DATA_KINDS = (METRIC, POTENTIAL, OMEGA, KAHLER)


class SuiteValidationError(ValueError):
    """Request names an unknown check or one inapplicable to the data kind."""


class _Context:
    def __init__(self, H: HypercomplexStructure, data_kind: str, payload, plan: SamplingPlan):
        self.H = H
        self.data_kind = data_kind
        self.payload = payload
        self.plan = plan
        self._candidate = None
        self._pipeline = None
        self._build_error = None
        self._built = False

    def _build(self):
        if self._built:
            return
        self._built = True
        try:
            if self.data_kind == METRIC:
                self._candidate = candidate_from_metric(self.payload, self.H)
            elif self.data_kind == POTENTIAL:
                self._candidate, self._pipeline = hkt_from_potential(
                    self.payload, self.H, self.plan
                )
            elif self.data_kind == OMEGA:
                self._candidate = candidate_from_omega(self.payload, self.H)
            elif self.data_kind == KAHLER:
                self._candidate, self._pipeline = kahler_to_hkt(
                    self.payload, self.H, self.plan
                )
        except (ValueError, ZeroDivisionError) as exc:
            self._build_error = exc

    def candidate(self):
        self._build()
        if self._candidate is None:
            raise ValueError(f"candidate could not be constructed: {self._build_error}")
        return self._candidate

    def omega(self) -> Form:
        if self.data_kind == OMEGA:
            return self.payload
        return self.candidate().omega

    def metric(self) -> Metric:
        if self.data_kind == METRIC:
            return self.payload
        return self.candidate().g

    def pipeline_report(self, name) -> CheckReport:
        self._build()
        if self._pipeline is None:
            raise ValueError(
                f"check '{name}' is produced by the {self.data_kind} pipeline, "
                "which could not run"
            )
        for report in self._pipeline:
            if report.check == name:
                return report
        raise ValueError(f"pipeline produced no report named '{name}'")


def _chk_structure(ctx):
    return verify_structure(ctx.H)


def _chk_quaternionic_hermitian(ctx):
    return is_quaternionic_hermitian(ctx.metric(), ctx.H)


def _chk_positive_definite(ctx):
    return positive_definite_report(ctx.metric(), ctx.plan)


def _chk_round_trip(ctx):
    from .hkt import metric_from_omega, omega_from_metric

    candidate = ctx.candidate()
    recovered = metric_from_omega(candidate.omega, ctx.H)
    if not recovered == candidate.g:
        raise AssertionError("metric -> form -> metric round trip failed")
    rebuilt = omega_from_metric(recovered, ctx.H)
    if not rebuilt == candidate.omega:
        raise AssertionError("form -> metric -> form round trip failed")
    return passed_report("round_trip", details="both directions are exact identities")


def _chk_j_real(ctx):
    return is_j_real(ctx.omega(), ctx.H)


def _chk_j_positive(ctx):
    return is_j_positive(ctx.omega(), ctx.H, ctx.plan)


def _chk_hkt(ctx):
    if ctx.data_kind == OMEGA:
        return del_closure_report(ctx.omega(), ctx.H)
    return del_closure_report(ctx.candidate().omega, ctx.H)


def _chk_potential_closure(ctx):
    return ctx.pipeline_report("potential_closure")


def _chk_hkt_cyclic(ctx):
    return hkt_cyclic_invariance(ctx.metric(), ctx.H)


def _chk_canonical_section(ctx):
    _, report = canonical_section(ctx.omega(), ctx.H, ctx.plan)
    return report


def _chk_holomorphic_symplectic(ctx):
    return holomorphic_symplectic_check(ctx.omega(), ctx.H, ctx.plan)


def _chk_kahler_input_positive(ctx):
    return ctx.pipeline_report("kahler_input_positive")


def _chk_del_part_identity(ctx):
    return ctx.pipeline_report("del_part_identity")


def _chk_averaging_comparison(ctx):
    return averaging_comparison(ctx.payload, ctx.H)


# name -> (runner, data kinds the check applies to)
CHECKS = {
    "structure": (_chk_structure, DATA_KINDS),
    "quaternionic_hermitian": (_chk_quaternionic_hermitian, DATA_KINDS),
    "positive_definite": (_chk_positive_definite, DATA_KINDS),
    "round_trip": (_chk_round_trip, DATA_KINDS),
    "j_real": (_chk_j_real, DATA_KINDS),
    "j_positive": (_chk_j_positive, DATA_KINDS),
    "hkt": (_chk_hkt, DATA_KINDS),
    "potential_closure": (_chk_potential_closure, (POTENTIAL,)),
    "hkt_cyclic": (_chk_hkt_cyclic, DATA_KINDS),
    "canonical_section": (_chk_canonical_section, DATA_KINDS),
    "holomorphic_symplectic": (_chk_holomorphic_symplectic, DATA_KINDS),
    "kahler_input_positive": (_chk_kahler_input_positive, (KAHLER,)),
    "del_part_identity": (_chk_del_part_identity, (KAHLER,)),
    "averaging_comparison": (_chk_averaging_comparison, (KAHLER,)),
}


def available_checks():
    return list(CHECKS)


def validate_check_names(names, data_kind):
    if data_kind not in DATA_KINDS:
        raise SuiteValidationError(f"unknown data kind {data_kind!r}")
    for name in names:
        if name not in CHECKS:
            raise SuiteValidationError(f"unknown check {name!r}")
        _, kinds = CHECKS[name]
        if data_kind not in kinds:
            raise SuiteValidationError(
                f"check {name!r} does not apply to data kind {data_kind!r}"
            )


def make_context(H: HypercomplexStructure, data_kind: str, payload, plan: SamplingPlan | None = None):
    """A shared execution context (candidate built lazily, at most once)."""
    return _Context(H, data_kind, payload, plan if plan is not None else SamplingPlan())


def run_single_check(ctx, name: str) -> CheckReport:
    """Run one named check against a context; never raises for geometric issues."""
    runner, _ = CHECKS[name]
    try:
        return runner(ctx)
    except (ValueError, ZeroDivisionError) as exc:
        return CheckReport(
            check=name,
            verdict=INDETERMINATE,
            details=f"not evaluated: {exc}",
        )


def run_checks(
    H: HypercomplexStructure,
    data_kind: str,
    payload,
    check_names,
    plan: SamplingPlan | None = None,
) -> List[CheckReport]:
    """Execute the named checks in order against one chart context."""
    validate_check_names(check_names, data_kind)
    ctx = make_context(H, data_kind, payload, plan)
    return [run_single_check(ctx, name) for name in check_names]


def default_checks(data_kind) -> List[str]:
    """The standard check battery for a data kind, in execution order."""
    if data_kind == METRIC:
        return [
            "structure",
            "quaternionic_hermitian",
            "round_trip",
            "j_real",
            "j_positive",
            "hkt",
            "hkt_cyclic",
            "canonical_section",
            "holomorphic_symplectic",
        ]
    if data_kind == POTENTIAL:
        return [
            "structure",
            "potential_closure",
            "round_trip",
            "j_real",
            "j_positive",
            "hkt",
            "hkt_cyclic",
            "canonical_section",
            "holomorphic_symplectic",
        ]
    if data_kind == OMEGA:
        return [
            "structure",
            "j_real",
            "j_positive",
            "hkt",
            "canonical_section",
            "holomorphic_symplectic",
        ]
    if data_kind == KAHLER:
        return [
            "structure",
            "kahler_input_positive",
            "j_real",
            "j_positive",
            "del_part_identity",
            "hkt",
            "hkt_cyclic",
            "canonical_section",
            "holomorphic_symplectic",
        ]
    raise SuiteValidationError(f"unknown data kind {data_kind!r}")
