"""Core correspondences and checks for quaternionic Hermitian geometry.

The central objects: the (2,0)-form Omega(u, v) = g(Ju, v) + i g(Ku, v)
attached to a quaternionic Hermitian metric, its inverse reconstruction,
J-real / J-positive predicates, the del-closure condition defining HKT
candidates, potentials, the Kahler-part pipeline, cyclic relabeling of
the structure triple, and the holomorphic-symplectic verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from .forms import (
    BidegreeError,
    Form,
    bidegree_project,
    del_J,
    dolbeault_del,
    exterior_derivative,
    j_conjugate,
    wedge,
)
from .quaternionic import (
    HypercomplexStructure,
    Metric,
    is_quaternionic_hermitian,
    mat_vec,
)
from .report import (
    EXACT,
    INDETERMINATE,
    PASS,
    SAMPLED,
    VACUOUS,
    CheckReport,
    failed_report,
    passed_report,
)
from .sampling import SamplingPlan
from .scalars import (
    CONE,
    CZERO,
    ComplexRational,
    PoleError,
    RationalFunction,
)

_F0 = Fraction(0)
_F1 = Fraction(1)
_HALF = Fraction(1, 2)


class NotQuaternionicHermitianError(ValueError):
    """Metric fails the invariance identities required for the construction."""

    def __init__(self, report: CheckReport):
        self.report = report
        super().__init__(
            f"metric is not quaternionic Hermitian; witness: {report.witness}"
        )


def _indices_label(indices):
    return "∧".join(f"dx{i}" for i in indices) if indices else "1"


# -- the two directions of the metric/form correspondence -------------------


def fundamental_form(g: Metric, H: HypercomplexStructure, tag: str) -> Form:
    """The 2-form (u, v) -> g(Su, v) for S one of the structure matrices.

    Only defined (antisymmetric) when g is invariant under S.
    """
    S = H.matrix(tag)
    dim = g.dim
    components = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            acc = RationalFunction.zero(g.num_vars)
            for c in range(dim):
                if S[c][a]:
                    acc = acc + g.g[c][b] * S[c][a]
            if not acc.is_zero():
                components[(a, b)] = acc
    return Form(components, g.num_vars, 2)


def omega_from_metric(g: Metric, H: HypercomplexStructure) -> Form:
    """Omega(u, v) = g(Ju, v) + i g(Ku, v); exactly (2,0) wrt I and J-real."""
    qh = is_quaternionic_hermitian(g, H)
    if not qh.passed:
        raise NotQuaternionicHermitianError(qh)
    dim = g.dim
    i_unit = ComplexRational(_F0, _F1)
    components = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            acc = RationalFunction.zero(g.num_vars)
            for c in range(dim):
                if H.J[c][a]:
                    acc = acc + g.g[c][b] * H.J[c][a]
                if H.K[c][a]:
                    acc = acc + g.g[c][b] * (H.K[c][a] * i_unit)
            if not acc.is_zero():
                components[(a, b)] = acc
    omega = Form(components, g.num_vars, 2)
    if not bidegree_project(omega, H.I, 2, 0) == omega:
        raise ValueError("constructed form is not purely (2,0); inconsistent input")
    if not j_conjugate(omega, H.J) == omega.conjugate():
        raise ValueError("constructed form is not J-real; inconsistent input")
    return omega


def _complex_matrix_half_projector(S):
    """P = (Id - i S)/2 as a dense matrix of exact complex scalars."""
    dim = len(S)
    return [
        [
            ComplexRational(_HALF if r == c else _F0, -_HALF * S[r][c])
            for c in range(dim)
        ]
        for r in range(dim)
    ]


def metric_from_omega(omega: Form, H: HypercomplexStructure) -> Metric:
    """Reconstruct the real metric from a J-real (2,0)-form.

    g(u, v) = Re Omega(p(u), J conj(p(v))) with p(v) = (v - i I v)/2; the
    scale makes the round trip with omega_from_metric the exact identity.
    """
    if omega.degree != 2:
        raise ValueError("expected a 2-form")
    if not bidegree_project(omega, H.I, 2, 0) == omega:
        raise BidegreeError("form is not purely (2,0) with respect to I")
    if not j_conjugate(omega, H.J) == omega.conjugate():
        raise ValueError("form is not J-real")
    dim = 4 * H.n
    P = _complex_matrix_half_projector(H.I)
    # R = J . conj(P); conj(P) column b is the (0,1)-projection of e_b.
    R = [
        [
            sum(
                (
                    ComplexRational(H.J[r][t] * P[t][c].re, -H.J[r][t] * P[t][c].im)
                    for t in range(dim)
                    if H.J[r][t]
                ),
                CZERO,
            )
            for c in range(dim)
        ]
        for r in range(dim)
    ]
    zero = RationalFunction.zero(omega.num_vars)
    rows = []
    for a in range(dim):
        row = []
        for b in range(dim):
            acc = zero
            for (c, d), coeff in omega.components.items():
                weight = P[c][a] * R[d][b] - P[d][a] * R[c][b]
                if not weight.is_zero():
                    acc = acc + coeff * weight
            row.append(acc.real_part())
        rows.append(row)
    for a in range(dim):
        for b in range(a + 1, dim):
            if not rows[a][b] == rows[b][a]:
                raise ValueError(
                    f"reconstructed form is not symmetric at entry ({a}, {b}); "
                    "inconsistent input"
                )
    return Metric(rows)


# -- predicates ---------------------------------------------------------------


def is_j_real(omega: Form, H: HypercomplexStructure) -> CheckReport:
    """Exact comparison of the J-image of omega with its complex conjugate."""
    image = j_conjugate(omega, H.J)
    conj = omega.conjugate()
    if image == conj:
        return passed_report("j_real")
    keys = sorted(set(image.components) | set(conj.components))
    zero = RationalFunction.zero(omega.num_vars)
    for indices in keys:
        left = image.components.get(indices, zero)
        right = conj.components.get(indices, zero)
        if not left == right:
            return failed_report(
                "j_real",
                witness={
                    "component": list(indices),
                    "j_image": str(left),
                    "conjugate": str(right),
                },
            )
    raise AssertionError("unreachable: forms differ but no differing component found")


def _pairing_vectors(H: HypercomplexStructure, v):
    """x = v - i I v and J(conj(x)) as exact complex vectors."""
    Iv = mat_vec(H.I, v)
    Jv = mat_vec(H.J, v)
    JIv = mat_vec(H.J, Iv)
    dim = len(v)
    x = [ComplexRational(v[r], -Iv[r]) for r in range(dim)]
    y = [ComplexRational(Jv[r], JIv[r]) for r in range(dim)]
    return x, y


def positivity_pairing(
    omega_values: Dict[Tuple[int, ...], ComplexRational], x, y
) -> ComplexRational:
    total = CZERO
    for (a, b), coeff in omega_values.items():
        total = total + coeff * (x[a] * y[b] - x[b] * y[a])
    return total


def is_j_positive(
    omega: Form, H: HypercomplexStructure, plan: SamplingPlan | None = None
) -> CheckReport:
    """Sampled strict positivity of Omega(x, J(conj x)) for x = v - i I v.

    The pairing is asserted to be exactly real (a consequence of
    J-reality) and strictly positive at every sample point and nonzero
    sample vector.
    """
    if plan is None:
        plan = SamplingPlan()
    num_vars = omega.num_vars
    vectors = plan.tangent_vectors(num_vars)
    pair_cache = [_pairing_vectors(H, v) for v in vectors]
    skipped = []
    tested = 0
    for point in plan.chart_points(num_vars):
        try:
            values = omega.eval_components(point)
        except PoleError:
            skipped.append([str(c) for c in point])
            continue
        tested += 1
        for v, (x, y) in zip(vectors, pair_cache):
            pairing = positivity_pairing(values, x, y)
            witness = {
                "point": [str(c) for c in point],
                "vector": [str(c) for c in v],
                "pairing": str(pairing),
            }
            if not pairing.is_real():
                witness["reason"] = "pairing is not real"
                return failed_report("j_positive", witness=witness, mode=SAMPLED)
            if pairing.re <= 0:
                witness["reason"] = "pairing is not strictly positive"
                return failed_report("j_positive", witness=witness, mode=SAMPLED)
    details = {"points_tested": tested, "vectors_per_point": len(vectors)}
    if skipped:
        details["points_skipped_at_poles"] = skipped
    if tested == 0:
        return CheckReport(
            check="j_positive", verdict=INDETERMINATE, mode=SAMPLED, details=details
        )
    return passed_report("j_positive", mode=SAMPLED, details=details)


# -- candidates ---------------------------------------------------------------


@dataclass(frozen=True)
class HKTCandidate:
    """A quaternionic Hermitian metric with its associated (2,0)-form."""

    H: HypercomplexStructure
    g: Metric
    omega: Form
    provenance: str  # from_metric | from_potential | from_kahler_part | from_omega

    @property
    def n(self):
        return self.H.n


def candidate_from_metric(g: Metric, H: HypercomplexStructure) -> HKTCandidate:
    omega = omega_from_metric(g, H)
    recovered = metric_from_omega(omega, H)
    if not recovered == g:
        raise AssertionError("round trip through the (2,0)-form did not recover the metric")
    return HKTCandidate(H=H, g=g, omega=omega, provenance="from_metric")


def candidate_from_omega(omega: Form, H: HypercomplexStructure) -> HKTCandidate:
    g = metric_from_omega(omega, H)
    rebuilt = omega_from_metric(g, H)
    if not rebuilt == omega:
        raise AssertionError("round trip through the metric did not recover the form")
    return HKTCandidate(H=H, g=g, omega=omega, provenance="from_omega")


def is_hkt(candidate: HKTCandidate) -> CheckReport:
    """del(Omega) = 0, computed symbolically with respect to I.

    For n = 1 the target space of (3,0)-forms vanishes identically, so
    the condition holds vacuously and is reported as such.
    """
    return del_closure_report(candidate.omega, candidate.H)


def del_closure_report(omega: Form, H: HypercomplexStructure) -> CheckReport:
    """The del-closure check on any pure (2,0)-form; shared by is_hkt."""
    residual = dolbeault_del(omega, H.I)
    vacuous = H.n == 1
    if residual.is_zero():
        if vacuous:
            return passed_report(
                "hkt",
                mode=VACUOUS,
                details=(
                    "quaternionic dimension 1: (3,0)-forms vanish identically, "
                    "every quaternionic Hermitian metric satisfies the condition"
                ),
            )
        return passed_report("hkt", details="del(Omega) = 0 exactly")
    indices = sorted(residual.components)[0]
    return failed_report(
        "hkt",
        witness={
            "component": list(indices),
            "coefficient": str(residual.components[indices]),
            "residual": str(residual),
        },
        details="del(Omega) != 0",
    )


def hkt_from_potential(
    phi: RationalFunction, H: HypercomplexStructure, plan: SamplingPlan | None = None
) -> Tuple[HKTCandidate, List[CheckReport]]:
    """Build the candidate Omega = del(del_J(phi)) from a real potential.

    Closure del(Omega) = 0 is asserted as a report rather than assumed;
    strict positivity is sampled and reported, and the candidate is
    returned either way.
    """
    if not phi.is_real():
        raise ValueError("potential must be real-valued")
    if plan is None:
        plan = SamplingPlan()
    omega = dolbeault_del(del_J(Form.from_scalar(phi), H), H.I)
    g = metric_from_omega(omega, H)
    candidate = HKTCandidate(H=H, g=g, omega=omega, provenance="from_potential")
    closure = dolbeault_del(omega, H.I)
    if closure.is_zero():
        closure_report = passed_report(
            "potential_closure", details="del(del(del_J(phi))) = 0 exactly"
        )
    else:
        indices = sorted(closure.components)[0]
        closure_report = failed_report(
            "potential_closure",
            witness={"component": list(indices), "coefficient": str(closure.components[indices])},
        )
    reports = [
        closure_report,
        is_j_real(omega, H),
        is_j_positive(omega, H, plan),
    ]
    return candidate, reports


def kahler_to_hkt(
    omega1: Form, H: HypercomplexStructure, plan: SamplingPlan | None = None
) -> Tuple[HKTCandidate, List[CheckReport]]:
    """The (2,0)-part pipeline: a J-Hermitian 2-form induces a candidate.

    Reports, in order: positivity of the input as a Hermitian form on
    (M, J) (sampled); J-reality of the (2,0)-part (exact); strict
    J-positivity of the (2,0)-part (sampled); the exact identity
    del(Omega_1) = (3,0)-part of d(omega_1); the del-closure verdict,
    which is guaranteed to pass when d(omega_1) = 0 exactly.
    """
    if plan is None:
        plan = SamplingPlan()
    if omega1.degree != 2:
        raise ValueError("expected a 2-form")
    if not omega1 == omega1.conjugate():
        raise ValueError("input form must be real")
    if not j_conjugate(omega1, H.J) == omega1:
        raise ValueError("input form is not J-invariant")
    if not bidegree_project(omega1, H.J, 1, 1) == omega1:
        raise BidegreeError("input form is not of bidegree (1,1) with respect to J")

    reports = [_kahler_input_positive(omega1, H, plan)]

    omega = bidegree_project(omega1, H.I, 2, 0)
    reports.append(is_j_real(omega, H))
    reports.append(is_j_positive(omega, H, plan))

    d_omega1 = exterior_derivative(omega1)
    lhs = dolbeault_del(omega, H.I)
    rhs = bidegree_project(d_omega1, H.I, 3, 0)
    if lhs == rhs:
        reports.append(
            passed_report(
                "del_part_identity",
                details="del of the (2,0)-part equals the (3,0)-part of d, exactly",
            )
        )
    else:
        diff = lhs - rhs
        indices = sorted(diff.components)[0]
        reports.append(
            failed_report(
                "del_part_identity",
                witness={"component": list(indices), "difference": str(diff.components[indices])},
            )
        )

    closed = d_omega1.is_zero()
    if lhs.is_zero():
        detail = "input is closed; del-closure follows exactly" if closed else (
            "input is not closed but its (3,0)-obstruction vanishes"
        )
        mode = VACUOUS if H.n == 1 else EXACT
        reports.append(passed_report("hkt", mode=mode, details=detail))
    else:
        indices = sorted(lhs.components)[0]
        reports.append(
            failed_report(
                "hkt",
                witness={
                    "component": list(indices),
                    "coefficient": str(lhs.components[indices]),
                    "residual": str(lhs),
                },
                details="obstruction equals the (3,0)-part of d(omega_1)",
            )
        )

    g = metric_from_omega(omega, H)
    candidate = HKTCandidate(H=H, g=g, omega=omega, provenance="from_kahler_part")
    return candidate, reports


def _kahler_input_positive(omega1, H, plan) -> CheckReport:
    """Sampled positivity of omega_1(v, Jv) for nonzero real v."""
    vectors = plan.tangent_vectors(omega1.num_vars)
    jv = [mat_vec(H.J, v) for v in vectors]
    skipped = []
    tested = 0
    for point in plan.chart_points(omega1.num_vars):
        try:
            values = omega1.eval_components(point)
        except PoleError:
            skipped.append([str(c) for c in point])
            continue
        tested += 1
        for v, w in zip(vectors, jv):
            total = CZERO
            for (a, b), coeff in values.items():
                total = total + coeff * ComplexRational(v[a] * w[b] - v[b] * w[a], _F0)
            if not total.is_real() or total.re <= 0:
                return failed_report(
                    "kahler_input_positive",
                    witness={
                        "point": [str(c) for c in point],
                        "vector": [str(c) for c in v],
                        "value": str(total),
                    },
                    mode=SAMPLED,
                )
    details = {"points_tested": tested, "vectors_per_point": len(vectors)}
    if skipped:
        details["points_skipped_at_poles"] = skipped
    if tested == 0:
        return CheckReport(
            check="kahler_input_positive",
            verdict=INDETERMINATE,
            mode=SAMPLED,
            details=details,
        )
    return passed_report("kahler_input_positive", mode=SAMPLED, details=details)


# -- cyclic relabeling ---------------------------------------------------------


def cyclic_permute(H: HypercomplexStructure) -> HypercomplexStructure:
    """(I, J, K) -> (J, K, I); the quaternion relations are preserved."""
    return HypercomplexStructure(n=H.n, I=H.J, J=H.K, K=H.I)


def hkt_cyclic_invariance(g: Metric, H: HypercomplexStructure) -> CheckReport:
    """The del-closure verdict agrees across the full structure 3-cycle."""
    verdicts = {}
    structures = {"(I,J,K)": H}
    structures["(J,K,I)"] = cyclic_permute(H)
    structures["(K,I,J)"] = cyclic_permute(structures["(J,K,I)"])
    for label, HH in structures.items():
        candidate = candidate_from_metric(g, HH)
        verdicts[label] = is_hkt(candidate).verdict
    if len(set(verdicts.values())) == 1:
        return passed_report("hkt_cyclic", details=verdicts)
    return failed_report("hkt_cyclic", witness={"verdicts": verdicts}, details=verdicts)


# -- canonical section and the holomorphic-symplectic verdict ------------------


def _cdet(rows):
    """Exact determinant of a small complex-rational matrix."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = CONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            return CZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for r in range(col + 1, n):
            factor = m[r][col] / p
            if not factor.is_zero():
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


def _holomorphic_frame(H: HypercomplexStructure):
    """2n independent columns of (Id - i I)/2, an exact basis of (1,0)-vectors."""
    dim = 4 * H.n
    P = _complex_matrix_half_projector(H.I)
    columns = [[P[r][c] for r in range(dim)] for c in range(dim)]
    basis = []
    pivots = []
    chosen = []
    for c, column in enumerate(columns):
        vec = list(column)
        for pivot_row, bvec in zip(pivots, basis):
            factor = vec[pivot_row]
            if not factor.is_zero():
                vec = [x - factor * y for x, y in zip(vec, bvec)]
        pivot_row = next((r for r in range(dim) if not vec[r].is_zero()), None)
        if pivot_row is None:
            continue
        scale = vec[pivot_row]
        vec = [x / scale for x in vec]
        basis.append(vec)
        pivots.append(pivot_row)
        chosen.append(column)
        if len(chosen) == 2 * H.n:
            break
    if len(chosen) != 2 * H.n:
        raise ValueError("structure matrix does not split the chart into (1,0)/(0,1)")
    return chosen


def canonical_section(
    omega: Form, H: HypercomplexStructure, plan: SamplingPlan | None = None
) -> Tuple[Form, CheckReport]:
    """The n-fold wedge power of omega and its non-degeneracy verdict.

    The single top-bidegree coefficient is extracted by pairing with an
    exact basis of (1,0)-vectors; for the standard structure this is the
    coefficient in the holomorphic coordinate volume form.  Constant
    coefficients are decided exactly, non-constant ones at sample points.
    """
    if plan is None:
        plan = SamplingPlan()
    if not bidegree_project(omega, H.I, 2, 0) == omega:
        raise BidegreeError("form is not purely (2,0) with respect to I")
    power = omega
    for _ in range(H.n - 1):
        power = wedge(power, omega)
    frame = _holomorphic_frame(H)
    coefficient = RationalFunction.zero(omega.num_vars)
    for indices, coeff in power.components.items():
        det = _cdet([[frame[j][i] for j in range(2 * H.n)] for i in indices])
        if not det.is_zero():
            coefficient = coefficient + coeff * det
    details = {"coefficient": str(coefficient)}
    if coefficient.num.is_constant() and coefficient.den.is_constant():
        if coefficient.is_zero():
            report = failed_report(
                "canonical_section",
                witness={"coefficient": "0", "reason": "top power vanishes identically"},
                details=details,
            )
        else:
            report = passed_report("canonical_section", details=details)
        return power, report
    skipped = []
    tested = 0
    for point in plan.chart_points(omega.num_vars):
        try:
            value = coefficient.eval_exact(point)
        except PoleError:
            skipped.append([str(c) for c in point])
            continue
        tested += 1
        if value.is_zero():
            return power, failed_report(
                "canonical_section",
                witness={
                    "point": [str(c) for c in point],
                    "reason": "top-power coefficient vanishes at the point",
                },
                mode=SAMPLED,
                details=details,
            )
    if skipped:
        details["points_skipped_at_poles"] = skipped
    details["points_tested"] = tested
    if tested == 0:
        return power, CheckReport(
            check="canonical_section", verdict=INDETERMINATE, mode=SAMPLED, details=details
        )
    return power, passed_report("canonical_section", mode=SAMPLED, details=details)


def holomorphic_symplectic_check(
    omega: Form, H: HypercomplexStructure, plan: SamplingPlan | None = None
) -> CheckReport:
    """Pass iff d(omega) = 0 exactly and the top wedge power never degenerates.

    This is simultaneously the closed-nondegenerate verdict for the
    (2,0)-form and the condition distinguishing the flat-type candidates
    from merely del-closed ones.
    """
    if plan is None:
        plan = SamplingPlan()
    d_omega = exterior_derivative(omega)
    _, section = canonical_section(omega, H, plan)
    if not d_omega.is_zero():
        indices = sorted(d_omega.components)[0]
        return failed_report(
            "holomorphic_symplectic",
            witness={
                "component": list(indices),
                "coefficient": str(d_omega.components[indices]),
                "reason": "d(omega) != 0",
            },
            details={"closed": False, "canonical_section": section.verdict},
        )
    if not section.passed:
        return CheckReport(
            check="holomorphic_symplectic",
            verdict=section.verdict,
            mode=section.mode,
            witness=section.witness,
            details={"closed": True, "canonical_section": section.verdict},
        )
    return CheckReport(
        check="holomorphic_symplectic",
        verdict=PASS,
        mode=section.mode,
        details={"closed": True, "canonical_section": section.verdict},
    )


# -- optional experiment --------------------------------------------------------


def averaging_comparison(
    omega1: Form, H: HypercomplexStructure
) -> CheckReport:
    """Compare the reconstructed metric with the group average of the input metric.

    The input is a J-Hermitian 2-form omega_1 with metric
    g_1(u, v) = -omega_1(Ju, v).  The reconstruction from the (2,0)-part
    and the quaternion-group average of g_1 are reported with the
    best-fit scalar relating them; equality is informational, never a
    gate, and the scalar is free.
    """
    from .quaternionic import quaternion_group_average

    dim = omega1.num_vars
    zero = RationalFunction.zero(dim)
    W = [[zero] * dim for _ in range(dim)]
    for (a, b), coeff in omega1.components.items():
        W[a][b] = coeff
        W[b][a] = -coeff
    rows = []
    for a in range(dim):
        row = []
        for b in range(dim):
            acc = zero
            for c in range(dim):
                if H.J[c][a]:
                    acc = acc + W[c][b] * H.J[c][a]
            row.append(-acc)
        rows.append(row)
    g1 = Metric(rows)
    averaged = quaternion_group_average(g1, H)
    reconstructed = metric_from_omega(bidegree_project(omega1, H.I, 2, 0), H)
    scale = None
    for a in range(dim):
        for b in range(dim):
            if not averaged.g[a][b].is_zero():
                scale = reconstructed.g[a][b] / averaged.g[a][b]
                break
        if scale is not None:
            break
    if scale is None:
        return CheckReport(
            check="averaging_comparison",
            verdict=INDETERMINATE,
            details="group average is zero; nothing to compare",
        )
    matches = averaged.scale(scale) == reconstructed
    return CheckReport(
        check="averaging_comparison",
        verdict=INDETERMINATE,
        details={
            "best_fit_scale": str(scale),
            "exact_match_at_that_scale": matches,
        },
    )
