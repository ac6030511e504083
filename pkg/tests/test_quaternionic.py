"""Hypercomplex structures, quaternionic Hermitian metrics, averaging."""

from fractions import Fraction

import pytest

from conftest import quat_mul, rand_point, rand_symmetric_metric, rng_for
from hktlab.parsing import parse_scalar
from hktlab.quaternionic import (
    HypercomplexStructure,
    Metric,
    is_quaternionic_hermitian,
    mat_identity,
    mat_mul,
    mat_transpose,
    mat_vec,
    positive_definite_report,
    quaternion_group_average,
    standard_structure,
    structure_from_matrices,
    verify_structure,
)
from hktlab.sampling import SamplingPlan


def test_standard_structure_is_left_quaternion_multiplication():
    # Oracle: the action of each structure matrix on a basis vector must
    # agree with the Hamilton product computed independently.
    H = standard_structure(1)
    units = {"I": (0, 1, 0, 0), "J": (0, 0, 1, 0), "K": (0, 0, 0, 1)}
    for tag, unit in units.items():
        S = H.matrix(tag)
        for a in range(4):
            basis = tuple(1 if i == a else 0 for i in range(4))
            expected = quat_mul(unit, basis)
            got = tuple(mat_vec(S, basis))
            assert got == expected, (tag, a)


def test_standard_structure_relations_pass():
    for n in (1, 2, 3):
        report = verify_structure(standard_structure(n))
        assert report.passed
        assert all(v == "pass" for v in report.details.values())


def test_composition_order_matches_multiplication_table():
    H = standard_structure(1)
    e0 = (1, 0, 0, 0)
    assert tuple(mat_vec(mat_mul(H.I, H.J), e0)) == tuple(mat_vec(H.K, e0))


def test_block_diagonal_square():
    H = standard_structure(2)
    assert mat_mul(H.I, H.I) == tuple(
        tuple(-x for x in row) for row in mat_identity(8)
    )


def test_swapped_j_k_fails_with_witness():
    H = standard_structure(1)
    swapped = HypercomplexStructure(n=1, I=H.I, J=H.K, K=H.J)
    report = verify_structure(swapped)
    assert not report.passed
    assert report.details["I*J = K"] == "fail"
    assert report.witness is not None


def test_negated_i_fails_products_but_not_square():
    H = standard_structure(1)
    negated = HypercomplexStructure(
        n=1, I=tuple(tuple(-x for x in row) for row in H.I), J=H.J, K=H.K
    )
    report = verify_structure(negated)
    assert report.details["I*I = -Id"] == "pass"
    assert report.details["I*J = K"] == "fail"


def test_structures_are_orthogonal():
    for n in (1, 2):
        H = standard_structure(n)
        identity = mat_identity(4 * n)
        for _, S in H.matrices():
            assert mat_mul(mat_transpose(S), S) == identity


def test_structure_from_matrices_validates_dimension():
    with pytest.raises(ValueError):
        structure_from_matrices([[0, -1], [1, 0]], [[0, -1], [1, 0]], [[0, -1], [1, 0]])


def test_euclidean_metric_is_quaternionic_hermitian():
    for n in (1, 2):
        H = standard_structure(n)
        assert is_quaternionic_hermitian(Metric.euclidean(4 * n), H).passed


def test_diag_metric_fails_with_witness():
    H = standard_structure(1)
    report = is_quaternionic_hermitian(Metric.diagonal([1, 1, 1, 4]), H)
    assert not report.passed
    assert report.witness["structure"] == "I"
    assert report.witness["entry"] == [2, 2]


def test_average_of_diag_1114_is_seven_quarters():
    H = standard_structure(1)
    averaged = quaternion_group_average(Metric.diagonal([1, 1, 1, 4]), H)
    expected = Metric.euclidean(4).scale(
        parse_scalar("7/4", 4)
    )
    assert averaged == expected


def test_average_brute_force_oracle():
    # Oracle: expand g'(e_a, e_b) = (1/4) sum_S g(S e_a, S e_b) with plain
    # loops, independently of the matrix pullback implementation.
    rng = rng_for("avg-oracle")
    H = standard_structure(1)
    g = rand_symmetric_metric(rng, 4, max_degree=2)
    averaged = quaternion_group_average(g, H)
    matrices = [mat_identity(4), H.I, H.J, H.K]
    quarter = Fraction(1, 4)
    for a in range(4):
        for b in range(4):
            acc = None
            for S in matrices:
                ea = mat_vec(S, tuple(1 if i == a else 0 for i in range(4)))
                eb = mat_vec(S, tuple(1 if i == b else 0 for i in range(4)))
                for c in range(4):
                    for d in range(4):
                        if ea[c] and eb[d]:
                            term = g.g[c][d] * (ea[c] * eb[d])
                            acc = term if acc is None else acc + term
            assert averaged.g[a][b] == acc * quarter


def test_average_of_euclidean_is_identity_map():
    H = standard_structure(1)
    g = Metric.euclidean(4)
    assert quaternion_group_average(g, H) == g


def test_average_with_x0_squared_perturbation():
    # Only the e0 direction is perturbed; the group orbit spreads it
    # evenly over the block, giving (1 + x0^2/4) times the identity.
    H = standard_structure(1)
    rows = [[Metric.euclidean(4).g[a][b] for b in range(4)] for a in range(4)]
    rows[0][0] = rows[0][0] + parse_scalar("x0^2", 4)
    averaged = quaternion_group_average(Metric(rows), H)
    assert averaged == Metric.euclidean(4).scale(parse_scalar("1 + x0^2/4", 4))


def test_average_idempotent_and_invariant():
    rng = rng_for("avg-idem")
    for n in (1, 2):
        H = standard_structure(n)
        for _ in range(8):
            g = rand_symmetric_metric(rng, 4 * n, max_degree=2)
            averaged = quaternion_group_average(g, H)
            assert is_quaternionic_hermitian(averaged, H).passed
            assert quaternion_group_average(averaged, H) == averaged


def test_metric_requires_symmetry():
    one = parse_scalar("1", 4)
    zero = parse_scalar("0", 4)
    x0 = parse_scalar("x0", 4)
    bad = [
        [one, x0, zero, zero],
        [zero, one, zero, zero],
        [zero, zero, one, zero],
        [zero, zero, zero, one],
    ]
    with pytest.raises(ValueError):
        Metric(bad)


def test_positive_definite_sampling():
    plan = SamplingPlan(seed=0, count=8)
    assert positive_definite_report(Metric.euclidean(4), plan).passed
    report = positive_definite_report(Metric.diagonal([1, 1, 1, -1]), plan)
    assert not report.passed
    assert report.witness["minor_order"] == 4


def test_positive_definite_skips_poles():
    f = parse_scalar("1/(x0^2+x1^2+x2^2+x3^2)", 4)
    g = Metric.euclidean(4).scale(f)
    report = positive_definite_report(g, SamplingPlan(seed=0, count=4))
    assert report.passed
    assert report.details["points_skipped_at_poles"] == [["0", "0", "0", "0"]]
