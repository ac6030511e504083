"""Exterior algebra, bidegree decomposition, Dolbeault-type operators."""

from fractions import Fraction

import pytest

from conftest import fd_exterior_derivative, rand_form, rand_point, rng_for
from hktlab.forms import (
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
from hktlab.parsing import parse_scalar
from hktlab.quaternionic import standard_structure
from hktlab.scalars import ComplexRational, RationalFunction

I_UNIT = ComplexRational(Fraction(0), Fraction(1))


def half(num_vars):
    return RationalFunction.constant(Fraction(1, 2), num_vars)


def flat_form(n):
    dz = holomorphic_coframe(n)
    total = Form.zero(4 * n, 2)
    for b in range(n):
        total = total + wedge(dz[2 * b], dz[2 * b + 1])
    return total


# -- wedge -------------------------------------------------------------------


def test_wedge_disjoint_indices():
    a = wedge(Form.dx(0, 8), Form.dx(1, 8))
    b = wedge(Form.dx(2, 8), Form.dx(3, 8))
    assert wedge(a, b) == Form(
        {(0, 1, 2, 3): RationalFunction.one(8)}, 8, 4
    )


def test_wedge_with_repeated_factor_vanishes():
    assert wedge(Form.dx(0, 4), Form.dx(0, 4)).is_zero()


def test_wedge_of_block_sum_doubles_cross_terms():
    dz = holomorphic_coframe(2)
    omega = wedge(dz[0], dz[1]) + wedge(dz[2], dz[3])
    top = wedge(wedge(dz[0], dz[1]), wedge(dz[2], dz[3]))
    assert wedge(omega, omega) == top * 2


def test_wedge_graded_commutativity():
    rng = rng_for("wedge-comm")
    for _ in range(10):
        p = rng.choice([1, 2])
        q = rng.choice([1, 2])
        a = rand_form(rng, 6, p)
        b = rand_form(rng, 6, q)
        sign = (-1) ** (p * q)
        assert wedge(a, b) == wedge(b, a) * sign


def test_wedge_associativity():
    rng = rng_for("wedge-assoc")
    for _ in range(8):
        a = rand_form(rng, 6, 1)
        b = rand_form(rng, 6, 1)
        c = rand_form(rng, 6, 2)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


# -- exterior derivative -------------------------------------------------------


def test_d_single_term_leibniz():
    x0 = parse_scalar("x0", 4)
    assert exterior_derivative(Form.dx(1, 4) * x0) == wedge(Form.dx(0, 4), Form.dx(1, 4))


def test_d_constant_coefficients_vanishes():
    dz = holomorphic_coframe(1)
    assert exterior_derivative(wedge(dz[0], dz[1])).is_zero()


def test_d_exact_cancellation():
    x0 = parse_scalar("x0", 4)
    x1 = parse_scalar("x1", 4)
    a = Form.dx(0, 4) * x1 + Form.dx(1, 4) * x0
    assert exterior_derivative(a).is_zero()


def test_d_squared_zero_randomized():
    rng = rng_for("dd-zero")
    for _ in range(12):
        degree = rng.choice([0, 1, 2])
        a = rand_form(rng, 6, degree, max_degree=3)
        assert exterior_derivative(exterior_derivative(a)).is_zero()


def test_d_matches_finite_differences():
    rng = rng_for("fd-oracle")
    checked = 0
    while checked < 20:
        degree = rng.choice([1, 2])
        a = rand_form(rng, 5, degree, max_degree=3, components=3)
        d_a = exterior_derivative(a)
        point = rand_point(rng, 5)
        indices = tuple(sorted(rng.sample(range(5), degree + 1)))
        expected = fd_exterior_derivative(a, indices, point)
        coeff = d_a.components.get(indices)
        got = 0j if coeff is None else coeff.eval_float([float(c) for c in point])
        assert abs(got - expected) < 1e-6
        checked += 1


# -- bidegree ------------------------------------------------------------------


def test_dx0_projection_is_half_dz1():
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    assert bidegree_project(Form.dx(0, 4), H.I, 1, 0) == dz[0] * half(4)
    assert bidegree_project(Form.dx(0, 4), H.I, 0, 1) == dz[0].conjugate() * half(4)


def test_omega_j_of_flat_metric_projects_to_half_flat_form():
    # omega_J = (Omega + conj Omega)/2, so its (2,0) part is half the flat form.
    H = standard_structure(1)
    omega0 = flat_form(1)
    omega_j = (omega0 + omega0.conjugate()) * half(4)
    assert bidegree_project(omega_j, H.I, 2, 0) == omega0 * half(4)


def test_pure_type_projects_to_zero_elsewhere():
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    mixed = wedge(dz[0], dz[0].conjugate())
    assert bidegree_project(mixed, H.I, 2, 0).is_zero()
    assert bidegree_project(mixed, H.I, 1, 1) == mixed


def test_projections_sum_to_identity_and_are_idempotent():
    rng = rng_for("bidegree-sum")
    H = standard_structure(2)
    for _ in range(6):
        degree = rng.choice([1, 2, 3])
        a = rand_form(rng, 8, degree)
        parts = bidegree_decompose(a, H.I)
        total = Form.zero(8, degree)
        for (p, q), part in parts.items():
            total = total + part
            assert bidegree_project(part, H.I, p, q) == part
            for (r, s), other in parts.items():
                if (r, s) != (p, q) and not part.is_zero():
                    assert bidegree_project(part, H.I, r, s).is_zero()
        assert total == a


def test_bidegree_eigenvalue_oracle():
    # Independent characterization: a (p, q) part is an eigenvector of the
    # structure pullback with eigenvalue i^(p-q).
    rng = rng_for("bidegree-eig")
    H = standard_structure(1)
    for _ in range(6):
        degree = rng.choice([1, 2])
        a = rand_form(rng, 4, degree)
        for (p, q), part in bidegree_decompose(a, H.I).items():
            eigenvalue = I_UNIT ** ((p - q) % 4) if p >= q else None
            scale = ComplexRational(Fraction(1), Fraction(0))
            for _ in range(abs(p - q) % 4):
                scale = scale * (I_UNIT if p > q else -I_UNIT)
            assert j_conjugate(part, H.I) == part * scale


def test_bidegree_validation():
    H = standard_structure(1)
    a = Form.dx(0, 4)
    with pytest.raises(ValueError):
        bidegree_project(a, H.I, 2, 0)
    not_acs = tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(4)) for i in range(4))
    with pytest.raises(ValueError):
        bidegree_project(a, not_acs, 1, 0)


def test_bigraded_form_parts():
    H = standard_structure(1)
    omega0 = flat_form(1)
    omega_j = (omega0 + omega0.conjugate()) * half(4)
    graded = BigradedForm.compute(omega_j, H, "I")
    assert graded.part(2, 0) == omega0 * half(4)
    assert graded.part(1, 1).is_zero()
    assert graded.part(0, 2) == omega0.conjugate() * half(4)


# -- structure conjugation -------------------------------------------------------


def test_j_on_basis_one_forms():
    H = standard_structure(1)
    assert j_conjugate(Form.dx(0, 4), H.J) == -Form.dx(2, 4)
    assert j_conjugate(Form.dx(2, 4), H.J) == Form.dx(0, 4)


def test_j_on_antiholomorphic_coframe():
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    dzbar = antiholomorphic_coframe(1)
    assert j_conjugate(dzbar[0], H.J) == -dz[1]
    assert j_conjugate(dzbar[1], H.J) == dz[0]


def test_j_maps_flat_form_to_conjugate():
    H = standard_structure(1)
    omega0 = flat_form(1)
    assert j_conjugate(omega0, H.J) == omega0.conjugate()


def test_j_swaps_bidegree():
    rng = rng_for("j-swap")
    H = standard_structure(2)
    for _ in range(5):
        a = rand_form(rng, 8, 2)
        for (p, q), part in bidegree_decompose(a, H.I).items():
            image = j_conjugate(part, H.J)
            assert bidegree_project(image, H.I, q, p) == image


def test_j_involution_sign():
    # Applying the pullback twice is (J^2)^* = (-Id)^*, i.e. (-1)^k.
    rng = rng_for("j-invol")
    H = standard_structure(1)
    for degree in (1, 2, 3):
        a = rand_form(rng, 4, degree)
        twice = j_conjugate(j_conjugate(a, H.J), H.J)
        assert twice == a * ((-1) ** degree)


# -- Dolbeault operators -----------------------------------------------------------


def test_del_of_coordinate_function():
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    x0 = Form.from_scalar(parse_scalar("x0", 4))
    assert dolbeault_del(x0, H.I) == dz[0] * half(4)


def test_del_of_constant_form_vanishes():
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    assert dolbeault_del(wedge(dz[0], dz[1]), H.I).is_zero()


def test_del_with_leibniz_annihilation():
    # (1 + x0^2) dz1^dz2: the dz1 factor kills the derivative term at n=1,
    # but the n=2 block form keeps a nonzero obstruction.
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    f = parse_scalar("1 + x0^2", 4)
    assert dolbeault_del(wedge(dz[0], dz[1]) * f, H.I).is_zero()

    H2 = standard_structure(2)
    dz8 = holomorphic_coframe(2)
    f2 = parse_scalar("1 + x0^2", 8)
    omega = (wedge(dz8[0], dz8[1]) + wedge(dz8[2], dz8[3])) * f2
    residual = dolbeault_del(omega, H2.I)
    expected = wedge(wedge(dz8[0], dz8[2]), dz8[3]) * parse_scalar("x0", 8)
    assert residual == expected


def test_operators_require_pure_bidegree():
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    mixed = dz[0] + dz[0].conjugate()
    with pytest.raises(BidegreeError):
        dolbeault_del(mixed, H.I)
    assert pure_bidegree(dz[0], H.I) == (1, 0)


def test_del_delbar_identities_randomized():
    rng = rng_for("dolbeault-ids")
    H = standard_structure(1)
    for _ in range(6):
        a = rand_form(rng, 4, rng.choice([0, 1]), max_degree=3)
        for (p, q), part in bidegree_decompose(a, H.I).items():
            if part.is_zero():
                continue
            assert dolbeault_del(dolbeault_del(part, H.I), H.I).is_zero()
            assert dolbeault_delbar(dolbeault_delbar(part, H.I), H.I).is_zero()
            lhs = dolbeault_del(dolbeault_delbar(part, H.I), H.I)
            rhs = dolbeault_delbar(dolbeault_del(part, H.I), H.I)
            assert lhs == -rhs


def test_d_splits_into_del_plus_delbar():
    rng = rng_for("d-split")
    H = standard_structure(1)
    for _ in range(6):
        a = rand_form(rng, 4, rng.choice([0, 1, 2]), max_degree=2)
        for (p, q), part in bidegree_decompose(a, H.I).items():
            if part.is_zero():
                continue
            d_part = exterior_derivative(part)
            assert dolbeault_del(part, H.I) + dolbeault_delbar(part, H.I) == d_part


# -- del_J ---------------------------------------------------------------------


def test_del_j_of_coordinate_function():
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    x0 = Form.from_scalar(parse_scalar("x0", 4))
    assert del_J(x0, H) == dz[1] * half(4)


def test_del_j_of_squared_radius():
    H = standard_structure(1)
    dz = holomorphic_coframe(1)
    phi = Form.from_scalar(parse_scalar("x0^2+x1^2+x2^2+x3^2", 4))
    z1 = parse_scalar("x0", 4) + parse_scalar("x1", 4) * I_UNIT
    z2 = parse_scalar("x2", 4) + parse_scalar("x3", 4) * I_UNIT
    assert del_J(phi, H) == dz[1] * z1 - dz[0] * z2


def test_del_j_of_constant_vanishes():
    H = standard_structure(1)
    assert del_J(Form.from_scalar(parse_scalar("5/3", 4)), H).is_zero()


def test_del_j_maps_bidegree_up_left():
    rng = rng_for("delj-degree")
    H = standard_structure(2)
    for _ in range(4):
        a = rand_form(rng, 8, 1)
        for (p, q), part in bidegree_decompose(a, H.I).items():
            if part.is_zero():
                continue
            image = del_J(part, H)
            assert bidegree_project(image, H.I, p + 1, q) == image


def test_del_and_del_j_anticommute():
    rng = rng_for("del-delj-anticommute")
    H = standard_structure(2)
    for _ in range(4):
        a = rand_form(rng, 8, rng.choice([0, 1]), max_degree=3)
        for (p, q), part in bidegree_decompose(a, H.I).items():
            if part.is_zero():
                continue
            lhs = dolbeault_del(del_J(part, H), H.I)
            rhs = del_J(dolbeault_del(part, H.I), H)
            assert lhs == -rhs


def test_potential_calibration_constant_is_two():
    # Fixes every sign convention at once: the flat potential must give
    # exactly twice the flat form, in every quaternionic dimension.
    for n in (1, 2):
        H = standard_structure(n)
        phi = Form.from_scalar(
            parse_scalar(" + ".join(f"x{a}^2" for a in range(4 * n)), 4 * n)
        )
        omega = dolbeault_del(del_J(phi, H), H.I)
        assert omega == flat_form(n) * 2


def test_form_value_on_vectors():
    omega0 = flat_form(1)
    origin = (0, 0, 0, 0)
    e0 = (1, 0, 0, 0)
    e2 = (0, 0, 1, 0)
    e3 = (0, 0, 0, 1)
    assert omega0.value([e0, e2], origin) == ComplexRational(Fraction(1), Fraction(0))
    assert omega0.value([e0, e3], origin) == I_UNIT
    assert omega0.value([e2, e0], origin) == ComplexRational(Fraction(-1), Fraction(0))
