"""Sign and coordinate conventions baked into the toolkit.

Every downstream consumer of report JSON gets this ledger verbatim, so
convention drift between tool versions is detectable.
"""

CONVENTIONS = {
    "monomial_order": "graded lexicographic; ties broken by exponent tuple",
    "complex_scalars": "pairs of exact rationals (re, im); i^2 = -1",
    "form_basis": (
        "components indexed by strictly increasing dx tuples with "
        "(dx_a ^ dx_b)(e_a, e_b) = 1 (determinant convention, no 1/k!)"
    ),
    "structure_action": "matrices act on tangent vectors; columns are images of basis vectors",
    "form_conjugation_by_structure": (
        "(S.h)(v1,...,vk) = h(S v1,...,S vk); scalar coefficients unchanged"
    ),
    "holomorphic_coordinates": (
        "block b (0-based): z_{2b+1} = x_{4b} + i x_{4b+1}, z_{2b+2} = x_{4b+2} + i x_{4b+3}"
    ),
    "metric_to_form": "Omega(u, v) = g(Ju, v) + i g(Ku, v) on real vectors",
    "form_to_metric": (
        "g(u, v) = Re Omega(p(u), J conj(p(v))) with p(v) = (v - i I v)/2; scale factor 1"
    ),
    "positivity_pairing": "x = v - i I v; candidate passes when Omega(x, J conj(x)) > 0",
    "potential_operator": "del_J = -J o delbar o J; Omega_phi = del(del_J phi)",
    "potential_calibration_constant": "2",
    "calibration_identity": (
        "del(del_J(sum_a x_a^2)) = 2 * sum_b dz_{2b+1} ^ dz_{2b+2} for the standard structure"
    ),
}
