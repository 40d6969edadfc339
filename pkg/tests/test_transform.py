import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartan_path.exterior import InvariantForm, shifted_rules, verify_curvature_equations
from cartan_path.exterior.pipelines import section_components
from cartan_path.pathstruct import AdYMatrix
from cartan_path.transform import (
    ConnectionComponents,
    CurvatureTuple,
    GroupElement,
    conjugation_oracle,
    curvature_from_forms,
    curvature_matrix,
    random_components,
    random_group_element,
    reduction_scale_solve,
    transform_components,
    transform_curvature,
)
from strategies import adY_matrices, nonzero_rationals, small_rationals

Q = Fraction

group_elements = st.builds(GroupElement, nonzero_rationals, nonzero_rationals,
                           small_rationals, small_rationals, small_rationals)


@st.composite
def components(draw, n=3):
    return ConnectionComponents(*(
        InvariantForm.linear([draw(small_rationals) for _ in range(n)]) for _ in range(8)
    ))


def basis_components():
    # each component is its own generator, so coefficients can be read off directly
    return ConnectionComponents(*(InvariantForm.generator(i, 8) for i in range(8)))


# -- group elements ------------------------------------------------------------------

def test_group_element_validation():
    with pytest.raises(ValueError):
        GroupElement(0, 1)
    with pytest.raises(ValueError):
        GroupElement(1, 0)
    with pytest.raises(TypeError):
        GroupElement(0.5, 1)
    with pytest.raises(ValueError):
        GroupElement.from_matrix(((1, 0, 0), (0, 2, 0), (0, 0, 1)))


@given(group_elements, group_elements)
def test_group_law(g, h):
    assert (g @ h).matrix == tuple(
        tuple(sum(g.matrix[i][k] * h.matrix[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )
    assert g @ g.inverse() == GroupElement.identity()
    assert GroupElement.from_matrix(g.matrix) == g


def test_matrix_has_unit_determinant():
    g = GroupElement(Q(2, 3), -5, 1, 2, 3)
    m = g.matrix
    assert m[0][0] * m[1][1] * m[2][2] == 1


# -- action on components ---------------------------------------------------------------

def test_identity_leaves_components_unchanged():
    k = basis_components()
    assert transform_components(GroupElement.identity(), k) == k
    assert conjugation_oracle(GroupElement.identity(), k) == k


def test_diagonal_scaling_of_the_coframe():
    k = basis_components()
    out = transform_components(GroupElement(2, 1), k)
    assert out.omega == 2 * k.omega
    assert out.omega1 == 4 * k.omega1
    assert out.omega2 == Q(1, 2) * k.omega2


def test_diagonal_element_fixes_phi_and_w():
    k = basis_components()
    h = GroupElement(Q(3, 2), -7)
    oracle = conjugation_oracle(h, k)
    assert oracle.phi == k.phi and oracle.w == k.w


def test_symbolic_generic_components_match():
    # generators as components make every coefficient of the formula visible
    rng = random.Random(11)
    for _ in range(50):
        h = random_group_element(rng)
        assert transform_components(h, basis_components()) == conjugation_oracle(h, basis_components())


@given(group_elements, st.integers(3, 5).flatmap(lambda n: components(n=n)))
def test_closed_form_matches_conjugation(h, k):
    assert transform_components(h, k) == conjugation_oracle(h, k)


@given(group_elements, group_elements)
def test_action_is_a_right_action(g, h):
    k = basis_components()
    assert transform_components(h, transform_components(g, k)) == transform_components(g @ h, k)


def test_from_matrix_requires_traceless():
    k = basis_components()
    m = [list(r) for r in k.as_matrix()]
    m[0][0] = m[0][0] + InvariantForm.generator(0, 8)
    with pytest.raises(ValueError):
        ConnectionComponents.from_matrix(m)


def test_components_share_generator_set():
    forms = [InvariantForm.generator(0, 3)] * 7 + [InvariantForm.generator(0, 4)]
    with pytest.raises(ValueError):
        ConnectionComponents(*forms)


# -- curvature laws --------------------------------------------------------------------

def test_transform_curvature_examples():
    q = CurvatureTuple(Q(3), Q(-5, 2), Q(1, 7), Q(2))
    assert transform_curvature(GroupElement.identity(), q) == q
    assert transform_curvature(GroupElement(1, 2), CurvatureTuple(1, 0)).Q1 == 32


@given(group_elements, group_elements, small_rationals, small_rationals, small_rationals, small_rationals)
def test_curvature_laws_compose(g, h, q1, q2, u1, u2):
    q = CurvatureTuple(q1, q2, u1, u2)
    assert transform_curvature(h, transform_curvature(g, q)) == transform_curvature(g @ h, q)


def test_section_curvature_has_only_the_expected_entries():
    A = AdYMatrix.from_abcef(6, 9, -4, 2, 3)
    _, _, _, _, rep = verify_curvature_equations(A)
    k = ConnectionComponents.from_mapping(section_components(A, rep.values["G"]))
    Pi = curvature_matrix(k, shifted_rules(A))
    nonzero = {(i, j) for i in range(3) for j in range(3) if Pi[i][j]}
    assert nonzero <= {(1, 2), (0, 1), (0, 2)}


@given(adY_matrices(), group_elements)
def test_curvature_laws_through_the_exterior_module(A, h):
    q1, q2, u1, u2, rep = verify_curvature_equations(A)
    k = ConnectionComponents.from_mapping(section_components(A, rep.values["G"]))
    rules = shifted_rules(A)
    assert curvature_from_forms(k, rules) == CurvatureTuple(q1, q2, u1, u2)
    moved = curvature_from_forms(transform_components(h, k), rules)
    assert moved.Q1 == h.a * h.b ** 5 * q1
    assert moved.Q2 == q2 / (h.a ** 5 * h.b)
    assert moved == transform_curvature(h, CurvatureTuple(q1, q2, u1, u2))


# -- reduction -------------------------------------------------------------------------

def test_reduction_examples():
    r = reduction_scale_solve(1, 1)
    assert (r.a, r.b, r.epsilon) == (1.0, 1.0, 1)
    r = reduction_scale_solve(-1.5, -1.5)
    assert r.epsilon == 1
    assert max(r.residual_q1, r.residual_q2) <= 1e-12
    r = reduction_scale_solve(32, 1 / 32)
    assert r.epsilon == 1 and max(r.residual_q1, r.residual_q2) <= 1e-12


def test_inverting_the_scale_example_only_normalises_q1():
    # (a, b) = (1, 1/2) undoes the a=1, b=2 scaling of Q1 but leaves Q2 at 1/16
    moved = transform_curvature(GroupElement(1, Q(1, 2)), CurvatureTuple(Q(32), Q(1, 32)))
    assert moved.Q1 == 1
    assert moved.Q2 == Q(1, 16)


@pytest.mark.parametrize("q1, q2", [(0, 1), (1, 0), (0.0, 0.0), (math.inf, 1), (math.nan, 1)])
def test_reduction_rejects_degenerate_input(q1, q2):
    with pytest.raises(ValueError):
        reduction_scale_solve(q1, q2)


@given(st.sampled_from([-1, 1]), st.sampled_from([-1, 1]),
       st.floats(-6, 6), st.floats(-6, 6))
def test_reduction_residuals_and_second_witness(s1, s2, e1, e2):
    q1, q2 = s1 * 10 ** e1, s2 * 10 ** e2
    r = reduction_scale_solve(q1, q2)
    assert r.a > 0
    assert r.epsilon == s1 * s2
    assert r.residual_q1 <= 1e-12 and r.residual_q2 <= 1e-12
    a2, b2 = r.second_witness
    assert abs(a2 * b2 ** 5 * q1 - 1) <= 1e-12
    assert abs(q2 / (a2 ** 5 * b2) - r.epsilon) <= 1e-12
    assert "S-coefficient" in r.to_json()["note"]


def test_random_helpers_are_reproducible():
    assert random_group_element(random.Random(1)) == random_group_element(random.Random(1))
    assert random_components(random.Random(1)) == random_components(random.Random(1))
