import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cartan_path.algebra import change_basis, classify_bianchi, jacobi_check, killing_form
from cartan_path.pathstruct import (
    LEAVES,
    PARAMETRIC_LEAVES,
    AdYMatrix,
    JacobiViolation,
    bianchi_type,
    killing_closed_form,
    leaf_matrix,
    normalize,
    random_adY,
    reorder,
    scale_action,
    to_structure_constants,
    validate,
)
from cartan_path.rational import sign
from cartan_path.strict import curvature_direct
from strategies import adY_matrices, nonzero_rationals

Q = Fraction


def test_validate_examples():
    A = validate(["1/4", "1/4", "-1/4", "-1/4", "1", "1"])
    assert A.entries == (Q(1, 4), Q(1, 4), Q(-1, 4), Q(-1, 4), 1, 1)
    assert validate([[0, 0], [0, 0], [0, 0]]).entries == (0,) * 6


@pytest.mark.parametrize("raw, failing", [
    ((1, 0, 0, 0, 0, 0), "a11 + a22"),
    ((0, 1, 0, 0, 1, 0), "a31*a12 - a32*a11"),
    ((0, 0, 1, 0, 0, 1), "a31*a22 - a32*a21"),
])
def test_each_constraint_is_detected_separately(raw, failing):
    with pytest.raises(JacobiViolation) as info:
        validate(raw)
    assert [name for name, _ in info.value.failures] == [failing]


def test_validate_rejects_wrong_length_and_floats():
    with pytest.raises(ValueError):
        validate([0] * 5)
    with pytest.raises(TypeError):
        validate([0.5, 0, 0, -0.5, 0, 0])


def test_json_round_trip():
    A = AdYMatrix.from_abcef(Q(1, 4), Q(1, 4), Q(-1, 4), 1, 1)
    data = A.to_json()
    assert data == {"ad_Y": [["1/4", "1/4"], ["-1/4", "-1/4"], ["1", "1"]]}
    assert AdYMatrix.from_json(data) == A


def test_structure_constants_layout():
    A = AdYMatrix.from_abcef(77, 121, -49, 7, 11)
    sc = to_structure_constants(A)
    assert sc.get(0, 1) == (0, 0, -1)
    assert sc.get(2, 0) == (A.a11, A.a21, A.a31)
    assert sc.get(2, 1) == (A.a12, A.a22, A.a32)


def test_heisenberg_and_sl2_structure_constants():
    heis = to_structure_constants(AdYMatrix.from_abcef(0, 0, 0, 0, 0))
    assert killing_form(heis) == tuple((0, 0, 0) for _ in range(3))
    assert classify_bianchi(heis).label == "II"
    sl2 = to_structure_constants(AdYMatrix.from_abcef(1, 0, 0, 0, 0))
    assert classify_bianchi(sl2).label == "VIII"


@given(adY_matrices())
def test_jacobi_for_every_valid_matrix(A):
    assert all(not any(v) for _, v in jacobi_check(to_structure_constants(A)))


@given(adY_matrices())
def test_killing_closed_form_matches_trace_form(A):
    assert killing_closed_form(A) == killing_form(to_structure_constants(A))


def test_reorder_examples():
    c = Q(3, 7)
    assert reorder(AdYMatrix.from_abcef(1, 1, c, 0, 0)) == AdYMatrix.from_abcef(1, -c, -1, 0, 0)
    zero = AdYMatrix.from_abcef(0, 0, 0, 0, 0)
    assert reorder(zero) == zero


@given(adY_matrices())
def test_reorder_is_an_involution_realised_by_a_basis_swap(A):
    assert reorder(reorder(A)) == A
    swap = ((0, 1, 0), (1, 0, 0), (0, 0, -1))
    assert change_basis(to_structure_constants(A), swap) == to_structure_constants(reorder(A))


def test_scale_action_examples():
    A = AdYMatrix.from_abcef(2, 0, 0, 0, 0)
    assert scale_action(A, 1, 1) == A
    assert scale_action(A, Q(1, 2), 1) == AdYMatrix.from_abcef(1, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        scale_action(A, 0, 1)


@given(adY_matrices(), nonzero_rationals, nonzero_rationals)
def test_scale_action_is_a_basis_change(A, l1, l2):
    P = ((l1, 0, 0), (0, l2, 0), (0, 0, l1 * l2))
    assert change_basis(to_structure_constants(A), P) == to_structure_constants(scale_action(A, l1, l2))


@given(adY_matrices(), nonzero_rationals, nonzero_rationals, nonzero_rationals, nonzero_rationals)
def test_scale_action_composes(A, l1, l2, m1, m2):
    assert scale_action(scale_action(A, l1, l2), m1, m2) == scale_action(A, l1 * m1, l2 * m2)


# -- normal forms ---------------------------------------------------------------

def test_normalize_examples():
    assert normalize(AdYMatrix.from_abcef(0, 0, 0, 0, 0)).case_label == "heisenberg"
    nf = normalize(AdYMatrix.from_abcef(3, 0, 0, 0, 0))
    assert nf.case_label == "sl2-diag"
    assert nf.matrix == AdYMatrix.from_abcef(1, 0, 0, 0, 0)
    c = Q(-1, 4)
    nf = normalize(AdYMatrix.from_abcef(-c, -c, c, 1, 1))
    assert nf.key == ("solvable-ef", c)
    assert nf.matrix == AdYMatrix.from_abcef(Q(1, 4), Q(1, 4), Q(-1, 4), 1, 1)
    nf = normalize(AdYMatrix.from_abcef(0, 0, Q(-1, 2), 1, 0))
    assert nf.key == ("solvable-e", Q(-1, 2))
    assert bianchi_type(nf.matrix).label == "VII"


def test_normal_form_string():
    assert str(normalize(AdYMatrix.from_abcef(1, 1, 2, 0, 0))) == "family+ c=2 (1,1;2,-1;0,0)"


@pytest.mark.parametrize("label", LEAVES)
def test_every_leaf_is_its_own_normal_form(label):
    params = [Q(-3), Q(-1, 4), Q(1, 2), Q(2)] if label in PARAMETRIC_LEAVES else [None]
    if label == "family-":
        params = [Q(0), Q(1, 2), Q(1), Q(2)]
    for c in params:
        M = leaf_matrix(label, c)
        nf = normalize(M)
        assert nf.key == (label, c)
        assert not nf.reordered


def test_leaf_matrix_errors():
    with pytest.raises(ValueError):
        leaf_matrix("family+")
    with pytest.raises(ValueError):
        leaf_matrix("solvable-e", 0)
    with pytest.raises(ValueError):
        leaf_matrix("family-", -1)
    with pytest.raises(ValueError):
        leaf_matrix("nonsense", 1)


@given(adY_matrices(), nonzero_rationals, nonzero_rationals, st.booleans())
def test_normalize_is_constant_on_orbits(A, l1, l2, swap):
    B = scale_action(A, l1, l2)
    if swap:
        B = reorder(B)
    assert normalize(A).key == normalize(B).key
    qa, qb = curvature_direct(A), curvature_direct(B)
    assert sign(qa[0] * qa[1]) == sign(qb[0] * qb[1])


@given(adY_matrices())
def test_normalize_witness_and_curvature(A):
    nf = normalize(A)
    assert nf.witness_residual <= 1e-12
    # the witness scales are irrational in general, so the curvature of the
    # representative is compared through the sign of the scale-free product
    q, qn = curvature_direct(A), curvature_direct(nf.matrix)
    assert sign(q[0] * q[1]) == sign(qn[0] * qn[1])


def test_normalize_tie_breaking_is_stable():
    # partners (1,-1;c,-1), c<0 and (1,1;-c,-1) share one representative
    c = Q(-2)
    A = AdYMatrix.from_abcef(1, -1, c, 0, 0)
    B = reorder(A)
    assert normalize(A).key == normalize(B).key == ("family+", 2)
    # a32-only matrices are moved to a31 != 0
    assert normalize(AdYMatrix.from_abcef(0, 0, 0, 0, 1)).key == ("affr-e", None)
    assert normalize(AdYMatrix.from_abcef(0, 0, 0, 0, 1)).reordered


# -- Bianchi types -----------------------------------------------------------------

@pytest.mark.parametrize("abcef, label", [
    ((0, 1, 1, 0, 0), "VIII"),
    ((0, 1, -1, 0, 0), "IX"),
    ((0, -1, 1, 0, 0), "VIII"),
    ((1, 1, -2, 0, 0), "IX"),
    ((1, 1, 2, 0, 0), "VIII"),
    ((1, 1, -1, 0, 0), "VII0"),
    ((1, -1, 1, 0, 0), "VI0"),
    ((0, 0, 0, 1, 1), "III"),
    ((Q(1, 4), Q(1, 4), Q(-1, 4), 1, 1), "IV"),
    ((0, 0, Q(-1, 4), 1, 0), "IV"),
    ((0, 0, Q(-1, 2), 1, 0), "VII"),
    ((0, 0, Q(1, 2), 1, 0), "VI"),
])
def test_bianchi_type_examples(abcef, label):
    A = AdYMatrix.from_abcef(*abcef)
    assert bianchi_type(A).label == label


def test_bianchi_type_agrees_with_structure_constant_classifier():
    rng = random.Random(7)
    for _ in range(400):
        A = random_adY(rng)
        assert bianchi_type(A) == classify_bianchi(to_structure_constants(A)), A


@given(adY_matrices(), nonzero_rationals, nonzero_rationals)
def test_same_leaf_same_type(A, l1, l2):
    assume(A.entries != (0,) * 6)
    assert bianchi_type(A) == bianchi_type(scale_action(A, l1, l2))
