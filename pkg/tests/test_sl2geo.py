import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cartan_path.pathstruct import normalize, reorder
from cartan_path.sl2geo import (
    E,
    F,
    H,
    CausalType,
    ContactError,
    LightlikeError,
    LinePair,
    Sl2Vector,
    adjoint,
    bracket,
    causal_type,
    cross_ratio,
    locally_isomorphic,
    matrix_class,
    pair_to_path_structure,
    plane_type,
    q,
    random_pair,
    random_sl2_element,
    same_normal_form,
)
from cartan_path.strict import curvature_direct
from strategies import nonzero_rationals, small_rationals

Q = Fraction
T, L, S = CausalType.TIMELIKE, CausalType.LIGHTLIKE, CausalType.SPACELIKE

vectors = st.builds(Sl2Vector, small_rationals, small_rationals, small_rationals).filter(
    lambda v: not v.is_zero()
)


def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def matmul2(x, y):
    return [[sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def test_basis_matrices():
    assert H.matrix == ((1, 0), (0, -1))
    assert E.matrix == ((0, 1), (0, 0))
    assert F.matrix == ((0, 0), (1, 0))
    assert bracket(E, F) == H
    assert bracket(H, E) == 2 * E
    assert bracket(H, F) == -2 * F


@given(vectors, vectors)
def test_bracket_is_the_matrix_commutator(u, v):
    uv, vu = matmul2(u.matrix, v.matrix), matmul2(v.matrix, u.matrix)
    comm = [[uv[i][j] - vu[i][j] for j in range(2)] for i in range(2)]
    assert bracket(u, v) == Sl2Vector.from_matrix(comm)


def test_quadratic_form_examples():
    assert q(H) == 1 and causal_type(H) is S
    assert q(E - F) == -1 and causal_type(E - F) is T
    assert q(E) == 0 and causal_type(E) is L
    assert causal_type(E + F) is S
    with pytest.raises(ValueError):
        causal_type(Sl2Vector(0, 0, 0))


@given(vectors)
def test_q_is_minus_determinant_and_classifies_conjugacy(u):
    assert q(u) == -det2(u.matrix)
    expected = {T: "elliptic", L: "parabolic", S: "hyperbolic"}[causal_type(u)]
    assert matrix_class(u) == expected


@given(vectors, st.integers(0, 10 ** 6))
def test_q_is_adjoint_invariant(u, seed):
    g = random_sl2_element(random.Random(seed))
    assert det2(g) == 1
    assert q(adjoint(g, u)) == q(u)


def test_adjoint_rejects_singular_matrix():
    with pytest.raises(ValueError):
        adjoint(((1, 2), (2, 4)), H)


def test_plane_types():
    assert plane_type(LinePair(E, F)) is T
    assert plane_type(LinePair(H, E)) is L
    assert plane_type(LinePair(H, E + F)) is S


def test_line_pair_validation_and_canonical_form():
    with pytest.raises(ValueError):
        LinePair(H, 3 * H)
    with pytest.raises(ValueError):
        LinePair(Sl2Vector(0, 0, 0), H)
    assert LinePair(-2 * H, E) == LinePair(H, 5 * E)
    data = LinePair(Sl2Vector(2, 1, Q(1, 3)), F).to_json()
    assert data == {"D1": ["1", "1/2", "1/6"], "D2": ["0", "0", "1"]}
    assert LinePair.from_json(data).to_json() == data
    with pytest.raises(ValueError):
        LinePair.from_json({"D1": ["1", "0"], "D2": ["0", "1", "0"]})


def test_cross_ratio_examples():
    assert cross_ratio(LinePair(E + F, E - F)) == 0
    with pytest.raises(LightlikeError):
        cross_ratio(LinePair(E, H))


@given(vectors, vectors, nonzero_rationals, nonzero_rationals, st.integers(0, 10 ** 6))
def test_cross_ratio_invariance(u, v, s, t, seed):
    assume(u.canonical() != v.canonical())
    pair = LinePair(u, v)
    assume(plane_type(pair) is not L and q(u) != 0 and q(v) != 0)
    cr = cross_ratio(pair)
    assert cross_ratio(LinePair(s * u, t * v)) == cr
    g = random_sl2_element(random.Random(seed))
    assert cross_ratio(LinePair(adjoint(g, u), adjoint(g, v))) == cr


def test_adapted_cross_ratio_formula():
    rng = random.Random(5)
    seen = 0
    for _ in range(300):
        pair = random_pair(rng)
        A = pair_to_path_structure(pair)
        assert A.e == 0 and A.f == 0
        if A.b * A.c != 0:
            assert cross_ratio(pair) == -A.a ** 2 / (A.b * A.c)
            seen += 1
    assert seen > 100


def test_pair_to_path_structure_examples():
    A = pair_to_path_structure(LinePair(E, F))
    assert curvature_direct(A) == (0, 0)
    assert (A.a, A.b, A.c) == (-2, 0, 0)
    B = pair_to_path_structure(LinePair(H, E - F))
    assert curvature_direct(B) == (0, 0)
    assert (B.a, B.b, B.c) == (0, 4, 4)
    with pytest.raises(ContactError):
        pair_to_path_structure(LinePair(H, E))


def test_adapted_matrix_reproduces_killing_values():
    # kappa(X1,X1) = 2c, kappa(X2,X2) = -2b, kappa(X1,X2) = -2a up to the
    # factor between the adjoint and the fundamental trace forms
    rng = random.Random(9)
    for _ in range(100):
        pair = random_pair(rng)
        A = pair_to_path_structure(pair)
        k11, k12, k22 = pair.gram()
        ratio = {2 * A.c / k11 if k11 else None, -2 * A.b / k22 if k22 else None,
                 -2 * A.a / k12 if k12 else None} - {None}
        assert len(ratio) <= 1


def test_swapping_lines_is_the_reorder_involution():
    rng = random.Random(13)
    for _ in range(100):
        pair = random_pair(rng)
        assert pair_to_path_structure(pair.swapped()) == reorder(pair_to_path_structure(pair))


# -- local isomorphism -----------------------------------------------------------------

def test_case_one_all_lightlike():
    res = locally_isomorphic(LinePair(E, F), LinePair(E, Sl2Vector(1, 1, -1)))
    assert res.verdict and res.case == 1
    assert res.detail["both_flat"]


def test_case_two_matches_the_other_line_type():
    degenerate = LinePair(E, H)
    with pytest.raises(ContactError):
        locally_isomorphic(degenerate, degenerate)
    p1 = LinePair(E, E + F)            # lightlike + spacelike
    p2 = LinePair(E, E - F)            # lightlike + timelike
    assert plane_type(p1) is not L and plane_type(p2) is not L
    assert locally_isomorphic(p1, p1).verdict
    res = locally_isomorphic(p1, p2)
    assert res.case == 2 and not res.verdict


def test_case_three_compares_cross_ratios():
    p1 = LinePair(H, H + E + F)        # cr 1/2
    p2 = LinePair(H + E + F, H + 2 * (E + F))  # cr 9/10
    assert plane_type(p1) is S and plane_type(p2) is S
    assert cross_ratio(p1) == Q(1, 2) and cross_ratio(p2) == Q(9, 10)
    res = locally_isomorphic(p1, p2)
    assert res.case == 3 and not res.verdict
    assert locally_isomorphic(p1, p1.swapped()).verdict


def test_case_four_subcomponents():
    res = locally_isomorphic(LinePair(H, E - F), LinePair(E - F, H))
    assert res.case == 4 and res.verdict and res.subcomponent == "mixed"
    tt = LinePair(E - F, 2 * (E - F) + H)
    assert plane_type(tt) is T and tt.line_types() == (T, T)
    assert locally_isomorphic(tt, tt).subcomponent == "both-timelike"
    ss = LinePair(H, H + 2 * (E - F))
    assert plane_type(ss) is T and ss.line_types() == (S, T)


def test_reflexivity_and_symmetry():
    rng = random.Random(17)
    for _ in range(100):
        p1, p2 = random_pair(rng), random_pair(rng)
        assert locally_isomorphic(p1, p1).verdict
        assert locally_isomorphic(p1, p2).verdict == locally_isomorphic(p2, p1).verdict


def test_different_regimes_are_reported_without_case():
    res = locally_isomorphic(LinePair(E, F), LinePair(H, E - F))
    assert not res.verdict and res.case is None
    assert res.detail["both_flat"]


@given(st.integers(0, 10 ** 6))
def test_decision_matches_normal_forms(seed):
    rng = random.Random(seed)
    p1 = random_pair(rng)
    if rng.random() < 0.5:
        g = random_sl2_element(rng)
        p2 = LinePair(adjoint(g, p1.D1), adjoint(g, p1.D2))
    else:
        p2 = random_pair(rng)
    assert locally_isomorphic(p1, p2).verdict == same_normal_form(p1, p2)


def test_adjoint_orbits_are_isomorphic():
    rng = random.Random(19)
    for _ in range(100):
        p = random_pair(rng)
        g = random_sl2_element(rng)
        moved = LinePair(adjoint(g, p.D1), adjoint(g, p.D2))
        assert locally_isomorphic(p, moved).verdict
        assert normalize(pair_to_path_structure(p)).key == normalize(pair_to_path_structure(moved)).key
