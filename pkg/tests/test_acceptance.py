"""Exit criteria of the build, each at its stated sample size and tolerance."""

import random
import time
from fractions import Fraction

import pytest

from cartan_path.algebra import jacobi_check
from cartan_path.catalog import builtin_tables, leaf_samples, regenerate_tables
from cartan_path.exterior import flat_model_rules, verify_curvature_equations, verify_flat_model
from cartan_path.exterior.pipelines import section_components, shifted_rules
from cartan_path.pathstruct import (
    JacobiViolation,
    leaf_matrix,
    normalize,
    random_adY,
    random_rational,
    reorder,
    scale_action,
    to_structure_constants,
    validate,
)
from cartan_path.rational import sign
from cartan_path.sl2geo import (
    E,
    F,
    H,
    LinePair,
    adjoint,
    locally_isomorphic,
    pair_to_path_structure,
    random_pair,
    random_sl2_element,
    same_normal_form,
)
from cartan_path.strict import compute_strict, curvature_direct, curvature_via_embedding
from cartan_path.transform import (
    ConnectionComponents,
    CurvatureTuple,
    conjugation_oracle,
    curvature_from_forms,
    random_components,
    random_group_element,
    reduction_scale_solve,
    transform_components,
)

pytestmark = pytest.mark.acceptance
SEED = 20240611


def test_criterion_1_table_reproduction(acceptance_log):
    start = time.perf_counter()
    _, report = regenerate_tables()
    elapsed = time.perf_counter() - start

    rows = builtin_tables()
    per_row: dict[int, int] = {}
    for _, _, A in leaf_samples():
        for row in rows:
            if row.parametric and row.solve_param(A)[0]:
                per_row[row.index] = per_row.get(row.index, 0) + 1
    family_rows = [r.index for r in rows if r.parametric]
    enough = all(per_row.get(i, 0) >= 5 for i in family_rows)

    def row_label(A):
        (row,) = [r for r in rows if r.solve_param(A)[0]]
        return row.bianchi

    boundaries = (
        row_label(leaf_matrix("solvable-e", Fraction(-1, 4))) == "IV"
        and row_label(leaf_matrix("solvable-ef", Fraction(-1, 4))) == "IV"
        and row_label(leaf_matrix("family+", -1)) == "VII0"
        and row_label(leaf_matrix("family-", 1)) == "VI0"
    )
    passed = report.ok and len(rows) == 22 and enough and boundaries and elapsed < 1.0
    acceptance_log(1, "table reproduction", passed,
                   f"22 rows exact, min family samples {min(per_row[i] for i in family_rows)}, "
                   f"{report.samples} leaf samples, {elapsed:.2f}s")
    assert passed, report.lines()


def test_criterion_2_cross_formula_oracle(acceptance_log):
    rng = random.Random(SEED)
    start = time.perf_counter()
    bad = []
    n = 1000
    for _ in range(n):
        A = random_adY(rng)
        direct = curvature_direct(A)
        embedded = curvature_via_embedding(compute_strict(A))
        q1, q2, _, _, rep = verify_curvature_equations(A)
        if not (direct == embedded == (q1, q2)) or not rep.ok:
            bad.append(A)
    elapsed = time.perf_counter() - start
    passed = not bad and elapsed < 30
    acceptance_log(2, "cross-formula oracle", passed, f"{n} matrices, {len(bad)} mismatches, {elapsed:.1f}s")
    assert passed, bad[:3]


def test_criterion_3_transformation_laws(acceptance_log):
    rng = random.Random(SEED + 1)
    n_conj, n_ext = 500, 100
    conj_bad = 0
    for _ in range(n_conj):
        h = random_group_element(rng)
        k = random_components(rng, n=rng.choice((3, 4, 8)))
        conj_bad += transform_components(h, k) != conjugation_oracle(h, k)
    ext_bad = 0
    for _ in range(n_ext):
        A = random_adY(rng)
        q1, q2, u1, u2, rep = verify_curvature_equations(A)
        k = ConnectionComponents.from_mapping(section_components(A, rep.values["G"]))
        h = random_group_element(rng)
        moved = curvature_from_forms(transform_components(h, k), shifted_rules(A))
        ok = (moved.Q1 == h.a * h.b ** 5 * q1 and moved.Q2 == q2 / (h.a ** 5 * h.b)
              and curvature_from_forms(k, shifted_rules(A)) == CurvatureTuple(q1, q2, u1, u2))
        ext_bad += not ok
    passed = conj_bad == 0 and ext_bad == 0
    acceptance_log(3, "transformation-law oracle", passed,
                   f"{n_conj} conjugation pairs, {n_ext} exterior cases, {conj_bad + ext_bad} mismatches")
    assert passed


def test_criterion_4_flat_model(acceptance_log):
    rep = verify_flat_model()
    perturbed = verify_flat_model(flat_model_rules(drop=(0, (1, 2))))
    passed = rep.ok and len(rep.checks) == 8 and not perturbed.ok
    acceptance_log(4, "flat-model self-test", passed, "8 generators, d²=0; perturbed rules detected")
    assert passed, rep.lines()


def test_criterion_5_orbit_invariance(acceptance_log):
    rng = random.Random(SEED + 2)
    n = 500
    leaf_bad = sign_bad = 0
    for _ in range(n):
        A = random_adY(rng)
        l1, l2 = random_rational(rng, 5, 4, 0), random_rational(rng, 5, 4, 0)
        B = scale_action(A, l1, l2)
        if rng.random() < 0.5:
            B = reorder(B)
        leaf_bad += normalize(A).key != normalize(B).key
        qa, qb = curvature_direct(A), curvature_direct(B)
        sign_bad += sign(qa[0] * qa[1]) != sign(qb[0] * qb[1])
    passed = leaf_bad == 0 and sign_bad == 0
    acceptance_log(5, "orbit invariance", passed, f"{n} orbits, {leaf_bad} leaf and {sign_bad} sign mismatches")
    assert passed


def test_criterion_6_reduction_solver(acceptance_log):
    rng = random.Random(SEED + 3)
    n, tol = 1000, 1e-12
    worst = 0.0
    eps_bad = 0
    for _ in range(n):
        q1 = rng.choice((-1, 1)) * 10 ** rng.uniform(-6, 6)
        q2 = rng.choice((-1, 1)) * 10 ** rng.uniform(-6, 6)
        r = reduction_scale_solve(q1, q2)
        worst = max(worst, abs(r.a * r.b ** 5 * q1 - 1), abs(q2 / (r.a ** 5 * r.b) - r.epsilon))
        eps_bad += r.epsilon != sign(q1) * sign(q2)
    passed = worst <= tol and eps_bad == 0
    acceptance_log(6, "reduction solver", passed, f"{n} pairs, max residual {worst:.2e} <= {tol:g}")
    assert passed


def test_criterion_7_sl2_consistency(acceptance_log):
    rng = random.Random(SEED + 4)
    n = 200
    bad = 0
    for i in range(n):
        p1 = random_pair(rng)
        if i % 2:
            g = random_sl2_element(rng)
            p2 = LinePair(adjoint(g, p1.D1), adjoint(g, p1.D2))
            if rng.random() < 0.5:
                p2 = p2.swapped()
        else:
            p2 = random_pair(rng)
        bad += locally_isomorphic(p1, p2).verdict != same_normal_form(p1, p2)
    both_lightlike = curvature_direct(pair_to_path_structure(LinePair(E, F)))
    orthogonal = curvature_direct(pair_to_path_structure(LinePair(H, E - F)))
    passed = bad == 0 and both_lightlike == (0, 0) and orthogonal == (0, 0)
    acceptance_log(7, "SL(2,R) consistency", passed,
                   f"{n} pairs, {bad} disagreements; both flat bullets give Q1=Q2=0")
    assert passed


def test_criterion_8_jacobi(acceptance_log):
    rng = random.Random(SEED + 5)
    n = 1000
    bad = 0
    for _ in range(n):
        A = random_adY(rng)
        bad += any(any(v) for _, v in jacobi_check(to_structure_constants(A)))
    fixtures = {
        "a11 + a22": (1, 0, 0, 0, 0, 0),
        "a31*a12 - a32*a11": (0, 1, 0, 0, 1, 0),
        "a31*a22 - a32*a21": (0, 0, 1, 0, 0, 1),
    }
    detected = 0
    for name, raw in fixtures.items():
        try:
            validate(raw)
        except JacobiViolation as exc:
            detected += [f for f, _ in exc.failures] == [name]
    passed = bad == 0 and detected == 3
    acceptance_log(8, "Jacobi property", passed, f"{n} matrices valid, {detected}/3 violations detected")
    assert passed
