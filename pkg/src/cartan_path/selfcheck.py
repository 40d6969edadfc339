"""Randomised consistency suites behind ``cartan-path self-check``."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import jacobi_check
from .catalog import regenerate_tables
from .exterior import rules_from_adY, verify_curvature_equations, verify_flat_model, verify_structure_equations
from .exterior.pipelines import section_components, shifted_rules
from .pathstruct import normalize, random_adY, random_rational, reorder, scale_action, to_structure_constants
from .rational import sign
from .sl2geo import LinePair, adjoint, locally_isomorphic, random_pair, random_sl2_element, same_normal_form
from .strict import compute_strict, curvature_direct, curvature_via_embedding
from .transform import (
    ConnectionComponents,
    CurvatureTuple,
    conjugation_oracle,
    curvature_from_forms,
    random_components,
    random_group_element,
    reduction_scale_solve,
    transform_components,
    transform_curvature,
)

ENV_CASES = "CARTAN_PATH_SELFCHECK_CASES"
DEFAULT_CASES = 1000


def cases_from_env() -> int:
    raw = os.environ.get(ENV_CASES)
    if raw is None or raw.strip() == "":
        return DEFAULT_CASES
    n = int(raw)
    if n < 1:
        raise ValueError(f"{ENV_CASES} must be positive")
    return n


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def line(self) -> str:
        extra = f" ({self.detail})" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.cases} case(s){extra}"


def _nonzero(rng) -> Fraction:
    return random_rational(rng, 5, 4, 0)


def suite_flat_model() -> SuiteResult:
    rep = verify_flat_model()
    return SuiteResult("flat model d²=0", rep.ok, 8, "" if rep.ok else "; ".join(l for l, _ in rep.failures()))


def suite_tables() -> SuiteResult:
    _, rep = regenerate_tables()
    return SuiteResult("table regeneration", rep.ok, rep.samples, "" if rep.ok else "; ".join(rep.lines()[1:]))


def suite_curvature(rng, n: int) -> SuiteResult:
    for _ in range(n):
        A = random_adY(rng)
        direct = curvature_direct(A)
        embedded = curvature_via_embedding(compute_strict(A))
        q1, q2, _, _, rep = verify_curvature_equations(A)
        if not (direct == embedded == (q1, q2)) or not rep.ok:
            return SuiteResult("curvature three-way oracle", False, n, f"mismatch at {A}")
        if not verify_structure_equations(A).ok:
            return SuiteResult("curvature three-way oracle", False, n, f"structure equations fail at {A}")
    return SuiteResult("curvature three-way oracle", True, n)


def suite_conjugation(rng, n: int) -> SuiteResult:
    for _ in range(n):
        h = random_group_element(rng)
        k = random_components(rng, n=rng.choice((3, 4)))
        if transform_components(h, k) != conjugation_oracle(h, k):
            return SuiteResult("adjoint action vs conjugation", False, n, f"mismatch for {h}")
    return SuiteResult("adjoint action vs conjugation", True, n)


def suite_curvature_transform(rng, n: int) -> SuiteResult:
    for _ in range(n):
        A = random_adY(rng)
        q1, q2, u1, u2, rep = verify_curvature_equations(A)
        k = ConnectionComponents.from_mapping(section_components(A, rep.values["G"]))
        h = random_group_element(rng)
        got = curvature_from_forms(transform_components(h, k), shifted_rules(A))
        want = transform_curvature(h, CurvatureTuple(q1, q2, u1, u2))
        if got != want:
            return SuiteResult("curvature transformation laws", False, n, f"mismatch at {A}, {h}")
    return SuiteResult("curvature transformation laws", True, n)


def suite_orbits(rng, n: int) -> SuiteResult:
    for _ in range(n):
        A = random_adY(rng)
        B = scale_action(A, _nonzero(rng), _nonzero(rng))
        if rng.random() < 0.5:
            B = reorder(B)
        if normalize(A).key != normalize(B).key:
            return SuiteResult("normal-form orbit invariance", False, n, f"{A} vs {B}")
        qa, qb = curvature_direct(A), curvature_direct(B)
        if sign(qa[0] * qa[1]) != sign(qb[0] * qb[1]):
            return SuiteResult("normal-form orbit invariance", False, n, f"sign(Q1Q2) changed at {A}")
    return SuiteResult("normal-form orbit invariance", True, n)


def suite_reduction(rng, n: int, tol: float = 1e-12) -> SuiteResult:
    worst = 0.0
    for _ in range(n):
        q1 = rng.choice((-1, 1)) * 10 ** rng.uniform(-6, 6)
        q2 = rng.choice((-1, 1)) * 10 ** rng.uniform(-6, 6)
        r = reduction_scale_solve(q1, q2)
        worst = max(worst, r.residual_q1, r.residual_q2)
    return SuiteResult("reduction solver residuals", worst <= tol, n, f"max residual {worst:.2e}")


def suite_sl2(rng, n: int) -> SuiteResult:
    for _ in range(n):
        p1 = random_pair(rng)
        if rng.random() < 0.5:
            g = random_sl2_element(rng)
            p2 = LinePair(adjoint(g, p1.D1), adjoint(g, p1.D2))
            if rng.random() < 0.5:
                p2 = p2.swapped()
        else:
            p2 = random_pair(rng)
        if locally_isomorphic(p1, p2).verdict != same_normal_form(p1, p2):
            return SuiteResult("sl(2) decision vs normal forms", False, n, f"{p1} vs {p2}")
    return SuiteResult("sl(2) decision vs normal forms", True, n)


def suite_jacobi(rng, n: int) -> SuiteResult:
    for _ in range(n):
        A = random_adY(rng)
        if any(any(v) for _, v in jacobi_check(to_structure_constants(A))):
            return SuiteResult("Jacobi identity", False, n, f"fails at {A}")
        if rules_from_adY(A).d_squared_failures():
            return SuiteResult("Jacobi identity", False, n, f"d² != 0 at {A}")
    return SuiteResult("Jacobi identity", True, n)


def run_all(seed: int = 0, cases: int | None = None) -> list[SuiteResult]:
    n = cases_from_env() if cases is None else cases
    rng = random.Random(seed)
    return [
        suite_flat_model(),
        suite_tables(),
        suite_curvature(rng, n),
        suite_conjugation(rng, max(1, n // 2)),
        suite_curvature_transform(rng, max(1, n // 10)),
        suite_orbits(rng, max(1, n // 2)),
        suite_reduction(rng, n),
        suite_sl2(rng, max(1, n // 5)),
        suite_jacobi(rng, n),
    ]
