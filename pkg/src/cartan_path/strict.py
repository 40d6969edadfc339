"""Strict-structure invariants of homogeneous path structures and their curvature.

Fixing the invariant contact form ``theta`` (dual to ``Y``) turns an
invariant path structure into a strict one. After the coframe shift
``theta1 -> theta1 - f theta, theta2 -> theta2 + e theta`` the strict
connection form ``upsilon`` and torsions ``tau1 = tau12 theta2``,
``tau2 = tau21 theta1`` have constant coefficients, as do all first
Bianchi-layer coefficients. Two independent formulas then give the
Cartan curvatures ``Q1, Q2``:

* :func:`curvature_direct`, closed in ``(a, b, c, e, f)``;
* :func:`curvature_via_embedding`, assembled from the strict invariants.

On the section all structure functions are constant, so every
derivative-layer coefficient that is a derivative of a constant
(``R_i``, ``R_ij``) vanishes, while ``W^i_j`` come from ``dW^i = 0``:
``W1_j = 3 W1 u_j`` and ``W2_j = -3 W2 u_j`` where ``u_j`` are the
coefficients of ``upsilon``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .pathstruct import AdYMatrix
from .rational import format_rat

THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class StrictInvariants:
    upsilon_coeffs: tuple[Fraction, Fraction, Fraction]  # on (theta, theta1, theta2)
    tau12: Fraction
    tau21: Fraction
    R: Fraction
    W1: Fraction
    W2: Fraction
    S11: Fraction
    S12: Fraction
    S21: Fraction
    S22: Fraction
    W1_0: Fraction
    W1_1: Fraction
    W1_2: Fraction
    W2_0: Fraction
    W2_1: Fraction
    W2_2: Fraction
    R0: Fraction
    R1: Fraction
    R2: Fraction
    R11: Fraction
    R12: Fraction
    R22: Fraction
    E1: Fraction
    E2: Fraction
    c_embed: Fraction

    def relation_residuals(self) -> dict[str, Fraction]:
        """Identities every consistent instance satisfies; all values must be zero."""
        return {
            "S11 - tau12*tau21": self.S11 - self.tau12 * self.tau21,
            "S22 - tau12*tau21": self.S22 - self.tau12 * self.tau21,
            "R0 - (W1_2 - W2_1)": self.R0 - (self.W1_2 - self.W2_1),
            "c_embed + R/4": self.c_embed + self.R / 4,
            "E1 - (-2 W2 + R2/2)": self.E1 - (-2 * self.W2 + self.R2 / 2),
            "E2 - (2 W1 - R1/2)": self.E2 - (2 * self.W1 - self.R1 / 2),
        }

    def to_json(self) -> dict:
        out = {}
        for k, v in asdict(self).items():
            out[k] = [format_rat(x) for x in v] if isinstance(v, tuple) else format_rat(v)
        return out


def compute_strict(A: AdYMatrix) -> StrictInvariants:
    a, b, c, e, f = A.a, A.b, A.c, A.e, A.f
    u = (-THIRD * a, -THIRD * e, THIRD * f)
    R = -THIRD * (a - 2 * e * f)
    W1 = Fraction(2, 3) * c * f
    W2 = -Fraction(2, 3) * b * e
    tau12, tau21 = -b, -c
    W1_0, W1_1, W1_2 = (3 * W1 * x for x in u)
    W2_0, W2_1, W2_2 = (-3 * W2 * x for x in u)
    zero = Fraction(0)
    R1 = R2 = zero
    return StrictInvariants(
        upsilon_coeffs=u,
        tau12=tau12,
        tau21=tau21,
        R=R,
        W1=W1,
        W2=W2,
        S11=b * c,
        S12=-2 * a * b,
        S21=2 * a * c,
        S22=b * c,
        W1_0=W1_0, W1_1=W1_1, W1_2=W1_2,
        W2_0=W2_0, W2_1=W2_1, W2_2=W2_2,
        R0=W1_2 - W2_1,
        R1=R1, R2=R2,
        R11=zero, R12=zero, R22=zero,
        E1=-2 * W2 + R2 / 2,
        E2=2 * W1 - R1 / 2,
        c_embed=-R / 4,
    )


def curvature_direct(A: AdYMatrix) -> tuple[Fraction, Fraction]:
    a, b, c, e, f = A.a, A.b, A.c, A.e, A.f
    q1 = -a * (Fraction(3, 2) * b - THIRD * f * f)
    q2 = -a * (Fraction(3, 2) * c + THIRD * e * e)
    return q1, q2


def curvature_via_embedding(si: StrictInvariants) -> tuple[Fraction, Fraction]:
    q1 = si.S12 + Fraction(3, 2) * si.R * si.tau12 + 2 * si.W2_2 - HALF * si.R22
    q2 = -si.S21 + Fraction(3, 2) * si.R * si.tau21 - 2 * si.W1_1 + HALF * si.R11
    return q1, q2


@dataclass(frozen=True)
class Flatness:
    Q1: Fraction
    Q2: Fraction
    U1: Fraction
    U2: Fraction
    verdict: str

    U_NOTE = "U1, U2 are extracted by the exterior pipeline (implementation-derived values)"

    def to_json(self) -> dict:
        return {
            "Q1": format_rat(self.Q1), "Q2": format_rat(self.Q2),
            "U1": format_rat(self.U1), "U2": format_rat(self.U2),
            "verdict": self.verdict, "note": self.U_NOTE,
        }


def flatness_indicator(A: AdYMatrix) -> Flatness:
    from .exterior.pipelines import verify_curvature_equations

    q1, q2 = curvature_direct(A)
    _, _, u1, u2, report = verify_curvature_equations(A)
    report.raise_if_failed()
    if q1 == 0 and q2 == 0:
        verdict = "fully-flat-candidate" if u1 == 0 and u2 == 0 else "curvature-flat"
    else:
        verdict = "not-flat"
    return Flatness(q1, q2, u1, u2, verdict)
