"""Structure-group action on Cartan connection components and curvatures.

The group is the upper-triangular subgroup of ``SL(3)`` with elements::

    h = [[a, c,        e],
         [0, 1/(ab),   f],
         [0, 0,        b]]

acting by ``π -> h⁻¹ π h`` for constant ``h`` (the ``h⁻¹dh`` term vanishes).
Here ``π`` is the ``sl(3)``-valued form::

    [[φ + w,  φ²,   ψ     ],
     [ω¹,     -2w,  φ¹    ],
     [ω,      ω²,   -φ + w]]

Exact elements use ``Fraction``; the numeric reduction solver returns a
separate float-valued type so the two paths never mix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Sequence

from .algebra import SingularMatrixError, row_basis
from .exterior.forms import DifferentialRule, InvariantForm, wedge
from .pathstruct import random_rational
from .rational import format_rat, sign, to_rat

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GroupElement:
    a: Fraction
    b: Fraction
    c: Fraction = Fraction(0)
    e: Fraction = Fraction(0)
    f: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c", "e", "f"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))
        if self.a == 0 or self.b == 0:
            raise ValueError("group element needs a != 0 and b != 0")

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1, 1)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence]) -> "GroupElement":
        m = [[to_rat(x) for x in row] for row in m]
        if m[1][0] or m[2][0] or m[2][1]:
            raise ValueError("matrix is not upper triangular")
        g = cls(m[0][0], m[2][2], m[0][1], m[0][2], m[1][2])
        if m[1][1] != 1 / (g.a * g.b):
            raise ValueError("middle diagonal entry must equal 1/(ab)")
        return g

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        z = Fraction(0)
        return (
            (self.a, self.c, self.e),
            (z, 1 / (self.a * self.b), self.f),
            (z, z, self.b),
        )

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        m, n = self.matrix, other.matrix
        prod = [[sum(m[i][k] * n[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        return GroupElement.from_matrix(prod)

    def inverse(self) -> "GroupElement":
        a, b, c, e, f = self.a, self.b, self.c, self.e, self.f
        ai, bi, mid = 1 / a, 1 / b, a * b
        # back-substitution on the upper-triangular matrix
        ci = -c * mid / a
        fi = -f * mid / b
        ei = -(c * fi + e / b) / a
        return GroupElement(ai, bi, ci, ei, fi)

    def to_json(self) -> dict:
        return {k: format_rat(getattr(self, k)) for k in ("a", "b", "c", "e", "f")}


@dataclass(frozen=True)
class ConnectionComponents:
    """The eight components of the connection, as forms over one generator set."""

    omega: InvariantForm
    omega1: InvariantForm
    omega2: InvariantForm
    phi: InvariantForm
    w: InvariantForm
    phi1: InvariantForm
    phi2: InvariantForm
    psi: InvariantForm

    def __post_init__(self):
        ns = {getattr(self, fld.name).n for fld in fields(self)}
        if len(ns) != 1:
            raise ValueError("components must share one generator set")

    @property
    def n(self) -> int:
        return self.omega.n

    def as_matrix(self) -> tuple[tuple[InvariantForm, ...], ...]:
        return (
            (self.phi + self.w, self.phi2, self.psi),
            (self.omega1, -2 * self.w, self.phi1),
            (self.omega, self.omega2, -self.phi + self.w),
        )

    @classmethod
    def from_matrix(cls, m) -> "ConnectionComponents":
        trace = m[0][0] + m[1][1] + m[2][2]
        if trace:
            raise ValueError("connection matrix is not traceless")
        return cls(
            omega=m[2][0],
            omega1=m[1][0],
            omega2=m[2][1],
            phi=HALF * (m[0][0] - m[2][2]),
            w=-HALF * m[1][1],
            phi1=m[1][2],
            phi2=m[0][1],
            psi=m[0][2],
        )

    @classmethod
    def from_mapping(cls, k: dict) -> "ConnectionComponents":
        keys = ("ω", "ω¹", "ω²", "φ", "w", "φ¹", "φ²", "ψ")
        return cls(*(k[key] for key in keys))

    def items(self):
        return [(fld.name, getattr(self, fld.name)) for fld in fields(self)]


def transform_components(h: GroupElement, k: ConnectionComponents) -> ConnectionComponents:
    """The displayed closed-form action of ``h``, term by term."""
    a, b, c, e, f = h.a, h.b, h.c, h.e, h.f
    om, om1, om2 = k.omega, k.omega1, k.omega2
    phi, w, phi1, phi2, psi = k.phi, k.w, k.phi1, k.phi2, k.psi
    return ConnectionComponents(
        omega=(a / b) * om,
        omega1=a * a * b * om1 - a * a * f * om,
        omega2=(1 / (a * b * b)) * om2 + (c / b) * om,
        phi=phi - HALF * a * b * c * om1 - (f / (2 * b)) * om2 + (HALF * a * c * f - e / b) * om,
        w=w - HALF * a * b * c * om1 + (f / (2 * b)) * om2 + HALF * a * c * f * om,
        phi1=(b * b * a * phi1 - 3 * a * b * f * w + b * a * f * phi + b * a * e * om1
              - f * f * a * om2 - f * a * e * om),
        phi2=((1 / (b * a * a)) * phi2 + (3 * c / a) * w + (c / a) * phi - b * c * c * om1
              + (-e / (a * a * b * b) + c * f / (a * b)) * om2 + (-c * e / (a * b) + f * c * c) * om),
        psi=((b / a) * psi + (2 * e / a - b * c * f) * phi - b * c * e * om1
             + (-f * e / (a * b) + c * f * f) * om2 - c * b * b * phi1 + (f / a) * phi2
             + 3 * f * b * c * w + (-e * e / (a * b) + f * c * e) * om),
    )


def _conjugate(h: GroupElement, m):
    hm, hinv = h.matrix, h.inverse().matrix
    n = m[0][0].n
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            acc = InvariantForm.zero(n)
            for p in range(3):
                for q in range(3):
                    coeff = hinv[i][p] * hm[q][j]
                    if coeff:
                        acc = acc + coeff * m[p][q]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def conjugation_oracle(h: GroupElement, k: ConnectionComponents) -> ConnectionComponents:
    """``h⁻¹ π h`` computed entrywise, then read back into components."""
    return ConnectionComponents.from_matrix(_conjugate(h, k.as_matrix()))


def curvature_matrix(k: ConnectionComponents, rules: DifferentialRule):
    """``dπ + π∧π`` entrywise."""
    m = k.as_matrix()
    return tuple(
        tuple(rules.d(m[i][j]) + sum((wedge(m[i][p], m[p][j]) for p in range(3)), InvariantForm.zero(k.n))
              for j in range(3))
        for i in range(3)
    )


@dataclass(frozen=True)
class CurvatureTuple:
    Q1: object
    Q2: object
    U1: object = 0
    U2: object = 0

    def as_tuple(self):
        return (self.Q1, self.Q2, self.U1, self.U2)


def transform_curvature(h: GroupElement, q: CurvatureTuple) -> CurvatureTuple:
    a, b, c, f = h.a, h.b, h.c, h.f
    return CurvatureTuple(
        Q1=a * b ** 5 * q.Q1,
        Q2=q.Q2 / (a ** 5 * b),
        U1=(b / a ** 4) * (q.U1 - (f / b) * q.Q2),
        U2=(b ** 4 / a) * (q.U2 + a * b * c * q.Q1),
    )


def _coordinates(target: InvariantForm, basis: Sequence[InvariantForm]) -> list[Fraction]:
    """Exact coefficients expressing ``target`` in ``basis``; raises if not in the span."""
    keys = sorted({k for form in (target, *basis) for k in form.terms})
    cols = [[form.coefficient(*k) for k in keys] for form in basis]
    rows = [[cols[j][i] for j in range(len(basis))] + [target.coefficient(*keys[i])] for i in range(len(keys))]
    rref = row_basis(rows)
    nb = len(basis)
    coords = [Fraction(0)] * nb
    for r in rref:
        lead = next(i for i, x in enumerate(r) if x)
        if lead == nb:
            raise ValueError("form is not in the span of the given basis")
        coords[lead] = r[nb]
    # only valid when the basis forms are independent
    if len([r for r in rref if any(r[:nb])]) < nb:
        raise SingularMatrixError("basis forms are dependent")
    return coords


def curvature_from_forms(k: ConnectionComponents, rules: DifferentialRule) -> CurvatureTuple:
    """Read ``(Q1, Q2, U1, U2)`` off the curvature of ``k`` in its own coframe.

    Assumes the torsion and lower entries vanish, so that
    ``Φ¹ = Q1 ω∧ω²``, ``Φ² = Q2 ω∧ω¹`` and ``Ψ = (U1 ω¹ + U2 ω²)∧ω``.
    """
    Pi = curvature_matrix(k, rules)
    om, om1, om2 = k.omega, k.omega1, k.omega2
    (q1,) = _coordinates(Pi[1][2], [wedge(om, om2)])
    (q2,) = _coordinates(Pi[0][1], [wedge(om, om1)])
    u1, u2 = _coordinates(Pi[0][2], [wedge(om1, om), wedge(om2, om)])
    return CurvatureTuple(q1, q2, u1, u2)


def random_group_element(rng, bound: int = 5, den: int = 4) -> GroupElement:
    a = random_rational(rng, bound, den, 0)
    b = random_rational(rng, bound, den, 0)
    return GroupElement(a, b, *(random_rational(rng, bound, den) for _ in range(3)))


def random_components(rng, n: int = 3, bound: int = 5, den: int = 4) -> ConnectionComponents:
    return ConnectionComponents(*(
        InvariantForm.linear([random_rational(rng, bound, den) for _ in range(n)]) for _ in range(8)
    ))


# -- numeric reduction of (Q1, Q2) -------------------------------------------------

@dataclass(frozen=True)
class ReductionScale:
    """Float solution of ``a b^5 Q1 = 1`` and ``Q2 / (a^5 b) = epsilon``."""

    a: float
    b: float
    epsilon: int
    residual_q1: float
    residual_q2: float
    second_witness: tuple[float, float]
    note: str = ("stops at the (Q1, Q2) normalisation; the further S-coefficient "
                 "condition is outside this package")

    def to_json(self) -> dict:
        return {
            "a": repr(self.a), "b": repr(self.b), "epsilon": self.epsilon,
            "residual_q1": repr(self.residual_q1), "residual_q2": repr(self.residual_q2),
            "second_witness": [repr(x) for x in self.second_witness],
            "note": self.note,
        }


def reduction_scale_solve(Q1, Q2) -> ReductionScale:
    """Solve for the diagonal scale that sends ``(Q1, Q2)`` to ``(1, ±1)``.

    With ``L1 = ln|Q1|`` and ``L2 = ln|Q2|`` the moduli satisfy
    ``ln|a| = (L1 + 5 L2)/24`` and ``ln|b| = -(5 L1 + L2)/24``; the witness
    has ``a > 0`` and ``sign(b) = sign(Q1)``, and ``(-a, -b)`` is the other one.
    """
    q1, q2 = float(Q1), float(Q2)
    if not (math.isfinite(q1) and math.isfinite(q2)):
        raise ValueError("curvatures must be finite")
    if q1 == 0 or q2 == 0:
        raise ValueError("reduction needs Q1 != 0 and Q2 != 0; check flatness instead")
    eps = sign(q1) * sign(q2)
    L1, L2 = math.log(abs(q1)), math.log(abs(q2))
    a = math.exp((L1 + 5 * L2) / 24)
    b = math.copysign(math.exp(-(5 * L1 + L2) / 24), q1)
    r1 = abs(a * b ** 5 * q1 - 1)
    r2 = abs(q2 / (a ** 5 * b) - eps)
    return ReductionScale(a, b, eps, r1, r2, (-a, -b))
