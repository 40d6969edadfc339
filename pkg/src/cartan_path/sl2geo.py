"""Lorentzian geometry of sl(2, R) and invariant path structures on SL(2, R).

A vector ``(h, e, f)`` stands for ``h H + e E + f F``, that is the matrix
``[[h, e], [f, -h]]``. The quadratic form is ``q(u) = -det u = h^2 + e f``
with polarisation ``kappa(u, v) = h h' + (e f' + f e')/2``. The Killing
form of the adjoint representation is ``8 q``; every quantity used here
(causal types, plane types, cross-ratios) is invariant under rescaling
the form, so the factor never matters.

A pair of distinct lines ``(D1, D2)`` whose span is not lightlike gives
a left-invariant path structure with ``X_i`` spanning ``D_i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import SingularMatrixError, inverse, matvec
from .pathstruct import AdYMatrix, normalize, random_rational
from .rational import format_rat, to_rat
from .strict import curvature_direct


class CausalType(enum.Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"

    def __str__(self) -> str:
        return self.value


class ContactError(ValueError):
    """The two lines do not span a contact plane."""


class LightlikeError(ValueError):
    """A cross-ratio was requested for a pair containing a lightlike line."""


@dataclass(frozen=True)
class Sl2Vector:
    h: Fraction
    e: Fraction
    f: Fraction

    def __post_init__(self):
        for name in ("h", "e", "f"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.h, self.e, self.f)

    @property
    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.h, self.e), (self.f, -self.h))

    @classmethod
    def from_matrix(cls, m) -> "Sl2Vector":
        (p, r), (s, t) = m
        if to_rat(p) + to_rat(t) != 0:
            raise ValueError("matrix is not traceless")
        return cls(p, r, s)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "Sl2Vector") -> "Sl2Vector":
        return Sl2Vector(*(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "Sl2Vector") -> "Sl2Vector":
        return Sl2Vector(*(x - y for x, y in zip(self.coords, other.coords)))

    def __mul__(self, s) -> "Sl2Vector":
        s = to_rat(s)
        return Sl2Vector(*(s * x for x in self.coords))

    __rmul__ = __mul__

    def __neg__(self) -> "Sl2Vector":
        return Sl2Vector(*(-x for x in self.coords))

    def canonical(self) -> "Sl2Vector":
        """Representative of the line with first nonzero coordinate equal to 1."""
        lead = next((x for x in self.coords if x), None)
        if lead is None:
            raise ValueError("zero vector does not span a line")
        return Sl2Vector(*(x / lead for x in self.coords))

    def to_json(self) -> list[str]:
        return [format_rat(x) for x in self.coords]

    def __str__(self) -> str:
        return "(" + ",".join(format_rat(x) for x in self.coords) + ")"


H = Sl2Vector(1, 0, 0)
E = Sl2Vector(0, 1, 0)
F = Sl2Vector(0, 0, 1)


def q(u: Sl2Vector) -> Fraction:
    return u.h * u.h + u.e * u.f


def kappa(u: Sl2Vector, v: Sl2Vector) -> Fraction:
    return u.h * v.h + (u.e * v.f + u.f * v.e) / 2


def bracket(u: Sl2Vector, v: Sl2Vector) -> Sl2Vector:
    return Sl2Vector(
        u.e * v.f - u.f * v.e,
        2 * (u.h * v.e - u.e * v.h),
        2 * (u.f * v.h - u.h * v.f),
    )


def causal_type(u: Sl2Vector) -> CausalType:
    if u.is_zero():
        raise ValueError("causal type of the zero vector is undefined")
    value = q(u)
    if value < 0:
        return CausalType.TIMELIKE
    if value > 0:
        return CausalType.SPACELIKE
    return CausalType.LIGHTLIKE


def matrix_class(u: Sl2Vector) -> str:
    """Elliptic, parabolic or hyperbolic by the characteristic polynomial of ``u``.

    For a traceless 2x2 matrix the discriminant is ``-4 det u = 4 q(u)``.
    """
    (p, r), (s, t) = u.matrix
    disc = (p + t) ** 2 - 4 * (p * t - r * s)
    if disc < 0:
        return "elliptic"
    if disc > 0:
        return "hyperbolic"
    return "parabolic"


def adjoint(g: Sequence[Sequence], u: Sl2Vector) -> Sl2Vector:
    """``g u g^-1`` for an invertible rational 2x2 matrix ``g``."""
    (p, r), (s, t) = [[to_rat(x) for x in row] for row in g]
    dg = p * t - r * s
    if dg == 0:
        raise ValueError("g is singular")
    gi = ((t / dg, -r / dg), (-s / dg, p / dg))
    m = u.matrix
    gm = [[p * m[0][j] + r * m[1][j] for j in range(2)], [s * m[0][j] + t * m[1][j] for j in range(2)]]
    out = [[sum(gm[i][k] * gi[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    return Sl2Vector.from_matrix(out)


@dataclass(frozen=True)
class LinePair:
    """Two distinct projective lines, stored by canonical representatives."""

    D1: Sl2Vector
    D2: Sl2Vector
    raw: tuple[Sl2Vector, Sl2Vector] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.D1.is_zero() or self.D2.is_zero():
            raise ValueError("line generators must be nonzero")
        raw = self.raw or (self.D1, self.D2)
        d1, d2 = self.D1.canonical(), self.D2.canonical()
        if d1 == d2:
            raise ValueError("the two lines coincide")
        object.__setattr__(self, "D1", d1)
        object.__setattr__(self, "D2", d2)
        object.__setattr__(self, "raw", raw)

    @classmethod
    def of(cls, u, v) -> "LinePair":
        u = u if isinstance(u, Sl2Vector) else Sl2Vector(*u)
        v = v if isinstance(v, Sl2Vector) else Sl2Vector(*v)
        return cls(u, v)

    def swapped(self) -> "LinePair":
        return LinePair(self.D2, self.D1)

    def gram(self) -> tuple[Fraction, Fraction, Fraction]:
        x, y = self.D1, self.D2
        return kappa(x, x), kappa(x, y), kappa(y, y)

    def line_types(self) -> tuple[CausalType, CausalType]:
        return causal_type(self.D1), causal_type(self.D2)

    def to_json(self) -> dict:
        return {"D1": self.D1.to_json(), "D2": self.D2.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "LinePair":
        try:
            d1, d2 = data["D1"], data["D2"]
        except (KeyError, TypeError) as exc:
            raise ValueError('line pair JSON needs "D1" and "D2"') from exc
        if len(d1) != 3 or len(d2) != 3:
            raise ValueError("each line needs three coordinates (h, e, f)")
        return cls(Sl2Vector(*d1), Sl2Vector(*d2))

    def __str__(self) -> str:
        return f"[{self.D1}, {self.D2}]"


def plane_type(pair: LinePair) -> CausalType:
    """Timelike (Lorentzian), spacelike (definite) or lightlike (degenerate) span."""
    k11, k12, k22 = pair.gram()
    gram_det = k11 * k22 - k12 * k12
    if gram_det < 0:
        return CausalType.TIMELIKE
    if gram_det > 0:
        return CausalType.SPACELIKE
    return CausalType.LIGHTLIKE


def cross_ratio(pair: LinePair) -> Fraction:
    """``kappa12^2 / (kappa11 kappa22)``; homogeneous of degree 0 in each generator."""
    k11, k12, k22 = pair.gram()
    if k11 == 0 or k22 == 0:
        raise LightlikeError("cross-ratio is undefined for a lightlike line")
    return k12 * k12 / (k11 * k22)


def pair_to_path_structure(pair: LinePair) -> AdYMatrix:
    """``ad_Y`` in the adapted basis ``(X1, X2, Y = -[X1, X2])`` with ``X_i`` on ``D_i``."""
    if plane_type(pair) is CausalType.LIGHTLIKE:
        raise ContactError("lightlike plane: the distribution is integrable")
    x1, x2 = pair.D1, pair.D2
    y = -bracket(x1, x2)
    if y.is_zero():
        raise ContactError("commuting generators")
    basis = tuple(zip(x1.coords, x2.coords, y.coords))  # columns X1, X2, Y
    try:
        to_coords = inverse(basis)
    except SingularMatrixError as exc:
        raise ContactError("Y lies in the plane; not a contact pair") from exc
    c1 = matvec(to_coords, bracket(y, x1).coords)
    c2 = matvec(to_coords, bracket(y, x2).coords)
    # columns of ad_Y: [Y, X1] = a11 X1 + a21 X2 + a31 Y, [Y, X2] = a12 X1 + a22 X2 + a32 Y
    return AdYMatrix(c1[0], c2[0], c1[1], c2[1], c1[2], c2[2])


@dataclass(frozen=True)
class IsomorphismResult:
    verdict: bool
    case: int | None
    subcomponent: str | None
    detail: dict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "case": self.case,
                "subcomponent": self.subcomponent, "detail": self.detail}


def _regime(pair: LinePair) -> dict:
    t1, t2 = pair.line_types()
    plane = plane_type(pair)
    if plane is CausalType.LIGHTLIKE:
        raise ContactError(f"pair {pair} spans a lightlike plane")
    n_light = [t1, t2].count(CausalType.LIGHTLIKE)
    info = {"lines": [str(t1), str(t2)], "plane": str(plane)}
    if n_light == 2:
        info["case"] = 1
    elif n_light == 1:
        info["case"] = 2
        info["other"] = str(t2 if t1 is CausalType.LIGHTLIKE else t1)
    else:
        cr = cross_ratio(pair)
        info["cr"] = format_rat(cr)
        if plane is CausalType.SPACELIKE:
            info["case"] = 3
        else:
            info["case"] = 4
            if t1 == t2:
                info["subcomponent"] = f"both-{t1}"
            else:
                info["subcomponent"] = "mixed"
    A = pair_to_path_structure(pair)
    q1, q2 = curvature_direct(A)
    info["flat"] = q1 == 0 and q2 == 0
    return info


def locally_isomorphic(p1: LinePair, p2: LinePair) -> IsomorphismResult:
    """Decide local equivalence of the path structures of two line pairs.

    Swapping the two lines of a pair is allowed. The case number is the
    shared regime: all lines lightlike (1); one lightlike line in each pair
    (2); spacelike planes (3); timelike planes without lightlike lines (4).
    Pairs in different regimes are reported as inequivalent with no case.
    """
    r1, r2 = _regime(p1), _regime(p2)
    detail = {"pair1": r1, "pair2": r2, "both_flat": r1["flat"] and r2["flat"]}
    if r1["case"] != r2["case"]:
        return IsomorphismResult(False, None, None, detail)
    case = r1["case"]
    if case == 1:
        return IsomorphismResult(True, 1, None, detail)
    if case == 2:
        return IsomorphismResult(r1["other"] == r2["other"], 2, None, detail)
    if case == 3:
        return IsomorphismResult(r1["cr"] == r2["cr"], 3, None, detail)
    same_types = sorted(r1["lines"]) == sorted(r2["lines"])
    verdict = same_types and r1["cr"] == r2["cr"]
    sub = r1["subcomponent"] if r1["subcomponent"] == r2["subcomponent"] else None
    return IsomorphismResult(verdict, 4, sub, detail)


def same_normal_form(p1: LinePair, p2: LinePair) -> bool:
    """Independent route: compare orbit representatives of the two structures."""
    n1 = normalize(pair_to_path_structure(p1), with_witness=False)
    n2 = normalize(pair_to_path_structure(p2), with_witness=False)
    return n1.key == n2.key


def random_vector(rng, bound: int = 4, den: int = 3) -> Sl2Vector:
    while True:
        v = Sl2Vector(*(random_rational(rng, bound, den, 0.3) for _ in range(3)))
        if not v.is_zero():
            return v


def random_pair(rng, bound: int = 4, den: int = 3) -> LinePair:
    """A random pair of distinct lines spanning a contact (non-lightlike) plane."""
    while True:
        u, v = random_vector(rng, bound, den), random_vector(rng, bound, den)
        if u.canonical() == v.canonical():
            continue
        pair = LinePair(u, v)
        if plane_type(pair) is not CausalType.LIGHTLIKE:
            return pair


def random_sl2_element(rng, steps: int = 3):
    """Product of rational unipotent and diagonal factors (determinant 1)."""
    g = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for _ in range(steps):
        t = random_rational(rng, 3, 2, 0)
        kind = rng.randrange(3)
        if kind == 0:
            m = ((1, t), (0, 1))
        elif kind == 1:
            m = ((1, 0), (t, 1))
        else:
            m = ((t, 0), (0, 1 / t))
        g = tuple(tuple(sum(g[i][k] * m[k][j] for k in range(2)) for j in range(2)) for i in range(2))
    return g


__all__ = [
    "CausalType", "ContactError", "E", "F", "H", "IsomorphismResult", "LightlikeError", "LinePair",
    "Sl2Vector", "adjoint", "bracket", "causal_type", "cross_ratio", "kappa",
    "locally_isomorphic", "matrix_class", "pair_to_path_structure", "plane_type", "q",
    "random_pair", "random_sl2_element", "same_normal_form",
]
