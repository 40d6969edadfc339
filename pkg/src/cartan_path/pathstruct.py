"""Invariant path structures in an adapted basis.

A left-invariant path structure on a 3D Lie group is encoded by a basis
``(X1, X2, Y)`` of its Lie algebra with ``X_i`` spanning the two line
fields and ``Y = -[X1, X2]``. The structure is determined by the 3x2
matrix of ``ad_Y`` restricted to ``span(X1, X2)``::

    [Y, X1] = a11 X1 + a21 X2 + a31 Y
    [Y, X2] = a12 X1 + a22 X2 + a32 Y

Notation bridge used throughout the package (display form ``(a,b;c,-a;e,f)``):

    =====  =====
    a      a11
    b      a12
    c      a21
    -a     a22
    e      a31
    f      a32
    =====  =====

Rescaling ``X1 -> l1 X1, X2 -> l2 X2`` (hence ``Y -> l1 l2 Y``) and the swap
``(X1, X2, Y) -> (X2, X1, -Y)`` preserve the structure up to reordering
the two line fields. :func:`normalize` picks a unique representative of
every orbit using only scale-invariant rational functions, so it never
needs square roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import BianchiType, StructureConstants, is_negative_definite
from .rational import format_rat, parse_rat, sign, to_rat

ONE = Fraction(1)
ZERO = Fraction(0)
QUARTER = Fraction(1, 4)


class JacobiViolation(ValueError):
    """Raised when six entries do not satisfy the adapted-basis Jacobi constraints."""

    def __init__(self, failures: list[tuple[str, Fraction]]):
        self.failures = failures
        detail = "; ".join(f"{name} = {format_rat(r)} != 0" for name, r in failures)
        super().__init__(f"Jacobi constraint violated: {detail}")


def jacobi_residuals(a11, a12, a21, a22, a31, a32) -> list[tuple[str, Fraction]]:
    return [
        ("a11 + a22", a11 + a22),
        ("a31*a12 - a32*a11", a31 * a12 - a32 * a11),
        ("a31*a22 - a32*a21", a31 * a22 - a32 * a21),
    ]


@dataclass(frozen=True)
class AdYMatrix:
    a11: Fraction
    a12: Fraction
    a21: Fraction
    a22: Fraction
    a31: Fraction
    a32: Fraction

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22", "a31", "a32"):
            object.__setattr__(self, name, to_rat(getattr(self, name)))
        failures = [(n, r) for n, r in jacobi_residuals(*self.entries) if r != 0]
        if failures:
            raise JacobiViolation(failures)

    @classmethod
    def from_abcef(cls, a, b, c, e, f) -> "AdYMatrix":
        a = to_rat(a)
        return cls(a, b, c, -a, e, f)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return (self.a11, self.a12, self.a21, self.a22, self.a31, self.a32)

    @property
    def rows(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return ((self.a11, self.a12), (self.a21, self.a22), (self.a31, self.a32))

    # short names: (a, b, c, e, f) = (a11, a12, a21, a31, a32)
    a = property(lambda self: self.a11)
    b = property(lambda self: self.a12)
    c = property(lambda self: self.a21)
    e = property(lambda self: self.a31)
    f = property(lambda self: self.a32)

    def __str__(self) -> str:
        r = [format_rat(x) for x in self.entries]
        return f"({r[0]},{r[1]};{r[2]},{r[3]};{r[4]},{r[5]})"

    def to_json(self) -> dict:
        return {"ad_Y": [[format_rat(x) for x in row] for row in self.rows]}

    @classmethod
    def from_json(cls, data: Mapping | Sequence) -> "AdYMatrix":
        rows = data["ad_Y"] if isinstance(data, Mapping) else data
        return validate(parse_rows(rows))


def parse_rows(rows) -> list[Fraction]:
    if not isinstance(rows, (list, tuple)) or len(rows) != 3:
        raise ValueError("ad_Y must be a list of three rows")
    out = []
    for row in rows:
        if not isinstance(row, (list, tuple)) or len(row) != 2:
            raise ValueError("each ad_Y row must hold two entries")
        out.extend(parse_rat(x) if isinstance(x, str) else to_rat(x) for x in row)
    return out


def validate(raw: Sequence) -> AdYMatrix:
    """Accept six rationals (flat, or three rows of two) as an :class:`AdYMatrix`."""
    flat = list(raw)
    if len(flat) == 3 and all(isinstance(r, (list, tuple)) for r in flat):
        flat = [x for r in flat for x in r]
    if len(flat) != 6:
        raise ValueError(f"expected six entries, got {len(flat)}")
    return AdYMatrix(*(to_rat(x) for x in flat))


def to_structure_constants(A: AdYMatrix) -> StructureConstants:
    """Brackets in the ordered basis ``(X1, X2, Y)``."""
    return StructureConstants.from_brackets({
        (0, 1): (0, 0, -1),
        (2, 0): (A.a11, A.a21, A.a31),
        (2, 1): (A.a12, A.a22, A.a32),
    })


def reorder(A: AdYMatrix) -> AdYMatrix:
    """Swap the two line fields: ``(X1, X2, Y) -> (X2, X1, -Y)``."""
    return AdYMatrix(-A.a22, -A.a21, -A.a12, -A.a11, A.a32, A.a31)


def scale_action(A: AdYMatrix, l1, l2) -> AdYMatrix:
    """Effect of ``X1 -> l1 X1, X2 -> l2 X2``."""
    l1, l2 = to_rat(l1), to_rat(l2)
    if l1 == 0 or l2 == 0:
        raise ValueError("scale factors must be nonzero")
    return AdYMatrix(
        l1 * l2 * A.a11, l2 * l2 * A.a12,
        l1 * l1 * A.a21, l1 * l2 * A.a22,
        l1 * A.a31, l2 * A.a32,
    )


# -- normal forms ---------------------------------------------------------------

HEISENBERG = "heisenberg"
SL2_DIAG = "sl2-diag"
SL2_OFFDIAG = "sl2-offdiag"
SL2_OFFDIAG_SPACELIKE = "sl2-offdiag-spacelike"
SU2_ROT = "su2-rot"
FAMILY_PLUS = "family+"
FAMILY_MINUS = "family-"
EUCLID = "euclid-vii0"
POINCARE = "poincare-vi0"
AFFR_E = "affr-e"
AFFR_EF = "affr-ef"
SOLVABLE_E = "solvable-e"
SOLVABLE_EF = "solvable-ef"

LEAVES = (
    HEISENBERG, SL2_DIAG, SL2_OFFDIAG, SL2_OFFDIAG_SPACELIKE, SU2_ROT,
    FAMILY_PLUS, FAMILY_MINUS, EUCLID, POINCARE, AFFR_E, AFFR_EF, SOLVABLE_E, SOLVABLE_EF,
)

PARAMETRIC_LEAVES = (FAMILY_PLUS, FAMILY_MINUS, SOLVABLE_E, SOLVABLE_EF)

_FIXED = {
    HEISENBERG: (0, 0, 0, 0, 0, 0),
    SL2_DIAG: (1, 0, 0, -1, 0, 0),
    SL2_OFFDIAG: (0, 1, 1, 0, 0, 0),
    SL2_OFFDIAG_SPACELIKE: (0, -1, 1, 0, 0, 0),
    SU2_ROT: (0, 1, -1, 0, 0, 0),
    EUCLID: (0, 1, 0, 0, 0, 0),
    POINCARE: (0, -1, 0, 0, 0, 0),
    AFFR_E: (0, 0, 0, 0, 1, 0),
    AFFR_EF: (0, 0, 0, 0, 1, 1),
}


def leaf_matrix(label: str, c=None) -> AdYMatrix:
    """Canonical matrix of a leaf; ``c`` is required for the parametric leaves."""
    if label in _FIXED:
        return AdYMatrix(*_FIXED[label])
    if c is None:
        raise ValueError(f"leaf {label} needs a parameter")
    c = to_rat(c)
    if label == FAMILY_PLUS:
        return AdYMatrix(1, 1, c, -1, 0, 0)
    if label == FAMILY_MINUS:
        if c < 0:
            raise ValueError("family- is only canonical for c >= 0")
        return AdYMatrix(1, -1, c, -1, 0, 0)
    if c == 0:
        raise ValueError(f"{label} requires c != 0")
    if label == SOLVABLE_E:
        return AdYMatrix(0, 0, c, 0, 1, 0)
    if label == SOLVABLE_EF:
        return AdYMatrix(-c, -c, c, c, 1, 1)
    raise ValueError(f"unknown leaf {label!r}")


@dataclass(frozen=True)
class NormalForm:
    """Orbit representative of an invariant path structure.

    ``scale_invariants`` maps a name to the exact rational function of the
    input that pins the leaf. ``witness`` is a floating-point ``(l1, l2)``
    such that ``scale_action`` of the (possibly reordered) input lands on
    the canonical matrix; it is side data, never used in exact paths.
    """

    case_label: str
    parameter: Fraction | None
    reordered: bool
    scale_invariants: tuple[tuple[str, Fraction], ...] = ()
    witness: tuple[float, float] | None = field(default=None, compare=False)
    witness_residual: float | None = field(default=None, compare=False)

    @property
    def matrix(self) -> AdYMatrix:
        return leaf_matrix(self.case_label, self.parameter)

    @property
    def key(self) -> tuple[str, Fraction | None]:
        return (self.case_label, self.parameter)

    def __str__(self) -> str:
        p = "" if self.parameter is None else f" c={format_rat(self.parameter)}"
        return f"{self.case_label}{p} {self.matrix}"


def _canonical(A: AdYMatrix) -> tuple[str, Fraction | None, bool, tuple]:
    a, b, c, e, f = A.a, A.b, A.c, A.e, A.f
    if e != 0 or f != 0:
        reordered = False
        if e == 0:
            A = reorder(A)
            a, b, c, e, f = A.a, A.b, A.c, A.e, A.f
            reordered = True
        cbar = c / (e * e)
        inv = (("a21/a31^2", cbar),)
        if c == 0:
            return (AFFR_E if f == 0 else AFFR_EF), None, reordered, inv
        return (SOLVABLE_E if f == 0 else SOLVABLE_EF), cbar, reordered, inv

    if a != 0:
        if b == 0 and c == 0:
            return SL2_DIAG, None, False, (("a11", a),)
        reordered = False
        if b == 0:
            A = reorder(A)
            a, b, c = A.a, A.b, A.c
            reordered = True
        s = sign(b)
        cbar = abs(b) * c / (a * a)
        inv = (("sign(a12)", Fraction(s)), ("|a12|*a21/a11^2", cbar))
        if s < 0 and cbar < 0:
            # the swapped basis lands in family+ with parameter -cbar
            return FAMILY_PLUS, -cbar, not reordered, inv
        return (FAMILY_PLUS if s > 0 else FAMILY_MINUS), cbar, reordered, inv

    sb, sc_ = sign(b), sign(c)
    inv = (("sign(a12)", Fraction(sb)), ("sign(a21)", Fraction(sc_)))
    if sb == 0 and sc_ == 0:
        return HEISENBERG, None, False, ()
    if sc_ == 0:
        return (EUCLID if sb > 0 else POINCARE), None, False, inv
    if sb == 0:
        return (EUCLID if sc_ < 0 else POINCARE), None, True, inv
    if sb > 0 and sc_ > 0:
        return SL2_OFFDIAG, None, False, inv
    if sb < 0 and sc_ < 0:
        return SL2_OFFDIAG, None, True, inv
    if sb > 0:
        return SU2_ROT, None, False, inv
    return SL2_OFFDIAG_SPACELIKE, None, False, inv


def _witness(A: AdYMatrix, target: AdYMatrix, reordered: bool) -> tuple[tuple[float, float], float]:
    src = reorder(A) if reordered else A
    a, b, c, e, f = (float(x) for x in (src.a, src.b, src.c, src.e, src.f))
    if e != 0:
        l1 = 1.0 / e
        l2 = 1.0 / f if f != 0 else 1.0
    elif a != 0:
        if b != 0:
            l2 = 1.0 / math.sqrt(abs(b))
        else:
            l2 = 1.0
        l1 = float(target.a) / (a * l2)
    else:
        l2 = 1.0 / math.sqrt(abs(b)) if b != 0 else 1.0
        l1 = 1.0 / math.sqrt(abs(c)) if c != 0 else 1.0
    scaled = (l1 * l2 * a, l2 * l2 * b, l1 * l1 * c, -l1 * l2 * a, l1 * e, l2 * f)
    resid = max(abs(x - float(y)) / max(1.0, abs(float(y))) for x, y in zip(scaled, target.entries))
    return (l1, l2), resid


def normalize(A: AdYMatrix, with_witness: bool = True) -> NormalForm:
    """Leaf and exact parameter of the orbit of ``A`` under rescaling and reordering.

    Conventions for picking one representative among reorder partners:

    * with ``ad_Y`` leaving the contact plane, the representative has ``a31 != 0``;
    * with ``a11 != 0`` the representative has ``a12 != 0``; the partner pair
      ``(1,-1;c,-1), c<0`` and ``(1,1;-c,-1)`` is represented by the latter;
    * with ``a11 = 0`` a single nonzero off-diagonal entry is moved to ``a12``,
      and the sign pattern ``a12 < 0, a21 < 0`` is swapped to ``(0,1;1,0)``.
    """
    label, param, reordered, inv = _canonical(A)
    nf = NormalForm(label, param, reordered, inv)
    if not with_witness:
        return nf
    target = nf.matrix
    (l1, l2), resid = _witness(A, target, reordered)
    if resid > 1e-12:
        raise ArithmeticError(f"scale witness residual {resid:.3g} exceeds 1e-12 for {A}")
    return NormalForm(label, param, reordered, inv, (l1, l2), resid)


# -- Bianchi type via the leaf --------------------------------------------------

def killing_closed_form(A: AdYMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Killing form in the adapted basis from its closed-form entries."""
    a, b, c, e, f = A.a, A.b, A.c, A.e, A.f
    k11 = 2 * c + e * e
    k22 = -2 * b + f * f
    k33 = 2 * (a * a + b * c)
    k12 = -2 * a + e * f
    k13 = -a * e - c * f
    k23 = -b * e + a * f
    return ((k11, k12, k13), (k12, k22, k23), (k13, k23, k33))


_LEAF_TYPES = {
    HEISENBERG: "II",
    SL2_DIAG: "VIII",
    SL2_OFFDIAG: "VIII",
    SL2_OFFDIAG_SPACELIKE: "VIII",
    SU2_ROT: "IX",
    EUCLID: "VII0",
    POINCARE: "VI0",
    AFFR_E: "III",
    AFFR_EF: "III",
}


def bianchi_type(A: AdYMatrix) -> BianchiType:
    """Bianchi type read off the normal-form leaf and its parameter."""
    nf = normalize(A, with_witness=False)
    label, c = nf.case_label, nf.parameter
    if label in _LEAF_TYPES:
        return BianchiType(_LEAF_TYPES[label])
    if label in (SOLVABLE_E, SOLVABLE_EF):
        if c == -QUARTER:
            return BianchiType("IV")
        return BianchiType("VI" if c > -QUARTER else "VII", -1 / c)
    # family (1, +-1; c, -1): simple unless the Killing form degenerates
    s = 1 if label == FAMILY_PLUS else -1
    if 1 + s * c == 0:
        return BianchiType("VII0" if s > 0 else "VI0")
    kappa = killing_closed_form(nf.matrix)
    return BianchiType("IX" if is_negative_definite(kappa) else "VIII")


def display(A: AdYMatrix) -> str:
    return str(A)


def random_rational(rng, bound: int = 9, den: int = 6, zero_weight: float = 0.2) -> Fraction:
    if rng.random() < zero_weight:
        return ZERO
    value = ZERO
    while value == 0:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, den))
    return value


def random_adY(rng, bound: int = 9, den: int = 6) -> AdYMatrix:
    """A random Jacobi-valid matrix; degenerate strata are sampled on purpose.

    For ``(e, f) != 0`` the constraints force ``(a, b, c) = t (ef, f^2, -e^2)``
    unless ``f = 0``, where ``c`` is free and ``a = b = 0``.
    """
    rr = lambda: random_rational(rng, bound, den)  # noqa: E731
    if rng.random() < 0.5:
        return AdYMatrix.from_abcef(rr(), rr(), rr(), 0, 0)
    e, f = rr(), rr()
    if e == 0 and f == 0:
        e = Fraction(rng.choice((-1, 1)), rng.randint(1, den))
    if f == 0:
        return AdYMatrix.from_abcef(0, 0, rr(), e, 0)
    t = rr()
    return AdYMatrix.from_abcef(t * e * f, t * f * f, -t * e * e, e, f)


__all__ = [
    "AdYMatrix", "JacobiViolation", "LEAVES", "NormalForm", "PARAMETRIC_LEAVES",
    "bianchi_type", "jacobi_residuals", "killing_closed_form", "leaf_matrix", "normalize",
    "parse_rows", "random_adY", "random_rational", "reorder", "scale_action", "to_structure_constants", "validate",
]
