"""Three-dimensional Lie algebras given by structure constants.

Vectors are 3-tuples and matrices are 3-tuples of row 3-tuples, all with
``Fraction`` entries. Basis indices are 0-based internally and 1-based in
the JSON format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import format_rat, parse_rat, sign, to_rat

Vec3 = tuple[Fraction, Fraction, Fraction]
Mat3 = tuple[Vec3, Vec3, Vec3]

ZERO = Fraction(0)
PAIRS = ((0, 1), (0, 2), (1, 2))


class SingularMatrixError(ValueError):
    pass


# -- small dense linear algebra ------------------------------------------------

def vec(*xs) -> Vec3:
    if len(xs) == 1:
        xs = tuple(xs[0])
    if len(xs) != 3:
        raise ValueError("Vec3 needs three entries")
    return tuple(to_rat(x) for x in xs)


def mat(rows) -> Mat3:
    rows = tuple(tuple(to_rat(x) for x in r) for r in rows)
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("Mat3 needs 3x3 entries")
    return rows


def identity() -> Mat3:
    one, z = Fraction(1), ZERO
    return ((one, z, z), (z, one, z), (z, z, one))


def diag(x, y, z) -> Mat3:
    x, y, z = to_rat(x), to_rat(y), to_rat(z)
    return ((x, ZERO, ZERO), (ZERO, y, ZERO), (ZERO, ZERO, z))


def transpose(m: Mat3) -> Mat3:
    return tuple(zip(*m))


def matmul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def matvec(m: Mat3, v: Sequence[Fraction]) -> Vec3:
    return tuple(sum(m[i][k] * v[k] for k in range(3)) for i in range(3))


def trace(m: Mat3) -> Fraction:
    return m[0][0] + m[1][1] + m[2][2]


def det(m: Mat3) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def inverse(m: Mat3) -> Mat3:
    d = det(m)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    cof = [[ZERO] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    # inverse = adjugate / det, adjugate = cofactor transpose
    return tuple(tuple(cof[j][i] / d for j in range(3)) for i in range(3))


def solve(m: Mat3, v: Sequence[Fraction]) -> Vec3:
    return matvec(inverse(m), v)


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(row_basis(rows))


def row_basis(rows: Iterable[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """Reduced row-echelon basis of the span of ``rows`` (exact)."""
    work = [list(map(Fraction, r)) for r in rows]
    basis: list[list[Fraction]] = []
    ncols = len(work[0]) if work else 0
    col = 0
    while work and col < ncols:
        pivot = next((r for r in work if r[col] != 0), None)
        if pivot is None:
            col += 1
            continue
        work.remove(pivot)
        pivot = [x / pivot[col] for x in pivot]
        work = [[x - r[col] * p for x, p in zip(r, pivot)] for r in work]
        basis = [[x - b[col] * p for x, p in zip(b, pivot)] for b in basis]
        basis.append(pivot)
        col += 1
    return [tuple(b) for b in basis]


# -- structure constants -------------------------------------------------------

@dataclass(frozen=True)
class StructureConstants:
    """Brackets ``[e_i, e_j] = sum_k c^k_ij e_k`` for ``i < j``.

    ``entries`` is a canonical sorted tuple of ``((i, j), (c^0, c^1, c^2))``
    holding only the nonzero brackets, so equality is structural.
    """

    entries: tuple[tuple[tuple[int, int], Vec3], ...]

    @classmethod
    def from_brackets(cls, brackets: Mapping[tuple[int, int], Sequence]) -> "StructureConstants":
        table: dict[tuple[int, int], list[Fraction]] = {}
        for (i, j), coeffs in brackets.items():
            if i == j:
                if any(to_rat(x) != 0 for x in coeffs):
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            s = 1
            if i > j:
                i, j, s = j, i, -1
            if (i, j) not in PAIRS:
                raise ValueError(f"basis index out of range: {(i, j)}")
            acc = table.setdefault((i, j), [ZERO] * 3)
            for k, x in enumerate(vec(coeffs)):
                acc[k] += s * x
        entries = tuple(sorted((p, tuple(v)) for p, v in table.items() if any(v)))
        return cls(entries)

    def get(self, i: int, j: int) -> Vec3:
        if i == j:
            return (ZERO, ZERO, ZERO)
        lookup = dict(self.entries)
        if i < j:
            return lookup.get((i, j), (ZERO, ZERO, ZERO))
        return tuple(-x for x in lookup.get((j, i), (ZERO, ZERO, ZERO)))

    def coefficient(self, k: int, i: int, j: int) -> Fraction:
        return self.get(i, j)[k]

    def ad(self, i: int) -> Mat3:
        """Matrix of ``ad_{e_i}``; column ``j`` holds ``[e_i, e_j]``."""
        cols = [self.get(i, j) for j in range(3)]
        return tuple(tuple(cols[j][k] for j in range(3)) for k in range(3))

    def ad_vector(self, u: Sequence[Fraction]) -> Mat3:
        mats = [self.ad(i) for i in range(3)]
        return tuple(tuple(sum(u[i] * mats[i][r][c] for i in range(3)) for c in range(3)) for r in range(3))

    def to_json(self) -> dict:
        return {
            "dim": 3,
            "brackets": [
                {"i": i + 1, "j": j + 1, "coeffs": [format_rat(x) for x in v]}
                for (i, j), v in self.entries
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "StructureConstants":
        if data.get("dim") != 3:
            raise ValueError("only dim 3 is supported")
        brackets = {}
        for item in data.get("brackets", []):
            i, j = int(item["i"]) - 1, int(item["j"]) - 1
            coeffs = [parse_rat(x) for x in item["coeffs"]]
            if (i, j) in brackets:
                raise ValueError(f"duplicate bracket ({i + 1},{j + 1})")
            brackets[(i, j)] = coeffs
        return cls.from_brackets(brackets)


def bracket(sc: StructureConstants, u: Sequence, v: Sequence) -> Vec3:
    u, v = vec(u), vec(v)
    out = [ZERO, ZERO, ZERO]
    for i, j in PAIRS:
        w = u[i] * v[j] - u[j] * v[i]
        if w:
            for k, x in enumerate(sc.get(i, j)):
                out[k] += w * x
    return tuple(out)


def jacobi_check(sc: StructureConstants) -> list[tuple[tuple[int, int, int], Vec3]]:
    """Nonvanishing cyclic sums ``[[e_i,e_j],e_k] + cyclic`` over basis triples."""
    basis = [tuple(Fraction(int(a == b)) for b in range(3)) for a in range(3)]
    violations = []
    for i, j, k in itertools.combinations(range(3), 3):
        ei, ej, ek = basis[i], basis[j], basis[k]
        terms = (
            bracket(sc, bracket(sc, ei, ej), ek),
            bracket(sc, bracket(sc, ej, ek), ei),
            bracket(sc, bracket(sc, ek, ei), ej),
        )
        total = tuple(sum(t[m] for t in terms) for m in range(3))
        if any(total):
            violations.append(((i, j, k), total))
    return violations


def killing_form(sc: StructureConstants) -> Mat3:
    ads = [sc.ad(i) for i in range(3)]
    return tuple(tuple(trace(matmul(ads[i], ads[j])) for j in range(3)) for i in range(3))


def change_basis(sc: StructureConstants, P) -> StructureConstants:
    """Constants in the basis whose ``i``-th vector is column ``i`` of ``P``."""
    P = mat(P)
    Pinv = inverse(P)
    cols = [tuple(P[r][i] for r in range(3)) for i in range(3)]
    brackets = {}
    for i, j in PAIRS:
        brackets[(i, j)] = matvec(Pinv, bracket(sc, cols[i], cols[j]))
    return StructureConstants.from_brackets(brackets)


# -- Bianchi typing straight from the brackets ---------------------------------

@dataclass(frozen=True)
class BianchiType:
    """Bianchi label; ``invariant`` is trace^2/det of the action on the
    derived algebra, set only for the one-parameter classes VI and VII."""

    label: str
    invariant: Fraction | None = None

    def __str__(self) -> str:
        if self.invariant is None:
            return self.label
        return f"{self.label}[tr^2/det={format_rat(self.invariant)}]"


def is_negative_definite(m: Mat3) -> bool:
    neg = tuple(tuple(-x for x in r) for r in m)
    minors = (neg[0][0], neg[0][0] * neg[1][1] - neg[0][1] * neg[1][0], det(neg))
    return all(x > 0 for x in minors)


def classify_bianchi(sc: StructureConstants) -> BianchiType:
    """Bianchi class from derived algebra, unimodularity and the derived action."""
    images = [bracket(sc, *pair) for pair in (((1, 0, 0), (0, 1, 0)),
                                              ((1, 0, 0), (0, 0, 1)),
                                              ((0, 1, 0), (0, 0, 1)))]
    derived = row_basis(images)
    dim = len(derived)
    if dim == 0:
        return BianchiType("I")
    if dim == 3:
        return BianchiType("IX" if is_negative_definite(killing_form(sc)) else "VIII")
    if dim == 1:
        z = derived[0]
        central = all(not any(bracket(sc, z, e)) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
        return BianchiType("II" if central else "III")

    n1, n2 = derived
    x = next(e for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)) if rank([n1, n2, e]) == 3)
    x = vec(x)
    if any(bracket(sc, n1, n2)):
        raise ValueError("two-dimensional derived algebra is not abelian")
    basis = (n1, n2, x)
    to_coords = inverse(transpose(basis))
    cols = [matvec(to_coords, bracket(sc, x, n)) for n in (n1, n2)]
    if any(c[2] for c in cols):
        raise ValueError("derived algebra is not an ideal")
    m = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
    t = m[0][0] + m[1][1]
    d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if t == 0:
        return BianchiType("VII0" if d > 0 else "VI0")
    disc = t * t - 4 * d
    if disc > 0:
        return BianchiType("VI", t * t / d)
    if disc < 0:
        return BianchiType("VII", t * t / d)
    scalar = m[0][1] == 0 and m[1][0] == 0 and m[0][0] == m[1][1]
    return BianchiType("V" if scalar else "IV")


def killing_signature(sc: StructureConstants) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of the Killing form, by exact LDL."""
    m = [list(r) for r in killing_form(sc)]
    pos = neg = 0
    n = 3
    idx = list(range(n))
    # symmetric Gaussian elimination with diagonal pivoting; a zero diagonal
    # with a nonzero off-diagonal entry is fixed by adding that row/column
    while idx:
        p = next((i for i in idx if m[i][i] != 0), None)
        if p is None:
            pair = next(((i, j) for i in idx for j in idx if i != j and m[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        piv = m[p][p]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(p)
        for i in idx:
            f = m[i][p] / piv
            for k in range(n):
                m[i][k] -= f * m[p][k]
        for i in idx:
            m[p][i] = m[i][p] = ZERO
    return pos, neg, 3 - pos - neg


__all__ = [
    "BianchiType", "Mat3", "SingularMatrixError", "StructureConstants", "Vec3",
    "bracket", "change_basis", "classify_bianchi", "det", "diag", "identity", "inverse",
    "is_negative_definite", "jacobi_check", "killing_form", "killing_signature", "mat",
    "matmul", "matvec", "rank", "row_basis", "sign", "solve", "trace", "transpose", "vec",
]
