"""Constant-coefficient exterior algebra over a fixed set of 1-form generators.

A form is stored as a map from strictly increasing generator-index tuples
to nonzero :class:`~fractions.Fraction` coefficients. The empty tuple is
the degree-0 part. Generators are indexed; names are only used for
printing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..algebra import SingularMatrixError, row_basis
from ..rational import format_rat, to_rat


class GeneratorMismatch(ValueError):
    """Operands live over different generator sets."""


class UndefinedGenerator(KeyError):
    """A rule is missing for a generator that ``d`` needs."""


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted index tuple of ``left ∧ right``; sign 0 on repeats."""
    if set(left) & set(right):
        return 0, ()
    # count inversions between the two sorted blocks
    inversions = sum(1 for y in right for x in left if x > y)
    sign = -1 if inversions % 2 else 1
    return sign, tuple(sorted(left + right))


class InvariantForm:
    """Immutable element of the exterior algebra on ``n`` generators."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], object] | None = None):
        if n < 0:
            raise ValueError("generator count must be non-negative")
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, coeff in (terms or {}).items():
            key = tuple(key)
            if any(not 0 <= i < n for i in key):
                raise IndexError(f"generator index out of range in {key} (n={n})")
            if any(key[k] >= key[k + 1] for k in range(len(key) - 1)):
                # normalise an unsorted monomial by its permutation sign
                if len(set(key)) != len(key):
                    continue
                sign, key = _sort_sign(key)
                coeff = sign * to_rat(coeff)
            coeff = to_rat(coeff)
            total = clean.get(key, Fraction(0)) + coeff
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self.n = n
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, n: int) -> "InvariantForm":
        return cls(n)

    @classmethod
    def constant(cls, value, n: int) -> "InvariantForm":
        return cls(n, {(): value})

    @classmethod
    def generator(cls, i: int, n: int) -> "InvariantForm":
        return cls(n, {(i,): 1})

    @classmethod
    def linear(cls, coeffs: Sequence, n: int | None = None) -> "InvariantForm":
        """The 1-form ``sum coeffs[i] * gen_i``."""
        n = len(coeffs) if n is None else n
        return cls(n, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, indices: Iterable[int], coeff, n: int) -> "InvariantForm":
        return cls(n, {tuple(indices): coeff})

    # inspection
    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def coefficient(self, *indices: int) -> Fraction:
        key = tuple(indices)
        if len(set(key)) != len(key):
            return Fraction(0)
        sign, key = _sort_sign(key)
        return sign * self._terms.get(key, Fraction(0))

    def degrees(self) -> set[int]:
        return {len(k) for k in self._terms}

    @property
    def degree(self) -> int:
        """Degree of a homogeneous nonzero form (0 for the zero form)."""
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def part(self, degree: int) -> "InvariantForm":
        return InvariantForm(self.n, {k: v for k, v in self._terms.items() if len(k) == degree})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic
    def _check(self, other: "InvariantForm") -> None:
        if not isinstance(other, InvariantForm):
            raise TypeError(f"expected InvariantForm, got {type(other).__name__}")
        if other.n != self.n:
            raise GeneratorMismatch(f"generator sets differ: n={self.n} vs n={other.n}")

    def __add__(self, other: "InvariantForm") -> "InvariantForm":
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return InvariantForm(self.n, out)

    def __neg__(self) -> "InvariantForm":
        return InvariantForm(self.n, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "InvariantForm") -> "InvariantForm":
        return self + (-other)

    def __mul__(self, scalar) -> "InvariantForm":
        if isinstance(scalar, InvariantForm):
            return wedge(self, scalar)
        s = to_rat(scalar)
        return InvariantForm(self.n, {k: s * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "InvariantForm") -> "InvariantForm":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"e{i}" for i in range(self.n)]
        parts = []
        for key in sorted(self._terms, key=lambda k: (len(k), k)):
            coeff = self._terms[key]
            mono = "∧".join(names[i] for i in key)
            if not mono:
                parts.append(format_rat(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rat(coeff)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"InvariantForm(n={self.n}, {self.format()})"


def _sort_sign(key: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Bubble-sort ``key`` and return the permutation sign with the sorted tuple."""
    items = list(key)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return sign, tuple(items)


def wedge(alpha: InvariantForm, beta: InvariantForm) -> InvariantForm:
    alpha._check(beta)
    out: dict[tuple[int, ...], Fraction] = {}
    for ka, va in alpha._terms.items():
        for kb, vb in beta._terms.items():
            sign, key = _merge_sign(ka, kb)
            if sign:
                out[key] = out.get(key, Fraction(0)) + sign * va * vb
    return InvariantForm(alpha.n, out)


def wedge_all(forms: Iterable[InvariantForm], n: int) -> InvariantForm:
    result = InvariantForm.constant(1, n)
    for form in forms:
        result = wedge(result, form)
    return result


@dataclass(frozen=True)
class DifferentialRule:
    """Exterior derivatives of the generators, each a 2-form."""

    n: int
    images: tuple[InvariantForm | None, ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.images) != self.n:
            raise ValueError(f"need {self.n} generator images, got {len(self.images)}")
        for i, img in enumerate(self.images):
            if img is None:
                continue
            if img.n != self.n:
                raise GeneratorMismatch(f"image of generator {i} lives on n={img.n}")
            if img and img.degrees() != {2}:
                raise ValueError(f"image of generator {i} is not a 2-form")
        if self.names and len(self.names) != self.n:
            raise ValueError("names must match the generator count")

    @classmethod
    def from_mapping(cls, n: int, rules: Mapping[int, InvariantForm], names: Sequence[str] = ()) -> "DifferentialRule":
        return cls(n, tuple(rules.get(i) for i in range(n)), tuple(names))

    def label(self, i: int) -> str:
        return self.names[i] if self.names else f"e{i}"

    def fmt(self, form: InvariantForm) -> str:
        return form.format(self.names or None)

    def generator(self, i: int) -> InvariantForm:
        return InvariantForm.generator(i, self.n)

    def gens(self) -> list[InvariantForm]:
        return [self.generator(i) for i in range(self.n)]

    def d(self, alpha: InvariantForm) -> InvariantForm:
        return d(alpha, self)

    def d_squared_failures(self) -> list[tuple[int, InvariantForm]]:
        """Generators ``i`` with ``d(d(gen_i)) != 0``, paired with the residual."""
        out = []
        for i, img in enumerate(self.images):
            if img is None:
                continue
            dd = d(img, self)
            if dd:
                out.append((i, dd))
        return out


def d(alpha: InvariantForm, rules: DifferentialRule) -> InvariantForm:
    """Exterior derivative by the graded Leibniz rule; constants are closed."""
    if alpha.n != rules.n:
        raise GeneratorMismatch(f"form on n={alpha.n}, rules on n={rules.n}")
    n = alpha.n
    total = InvariantForm.zero(n)
    for key, coeff in alpha._terms.items():
        for pos, gen in enumerate(key):
            img = rules.images[gen]
            if img is None:
                raise UndefinedGenerator(f"no rule for generator {rules.label(gen)}")
            left = InvariantForm.monomial(key[:pos], 1, n)
            right = InvariantForm.monomial(key[pos + 1:], 1, n)
            term = wedge(wedge(left, img), right)
            total = total + ((-1) ** pos * coeff) * term
    return total


def substitute(alpha: InvariantForm, images: Sequence[InvariantForm]) -> InvariantForm:
    """Replace generator ``i`` by the 1-form ``images[i]`` and expand."""
    if len(images) != alpha.n:
        raise ValueError("one image per generator required")
    m = images[0].n if images else 0
    total = InvariantForm.zero(m)
    for key, coeff in alpha._terms.items():
        total = total + coeff * wedge_all((images[i] for i in key), m)
    return total


def _inverse(P: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(P)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(P)]
    rref = row_basis(aug)
    if len(rref) < n or any(rref[i][i] != 1 for i in range(n)):
        raise SingularMatrixError("coframe change is not invertible")
    return [list(r[n:]) for r in rref]


def change_coframe(rules: DifferentialRule, new_in_old: Sequence[Sequence], names: Sequence[str] = ()) -> DifferentialRule:
    """Rules for the coframe ``new_i = sum_j P[i][j] old_j``, expressed in the new generators."""
    P = tuple(tuple(to_rat(x) for x in row) for row in new_in_old)
    n = rules.n
    Pinv = _inverse(P)
    old_in_new = [InvariantForm.linear(Pinv[j], n) for j in range(n)]
    images = []
    for i in range(n):
        d_old = InvariantForm.zero(n)
        for j in range(n):
            if P[i][j]:
                d_old = d_old + P[i][j] * rules.images[j]
        images.append(substitute(d_old, old_in_new))
    return DifferentialRule(n, tuple(images), tuple(names) or rules.names)
