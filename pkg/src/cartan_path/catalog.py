"""Reference tables of invariant path structures and their regeneration.

:func:`builtin_tables` holds the published classification rows (with two
supplementary rows for orbits the published tables omit).
:func:`regenerate_tables` rebuilds the rows from the normal-form leaves,
types each sample with the structure-constant Bianchi classifier and
diffs the result against the built-in rows.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import classify_bianchi
from .pathstruct import LEAVES, PARAMETRIC_LEAVES, AdYMatrix, leaf_matrix, to_structure_constants
from .rational import format_rat, parse_rat, to_rat
from .strict import curvature_direct

VAR = "c"


# -- polynomials in the family parameter ----------------------------------------

@dataclass(frozen=True)
class Poly:
    """Polynomial in ``c`` with exact coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        cs = [to_rat(x) for x in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, x) -> "Poly":
        return cls((x,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return self.degree <= 0

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __call__(self, c=None) -> Fraction:
        if c is None:
            if not self.is_constant():
                raise ValueError("parameter required")
            return self.coefficient(0)
        c = to_rat(c)
        total = Fraction(0)
        for coeff in reversed(self.coeffs):
            total = total * c + coeff
        return total

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coefficient(k) + other.coefficient(k) for k in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + other.scale(-1)

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return Poly(tuple(out))

    def scale(self, s) -> "Poly":
        s = to_rat(s)
        return Poly(tuple(s * x for x in self.coeffs))

    @classmethod
    def interpolate(cls, points: Sequence[tuple[Fraction, Fraction]]) -> "Poly":
        """Lagrange interpolation through distinct nodes."""
        total = Poly()
        for i, (xi, yi) in enumerate(points):
            term = Poly.const(yi)
            for j, (xj, _) in enumerate(points):
                if j != i:
                    term = term * Poly((-xj, 1)) * (1 / (xi - xj))
            total = total + term
        return total

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            x = self.coeffs[k]
            if x == 0:
                continue
            mono = "" if k == 0 else (VAR if k == 1 else f"{VAR}^{k}")
            if not mono:
                body = format_rat(abs(x))
            elif abs(x) == 1:
                body = mono
            else:
                body = f"{format_rat(abs(x))}*{mono}"
            sign = "-" if x < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    _TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*?)?(c(?:\^(\d+))?)?$")

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Inverse of :meth:`format`; accepts integer/rational literals too."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        s = s.replace("-", "+-")
        coeffs: dict[int, Fraction] = {}
        for raw in s.split("+"):
            if not raw:
                continue
            neg = raw.startswith("-")
            body = raw[1:] if neg else raw
            m = cls._TERM.match(body)
            if m is None or not (m.group(1) or m.group(2)):
                raise ValueError(f"cannot parse polynomial term {raw!r} in {text!r}")
            coeff = parse_rat(m.group(1)) if m.group(1) else Fraction(1)
            power = 0 if not m.group(2) else int(m.group(3) or 1)
            coeffs[power] = coeffs.get(power, Fraction(0)) + (-coeff if neg else coeff)
        top = max(coeffs)
        return cls(tuple(coeffs.get(k, Fraction(0)) for k in range(top + 1)))

    def __str__(self) -> str:
        return self.format()


C = Poly((0, 1))


def _p(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


# -- parameter ranges ------------------------------------------------------------

@dataclass(frozen=True)
class ParamRange:
    text: str
    lo: Fraction | None = None
    lo_open: bool = True
    hi: Fraction | None = None
    hi_open: bool = True
    exclude: tuple[Fraction, ...] = ()

    def __contains__(self, c) -> bool:
        c = to_rat(c)
        if self.lo is not None and (c < self.lo or (self.lo_open and c == self.lo)):
            return False
        if self.hi is not None and (c > self.hi or (self.hi_open and c == self.hi)):
            return False
        return c not in self.exclude

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "lo": None if self.lo is None else format_rat(self.lo), "lo_open": self.lo_open,
            "hi": None if self.hi is None else format_rat(self.hi), "hi_open": self.hi_open,
            "exclude": [format_rat(x) for x in self.exclude],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "ParamRange":
        return cls(
            d["text"],
            None if d["lo"] is None else parse_rat(d["lo"]), bool(d["lo_open"]),
            None if d["hi"] is None else parse_rat(d["hi"]), bool(d["hi_open"]),
            tuple(parse_rat(x) for x in d["exclude"]),
        )


# -- rows --------------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    index: int
    group: str
    bianchi: str
    ad_Y: tuple[Poly, ...]  # a11, a12, a21, a22, a31, a32 as polynomials in c
    Q1: Poly
    Q2: Poly
    param_range: ParamRange | None = None
    Q1_display: str = ""
    Q2_display: str = ""
    source: str = "published"
    note: str = ""

    @property
    def parametric(self) -> bool:
        return self.param_range is not None

    def matrix(self, c=None) -> AdYMatrix:
        return AdYMatrix(*(p(c) for p in self.ad_Y))

    def curvature(self, c=None) -> tuple[Fraction, Fraction]:
        return self.Q1(c), self.Q2(c)

    def solve_param(self, A: AdYMatrix) -> tuple[bool, Fraction | None]:
        """Whether ``A`` is an instance of this row, and at which parameter."""
        if not self.parametric:
            return self.matrix() == A, None
        t = None
        for p, x in zip(self.ad_Y, A.entries):
            slope = p.coefficient(1)
            if slope:
                t = (x - p.coefficient(0)) / slope
                break
        if t is None or t not in self.param_range:
            return False, None
        return self.matrix(t) == A, t

    def adY_text(self) -> str:
        e = [p.format().replace(" ", "") for p in self.ad_Y]
        return f"({e[0]},{e[1]};{e[2]},{e[3]};{e[4]},{e[5]})"

    def to_json(self) -> dict:
        e = [p.format() for p in self.ad_Y]
        return {
            "index": self.index,
            "group": self.group,
            "bianchi": self.bianchi,
            "adY": [[e[0], e[1]], [e[2], e[3]], [e[4], e[5]]],
            "range": None if self.param_range is None else self.param_range.to_json(),
            "Q1": self.Q1.format(),
            "Q2": self.Q2.format(),
            "Q1_display": self.Q1_display,
            "Q2_display": self.Q2_display,
            "source": self.source,
            "note": self.note,
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "TableRow":
        rows = d["adY"]
        return cls(
            index=int(d["index"]),
            group=d["group"],
            bianchi=d["bianchi"],
            ad_Y=tuple(Poly.parse(x) for r in rows for x in r),
            Q1=Poly.parse(d["Q1"]),
            Q2=Poly.parse(d["Q2"]),
            param_range=None if d["range"] is None else ParamRange.from_json(d["range"]),
            Q1_display=d.get("Q1_display", ""),
            Q2_display=d.get("Q2_display", ""),
            source=d.get("source", "published"),
            note=d.get("note", ""),
        )


def _row(index, group, bianchi, entries, q1, q2, rng=None, d1="", d2="", source="published", note=""):
    ad = tuple(_p(x) for x in entries)
    q1, q2 = _p(q1), _p(q2)
    return TableRow(index, group, bianchi, ad, q1, q2, rng, d1 or q1.format(), d2 or q2.format(), source, note)


HEIS, AFF, B4, B6, B7, SL2, SU2 = (
    "Heisenberg", "Aff(2)xR", "Bianchi IV", "Bianchi VI", "Bianchi VII", "SL(2,R)", "SU(2)",
)

GROUP_OF_LABEL = {
    "II": HEIS, "III": AFF, "IV": B4, "VI0": B6, "VI": B6,
    "VII0": B7, "VII": B7, "VIII": SL2, "IX": SU2,
}

Q = Fraction(1, 4)
R_VI = ParamRange("0≠c>-1/4", lo=-Q, exclude=(Fraction(0),))
R_VII = ParamRange("c<-1/4", hi=-Q)
R_SL_PLUS = ParamRange("c>-1", lo=Fraction(-1))
R_SL_MINUS = ParamRange("0<c<1", lo=Fraction(0), hi=Fraction(1))
R_SU_PLUS = ParamRange("c<-1", hi=Fraction(-1))
R_SU_MINUS = ParamRange("c>1", lo=Fraction(1))

# c(-3/2 c - 1/3) and its negative
_Q_EF = C * Poly((Fraction(-1, 3), Fraction(-3, 2)))
_Q_EF_NEG = _Q_EF.scale(-1)

LABEL_ERRATUM = "published label IX; the Killing form is indefinite, so the algebra is sl(2,R) (VIII)"
MISSING_ORBIT = "orbit absent from the published tables; added so every normal-form leaf has a row"

KNOWN_LABEL_ERRATA = {18: "VIII", 20: "VIII"}


def builtin_tables() -> list[TableRow]:
    """All reference rows, in table order; rows 21 and 22 are supplementary."""
    m1, h = Fraction(-1), Fraction(3, 2)
    return [
        _row(1, HEIS, "II", (0, 0, 0, 0, 0, 0), 0, 0),
        _row(2, AFF, "III", (0, 0, 0, 0, 1, 0), 0, 0),
        _row(3, AFF, "III", (0, 0, 0, 0, 1, 1), 0, 0),
        _row(4, B4, "IV", (0, 0, -Q, 0, 1, 0), 0, 0),
        _row(5, B4, "IV", (Q, Q, -Q, -Q, 1, 1), Fraction(-1, 96), Fraction(1, 96),
             d1="-1/4(3/8-1/3)", d2="-1/4(-3/8+1/3)"),
        _row(6, B6, "VI0", (0, -1, 0, 0, 0, 0), 0, 0),
        _row(7, B6, "VI0", (1, -1, 1, -1, 0, 0), h, -h),
        _row(8, B6, "VI", (0, 0, C, 0, 1, 0), 0, 0, R_VI),
        _row(9, B6, "VI", (C.scale(-1), C.scale(-1), C, C, 1, 1), _Q_EF, _Q_EF_NEG, R_VI,
             d1="c(-3/2c-1/3)", d2="c(3/2c+1/3)"),
        _row(10, B7, "VII0", (0, 1, 0, 0, 0, 0), 0, 0),
        _row(11, B7, "VII0", (1, 1, -1, -1, 0, 0), -h, h),
        _row(12, B7, "VII", (0, 0, C, 0, 1, 0), 0, 0, R_VII),
        _row(13, B7, "VII", (C.scale(-1), C.scale(-1), C, C, 1, 1), _Q_EF, _Q_EF_NEG, R_VII,
             d1="c(-3/2c-1/3)", d2="c(3/2c+1/3)"),
        _row(14, SL2, "VIII", (1, 0, 0, -1, 0, 0), 0, 0),
        _row(15, SL2, "VIII", (0, 1, 1, 0, 0, 0), 0, 0),
        _row(16, SL2, "VIII", (1, 1, C, m1, 0, 0), -h, C.scale(-h), R_SL_PLUS, d2="-3/2c"),
        _row(17, SL2, "VIII", (1, -1, C, m1, 0, 0), h, C.scale(-h), R_SL_MINUS, d2="-3/2c"),
        _row(18, SU2, "IX", (0, -1, 1, 0, 0, 0), 0, 0, note=LABEL_ERRATUM),
        _row(19, SU2, "IX", (1, 1, C, m1, 0, 0), -h, C.scale(-h), R_SU_PLUS, d2="-3/2c"),
        _row(20, SU2, "IX", (1, -1, C, m1, 0, 0), h, C.scale(-h), R_SU_MINUS, d2="-3/2c",
             note=LABEL_ERRATUM),
        _row(21, SL2, "VIII", (1, -1, 0, -1, 0, 0), h, 0, source="supplement", note=MISSING_ORBIT),
        _row(22, SU2, "IX", (0, 1, -1, 0, 0, 0), 0, 0, source="supplement", note=MISSING_ORBIT),
    ]


# -- regeneration ------------------------------------------------------------------

SAMPLE_GRID = tuple(Fraction(x) for x in (
    "-7", "-5", "-3", "-2", "-3/2", "-1", "-3/4", "-1/2", "-1/3", "-1/4", "-1/5", "-1/8", "-1/16",
    "0", "1/16", "1/8", "1/4", "1/3", "1/2", "2/3", "3/4", "1", "3/2", "2", "3", "5", "7",
))

MIN_FAMILY_SAMPLES = 5


def leaf_samples(grid: Iterable[Fraction] = SAMPLE_GRID) -> list[tuple[str, Fraction | None, AdYMatrix]]:
    out = []
    for leaf in LEAVES:
        if leaf not in PARAMETRIC_LEAVES:
            out.append((leaf, None, leaf_matrix(leaf)))
            continue
        for c in grid:
            try:
                out.append((leaf, c, leaf_matrix(leaf, c)))
            except ValueError:
                continue
    return out


@dataclass
class CatalogReport:
    curvature_diff: list[str] = field(default_factory=list)
    coverage_diff: list[str] = field(default_factory=list)
    label_discrepancies: dict[int, tuple[str, str]] = field(default_factory=dict)
    samples: int = 0

    @property
    def unexpected_labels(self) -> dict[int, tuple[str, str]]:
        return {i: v for i, v in self.label_discrepancies.items()
                if KNOWN_LABEL_ERRATA.get(i) != v[1]}

    @property
    def missing_errata(self) -> list[int]:
        return [i for i in KNOWN_LABEL_ERRATA if i not in self.label_discrepancies]

    @property
    def ok(self) -> bool:
        return not (self.curvature_diff or self.coverage_diff or self.unexpected_labels
                    or self.missing_errata)

    def lines(self) -> list[str]:
        out = [f"table regeneration: {'ok' if self.ok else 'DIFF'} ({self.samples} leaf samples)"]
        out += [f"  curvature: {x}" for x in self.curvature_diff]
        out += [f"  coverage: {x}" for x in self.coverage_diff]
        for i, (published, computed) in sorted(self.label_discrepancies.items()):
            tag = "known erratum" if KNOWN_LABEL_ERRATA.get(i) == computed else "UNEXPECTED"
            out.append(f"  label: row {i} listed as {published}, classifier gives {computed} ({tag})")
        for i in self.missing_errata:
            out.append(f"  label: expected erratum on row {i} not observed")
        return out


def regenerate_tables(rows: Sequence[TableRow] | None = None) -> tuple[list[TableRow], CatalogReport]:
    """Rebuild one row per (leaf, matched reference row) and diff against ``rows``."""
    rows = list(builtin_tables() if rows is None else rows)
    report = CatalogReport()
    hits: dict[int, list[tuple[str, Fraction | None, AdYMatrix, tuple, str]]] = {}
    for leaf, c, A in leaf_samples():
        report.samples += 1
        q = curvature_direct(A)
        label = classify_bianchi(to_structure_constants(A)).label
        matched = []
        for row in rows:
            ok, t = row.solve_param(A)
            if ok:
                matched.append((row, t))
        where = f"{leaf}" + ("" if c is None else f" c={format_rat(c)}")
        if len(matched) != 1:
            names = ", ".join(str(r.index) for r, _ in matched) or "none"
            report.coverage_diff.append(f"leaf {where} {A} matches rows: {names}")
            continue
        row, t = matched[0]
        hits.setdefault(row.index, []).append((leaf, t, A, q, label))

    by_index = {r.index: r for r in rows}
    regenerated = []
    for row in rows:
        samples = hits.get(row.index)
        if not samples:
            report.coverage_diff.append(f"row {row.index} {row.adY_text()} is reached by no leaf")
            continue
        leaves = sorted({s[0] for s in samples})
        if len(leaves) != 1:
            report.coverage_diff.append(f"row {row.index} is reached by several leaves: {leaves}")
        if row.parametric and len(samples) < MIN_FAMILY_SAMPLES:
            report.coverage_diff.append(
                f"row {row.index} has {len(samples)} parameter samples (< {MIN_FAMILY_SAMPLES})")
        labels = sorted({s[4] for s in samples})
        computed_label = labels[0] if len(labels) == 1 else "/".join(labels)
        regenerated.append(_regenerated_row(row, samples, computed_label))
        bad = [s for s in samples if row.curvature(s[1]) != s[3]]
        if bad:
            leaf, t, A, q, _ = bad[0]
            at = "" if t is None else f" at c={format_rat(t)}"
            report.curvature_diff.append(
                f"row {row.index}{at}: listed ({format_rat(row.Q1(t))}, {format_rat(row.Q2(t))}), "
                f"computed ({format_rat(q[0])}, {format_rat(q[1])}) [{len(bad)} sample(s)]")
        if computed_label != row.bianchi:
            report.label_discrepancies[row.index] = (row.bianchi, computed_label)
    assert set(by_index) >= set(hits)
    return regenerated, report


def _regenerated_row(ref: TableRow, samples, label: str) -> TableRow:
    if ref.parametric:
        entries = tuple(
            Poly.interpolate([(t, A.entries[k]) for _, t, A, _, _ in samples[:2]]) for k in range(6)
        )
        pts = [(t, q) for _, t, _, q, _ in samples]
        q1 = Poly.interpolate([(t, q[0]) for t, q in pts[:3]])
        q2 = Poly.interpolate([(t, q[1]) for t, q in pts[:3]])
    else:
        _, _, A, q, _ = samples[0]
        entries = tuple(Poly.const(x) for x in A.entries)
        q1, q2 = Poly.const(q[0]), Poly.const(q[1])
    return TableRow(ref.index, GROUP_OF_LABEL.get(label, label), label, entries, q1, q2,
                    ref.param_range, q1.format(), q2.format(), "regenerated", samples[0][0])


# -- export ------------------------------------------------------------------------

CSV_COLUMNS = ("group", "bianchi", "adY", "Q1", "Q2", "range", "source", "note")


def _record(row: TableRow) -> dict[str, str]:
    return {
        "group": row.group,
        "bianchi": row.bianchi,
        "adY": row.adY_text(),
        "Q1": row.Q1_display or row.Q1.format(),
        "Q2": row.Q2_display or row.Q2.format(),
        "range": row.param_range.text if row.param_range else "",
        "source": row.source,
        "note": row.note,
    }


def to_csv(rows: Sequence[TableRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(_record(row))
    return buf.getvalue()


def to_json(rows: Sequence[TableRow]) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2, ensure_ascii=False)


def from_json(text: str) -> list[TableRow]:
    return [TableRow.from_json(d) for d in json.loads(text)]


def to_text(rows: Sequence[TableRow]) -> str:
    recs = [{"#": str(r.index), **_record(r)} for r in rows]
    cols = ("#", "group", "bianchi", "adY", "range", "Q1", "Q2", "source")
    widths = {c: max(len(c), *(len(rec[c]) for rec in recs)) for c in cols}
    lines = ["  ".join(c.ljust(widths[c]) for c in cols).rstrip()]
    for rec in recs:
        lines.append("  ".join(rec[c].ljust(widths[c]) for c in cols).rstrip())
    notes = [f"row {r.index}: {r.note}" for r in rows if r.note]
    return "\n".join(lines + ([""] + notes if notes else [])) + "\n"
