"""Maurer-Cartan equations of the flat flag-space model on eight generators."""

from __future__ import annotations

from fractions import Fraction

from .forms import DifferentialRule, InvariantForm, wedge
from .report import Report

FLAT_NAMES = ("ω", "ω¹", "ω²", "φ", "w", "φ¹", "φ²", "ψ")
OMEGA, OMEGA1, OMEGA2, PHI, W, PHI1, PHI2, PSI = range(8)

HALF = Fraction(1, 2)


def flat_model_rules(drop: tuple[int, tuple[int, int]] | None = None) -> DifferentialRule:
    """The eight rules of ``dπ + π∧π = 0`` for the ``sl(3)``-valued form π.

    ``drop=(gen, (i, j))`` removes the ``gen_i∧gen_j`` term from the rule
    for ``gen``; used to show that the check actually bites.
    """
    g = [InvariantForm.generator(i, 8) for i in range(8)]
    om, om1, om2, phi, w, phi1, phi2, psi = g

    def x(p, q):
        return wedge(p, q)

    rules = {
        OMEGA: x(om1, om2) + 2 * x(phi, om),
        OMEGA1: x(phi, om1) + 3 * x(w, om1) + x(om, phi1),
        OMEGA2: x(phi, om2) - 3 * x(w, om2) - x(om, phi2),
        W: -HALF * x(phi2, om1) + HALF * x(phi1, om2),
        PHI: x(om, psi) - HALF * x(phi2, om1) - HALF * x(phi1, om2),
        PHI1: x(psi, om1) - x(phi, phi1) + 3 * x(w, phi1),
        PHI2: -x(psi, om2) - x(phi, phi2) - 3 * x(w, phi2),
        PSI: x(phi1, phi2) + 2 * x(psi, phi),
    }
    if drop is not None:
        gen, (i, j) = drop
        coeff = rules[gen].coefficient(i, j)
        rules[gen] = rules[gen] - coeff * x(g[i], g[j])
    return DifferentialRule.from_mapping(8, rules, FLAT_NAMES)


def zero_rules(n: int = 8) -> DifferentialRule:
    names = FLAT_NAMES if n == 8 else ()
    return DifferentialRule(n, tuple(InvariantForm.zero(n) for _ in range(n)), names)


def verify_flat_model(rules: DifferentialRule | None = None) -> Report:
    """Check ``d(d(gen)) = 0`` for every generator; an ok report lists no failures."""
    rules = flat_model_rules() if rules is None else rules
    report = Report("flat model d²=0", names=rules.names)
    for i in range(rules.n):
        report.add(f"d²{rules.label(i)}", rules.d(rules.images[i]))
    return report
