"""Command-line front end: ``cartan-path <command> [options]``.

Exit codes: 0 on success, 1 on invalid input, 2 when an internal
verification residual fails to vanish.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import catalog
from .algebra import classify_bianchi, killing_signature
from .exterior import VerificationError, verify_curvature_equations
from .pathstruct import AdYMatrix, JacobiViolation, bianchi_type, normalize, to_structure_constants
from .rational import RationalFormatError, format_rat, parse_rat
from .selfcheck import run_all
from .sl2geo import (
    ContactError,
    LightlikeError,
    LinePair,
    cross_ratio,
    locally_isomorphic,
    pair_to_path_structure,
    plane_type,
)
from .strict import compute_strict, curvature_direct, curvature_via_embedding, flatness_indicator
from .transform import CurvatureTuple, GroupElement, reduction_scale_solve, transform_curvature

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class InputError(ValueError):
    pass


# -- input readers -------------------------------------------------------------------

def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON for {what}: {exc}") from exc


def _read_file(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return _load_json(fh.read(), path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _strings_only(value, what: str) -> None:
    """Rationals cross the boundary as strings; reject JSON numbers."""
    if isinstance(value, (list, tuple)):
        for v in value:
            _strings_only(v, what)
    elif not isinstance(value, str):
        raise InputError(f"{what}: rational entries must be JSON strings, got {json.dumps(value)}")


def read_adY(args) -> AdYMatrix:
    if args.adY is not None and args.file is not None:
        raise InputError("give either --adY or --file, not both")
    if args.adY is not None:
        data = _load_json(args.adY, "--adY")
    elif args.file is not None:
        data = _read_file(args.file)
    else:
        raise InputError("an ad_Y matrix is required (--adY or --file)")
    rows = data.get("ad_Y") if isinstance(data, dict) else data
    if rows is None:
        raise InputError('JSON object must carry an "ad_Y" key')
    _strings_only(rows, "ad_Y")
    return AdYMatrix.from_json(rows)


def _rat_field(d: dict, key: str, default: str | None = None) -> Fraction:
    if key not in d:
        if default is None:
            raise InputError(f'missing "{key}"')
        return parse_rat(default)
    v = d[key]
    if not isinstance(v, str):
        raise InputError(f'"{key}" must be a rational string')
    return parse_rat(v)


def read_group_element(text: str) -> GroupElement:
    d = _load_json(text, "--h")
    if not isinstance(d, dict):
        raise InputError('--h expects an object {"a","b","c","e","f"}')
    return GroupElement(*(_rat_field(d, k, None if k in "ab" else "0") for k in ("a", "b", "c", "e", "f")))


def read_curvature(text: str, allow_float: bool) -> CurvatureTuple:
    d = _load_json(text, "--q")
    if not isinstance(d, dict):
        raise InputError('--q expects an object {"Q1","Q2","U1","U2"}')
    if allow_float:
        out = []
        for k in ("Q1", "Q2", "U1", "U2"):
            v = d.get(k, 0)
            try:
                out.append(float(v) if not isinstance(v, str) or "/" not in v else float(parse_rat(v)))
            except (TypeError, ValueError) as exc:
                raise InputError(f'"{k}" is not a number: {v!r}') from exc
        return CurvatureTuple(*out)
    return CurvatureTuple(*(_rat_field(d, k, None if k in ("Q1", "Q2") else "0")
                            for k in ("Q1", "Q2", "U1", "U2")))


def read_pair(text: str, flag: str) -> LinePair:
    d = _load_json(text, flag)
    if not isinstance(d, dict):
        raise InputError(f'{flag} expects an object {{"D1": [h,e,f], "D2": [h,e,f]}}')
    for key in ("D1", "D2"):
        if key in d:
            _strings_only(d[key], f"{flag} {key}")
    return LinePair.from_json(d)


# -- rendering -----------------------------------------------------------------------

def emit(args, payload: dict, text_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False, sort_keys=False))
    elif args.format == "csv":
        raise InputError("--format csv is only available for 'tables'")
    else:
        print("\n".join(text_lines))


def _q(x) -> str:
    return format_rat(x) if isinstance(x, Fraction) else repr(x)


# -- commands ------------------------------------------------------------------------

def cmd_validate(args) -> int:
    A = read_adY(args)
    payload = {**A.to_json(), "valid": True, "display": str(A)}
    emit(args, payload, [f"valid {A}", "Jacobi constraints: a11+a22=0, a31*a12-a32*a11=0, a31*a22-a32*a21=0 hold"])
    return EXIT_OK


def cmd_classify(args) -> int:
    A = read_adY(args)
    sc = to_structure_constants(A)
    from_brackets = classify_bianchi(sc)
    from_leaf = bianchi_type(A)
    sig = killing_signature(sc)
    nf = normalize(A, with_witness=False)
    agree = str(from_brackets) == str(from_leaf)
    payload = {
        **A.to_json(),
        "bianchi": from_brackets.label,
        "invariant": None if from_brackets.invariant is None else format_rat(from_brackets.invariant),
        "bianchi_via_normal_form": str(from_leaf),
        "killing_signature": list(sig),
        "leaf": nf.case_label,
        "parameter": None if nf.parameter is None else format_rat(nf.parameter),
        "group": catalog.GROUP_OF_LABEL.get(from_brackets.label, from_brackets.label),
    }
    emit(args, payload, [
        f"ad_Y {A}",
        f"Bianchi type {from_brackets} ({payload['group']})",
        f"via normal form: {from_leaf}",
        f"Killing signature (+,-,0) = {sig}",
        f"leaf {nf}",
    ])
    return EXIT_OK if agree else EXIT_INTERNAL


def cmd_curvature(args) -> int:
    A = read_adY(args)
    direct = curvature_direct(A)
    embedded = curvature_via_embedding(compute_strict(A))
    q1, q2, _, _, rep = verify_curvature_equations(A)
    rep.raise_if_failed()
    if not direct == embedded == (q1, q2):
        raise VerificationError(rep)
    payload = {**A.to_json(), "Q1": format_rat(q1), "Q2": format_rat(q2),
               "routes": {"direct": [format_rat(x) for x in direct],
                          "embedding": [format_rat(x) for x in embedded],
                          "exterior": [format_rat(q1), format_rat(q2)]}}
    emit(args, payload, [f"Q1={format_rat(q1)} Q2={format_rat(q2)}"])
    return EXIT_OK


def cmd_normal_form(args) -> int:
    A = read_adY(args)
    nf = normalize(A)
    payload = {
        **nf.matrix.to_json(),
        "input": A.to_json()["ad_Y"],
        "leaf": nf.case_label,
        "parameter": None if nf.parameter is None else format_rat(nf.parameter),
        "reordered": nf.reordered,
        "invariants": {k: format_rat(v) for k, v in nf.scale_invariants},
        "witness": None if nf.witness is None else [repr(x) for x in nf.witness],
    }
    lines = [f"input {A}", f"leaf {nf}", f"reordered: {'yes' if nf.reordered else 'no'}"]
    lines += [f"  {k} = {format_rat(v)}" for k, v in nf.scale_invariants]
    if nf.witness is not None:
        lines.append(f"scale witness l1={nf.witness[0]!r} l2={nf.witness[1]!r}")
    emit(args, payload, lines)
    return EXIT_OK


def cmd_flatness(args) -> int:
    A = read_adY(args)
    fl = flatness_indicator(A)
    payload = {**A.to_json(), **fl.to_json()}
    emit(args, payload, [
        f"Q1={format_rat(fl.Q1)} Q2={format_rat(fl.Q2)}",
        f"U1={format_rat(fl.U1)} U2={format_rat(fl.U2)} (implementation-derived)",
        f"verdict: {fl.verdict}",
    ])
    return EXIT_OK


def _curvature_input(args) -> CurvatureTuple:
    if args.q is not None:
        return read_curvature(args.q, getattr(args, "float", False))
    A = read_adY(args)
    fl = flatness_indicator(A)
    return CurvatureTuple(fl.Q1, fl.Q2, fl.U1, fl.U2)


def cmd_transform(args) -> int:
    if args.h is None:
        raise InputError("--h is required")
    h = read_group_element(args.h)
    q = _curvature_input(args)
    out = transform_curvature(h, q)
    names = ("Q1", "Q2", "U1", "U2")
    payload = {"h": h.to_json(),
               "input": dict(zip(names, map(_q, q.as_tuple()))),
               "output": dict(zip(names, map(_q, out.as_tuple())))}
    emit(args, payload, [" ".join(f"{k}={_q(v)}" for k, v in zip(names, out.as_tuple()))])
    return EXIT_OK


def cmd_reduce(args) -> int:
    q = _curvature_input(args)
    r = reduction_scale_solve(q.Q1, q.Q2)
    emit(args, r.to_json(), [
        f"a={r.a!r} b={r.b!r} epsilon={r.epsilon:+d}",
        f"residuals |a b^5 Q1 - 1| = {r.residual_q1:.3e}, |Q2/(a^5 b) - epsilon| = {r.residual_q2:.3e}",
        f"second witness a={r.second_witness[0]!r} b={r.second_witness[1]!r}",
        f"note: {r.note}",
    ])
    return EXIT_OK


def _describe_pair(p: LinePair) -> dict:
    A = pair_to_path_structure(p)
    types = [str(t) for t in p.line_types()]
    try:
        cr = format_rat(cross_ratio(p))
    except LightlikeError:
        cr = None
    q1, q2 = curvature_direct(A)
    return {**p.to_json(), "lines": types, "plane": str(plane_type(p)), "cr": cr,
            "ad_Y": A.to_json()["ad_Y"], "Q1": format_rat(q1), "Q2": format_rat(q2)}


def cmd_sl2_compare(args) -> int:
    if args.p1 is None:
        raise InputError("--p1 is required")
    p1 = read_pair(args.p1, "--p1")
    if args.p2 is None:
        d = _describe_pair(p1)
        emit(args, d, [
            f"pair {p1}: lines {d['lines'][0]}/{d['lines'][1]}, plane {d['plane']}, cr={d['cr']}",
            f"ad_Y ({';'.join(','.join(r) for r in d['ad_Y'])}) Q1={d['Q1']} Q2={d['Q2']}",
        ])
        return EXIT_OK
    p2 = read_pair(args.p2, "--p2")
    res = locally_isomorphic(p1, p2)
    payload = {"p1": p1.to_json(), "p2": p2.to_json(), **res.to_json()}
    if res.case is None:
        lines = ["not isomorphic (the pairs fall in different regimes)"]
    else:
        sub = f", {res.subcomponent}" if res.subcomponent else ""
        lines = [f"{'isomorphic' if res.verdict else 'not isomorphic'} (case {res.case}{sub})"]
    for key in ("pair1", "pair2"):
        r = res.detail[key]
        lines.append(f"  {key}: lines {'/'.join(r['lines'])}, plane {r['plane']}"
                     + (f", cr={r['cr']}" if "cr" in r else ""))
    if res.detail["both_flat"]:
        lines.append("  note: both structures are flat")
    emit(args, payload, lines)
    return EXIT_OK


def cmd_tables(args) -> int:
    rows = catalog.builtin_tables()
    report = None
    if args.regenerate:
        rows, report = catalog.regenerate_tables()
    if args.format == "csv":
        sys.stdout.write(catalog.to_csv(rows))
    elif args.format == "json":
        print(catalog.to_json(rows))
    else:
        sys.stdout.write(catalog.to_text(rows))
        if report is not None:
            print("\n".join(report.lines()))
    if report is not None and not report.ok:
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_self_check(args) -> int:
    results = run_all(seed=args.seed)
    payload = {"seed": args.seed,
               "suites": [{"name": r.name, "passed": r.passed, "cases": r.cases, "detail": r.detail}
                          for r in results]}
    emit(args, payload, [r.line() for r in results])
    return EXIT_OK if all(r.passed for r in results) else EXIT_INTERNAL


# -- parser --------------------------------------------------------------------------

COMMANDS = {
    "validate": (cmd_validate, "check an ad_Y matrix against the Jacobi constraints"),
    "classify": (cmd_classify, "Bianchi type, Killing signature and normal-form leaf"),
    "curvature": (cmd_curvature, "Cartan curvatures Q1, Q2 (three independent routes)"),
    "normal-form": (cmd_normal_form, "orbit representative under rescaling and reordering"),
    "flatness": (cmd_flatness, "curvatures with U1, U2 and a flatness verdict"),
    "transform": (cmd_transform, "apply the structure-group action to (Q1, Q2, U1, U2)"),
    "reduce": (cmd_reduce, "numeric scale normalising (Q1, Q2) to (1, +-1)"),
    "sl2-compare": (cmd_sl2_compare, "local equivalence of two line pairs in sl(2,R)"),
    "tables": (cmd_tables, "print the reference tables"),
    "self-check": (cmd_self_check, "run the built-in consistency suites"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cartan-path", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext, description=helptext)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        if name in ("validate", "classify", "curvature", "normal-form", "flatness", "transform", "reduce"):
            p.add_argument("--adY", help='JSON rows, e.g. \'[["1","1"],["2","-1"],["0","0"]]\'')
            p.add_argument("--file", help="path to a JSON file holding the rows or {\"ad_Y\": rows}")
        if name in ("transform", "reduce"):
            p.add_argument("--q", help='JSON {"Q1": "...", "Q2": "...", "U1": "...", "U2": "..."}')
        if name == "transform":
            p.add_argument("--h", help='JSON {"a": "...", "b": "...", "c": "...", "e": "...", "f": "..."}')
        if name == "reduce":
            p.add_argument("--float", action="store_true", help="accept floating-point curvature values")
        if name == "sl2-compare":
            p.add_argument("--p1", help='JSON {"D1": [h,e,f], "D2": [h,e,f]} with string entries')
            p.add_argument("--p2", help="second pair; omit to describe --p1 alone")
        if name == "tables":
            p.add_argument("--regenerate", action="store_true", help="rebuild rows from the normal forms")
        if name == "self-check":
            p.add_argument("--seed", type=int, default=0, help="seed for the random suites")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; 2 is reserved for internal failures here
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ArithmeticError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, JacobiViolation, ContactError, LightlikeError, RationalFormatError,
            ValueError, TypeError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
