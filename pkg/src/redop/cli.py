"""Command-line front end: ``redop {confluence,syzygies,complete,groebner}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List

from .completion import complete_with_report, obstruction_set, verify_completion
from .groebner import (
    PolynomialRing,
    TruncatedContext,
    TruncationError,
    complete_groebner,
)
from .io import DocumentError, dump_combination, loads_family, parse_polynomials
from .lattice import meet_family, nf_of_family
from .linear import format_scalar, format_vector
from .syzygy import (
    dim_product,
    format_product_vector,
    syzygy_basis,
    syzygy_leading_indices,
)

EXIT_OK, EXIT_NOT_CONFLUENT, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_family(args):
    try:
        return loads_family(_read(args.input))
    except DocumentError as exc:
        raise InputError(f"{args.input}: {exc}") from None


def _sorted(gens, basis):
    return [str(g) for g in sorted(gens, key=basis.rank)]


def _index(e) -> dict:
    return {"i": e.i, "g": str(e.g)}


def _figure_path(args, name: str) -> str:
    return os.path.join(args.figures, name)


def _emit(args, data: dict, lines: List[str]) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print("\n".join(lines))


# -- subcommands ----------------------------------------------------------------

def cmd_confluence(args) -> int:
    family = _load_family(args)
    basis = family.basis
    ops = list(family)
    meet = meet_family(ops)
    nf = nf_of_family(ops)
    obs = obstruction_set(family)
    figures = []
    if args.figures:
        from . import plots
        named = dict(zip(family.names, ops))
        figures.append(plots.plot_matrices({**named, "meet": meet}, _figure_path(args, "operators.png")))
        figures.append(plots.plot_rewriting_graph(named, _figure_path(args, "rewriting.png")))
    data = {
        "command": "confluence",
        "basis": [str(g) for g in basis],
        "nf_family": _sorted(nf, basis),
        "nf_meet": _sorted(meet.nf_set(), basis),
        "obstructions": _sorted(obs, basis),
        "confluent": not obs,
        "figures": figures,
    }
    lines = [
        "basis: " + " < ".join(data["basis"]),
        "NF(F): {" + ", ".join(data["nf_family"]) + "}",
        "NF(meet F): {" + ", ".join(data["nf_meet"]) + "}",
        "Obs(F): {" + ", ".join(data["obstructions"]) + "}",
        "verdict: " + ("confluent" if not obs else "not confluent"),
    ] + [f"figure: {p}" for p in figures]
    _emit(args, data, lines)
    return EXIT_OK if not obs else EXIT_NOT_CONFLUENT


def cmd_syzygies(args) -> int:
    family = _load_family(args)
    syz = syzygy_basis(family)
    leads = sorted(syzygy_leading_indices(family), key=lambda e: (e.i, family.basis.rank(e.g)))
    meet_dim = len(meet_family(list(family)).kernel_of())
    data = {
        "command": "syzygies",
        "dim_product": dim_product(family),
        "dim_meet_kernel": meet_dim,
        "syzygies": [
            {
                "leading": _index(s.leading_term),
                "terms": [{**_index(e), "coeff": format_scalar(c)} for e, c in s.terms().items()],
            }
            for s in syz
        ],
        "leading_indices": [_index(e) for e in leads],
    }
    lines = [f"syzygy basis ({len(syz)} elements; dim ker(F) = {data['dim_product']}, "
             f"dim ker(meet F) = {meet_dim})"]
    lines += ["  " + format_product_vector(s) for s in syz]
    lines.append("leading indices: " + (", ".join(str(e) for e in leads) or "none"))
    _emit(args, data, lines)
    return EXIT_OK


def cmd_complete(args) -> int:
    family = _load_family(args)
    report = complete_with_report(family)
    basis = family.basis
    added = [[dump_combination(e) for e in op.kernel_of()] for op in report.added_operators]
    figures = []
    if args.figures:
        from . import plots
        named = dict(zip(family.names, family))
        extra = {f"C{k}": op for k, op in enumerate(report.added_operators, start=1)}
        figures.append(plots.plot_matrices({**named, **extra}, _figure_path(args, "completion.png")))
        figures.append(plots.plot_rewriting_graph({**named, **extra}, _figure_path(args, "rewriting.png"),
                                                  dashed=list(extra)))
    data = {
        "command": "complete",
        "obstructions": _sorted(report.obstruction_set, basis),
        "removed_reductions": [_index(e) for e in report.removed_reductions],
        "added_kernels": added,
        "ambiguities": [{"g": str(g), "i": i, "j": j} for g, i, j in report.ambiguities],
        "verified": verify_completion(family, report.added_operators),
        "confluent_after": report.is_confluent_after,
        "figures": figures,
    }
    lines = ["Obs(F): {" + ", ".join(data["obstructions"]) + "}"]
    lines.append("useless reductions removed: " + (", ".join(
        f"{e.g} -> {format_vector(family[e.i - 1].image(e.g))} ({family.names[e.i - 1]})"
        for e in report.removed_reductions) or "none"))
    if report.added_operators:
        for k, op in enumerate(report.added_operators, start=1):
            lines.append(f"added C{k}: kernel {{" + ", ".join(format_vector(e) for e in op.kernel_of()) + "}")
    else:
        lines.append("added: nothing")
    lines.append("completion verified: " + ("yes" if report.is_confluent_after else "no"))
    lines += [f"figure: {p}" for p in figures]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_groebner(args) -> int:
    if not args.order:
        raise InputError("groebner needs --order v1,v2,... (increasing precedence)")
    if args.degree_bound is None:
        raise InputError("groebner needs --degree-bound N")
    try:
        ring = PolynomialRing([v for v in args.order.split(",") if v.strip()])
    except ValueError as exc:
        raise InputError(f"--order: {exc}") from None
    try:
        polys = parse_polynomials(_read(args.input), ring)
    except DocumentError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    try:
        ctx = TruncatedContext(ring, args.degree_bound)
        result = complete_groebner(ctx, polys)
    except (TruncationError, ValueError) as exc:
        raise InputError(str(exc)) from None
    fmt = ring.format_monomial
    figures = []
    if args.figures:
        from . import plots
        series = {
            "input": nf_of_family(list(ctx.family(polys))),
            "completed": nf_of_family(list(ctx.family(result.basis))),
        }
        figures.append(plots.plot_normal_form_profile(series, ctx.degree_bound,
                                                      _figure_path(args, "normal_forms.png")))
    data = {
        "command": "groebner",
        "order": "drl",
        "variables": list(ring.variables),
        "degree_bound": ctx.degree_bound,
        "input": [str(p) for p in polys],
        "basis": [str(p) for p in result.basis],
        "added": [str(p) for p in result.added],
        "useless": [
            {
                "polynomial": u.index,
                "cofactor": fmt(u.cofactor),
                "pair": u.pair,
                "reducible_monomial": fmt(u.monomial),
                "join_image": str(u.image),
            }
            for u in result.useless
        ],
        "groebner_up_to_bound": result.certified,
        "warnings": result.warnings,
        "figures": figures,
    }
    lines = [f"order: DRL, {' < '.join(ring.variables)}; degree bound D = {ctx.degree_bound}",
             "basis:"]
    lines += [f"  f{k}: {p}" for k, p in enumerate(result.basis, start=1)]
    lines.append("useless reductions:" if result.useless else "useless reductions: none")
    for u in result.useless:
        lines.append(f"  {fmt(u.cofactor)}*f{u.index} (pair with f{u.pair}): {fmt(u.monomial)} is reducible "
                     f"for (f1^...^f{u.index - 1}) v f{u.index}, which maps it to {u.image}")
    lines.append(("Groebner basis" if result.certified else "NOT confluent")
                 + f" up to degree {ctx.degree_bound} (certificate does not cover higher degrees)")
    lines += [f"warning: {w}" for w in result.warnings]
    lines += [f"figure: {p}" for p in figures]
    _emit(args, data, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="redop", description="Exact reduction-operator toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, figures=True):
        p.add_argument("--input", required=True, metavar="PATH", help="input file ('-' for stdin)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if figures:
            p.add_argument("--figures", metavar="DIR", help="also write PNG figures into DIR")
        return p

    p = common(sub.add_parser("confluence", help="test a family for confluence"))
    p.set_defaults(func=cmd_confluence)
    p = common(sub.add_parser("syzygies", help="compute a basis of syzygies"), figures=False)
    p.set_defaults(func=cmd_syzygies, figures=None)
    p = common(sub.add_parser("complete", help="complete a family, skipping useless reductions"))
    p.set_defaults(func=cmd_complete)
    p = common(sub.add_parser("groebner", help="truncated Groebner completion of a polynomial file"))
    p.add_argument("--order", metavar="V1,V2,...", help="variables in increasing precedence (DRL)")
    p.add_argument("--degree-bound", type=int, metavar="N", help="truncation degree D")
    p.set_defaults(func=cmd_groebner)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
