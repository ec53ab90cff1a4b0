"""Command-line front end.

Exit codes: 0 success, 1 a verification claim failed, 2 invalid input,
3 depth ceiling or word cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lemmas import EmbeddingFailed, spanning_tree
from .oracle import CeilingExceeded, build_graph, depth_ceiling
from .params import InvalidParams, TesselError, TilingParams, UnsupportedFamily
from .render import render_svg
from .spectral import SpectralReport, spectral_report
from .substitution import (DEFAULT_WORD_CAP, WordTooLarge, build_system, format_word,
                           generation_word, u_sequence, utilde_sequence)
from .verify import any_failed, graph_depth, reports_to_json, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

FORMATS = {
    "counts": ("csv", "json", "text"),
    "spectrum": ("json", "text"),
    "verify": ("json", "text"),
    "render": ("svg",),
    "dump-graph": ("json",),
}
DEFAULT_DEPTH = {"counts": 10, "spectrum": 0, "verify": 4, "render": 4, "dump-graph": 3}

EPILOG = """\
output schemas
  counts   csv: header "n,u,utilde", one row per generation n; utilde on row n is the
           length of the (n-1)-th iterate of the seed letter, so u = p * utilde (empty at n=0).
           json: {"p", "q", "rows": [{"n", "u", "utilde"}]} with utilde null at n=0.
           text: one line per generation with the word of that generation.
  spectrum json: {"p", "q", "family", "curvature", "alphabet", "matrix", "char_poly"
           (ascending integer coefficients, monic), "char_poly_text", "closed_form",
           "closed_form_match", "components": [{"letters", "h"}], "perron":
           {"lo", "hi", "estimate"}, "growth", "other_root_moduli", "unit_circle_deviation"}.
  verify   json: array of {"claim", "params": {"p", "q"}, "status" (pass|fail|skipped),
           "reason", "evidence", "data"[, "parts"]}.
  render   svg: one <path class="tile"> per tile of generation <= n, one
           <line class="tree"> per spanning-tree edge with --tree.
  dump-graph json: {"params", "max_gen", "vertices": [{"id", "gen", "x", "y"[, "z"]}],
           "edges", "faces"}.

exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 depth ceiling or word cap.
TESSEL_CEILING overrides the depth ceiling.
"""


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int
    q: int
    n_max: int
    fmt: str
    output: str | None
    color: str
    tree: bool
    tol: Fraction
    word_cap: int
    deterministic: bool = True  # always on


class UsageError(TesselError):
    pass


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tessel", description="Substitutions, growth and verification for regular tilings {p,q}.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("counts", "tiles per generation"),
                           ("spectrum", "transition matrix, characteristic polynomial, Perron root"),
                           ("verify", "check the substitution against the geometric model"),
                           ("render", "draw the tiling ball as SVG"),
                           ("dump-graph", "dump the geometric dual graph as JSON")):
        sp = sub.add_parser(name, help=helptext, epilog=EPILOG,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        sp.add_argument("-p", type=int, required=True, help="sides of each tile")
        sp.add_argument("-q", type=int, required=True, help="tiles meeting at each vertex")
        sp.add_argument("-n", type=int, default=None, help="depth (last generation)")
        sp.add_argument("--format", dest="fmt", default=None, help=f"one of {', '.join(FORMATS[name])}")
        sp.add_argument("-o", dest="output", default=None, help="output file (default stdout)")
        sp.add_argument("--color", choices=("gen", "type"), default="gen")
        sp.add_argument("--tree", action="store_true", help="overlay the spanning tree")
        sp.add_argument("--tol", type=Fraction, default=Fraction(1, 10**10),
                        help="width of the Perron bracket (default 1e-10)")
        sp.add_argument("--word-cap", type=int, default=DEFAULT_WORD_CAP,
                        help="refuse to expand words longer than this")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    ns = _parser().parse_args(argv)
    fmt = ns.fmt or FORMATS[ns.command][0]
    if fmt not in FORMATS[ns.command]:
        raise UsageError(f"{ns.command} does not support --format {fmt}")
    n_max = DEFAULT_DEPTH[ns.command] if ns.n is None else ns.n
    if n_max < 0:
        raise UsageError("-n must be >= 0")
    if ns.tol <= 0:
        raise UsageError("--tol must be positive")
    if ns.word_cap < 1:
        raise UsageError("--word-cap must be positive")
    return RunConfig(ns.command, ns.p, ns.q, n_max, fmt, ns.output, ns.color, ns.tree,
                     ns.tol, ns.word_cap)


# --- commands ------------------------------------------------------------------------


def cmd_counts(cfg: RunConfig, params: TilingParams) -> tuple[int, str]:
    system = build_system(params)
    u = u_sequence(system, cfg.n_max)
    ut = [None] + utilde_sequence(system, max(cfg.n_max - 1, 0))[: cfg.n_max]
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "u", "utilde"])
        for n in range(cfg.n_max + 1):
            w.writerow([n, u[n], "" if ut[n] is None else ut[n]])
        return EXIT_OK, buf.getvalue()
    if cfg.fmt == "json":
        rows = [{"n": n, "u": u[n], "utilde": ut[n]} for n in range(cfg.n_max + 1)]
        return EXIT_OK, json.dumps({"p": params.p, "q": params.q, "rows": rows}, indent=2) + "\n"
    lines = []
    for n in range(cfg.n_max + 1):
        word = generation_word(system, n, cfg.word_cap)
        lines.append(f"{n} {u[n]} {'-' if ut[n] is None else ut[n]}  {format_word(word)}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _spectrum_doc(rep: SpectralReport) -> dict:
    m = rep.matrix
    return {
        "p": rep.params.p,
        "q": rep.params.q,
        "family": rep.params.family.name,
        "curvature": rep.params.curvature.name.lower(),
        "alphabet": [str(x) for x in m.labels],
        "matrix": m.as_lists(),
        "char_poly": list(rep.char_poly.coeffs),
        "char_poly_text": str(rep.char_poly),
        "closed_form": None if rep.closed_form is None else list(rep.closed_form.coeffs),
        "closed_form_match": rep.closed_form_match,
        "components": [{"letters": [str(x) for x in c], "h": h}
                       for c, h in zip(rep.scc.components, rep.scc.imprimitivity)],
        "perron": {"lo": str(rep.perron.lo), "hi": str(rep.perron.hi),
                   "estimate": float(f"{rep.perron.estimate:.12f}")},
        "growth": rep.growth_class,
        "other_root_moduli": [float(f"{x:.12f}") for x in rep.other_root_moduli],
        "unit_circle_deviation": None if rep.unit_circle_deviation is None
        else float(f"{rep.unit_circle_deviation:.3e}"),
    }


def cmd_spectrum(cfg: RunConfig, params: TilingParams) -> tuple[int, str]:
    doc = _spectrum_doc(spectral_report(params, cfg.tol))
    if cfg.fmt == "json":
        return EXIT_OK, json.dumps(doc, indent=2) + "\n"
    lines = [
        f"{{{params.p},{params.q}}} family {doc['family']}, {doc['curvature']}",
        f"alphabet: {' '.join(doc['alphabet'])}",
        f"chi(x) = {doc['char_poly_text']}",
        f"closed form match: {doc['closed_form_match']}",
        "components: " + "; ".join(f"{{{' '.join(c['letters'])}}} h={c['h']}" for c in doc["components"]),
        f"Perron root: {doc['perron']['estimate']:.10f} ({doc['growth']} growth)",
    ]
    if doc["other_root_moduli"]:
        lines.append("other root moduli: " + " ".join(f"{x:.12f}" for x in doc["other_root_moduli"]))
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig, params: TilingParams) -> tuple[int, str]:
    reports = run_suite(params, cfg.n_max, cfg.tol)
    code = EXIT_FAIL if any_failed(reports) else EXIT_OK
    if cfg.fmt == "json":
        return code, reports_to_json(reports)
    lines = []
    for r in reports:
        lines.append(f"{r.status.upper():8} {r.claim:16} {r.evidence}")
        for s in r.parts:
            lines.append(f"{s.status.upper():8}   {s.claim:14} {s.evidence}")
    return code, "\n".join(lines) + "\n"


def cmd_render(cfg: RunConfig, params: TilingParams) -> tuple[int, str]:
    needs_types = cfg.color == "type" or cfg.tree
    depth = max(graph_depth(params, cfg.n_max), cfg.n_max) if needs_types else cfg.n_max
    if cfg.n_max > depth_ceiling(params):
        raise CeilingExceeded(f"render depth {cfg.n_max} exceeds the ceiling {depth_ceiling(params)}")
    graph = build_graph(params, depth)
    tree = spanning_tree(graph, cfg.n_max) if cfg.tree else None
    res = render_svg(graph, cfg.n_max, cfg.color, tree, build_system(params).alphabet)
    return EXIT_OK, res.svg


def cmd_dump_graph(cfg: RunConfig, params: TilingParams) -> tuple[int, str]:
    return EXIT_OK, build_graph(params, cfg.n_max).to_json() + "\n"


COMMANDS = {
    "counts": cmd_counts,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "render": cmd_render,
    "dump-graph": cmd_dump_graph,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    params = TilingParams(cfg.p, cfg.q)
    return COMMANDS[cfg.command](cfg, params)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse: --help is 0, bad flags are 2
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"tessel: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        code, text = run(cfg)
    except (InvalidParams, UnsupportedFamily) as exc:
        print(f"tessel: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CeilingExceeded, WordTooLarge) as exc:
        print(f"tessel: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except EmbeddingFailed as exc:
        print(f"tessel: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
