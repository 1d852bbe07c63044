"""Command-line interface: thin JSON adapters over the library.

Exit codes: 0 success, 1 invalid input, 2 verification failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction

from . import checks
from .bridge import (build_bquiv, build_quiv, degree_from_quiver, markov_point, residual_sum,
                     residual_table, additivity_counterexamples, singularity_content,
                     triangle_feasibility)
from .complex3 import FanoPolytope3, block_complex3
from .errors import FanoqError, VerificationError
from .lattice2d import (FanoPolygon, enumerate_fano_polygons, mutate_polygon,
                        standard_refinement)
from .quiver import DecoratedQuiver, block, mutate
from .reconstruction import reconstruct_general, reconstruct_triangle

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _jsonable(obj):
    if hasattr(obj, "to_json"):
        return _jsonable(obj.to_json())
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def load_json(arg: str):
    """Inline JSON, '-' for stdin, or a file path."""
    try:
        if arg.lstrip().startswith(("{", "[")):
            return json.loads(arg)
        if arg == "-":
            return json.load(sys.stdin)
        with open(arg) as fh:
            return json.load(fh)
    except OSError as exc:
        raise FanoqError(f"cannot read {arg}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FanoqError(f"invalid JSON in {arg}: {exc}") from None


def load_object(arg: str):
    """A FanoPolygon or DecoratedQuiver, decided by the keys present."""
    data = load_json(arg)
    if isinstance(data, dict) and "vertices" in data:
        return FanoPolygon.from_json(data)
    if isinstance(data, dict) and "labels" in data:
        return DecoratedQuiver.from_json(data)
    raise FanoqError("input is neither a polygon ('vertices') nor a quiver ('labels')")


def load_polygon(arg: str) -> FanoPolygon:
    obj = load_object(arg)
    if not isinstance(obj, FanoPolygon):
        raise FanoqError("this command needs a polygon")
    return obj


def load_quiver(arg: str) -> DecoratedQuiver:
    obj = load_object(arg)
    return build_quiv(obj).quiver if isinstance(obj, FanoPolygon) else obj


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise FanoqError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FanoqError(f"not a rational number: {text!r}") from None


def _need_vertex(args) -> int:
    if args.vertex is None:
        raise UsageError(f"{args.command}: --vertex is required")
    return args.vertex


# ---------------------------------------------------------------------------
# subcommands

def cmd_quiver(args):
    return dumps(build_quiv(load_polygon(args.input)))


def cmd_block(args):
    obj = load_object(args.input)
    return dumps(build_bquiv(obj) if isinstance(obj, FanoPolygon) else block(obj))


def cmd_refine(args):
    return dumps(standard_refinement(load_polygon(args.input)))


def cmd_mutate_polygon(args):
    P = load_polygon(args.input)
    pq = build_quiv(P)
    v = _need_vertex(args)
    if not 0 <= v < pq.quiver.n:
        raise FanoqError(f"no vertex {v}; quiv(P) has {pq.quiver.n}")
    return dumps(mutate_polygon(P, pq.normals[v]))


def cmd_mutate_quiver(args):
    return dumps(mutate(load_quiver(args.input), _need_vertex(args), args.k))


def cmd_degree(args):
    obj = load_object(args.input)
    return f"{degree_from_quiver(build_quiv(obj) if isinstance(obj, FanoPolygon) else obj)}\n"


def cmd_content(args):
    P = load_polygon(args.input)
    out = singularity_content(P).to_json()
    out["residual_sum"] = residual_sum(P)
    return dumps(out)


def cmd_markov(args):
    return dumps(markov_point(load_polygon(args.input)))


def cmd_reconstruct(args):
    obj = load_object(args.input)
    Q = build_bquiv(obj).quiver if isinstance(obj, FanoPolygon) else obj
    algorithm = reconstruct_triangle if args.method == "triangle" else reconstruct_general
    return dumps(algorithm(Q, args.vertex or 0))


def cmd_feasibility(args):
    if None in (args.w, args.l, args.tau, args.residual):
        raise UsageError("feasibility: --w, --l, --tau and --residual are required")
    return f"{triangle_feasibility(_int_list(args.w), _int_list(args.l), args.tau, _fraction(args.residual))}\n"


def cmd_enumerate(args):
    return dumps(list(enumerate_fano_polygons(args.bound, args.group)))


def cmd_complex3(args):
    data = load_json(args.input)
    if not isinstance(data, dict):
        raise FanoqError("polytope JSON must be an object")
    return dumps(block_complex3(FanoPolytope3.from_json(data)))


def cmd_check(args):
    lines, failed = [], False
    if args.input:
        obj = load_object(args.input)
        if isinstance(obj, FanoPolygon):
            results = checks.run_polygon_checks(obj)
        else:
            results = {"mutation": checks.quiver_mutation_ok(obj)}
            if obj.n == 3:
                results["triangle_agreement"] = checks.triangle_agreement(obj)
        for name, ok in results.items():
            lines.append(f"{'PASS' if ok else 'FAIL'} {name}")
            failed |= not ok
    else:
        polygons = list(enumerate_fano_polygons(args.bound, args.group))
        table = residual_table(polygons)
        notes = {}
        fails = checks.summarize(checks.run_polygon_checks(P, table=table, notes=notes)
                                 for P in polygons)
        for name in checks.POLYGON_CHECKS:
            bad = fails[name]
            lines.append(f"{'FAIL' if bad else 'PASS'} {name}: {bad} of {len(polygons)} polygons fail")
            failed |= bool(bad)
        triangles = checks.random_balanced_triangles(args.samples)
        bad = sum(not checks.triangle_agreement(Q) for Q in triangles)
        lines.append(f"{'FAIL' if bad else 'PASS'} triangle_agreement: {bad} of {len(triangles)} random triangles fail")
        failed |= bool(bad)
        checked, counter = additivity_counterexamples(polygons, table)
        lines.append(f"INFO residual additivity: {len(counter)} of {checked} multi-class baskets differ from the class sum")
        lines.append(f"INFO round trips whose reported polygon is another realization: "
                     f"{notes.get('other_realization', 0)}")
        lines.append(f"INFO round trips recovering the mirror SL class: {notes.get('sl_differs', 0)}")
    return "\n".join(lines) + "\n", (EXIT_VERIFY if failed else EXIT_OK)


COMMANDS = {
    "quiver": (cmd_quiver, "polygon -> decorated quiver of its standard refinement"),
    "block": (cmd_block, "polygon or quiver -> block quiver"),
    "refine": (cmd_refine, "polygon -> standard refinement cones"),
    "mutate-polygon": (cmd_mutate_polygon, "combinatorial mutation at a T-vertex of quiv(P)"),
    "mutate-quiver": (cmd_mutate_quiver, "generalized quiver mutation mut^k"),
    "degree": (cmd_degree, "degree from the quiver's cyclic arrow sum"),
    "content": (cmd_content, "singularity content and residual sum"),
    "markov": (cmd_markov, "point on the Markov-type hypersurface"),
    "reconstruct": (cmd_reconstruct, "recover a Fano polygon from a block quiver"),
    "feasibility": (cmd_feasibility, "arrow multiplier allowed for a triangle block quiver"),
    "enumerate": (cmd_enumerate, "Fano polygons with coordinates bounded by --bound"),
    "complex3": (cmd_complex3, "block complex of a 3-dimensional Fano polytope"),
    "check": (cmd_check, "invariant suite on an input or the enumeration corpus"),
}

_INPUT_OPTIONAL = {"check"}
_NO_INPUT = {"feasibility", "enumerate"}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fanoq", description="Quivers of Fano lattice polygons.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name, (_, text) in COMMANDS.items():
        p = sub.add_parser(name, help=text, description=text)
        if name in _INPUT_OPTIONAL:
            p.add_argument("input", nargs="?", help="JSON file, inline JSON, or '-'")
        elif name not in _NO_INPUT:
            p.add_argument("input", help="JSON file, inline JSON, or '-'")
        p.add_argument("--out", help="write output to this path")
        if name in ("mutate-polygon", "mutate-quiver", "reconstruct"):
            p.add_argument("--vertex", type=int, help="vertex id")
        if name == "mutate-quiver":
            p.add_argument("--k", type=int, default=1, help="mutation parameter (default 1)")
        if name == "reconstruct":
            p.add_argument("--method", choices=("general", "triangle"), default="general")
        if name in ("enumerate", "check"):
            p.add_argument("--group", choices=("SL", "GL"), default="GL", help="equivalence group")
            p.add_argument("--bound", type=int, default=2 if name == "check" else 3,
                           help="coordinate bound of the enumeration")
        if name == "check":
            p.add_argument("--samples", type=int, default=100, help="random balanced triangles")
        if name == "feasibility":
            p.add_argument("--w", help="three weights, comma separated")
            p.add_argument("--l", help="three local indices, comma separated")
            p.add_argument("--tau", type=int)
            p.add_argument("--residual", help="rational residual sum, e.g. -5/3")
    return parser


_NEGATIVE = re.compile(r"^-\d")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite '--opt -5/3' as '--opt=-5/3' so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("--") and "=" not in a and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = COMMANDS[args.command][0]
    try:
        result = handler(args)
    except UsageError as exc:
        print(f"fanoq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FanoqError as exc:
        print(f"fanoq: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"fanoq: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"fanoq: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
