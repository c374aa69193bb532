"""Command-line front end.

Exit codes: 0 success, 1 property violated, 2 usage or parse error,
3 mesh validation failure, 4 domain error (e.g. degree overflow).
"""

from __future__ import annotations

import argparse
import sys

from .cohomology import betti_numbers
from .complex import build_complex
from .errors import ComplexError, FormError, ParseError
from .forms import exterior_derivative
from .meshio import load_form, load_mesh, write_form
from .verify import PROFILES, PROPERTIES, check_property
from .wedge import cup

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_DOMAIN = 4


def _u64(text):
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _positive(text):
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _load(args):
    mesh = load_mesh(args.mesh, args.format)
    return build_complex(mesh.faces, mesh.vertex_count, mesh.coords, orient=args.orient)


def _emit(text, args):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args):
    mesh = load_mesh(args.mesh, args.format)
    try:
        c = build_complex(mesh.faces, mesh.vertex_count, mesh.coords, orient=args.orient)
    except ComplexError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(
        f"V={c.n_vertices} E={c.n_edges} F={c.n_faces}\n"
        f"boundary={'true' if c.boundary_flag else 'false'}\n"
        "orientable=true\n",
        args,
    )
    return EXIT_OK


def cmd_derivative(args):
    c = _load(args)
    form = load_form(args.form, c)
    if form.degree == 2:
        print("warning: the derivative of a 2-form is the empty 3-form", file=sys.stderr)
    _emit(write_form(exterior_derivative(form)), args)
    return EXIT_OK


def cmd_wedge(args):
    c = _load(args)
    a = load_form(args.form_a, c)
    b = load_form(args.form_b, c)
    _emit(write_form(cup(a, b)), args)
    return EXIT_OK


def cmd_betti(args):
    c = _load(args)
    report = betti_numbers(c)
    _emit(f"V={c.n_vertices} E={c.n_edges} F={c.n_faces}\n" + report.to_text(), args)
    return EXIT_OK


def cmd_check(args):
    report = check_property(args.property, args.trials, args.seed, args.profile, args.tol)
    _emit(report.to_text(), args)
    return EXIT_OK if report.passed else EXIT_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polywedge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def mesh_cmd(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("mesh", help="OFF or OBJ mesh file")
        p.add_argument("--format", choices=("off", "obj"), help="mesh format (default: from extension)")
        p.add_argument("--orient", action="store_true", help="coherently re-orient faces before validating")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")
        return p

    p = mesh_cmd("validate", "check that a mesh is an oriented polygonal pseudomanifold")
    p.set_defaults(func=cmd_validate)

    p = mesh_cmd("derivative", "exterior derivative of a DFORM file")
    p.add_argument("form")
    p.set_defaults(func=cmd_derivative)

    p = mesh_cmd("wedge", "cup product of two DFORM files")
    p.add_argument("form_a")
    p.add_argument("form_b")
    p.set_defaults(func=cmd_wedge)

    p = mesh_cmd("betti", "Betti numbers over the reals")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("check", help="run a property check on generated instances")
    p.add_argument("property", choices=sorted(PROPERTIES))
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=_u64, default=0, help="64-bit seed (default 0)")
    p.add_argument("--profile", choices=PROFILES, help="mesh profile (default depends on property)")
    p.add_argument("--tol", type=float, help="override the property tolerance")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, OSError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ComplexError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FormError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
