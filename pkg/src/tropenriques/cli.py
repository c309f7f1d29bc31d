"""Command-line entry point: ``tropenriques <group> <command> ...``, JSON on stdout.

Exit codes: 0 success, 1 bad input, 2 a verification verdict came out false,
64 usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .exact_arith import DEFAULT_MODULUS, PrimeField, is_prime

EXIT_OK, EXIT_INPUT, EXIT_VERDICT, EXIT_USAGE = 0, 1, 2, 64
FIELD_ENV = "TROPENRIQUES_FIELD"
DIM_LABELS = ("points", "edges", "faces", "cells")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _default_field() -> int:
    raw = os.environ.get(FIELD_ENV)
    if raw is None:
        return DEFAULT_MODULUS
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{FIELD_ENV}={raw!r} is not an integer") from None


def _field(p: int | None) -> PrimeField:
    p = _default_field() if p is None else p
    if not is_prime(p):
        raise InputError(f"field modulus {p} is not prime")
    return PrimeField(p)


def _read_forms(path: str) -> list[str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    return [ln for ln in lines if ln]


def _load_lifting(path: str):
    from .tropical_complex import Lifting
    try:
        return Lifting.load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"bad lifting in {path}: {exc}") from None


def _cmd_enriques_build(args) -> tuple[dict, int]:
    from . import enriques
    field = _field(args.field)
    if args.seed is None:
        section = enriques.example_section(field)
    else:
        section = enriques.random_linear_section(args.seed, field)
    result = enriques.build_enriques_ideal(section)
    out = result.to_dict()
    if args.verify_kernel_slow:
        kernel = enriques.kernel_by_elimination(field)
        out["kernel_matches_binomials"] = kernel.equals(enriques.VeroneseJoinData(field).ideal())
    return out, EXIT_OK if result.report.verdict else EXIT_VERDICT


def _cmd_enriques_verify(args) -> tuple[dict, int]:
    from . import enriques
    field = _field(args.field)
    section = enriques.section_from_text(_read_forms(args.forms), field)
    report = enriques.check_enriquogeneous(enriques.pullback_quadrics(section))
    out = {"field": field.p, "linear_forms": section.to_text()}
    out.update(report.to_dict())
    return out, EXIT_OK if report.verdict else EXIT_VERDICT


def _cmd_trop_subdivide(args) -> tuple[dict, int]:
    from .tropical_complex import regular_subdivision
    return regular_subdivision(_load_lifting(args.file)).to_json(), EXIT_OK


def _complex(args):
    from .tropical_complex import dual_complex
    return dual_complex(_load_lifting(args.file))


def _cmd_trop_complex(args) -> tuple[dict, int]:
    return _complex(args).to_json(), EXIT_OK


def _cmd_trop_census(args) -> tuple[dict, int]:
    from .tropical_complex import census_table, strata_census
    c = _complex(args)
    return {"census": census_table(strata_census(c), c.n),
            "rows": list(DIM_LABELS[:c.n]), "columns": "|sedentarity|"}, EXIT_OK


def _cmd_trop_homology(args) -> tuple[dict, int]:
    from .trop_homology import hodge_table
    return hodge_table(_complex(args), invariant=args.invariant).to_dict(), EXIT_OK


def _cmd_fixtures(args) -> tuple[dict, int]:
    from .fixtures import regenerate
    report = regenerate(Path(args.out) if args.out else None)
    ok = all(e["matches_frozen"] and e.get("k3_conditions", e.get("unimodular")) for e in report.values())
    return report, EXIT_OK if ok else EXIT_VERDICT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropenriques", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    enr = groups.add_parser("enriques", help="Enriques ideals in P^11")
    enr_cmds = enr.add_subparsers(dest="command", required=True)
    b = enr_cmds.add_parser("build", help="ideal of a linear section of the Veronese join")
    b.add_argument("--seed", type=int, help="random section from this seed (default: the worked example)")
    b.add_argument("--field", type=int, help=f"prime modulus (default ${FIELD_ENV} or {DEFAULT_MODULUS})")
    b.add_argument("--verify-kernel-slow", action="store_true",
                   help="recompute the binomial generators by elimination")
    b.set_defaults(func=_cmd_enriques_build)
    v = enr_cmds.add_parser("verify", help="enriquogeneous checks for three linear forms")
    v.add_argument("--forms", required=True, help="text file, one linear form in z0..z11 per line")
    v.add_argument("--field", type=int)
    v.set_defaults(func=_cmd_enriques_verify)

    trop = groups.add_parser("trop", help="tropical hypersurfaces from liftings")
    trop_cmds = trop.add_subparsers(dest="command", required=True)
    for name, func, help_text in (
        ("subdivide", _cmd_trop_subdivide, "regular subdivision of the Newton polytope"),
        ("complex", _cmd_trop_complex, "faces of the compactified tropical hypersurface"),
        ("census", _cmd_trop_census, "face counts by dimension and sedentarity"),
        ("homology", _cmd_trop_homology, "tropical homology dimensions"),
    ):
        sp = trop_cmds.add_parser(name, help=help_text)
        sp.add_argument("file", help="lifting JSON")
        if name == "homology":
            sp.add_argument("--invariant", action="store_true", help="also the involution-invariant part")
        sp.set_defaults(func=func)

    fx = groups.add_parser("fixtures", help="regenerate and re-validate the shipped liftings")
    fx.add_argument("--out", help="directory to write the regenerated liftings to")
    fx.set_defaults(func=_cmd_fixtures)
    return parser


def run(argv: list[str] | None = None) -> int:
    from .trop_homology import ComplexError
    from .tropical_complex import PreconditionError

    args = build_parser().parse_args(argv)
    try:
        payload, code = args.func(args)
    except (InputError, PreconditionError, ValueError) as exc:
        print(f"tropenriques: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ComplexError as exc:
        print(f"tropenriques: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INPUT
    json.dump(payload, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
