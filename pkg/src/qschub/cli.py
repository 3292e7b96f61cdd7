"""Command line: ``qschub <command> --space ...``; all output is JSON except DOT.

Exit codes: 0 success, 1 failed verification or numerical check,
2 malformed input, 3 unsupported space or label.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import duality, vafa, verify
from .qalg import AlgebraError, assemble, euler_class, semisimplicity, structure_constants
from .rootsys import cached_diagram, quantum_chevalley
from .spaces import HomSpace, SpaceParseError, UnsupportedSpace
from .spectrum import SpectrumError, build_spectrum

EXIT_FAIL, EXIT_PARSE, EXIT_UNSUPPORTED = 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    """Flags shared by every subcommand."""

    precision: int = 128
    tol: float = 1e-9
    convention: str = "calibrated"
    cache_dir: str | None = None
    threads: int = 1

    def __post_init__(self):
        if self.precision < 53:
            raise ValueError("--precision must be at least 53 bits")
        if not self.tol > 0:
            raise ValueError("--tol must be positive")
        if self.threads < 1:
            raise ValueError("--threads must be positive")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        cache = args.cache_dir or os.environ.get("QSCHUB_CACHE")
        return cls(args.precision, args.tol, args.convention, cache, args.threads)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit({"error": message, "kind": "usage"})
        raise SystemExit(EXIT_PARSE)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(verify._jsonable(obj), sort_keys=True) + "\n")


def _space(args) -> HomSpace:
    return HomSpace.parse(args.space)


def _alg(args, space):
    return assemble(space, args.config.convention, args.config.precision)


# --------------------------------------------------------------------------
# Commands


def cmd_spectrum(args) -> int:
    space = _space(args)
    if space.tag in ("E6P1", "E7P7"):
        m = np.array(quantum_chevalley(space).at(1), dtype=float)
        ev = sorted(np.linalg.eigvals(m), key=lambda z: (round(abs(z), 9), round(np.angle(z), 9)))
        _emit({"space": str(space), "kind": "eigenvalues of H at q=1",
               "points": [[complex(z).real, complex(z).imag] for z in ev]})
        return 0
    spec = build_spectrum(space, args.config.convention, args.config.precision)
    out = spec.to_json()
    out["total_length"] = spec.total_length
    _emit(out)
    return 0


def cmd_hasse(args) -> int:
    space = _space(args)
    diagram = cached_diagram(space, args.config.cache_dir)
    if args.format == "dot":
        sys.stdout.write(diagram.to_dot() + "\n")
    else:
        _emit(diagram.to_json())
    return 0


def cmd_gw(args) -> int:
    space = _space(args)
    alg = _alg(args, space)
    if args.all:
        _emit(vafa.gw_table(space, threads=args.config.threads))
        return 0
    if not args.classes:
        raise ValueError("--classes or --all is required")
    triple = [t.strip() for t in args.classes.split(";")]
    if len(triple) != 3:
        raise ValueError("--classes needs three labels separated by ';'")
    if args.genus:
        _emit(vafa.gw_genus(space, args.genus, *triple, alg=alg))
    else:
        _emit(vafa.gw3(space, *triple, alg=alg, tol=max(args.config.tol, 1e-6)))
    return 0


def cmd_table(args) -> int:
    space = _space(args)
    alg = _alg(args, space)
    st = structure_constants(alg, check_positive=space.tag != "C3P2")
    out = st.to_json()
    out["max_rounding_error"] = st.max_rounding_error
    _emit(out)
    return 0


def cmd_euler(args) -> int:
    space = _space(args)
    alg = _alg(args, space)
    out = euler_class(space, alg)
    out["semisimplicity"] = semisimplicity(alg)
    _emit(out)
    return 0


def cmd_involution(args) -> int:
    space = _space(args)
    if space.tag == "E6P1":
        rep = duality.e6_conj_identity(tol=args.config.tol)
        _emit(rep)
        return 0 if rep["passed_nominal"] else EXIT_FAIL
    if space.tag == "E7P7":
        rep = duality.e7_conj_identity(tol=args.config.tol)
        _emit(rep)
        return 0 if rep["passed_nominal"] else EXIT_FAIL
    if space.tag == "C3P2":
        _emit(duality.gw26_obstruction())
        return 0
    rep = duality.check_involution(space, tol=max(args.config.tol, 1e-9))
    _emit(rep.to_json())
    return 0 if rep.verdict else EXIT_FAIL


def cmd_verify(args) -> int:
    checks = verify.run_suite(args.suite)
    out = verify.summarize(checks)
    if not args.verbose:
        out.pop("checks")
    _emit(out)
    return 0 if out["passed"] else EXIT_FAIL


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=128, help="working precision in bits")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--convention", choices=("calibrated", "literal", "paper"), default="calibrated")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--threads", type=int, default=1)

    p = _Parser(prog="qschub", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def space_cmd(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--space", required=True)
        sp.set_defaults(func=fn)
        return sp

    space_cmd("spectrum", cmd_spectrum, "points of the q=1 spectrum")
    h = space_cmd("hasse", cmd_hasse, "quantum Hasse diagram")
    h.add_argument("--format", choices=("json", "dot"), default="json")
    g = space_cmd("gw", cmd_gw, "Gromov-Witten invariants by the trace formula")
    g.add_argument("--classes", help='three labels, e.g. "2,1;2,1;1,1"')
    g.add_argument("--genus", type=int, default=0)
    g.add_argument("--all", action="store_true", help="all label triples")
    space_cmd("table", cmd_table, "structure constants at q=1")
    space_cmd("euler", cmd_euler, "quantum Euler class")
    space_cmd("involution", cmd_involution, "complex conjugation of Schubert classes")
    v = sub.add_parser("verify", parents=[common], help="pinned verification suites")
    v.add_argument("--suite", choices=tuple(verify.SUITES) + ("all",), default="all")
    v.add_argument("--verbose", action="store_true", help="include passing checks")
    v.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.config = RunConfig.from_args(args)
    except ValueError as exc:
        _emit({"error": str(exc), "kind": "usage"})
        return EXIT_PARSE
    try:
        return args.func(args)
    except SpaceParseError as exc:
        _emit({"error": str(exc), "kind": "parse"})
        return EXIT_PARSE
    except UnsupportedSpace as exc:
        _emit({"error": str(exc), "kind": "unsupported"})
        return EXIT_UNSUPPORTED
    except (AlgebraError, SpectrumError) as exc:
        _emit({"error": str(exc), "kind": "numerical"})
        return EXIT_FAIL
    except ValueError as exc:
        _emit({"error": str(exc), "kind": "parse"})
        return EXIT_PARSE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
