"""Command-line entry point: ``homrho SUBCOMMAND SPEC [options]``.

Exit status: 0 when every requested check passes, 1 on a check failure or a
singular/inconsistent computation, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys

from .algebra import STRUCTURE_TABLE, check_structure
from .config import DEFAULTS
from .calculus import check_cartan, check_d_squared, random_monomial
from .connection import Connection, check_connection, christoffel, curvature
from .dsl import ModelSpec, load_spec, parse_element
from .errors import ConsistencyError, DomainError, SingularError, SpecError, StructureError
from .forms import metric_validate
from .grading import validate_cocycle
from .poisson import check_poisson_axioms, hamiltonian_vf, poisson, symplectic_validate
from .render import gamma_to_json, render, render_derivation, render_element, render_gamma_text
from .report import Report

DEFAULT_SEED = DEFAULTS.seed
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _need(spec: ModelSpec, what: str):
    value = getattr(spec, what)
    if value is None:
        raise UsageError(f"{spec.source or spec.name} declares no {what}")
    return value


def _emit_reports(reports, fmt, out):
    if fmt == "json":
        payload = {
            "passed": all(r.passed for r in reports),
            "reports": [{"name": r.name, "passed": r.passed, "entries": r.to_json()} for r in reports],
        }
        print(json.dumps(payload, indent=2), file=out)
    else:
        for r in reports:
            print(f"== {r.name} ==", file=out)
            print(str(r), file=out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- subcommands --------------------------------------------------------------


def cmd_validate(spec: ModelSpec, args, out):
    alg = spec.algebra
    reports = [validate_cocycle(alg.cocycle, alg.group, seed=args.seed), check_structure(alg)]
    if spec.module is not None:
        reports.append(spec.module.is_even())
    if spec.metric is not None:
        reports.append(metric_validate(spec.metric))
    if spec.symplectic is not None:
        reports.append(symplectic_validate(spec.symplectic))
    return _emit_reports(reports, args.format, out)


def cmd_christoffel(spec, args, out):
    gamma = christoffel(_need(spec, "metric"))
    if args.format == "json":
        print(json.dumps(gamma_to_json(gamma), indent=2), file=out)
    else:
        print(render_gamma_text(gamma, spec.algebra.names), file=out)
    return EXIT_OK


def cmd_connection_check(spec, args, out):
    g = _need(spec, "metric")
    C = Connection.from_gamma(spec.module, christoffel(g))
    return _emit_reports([check_connection(C, g, samples=args.samples, seed=args.seed)], args.format, out)


def cmd_curvature(spec, args, out):
    g = _need(spec, "metric")
    module = spec.module
    C = Connection.from_gamma(module, christoffel(g))
    n = module.n
    if args.indices:
        bad = [i for i in args.indices if not 1 <= i <= n]
        if bad:
            raise UsageError(f"indices must lie in 1..{n}")
        triples = [tuple(i - 1 for i in args.indices)]
    else:
        triples = list(itertools.product(range(n), repeat=3))
    B = module.bases
    names = spec.algebra.names
    values = {}
    for i, j, k in triples:
        values[f"{i + 1},{j + 1},{k + 1}"] = curvature(C, B[i], B[j], B[k])
    if args.format == "json":
        payload = {key: {nm: render_element(c) for nm, c in zip(names, R.components)} for key, R in values.items()}
        print(json.dumps(payload, indent=2), file=out)
    else:
        for (i, j, k), R in zip(triples, values.values()):
            print(f"R(d{names[i]},d{names[j]})d{names[k]} = {render_derivation(R)}", file=out)
    return EXIT_OK


def cmd_d2(spec, args, out):
    module = _need(spec, "module")
    report = check_d_squared(module, samples=args.samples, max_arity=args.max_arity, seed=args.seed)
    return _emit_reports([report], args.format, out)


def cmd_cartan(spec, args, out):
    module = _need(spec, "module")
    report = check_cartan(module, samples=args.samples, max_arity=args.max_arity, seed=args.seed)
    return _emit_reports([report], args.format, out)


def cmd_hamiltonian(spec, args, out):
    S = _need(spec, "symplectic")
    X = hamiltonian_vf(S, parse_element(args.f, spec.algebra))
    print(render(X, args.format), file=out)
    return EXIT_OK


def cmd_poisson(spec, args, out):
    P = _need(spec, "poisson")
    f = parse_element(args.f, spec.algebra)
    g = parse_element(args.g, spec.algebra)
    if P.symplectic is not None:
        value = poisson(P.symplectic, f, g)
    else:
        value = P.bracket(f, g)
    print(render(value, args.format), file=out)
    return EXIT_OK


def _poisson_triples(spec, samples, seed):
    alg = spec.algebra
    if alg.backend == STRUCTURE_TABLE:
        basis = [alg.basis(name) for name in alg.names]
        return list(itertools.product(basis, repeat=3))
    rng = random.Random(seed)
    mono = lambda: random_monomial(spec.module, rng, span=2)  # noqa: E731
    return [(mono(), mono(), mono()) for _ in range(samples)]


def cmd_poisson_check(spec, args, out):
    P = _need(spec, "poisson")
    report = check_poisson_axioms(P, _poisson_triples(spec, args.samples, args.seed))
    return _emit_reports([report], args.format, out)


COMMANDS = {
    "validate": (cmd_validate, "cocycle, structure, phiA, metric and symplectic reports"),
    "christoffel": (cmd_christoffel, "Christoffel coefficients of the model metric"),
    "connection-check": (cmd_connection_check, "torsion, compatibility, Bianchi and curvature lemmas"),
    "curvature": (cmd_curvature, "R(d_i, d_j) d_k"),
    "d2": (cmd_d2, "d_mu o d_mu = 0 on random Hom-cochains"),
    "cartan": (cmd_cartan, "Cartan identity on random (X, alpha)"),
    "hamiltonian": (cmd_hamiltonian, "Hamiltonian derivation X_f"),
    "poisson": (cmd_poisson, "Poisson bracket {f, g}"),
    "poisson-check": (cmd_poisson_check, "Poisson axioms on sampled triples"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="homrho", description="Calculus on Hom-rho-commutative algebras.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("spec", metavar="SPEC", help="model file or bundled model name")
        if name == "curvature":
            p.add_argument("--indices", type=int, nargs=3, metavar=("I", "J", "K"))
        if name == "connection-check":
            p.add_argument("--samples", type=int, default=DEFAULTS.connection_samples)
        if name in ("d2", "cartan"):
            p.add_argument("--samples", type=int, default=DEFAULTS.cochain_samples)
            p.add_argument("--max-arity", type=int, default=DEFAULTS.max_arity)
        if name == "poisson-check":
            p.add_argument("--samples", type=int, default=DEFAULTS.poisson_samples)
        if name in ("hamiltonian", "poisson"):
            p.add_argument("-f", required=True, metavar="EXPR")
        if name == "poisson":
            p.add_argument("-g", required=True, metavar="EXPR")
    return parser


def run_command(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    handler = COMMANDS[args.command][0]
    try:
        spec = load_spec(args.spec)
        return handler(spec, args, out)
    except (SpecError, FileNotFoundError, UsageError) as exc:
        print(f"homrho: error: {exc}", file=err)
        return EXIT_USAGE
    except (SingularError, ConsistencyError, DomainError, StructureError, ZeroDivisionError) as exc:
        print(f"homrho: {type(exc).__name__}: {exc}", file=err)
        return EXIT_FAIL


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
