#!/usr/bin/env python3
"""Print the reference computations on the bundled models.

Christoffel tables for the four phi_A cases of the quantum plane, the
Hamiltonian fields of x and y, the bracket {x, y}, and a one-line summary of
every check suite per bundled model.
"""

import argparse

from homrho import CheckConfig, load_spec, parse_element
from homrho.algebra import STRUCTURE_TABLE, check_structure
from homrho.calculus import check_cartan, check_d_squared
from homrho.cli import _poisson_triples
from homrho.connection import check_connection, christoffel, levi_civita
from homrho.dsl import bundled_specs
from homrho.poisson import check_poisson_axioms, hamiltonian_vf, poisson
from homrho.render import render_derivation, render_gamma_text

PLANE_CASES = {
    "quantum_plane": "Id",
    "quantum_plane_pm": "diag(1,-1)",
    "quantum_plane_mm": "-Id",
    "quantum_plane_mp": "diag(-1,1)",
}


def summary(report):
    bad = [e.check for e in report.failures()]
    return "pass" if not bad else "fail: " + ", ".join(bad)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=CheckConfig.seed)
    parser.add_argument("--samples", type=int, default=CheckConfig.cochain_samples)
    args = parser.parse_args()
    cfg = CheckConfig(seed=args.seed, cochain_samples=args.samples)

    for name, case in PLANE_CASES.items():
        spec = load_spec(name)
        print(f"# Christoffel coefficients, phi_A = {case}")
        print(render_gamma_text(christoffel(spec.metric), spec.algebra.names))
        print()

    spec = load_spec("quantum_plane")
    S, A = spec.symplectic, spec.algebra
    print("# Hamiltonian fields, Omega = dy ^ dx")
    for f in ("x", "y"):
        print(f"X_{f} = {render_derivation(hamiltonian_vf(S, parse_element(f, A)))}")
    print(f"{{x, y}} = {poisson(S, A.gen('x'), A.gen('y'))}")
    print()

    print("# check suites")
    for name in bundled_specs():
        spec = load_spec(name)
        lines = [f"structure: {summary(check_structure(spec.algebra))}"]
        if spec.metric is not None:
            C = levi_civita(spec.metric)
            lines.append(f"connection: {summary(check_connection(C, spec.metric, samples=cfg.connection_samples, seed=cfg.seed))}")
        if spec.module is not None and spec.algebra.backend != STRUCTURE_TABLE:
            d2 = check_d_squared(spec.module, samples=cfg.cochain_samples, max_arity=cfg.max_arity, seed=cfg.seed)
            cartan = check_cartan(spec.module, samples=cfg.cochain_samples, max_arity=cfg.max_arity, seed=cfg.seed)
            lines.append(f"d2: {summary(d2)}")
            lines.append(f"cartan: {summary(cartan)}")
        if spec.poisson is not None:
            triples = _poisson_triples(spec, cfg.poisson_samples, cfg.seed)
            lines.append(f"poisson: {summary(check_poisson_axioms(spec.poisson, triples))}")
        print(f"{name}:")
        for line in lines:
            print(f"  {line}")


if __name__ == "__main__":
    main()
