"""Command-line front end.

Subcommands mirror the library surface: check-ly, roots, estimate-amplitude,
gr-prep, gap, sixvertex, study. JSON goes to stdout; study exits nonzero when
any row fails its margin test.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import barvinok, experiments, hamiltonians, ly, polys, sixvertex
from .tensor import StateTensor


def _load_state(path: str) -> StateTensor:
    return StateTensor.load(path)


def _parse_radius(text: str):
    parts = [float(p) for p in text.split(",")]
    return parts[0] if len(parts) == 1 else parts


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_check_ly(args) -> int:
    psi = _load_state(args.input)
    verdict = ly.falsify_ly(psi, _parse_radius(args.radius), budget=args.budget, seed=args.seed)
    _emit(verdict.to_json_dict())
    return 0


def _cmd_roots(args) -> int:
    psi = _load_state(args.input)
    poly = ly.equatorial_poly(psi, args.y)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["re", "im", "modulus", "residual"])
    if poly.is_zero:
        return 0
    rs = polys.poly_roots(poly)
    for z, resid in zip(rs.roots, rs.residuals):
        w.writerow([repr(float(z.real)), repr(float(z.imag)), repr(float(abs(z))), repr(float(resid))])
    return 0


def _cmd_estimate_amplitude(args) -> int:
    psi = _load_state(args.input)
    est = barvinok.estimate_x_amplitude(psi, args.y, args.epsilon, args.radius)
    _emit({
        "value": [est.value.real, est.value.imag],
        "bound": est.relative_error_bound,
        "p": est.order,
        "exact_fallback": est.exact_fallback,
    })
    return 0


def _cmd_gr_prep(args) -> int:
    psi = _load_state(args.input)
    prepared, distance, records = barvinok.grover_rudolph_emulate(psi, args.epsilon, args.radius)
    prepared.save(args.out)
    if args.log:
        with open(args.log, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["stage", "level", "prefix", "order", "bound", "exact_fallback", "clamped", "value"])
            for r in records:
                row = r.to_row()
                w.writerow([row[k] for k in ("stage", "level", "prefix", "order", "bound", "exact_fallback", "clamped", "value")])
    _emit({"distance": distance, "epsilon": args.epsilon, "out": args.out})
    return 0


def _cmd_gap(args) -> int:
    g = hamiltonians.Graph.load(args.graph)
    if args.phases == "random":
        if args.seed is None:
            raise SystemExit("--phases random needs --seed")
        rng = np.random.default_rng(args.seed)
        g = g.with_phases(rng.uniform(0.0, 2.0 * np.pi, g.n_edges))
        H = hamiltonians.build_phase_shifted(g, args.s)
    else:
        H = hamiltonians.build_epr_like(g, args.s)
    sd = hamiltonians.spectral_data(H)
    _emit({
        "lambda1": sd.lambda1,
        "gap": sd.gap,
        "lambda1_even": sd.lambda1_even,
        "lambda2_even": sd.lambda2_even,
        "lambda1_odd": sd.lambda1_odd,
        "lambda2_sector": sd.lambda2_sector,
        "parity_symmetric": sd.parity_symmetric,
        "residual": sd.residual,
        "degeneracy_tolerance": sd.degeneracy_tolerance,
        "n_eigenvalues": int(sd.eigenvalues.size),
    })
    return 0


def _cmd_sixvertex(args) -> int:
    g = hamiltonians.Graph.load(args.graph)
    circuit = sixvertex.trotterize(g, args.d, args.f, args.beta, args.steps)
    gamma, params = sixvertex.circuit_to_six_vertex(circuit)
    _emit({
        "trotter_trace": sixvertex.trotter_trace(circuit),
        "eulerian_sum": sixvertex.eulerian_partition(gamma, params),
        "params": {"a": params.a, "b": params.b, "c": params.c},
        "regime": params.regime(),
    })
    return 0


_STUDY_ALIASES = {"ly-radius": "ly-radius", "gap": "spectral-gap", "phase": "phase-shifted"}


def _cmd_study(args) -> int:
    cfg = experiments.StudyConfig(
        study=_STUDY_ALIASES[args.kind],
        n_min=args.n_min,
        n_max=args.n_max,
        family=args.family,
        samples=args.samples,
        seed=args.seed,
        dedup=args.dedup,
        out=args.out,
        roots_out=args.roots_out,
    )
    records = experiments.run_study(cfg)
    n_fail = sum(not r.passed for r in records)
    print(f"{len(records)} rows, {n_fail} failing, written to {args.out}")
    return 0 if n_fail == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lytensor", description="Lee-Yang tensor toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check-ly", help="search for zeros inside a multidisk")
    c.add_argument("--input", required=True)
    c.add_argument("--radius", required=True, help="radius, or comma-separated per-index radii")
    c.add_argument("--budget", type=int, default=10000)
    c.add_argument("--seed", type=int, default=None)
    c.set_defaults(func=_cmd_check_ly)

    c = sub.add_parser("roots", help="roots of one equatorial polynomial")
    c.add_argument("--input", required=True)
    c.add_argument("--y", required=True, help="sign pattern bit string")
    c.set_defaults(func=_cmd_roots)

    c = sub.add_parser("estimate-amplitude", help="X-basis amplitude via interpolation")
    c.add_argument("--input", required=True)
    c.add_argument("--y", required=True)
    c.add_argument("--epsilon", type=float, required=True)
    c.add_argument("--radius", type=float, required=True)
    c.set_defaults(func=_cmd_estimate_amplitude)

    c = sub.add_parser("gr-prep", help="emulated amplitude-estimation state preparation")
    c.add_argument("--input", required=True)
    c.add_argument("--epsilon", type=float, required=True)
    c.add_argument("--radius", type=float, required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--log", default=None, help="resource CSV path")
    c.set_defaults(func=_cmd_gr_prep)

    c = sub.add_parser("gap", help="spectral data of an EPR-like Hamiltonian")
    c.add_argument("--graph", required=True)
    c.add_argument("--s", type=float, required=True)
    c.add_argument("--phases", choices=["zero", "random"], default="zero")
    c.add_argument("--seed", type=int, default=None)
    c.set_defaults(func=_cmd_gap)

    c = sub.add_parser("sixvertex", help="Trotter trace vs Eulerian partition sum")
    c.add_argument("--graph", required=True)
    c.add_argument("--d", type=float, required=True)
    c.add_argument("--f", type=float, required=True)
    c.add_argument("--beta", type=float, required=True)
    c.add_argument("--steps", type=int, required=True)
    c.set_defaults(func=_cmd_sixvertex)

    c = sub.add_parser("study", help="run a graph-sweep study, exit 0 iff all rows pass")
    c.add_argument("kind", choices=sorted(_STUDY_ALIASES))
    c.add_argument("--n-min", type=int, required=True)
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--family", choices=experiments.FAMILIES, default="trees")
    c.add_argument("--samples", type=int, default=10)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--dedup", action=argparse.BooleanOptionalAction, default=True)
    c.add_argument("--out", required=True)
    c.add_argument("--roots-out", default=None)
    c.set_defaults(func=_cmd_study)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
