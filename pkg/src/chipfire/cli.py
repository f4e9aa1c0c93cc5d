"""Command-line front end.

Matrices in files are always the redistribution matrix (delta); the engine
fires by subtracting its rows. States in files and output are labelled from 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .critical import canonical_critical, dual, enumerate_criticals
from .dynamics import Engine, d_vector, parse_configuration, stabilize
from .energy import EnergySpec, energy, minimize_energy
from .errors import ChipFireError, FormatError
from .graphio import is_g_parking, laplacian, parse_graph, reduced_laplacian
from .matcore import IntegerMatrix, determinant, equivalence_witness, format_matrix, m_verdict, parse_matrix
from .stability import canonical_z_superstable, enumerate_z_superstables, stability_report

BANNER = "# firing subtracts rows of Δ (columns of L = Δᵀ)"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc


def _graph(args):
    G = parse_graph(_read(args.graph))
    sink = args.sink if args.sink is not None else G.sink
    return G, sink


def _delta(args) -> IntegerMatrix:
    if args.matrix:
        return parse_matrix(_read(args.matrix))
    if args.graph:
        G, sink = _graph(args)
        if sink is None:
            raise FormatError("a graph input needs a sink (--sink or in the file)")
        return reduced_laplacian(G, sink)
    raise FormatError("one of --matrix or --graph is required")


def _config(path: str):
    return parse_configuration(_read(path))


def _fmt(c) -> str:
    return " ".join(str(x) for x in c)


def cmd_check(args):
    delta = _delta(args)
    verdict = m_verdict(delta)
    payload = verdict.to_json()
    payload["delta"] = delta.to_lists()
    payload["L"] = delta.T.to_lists()
    payload["determinant"] = determinant(delta)
    text = [f"Z-matrix: {verdict.is_z}", f"M-matrix: {verdict.is_m}",
            f"determinant: {payload['determinant']}"]
    if verdict.is_m:
        text.append("certificate: " + " ".join(payload["certificate"]))
    else:
        text.append(f"failure: {verdict.failure_witness}")
    return payload, text


def cmd_stabilize(args):
    e = Engine(_delta(args))
    record = stabilize(e, _config(args.config), policy=args.policy, seed=args.seed, cap=args.cap)
    payload = record.to_json()
    return payload, [f"result: {_fmt(record.result)}", f"odometer: {_fmt(record.odometer)}",
                     f"sequence: {_fmt(payload['sequence'])}"]


def cmd_superstable(args):
    e = Engine(_delta(args))
    report = stability_report(e, _config(args.config))
    text = [f"stable: {report.stable}",
            f"chi_superstable: {report.chi_superstable}"
            + ("" if report.violating_chi is None else f" (violator {_fmt(report.violating_chi)})"),
            f"z_superstable: {report.z_superstable}"
            + ("" if report.violating_z is None else f" (violator {_fmt(report.violating_z)})")]
    return report.to_json(), text


def cmd_canonical(args):
    e = Engine(_delta(args))
    c = _config(args.config)
    if args.kind == "z":
        result = canonical_z_superstable(e, c)
        payload = {"kind": "z", "input": list(c), "result": list(result)}
    else:
        result, cert = canonical_critical(e, c)
        payload = {"kind": "critical", "input": list(c), "result": list(result),
                   "certificate": cert.to_json()}
    return payload, [_fmt(result)]


def cmd_dual(args):
    e = Engine(_delta(args))
    c = _config(args.config)
    result = dual(e, c)
    return {"input": list(c), "d_vector": list(d_vector(e)), "result": list(result)}, [_fmt(result)]


def cmd_enumerate(args):
    e = Engine(_delta(args))
    if args.kind == "z":
        configs = enumerate_z_superstables(e, args.parallel)
    else:
        configs = enumerate_criticals(e, args.parallel)
    det = determinant(e.L)
    check = f"{len(configs)} = det" if len(configs) == det else f"{len(configs)} != det {det}"
    payload = {"kind": args.kind, "configurations": [list(c) for c in configs],
               "count": len(configs), "determinant": det}
    return payload, [_fmt(c) for c in configs] + [check]


def _spec(path: str) -> EnergySpec:
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad energy spec: {exc}") from exc
    return EnergySpec.from_json(data)


def cmd_energy(args):
    e = Engine(_delta(args))
    spec = _spec(args.spec)
    c = _config(args.config)
    value = energy(e, spec, c)
    payload = {"config": list(c), "spec": spec.to_json(), "energy": value.to_json()}
    return payload, [_energy_text(value)]


def _energy_text(value) -> str:
    if value.exact is not None:
        return str(value.exact)
    mid, err = value.approx()
    return f"{mid} +/- {err}"


def cmd_minimize(args):
    e = Engine(_delta(args))
    spec = _spec(args.spec)
    c = _config(args.config)
    best = minimize_energy(e, spec, c)
    value = energy(e, spec, best)
    payload = {"input": list(c), "spec": spec.to_json(), "minimizer": list(best),
               "energy": value.to_json()}
    return payload, [f"minimizer: {_fmt(best)}", f"energy: {_energy_text(value)}"]


def cmd_equiv(args):
    e = Engine(_delta(args))
    f, g = _config(args.config), _config(args.config2)
    z = equivalence_witness(e.L, f, g, e.L_inverse)
    payload = {"f": list(f), "g": list(g), "equivalent": z is not None,
               "witness": None if z is None else list(z)}
    return payload, ["not equivalent" if z is None else f"witness: {_fmt(z)}"]


def cmd_gparking(args):
    G, sink = _graph(args)
    if sink is None:
        raise FormatError("gparking needs a sink (--sink or in the file)")
    a = _config(args.config)
    ok = is_g_parking(G, sink, a)
    return {"config": list(a), "sink": sink, "g_parking": ok}, [str(ok).lower()]


def cmd_laplacian(args):
    G, sink = _graph(args)
    if args.sink is not None:
        M = reduced_laplacian(G, sink)
    else:
        M = laplacian(G)
    payload = {"reduced": args.sink is not None, "sink": args.sink, "n": M.n, "rows": M.to_lists()}
    return payload, format_matrix(M).splitlines()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chipfire",
                                     description="Exact chip-firing on M-matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, needs_matrix=True, config=False):
        p = sub.add_parser(name, help=help)
        if needs_matrix:
            src = p.add_mutually_exclusive_group(required=True)
            src.add_argument("--matrix", metavar="FILE", help="file holding delta")
            src.add_argument("--graph", metavar="FILE", help="graph file; delta is its reduced Laplacian")
        else:
            p.add_argument("--graph", metavar="FILE", required=True)
        p.add_argument("--sink", type=int, help="sink vertex (1-based)")
        if config:
            p.add_argument("--config", metavar="FILE", required=True)
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=func, needs_matrix=needs_matrix)
        return p

    add("check", cmd_check, "M-matrix verdict")
    p = add("stabilize", cmd_stabilize, "stabilize a configuration", config=True)
    p.add_argument("--policy", choices=["smallest", "random"], default="smallest")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=10**7)
    add("superstable", cmd_superstable, "stable / chi- / z-superstable report", config=True)
    p = add("canonical", cmd_canonical, "canonical class representative", config=True)
    p.add_argument("--kind", choices=["z", "critical"], default="z")
    add("dual", cmd_dual, "D^L - c", config=True)
    p = add("enumerate", cmd_enumerate, "list z-superstables or criticals")
    p.add_argument("--kind", choices=["z", "critical"], default="z")
    p.add_argument("--parallel", type=int, default=None, metavar="N", help="worker processes")
    p = add("energy", cmd_energy, "evaluate an energy", config=True)
    p.add_argument("--spec", metavar="FILE", required=True)
    p = add("minimize", cmd_minimize, "energy minimizer of a class", config=True)
    p.add_argument("--spec", metavar="FILE", required=True)
    p = add("equiv", cmd_equiv, "equivalence witness", config=True)
    p.add_argument("--config2", metavar="FILE", required=True)
    add("gparking", cmd_gparking, "G-parking test", needs_matrix=False, config=True)
    add("laplacian", cmd_laplacian, "full or reduced Laplacian of a graph", needs_matrix=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, text = args.func(args)
    except ChipFireError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error[InvalidInput]: {exc}", file=sys.stderr)
        return FormatError.exit_code
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        if args.needs_matrix:
            print(BANNER)
        print("\n".join(text))
    return 0


if __name__ == "__main__":
    sys.exit(main())
