"""Command-line surface.

Every subcommand reads a network file via --net and writes a stable
document to stdout: identical invocation, identical bytes.  Exit codes:
0 success, 1 validation or usage error, 2 internal invariant failure
(including engine disagreement under patterns --check-engines).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .classify import classify_nodes
from .induction import (
    analyze,
    compare_engines,
    theorem_pattern,
)
from .network import (
    InvariantError,
    IONetwork,
    NetworkError,
    network_to_dot,
    parse_network,
)
from .odesim import continue_equilibrium, detect_homeostasis, synthesize_ode
from .oracle import (
    OracleError,
    SingularJacobian,
    block_product_sign,
    force_block_singular,
    numeric_pattern,
    sample_jacobian,
    symbolic_factorization,
)
from .pattern import pattern_to_dot
from .subnetworks import block_index_sets


def _load_net(path: str) -> IONetwork:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise NetworkError("cannot read %s: %s" % (path, exc.strerror)) from exc
    return parse_network(text)


def _emit_json(doc: dict) -> None:
    doc = {"schema": 1, **doc}
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False))
    sys.stdout.write("\n")


def _names(nodes) -> list[str]:
    return sorted(nodes)


def cmd_classify(args: argparse.Namespace) -> int:
    net = _load_net(args.net)
    cls = classify_nodes(net)
    doc = {
        "input": net.input,
        "output": net.output,
        "nodes": list(net.nodes),
        "simple": _names(cls.simple),
        "super_simple": list(cls.super_simple),
        "appendage": _names(cls.appendage),
        "super_appendage": _names(cls.super_appendage),
        "interval_index": dict(sorted(cls.interval_index.items())),
        "chain_position": dict(sorted(cls.chain_position.items())),
        "io_path_count": len(cls.io_paths),
    }
    if args.format == "json":
        _emit_json(doc)
    else:
        out = sys.stdout
        out.write("input: %s\n" % net.input)
        out.write("output: %s\n" % net.output)
        out.write("simple: %s\n" % " ".join(doc["simple"]))
        out.write("super_simple: %s\n" % " ".join(doc["super_simple"]))
        out.write("appendage: %s\n" % " ".join(doc["appendage"]))
        out.write("super_appendage: %s\n" % " ".join(doc["super_appendage"]))
        out.write(
            "intervals: %s\n"
            % " ".join("%s=%d" % kv for kv in sorted(cls.interval_index.items()))
        )
    return 0


def _subnet_rows(net: IONetwork):
    an = analyze(net)
    rows = []
    for K in an.subnetworks:
        bis = block_index_sets(net, K)
        row = {
            "label": K.label,
            "block_rows": _names(bis.row_nodes),
            "block_cols": _names(bis.col_nodes),
        }
        if hasattr(K, "simple_core"):
            row.update(
                {
                    "kind": "structural",
                    "rho_prev": K.rho_prev,
                    "rho_next": K.rho_next,
                    "simple_core": _names(K.simple_core),
                    "linked_appendage": _names(K.linked_appendage),
                    "haldane": K.is_haldane,
                }
            )
        else:
            row.update({"kind": "appendage", "nodes": _names(K.nodes)})
        rows.append(row)
    return an, rows


def cmd_subnets(args: argparse.Namespace) -> int:
    net = _load_net(args.net)
    _, rows = _subnet_rows(net)
    if args.format == "json":
        _emit_json({"subnetworks": rows})
    else:
        for row in rows:
            if row["kind"] == "structural":
                sys.stdout.write(
                    "%s structural [%s .. %s] core={%s} linked={%s} rows={%s} cols={%s}\n"
                    % (
                        row["label"],
                        row["rho_prev"],
                        row["rho_next"],
                        ",".join(row["simple_core"]),
                        ",".join(row["linked_appendage"]),
                        ",".join(row["block_rows"]),
                        ",".join(row["block_cols"]),
                    )
                )
            else:
                sys.stdout.write(
                    "%s appendage nodes={%s} rows={%s} cols={%s}\n"
                    % (
                        row["label"],
                        ",".join(row["nodes"]),
                        ",".join(row["block_rows"]),
                        ",".join(row["block_cols"]),
                    )
                )
    return 0


def cmd_pattern_net(args: argparse.Namespace) -> int:
    net = _load_net(args.net)
    an = analyze(net)
    pnet = an.pnet
    if args.format == "dot":
        sys.stdout.write(pattern_to_dot(pnet))
        return 0
    comp = {c.index: c for c in pnet.components}
    doc = {
        "backbone": [elem.label for elem in pnet.backbone],
        "components": [
            {"label": c.label, "members": _names(c.nodes)} for c in pnet.components
        ],
        "component_arrows": [
            [comp[i].label, comp[k].label] for i, k in sorted(pnet.component_arrows)
        ],
        "vmax": {comp[i].label: e.label for i, e in sorted(pnet.vmax.items())},
        "vmin": {comp[i].label: e.label for i, e in sorted(pnet.vmin.items())},
        "chain_positions": {e.label: p for e, p in pnet.chain_pos.items()},
    }
    _emit_json(doc)
    return 0


def cmd_patterns(args: argparse.Namespace) -> int:
    net = _load_net(args.net)
    an = analyze(net)
    rows = []
    for K in an.subnetworks:
        bis = block_index_sets(net, K)
        rows.append(
            {
                "type": K.label,
                "block_rows": _names(bis.row_nodes),
                "block_cols": _names(bis.col_nodes),
                "pattern": _names(theorem_pattern(an, K)),
            }
        )
    agreement = None
    if args.check_engines:
        cmp = compare_engines(net)
        agreement = {
            "checked": cmp.checked,
            "disagreements": [
                {"type": lbl, "node": kappa, "theorem": t, "reposition": r}
                for lbl, kappa, t, r in cmp.disagreements
            ],
            "skipped": [{"node": k, "reason": r} for k, r in cmp.skipped],
        }
    if args.format == "json":
        doc = {"patterns": rows}
        if agreement is not None:
            doc["engine_agreement"] = agreement
        _emit_json(doc)
    else:
        sys.stdout.write("type\trows\tcols\tpattern\n")
        for row in rows:
            sys.stdout.write(
                "%s\t%s\t%s\t%s\n"
                % (
                    row["type"],
                    ",".join(row["block_rows"]),
                    ",".join(row["block_cols"]),
                    ",".join(row["pattern"]),
                )
            )
        if agreement is not None:
            sys.stdout.write(
                "engines: %d node verdicts checked, %d disagreements, %d skipped\n"
                % (
                    agreement["checked"],
                    len(agreement["disagreements"]),
                    len(agreement["skipped"]),
                )
            )
    if agreement is not None and agreement["disagreements"]:
        return 2
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    net = _load_net(args.net)
    an = analyze(net)
    disagreements = 0
    passed = 0
    for K in an.subnetworks:
        want = theorem_pattern(an, K)
        bad = 0
        for seed in range(args.seeds):
            jac = None
            # forcing can (rarely) zero the full determinant too; reseed
            for attempt in range(8):
                candidate = sample_jacobian(net, seed + 10007 * attempt, an=an)
                block_product_sign(candidate, net, an=an)
                forced = force_block_singular(candidate, net, K, an=an)
                block_product_sign(forced, net, an=an)
                try:
                    got = numeric_pattern(forced, net)
                except SingularJacobian:
                    continue
                jac = candidate
                break
            if jac is None:
                raise OracleError(
                    "no usable sample for %s at seed %d" % (K.label, seed)
                )
            if got != want:
                bad += 1
        status = "pass" if bad == 0 else "FAIL (%d seeds disagree)" % bad
        sys.stdout.write("%s %s\n" % (K.label, status))
        if bad == 0:
            passed += 1
        disagreements += bad
    if len(net.nodes) <= args.symbolic_cap:
        fact = symbolic_factorization(net, max_nodes=args.symbolic_cap, an=an)
        sign = "+" if fact.sign >= 0 else "-"
        sys.stdout.write("det H = %s product of:\n" % sign)
        for label, factor in zip(fact.labels, fact.factors):
            sys.stdout.write("  %s: %s\n" % (label, factor))
    sys.stdout.write(
        "%d/%d subnetworks verified, %d seeds, %d disagreements\n"
        % (passed, len(an.subnetworks), args.seeds, disagreements)
    )
    return 0 if disagreements == 0 else 2


def _parse_range(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise NetworkError("range must look like a:b, got %r" % text)
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise NetworkError("range must be numeric, got %r" % text) from exc


def cmd_simulate(args: argparse.Namespace) -> int:
    net = _load_net(args.net)
    an = analyze(net)
    ode = synthesize_ode(net, args.seed)
    lo, hi = _parse_range(args.range)
    branch = continue_equilibrium(ode, (lo, hi), args.steps, an=an)
    events = detect_homeostasis(branch)
    os.makedirs(args.out, exist_ok=True)

    labels = [K.label for K in an.subnetworks]
    csv_path = os.path.join(args.out, "branch.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["I"]
            + ["x_%s" % n for n in ode.order]
            + ["xprime_%s" % n for n in ode.order]
            + ["det_%s" % lbl for lbl in labels]
        )
        for p in branch.points:
            writer.writerow(
                [repr(p.I)]
                + [repr(float(v)) for v in p.x]
                + [repr(float(v)) for v in p.sensitivity]
                + [repr(p.block_dets[lbl]) for lbl in labels]
            )

    events_path = os.path.join(args.out, "events.json")
    with open(events_path, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "schema": 1,
                "points": len(branch.points),
                "lost_hyperbolicity": branch.lost_hyperbolicity,
                "events": [ev.to_jsonable() for ev in events],
            },
            fh,
            sort_keys=True,
            indent=2,
            ensure_ascii=False,
        )
        fh.write("\n")

    from .plots import save_block_dets, save_io_curve

    curve_path = save_io_curve(branch, events, os.path.join(args.out, "io_curve.png"))
    dets_path = save_block_dets(
        branch, events, os.path.join(args.out, "block_dets.png")
    )

    sys.stdout.write("wrote %s (%d points)\n" % (csv_path, len(branch.points)))
    sys.stdout.write("wrote %s (%d events)\n" % (events_path, len(events)))
    sys.stdout.write("wrote %s\n" % curve_path)
    sys.stdout.write("wrote %s\n" % dets_path)
    if branch.lost_hyperbolicity:
        sys.stdout.write("note: hyperbolicity lost, branch truncated\n")
    return 0


def cmd_export_dot(args: argparse.Namespace) -> int:
    net = _load_net(args.net)
    an = analyze(net)
    os.makedirs(args.out, exist_ok=True)
    net_path = os.path.join(args.out, "network.dot")
    pat_path = os.path.join(args.out, "pattern.dot")
    with open(net_path, "w", encoding="utf-8") as fh:
        fh.write(network_to_dot(net))
    with open(pat_path, "w", encoding="utf-8") as fh:
        fh.write(pattern_to_dot(an.pnet))
    sys.stdout.write("wrote %s\n" % net_path)
    sys.stdout.write("wrote %s\n" % pat_path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homnet",
        description="homeostasis subnetworks, pattern networks, and forced patterns",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str, formats: tuple[str, ...] | None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--net", required=True, help="network JSON file")
        if formats:
            p.add_argument(
                "--format", choices=formats, default=formats[0], help="output format"
            )
        p.set_defaults(func=func)
        return p

    add("classify", cmd_classify, "node classes and chain positions", ("json", "text"))
    add("subnets", cmd_subnets, "homeostasis subnetworks and blocks", ("json", "text"))
    add(
        "pattern-net",
        cmd_pattern_net,
        "homeostasis pattern network",
        ("dot", "json"),
    )
    p = add(
        "patterns",
        cmd_patterns,
        "pattern node set per homeostasis type",
        ("json", "text"),
    )
    p.add_argument(
        "--check-engines",
        action="store_true",
        help="also compare the two induction engines node by node",
    )
    p = add("verify", cmd_verify, "exact determinant oracle agreement", None)
    p.add_argument("--seeds", type=int, default=10, help="samples per subnetwork")
    p.add_argument(
        "--symbolic-cap",
        type=int,
        default=10,
        help="print the symbolic factorization up to this many nodes",
    )
    p = add("simulate", cmd_simulate, "equilibrium sweep with event detection", None)
    p.add_argument("--seed", type=int, default=0, help="vector-field seed")
    p.add_argument("--range", default="-2:2", help="input window a:b")
    p.add_argument("--steps", type=int, default=201, help="grid points")
    p.add_argument("--out", default=".", help="output directory")
    p = add("export-dot", cmd_export_dot, "write network and pattern DOT files", None)
    p.add_argument("--out", default=".", help="output directory")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except NetworkError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except InvariantError as exc:
        sys.stderr.write("invariant violated: %s\n" % exc)
        return 2
    except (OracleError, RuntimeError) as exc:
        sys.stderr.write("failed: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
