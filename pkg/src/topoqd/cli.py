"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 input error, 3 cap exceeded.  Caps come from flags, then the
TOPOQD_ENUM_CAP / TOPOQD_ELEM_CAP environment variables, then defaults.
Output is byte-identical for identical (group, flags, seed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .chartable import character_table
from .consistency import verify_all
from .errors import (
    CapExceeded,
    EnumerationCapExceeded,
    GroupTooLarge,
    InputError,
    TopoqdError,
)
from .fusion import (
    borromean_fusion,
    capacity,
    conjugate_irrep,
    lambda_distribution,
    loop_fusion_table,
    point_fusion_invariant_dim,
    point_fusion_nabc,
)
from .groups import (
    DEFAULT_ELEM_CAP,
    FiniteGroup,
    class_name,
    conjugacy_classes,
    exponent,
    load_group,
)
from .oracle import DEFAULT_ORACLE_CAP, orbit_count_direct
from .pairing import anyon_s_matrix, pairing_matrix_s2s1
from .sectors import (
    DEFAULT_ENUM_CAP,
    count_graph_sectors,
    enumerate_graph_sectors,
    sector_entropy,
)

SCHEMA_VERSION = "1"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}")


def _round12(x: float) -> float:
    out = round(float(x), 12)
    return 0.0 if out == 0.0 else out  # normalize -0.0


def _complex_pair(z: complex) -> list[float]:
    return [_round12(z.real), _round12(z.imag)]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topoqd",
        description="Topological data of quantum double models for finite groups.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, genus=False):
        p.add_argument("--group", required=True,
                       help="builtin name (Z<n>, S3, S4, A4, A5, D4, Q8, Z2xZ2) or group file")
        p.add_argument("--format", choices=("json", "tsv", "md"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        p.add_argument("--enum-cap", type=int, default=None)
        p.add_argument("--elem-cap", type=int, default=None)

    group_p = sub.add_parser("group", help="group-level queries")
    group_sub = group_p.add_subparsers(dest="subcommand", required=True)
    info_p = group_sub.add_parser("info", help="order, classes, centralizers, capacities")
    common(info_p)

    sectors_p = sub.add_parser("sectors", help="graph sectors at a genus")
    common(sectors_p)
    sectors_p.add_argument("--genus", type=int, default=2)
    sectors_p.add_argument("--enumerate", action="store_true", dest="enumerate_orbits")
    sectors_p.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)

    fuse_p = sub.add_parser("fuse", help="fusion multiplicities and probabilities")
    fuse_sub = fuse_p.add_subparsers(dest="subcommand", required=True)
    points_p = fuse_sub.add_parser("points", help="point-sector fusion N_ab^c")
    common(points_p)
    points_p.add_argument("irreps", type=int, nargs=3, metavar=("a", "b", "c"))
    loops_p = fuse_sub.add_parser("loops", help="flux-pair fusion table")
    common(loops_p)
    loops_p.add_argument("--mu", required=True)
    loops_p.add_argument("--nu", required=True)
    loops_p.add_argument("--borromean", action="store_true")

    pairing_p = sub.add_parser("pairing", help="pairing matrices")
    common(pairing_p)
    pairing_p.add_argument("--manifold", choices=("s2xs1", "t2"), default="s2xs1")

    verify_p = sub.add_parser("verify", help="run the consistency relation ledger")
    common(verify_p)
    verify_p.add_argument("--max-genus", type=int, default=2)

    dump_p = sub.add_parser("dump-chartable", help="emit the character table as JSON")
    common(dump_p)

    report_p = sub.add_parser("report", help="verify + sectors + pairing in one document")
    common(report_p)
    report_p.add_argument("--max-genus", type=int, default=2)
    return parser


def _group_doc(G: FiniteGroup) -> dict:
    return {"source": G.source, "order": G.order}


def _resolve_class(G: FiniteGroup, spec: str) -> int:
    classes = conjugacy_classes(G)
    if spec.lstrip("-").isdigit():
        idx = int(spec)
        if not 0 <= idx < len(classes):
            raise InputError(f"class index {idx} out of range 0..{len(classes) - 1}")
        return idx
    for c in classes:
        if class_name(G, c.index) == spec:
            return c.index
    if G.names and spec in G.names:
        x = G.names.index(spec)
        for c in classes:
            if x in c.members:
                return c.index
    raise InputError(f"unknown class {spec!r}; use an index, C_<name>, or an element name")


# -- per-command documents ----------------------------------------------

def _cmd_group_info(G: FiniteGroup, args) -> dict:
    classes = conjugacy_classes(G)
    return {
        "abelian": G.is_abelian,
        "exponent": exponent(G),
        "classes": [
            {
                "index": c.index,
                "name": class_name(G, c.index),
                "representative": G.name_of(c.representative),
                "size": c.size,
                "centralizer_order": len(c.centralizer),
            }
            for c in classes
        ],
        "capacities": {
            "sphere-shell": capacity(G, "sphere-shell").value,
            "solid-torus-flux": capacity(G, "solid-torus-flux").value,
            "solid-torus-loop": capacity(G, "solid-torus-loop").value,
        },
    }


def _cmd_sectors(G: FiniteGroup, args, enum_cap: int) -> dict:
    doc: dict = {
        "genus": args.genus,
        "count": count_graph_sectors(G, args.genus),
        "enumerated": bool(args.enumerate_orbits),
    }
    if args.enumerate_orbits:
        sectors = enumerate_graph_sectors(G, args.genus, enum_cap=enum_cap,
                                          threads=args.threads)
        rows = []
        for s in sectors:
            row = {
                "representative": [G.name_of(x) for x in s.representative],
                "orbit_size": s.orbit_size,
                "d_squared": s.d_squared,
                "cycle_classes": [class_name(G, c) for c in s.cycle_classes],
                "entropy": _round12(sector_entropy(s)),
            }
            if args.genus == 2:
                row["lambda"] = class_name(G, s.lambda_class)
                row["rho"] = class_name(G, s.rho_class)
            rows.append(row)
        doc["sectors"] = rows
    if getattr(args, "oracle", False):
        doc["oracle_count"] = orbit_count_direct(G, args.genus)
    return doc


def _cmd_fuse_points(G: FiniteGroup, args) -> dict:
    table = character_table(G, seed=args.seed)
    a, b, c = args.irreps
    k = table.n_irreps
    for idx in (a, b, c):
        if not 0 <= idx < k:
            raise InputError(f"irrep index {idx} out of range 0..{k - 1}")
    return {
        "irreps": [a, b, c],
        "degrees": [table.degrees[a], table.degrees[b], table.degrees[c]],
        "conjugate_of_c": conjugate_irrep(table, c),
        "N_ab_c": point_fusion_nabc(G, a, b, c, table),
        "invariant_dim_abc": point_fusion_invariant_dim(G, (a, b, c), table),
    }


def _cmd_fuse_loops(G: FiniteGroup, args) -> dict:
    mu = _resolve_class(G, args.mu)
    nu = _resolve_class(G, args.nu)
    records = loop_fusion_table(G, mu, nu)
    channels = [
        {
            "k": r.k,
            "lambda": r.output,
            "d_squared": r.d_squared,
            "p": str(r.probability),
            "p_decimal": _round12(float(r.probability)),
        }
        for r in records
    ]
    dist = borromean_fusion(G, mu, nu) if args.borromean else lambda_distribution(G, mu, nu)
    return {
        "mu": class_name(G, mu),
        "nu": class_name(G, nu),
        "borromean": bool(args.borromean),
        "channels": channels,
        "distribution": {
            class_name(G, cls): {"p": str(p), "p_decimal": _round12(float(p))}
            for cls, p in sorted(dist.items())
        },
    }


def _cmd_pairing(G: FiniteGroup, args) -> dict:
    table = character_table(G, seed=args.seed)
    P = pairing_matrix_s2s1(G, table) if args.manifold == "s2xs1" else anyon_s_matrix(G)
    return {
        "manifold": P.manifold,
        "d_pair": _round12(P.d_pair),
        "unitarity_residual": float(P.unitarity_residual),
        "row_labels": list(P.row_labels),
        "col_labels": list(P.col_labels),
        "entries": [[_complex_pair(z) for z in row] for row in P.matrix],
    }


def _cmd_verify(G: FiniteGroup, args, enum_cap: int) -> dict:
    table = character_table(G, seed=args.seed)
    report = verify_all(G, max_genus=args.max_genus, table=table,
                        enum_cap=enum_cap, threads=args.threads)
    return report.as_dict()


def _cmd_dump_chartable(G: FiniteGroup, args) -> dict:
    table = character_table(G, seed=args.seed)
    return {
        "classes": [
            {
                "name": class_name(G, c.index),
                "representative": G.name_of(c.representative),
                "size": c.size,
            }
            for c in table.classes
        ],
        "irreps": [
            {
                "degree": table.degrees[i],
                "values": [_complex_pair(z) for z in table.values[i]],
            }
            for i in range(table.n_irreps)
        ],
    }


def _cmd_report(G: FiniteGroup, args, enum_cap: int) -> dict:
    sectors = {}
    for g in range(1, args.max_genus + 1):
        sub = argparse.Namespace(genus=g, enumerate_orbits=G.order ** g <= enum_cap,
                                 threads=args.threads, oracle=False)
        sectors[f"genus-{g}"] = _cmd_sectors(G, sub, enum_cap)
    pairing_docs = {}
    for manifold in ("s2xs1", "t2"):
        pairing_docs[manifold] = _cmd_pairing(
            G, argparse.Namespace(manifold=manifold, seed=args.seed))
    return {
        "verify": _cmd_verify(G, args, enum_cap),
        "sectors": sectors,
        "pairing": pairing_docs,
    }


# -- rendering -----------------------------------------------------------

def _render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=True)


def _md_table(headers, rows) -> list[str]:
    out = ["| " + " | ".join(headers) + " |",
           "|" + "|".join("---" for _ in headers) + "|"]
    for row in rows:
        out.append("| " + " | ".join(str(c) for c in row) + " |")
    return out


def _render_md(doc: dict) -> str:
    lines = [f"# topoqd {doc['command']}", "",
             f"group: `{doc['group']['source']}` (order {doc['group']['order']})", ""]
    data = doc["data"]
    cmd = doc["command"]
    if cmd == "verify" or cmd == "report":
        verify = data if cmd == "verify" else data["verify"]
        lines.append(f"all pass: **{verify['all_pass']}**")
        lines.append("")
        lines += _md_table(
            ["id", "status", "lhs", "rhs", "residual", "note"],
            [[r["id"], r["status"], r["lhs"], r["rhs"], f"{r['residual']:.2e}", r["note"]]
             for r in verify["relations"]],
        )
    if cmd == "sectors" or cmd == "report":
        blocks = {f"genus-{data['genus']}": data} if cmd == "sectors" else data["sectors"]
        for name, block in blocks.items():
            lines += ["", f"## {name}: {block['count']} sectors", ""]
            if block.get("sectors"):
                g2 = "lambda" in block["sectors"][0]
                headers = ["(g,h)" if g2 else "tuple", "classes"]
                headers += ["lambda", "rho"] if g2 else []
                headers += ["d^2"]
                rows = []
                for s in block["sectors"]:
                    row = ["(" + ", ".join(s["representative"]) + ")",
                           " ".join(s["cycle_classes"])]
                    if g2:
                        row += [s["lambda"], s["rho"]]
                    row.append(s["d_squared"])
                    rows.append(row)
                lines += _md_table(headers, rows)
    if cmd == "fuse":
        if "channels" in data:
            lines.append(f"## ({data['mu']}, {data['nu']})"
                         + (" Borromean" if data["borromean"] else ""))
            lines.append("")
            lines += _md_table(
                ["k", "lambda", "d^2", "p"],
                [[c["k"], c["lambda"], c["d_squared"], c["p"]] for c in data["channels"]],
            )
            lines.append("")
            lines += _md_table(
                ["outcome", "p"],
                [[k, v["p"]] for k, v in data["distribution"].items()],
            )
        else:
            lines += _md_table(
                ["a", "b", "c", "N_ab^c", "invariant dim"],
                [[*data["irreps"], data["N_ab_c"], data["invariant_dim_abc"]]],
            )
    if cmd == "pairing" or cmd == "report":
        blocks = {data["manifold"]: data} if cmd == "pairing" else data["pairing"]
        for name, block in blocks.items():
            lines += ["", f"## pairing {name} (D_pair = {block['d_pair']}, "
                          f"residual {block['unitarity_residual']:.2e})", ""]
            headers = [""] + list(block["col_labels"])
            rows = []
            for label, row in zip(block["row_labels"], block["entries"]):
                cells = [label]
                for re, im in row:
                    cells.append(f"{re:+.4f}" if im == 0 else f"{re:+.4f}{im:+.4f}i")
                rows.append(cells)
            lines += _md_table(headers, rows)
    if cmd == "group":
        lines += _md_table(
            ["class", "representative", "size", "centralizer order"],
            [[c["name"], c["representative"], c["size"], c["centralizer_order"]]
             for c in data["classes"]],
        )
        lines += ["", f"abelian: {data['abelian']}, exponent: {data['exponent']}", ""]
        lines += _md_table(["region", "capacity Q", "TEE (nats)"],
                           [[k, v, f"{math.log(v):.6f}"]
                            for k, v in data["capacities"].items()])
    if cmd == "dump-chartable":
        headers = ["irrep"] + [c["name"] for c in data["classes"]]
        rows = []
        for i, irr in enumerate(data["irreps"]):
            cells = [f"chi{i} (d={irr['degree']})"]
            for re, im in irr["values"]:
                cells.append(f"{re:+.4f}" if im == 0 else f"{re:+.4f}{im:+.4f}i")
            rows.append(cells)
        lines += _md_table(headers, rows)
    return "\n".join(lines) + "\n"


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            rows.append((prefix, " ".join(str(v) for v in value)))
        else:
            for i, v in enumerate(value):
                _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, value))


def _render_tsv(doc: dict) -> str:
    rows: list = []
    _flatten("", doc, rows)
    return "\n".join(f"{k}\t{v}" for k, v in rows) + "\n"


RENDERERS = {"json": _render_json, "md": _render_md, "tsv": _render_tsv}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    elem_cap = args.elem_cap or _env_int("TOPOQD_ELEM_CAP", DEFAULT_ELEM_CAP)
    enum_cap = args.enum_cap or _env_int("TOPOQD_ENUM_CAP", DEFAULT_ENUM_CAP)
    if elem_cap <= 0 or enum_cap <= 0:
        raise InputError("caps must be positive")
    if args.threads < 1:
        raise InputError("--threads must be >= 1")

    G = load_group(args.group, elem_cap=elem_cap)

    command = args.command
    if command == "group":
        data = _cmd_group_info(G, args)
    elif command == "sectors":
        data = _cmd_sectors(G, args, enum_cap)
    elif command == "fuse":
        data = (_cmd_fuse_points(G, args) if args.subcommand == "points"
                else _cmd_fuse_loops(G, args))
    elif command == "pairing":
        data = _cmd_pairing(G, args)
    elif command == "verify":
        data = _cmd_verify(G, args, enum_cap)
    elif command == "dump-chartable":
        data = _cmd_dump_chartable(G, args)
    else:
        data = _cmd_report(G, args, enum_cap)

    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "group": _group_doc(G),
        "data": data,
    }
    sys.stdout.write(RENDERERS[args.format](doc))
    if command == "verify" and not data["all_pass"]:
        return 1
    if command == "report" and not data["verify"]["all_pass"]:
        return 1
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except InputError as exc:
        print(f"topoqd: input error: {exc}", file=sys.stderr)
        return 2
    except (GroupTooLarge, EnumerationCapExceeded, CapExceeded) as exc:
        print(f"topoqd: cap exceeded: {exc}", file=sys.stderr)
        return 3
    except TopoqdError as exc:
        print(f"topoqd: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
