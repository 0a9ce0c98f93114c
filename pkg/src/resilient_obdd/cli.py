"""Command-line interface.

Subcommands: ``stats`` (regime sizes per benchmark, with drift columns
against the embedded reference counts), ``verify`` (exhaustive semantic and
structural checks), ``inject-recover`` (randomized fault campaigns) and
``export-dot`` (GraphViz dumps).  Exit status: 0 on success, 1 when a check
or recovery failed, 2 on usage errors.  ``RESILIENT_OBDD_SEED`` supplies the
default campaign seed.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import bench
from .core import count_nodes, export_dot
from .edges import edge_campaign
from .pla import PlaError, load_pla

DEFAULT_TABLE_SIZES = (256, 1024, 2048)


def _seed_default() -> int:
    return int(os.environ.get("RESILIENT_OBDD_SEED", "20240100"))


def _dc_value(args) -> int:
    return 1 if args.dc_policy == "one" else 0


def _add_common(sub):
    sub.add_argument("pla", nargs="+", help="PLA benchmark file(s)")
    sub.add_argument("--dc-policy", choices=("zero", "one"), default="zero",
                     help="value taken on don't-care assignments (default zero)")


def cmd_stats(args) -> int:
    rows = [bench.stats(load_pla(path), _dc_value(args)) for path in args.pla]
    sys.stdout.write(bench.stats_text(rows))
    if args.csv:
        Path(args.csv).write_text(bench.stats_csv(rows))
    if args.json:
        Path(args.json).write_text(bench.stats_json(rows))
    return 0


def cmd_verify(args) -> int:
    failed = False
    for path in args.pla:
        pla = load_pla(path)
        problems = bench.verify_pla(pla, _dc_value(args), args.max_n)
        if problems:
            failed = True
            for p in problems:
                print(f"{pla.name}: FAIL {p}")
        else:
            print(f"{pla.name}: ok ({pla.n_outputs} outputs verified exhaustively)")
    return 1 if failed else 0


def cmd_inject_recover(args) -> int:
    seed = args.seed if args.seed is not None else _seed_default()
    dc = _dc_value(args)
    ok = True
    csv_lines = []
    for path in args.pla:
        pla = load_pla(path)
        for j in range(pla.n_outputs):
            ro, _, ir = bench.build_output(pla, j, dc)
            if args.mode == "index-ut":
                st = bench.index_ut_campaign(ro, args.trials, seed)
                print(f"{pla.name}[{j}] index-ut: {st.recovered}/{st.trials} recovered")
                csv_lines.append(
                    f"{pla.name},{j},index-ut,{st.trials},{st.recovered},{seed}")
                ok &= st.all_recovered
            elif args.mode == "index-ir":
                faults = max(1, args.faults)
                st = bench.index_ir_campaign(ir, args.trials, faults, seed)
                print(f"{pla.name}[{j}] index-ir ({faults} faults/trial): "
                      f"{st.recovered}/{st.trials} recovered")
                csv_lines.append(
                    f"{pla.name},{j},index-ir,{st.trials},{st.recovered},{seed}")
                ok &= st.all_recovered
            else:  # edge
                for st in edge_campaign(ro, args.table_size, args.trials, seed):
                    rate = 100.0 * st.success_rate
                    print(f"{pla.name}[{j}] edge buckets={st.table_size}: "
                          f"{st.successes}/{st.trials} correct ({rate:.1f}%), "
                          f"{st.ambiguous} ambiguous")
                    csv_lines.append(
                        f"{pla.name},{j},{st.table_size},{st.trials},"
                        f"{st.successes},{st.ambiguous},"
                        f"{st.mean_candidate_ratio:.6f},"
                        f"{st.mean_probe_ratio:.6f},{st.seed}")
                    if args.strict and st.wrong:
                        ok = False
    if args.csv:
        if args.mode == "edge":
            header = ("benchmark,output_idx,table_size,trials,successes,"
                      "ambiguous,mean_candidate_ratio,mean_probe_ratio,seed")
        else:
            header = "benchmark,output_idx,mode,trials,recovered,seed"
        Path(args.csv).write_text("\n".join([header] + csv_lines) + "\n")
    return 0 if ok else 1


def cmd_export_dot(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    dc = _dc_value(args)
    for path in args.pla:
        pla = load_pla(path)
        for j in range(pla.n_outputs):
            ro, qr, ir = bench.build_output(pla, j, dc)
            d = {"ro": ro, "qr": qr, "ir": ir}[args.regime]
            target = out_dir / f"{pla.name}.out{j}.{args.regime}.dot"
            target.write_text(export_dot(d, name=f"{pla.name}_out{j}"))
            print(f"wrote {target} ({count_nodes(d)} nodes)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resilient-obdd",
        description="Decision diagrams with index and edge fault recovery.")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("stats", help="per-benchmark regime sizes")
    _add_common(s)
    s.add_argument("--csv", help="also write CSV here")
    s.add_argument("--json", help="also write JSON here")
    s.set_defaults(func=cmd_stats)

    s = subs.add_parser("verify", help="exhaustive semantic/structural checks")
    _add_common(s)
    s.add_argument("--max-n", type=int, default=20,
                   help="refuse exhaustive checks above this many inputs")
    s.set_defaults(func=cmd_verify)

    s = subs.add_parser("inject-recover", help="randomized fault campaigns")
    _add_common(s)
    s.add_argument("--mode", choices=("index-ut", "index-ir", "edge"),
                   default="index-ut")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=None,
                   help="default from RESILIENT_OBDD_SEED")
    s.add_argument("--table-size", type=int, action="append", default=None,
                   help="bucket count for edge mode, repeatable")
    s.add_argument("--faults", type=int, default=1,
                   help="index faults per trial in index-ir mode")
    s.add_argument("--strict", action="store_true",
                   help="edge mode: fail when fast mode answered wrong")
    s.add_argument("--csv", help="write campaign CSV here")
    s.set_defaults(func=cmd_inject_recover)

    s = subs.add_parser("export-dot", help="write GraphViz files")
    _add_common(s)
    s.add_argument("--regime", choices=("ro", "qr", "ir"), default="ro")
    s.add_argument("--out", default=".", help="output directory")
    s.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "table_size", None) is None and args.command == "inject-recover":
        args.table_size = list(DEFAULT_TABLE_SIZES)
    try:
        return args.func(args)
    except (PlaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
