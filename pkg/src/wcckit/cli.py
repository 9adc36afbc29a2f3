"""``wcckit`` command line interface.

Exit codes: 0 success, 2 input error, 3 request refused (oracle too large).
"""

import argparse
import json
import math
import sys

from .compare import kendall, nmi, read_rank_series
from .errors import CapabilityError, WCCError
from .fixtures import GENERATORS, exhaustive_best_partition, gen_fixture, natural_partition
from .graph import load_edge_list, write_edge_list
from .partition import read_assignment, read_partition, write_partition
from .quality import (
    CONDUCTANCE_VARIANTS,
    evaluate,
    partition_stats,
    percentile_report,
    write_stats_csv,
)

EXIT_INPUT = 2
EXIT_REFUSED = 3


def _finite(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite(v) for v in obj]
    return obj


def _dump(obj, out):
    out.write(json.dumps(_finite(obj), indent=2))
    out.write("\n")


def _graph(path):
    return load_edge_list(sys.stdin.buffer if path == "-" else path)


def _one_partition(args):
    if len(args.partition) != 1:
        raise WCCError(f"{args.command} takes exactly one --partition")
    g = _graph(args.graph)
    return read_partition(args.partition[0], g, add_isolated=args.allow_isolated)


def cmd_evaluate(args, out):
    g, p = _one_partition(args)
    _dump(evaluate(g, p, args.threads, args.conductance).to_dict(), out)


def cmd_stats(args, out):
    g, p = _one_partition(args)
    records = partition_stats(g, p, args.conductance, args.threads, source=args.partition[0])
    if args.format == "json":
        from dataclasses import asdict

        _dump([asdict(r) for r in records], out)
    else:
        write_stats_csv(records, out)


def cmd_report(args, out):
    g0 = _graph(args.graph)
    records = []
    for path in args.partition:
        g, p = read_partition(path, g0, add_isolated=args.allow_isolated)
        records += partition_stats(g, p, args.conductance, args.threads, source=path)
    report = percentile_report(records, args.groups)
    if args.format == "json":
        _dump([{"group": r.group, "count": r.count, **r.means} for r in report.rows], out)
    else:
        report.write_csv(out)


def cmd_compare(args, out):
    if len(args.partition) != 2:
        raise WCCError("compare takes exactly two --partition files")
    a, b = (read_assignment(p) for p in args.partition)
    _dump({"nmi": nmi(a, b)}, out)


def cmd_rank(args, out):
    res = kendall(read_rank_series(args.series_a), read_rank_series(args.series_b))
    _dump(res.to_dict(), out)


def cmd_generate(args, out):
    g = gen_fixture(args.kind, *args.params, seed=args.seed)
    if args.partition_out:
        if args.kind == "er_random":
            raise WCCError("er_random has no built-in community structure")
        with open(args.partition_out, "w") as fh:
            write_partition(g, natural_partition(args.kind, *args.params), fh)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            write_edge_list(g, fh)
    else:
        write_edge_list(g, out)


def cmd_oracle(args, out):
    g = _graph(args.graph)
    p, value = exhaustive_best_partition(g)
    comms = [[g.labels[v] for v in p.members(c).tolist()] for c in range(p.community_count)]
    _dump({"wcc": value, "communities": comms}, out)


def build_parser():
    parser = argparse.ArgumentParser(prog="wcckit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="workers for per-community work")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--conductance", choices=CONDUCTANCE_VARIANTS, default="standard")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--graph", required=True, help="edge list file, or - for stdin")
    graph_in.add_argument("--partition", action="append", default=[], required=True,
                          help="vertex<TAB>community file (repeatable for report)")
    graph_in.add_argument("--allow-isolated", action="store_true",
                          help="partition labels missing from the graph become isolated vertices")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", parents=[common, graph_in], help="score a partition (JSON)")
    p.set_defaults(func=cmd_evaluate)
    p = sub.add_parser("stats", parents=[common, graph_in], help="per-community statistics")
    p.set_defaults(func=cmd_stats)
    p = sub.add_parser("report", parents=[common, graph_in],
                       help="percentile-group report over pooled partitions")
    p.add_argument("--groups", type=int, default=20)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("compare", parents=[common], help="NMI between two partition files")
    p.add_argument("--partition", action="append", default=[], required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("rank", parents=[common], help="Kendall tau-b between label,score CSVs")
    p.add_argument("series_a")
    p.add_argument("series_b")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("generate", parents=[common], help="emit a fixture as an edge list")
    p.add_argument("kind", choices=sorted(GENERATORS))
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--partition-out", default=None,
                   help="also write the fixture's natural partition here")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive best partition (<= 12 vertices)")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command in ("stats", "report") else "json"
    if args.threads < 1:
        print("wcckit: --threads must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        args.func(args, out)
    except CapabilityError as exc:
        print(f"wcckit: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (WCCError, OSError, ValueError) as exc:
        print(f"wcckit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
