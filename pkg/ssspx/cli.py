# ssspx/cli.py
"""
Command line: solve, verify, gen, bench.

Vertex ids are 1-based on every external surface. Exit codes: 0 ok,
1 oracle mismatch or invariant violation, 2 bad input.
"""
import argparse
import json
import sys
from typing import List, Optional

from pydantic import ValidationError

from ssspx.config import settings
from ssspx.core.bmssp import solve
from ssspx.core.graph import Graph
from ssspx.core.oracle import dijkstra
from ssspx.formats.dimacs import format_weight, parse_dimacs, write_dimacs
from ssspx.models.schemas import CliConfig, Family, FallbackMode, GenSpec, SolverConfig, WeightKind, WeightModel
from ssspx.services.harness import generate, run_bench, summarize_trend, write_csv, write_json
from ssspx.utils.errors import SsspxError
from ssspx.utils.logger import logger

FAMILIES = [f.value for f in Family]
WEIGHT_KINDS = [w.value for w in WeightKind]


def _add_weight_options(p: argparse.ArgumentParser):
    p.add_argument('--weights', choices=WEIGHT_KINDS, default=WeightKind.UNIFORM_INTEGER.value)
    p.add_argument('--low', type=int, default=1)
    p.add_argument('--high', type=int, default=100)
    p.add_argument('--p-zero', type=float, default=0.5)


def _add_solver_options(p: argparse.ArgumentParser):
    p.add_argument('--debug-checks', action='store_true', help='run invariant checks (also SSSPX_DEBUG_CHECKS=1)')
    p.add_argument('--force-t', type=int)
    p.add_argument('--force-k', type=int)
    p.add_argument('--force-delta', type=int)
    p.add_argument('--no-fallback', action='store_true', help='always run the recursion')


def _add_input_options(p: argparse.ArgumentParser):
    p.add_argument('input', nargs='?', help='DIMACS .gr file')
    p.add_argument('--gen', choices=FAMILIES, help='generate the graph instead of reading a file')
    p.add_argument('--n', type=int, default=0)
    p.add_argument('--m', type=int, default=0)
    p.add_argument('--seed', type=int, default=1)
    p.add_argument('--source', type=int, default=1, help='1-based source vertex')
    _add_weight_options(p)
    _add_solver_options(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='ssspx', description='Single-source shortest paths')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('solve', help='print distances from the source')
    _add_input_options(p)
    p.add_argument('--json', action='store_true', help='print a JSON document')

    p = sub.add_parser('verify', help='compare the solver against Dijkstra')
    _add_input_options(p)

    p = sub.add_parser('gen', help='write a generated graph as DIMACS')
    p.add_argument('--family', choices=FAMILIES, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--m', type=int, default=0)
    p.add_argument('--seed', type=int, default=1)
    _add_weight_options(p)
    p.add_argument('-o', '--output', required=True)

    bench_cfg = settings.get('bench') or {}
    p = sub.add_parser('bench', help='run a family x n x seed matrix')
    p.add_argument('--family', nargs='+', choices=FAMILIES, default=[Family.RANDOM_M.value])
    p.add_argument('--n', nargs='+', type=int, required=True)
    p.add_argument('--m-per-n', type=float, default=4.0)
    p.add_argument('--seed', nargs='+', type=int, default=[1])
    _add_weight_options(p)
    _add_solver_options(p)
    p.add_argument('--repetitions', type=int, default=int(bench_cfg.get('repetitions', 1)))
    p.add_argument('--workers', type=int, default=int(bench_cfg.get('workers', 1)))
    p.add_argument('--no-verify', action='store_true', default=not bench_cfg.get('verify', True))
    p.add_argument('-o', '--output', default='bench.csv')
    p.add_argument('--json-output')
    p.add_argument('--trend', action='store_true', help='print the work-per-edge trend')
    return parser


def _weights(args) -> WeightModel:
    return WeightModel(kind=args.weights, low=args.low, high=args.high, p_zero=args.p_zero)


def _cli_config(args) -> CliConfig:
    gen = None
    if args.gen is not None:
        gen = GenSpec(family=args.gen, n=args.n, m=args.m, weights=_weights(args), seed=args.seed)
    return CliConfig(
        command=args.command,
        input=args.input,
        gen=gen,
        source=args.source,
        output='json' if getattr(args, 'json', False) else 'text',
        debug_checks=args.debug_checks,
        force_t=args.force_t,
        force_k=args.force_k,
        force_delta=args.force_delta,
        no_fallback=args.no_fallback,
    )


def _load(cfg: CliConfig) -> Graph:
    if cfg.gen is not None:
        return generate(cfg.gen)
    return parse_dimacs(cfg.input)


def _fmt(d: Optional[float]) -> str:
    return 'inf' if d is None else format_weight(d)


def cmd_solve(cfg: CliConfig) -> int:
    g = _load(cfg)
    res = solve(g, cfg.source - 1, cfg.solver_config())
    if cfg.output == 'json':
        report = res.to_report()
        report.source = cfg.source
        print(report.model_dump_json(indent=2))
    else:
        for v, d in enumerate(res.distances):
            print(f"{v + 1} {_fmt(d)}")
    if res.report is not None and not res.report.ok:
        print(f"invariant violations in: {', '.join(res.report.stages())}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(cfg: CliConfig) -> int:
    g = _load(cfg)
    res = solve(g, cfg.source - 1, cfg.solver_config())
    expected = dijkstra(g, cfg.source - 1).lengths()
    mismatches = [v for v in range(g.n) if res.distances[v] != expected[v]]
    for v in mismatches:
        print(f"mismatch {v + 1}: solver {_fmt(res.distances[v])} oracle {_fmt(expected[v])}")
    if mismatches:
        logger.error("verify: %d of %d vertices differ", len(mismatches), g.n)
        return 1
    print(f"ok: {g.n} vertices match ({res.mode})")
    return 0


def cmd_gen(args) -> int:
    spec = GenSpec(family=args.family, n=args.n, m=args.m, weights=_weights(args), seed=args.seed)
    g = generate(spec)
    write_dimacs(g, args.output, comments=[f"ssspx gen {spec.model_dump_json()}"])
    return 0


def cmd_bench(args) -> int:
    weights = _weights(args)
    specs = []
    for family in args.family:
        for n in args.n:
            for seed in args.seed:
                specs.append(GenSpec(family=family, n=n, m=round(args.m_per_n * n), weights=weights, seed=seed))
    config = SolverConfig.from_settings({
        'debug_checks': True if args.debug_checks else None,
        'force_t': args.force_t,
        'force_k': args.force_k,
        'force_delta': args.force_delta,
        'fallback': FallbackMode.NEVER if args.no_fallback else None,
    })
    records = run_bench(specs, args.repetitions, config, verify=not args.no_verify, workers=args.workers)
    write_csv(records, args.output)
    if args.json_output:
        write_json(records, args.json_output)
    if args.trend:
        print(json.dumps(summarize_trend(records), indent=2))
    bad = [r for r in records if r.oracle_match is False]
    print(f"{len(records)} records written to {args.output}")
    return 1 if bad else 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == 'gen':
            return cmd_gen(args)
        if args.command == 'bench':
            return cmd_bench(args)
        cfg = _cli_config(args)
        if cfg.command == 'solve':
            return cmd_solve(cfg)
        return cmd_verify(cfg)
    except SsspxError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValidationError as e:
        print(f"error: {e.errors()[0]['msg']}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
