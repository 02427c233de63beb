"""Command-line front door of the laboratory.

    python cli.py gen --family parity --q 2 --n 3 --out parity.code
    python cli.py analyze --code parity.code --epsilon 0.5
    python cli.py plan --theorem 1 --q 2 --r 0.4 --delta 0.49 --gamma 0.1 --epsilon 0.5 --n 100
    python cli.py experiment --config configs/thm1_random.json --out results/

Exit codes: 0 success, 1 infeasible or bad parameters, 2 parse or I/O
error (including bad flags), 3 enumeration cap exceeded.
"""
import argparse
import json
import logging
import sys
from pathlib import Path

from bounds import plan_cor, plan_thm1, plan_thm12, plan_thm2
from config import configure_logging, get_max_enum
from errors import (
    BadParameters,
    DomainError,
    EnumerationCapExceeded,
    EpsBiasError,
    InfeasibleParameters,
    ParseError,
    RankMismatch,
    ZeroCode,
)
from experiment import ExperimentConfig, export, run_trials, verify_theorem
from linear_code import (
    LinearCode,
    bias_of_code,
    distance,
    dual_distance,
    weight_distribution,
)
from mother_codes import CodeFamilySpec, build_mother, format_code, read_code, write_code
from transform_code import (
    IndexSet,
    format_index_set,
    puncture,
    run_pipeline,
    sample_expander_walk,
    sample_uniform,
    shorten,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_PARSE = 2
EXIT_CAP = 3


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the documented exit code."""
    if isinstance(error, EnumerationCapExceeded):
        return EXIT_CAP
    if isinstance(error, (ParseError, RankMismatch, OSError)):
        return EXIT_PARSE
    if isinstance(error, (InfeasibleParameters, DomainError, BadParameters, ZeroCode)):
        return EXIT_INFEASIBLE
    return EXIT_INFEASIBLE


def _fmt(value) -> str:
    """Platform-independent text for numbers in human output."""
    if isinstance(value, float):
        return format(value, '.12g')
    return str(value)


def _index_list(text: str) -> list[int]:
    """argparse type for --set: comma separated non-negative integers."""
    try:
        values = [int(part) for part in text.split(',') if part.strip() != '']
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"--set expects integers like 0,3,5, got {text!r}") from e
    return values


def _emit_code(code: LinearCode, out: str | None) -> None:
    """Write to --out, or print the code text when no file is given."""
    if out:
        write_code(code, out)
        print(f"wrote [{code.n}, {code.k}] code over GF({code.q}) to {out}")
    else:
        sys.stdout.write(format_code(code))


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_gen(args) -> int:
    points = tuple(_index_list(args.points)) if args.points else None
    spec = CodeFamilySpec(family=args.family, q=args.q, n=args.n, k=args.k,
                          seed=args.seed, eval_points=points,
                          puncture=tuple(args.puncture or ()))
    code = build_mother(spec)
    if args.family == 'random':
        logger.info("Effective seed: %d", args.seed)
        if args.out:
            print(f"seed = {args.seed}")
    _emit_code(code, args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    code = read_code(args.code)
    cap = get_max_enum(args.max_enum)
    lines = [f"q = {code.q}", f"n = {code.n}", f"k = {code.k}", f"rate = {_fmt(code.rate)}"]
    if code.k == 0:
        lines.append("zero code: distance and bias undefined")
        print("\n".join(lines))
        return EXIT_OK
    lines.append(f"d = {distance(code, cap, args.workers)}")
    try:
        lines.append(f"dual_distance = {dual_distance(code, cap, args.workers)}")
    except ZeroCode:
        lines.append("dual_distance = undefined (full space)")
    report = bias_of_code(code, args.epsilon, cap, args.workers)
    if code.field.p == 2:
        lines.append(f"bias = {report.exact_epsilon(code.n)} ({_fmt(report.epsilon)})")
    else:
        lines.append(f"bias = {report.epsilon:.12f}")
    lines.append("witness = " + " ".join(str(v) for v in report.witness))
    if args.epsilon is not None:
        lines.append(f"ceps_size(eps={_fmt(args.epsilon)}) = {report.ceps_size}")
    weights = weight_distribution(code, cap, args.workers)
    lines.append("weights = " + " ".join(f"{w}:{int(c)}" for w, c in enumerate(weights) if c))
    print("\n".join(lines))
    return EXIT_OK


def _positions(args, n: int, size: int, seed: int) -> IndexSet:
    if args.set is not None:
        return IndexSet.explicit(n, args.set)
    if getattr(args, 'sampler', 'uniform') == 'expander':
        return sample_expander_walk(n, size, args.degree, seed)
    return sample_uniform(n, size, seed)


def cmd_shorten(args) -> int:
    code = read_code(args.code)
    positions = _positions(args, code.n, args.s, args.seed)
    result = shorten(code, positions)
    print(f"seed = {args.seed}")
    print(f"S = {format_index_set(positions)}")
    print(f"shortened [{code.n}, {code.k}] -> [{result.n}, {result.k}]")
    if args.out:
        _emit_code(result, args.out)
    return EXIT_OK


def cmd_puncture(args) -> int:
    code = read_code(args.code)
    positions = _positions(args, code.n, args.p, args.seed)
    result = puncture(code, positions)
    print(f"seed = {args.seed}")
    print(f"P = {format_index_set(positions)}")
    print(f"punctured [{code.n}, {code.k}] -> [{result.n}, {result.k}]")
    if args.out:
        _emit_code(result, args.out)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    code = read_code(args.code)
    result = run_pipeline(code, args.s, args.p, args.seed)
    print(f"seed = {args.seed}")
    print(f"S = {format_index_set(result.shortening)}")
    print(f"P = {format_index_set(result.puncturing)}")
    print(f"[{code.n}, {code.k}] -> [{result.shortened.n}, {result.shortened.k}]"
          f" -> [{result.code.n}, {result.code.k}]")
    if args.out:
        _emit_code(result.code, args.out)
    return EXIT_OK


def _require(args, *names) -> None:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        flags = ", ".join("--" + name.replace('_', '-') for name in missing)
        raise BadParameters(f"plan --theorem {args.theorem} needs {flags}")


def cmd_plan(args) -> int:
    if args.theorem == '1':
        _require(args, 'r', 'gamma')
        result = plan_thm1(args.q, args.r, args.delta, args.gamma, args.epsilon, args.n)
    elif args.theorem == '1b':
        _require(args, 'r', 'beta')
        result = plan_thm12(args.q, args.r, args.delta, args.beta, args.epsilon, args.n)
    elif args.theorem == '2':
        _require(args, 'r', 'gamma', 'delta0_dual')
        result = plan_thm2(args.q, args.r, args.delta, args.delta0_dual, args.gamma,
                           args.epsilon, args.n)
    else:
        _require(args, 'delta0_dual')
        result = plan_cor(args.q, args.delta, args.epsilon, args.delta0_dual, args.n,
                          rate=args.r)
    data = result.to_dict()
    if args.json:
        print(json.dumps(data, indent=2))
        return EXIT_OK
    for key, value in data.items():
        if key == 'preconditions':
            for item in value:
                mark = 'ok' if item['passed'] else 'FAILED'
                print(f"  [{mark}] {item['name']}: {_fmt(item['lhs'])} < {_fmt(item['rhs'])}")
        elif isinstance(value, dict):
            for inner_key, inner_value in value.items():
                if inner_key != 'preconditions':
                    print(f"{key}.{inner_key} = {_fmt(inner_value)}")
        else:
            print(f"{key} = {_fmt(value)}")
    return EXIT_OK


def cmd_experiment(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    if args.workers is not None:
        config.workers = args.workers
    summary = verify_theorem(config) if args.verify else run_trials(config)
    out = Path(args.out)
    written = []
    for fmt in args.format.split(','):
        fmt = fmt.strip()
        name = 'summary.json' if fmt == 'json' else f"trials.{fmt}"
        written.extend(export(summary, fmt, out / name, include_runtime=args.timing))
    print(f"master_seed = {config.master_seed}")
    for run in summary.runs:
        if run.status != 'ok':
            print(f"n={run.n}: infeasible ({run.failed_condition})")
            continue
        print(f"n={run.n}: s_count={run.trials[0].s_count if run.trials else 0} "
              f"failures={run.failures}/{len(run.trials)} "
              f"empirical={_fmt(run.empirical_failure)} "
              f"wilson=[{_fmt(run.wilson_low)}, {_fmt(run.wilson_high)}] "
              f"predicted={_fmt(run.predicted_failure)} "
              f"claims={'held' if all(run.claims.values()) else 'FAILED'}")
    if args.timing and summary.runtime_seconds is not None:
        print(f"runtime = {summary.runtime_seconds:.3f}s")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK if all(run.status == 'ok' for run in summary.runs) else EXIT_INFEASIBLE


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='epsbias', description='Random shortening and eps-bias laboratory.')
    parser.add_argument('--log-level', default=None,
                        help='logging level (default EPSBIAS_LOG_LEVEL or INFO)')
    parser.add_argument('--workers', type=int, default=None,
                        help='worker count for enumeration chunks and trials')
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help='generate a mother code')
    gen.add_argument('--family', required=True,
                     choices=['rs', 'random', 'repetition', 'parity', 'simplex'])
    gen.add_argument('--q', type=int, default=2)
    gen.add_argument('--n', type=int)
    gen.add_argument('--k', type=int)
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--points', help='Reed-Solomon evaluation points, comma separated')
    gen.add_argument('--puncture', type=_index_list, help='positions removed afterwards')
    gen.add_argument('--out')
    gen.set_defaults(handler=cmd_gen)

    analyze = sub.add_parser('analyze', help='distance, dual distance and bias of a code')
    analyze.add_argument('--code', required=True)
    analyze.add_argument('--epsilon', type=float)
    analyze.add_argument('--max-enum', type=int, default=None)
    analyze.set_defaults(handler=cmd_analyze)

    for name, size_flag in (('shorten', '--s'), ('puncture', '--p')):
        command = sub.add_parser(name, help=f'{name} a code at sampled or given positions')
        command.add_argument('--code', required=True)
        command.add_argument(size_flag, type=int, default=0)
        command.add_argument('--seed', type=int, default=0)
        command.add_argument('--set', type=_index_list, default=None,
                             help='explicit positions, comma separated')
        command.add_argument('--out')
        if name == 'shorten':
            command.add_argument('--sampler', choices=['uniform', 'expander'], default='uniform')
            command.add_argument('--degree', type=int, default=16)
            command.set_defaults(handler=cmd_shorten)
        else:
            command.set_defaults(handler=cmd_puncture)

    pipeline = sub.add_parser('pipeline', help='random shortening then random puncturing')
    pipeline.add_argument('--code', required=True)
    pipeline.add_argument('--s', type=int, required=True)
    pipeline.add_argument('--p', type=int, required=True)
    pipeline.add_argument('--seed', type=int, default=0)
    pipeline.add_argument('--out')
    pipeline.set_defaults(handler=cmd_pipeline)

    plan = sub.add_parser('plan', help='shortening size prescribed by a theorem')
    plan.add_argument('--theorem', required=True, choices=['1', '1b', '2', 'cor'])
    plan.add_argument('--q', type=int, required=True)
    plan.add_argument('--r', type=float, default=None, help='rate of the mother code')
    plan.add_argument('--delta', type=float, required=True)
    plan.add_argument('--gamma', type=float)
    plan.add_argument('--beta', type=float)
    plan.add_argument('--delta0-dual', dest='delta0_dual', type=float)
    plan.add_argument('--epsilon', type=float, default=0.5)
    plan.add_argument('--n', type=int, default=1000)
    plan.add_argument('--json', action='store_true', help='print the plan as JSON')
    plan.set_defaults(handler=cmd_plan)

    experiment = sub.add_parser('experiment', help='run a seeded Monte Carlo experiment')
    experiment.add_argument('--config', required=True)
    experiment.add_argument('--out', required=True)
    experiment.add_argument('--format', default='json,csv',
                            help='comma separated subset of json,csv,parquet')
    experiment.add_argument('--verify', action='store_true',
                            help='report infeasible lengths instead of failing')
    experiment.add_argument('--timing', action='store_true',
                            help='include the runtime in the summary')
    experiment.set_defaults(handler=cmd_experiment)
    return parser


def main(argv=None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_PARSE
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except EpsBiasError as e:
        logger.error("%s", e)
        return exit_code_for(e)
    except OSError as e:
        logger.error("I/O error: %s", e)
        return EXIT_PARSE
    except Exception as e:  # pylint: disable=broad-exception-caught
        logger.error("Unexpected error: %s", e, exc_info=True)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
