"""
levymart command line

    python -m levymart describe brownian
    python -m levymart classify --process brownian --poly 0,0,5
    python -m levymart exp-solve --process brownian --alpha 0.5
    python -m levymart mtg-test --process brownian --mode additive --f cube --seed 7
    python -m levymart --config report.json        # re-run an echoed configuration

Every run prints a JSON report (schema, echoed run configuration, result);
on a terminal a short coloured summary comes first. Exit codes: 0 success,
2 invalid input, 3 numerical non-convergence, 1 any other failure.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from termcolor import colored

from levymart import utils
from levymart.config import RunConfig, load_process_file, parse_process, parse_run_config
from levymart.errors import LevymartError, ValidationError
from levymart.functions import parse_coeffs
from levymart.tools import (
    apply_generator,
    classify_function,
    compute_moments,
    describe_process,
    run_mtg_test,
    simulate_paths,
    solve_exponential,
    solve_funceq,
)
from levymart.tools.report_utils import build_report, failure, to_json

logger = logging.getLogger(__name__)

EXIT_CODES = {'validation': 2, 'convergence': 3}
SEEDED = ('simulate', 'mtg-test')
COMMANDS = ('describe', 'moments', 'gen', 'classify', 'funceq', 'simulate', 'mtg-test', 'exp-solve')


def _floats(text: str) -> List[float]:
    try:
        return parse_coeffs(text)
    except ValidationError as e:
        raise argparse.ArgumentTypeError(str(e))


def _key_value(text: str):
    key, sep, value = text.partition('=')
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got '{text}'")
    try:
        return key.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter '{key}' needs a number, got '{value}'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='levymart', description="Levy process martingale-function toolkit")
    parser.add_argument('--config', help="re-run a RunConfig (or a report that echoes one) from a JSON file")
    parser.add_argument('--report', help="also write the JSON report to this path")
    parser.add_argument('--log-level', help="override LEVYMART_LOG_LEVEL")
    sub = parser.add_subparsers(dest='command')

    def with_process(p, positional=False):
        if positional:
            p.add_argument('process_name', nargs='?', help="catalog name, JSON config or @file")
        p.add_argument('--process', help="catalog name, JSON config or @file")
        p.add_argument('--param', action='append', type=_key_value, default=[], metavar='KEY=VALUE',
                       help="override a catalog parameter (repeatable)")
        return p

    p = with_process(sub.add_parser('describe', help="triplet, exponent samples, support class"), positional=True)
    p.add_argument('--xi', type=_floats, default=[0.5, 1.0, 2.0])
    p.add_argument('--zero-scan', action='store_true')

    p = with_process(sub.add_parser('moments', help="cumulants and moment polynomials"))
    p.add_argument('--order', type=int, default=4)
    p.add_argument('--t', type=float)

    p = with_process(sub.add_parser('gen', help="apply the generator"))
    p.add_argument('--poly', type=_floats)
    p.add_argument('--lam', type=float)
    p.add_argument('--f', dest='function')
    p.add_argument('--x', type=float)

    p = with_process(sub.add_parser('classify', help="exact martingale-function verdict"))
    p.add_argument('--poly', type=_floats)
    p.add_argument('--expmix', type=_floats)
    p.add_argument('--tol', type=float)

    p = sub.add_parser('funceq', help="difference equation Delta_y q = p")
    p.add_argument('action', choices=['solve', 'diff', 'verify'])
    p.add_argument('--p', type=_floats, required=True)
    p.add_argument('--y', type=float, required=True)
    p.add_argument('--q2', type=_floats)

    p = with_process(sub.add_parser('simulate', help="simulate paths"))
    p.add_argument('--times', type=_floats, default=[1.0])
    p.add_argument('--n-paths', type=int, default=1000)
    p.add_argument('--seed', type=int)
    p.add_argument('--output', help="CSV path")
    p.add_argument('--binary', help="column-major .npy path")
    p.add_argument('--epsilon', type=float)
    p.add_argument('--tail-order', type=int)

    p = with_process(sub.add_parser('mtg-test', help="Monte Carlo martingale test"))
    p.add_argument('--mode', choices=['additive', 'mult'], default='additive')
    p.add_argument('--f', dest='function', required=True)
    p.add_argument('--s', type=float, default=0.5)
    p.add_argument('--t', type=float, default=1.0)
    p.add_argument('--n-paths', type=int)
    p.add_argument('--level', type=float)
    p.add_argument('--seed', type=int)
    p.add_argument('--diagnostics', type=_floats)

    p = with_process(sub.add_parser('exp-solve', help="roots of eta(lam) = alpha"))
    p.add_argument('--alpha', type=float, required=True)
    p.add_argument('--build', type=_floats, metavar='A,B')
    p.add_argument('--horizon', type=float)
    p.add_argument('--tol', type=float)
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    options = {
        k: v for k, v in vars(args).items()
        if k not in ('command', 'config', 'report', 'log_level', 'process', 'process_name', 'param', 'seed', 'output', 'tol')
        and v is not None
    }
    process = None
    if args.command != 'funceq':
        source = getattr(args, 'process', None) or getattr(args, 'process_name', None)
        if source is None:
            raise ValidationError(f"'{args.command}' needs a process (--process NAME|JSON|@file)")
        process = load_process_file(source[1:]) if source.startswith('@') else parse_process(source)
        if args.param:
            if process.name is None:
                raise ValidationError("--param applies to catalog processes only")
            process = process.model_copy(update={'params': {**process.params, **dict(args.param)}})

    seed = getattr(args, 'seed', None)
    if args.command in SEEDED and seed is None:
        if utils.CI_MODE:
            raise ValidationError(f"--seed is mandatory for '{args.command}' when LEVYMART_CI is set")
        seed = 0
    tolerances = {'tol': args.tol} if getattr(args, 'tol', None) is not None else {}
    return RunConfig(
        command=args.command, process=process, options=options, seed=seed,
        output=getattr(args, 'output', None), tolerances=tolerances,
    )


def dispatch(run: RunConfig) -> Dict[str, Any]:
    """Execute a RunConfig through the tool layer."""
    o = run.options
    process = run.process
    tol = run.tolerances.get('tol')
    if run.command == 'describe':
        return describe_process(process, xi_values=o.get('xi', (0.5, 1.0, 2.0)), zero_scan=o.get('zero_scan', False))
    if run.command == 'moments':
        return compute_moments(process, order=o.get('order', 4), t=o.get('t'))
    if run.command == 'gen':
        return apply_generator(process, poly=o.get('poly'), lam=o.get('lam'), function=o.get('function'), x=o.get('x'))
    if run.command == 'classify':
        return classify_function(process, poly=o.get('poly'), expmix=o.get('expmix'), tol=tol)
    if run.command == 'funceq':
        return solve_funceq(o['action'], o['p'], o['y'], o.get('q2'))
    if run.command == 'simulate':
        return simulate_paths(
            process, o.get('times', [1.0]), o.get('n_paths', 1000), run.seed, output=run.output,
            binary=o.get('binary'), epsilon=o.get('epsilon'), tail_order=o.get('tail_order'),
        )
    if run.command == 'mtg-test':
        return run_mtg_test(
            process, o['function'], run.seed, mode=o.get('mode', 'additive'), s=o.get('s', 0.5),
            t=o.get('t', 1.0), n_paths=o.get('n_paths'), level=o.get('level'), diagnostics=o.get('diagnostics'),
        )
    if run.command == 'exp-solve':
        build = o.get('build')
        if build is not None and len(build) == 1:
            build = [build[0], 0.0]
        if build is not None and len(build) != 2:
            raise ValidationError("--build takes a or a,b")
        return solve_exponential(process, o['alpha'], build=build, horizon=o.get('horizon'), tol=tol)
    raise ValidationError(f"unknown command '{run.command}'; commands: {', '.join(COMMANDS)}")


def load_run_config(path: str) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ValidationError(f"cannot read run configuration '{path}': {e}")
    if isinstance(data, dict) and 'run_config' in data:
        data = data['run_config']
    return parse_run_config(data)


def print_summary(report: Dict[str, Any]):
    """Coloured summary of a report for terminals."""
    run, result = report['run_config'], report['result']
    print(colored(f"\n{'=' * 60}", "cyan"))
    title = run['command'] + (f"  [{run['process'].get('name') or 'inline'}]" if run.get('process') else '')
    print(colored(title, "cyan", attrs=["bold"]))
    print(colored(f"{'=' * 60}", "cyan"))
    if not result.get('success'):
        print(colored(f"  {result.get('error_kind')}: {result.get('error')}", "red"))
        return
    for key, value in result.items():
        if key == 'success' or isinstance(value, (dict, list)) and len(str(value)) > 70:
            continue
        text = str(value)
        color = None
        if key == 'verdict' or text in ('reject', 'fail-to-reject'):
            color = "green" if text in ('martingale-function', 'fail-to-reject') else "yellow"
        print(f"  {colored(key, 'blue')}: {colored(text, color) if color else text}")
    if 'report' in result:
        mtg = result['report']
        color = "yellow" if mtg['verdict'] == 'reject' else "green"
        print(f"  {colored('verdict', 'blue')}: {colored(mtg['verdict'], color, attrs=['bold'])}"
              f"  (adjusted p = {mtg['adjusted_p_value']:.4g}, level {mtg['level']})")
        for instrument in mtg['instruments']:
            print(f"    phi={instrument['instrument']:<5} stat={instrument['statistic']: .5g}  z={instrument['z']: .3f}  p={instrument['p_value']:.4g}")
    print()


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, execute and print the report; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    utils.configure_logging(args.log_level)

    try:
        if args.config:
            run_config = load_run_config(args.config)
        elif args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        else:
            run_config = run_config_from_args(args)
        result = dispatch(run_config)
        run_dump = run_config.model_dump()
    except LevymartError as e:
        result = failure(e)
        run_dump = {'command': args.command, 'process': None}

    report = build_report(run_dump, result)
    text = to_json(report)
    if sys.stdout.isatty():
        print_summary(report)
    print(text)
    if args.report:
        Path(args.report).write_text(text + '\n')

    if result.get('success'):
        return 0
    logger.warning("%s failed: %s", run_dump.get('command'), result.get('error'))
    return EXIT_CODES.get(result.get('error_kind'), 1)


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
