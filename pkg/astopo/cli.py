"""Command-line surface: generate, analyze, predict and sweep.

Exit codes are 0 on success, 1 on usage errors and 2 on data errors.
"""
import argparse
import glob
import json
import logging
import os
import sys

import numpy

from . import theory
from .analysis import AnalysisException
from .edge_list import EdgeListException, RegionFileException, read_region_file
from .ensemble import AnalysisOptions, EnsembleRunner, aggregate
from .generators import GeneratorException, ModelParams
from .topology_enums import TopologyEnums

logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_USAGE_ERROR = 1
EXIT_DATA_ERROR = 2


class UsageError(Exception):
    """Names a new type of exception specific to invalid command lines."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _json_default(value):
    if isinstance(value, numpy.generic):
        return value.item()
    if isinstance(value, numpy.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _emit(document, out):
    text = json.dumps(document, indent=2, default=_json_default)
    if out is None:
        sys.stdout.write(text + '\n')
        return

    try:
        with open(out, 'w', encoding='utf8') as report_file:
            report_file.write(text + '\n')
    except OSError as ex:
        raise EdgeListException(f"Cannot write report {out}: {ex.strerror}") from ex
    logger.info('Wrote report to %s', out)


def _model_params(args, model):
    weights = None
    names = None
    if model == TopologyEnums.ModelFamily.GEODINED.value:
        table = read_region_file(args.regions) if args.regions else read_region_file()
        weights, names = table.weights, table.names

    return ModelParams(model=model, n=args.nodes, m=args.m, p=args.p, alpha=args.alpha, region_weights=weights,
                       m0=args.m0, seed=args.seed, region_names=names)


def cmd_generate(args):
    """Writes one edge-list file per run; run r is seeded seed + r."""
    if args.runs < 1:
        raise UsageError(f"--runs must be at least 1, got {args.runs}")

    params = _model_params(args, args.model)
    results = EnsembleRunner(args.workers).generate(params, args.runs, args.out)
    for result in results:
        logger.info('%s: seed %s, %s nodes, %s edges', result['file'], result['seed'], result['nodes'],
                    result['edges'])

    return EXIT_SUCCESS


def _expand_graph_arguments(patterns):
    paths = []
    for pattern in patterns:
        matches = sorted(glob.glob(pattern))
        if not matches:
            if not os.path.exists(pattern):
                raise EdgeListException(f"No graph file matches {pattern}")
            matches = [pattern]
        paths.extend(match for match in matches if match not in paths)

    return paths


def _requested_sections(args):
    if args.all:
        return list(TopologyEnums.ReportSection)
    return [section for section in TopologyEnums.ReportSection if getattr(args, section.value)]


def cmd_analyze(args):
    """Writes an analysis report for one or more graph files, with an aggregate section for several."""
    sections = _requested_sections(args)
    if not sections:
        raise UsageError("No report section requested; use --all or one of --cores, --ccdf, --leaves, "
                         "--symmetric, --inflation")
    if args.inflation_samples < 1:
        raise UsageError(f"--inflation-samples must be at least 1, got {args.inflation_samples}")

    options = AnalysisOptions(sections, args.threshold, args.min_core_size, args.inflation_samples,
                              args.inflation_seed, args.peer_policy)
    paths = _expand_graph_arguments(args.graph)
    reports = EnsembleRunner(args.workers).analyze(paths, options)

    document = {'graphs': reports}
    if len(reports) > 1:
        document['aggregate'] = aggregate(reports)
    _emit(document, args.out)

    return EXIT_SUCCESS


def cmd_predict(args):
    """Prints the theory constants and predictions for (m, p) as JSON."""
    prediction = theory.predict(args.m, args.p, args.nodes)
    _emit(prediction.to_dict(), None)

    return EXIT_SUCCESS


def cmd_sweep(args):
    """Reports symmetric fraction and dense cores over lists of locality and symmetry parameters."""
    if args.runs < 1:
        raise UsageError(f"--runs must be at least 1, got {args.runs}")

    params = _model_params(args, TopologyEnums.ModelFamily.GEODINED.value)
    params.validate()
    options = AnalysisOptions([TopologyEnums.ReportSection.SYMMETRIC, TopologyEnums.ReportSection.CORES],
                              args.threshold, args.min_core_size)
    rows = EnsembleRunner(args.workers).sweep(params, args.alphas, args.ps, args.runs, options)
    _emit({'params': params.to_header(), 'runs': args.runs, 'rows': rows}, args.out)

    return EXIT_SUCCESS


def _add_model_arguments(parser, with_model=True):
    if with_model:
        parser.add_argument('--model', choices=[family.value for family in TopologyEnums.ModelFamily],
                            default=TopologyEnums.ModelFamily.GEODINED.value, help='growth process (default geodined)')
    parser.add_argument('--nodes', type=int, default=15000, help='node count (default 15000)')
    parser.add_argument('--m', type=float, default=2.11, help='mean edges per step (default 2.11)')
    parser.add_argument('--p', type=float, default=0.07, help='symmetric arrangement probability (default 0.07)')
    if with_model:
        parser.add_argument('--alpha', type=float, default=0.5, help='locality probability (default 0.5)')
    parser.add_argument('--m0', type=int, default=5, help='seed node count (default 5)')
    parser.add_argument('--regions', help='region file of name,weight_percent lines (default: bundled table)')
    parser.add_argument('--seed', type=int, default=1, help='seed of run 0 (default 1)')
    parser.add_argument('--workers', type=int, default=1, help='worker processes (default 1)')


def build_parser():
    """Returns the argument parser of the astopo command."""
    parser = _ArgumentParser(prog='astopo', description='Synthetic AS-level topology generator and analyzer')
    parser.add_argument('--verbose', action='store_true', help='log debug messages')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    generate = commands.add_parser('generate', help='grow graphs and write edge lists')
    _add_model_arguments(generate)
    generate.add_argument('--runs', type=int, default=1, help='number of graphs; files are named out.<run>.ext')
    generate.add_argument('--out', required=True, help='edge-list file to write')
    generate.set_defaults(handler=cmd_generate)

    analyze = commands.add_parser('analyze', help='measure edge-list files')
    analyze.add_argument('--graph', action='append', required=True, help='edge-list file or glob; repeatable')
    for section in TopologyEnums.ReportSection:
        analyze.add_argument(f'--{section.value}', action='store_true', help=f'include the {section.value} section')
    analyze.add_argument('--all', action='store_true', help='include every section')
    analyze.add_argument('--threshold', type=float, default=0.70, help='core density threshold (default 0.70)')
    analyze.add_argument('--min-core-size', type=int, default=7, help='minimum core size (default 7)')
    analyze.add_argument('--inflation-samples', type=int, default=1000, help='pairs per tier (default 1000)')
    analyze.add_argument('--inflation-seed', type=int, default=0, help='pair sampling seed (default 0)')
    analyze.add_argument('--peer-policy', choices=[policy.value for policy in TopologyEnums.PeerPolicy],
                         default=TopologyEnums.PeerPolicy.KEEP_PHASE.value,
                         help='how valley-free paths cross symmetric arrangements (default keep-phase)')
    analyze.add_argument('--workers', type=int, default=1, help='worker processes (default 1)')
    analyze.add_argument('--out', help='report file (default: standard output)')
    analyze.set_defaults(handler=cmd_analyze)

    predict = commands.add_parser('predict', help='print closed-form predictions')
    predict.add_argument('--m', type=float, required=True, help='mean edges per step, greater than 1')
    predict.add_argument('--p', type=float, required=True, help='symmetric arrangement probability')
    predict.add_argument('--nodes', type=int, help='graph size for the maximal degree predictions')
    predict.set_defaults(handler=cmd_predict)

    sweep = commands.add_parser('sweep', help='symmetric fraction and cores over alpha and p grids')
    _add_model_arguments(sweep, with_model=False)
    sweep.add_argument('--alphas', type=float, nargs='+', default=[0.0, 0.25, 0.5, 0.75, 1.0])
    sweep.add_argument('--ps', type=float, nargs='+', default=[0.07, 0.0])
    sweep.add_argument('--runs', type=int, default=10, help='graphs per grid point (default 10)')
    sweep.add_argument('--threshold', type=float, default=0.70, help='core density threshold (default 0.70)')
    sweep.add_argument('--min-core-size', type=int, default=7, help='minimum core size (default 7)')
    sweep.add_argument('--out', help='report file (default: standard output)')
    sweep.set_defaults(handler=cmd_sweep, alpha=0.5)

    return parser


def main(argv=None):
    """Runs the astopo command and returns its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as ex:
        sys.stderr.write(f'{ex}\n')
        return EXIT_USAGE_ERROR

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    try:
        return args.handler(args)
    except (EdgeListException, RegionFileException, AnalysisException, OSError) as ex:
        sys.stderr.write(f'astopo {args.command}: {ex}\n')
        return EXIT_DATA_ERROR
    except (UsageError, GeneratorException, theory.TheoryException, ValueError) as ex:
        sys.stderr.write(f'astopo {args.command}: {ex}\n')
        return EXIT_USAGE_ERROR
