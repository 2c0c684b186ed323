"""Runs ensembles of growth processes and turns graphs into analysis reports."""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext

from . import analysis, routing, theory
from .edge_list import read_edge_list, write_edge_list
from .generators import generate
from .topology_enums import TopologyEnums

try:
    from wakepy import keep
except NotImplementedError:
    keep = None  # Proceed without wakepy on linux without systemd
except KeyError:
    keep = None  # Proceed without wakepy on linux without dbus

ALL_SECTIONS = tuple(TopologyEnums.ReportSection)


def _keep_awake():
    return keep.running() if keep is not None else nullcontext()


def run_path(out, run, runs):
    """Returns the output file of one run: out itself for a single run, otherwise g.el becomes g.<run>.el."""
    if runs == 1:
        return out
    stem, extension = os.path.splitext(out)
    return f'{stem}.{run}{extension}'


class AnalysisOptions:
    """Class object representing what an analysis report measures and how."""

    # pylint: disable=too-many-arguments
    def __init__(self,
                 sections=ALL_SECTIONS,
                 density_threshold=analysis.DEFAULT_DENSITY_THRESHOLD,
                 min_core_size=analysis.DEFAULT_MIN_CORE_SIZE,
                 inflation_samples=1000,
                 inflation_seed=0,
                 peer_policy=TopologyEnums.PeerPolicy.KEEP_PHASE):
        """The constructor for AnalysisOptions class.

            Args:
                sections (list[TopologyEnums.ReportSection]):
                    Sections to compute. Default is every section.
                density_threshold (float):
                    Core density threshold. Default is 0.70.
                min_core_size (int):
                    Minimum core size. Default is 7.
                inflation_samples (int):
                    Pairs sampled per tier for path inflation. Default is 1000.
                inflation_seed (int):
                    Seed of the pair sampling. Default is 0.
                peer_policy (TopologyEnums.PeerPolicy):
                    How valley-free paths cross symmetric arrangements. Default is KEEP_PHASE.
        """
        self.sections = [TopologyEnums.ReportSection(section) for section in sections]
        self.density_threshold = density_threshold
        self.min_core_size = min_core_size
        self.inflation_samples = inflation_samples
        self.inflation_seed = inflation_seed
        self.peer_policy = TopologyEnums.PeerPolicy(peer_policy)

    def wants(self, section):
        """Returns True if the section is requested."""
        return TopologyEnums.ReportSection(section) in self.sections


def _fit_or_none(curve):
    try:
        return analysis.fit_power_law(curve).to_dict()
    except analysis.AnalysisException:
        return None


def _ccdf_section(graph, view):
    curve = analysis.ccdf(graph, view=view)
    section = {'global': curve.to_dict(), 'global_fit': _fit_or_none(curve)}

    regions = []
    if graph.region_count > 1:
        for region in range(graph.region_count):
            if len(graph.region_members(region)) == 0:
                continue
            curve = analysis.ccdf(graph, scope=region, view=view)
            entry = curve.to_dict()
            entry['name'] = graph.region_names[region] if graph.region_names else region
            entry['fit'] = _fit_or_none(curve)
            regions.append(entry)
    section['regions'] = regions

    return section


def analyze_graph(graph, options=None, params=None, source=None):
    """Measures one graph.

        Args:
            graph (AsGraph):
                The graph to measure.
            options (AnalysisOptions):
                Requested sections and their settings. Default measures everything.
            params (ModelParams):
                Generator parameters of the graph, echoed along with the theory predictions when given.
            source (str):
                Name of the graph file.

        Returns:
            dict: The per-graph report.
    """
    options = options if options is not None else AnalysisOptions()
    seed = params.seed if params is not None else None
    report = {'file': source, 'seed': seed, 'nodes': graph.node_count, 'edges': graph.edge_count}
    view = graph.undirected_view()

    if params is not None:
        report['params'] = params.to_header()
        try:
            report['theory'] = theory.predict(params.m, params.p, graph.node_count).to_dict()
        except theory.TheoryException:
            report['theory'] = None

    if options.wants(TopologyEnums.ReportSection.LEAVES):
        count, fraction = analysis.count_leaves(graph)
        report['leaves'] = {'count': count, 'fraction': fraction}

    if options.wants(TopologyEnums.ReportSection.SYMMETRIC):
        report['symmetric'] = {'count': graph.symmetric_count(),
                               'fraction': analysis.symmetric_fraction(graph) if graph.edge_count else None}

    if options.wants(TopologyEnums.ReportSection.CCDF):
        report['ccdf'] = _ccdf_section(graph, view)

    if options.wants(TopologyEnums.ReportSection.CORES):
        cores = analysis.find_dense_cores(view, options.density_threshold, options.min_core_size)
        report['cores'] = cores.to_dict(graph.region_names)

    if options.wants(TopologyEnums.ReportSection.INFLATION):
        router = routing.PolicyRouter(graph, view, options.peer_policy)
        tiers = routing.classify_tiers(graph, view=view)
        inflation = routing.path_inflation(graph, tiers, options.inflation_samples, options.inflation_seed, router)
        report['inflation'] = inflation.to_dict()
        report['inflation']['tier_counts'] = tiers.counts()

    return report


def aggregate(reports):
    """Combines per-graph reports into ensemble statistics and averaged CCDFs.

        Returns:
            dict: {'runs', 'metrics': {name: summary}, 'ccdf': averaged curves}
    """
    metrics = {}

    def collect(name, value):
        metrics.setdefault(name, []).append(value)

    for report in reports:
        if 'leaves' in report:
            collect('leaf_fraction', report['leaves']['fraction'])
        if 'symmetric' in report:
            collect('symmetric_fraction', report['symmetric']['fraction'])
        if 'ccdf' in report:
            fit = report['ccdf']['global_fit']
            collect('eta', fit['eta'] if fit else None)
        if 'cores' in report:
            sizes = report['cores']['sizes']
            collect('largest_core_size', sizes[0] if sizes else 0)
            collect('secondary_core_count', max(len(sizes) - 1, 0))
            collect('secondary_regional_share', report['cores']['regional_share'])
        if 'inflation' in report:
            for tier, counters in report['inflation']['tiers'].items():
                collect(f'{tier}_inflation_percentage', counters['percentage'] if counters['sampled'] else None)

    summary = {'runs': len(reports), 'metrics': {name: analysis.summarize(values) for name, values in metrics.items()}}

    with_ccdf = [report['ccdf'] for report in reports if 'ccdf' in report]
    if with_ccdf:
        summary['ccdf'] = _average_ccdf_section(with_ccdf)

    return summary


def _curve_from_dict(entry):
    return analysis.CcdfCurve(entry['points'], entry['scope'], entry['degree_kind'], entry['node_count'],
                              entry['joint'])


def _average_ccdf_section(sections):
    averaged = {'global': analysis.average_ccdf([_curve_from_dict(section['global']) for section in sections])
                .to_dict(), 'regions': []}

    scopes = {}
    for section in sections:
        for entry in section['regions']:
            scopes.setdefault(entry['scope'], []).append(entry)

    for scope in sorted(scopes):
        entry = analysis.average_ccdf([_curve_from_dict(curve) for curve in scopes[scope]]).to_dict()
        entry['name'] = scopes[scope][0]['name']
        averaged['regions'].append(entry)

    return averaged


def _generate_to_file(params, path):
    graph, trace = generate(params)
    write_edge_list(graph, path, params)
    return {'file': path, 'seed': params.seed, 'nodes': graph.node_count, 'edges': graph.edge_count,
            'skipped_edges': trace.skipped}


def _analyze_file(path, options):
    edge_file = read_edge_list(path)
    return analyze_graph(edge_file.graph, options, edge_file.params, path)


def _generate_and_analyze(params, options):
    graph, _ = generate(params)
    return analyze_graph(graph, options, params)


class EnsembleRunner:
    """Runs independent tasks serially or across worker processes, keeping the host awake meanwhile."""

    logger = logging.getLogger(__name__)

    def __init__(self, workers=1):
        """The constructor for EnsembleRunner class.

            Args:
                workers (int):
                    Number of worker processes. 1 runs everything in the calling process.
        """
        if workers < 1:
            raise ValueError(f"Worker count must be at least 1, got {workers}")
        self.workers = workers

    def _map(self, function, *iterables):
        with _keep_awake():
            if self.workers == 1:
                return list(map(function, *iterables))

            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                return list(executor.map(function, *iterables))

    def generate(self, params, runs, out):
        """Generates runs graphs, run r seeded params.seed + r, each written to its own file.

            Returns:
                list[dict]: One summary (file, seed, sizes, skipped edges) per run.
        """
        all_params = [params.with_seed(params.seed + run) for run in range(runs)]
        for run_params in all_params:
            run_params.validate()
        paths = [run_path(out, run, runs) for run in range(runs)]

        self.logger.info('Generating %s %s graph(s) with %s worker(s)', runs, params.model.value, self.workers)
        results = self._map(_generate_to_file, all_params, paths)
        self.logger.info('Finished generating %s graph(s)', runs)

        return results

    def analyze(self, paths, options):
        """Analyzes edge-list files. Returns one report per file, in order."""
        self.logger.info('Analyzing %s graph(s)', len(paths))
        return self._map(_analyze_file, paths, [options] * len(paths))

    def measure(self, params, runs, options):
        """Generates runs graphs in memory and returns their reports without writing files."""
        all_params = [params.with_seed(params.seed + run) for run in range(runs)]
        return self._map(_generate_and_analyze, all_params, [options] * runs)

    def sweep(self, params, alphas, ps, runs, options=None):
        """Measures symmetric fraction and dense cores over a grid of locality and symmetry parameters.

            Returns:
                list[dict]: One row per (p, alpha) with per-run values and their summaries.
        """
        options = options if options is not None else AnalysisOptions(
            [TopologyEnums.ReportSection.SYMMETRIC, TopologyEnums.ReportSection.CORES])
        rows = []
        for p in ps:
            for alpha in alphas:
                reports = self.measure(params.replace(p=p, alpha=alpha), runs, options)
                row = {'p': p, 'alpha': alpha, 'seeds': [report['seed'] for report in reports]}
                row['core_sizes'] = [report['cores']['sizes'] for report in reports if 'cores' in report]
                row.update(aggregate(reports)['metrics'])
                rows.append(row)
                self.logger.info('Sweep point p=%s alpha=%s done', p, alpha)

        return rows
