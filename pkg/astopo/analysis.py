"""Measurements on generated graphs: degree CCDFs and power-law fits, leaves, symmetric arrangements and dense
cores.
"""
import heapq
import logging

import numpy
from scipy.stats import linregress

from .as_graph import AsGraph
from .topology_enums import TopologyEnums

logger = logging.getLogger(__name__)

GLOBAL_SCOPE = 'global'

DEFAULT_DENSITY_THRESHOLD = 0.70
DEFAULT_MIN_CORE_SIZE = 7

# Fits stop at the largest degree still held by this many nodes
TAIL_NODE_COUNT = 10


class AnalysisException(Exception):
    """Names a new type of exception specific to graph measurements."""


def _as_view(graph):
    if isinstance(graph, AsGraph):
        return graph.undirected_view()
    return graph


def degree_sequence(graph, degree_kind=TopologyEnums.DegreeKind.UNDIRECTED, view=None):
    """Returns one degree per node as a numpy array.

        Args:
            graph (AsGraph):
                The measured graph.
            degree_kind (TopologyEnums.DegreeKind):
                Which degree to report.
            view (UndirectedView):
                Optional precomputed undirected view of graph.
    """
    degree_kind = TopologyEnums.DegreeKind(degree_kind)
    if degree_kind == TopologyEnums.DegreeKind.IN:
        return numpy.array(graph.in_degrees())
    if degree_kind == TopologyEnums.DegreeKind.OUT:
        return numpy.array(graph.out_degrees())

    view = view if view is not None else graph.undirected_view()
    if degree_kind == TopologyEnums.DegreeKind.LOCAL:
        return view.local_degrees()
    return view.degrees()


class CcdfCurve:
    """Class object representing a complementary cumulative degree distribution."""

    def __init__(self, points, scope=GLOBAL_SCOPE, degree_kind=TopologyEnums.DegreeKind.UNDIRECTED,
                 node_count=None, joint=False):
        """The constructor for CcdfCurve class.

            Args:
                points (list[tuple]):
                    (degree, fraction of nodes with at least that degree) pairs, sorted by degree.
                scope (str or int):
                    "global" or the index of the region the curve covers.
                degree_kind (TopologyEnums.DegreeKind):
                    The degree that was measured.
                node_count (int):
                    Number of nodes the fractions are relative to.
                joint (bool):
                    True when a regional curve is normalized by the whole graph rather than the region.
        """
        self.points = [(int(degree), float(fraction)) for degree, fraction in points]
        self.scope = scope
        self.degree_kind = TopologyEnums.DegreeKind(degree_kind)
        self.node_count = node_count
        self.joint = joint

    def __len__(self):
        return len(self.points)

    @property
    def degrees(self):
        """Degrees of the curve as a numpy array."""
        return numpy.array([degree for degree, _ in self.points], dtype=float)

    @property
    def fractions(self):
        """CCDF values of the curve as a numpy array."""
        return numpy.array([fraction for _, fraction in self.points], dtype=float)

    def value_at(self, degree):
        """Returns the CCDF evaluated at any degree, not only at the stored points."""
        for point_degree, fraction in self.points:
            if point_degree >= degree:
                return fraction
        return 0.0

    def to_dict(self):
        """Returns the curve as a JSON-ready dictionary."""
        return {
            'scope': self.scope,
            'degree_kind': self.degree_kind.value,
            'node_count': self.node_count,
            'joint': self.joint,
            'points': [list(point) for point in self.points],
        }


def ccdf(graph, degree_kind=TopologyEnums.DegreeKind.UNDIRECTED, scope=GLOBAL_SCOPE, joint=False, view=None):
    """Computes the exact empirical CCDF of a degree over the nodes in scope.

        Args:
            graph (AsGraph):
                The measured graph.
            degree_kind (TopologyEnums.DegreeKind):
                Which degree to measure. Default is the undirected degree.
            scope (str or int):
                "global" or a region index.
            joint (bool):
                For a regional scope, normalize by the whole graph, giving Pr[deg >= k and v in region].
            view (UndirectedView):
                Optional precomputed undirected view of graph.

        Returns:
            CcdfCurve: One point per distinct positive degree.
    """
    degrees = degree_sequence(graph, degree_kind, view)

    if scope == GLOBAL_SCOPE:
        in_scope = degrees
    else:
        in_scope = degrees[numpy.asarray(graph.regions()) == scope]

    if len(in_scope) == 0:
        raise AnalysisException(f"No nodes in scope {scope}")

    denominator = graph.node_count if joint else len(in_scope)
    ordered = numpy.sort(in_scope)
    distinct = numpy.unique(ordered[ordered > 0])
    at_least = len(ordered) - numpy.searchsorted(ordered, distinct, side='left')

    points = list(zip(distinct.tolist(), (at_least / denominator).tolist()))
    return CcdfCurve(points, scope, degree_kind, denominator, joint)


def average_ccdf(curves):
    """Pointwise mean of several CCDFs of the same scope and degree kind, as used for ensemble figures."""
    if not curves:
        raise AnalysisException("Cannot average an empty set of curves")

    degrees = sorted({degree for curve in curves for degree, _ in curve.points})
    points = [(degree, float(numpy.mean([curve.value_at(degree) for curve in curves]))) for degree in degrees]
    node_count = int(round(numpy.mean([curve.node_count or 0 for curve in curves])))

    return CcdfCurve(points, curves[0].scope, curves[0].degree_kind, node_count, curves[0].joint)


class PowerLawFit:
    """Class object representing a least-squares power-law fit to a CCDF."""

    def __init__(self, eta, k_min, k_max, residual, point_count):
        self.eta = eta
        self.gamma = eta + 1
        self.k_min = k_min
        self.k_max = k_max
        self.residual = residual
        self.point_count = point_count

    def __str__(self):
        return str(vars(self))

    def to_dict(self):
        """Returns the fit as a JSON-ready dictionary."""
        return dict(vars(self))


def fit_power_law(curve, k_min=1, k_max=None):
    """Fits log CCDF against log degree by least squares.

        Args:
            curve (CcdfCurve):
                The distribution to fit.
            k_min (int):
                Smallest degree used. Default is 1.
            k_max (int):
                Largest degree used. Defaults to the largest degree whose CCDF is at least 10 / node_count.

        Returns:
            PowerLawFit: eta is the slope magnitude, residual the r squared of the regression.
    """
    if k_min < 1:
        raise AnalysisException(f"k_min must be at least 1, got {k_min}")

    degrees = curve.degrees
    fractions = curve.fractions

    if k_max is None:
        cutoff = TAIL_NODE_COUNT / curve.node_count if curve.node_count else 0.0
        qualifying = degrees[fractions >= cutoff]
        k_max = int(qualifying.max()) if len(qualifying) else k_min

    selected = (degrees >= k_min) & (degrees <= k_max)
    if numpy.count_nonzero(selected) < 5:
        raise AnalysisException(f"A power-law fit needs at least 5 points in [{k_min}, {k_max}], "
                                f"got {numpy.count_nonzero(selected)}")

    regression = linregress(numpy.log(degrees[selected]), numpy.log(fractions[selected]))

    return PowerLawFit(-float(regression.slope), int(k_min), int(k_max), float(regression.rvalue ** 2),
                       int(numpy.count_nonzero(selected)))


def count_leaves(graph):
    """Counts leaves: in-degree 0 and out-degree 1 for directed graphs, undirected degree 1 otherwise.

        Returns:
            tuple: (count, fraction of all nodes)
    """
    if graph.node_count == 0:
        return 0, 0.0

    in_degrees = numpy.asarray(graph.in_degrees())
    out_degrees = numpy.asarray(graph.out_degrees())

    if graph.directed:
        count = int(numpy.count_nonzero((in_degrees == 0) & (out_degrees == 1)))
    else:
        count = int(numpy.count_nonzero(graph.undirected_view().degrees() == 1))

    return count, count / graph.node_count


def symmetric_fraction(graph):
    """Fraction of connected node pairs joined by both anti-parallel edges."""
    symmetric = graph.symmetric_count()
    arrangements = graph.edge_count - symmetric
    if arrangements == 0:
        raise AnalysisException("The graph has no edges")

    return symmetric / arrangements


class DenseCore:
    """Class object representing one dense core."""

    def __init__(self, members, density, region):
        """The constructor for DenseCore class.

            Args:
                members (list[int]):
                    Node ids of the core.
                density (float):
                    Fraction of the possible undirected edges present among the members.
                region (int):
                    Region shared by every member, or None when members span regions.
        """
        self.members = sorted(members)
        self.size = len(self.members)
        self.density = density
        self.region = region

    @property
    def is_regional(self):
        """True when every member belongs to one region."""
        return self.region is not None

    def __repr__(self):
        return f'DenseCore(size={self.size}, density={self.density:.3f}, region={self.region})'

    def to_dict(self, region_names=None):
        """Returns the core as a JSON-ready dictionary."""
        if self.region is None:
            region = GLOBAL_SCOPE
        elif region_names:
            region = region_names[self.region]
        else:
            region = self.region

        return {'size': self.size, 'density': self.density, 'region': region, 'members': self.members}


class CoreReport:
    """Class object representing the dense cores of a graph, largest first."""

    def __init__(self, cores, density_threshold, min_size):
        self.cores = sorted(cores, key=lambda core: (-core.size, core.members[0]))
        self.density_threshold = density_threshold
        self.min_size = min_size

    def __len__(self):
        return len(self.cores)

    @property
    def primary(self):
        """The largest core, or None."""
        return self.cores[0] if self.cores else None

    @property
    def secondary(self):
        """Every core but the largest."""
        return self.cores[1:]

    def regional_share(self):
        """Fraction of secondary cores contained in one region, or None without secondary cores."""
        if not self.secondary:
            return None
        return sum(1 for core in self.secondary if core.is_regional) / len(self.secondary)

    def to_dict(self, region_names=None):
        """Returns the report as a JSON-ready dictionary."""
        return {
            'density_threshold': self.density_threshold,
            'min_size': self.min_size,
            'sizes': [core.size for core in self.cores],
            'regional_share': self.regional_share(),
            'cores': [core.to_dict(region_names) for core in self.cores],
        }


def _densest_qualifying_set(view, remaining, density_threshold, min_size):
    """Peels minimum-degree nodes (lowest id first) and returns the first remaining set that is dense enough."""
    degrees = {node_id: len(view.adjacency[node_id] & remaining) for node_id in remaining}
    edge_count = sum(degrees.values()) // 2
    alive = set(remaining)
    heap = [(degree, node_id) for node_id, degree in degrees.items()]
    heapq.heapify(heap)

    while len(alive) >= min_size:
        size = len(alive)
        if edge_count / (size * (size - 1) / 2) >= density_threshold:
            return alive

        degree, node_id = heapq.heappop(heap)
        if node_id not in alive or degree != degrees[node_id]:
            continue

        alive.discard(node_id)
        edge_count -= degree
        for neighbor in view.adjacency[node_id]:
            if neighbor in alive:
                degrees[neighbor] -= 1
                heapq.heappush(heap, (degrees[neighbor], neighbor))

    return None


def _prune_weak_members(view, members, min_size):
    """Drops members attached by fewer than half the mean internal degree; each removal raises the density."""
    members = set(members)
    while len(members) > min_size:
        internal = {node_id: len(view.adjacency[node_id] & members) for node_id in members}
        weakest = min(members, key=lambda node_id: (internal[node_id], node_id))
        mean_degree = sum(internal.values()) / len(members)
        if internal[weakest] >= mean_degree / 2:
            break
        members.discard(weakest)

    return members


def _extract_cores(view, scope, density_threshold, min_size):
    """Repeats peeling inside scope, removing each core found from it, until no stage qualifies."""
    cores = []
    while len(scope) >= min_size:
        members = _densest_qualifying_set(view, scope, density_threshold, min_size)
        if members is None:
            break

        members = _prune_weak_members(view, members, min_size)
        regions = {int(view.regions[node_id]) for node_id in members}
        core = DenseCore(members, view.density(members), regions.pop() if len(regions) == 1 else None)
        cores.append(core)
        scope -= members
        logger.debug('Found core of size %s with density %.3f', core.size, core.density)

    return cores


def find_dense_cores(graph, density_threshold=DEFAULT_DENSITY_THRESHOLD, min_size=DEFAULT_MIN_CORE_SIZE,
                     regional_pass=True):
    """Extracts vertex-disjoint dense cores from the undirected view, largest first.

    Each round peels the remaining graph by minimum degree, keeps the largest peel stage of at least min_size
    nodes whose density reaches the threshold, drops weakly attached members, and removes the core before the
    next round. Extraction stops when no stage qualifies.

    Peeling the whole graph strips a small cluster early when its members have lower degree than the nodes
    of the main core, so a regional pass then repeats the rounds on each region's remaining nodes.

        Args:
            graph (AsGraph or UndirectedView):
                The graph to search.
            density_threshold (float):
                Minimum edge density, 0 exclusive to 1. Default is 0.70.
            min_size (int):
                Minimum core size, at least 2. Default is 7.
            regional_pass (bool):
                Also peel each region's induced remaining subgraph once the global rounds stop. Default is True.

        Returns:
            CoreReport: The cores found, possibly none.
    """
    if not 0 < density_threshold <= 1:
        raise ValueError(f"Density threshold must lie in (0, 1], got {density_threshold}")
    if min_size < 2:
        raise ValueError(f"Minimum core size must be at least 2, got {min_size}")

    view = _as_view(graph)
    remaining = {node_id for node_id in range(view.node_count) if view.adjacency[node_id]}
    cores = _extract_cores(view, remaining, density_threshold, min_size)

    regions = sorted({int(view.regions[node_id]) for node_id in remaining})
    if regional_pass and len(regions) > 1:
        for region in regions:
            scope = {node_id for node_id in remaining if view.regions[node_id] == region}
            found = _extract_cores(view, scope, density_threshold, min_size)
            if found:
                logger.debug('Regional pass found %s cores in region %s', len(found), region)
            cores.extend(found)

    return CoreReport(cores, density_threshold, min_size)


def summarize(values):
    """Returns mean, sample standard deviation and count of a list of numbers, ignoring None entries."""
    present = [value for value in values if value is not None]
    if not present:
        return {'mean': None, 'stddev': None, 'count': 0}

    stddev = float(numpy.std(present, ddof=1)) if len(present) > 1 else 0.0
    return {'mean': float(numpy.mean(present)), 'stddev': stddev, 'count': len(present)}
