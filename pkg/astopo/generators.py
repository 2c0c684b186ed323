"""Implements the growth processes that evolve an AS graph: BA, InEd, DInEd and GeoDInEd.

Every process is a deterministic function of its ModelParams; randomness comes from a numpy PCG64 generator seeded
with ModelParams.seed.
"""
import logging
import math

import numpy

from .as_graph import AsGraph
from .topology_enums import TopologyEnums

# Attempts at drawing an unused ordered pair before an edge is skipped
MAX_RESAMPLES = 32

DEFAULT_SEED_NODES = 5


class GeneratorException(Exception):
    """Names a new type of exception specific to graph generation."""


class ModelParamsException(GeneratorException):
    """Names a new type of exception specific to invalid generator parameters."""


def make_rng(seed):
    """Returns the generator used by every growth process for a given seed."""
    return numpy.random.Generator(numpy.random.PCG64(seed))


class ModelParams:
    """Class object representing the full configuration of a growth process."""

    # pylint: disable=too-many-arguments
    def __init__(self,
                 model='geodined',
                 n=15000,
                 m=2.11,
                 p=0.07,
                 alpha=0.5,
                 region_weights=None,
                 m0=DEFAULT_SEED_NODES,
                 seed=1,
                 region_names=None):
        """The constructor for ModelParams class.

            Args:
                model (TopologyEnums.ModelFamily or str):
                    Growth process. Options are: "ba", "ined", "dined" and "geodined". Default is "geodined".
                n (int):
                    Target node count. Default is 15000.
                m (float):
                    Mean number of edges added per step, fractional values allowed. Default is 2.11.
                p (float):
                    Probability that an added arrangement is symmetric, 0 to 1. Default is 0.07.
                alpha (float):
                    Probability that an existing-node edge is local to the new node's region, 0 to 1.
                    Only used by "geodined". Default is 0.5.
                region_weights (list[float]):
                    Non-negative weight per region, normalized on construction. Only used by "geodined".
                    Default is a single region.
                m0 (int):
                    Number of seed nodes. Default is 5.
                seed (int):
                    Seed of the random generator. Default is 1.
                region_names (list[str]):
                    Optional printable name per region.
        """
        self.model = TopologyEnums.ModelFamily(model)
        self.n = n
        self.m = m
        self.p = p
        self.alpha = alpha
        self.m0 = m0
        self.seed = seed
        self.region_names = list(region_names) if region_names is not None else None

        weights = [1.0] if region_weights is None else [float(weight) for weight in region_weights]
        total = sum(weights)
        # Already-normalized weights are kept bit-for-bit so that header round trips are exact
        if total > 0 and not math.isclose(total, 1.0, rel_tol=0, abs_tol=1e-9):
            weights = [weight / total for weight in weights]
        self.region_weights = weights

    def __eq__(self, other):
        return isinstance(other, ModelParams) and vars(self) == vars(other)

    def __str__(self):
        return str(vars(self))

    @property
    def region_count(self):
        """Number of regions the generated graph declares."""
        if self.model == TopologyEnums.ModelFamily.GEODINED:
            return len(self.region_weights)
        return 1

    @property
    def directed(self):
        """True for the directed model families."""
        return self.model in (TopologyEnums.ModelFamily.DINED, TopologyEnums.ModelFamily.GEODINED)

    def validate(self):
        """Raises ModelParamsException if any parameter is out of range."""
        if not self.m0 >= 3:
            raise ModelParamsException(f"m0 must be at least 3, got {self.m0}")
        if not self.n > self.m0:
            raise ModelParamsException(f"n must exceed m0 ({self.m0}), got {self.n}")
        if not self.m >= 1:
            raise ModelParamsException(f"m must be at least 1, got {self.m}")
        if not 0 <= self.p <= 1:
            raise ModelParamsException(f"p must lie in [0, 1], got {self.p}")
        if not 0 <= self.alpha <= 1:
            raise ModelParamsException(f"alpha must lie in [0, 1], got {self.alpha}")
        if not self.region_weights or any(weight < 0 for weight in self.region_weights) \
                or sum(self.region_weights) <= 0:
            raise ModelParamsException("Region weights must be non-negative with a positive sum")
        if self.region_names is not None and len(self.region_names) != len(self.region_weights):
            raise ModelParamsException("Every region weight needs exactly one region name")
        if self.model == TopologyEnums.ModelFamily.BA:
            if self.m != int(self.m):
                raise ModelParamsException(f"The BA model requires an integer m, got {self.m}")
            if self.m > self.m0:
                raise ModelParamsException(f"The BA model requires m <= m0, got m={self.m}, m0={self.m0}")

    def replace(self, **changes):
        """Returns a copy of the parameters with the given constructor arguments changed."""
        arguments = dict(vars(self))
        arguments.update(changes)
        return ModelParams(**arguments)

    def with_seed(self, seed):
        """Returns a copy of the parameters with another seed."""
        return self.replace(seed=seed)

    def to_header(self):
        """Returns the parameters as the key/value pairs of an edge list header."""
        header = {
            'model': self.model.value,
            'n': str(self.n),
            'm': repr(float(self.m)),
            'p': repr(float(self.p)),
            'alpha': repr(float(self.alpha)),
            'm0': str(self.m0),
            'seed': str(self.seed),
            'region-weights': ';'.join(repr(weight) for weight in self.region_weights),
        }
        if self.region_names is not None:
            header['region-names'] = ';'.join(self.region_names)

        return header

    @classmethod
    def from_header(cls, header):
        """Creates the parameters from the key/value pairs of an edge list header."""
        try:
            names = header.get('region-names')
            return cls(model=header['model'],
                       n=int(header['n']),
                       m=float(header['m']),
                       p=float(header['p']),
                       alpha=float(header['alpha']),
                       region_weights=[float(weight) for weight in header['region-weights'].split(';')],
                       m0=int(header['m0']),
                       seed=int(header['seed']),
                       region_names=names.split(';') if names else None)
        except (KeyError, ValueError) as ex:
            raise ModelParamsException(f"Incomplete or malformed parameter header: {ex}") from ex


class EdgeRecord:
    """Class object representing one arrangement added during a step."""

    def __init__(self, customer, provider, symmetric, scope):
        self.customer = customer
        self.provider = provider
        self.symmetric = symmetric
        self.scope = scope

    def __eq__(self, other):
        return isinstance(other, EdgeRecord) and vars(self) == vars(other)

    def __repr__(self):
        return f'EdgeRecord({self.customer}->{self.provider}, symmetric={self.symmetric}, {self.scope.value})'


class StepRecord:
    """Class object representing everything one growth step did."""

    def __init__(self, node_id, region):
        self.node_id = node_id
        self.region = region
        self.edges = []
        self.skipped = 0

    def __eq__(self, other):
        return isinstance(other, StepRecord) and vars(self) == vars(other)

    def __repr__(self):
        return f'StepRecord(node={self.node_id}, region={self.region}, edges={self.edges}, skipped={self.skipped})'


class GenerationTrace:
    """Per-step record of a generation run, sufficient to rebuild the graph."""

    def __init__(self, params, seed_regions, seed_edges):
        self.params = params
        self.seed_regions = list(seed_regions)
        self.seed_edges = list(seed_edges)
        self.steps = []

    def __eq__(self, other):
        return isinstance(other, GenerationTrace) and vars(self) == vars(other)

    @property
    def skipped(self):
        """Total number of edges that could not be realized."""
        return sum(step.skipped for step in self.steps)

    def replay(self):
        """Rebuilds the generated graph from the recorded edges.

            Returns:
                AsGraph: A graph equal to the one produced by the run that wrote this trace.
        """
        graph = AsGraph(self.params.region_count, self.params.directed, self.params.region_names)
        for region in self.seed_regions:
            graph.add_node(region)
        for customer, provider in self.seed_edges:
            graph.add_edge(customer, provider)

        for step in self.steps:
            graph.add_node(step.region)
            for edge in step.edges:
                graph.add_edge(edge.customer, edge.provider)
                if edge.symmetric:
                    graph.add_edge(edge.provider, edge.customer)

        return graph


class GrowthModel(TopologyEnums):
    """Parent class implementing the seed graph, step loop and trace shared by every growth process."""

    logger = logging.getLogger(__name__)
    directed = True

    def __init__(self, params, rng=None, graph=None):
        """The constructor for GrowthModel class.

            Args:
                params (ModelParams):
                    Configuration of the process.
                rng (numpy.random.Generator):
                    Optional generator; one seeded from params.seed is created when omitted.
                graph (AsGraph):
                    Optional graph to continue growing instead of a fresh seed graph.
        """
        params.validate()
        self.params = params
        self.rng = rng if rng is not None else make_rng(params.seed)
        self.graph = graph
        self.trace = None

    def generate(self):
        """Grows a graph of params.n nodes.

            Returns:
                tuple: (AsGraph, GenerationTrace)
        """
        self.graph, self.trace = self._seed_graph()

        while self.graph.node_count < self.params.n:
            self.trace.steps.append(self.step())
            if self.graph.node_count % 5000 == 0:
                self.logger.debug('%s: %s nodes, %s edges', self.params.model.value, self.graph.node_count,
                                  self.graph.edge_count)

        self.logger.info('Generated %s graph (seed %s): %s nodes, %s edges, %s skipped edges',
                         self.params.model.value, self.params.seed, self.graph.node_count, self.graph.edge_count,
                         self.trace.skipped)

        return self.graph, self.trace

    def step(self):
        """Adds one node and its edges. Returns the StepRecord."""
        raise NotImplementedError

    def extra_edge_count(self):
        """Number of existing-node edges for one step: floor(m - 1) plus a Bernoulli draw on its fraction."""
        whole = math.floor(self.params.m - 1)
        fraction = (self.params.m - 1) - whole
        return whole + int(self.rng.random() < fraction)

    def _seed_graph(self):
        # Seed nodes form a directed cycle inside the heaviest region; undirected models use symmetric pairs
        graph = AsGraph(self.params.region_count, self.directed, self.params.region_names)
        seed_region = int(numpy.argmax(self.params.region_weights)) if self.params.region_count > 1 else 0
        seed_edges = []

        for _ in range(self.params.m0):
            graph.add_node(seed_region)

        for node_id in range(self.params.m0):
            successor = (node_id + 1) % self.params.m0
            seed_edges.append((node_id, successor))
            if not self.directed:
                seed_edges.append((successor, node_id))

        for customer, provider in seed_edges:
            graph.add_edge(customer, provider)

        return graph, GenerationTrace(self.params, [seed_region] * self.params.m0, seed_edges)


class DirectedIncrementalEdgeModel(GrowthModel):
    """The DInEd process: a new customer per step plus extra customer-provider edges between existing nodes."""

    def step(self):
        """Adds one node, its provider edge and the extra existing-node edges.

            Returns:
                StepRecord: What the step added and how many edges it had to skip.
        """
        if self.graph is None or self.graph.out_degree_sum == 0:
            raise GeneratorException("A growth step needs a graph with a positive out-degree sum")

        region = self._choose_region()
        node_id = self.graph.add_node(region)
        record = StepRecord(node_id, region)

        provider, scope = self._first_provider(region)
        if provider is None:
            record.skipped += 1
        else:
            self._add_arrangement(record, node_id, provider, scope)

        for _ in range(self.extra_edge_count()):
            self._add_existing_edge(record, region)

        return record

    def _choose_region(self):
        return 0

    def _first_provider(self, region):
        # pylint: disable=unused-argument
        return self.graph.sample_preferential(self.WeightKind.OUT_DEGREE, self.rng), self.EdgeScope.FIRST

    def _edge_scope(self):
        return self.EdgeScope.GLOBAL

    def _add_existing_edge(self, record, region):
        scope = self._edge_scope()
        pair, zero_weight = self._draw_pair(region if scope == self.EdgeScope.LOCAL else None)

        if zero_weight and scope == self.EdgeScope.LOCAL:
            scope = self.EdgeScope.LOCAL_FALLBACK
            pair, zero_weight = self._draw_pair(None)

        if pair is None:
            record.skipped += 1
            self.logger.debug('Skipped %s edge at node %s (zero weight: %s)', scope.value, record.node_id,
                              zero_weight)
            return

        self._add_arrangement(record, pair[0], pair[1], scope)

    def _draw_pair(self, region):
        """Draws customer by in-degree and provider by out-degree until the ordered pair is new.

            Returns:
                tuple: ((customer, provider) or None, True if a weight sum was zero)
        """
        for _ in range(MAX_RESAMPLES):
            customer = self.graph.sample_preferential(self.WeightKind.IN_DEGREE, self.rng, region)
            provider = self.graph.sample_preferential(self.WeightKind.OUT_DEGREE, self.rng, region)
            if customer is None or provider is None:
                return None, True
            if customer != provider and not self.graph.has_edge(customer, provider):
                return (customer, provider), False

        return None, False

    def _add_arrangement(self, record, customer, provider, scope):
        self.graph.add_edge(customer, provider)
        symmetric = bool(self.rng.random() < self.params.p)
        if symmetric:
            self.graph.add_edge(provider, customer)
        record.edges.append(EdgeRecord(customer, provider, symmetric, scope))


class GeographicDirectedModel(DirectedIncrementalEdgeModel):
    """The GeoDInEd process: DInEd with a region per node and locality-restricted edges.

    With a single region no region or locality draws are made, so the output equals DInEd for the same seed.
    """

    def _choose_region(self):
        if self.params.region_count == 1:
            return 0
        return int(self.rng.choice(self.params.region_count, p=self.params.region_weights))

    def _first_provider(self, region):
        if self.params.region_count == 1:
            return super()._first_provider(region)

        provider = self.graph.sample_preferential(self.WeightKind.OUT_DEGREE, self.rng, region)
        if provider is None:
            # First node of its region: nobody local can sell it transit yet
            return self.graph.sample_preferential(self.WeightKind.OUT_DEGREE, self.rng), \
                self.EdgeScope.FIRST_FALLBACK

        return provider, self.EdgeScope.FIRST

    def _edge_scope(self):
        if self.params.region_count == 1:
            return self.EdgeScope.GLOBAL
        return self.EdgeScope.LOCAL if self.rng.random() < self.params.alpha else self.EdgeScope.GLOBAL


class IncrementalEdgeModel(GrowthModel):
    """The undirected InEd process, stored with every edge as a symmetric pair."""

    directed = False

    def step(self):
        """Adds one node attached by degree, then extra edges with one uniform and one preferential endpoint."""
        node_id = self.graph.add_node(0)
        record = StepRecord(node_id, 0)

        target = self.graph.sample_preferential(self.WeightKind.OUT_DEGREE, self.rng)
        self._add_pair(record, node_id, target)

        for _ in range(self.extra_edge_count()):
            for _ in range(MAX_RESAMPLES):
                uniform_end = int(self.rng.integers(self.graph.node_count))
                preferential_end = self.graph.sample_preferential(self.WeightKind.OUT_DEGREE, self.rng)
                if uniform_end != preferential_end and not self.graph.has_edge(uniform_end, preferential_end):
                    self._add_pair(record, uniform_end, preferential_end)
                    break
            else:
                record.skipped += 1

        return record

    def _add_pair(self, record, first, second):
        self.graph.add_edge(first, second)
        self.graph.add_edge(second, first)
        record.edges.append(EdgeRecord(first, second, True, self.EdgeScope.GLOBAL))


class BarabasiAlbertModel(GrowthModel):
    """The undirected BA process, stored with every edge as a symmetric pair."""

    directed = False

    def step(self):
        """Adds one node attached to m distinct nodes chosen by degree."""
        targets = []
        for _ in range(int(self.params.m)):
            for _ in range(MAX_RESAMPLES):
                target = self.graph.sample_preferential(self.WeightKind.OUT_DEGREE, self.rng)
                if target not in targets:
                    targets.append(target)
                    break

        node_id = self.graph.add_node(0)
        record = StepRecord(node_id, 0)
        record.skipped = int(self.params.m) - len(targets)

        for target in targets:
            self.graph.add_edge(node_id, target)
            self.graph.add_edge(target, node_id)
            record.edges.append(EdgeRecord(node_id, target, True, self.EdgeScope.FIRST))

        return record


MODEL_CLASSES = {
    TopologyEnums.ModelFamily.BA: BarabasiAlbertModel,
    TopologyEnums.ModelFamily.INED: IncrementalEdgeModel,
    TopologyEnums.ModelFamily.DINED: DirectedIncrementalEdgeModel,
    TopologyEnums.ModelFamily.GEODINED: GeographicDirectedModel,
}


def generate(params):
    """Grows a graph with the process named by params.model.

        Args:
            params (ModelParams):
                Configuration of the process, seed included.

        Returns:
            tuple: (AsGraph, GenerationTrace)
    """
    return MODEL_CLASSES[params.model](params).generate()


def dined_step(graph, params, rng):
    """Performs one DInEd step on an existing graph and returns its StepRecord."""
    return DirectedIncrementalEdgeModel(params, rng=rng, graph=graph).step()


def geodined_step(graph, params, rng):
    """Performs one GeoDInEd step on an existing graph and returns its StepRecord."""
    return GeographicDirectedModel(params, rng=rng, graph=graph).step()


def generate_ba(params):
    """Grows a BA graph and returns it. The model field of params is ignored."""
    return BarabasiAlbertModel(params.replace(model=TopologyEnums.ModelFamily.BA)).generate()[0]


def generate_ined(params):
    """Grows an InEd graph and returns it. The model field of params is ignored."""
    return IncrementalEdgeModel(params.replace(model=TopologyEnums.ModelFamily.INED)).generate()[0]
