"""This module implements the directed AS graph with region labels, preferential sampling and its undirected
projection.
"""
import logging

import networkx
import numpy

from .topology_enums import TopologyEnums


class AsGraphException(Exception):
    """Names a new type of exception specific to AS graph construction."""


class NodeRecord:
    """Class object representing one AS of the graph."""

    def __init__(self, node_id, region, in_degree=0, out_degree=0):
        """The constructor for NodeRecord class.

            Args:
                node_id (int):
                    Birth index of the node.
                region (int):
                    Index of the region the node was born into.
                in_degree (int):
                    Number of customers, counting symmetric peers.
                out_degree (int):
                    Number of providers, counting symmetric peers.
        """
        self.id = node_id
        self.region = region
        self.in_degree = in_degree
        self.out_degree = out_degree

    def __str__(self):
        return str(vars(self))

    def __eq__(self, other):
        return isinstance(other, NodeRecord) and vars(self) == vars(other)


class AsGraph(TopologyEnums):
    """A directed simple graph whose edges run from customer to provider.

    A symmetric (peer-to-peer) arrangement is stored as two anti-parallel edges. Degrees are cached in growable
    numpy arrays so that preferential draws never rescan the edge set.
    """

    logger = logging.getLogger(__name__)

    def __init__(self, region_count=1, directed=True, region_names=None):
        """The constructor for AsGraph class.

            Args:
                region_count (int):
                    Number of declared regions. Region labels are fixed for the lifetime of the graph.
                directed (bool):
                    False when the graph encodes an undirected model with every edge as a symmetric pair.
                region_names (list[str]):
                    Optional printable name per region.
        """
        if region_count < 1:
            raise AsGraphException("A graph needs at least one region")
        if region_names is not None and len(region_names) != region_count:
            raise AsGraphException(f"Expected {region_count} region names, got {len(region_names)}")

        self.region_count = region_count
        self.directed = directed
        self.region_names = list(region_names) if region_names is not None else None

        self.in_degree_sum = 0
        self.out_degree_sum = 0

        self._node_count = 0
        self._regions = numpy.zeros(64, dtype=numpy.int64)
        self._in_degrees = numpy.zeros(64, dtype=numpy.int64)
        self._out_degrees = numpy.zeros(64, dtype=numpy.int64)
        self._providers = []
        self._customers = []
        self._edges = set()

    def __len__(self):
        return self._node_count

    def __eq__(self, other):
        return isinstance(other, AsGraph) and self.region_count == other.region_count and \
            self.directed == other.directed and self.region_names == other.region_names and \
            numpy.array_equal(self.regions(), other.regions()) and self._edges == other._edges

    @property
    def node_count(self):
        """Number of nodes in the graph."""
        return self._node_count

    @property
    def edge_count(self):
        """Number of directed edges in the graph."""
        return len(self._edges)

    @property
    def nodes(self):
        """Snapshot of every node as a list of NodeRecord objects in birth order."""
        return [self.node(node_id) for node_id in range(self._node_count)]

    def node(self, node_id):
        """Returns the NodeRecord of a single node.

            Args:
                node_id (int):
                    Birth index of the node.
        """
        self._check_node(node_id)
        return NodeRecord(node_id, int(self._regions[node_id]), int(self._in_degrees[node_id]),
                          int(self._out_degrees[node_id]))

    def add_node(self, region=0):
        """Appends a node with no edges and returns its id.

            Args:
                region (int):
                    Index of the region the node is born into.

            Returns:
                int: The new node id, equal to the previous node count.
        """
        if not 0 <= region < self.region_count:
            raise AsGraphException(f"Region index {region} out of range (graph declares {self.region_count} regions)")

        if self._node_count == len(self._regions):
            self._grow()

        node_id = self._node_count
        self._regions[node_id] = region
        self._in_degrees[node_id] = 0
        self._out_degrees[node_id] = 0
        self._providers.append(set())
        self._customers.append(set())
        self._node_count += 1

        return node_id

    def add_edge(self, customer, provider):
        """Inserts the directed edge customer -> provider unless it already exists.

            Args:
                customer (int):
                    Id of the node buying transit.
                provider (int):
                    Id of the node selling transit.

            Returns:
                bool: True if the edge was inserted, False if the ordered pair was already present.
        """
        self._check_node(customer)
        self._check_node(provider)
        if customer == provider:
            raise AsGraphException(f"Self-loop requested on node {customer}")

        if (customer, provider) in self._edges:
            return False

        self._edges.add((customer, provider))
        self._providers[customer].add(provider)
        self._customers[provider].add(customer)
        self._out_degrees[customer] += 1
        self._in_degrees[provider] += 1
        self.out_degree_sum += 1
        self.in_degree_sum += 1

        return True

    def has_edge(self, customer, provider):
        """Returns True if the directed edge customer -> provider exists."""
        return (customer, provider) in self._edges

    def is_symmetric(self, first, second):
        """Returns True if both anti-parallel edges between the two nodes exist."""
        return (first, second) in self._edges and (second, first) in self._edges

    def edges(self):
        """Returns every directed edge as a sorted list of (customer, provider) pairs."""
        return sorted(self._edges)

    def providers(self, node_id):
        """Returns the set of nodes node_id has an outgoing edge to."""
        self._check_node(node_id)
        return frozenset(self._providers[node_id])

    def customers(self, node_id):
        """Returns the set of nodes with an outgoing edge to node_id."""
        self._check_node(node_id)
        return frozenset(self._customers[node_id])

    def in_degree(self, node_id):
        """Returns the in-degree of a node."""
        self._check_node(node_id)
        return int(self._in_degrees[node_id])

    def out_degree(self, node_id):
        """Returns the out-degree of a node."""
        self._check_node(node_id)
        return int(self._out_degrees[node_id])

    def region(self, node_id):
        """Returns the region index of a node."""
        self._check_node(node_id)
        return int(self._regions[node_id])

    def in_degrees(self):
        """Returns the in-degrees of all nodes as a read-only numpy array."""
        return self._read_only(self._in_degrees)

    def out_degrees(self):
        """Returns the out-degrees of all nodes as a read-only numpy array."""
        return self._read_only(self._out_degrees)

    def regions(self):
        """Returns the region labels of all nodes as a read-only numpy array."""
        return self._read_only(self._regions)

    def region_members(self, region):
        """Returns the ids of the nodes born into a region."""
        return numpy.flatnonzero(self._regions[:self._node_count] == region)

    def symmetric_count(self):
        """Returns the number of symmetric arrangements (anti-parallel edge pairs)."""
        return sum(1 for customer, provider in self._edges if customer < provider and
                   (provider, customer) in self._edges)

    def recompute_degrees(self):
        """Recounts the degrees from the edge set.

            Returns:
                tuple: (in_degrees, out_degrees) as lists indexed by node id.
        """
        in_degrees = [0] * self._node_count
        out_degrees = [0] * self._node_count
        for customer, provider in self._edges:
            out_degrees[customer] += 1
            in_degrees[provider] += 1

        return in_degrees, out_degrees

    def sample_preferential(self, weight_kind, rng, region=None):
        """Draws a node with probability proportional to one of its degrees.

            Args:
                weight_kind (TopologyEnums.WeightKind):
                    Which degree acts as the weight.
                rng (numpy.random.Generator):
                    Source of randomness.
                region (int):
                    Optional region; only nodes of that region are eligible.

            Returns:
                int: The chosen node id, or None when the eligible weight sum is zero.
        """
        if self._node_count == 0:
            raise AsGraphException("Cannot sample from an empty graph")

        if weight_kind == self.WeightKind.IN_DEGREE:
            weights = self._in_degrees[:self._node_count]
        elif weight_kind == self.WeightKind.OUT_DEGREE:
            weights = self._out_degrees[:self._node_count]
        else:
            raise ValueError(f"Unknown weight kind: {weight_kind}")

        if region is not None:
            weights = numpy.where(self._regions[:self._node_count] == region, weights, 0)

        cumulative = numpy.cumsum(weights)
        total = int(cumulative[-1])
        if total == 0:
            return None

        # Integer weights keep the draw exact: ticket t belongs to the first node whose running sum exceeds t
        ticket = int(rng.integers(total))
        return int(numpy.searchsorted(cumulative, ticket, side='right'))

    def undirected_view(self):
        """Returns the unordered-pair projection of the graph."""
        return UndirectedView(self)

    def _check_node(self, node_id):
        if not 0 <= node_id < self._node_count:
            raise AsGraphException(f"Unknown node id {node_id} (graph has {self._node_count} nodes)")

    def _grow(self):
        capacity = 2 * len(self._regions)
        self._regions = numpy.resize(self._regions, capacity)
        self._in_degrees = numpy.resize(self._in_degrees, capacity)
        self._out_degrees = numpy.resize(self._out_degrees, capacity)

    def _read_only(self, array):
        view = array[:self._node_count].view()
        view.flags.writeable = False
        return view


class UndirectedView:
    """The undirected projection of an AsGraph: one edge per node pair joined in either direction."""

    def __init__(self, graph):
        """The constructor for UndirectedView class.

            Args:
                graph (AsGraph):
                    The directed graph to project. Later changes to it are not reflected.
        """
        self.node_count = graph.node_count
        self.region_count = graph.region_count
        self.regions = numpy.array(graph.regions())
        self.adjacency = [set() for _ in range(self.node_count)]
        self.edges = set()

        for customer, provider in graph.edges():
            self.edges.add((min(customer, provider), max(customer, provider)))
            self.adjacency[customer].add(provider)
            self.adjacency[provider].add(customer)

        self._networkx_graph = None

    @property
    def edge_count(self):
        """Number of undirected edges."""
        return len(self.edges)

    def degree(self, node_id):
        """Returns the number of distinct neighbours of a node."""
        return len(self.adjacency[node_id])

    def degrees(self):
        """Returns the undirected degree of every node as a numpy array."""
        return numpy.array([len(neighbors) for neighbors in self.adjacency], dtype=numpy.int64)

    def neighbors(self, node_id):
        """Returns the set of neighbours of a node."""
        return self.adjacency[node_id]

    def local_degree(self, node_id):
        """Returns the number of neighbours sharing the node's region."""
        region = self.regions[node_id]
        return sum(1 for neighbor in self.adjacency[node_id] if self.regions[neighbor] == region)

    def local_degrees(self):
        """Returns the local degree of every node as a numpy array."""
        return numpy.array([self.local_degree(node_id) for node_id in range(self.node_count)], dtype=numpy.int64)

    def induced_edge_count(self, nodes):
        """Returns the number of undirected edges with both endpoints in nodes."""
        members = set(nodes)
        return sum(len(self.adjacency[node_id] & members) for node_id in members) // 2

    def density(self, nodes):
        """Returns the fraction of the l(l-1)/2 possible edges present among nodes."""
        size = len(set(nodes))
        if size < 2:
            return 0.0
        return self.induced_edge_count(nodes) / (size * (size - 1) / 2)

    def to_networkx(self):
        """Returns the view as a networkx.Graph (built once and cached)."""
        if self._networkx_graph is None:
            self._networkx_graph = networkx.Graph()
            self._networkx_graph.add_nodes_from(range(self.node_count))
            self._networkx_graph.add_edges_from(self.edges)

        return self._networkx_graph
