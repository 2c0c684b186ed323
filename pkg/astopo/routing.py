"""Implements no-valley routing on AS graphs, degree tiers and path-inflation statistics."""
import logging
from collections import deque

import networkx
import numpy

from .generators import make_rng
from .topology_enums import TopologyEnums

logger = logging.getLogger(__name__)

DEFAULT_TIER_THRESHOLDS = (100, 20, 3)

MEASURED_TIERS = (TopologyEnums.Tier.TIER1, TopologyEnums.Tier.TIER2, TopologyEnums.Tier.TIER3)


class TierAssignment(TopologyEnums):
    """Class object holding the tier label of every node."""

    def __init__(self, labels, thresholds=DEFAULT_TIER_THRESHOLDS):
        """The constructor for TierAssignment class.

            Args:
                labels (list[TopologyEnums.Tier]):
                    Tier of each node, indexed by node id.
                thresholds (tuple):
                    Minimum undirected degree of tier 1, tier 2 and tier 3.
        """
        self.labels = [self.Tier(label) for label in labels]
        self.thresholds = tuple(thresholds)

    def __len__(self):
        return len(self.labels)

    def tier_of(self, node_id):
        """Returns the tier of a node."""
        return self.labels[node_id]

    def members(self, tier):
        """Returns the ids of the nodes in a tier, in increasing order."""
        tier = self.Tier(tier)
        return [node_id for node_id, label in enumerate(self.labels) if label == tier]

    def counts(self):
        """Returns the number of nodes per tier name."""
        return {tier.name.lower(): len(self.members(tier)) for tier in self.Tier}


def classify_tiers(graph, thresholds=DEFAULT_TIER_THRESHOLDS, view=None):
    """Labels every node by undirected degree: tier1 >= 100, tier2 >= 20, tier3 >= 3, untiered below.

        Args:
            graph (AsGraph):
                The graph to classify.
            thresholds (tuple):
                Minimum degrees of tier 1, tier 2 and tier 3.
            view (UndirectedView):
                Optional precomputed undirected view of graph.

        Returns:
            TierAssignment
    """
    tier1, tier2, tier3 = thresholds
    view = view if view is not None else graph.undirected_view()

    labels = []
    for degree in view.degrees():
        if degree >= tier1:
            labels.append(TopologyEnums.Tier.TIER1)
        elif degree >= tier2:
            labels.append(TopologyEnums.Tier.TIER2)
        elif degree >= tier3:
            labels.append(TopologyEnums.Tier.TIER3)
        else:
            labels.append(TopologyEnums.Tier.UNTIERED)

    return TierAssignment(labels, thresholds)


class PolicyRouter(TopologyEnums):
    """Shortest-path engine over one graph, with and without the no-valley policy.

    Relationships are indexed once per graph: for each node its providers (uphill), customers (downhill) and
    symmetric peers.
    """

    def __init__(self, graph, view=None, peer_policy=TopologyEnums.PeerPolicy.KEEP_PHASE):
        """The constructor for PolicyRouter class.

            Args:
                graph (AsGraph):
                    The routed graph.
                view (UndirectedView):
                    Optional precomputed undirected view of graph.
                peer_policy (TopologyEnums.PeerPolicy):
                    KEEP_PHASE lets a symmetric hop keep the phase. DESCEND treats it as a provider-customer hop,
                    allowed in either phase but ending the climb. Default is KEEP_PHASE.
        """
        self.graph = graph
        self.peer_policy = self.PeerPolicy(peer_policy)
        self.view = view if view is not None else graph.undirected_view()
        self.uphill = []
        self.downhill = []
        self.peers = []

        for node_id in range(graph.node_count):
            providers = graph.providers(node_id)
            customers = graph.customers(node_id)
            self.peers.append(tuple(sorted(providers & customers)))
            self.uphill.append(tuple(sorted(providers - customers)))
            self.downhill.append(tuple(sorted(customers - providers)))

    def _check_nodes(self, *node_ids):
        for node_id in node_ids:
            if not 0 <= node_id < self.graph.node_count:
                raise ValueError(f"Unknown node id {node_id}")

    def unrestricted_distance(self, source, target):
        """Returns the hop count of a shortest path in the undirected view, or None if disconnected."""
        self._check_nodes(source, target)
        try:
            return networkx.shortest_path_length(self.view.to_networkx(), source, target)
        except networkx.NetworkXNoPath:
            return None

    def no_valley_path(self, source, target):
        """Returns one shortest valley-free path as a list of node ids, or None if none exists.

        Searches (node, phase) states breadth first. Uphill hops need the ascending phase and a downhill hop switches
        to descending for the rest of the path. Symmetric hops keep the phase, or descend under PeerPolicy.DESCEND.
        """
        self._check_nodes(source, target)
        start = (source, self.Phase.ASCENDING)
        parents = {start: None}
        frontier = deque([start])
        reached = start if source == target else None

        while frontier and reached is None:
            node_id, phase = frontier.popleft()
            peer_phase = self.Phase.DESCENDING if self.peer_policy == self.PeerPolicy.DESCEND else phase
            moves = [(peer, peer_phase) for peer in self.peers[node_id]]
            moves += [(customer, self.Phase.DESCENDING) for customer in self.downhill[node_id]]
            if phase == self.Phase.ASCENDING:
                moves += [(provider, self.Phase.ASCENDING) for provider in self.uphill[node_id]]

            for state in moves:
                if state in parents:
                    continue
                parents[state] = (node_id, phase)
                if state[0] == target:
                    reached = state
                    break
                frontier.append(state)

        if reached is None:
            return None

        path = []
        state = reached
        while state is not None:
            path.append(state[0])
            state = parents[state]

        return path[::-1]

    def no_valley_distance(self, source, target):
        """Returns the hop count of a shortest valley-free path, or None if none exists."""
        path = self.no_valley_path(source, target)
        return None if path is None else len(path) - 1


def shortest_path_unrestricted(graph, source, target):
    """Hop count of a shortest path between two nodes ignoring edge direction, or None if disconnected."""
    return PolicyRouter(graph).unrestricted_distance(source, target)


def shortest_no_valley_path(graph, source, target, peer_policy=TopologyEnums.PeerPolicy.KEEP_PHASE):
    """Hop count of a shortest valley-free path between two nodes, or None if none exists."""
    return PolicyRouter(graph, peer_policy=peer_policy).no_valley_distance(source, target)


def no_valley_path(graph, source, target, peer_policy=TopologyEnums.PeerPolicy.KEEP_PHASE):
    """One shortest valley-free path between two nodes as a list of node ids, or None if none exists."""
    return PolicyRouter(graph, peer_policy=peer_policy).no_valley_path(source, target)


def is_valley_free(graph, path, peer_policy=TopologyEnums.PeerPolicy.KEEP_PHASE):
    """Returns True if consecutive nodes of path are adjacent and no uphill hop follows a downhill hop.

    Under PeerPolicy.DESCEND a symmetric hop counts as downhill.
    """
    descend_on_peer = TopologyEnums.PeerPolicy(peer_policy) == TopologyEnums.PeerPolicy.DESCEND
    descending = False
    for here, there in zip(path, path[1:]):
        if graph.is_symmetric(here, there):
            descending = descending or descend_on_peer
            continue
        if graph.has_edge(here, there):
            if descending:
                return False
        elif graph.has_edge(there, here):
            descending = True
        else:
            return False

    return True


class TierInflation:
    """Class object holding the path-inflation counters of one tier."""

    def __init__(self, tier, sampled=0, inflated=0, unreachable=0, non_inflated=0, disconnected=0):
        """The constructor for TierInflation class.

            Args:
                tier (TopologyEnums.Tier):
                    The tier the source nodes were drawn from.
                sampled (int):
                    Number of sampled pairs.
                inflated (int):
                    Pairs whose valley-free path is strictly longer than the unrestricted one.
                unreachable (int):
                    Pairs connected in the undirected view but with no valley-free path.
                non_inflated (int):
                    Pairs whose valley-free path is as short as the unrestricted one, or that are disconnected.
                disconnected (int):
                    Pairs with no path at all, already counted in non_inflated.
        """
        self.tier = TopologyEnums.Tier(tier)
        self.sampled = sampled
        self.inflated = inflated
        self.unreachable = unreachable
        self.non_inflated = non_inflated
        self.disconnected = disconnected

    @property
    def percentage(self):
        """Inflated pairs, unreachable ones included, as a percentage of the sampled pairs."""
        if self.sampled == 0:
            return 0.0
        return 100.0 * (self.inflated + self.unreachable) / self.sampled

    def to_dict(self):
        """Returns the counters as a JSON-ready dictionary."""
        return {
            'sampled': self.sampled,
            'inflated': self.inflated,
            'unreachable': self.unreachable,
            'non_inflated': self.non_inflated,
            'disconnected': self.disconnected,
            'percentage': self.percentage,
        }


class InflationReport:
    """Class object holding the path-inflation statistics of every measured tier."""

    pair_tier_convention = 'source'

    def __init__(self, tiers, sample_size, seed, peer_policy=TopologyEnums.PeerPolicy.KEEP_PHASE):
        self.tiers = tiers
        self.sample_size = sample_size
        self.seed = seed
        self.peer_policy = TopologyEnums.PeerPolicy(peer_policy)

    def __getitem__(self, tier):
        return self.tiers[TopologyEnums.Tier(tier)]

    def to_dict(self):
        """Returns the report as a JSON-ready dictionary."""
        return {
            'sample_size': self.sample_size,
            'seed': self.seed,
            'pair_tier_convention': self.pair_tier_convention,
            'peer_policy': self.peer_policy.value,
            'tiers': {tier.name.lower(): counters.to_dict() for tier, counters in self.tiers.items()},
        }


def path_inflation(graph, tiers=None, sample_size=1000, rng=None, router=None,
                   peer_policy=TopologyEnums.PeerPolicy.KEEP_PHASE):
    """Measures how often the no-valley policy lengthens shortest paths, per source tier.

    For each tier, sample_size sources are drawn uniformly from the tier (with replacement only when the tier is
    smaller than the sample) and each is paired with a uniform random target different from it.

        Args:
            graph (AsGraph):
                The measured graph.
            tiers (TierAssignment):
                Node tiers; computed with the default thresholds when omitted.
            sample_size (int):
                Number of pairs per tier, at least 1. Default is 1000.
            rng (int or numpy.random.Generator):
                Seed or generator for the pair sampling. Default seed is 0.
            router (PolicyRouter):
                Optional precomputed router for graph. Its own peer policy then applies.
            peer_policy (TopologyEnums.PeerPolicy):
                How valley-free paths cross symmetric arrangements. Default is KEEP_PHASE.

        Returns:
            InflationReport
    """
    if sample_size < 1:
        raise ValueError(f"Sample size must be at least 1, got {sample_size}")
    if graph.node_count < 2:
        raise ValueError("Path inflation needs at least two nodes")

    seed = None
    if rng is None:
        rng = 0
    if isinstance(rng, (int, numpy.integer)):
        seed = int(rng)
        rng = make_rng(seed)

    router = router if router is not None else PolicyRouter(graph, peer_policy=peer_policy)
    tiers = tiers if tiers is not None else classify_tiers(graph, view=router.view)
    results = {}

    for tier in MEASURED_TIERS:
        members = tiers.members(tier)
        counters = TierInflation(tier)
        results[tier] = counters
        if not members:
            logger.info('Tier %s is empty; no pairs sampled', tier.name)
            continue

        sources = rng.choice(members, size=sample_size, replace=len(members) < sample_size)
        for source in sources:
            source = int(source)
            target = source
            while target == source:
                target = int(rng.integers(graph.node_count))

            _count_pair(counters, router, source, target)

        logger.info('Tier %s: %.1f%% of %s pairs inflated', tier.name, counters.percentage, counters.sampled)

    return InflationReport(results, sample_size, seed, router.peer_policy)


def _count_pair(counters, router, source, target):
    counters.sampled += 1
    unrestricted = router.unrestricted_distance(source, target)
    if unrestricted is None:
        counters.disconnected += 1
        counters.non_inflated += 1
        return

    no_valley = router.no_valley_distance(source, target)
    if no_valley is None:
        counters.unreachable += 1
    elif no_valley > unrestricted:
        counters.inflated += 1
    else:
        counters.non_inflated += 1
