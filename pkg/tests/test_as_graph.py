import unittest

import numpy
from hypothesis import given, settings, strategies as st
from scipy.stats import chisquare

from tests.utils import TestWithSmallGraphs, build_graph
from astopo import AsGraph, AsGraphException, NodeRecord, TopologyEnums
from astopo.generators import make_rng


class TestNodes(unittest.TestCase):
    def test_first_node(self):
        graph = AsGraph()
        self.assertEqual(graph.add_node(0), 0)
        self.assertEqual(graph.node(0), NodeRecord(0, 0, 0, 0))

    def test_dense_ids(self):
        graph = AsGraph(region_count=4)
        for _ in range(5):
            graph.add_node(0)
        self.assertEqual(graph.add_node(3), 5)
        self.assertEqual(graph.region(5), 3)

    def test_many_nodes(self):
        graph = AsGraph()
        ids = [graph.add_node() for _ in range(15000)]
        self.assertEqual(ids, list(range(15000)))
        self.assertEqual(len(graph), 15000)

    def test_region_out_of_range(self):
        graph = AsGraph(region_count=2)
        with self.assertRaises(AsGraphException):
            graph.add_node(2)

    def test_region_names_must_match(self):
        with self.assertRaises(AsGraphException):
            AsGraph(region_count=2, region_names=['only one'])


class TestEdges(TestWithSmallGraphs):
    def test_duplicate_edge(self):
        graph = build_graph(2, [])
        self.assertTrue(graph.add_edge(0, 1))
        self.assertFalse(graph.add_edge(0, 1))
        self.assertEqual(graph.edge_count, 1)

    def test_anti_parallel_edges(self):
        graph = build_graph(2, [])
        self.assertTrue(graph.add_edge(0, 1))
        self.assertTrue(graph.add_edge(1, 0))
        self.assertEqual(graph.symmetric_count(), 1)
        self.assertTrue(graph.is_symmetric(1, 0))

    def test_self_loop(self):
        graph = build_graph(3, [])
        with self.assertRaises(AsGraphException):
            graph.add_edge(2, 2)

    def test_unknown_node(self):
        graph = build_graph(3, [])
        with self.assertRaises(AsGraphException):
            graph.add_edge(0, 3)

    def test_relationships(self):
        self.assertEqual(self.v_shape.providers(0), frozenset({1, 2}))
        self.assertEqual(self.v_shape.customers(1), frozenset({0}))
        self.assertEqual(self.v_shape.out_degree(0), 2)
        self.assertEqual(self.v_shape.in_degree(2), 1)
        self.assertEqual(self.v_shape.edges(), [(0, 1), (0, 2)])

    def test_degree_sums(self):
        self.assertEqual(self.one_peer.in_degree_sum, 3)
        self.assertEqual(self.one_peer.out_degree_sum, 3)

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=80))
    def test_degree_caches_match_edges(self, pairs):
        graph = build_graph(10, [])
        for customer, provider in pairs:
            if customer != provider:
                graph.add_edge(customer, provider)

        in_degrees, out_degrees = graph.recompute_degrees()
        self.assertEqual(list(graph.in_degrees()), in_degrees)
        self.assertEqual(list(graph.out_degrees()), out_degrees)
        self.assertEqual(graph.in_degree_sum, graph.edge_count)
        self.assertEqual(graph.out_degree_sum, graph.edge_count)
        self.assertEqual(graph.undirected_view().edge_count, graph.edge_count - graph.symmetric_count())

    def test_degree_arrays_are_read_only(self):
        with self.assertRaises(ValueError):
            self.v_shape.out_degrees()[0] = 7


class TestPreferentialSampling(unittest.TestCase):
    def setUp(self):
        # Out-degrees (3, 1, 0, 0, 0)
        self.graph = build_graph(5, [(0, 1), (0, 2), (0, 3), (1, 0)])
        self.rng = make_rng(11)

    def test_frequency_follows_weights(self):
        draws = 100000
        counts = numpy.bincount([self.graph.sample_preferential(TopologyEnums.WeightKind.OUT_DEGREE, self.rng)
                                 for _ in range(draws)], minlength=5)

        self.assertAlmostEqual(counts[0] / draws, 0.75, delta=0.01)
        self.assertEqual(counts[2:].sum(), 0)
        self.assertGreater(chisquare(counts[:2], [0.75 * draws, 0.25 * draws]).pvalue, 1e-4)

    def test_zero_weight_sum(self):
        graph = build_graph(3, [])
        self.assertIsNone(graph.sample_preferential(TopologyEnums.WeightKind.IN_DEGREE, self.rng))

    def test_region_filter(self):
        graph = build_graph([0, 0, 1, 1], [(0, 1), (2, 0), (1, 0)])
        for _ in range(100):
            self.assertEqual(graph.sample_preferential(TopologyEnums.WeightKind.OUT_DEGREE, self.rng, region=1), 2)

    def test_empty_graph(self):
        with self.assertRaises(AsGraphException):
            AsGraph().sample_preferential(TopologyEnums.WeightKind.IN_DEGREE, self.rng)

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(st.lists(st.integers(0, 2), min_size=2, max_size=20), st.data())
    def test_frequency_follows_weights_on_varied_graphs(self, regions, data):
        last = len(regions) - 1
        pairs = data.draw(st.lists(st.tuples(st.integers(0, last), st.integers(0, last)), max_size=40))
        graph = build_graph(regions, {pair for pair in pairs if pair[0] != pair[1]})
        weight_kind = data.draw(st.sampled_from(list(TopologyEnums.WeightKind)))
        region = data.draw(st.sampled_from([None, 0, 1, 2]))

        degrees = graph.in_degrees() if weight_kind == TopologyEnums.WeightKind.IN_DEGREE else graph.out_degrees()
        weights = numpy.array(degrees, dtype=float)
        if region is not None:
            weights[numpy.asarray(graph.regions()) != region] = 0
        if weights.sum() == 0:
            self.assertIsNone(graph.sample_preferential(weight_kind, self.rng, region))
            return

        draws = 5000
        counts = numpy.bincount([graph.sample_preferential(weight_kind, self.rng, region) for _ in range(draws)],
                                minlength=graph.node_count)
        eligible = weights > 0
        self.assertEqual(counts[~eligible].sum(), 0)
        if eligible.sum() > 1:
            expected = draws * weights[eligible] / weights.sum()
            self.assertGreater(chisquare(counts[eligible], expected).pvalue, 1e-6)


class TestUndirectedView(TestWithSmallGraphs):
    def test_anti_parallel_collapse(self):
        view = build_graph(2, [(0, 1), (1, 0)]).undirected_view()
        self.assertEqual(view.edges, {(0, 1)})

    def test_chain(self):
        view = build_graph(3, [(0, 1), (1, 2)]).undirected_view()
        self.assertEqual(view.edge_count, 2)
        self.assertEqual(list(view.degrees()), [1, 2, 1])

    def test_empty(self):
        view = AsGraph().undirected_view()
        self.assertEqual(view.node_count, 0)
        self.assertEqual(view.edge_count, 0)

    def test_local_degree(self):
        view = build_graph([0, 0, 1], [(0, 1), (0, 2)]).undirected_view()
        self.assertEqual(view.local_degree(0), 1)
        self.assertEqual(list(view.local_degrees()), [1, 1, 0])

    def test_density(self):
        view = self.v_shape_with_peer.undirected_view()
        self.assertEqual(view.induced_edge_count([0, 1, 2]), 3)
        self.assertAlmostEqual(view.density([0, 1, 2]), 1.0)

    def test_networkx_export(self):
        exported = self.cycle.undirected_view().to_networkx()
        self.assertEqual(exported.number_of_nodes(), 5)
        self.assertEqual(exported.number_of_edges(), 5)
