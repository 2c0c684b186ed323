import itertools
import unittest

import numpy
from hypothesis import given, settings, strategies as st

from tests.utils import TestWithSmallGraphs, TestWithGeneratedGraph, build_graph, symmetric_edges, clique_pairs, \
    test_graph_log
from astopo import AnalysisException, CcdfCurve, ModelParams, TopologyEnums, average_ccdf, ccdf, count_leaves, \
    find_dense_cores, fit_power_law, generate_ba, symmetric_fraction
from astopo.analysis import summarize
from astopo.generators import make_rng


class TestCcdf(TestWithSmallGraphs):
    def test_three_node_path(self):
        curve = ccdf(self.path)
        self.assertEqual(curve.degrees.tolist(), [1.0, 2.0])
        self.assertAlmostEqual(curve.fractions[0], 1.0)
        self.assertAlmostEqual(curve.fractions[1], 1 / 3)

    def test_isolated_nodes_lower_the_first_point(self):
        graph = build_graph(4, [(0, 1)])
        self.assertAlmostEqual(ccdf(graph).value_at(1), 0.5)

    def test_in_degree(self):
        curve = ccdf(self.star, TopologyEnums.DegreeKind.IN)
        self.assertEqual(curve.points, [(4, 0.2)])

    def test_regional_scope(self):
        graph = build_graph([0, 0, 1, 1], [(0, 1), (2, 1), (3, 1)])
        regional = ccdf(graph, scope=1)
        joint = ccdf(graph, scope=1, joint=True)
        self.assertEqual(regional.points, [(1, 1.0)])
        self.assertEqual(joint.points, [(1, 0.5)])

    def test_empty_scope(self):
        graph = build_graph([0, 0, 2], [(0, 1)])
        with self.assertRaises(AnalysisException):
            ccdf(graph, scope=1)

    def test_average(self):
        first = CcdfCurve([(1, 1.0), (2, 0.5)])
        second = CcdfCurve([(1, 1.0), (3, 0.2)])
        averaged = average_ccdf([first, second])
        self.assertEqual(averaged.degrees.tolist(), [1.0, 2.0, 3.0])
        for fraction, expected in zip(averaged.fractions, [1.0, 0.35, 0.1]):
            self.assertAlmostEqual(fraction, expected)


class TestPowerLawFit(unittest.TestCase):
    def test_exact_power_law(self):
        curve = CcdfCurve([(k, k ** -1.5) for k in range(1, 101)], node_count=10 ** 6)
        fit = fit_power_law(curve)
        self.assertAlmostEqual(fit.eta, 1.5, places=6)
        self.assertAlmostEqual(fit.gamma, 2.5, places=6)
        self.assertEqual(fit.k_max, 100)
        self.assertAlmostEqual(fit.residual, 1.0, places=9)

    def test_default_cutoff_drops_the_sparse_tail(self):
        curve = CcdfCurve([(k, k ** -1.5) for k in range(1, 101)], node_count=1000)
        self.assertEqual(fit_power_law(curve).k_max, 21)

    def test_too_few_points(self):
        curve = CcdfCurve([(1, 1.0), (2, 0.4), (3, 0.2)], node_count=100)
        with self.assertRaises(AnalysisException):
            fit_power_law(curve)


class TestLeavesAndSymmetry(TestWithSmallGraphs):
    def test_cycle_has_no_leaves(self):
        self.assertEqual(count_leaves(self.cycle), (0, 0.0))

    def test_star_leaves(self):
        count, fraction = count_leaves(self.star)
        self.assertEqual(count, 4)
        self.assertAlmostEqual(fraction, 0.8)

    def test_undirected_leaves(self):
        graph = build_graph(3, symmetric_edges([(0, 1), (1, 2)]), directed=False)
        self.assertEqual(count_leaves(graph)[0], 2)

    def test_symmetric_fraction(self):
        self.assertAlmostEqual(symmetric_fraction(self.one_peer), 0.5)

    def test_symmetric_fraction_without_edges(self):
        with self.assertRaises(AnalysisException):
            symmetric_fraction(build_graph(2, []))


class TestDenseCores(unittest.TestCase):
    def test_clique_with_pendant_path(self):
        edges = symmetric_edges(clique_pairs(range(8)) + [(7, 8), (8, 9)])
        report = find_dense_cores(build_graph(10, edges))

        self.assertEqual(len(report), 1)
        self.assertEqual(report.primary.members, list(range(8)))
        self.assertAlmostEqual(report.primary.density, 1.0)

    def test_two_bridged_cliques(self):
        edges = symmetric_edges(clique_pairs(range(7)) + clique_pairs(range(7, 14)) + [(6, 7)])
        report = find_dense_cores(build_graph(14, edges), density_threshold=0.7, min_size=7)

        self.assertEqual([core.size for core in report.cores], [7, 7])
        self.assertEqual(report.cores[0].members, list(range(7)))
        self.assertEqual(report.cores[1].members, list(range(7, 14)))

    def test_regional_flag(self):
        regions = [0] * 7 + [1] * 7
        edges = symmetric_edges(clique_pairs(range(7)) + clique_pairs(range(7, 14)))
        report = find_dense_cores(build_graph(regions, edges))

        self.assertTrue(all(core.is_regional for core in report.cores))
        self.assertEqual(report.regional_share(), 1.0)

    def test_sparse_graph_has_no_core(self):
        report = find_dense_cores(build_graph(10, [(node_id, node_id + 1) for node_id in range(9)]))
        self.assertIsNone(report.primary)
        self.assertIsNone(report.regional_share())

    def test_ba_has_no_large_core(self):
        graph = generate_ba(ModelParams(n=2000, m=2, seed=6))
        self.assertEqual(len(find_dense_cores(graph, 0.70, 7)), 0)

    def test_bad_arguments(self):
        graph = build_graph(3, [])
        with self.assertRaises(ValueError):
            find_dense_cores(graph, density_threshold=0)
        with self.assertRaises(ValueError):
            find_dense_cores(graph, min_size=1)

    def test_regional_pass_finds_a_clique_peeled_away_early(self):
        # K7 in region 0 has lower degrees than the K8,8 in region 1, so global peeling strips it first
        regions = [0] * 7 + [1] * 16
        bipartite = [(first, second) for first in range(7, 15) for second in range(15, 23)]
        graph = build_graph(regions, symmetric_edges(clique_pairs(range(7)) + bipartite))

        self.assertEqual(len(find_dense_cores(graph, 0.7, 7, regional_pass=False)), 0)

        report = find_dense_cores(graph, 0.7, 7)
        self.assertEqual(len(report), 1)
        self.assertEqual(report.primary.members, list(range(7)))
        self.assertEqual(report.primary.region, 0)

    def test_documented_greedy_gap(self):
        # A K4 beside a K4,4 in one region: peeling never reaches a stage of density 0.9, the K4 exists
        graph = build_graph(12, symmetric_edges(clique_pairs(range(4)) +
                                                [(first, second) for first in range(4, 8) for second in range(8, 12)]))
        self.assertEqual(largest_dense_subset(graph.undirected_view(), 0.9, 4), 4)
        self.assertEqual(len(find_dense_cores(graph, 0.9, 4)), 0)


def largest_dense_subset(view, threshold, min_size):
    """Size of the largest node subset meeting the threshold, by exhaustive enumeration, or 0."""
    nodes = range(view.node_count)
    for size in range(view.node_count, min_size - 1, -1):
        if any(view.density(subset) >= threshold for subset in itertools.combinations(nodes, size)):
            return size
    return 0


@st.composite
def random_graphs(draw, max_nodes):
    node_count = draw(st.integers(1, max_nodes))
    pairs = draw(st.lists(st.tuples(st.integers(0, node_count - 1), st.integers(0, node_count - 1)), max_size=60))
    return build_graph(node_count, {pair for pair in pairs if pair[0] != pair[1]})


class TestProperties(unittest.TestCase):
    @settings(max_examples=100, deadline=None)
    @given(random_graphs(max_nodes=30))
    def test_leaves_match_a_degree_scan(self, graph):
        expected = sum(1 for node in graph.nodes if node.in_degree == 0 and node.out_degree == 1)
        self.assertEqual(count_leaves(graph)[0], expected)

    @settings(max_examples=100, deadline=None)
    @given(random_graphs(max_nodes=12), st.sampled_from([0.5, 0.7, 0.9]), st.integers(2, 5))
    def test_reported_cores_meet_the_threshold(self, graph, threshold, min_size):
        view = graph.undirected_view()
        seen = set()
        for core in find_dense_cores(view, threshold, min_size).cores:
            self.assertGreaterEqual(core.size, min_size)
            self.assertGreaterEqual(view.density(core.members), threshold)
            self.assertFalse(seen & set(core.members))
            seen.update(core.members)

    def test_peeling_against_exhaustive_search(self):
        rng = make_rng(12)
        gaps = []
        for instance in range(200):
            node_count = int(rng.integers(5, 13))
            edge_probability = rng.uniform(0.3, 0.9)
            pairs = [pair for pair in clique_pairs(range(node_count)) if rng.random() < edge_probability]
            view = build_graph(node_count, pairs).undirected_view()

            best = largest_dense_subset(view, 0.7, 4)
            report = find_dense_cores(view, 0.7, 4)
            found = report.primary.size if report.primary else 0

            self.assertLessEqual(found, best)
            if found < best:
                gaps.append((instance, node_count, found, best))

        test_graph_log.info('Greedy gaps against exhaustive search: %s', gaps)
        self.assertLessEqual(len(gaps), 100)


class TestGeneratedGraphAnalysis(TestWithGeneratedGraph):
    def test_reported_cores_are_dense_and_disjoint(self):
        view = self.graph.undirected_view()
        report = find_dense_cores(view)
        seen = set()
        for core in report.cores:
            self.assertGreaterEqual(core.size, 7)
            self.assertGreaterEqual(view.density(core.members), 0.70)
            self.assertFalse(seen & set(core.members))
            seen.update(core.members)

    def test_ccdf_starts_at_one(self):
        self.assertAlmostEqual(ccdf(self.graph).value_at(1), 1.0)

    def test_ccdf_is_non_increasing(self):
        fractions = ccdf(self.graph).fractions
        self.assertTrue(numpy.all(numpy.diff(fractions) <= 0))

    def test_leaf_fraction_near_prediction(self):
        self.assertTrue(0.40 <= count_leaves(self.graph)[1] <= 0.56)


class TestSummarize(unittest.TestCase):
    def test_summary(self):
        summary = summarize([1.0, 2.0, 3.0, None])
        self.assertEqual(summary['count'], 3)
        self.assertAlmostEqual(summary['mean'], 2.0)
        self.assertAlmostEqual(summary['stddev'], 1.0)

    def test_empty(self):
        self.assertEqual(summarize([None]), {'mean': None, 'stddev': None, 'count': 0})
