import logging
import os
import tempfile

import unittest
from astopo import AsGraph, ModelParams, generate

test_graph_log = logging.getLogger('test_graphs')


def build_graph(regions, edges, directed=True):
    """Builds a graph from a node region list (or a node count) and (customer, provider) pairs."""
    if isinstance(regions, int):
        regions = [0] * regions
    graph = AsGraph(max(regions, default=0) + 1, directed)
    for region in regions:
        graph.add_node(region)
    for customer, provider in edges:
        graph.add_edge(customer, provider)

    return graph


def symmetric_edges(pairs):
    """Expands unordered pairs into both directed edges."""
    return [edge for first, second in pairs for edge in ((first, second), (second, first))]


def clique_pairs(nodes):
    nodes = list(nodes)
    return [(first, second) for index, first in enumerate(nodes) for second in nodes[index + 1:]]


class TestWithSmallGraphs(unittest.TestCase):
    def setUp(self):
        # C=0 buys transit from P1=1 and P2=2
        self.v_shape = build_graph(3, [(0, 1), (0, 2)])
        self.v_shape_with_peer = build_graph(3, [(0, 1), (0, 2), (1, 2), (2, 1)])
        self.one_peer = build_graph(3, [(0, 1), (1, 0), (1, 2)])
        self.path = build_graph(3, [(0, 1), (2, 1)])
        self.cycle = build_graph(5, [(node_id, (node_id + 1) % 5) for node_id in range(5)])
        self.star = build_graph(5, [(spoke, 0) for spoke in range(1, 5)])


class TestWithGeneratedGraph(unittest.TestCase):
    params = ModelParams(model='geodined', n=2000, m=2.11, p=0.07, alpha=0.5, region_weights=[70, 20, 10],
                         region_names=['North', 'South', 'East'], seed=3)

    @classmethod
    def setUpClass(cls):
        cls.graph, cls.trace = generate(cls.params)
        test_graph_log.info('Generated test graph with %s edges', cls.graph.edge_count)


class TestWithScratchDirectory(unittest.TestCase):
    def setUp(self):
        scratch = tempfile.TemporaryDirectory()
        self.addCleanup(scratch.cleanup)
        self.scratch = scratch.name

    def scratch_path(self, name):
        return os.path.join(self.scratch, name)

    def write_text(self, name, text):
        path = self.scratch_path(name)
        with open(path, 'w', encoding='utf8') as text_file:
            text_file.write(text)
        return path

    def write_bytes(self, name, data):
        path = self.scratch_path(name)
        with open(path, 'wb') as binary_file:
            binary_file.write(data)
        return path
