"""Synthetic AS-level Internet topology generation and analysis"""
from .topology_enums import TopologyEnums
from .as_graph import AsGraph, AsGraphException, NodeRecord, UndirectedView
from .generators import GeneratorException, ModelParams, ModelParamsException, GenerationTrace, generate, \
    generate_ba, generate_ined, dined_step, geodined_step
from .theory import TheoryException, TheoryConstants, Prediction, constants, degree_trajectory, \
    integrate_degree_trajectory, expected_max_degrees, leaf_fraction, region_degree_sums, predict
from .analysis import AnalysisException, CcdfCurve, PowerLawFit, DenseCore, CoreReport, ccdf, average_ccdf, \
    fit_power_law, count_leaves, symmetric_fraction, find_dense_cores
from .routing import TierAssignment, InflationReport, PolicyRouter, classify_tiers, shortest_path_unrestricted, \
    shortest_no_valley_path, no_valley_path, is_valley_free, path_inflation
from .edge_list import EdgeListException, RegionFileException, EdgeListFile, RegionTable, read_edge_list, \
    write_edge_list, read_region_file
