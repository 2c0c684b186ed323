"""Implements a class containing the enums relevant to AS topology generation and analysis."""
from enum import Enum, IntEnum


class TopologyEnums:
    """Class containing the enums relevant to AS topology generation and analysis."""

    class ModelFamily(Enum):
        """Enumeration of the growth processes that can produce a graph."""
        BA = 'ba'
        INED = 'ined'
        DINED = 'dined'
        GEODINED = 'geodined'

    class WeightKind(IntEnum):
        """Enumeration of the degree quantity used as a preferential sampling weight."""
        IN_DEGREE = 0
        OUT_DEGREE = 1

    class DegreeKind(Enum):
        """Enumeration of the degree measured by a CCDF."""
        UNDIRECTED = 'undirected'
        IN = 'in'
        OUT = 'out'
        LOCAL = 'local'

    class EdgeScope(Enum):
        """Enumeration of how the endpoints of a generated edge were restricted."""
        FIRST = 'first'
        FIRST_FALLBACK = 'first-fallback'
        LOCAL = 'local'
        GLOBAL = 'global'
        LOCAL_FALLBACK = 'local-fallback'

    class Tier(IntEnum):
        """Enumeration of the degree based node tiers."""
        TIER1 = 1
        TIER2 = 2
        TIER3 = 3
        UNTIERED = 0

    class Phase(IntEnum):
        """Enumeration of the valley-free path phases."""
        ASCENDING = 0
        DESCENDING = 1

    class PeerPolicy(Enum):
        """Enumeration of how a valley-free path may cross a symmetric arrangement."""
        KEEP_PHASE = 'keep-phase'
        DESCEND = 'descend'

    class ReportSection(Enum):
        """Enumeration of the sections an analysis report can hold."""
        LEAVES = 'leaves'
        SYMMETRIC = 'symmetric'
        CCDF = 'ccdf'
        CORES = 'cores'
        INFLATION = 'inflation'
