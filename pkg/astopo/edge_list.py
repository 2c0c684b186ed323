"""Reads and writes the native edge-list format and the region distribution file.

An edge list is plain text: `# key=value` header lines, then one `N <id> <region>` line per node and one
`E <customer> <provider>` line per directed edge. A symmetric arrangement appears as its two directed lines.
"""
import csv
import logging
import os
from datetime import datetime, timezone

import iso8601

from .as_graph import AsGraph, AsGraphException
from .generators import ModelParams, ModelParamsException
from .requires_format_version import requires_format_version, FormatVersionException

logger = logging.getLogger(__name__)

GENERATOR_VERSION = '1.0.0'

DEFAULT_REGION_FILE = os.path.join(os.path.dirname(__file__), 'data', 'regions_default.csv')


class EdgeListException(Exception):
    """Names a new type of exception specific to reading and writing edge-list files."""


class RegionFileException(Exception):
    """Names a new type of exception specific to region distribution files."""


class EdgeListFile:
    """Class object holding a parsed edge list: the graph plus its header metadata."""

    def __init__(self, graph, header, params=None, path=None):
        """The constructor for EdgeListFile class.

            Args:
                graph (AsGraph):
                    The graph described by the file.
                header (dict):
                    Every `key=value` header pair, as strings.
                params (ModelParams):
                    Generator parameters, when the header names a model.
                path (str):
                    File the graph was read from or written to.
        """
        self.graph = graph
        self.header = dict(header)
        self.params = params
        self.path = path

    @property
    def seed(self):
        """Seed of the run that produced the graph, or None."""
        return self.params.seed if self.params is not None else None

    @property
    def generator_version(self):
        """Version string of the writer, or None for hand-written files."""
        return self.header.get('generator-version')

    @property
    def created(self):
        """Creation time as an aware datetime, or None if the header has no timestamp."""
        if 'created' not in self.header:
            return None
        try:
            return iso8601.parse_date(self.header['created'])
        except iso8601.ParseError as ex:
            raise EdgeListException(f"{self.path}: malformed created timestamp: {ex}") from ex


def write_edge_list(graph, path, params=None, created=None):
    """Writes a graph to an edge-list file.

        Args:
            graph (AsGraph):
                The graph to write.
            path (str):
                Destination file name.
            params (ModelParams):
                Optional generator parameters echoed in the header.
            created (datetime):
                Timestamp written to the header. Default is now, in UTC.

        Returns:
            EdgeListFile: The written graph and header.
    """
    header = params.to_header() if params is not None else {}
    header['generator-version'] = GENERATOR_VERSION
    created = created if created is not None else datetime.now(timezone.utc)
    header['created'] = created.isoformat(timespec='seconds')

    lines = [f'# {key}={value}' for key, value in header.items()]
    lines += [f'N {node_id} {region}' for node_id, region in enumerate(graph.regions())]
    lines += [f'E {customer} {provider}' for customer, provider in graph.edges()]

    try:
        with open(path, 'w', encoding='utf8') as edge_file:
            edge_file.write('\n'.join(lines) + '\n')
    except OSError as ex:
        raise EdgeListException(f"Cannot write {path}: {ex.strerror}") from ex

    logger.info('Wrote %s nodes and %s edges to %s', graph.node_count, graph.edge_count, path)

    return EdgeListFile(graph, header, params, path)


def read_edge_list(path):
    """Reads an edge-list file.

        Args:
            path (str):
                File to read.

        Returns:
            EdgeListFile
    """
    return EdgeListReader(path).read()


class EdgeListReader:
    """Parser for one edge-list file. Errors name the file and the 1-based line number."""

    def __init__(self, path):
        self.path = path
        self.header = {}
        self.format_version = GENERATOR_VERSION
        self._node_lines = []
        self._edge_lines = []

    def read(self):
        """Parses the file and returns an EdgeListFile."""
        try:
            with open(self.path, 'r', encoding='utf8') as edge_file:
                lines = edge_file.read().splitlines()
        except OSError as ex:
            raise EdgeListException(f"Cannot read {self.path}: {ex.strerror}") from ex
        except UnicodeDecodeError as ex:
            raise EdgeListException(f"{self.path}: not UTF-8 text (byte {ex.start})") from ex

        for line_number, line in enumerate(lines, start=1):
            self._parse_line(line_number, line.strip())

        self.format_version = self.header.get('generator-version', GENERATOR_VERSION)
        try:
            return self._build()
        except FormatVersionException as ex:
            raise EdgeListException(f"{self.path}: {ex}") from ex

    def _fail(self, line_number, message):
        raise EdgeListException(f"{self.path}, line {line_number}: {message}")

    def _parse_line(self, line_number, line):
        if not line:
            return

        if line.startswith('#'):
            key, separator, value = line[1:].strip().partition('=')
            if separator:
                self.header[key.strip()] = value.strip()
            return

        fields = line.split()
        if fields[0] not in ('N', 'E') or len(fields) != 3:
            self._fail(line_number, f"expected 'N <id> <region>' or 'E <customer> <provider>', got {line!r}")

        try:
            first, second = int(fields[1]), int(fields[2])
        except ValueError:
            self._fail(line_number, f"non-integer field in {line!r}")

        if fields[0] == 'N':
            self._node_lines.append((line_number, first, second))
        else:
            self._edge_lines.append((line_number, first, second))

    @requires_format_version('1.0.0')
    def _build(self):
        params = None
        if 'model' in self.header:
            try:
                params = ModelParams.from_header(self.header)
            except ModelParamsException as ex:
                raise EdgeListException(f"{self.path}: {ex}") from ex

        if params is not None:
            region_count = params.region_count
            region_names = params.region_names
            directed = params.directed
        else:
            region_count = 1 + max((region for _, _, region in self._node_lines), default=0)
            region_names = None
            directed = True

        graph = AsGraph(region_count, directed, region_names)

        for line_number, node_id, region in self._node_lines:
            if node_id != graph.node_count:
                self._fail(line_number, f"node ids must be dense and in order; expected {graph.node_count}, "
                                        f"got {node_id}")
            try:
                graph.add_node(region)
            except AsGraphException as ex:
                self._fail(line_number, str(ex))

        for line_number, customer, provider in self._edge_lines:
            try:
                inserted = graph.add_edge(customer, provider)
            except AsGraphException as ex:
                self._fail(line_number, str(ex))
            if not inserted:
                self._fail(line_number, f"duplicate edge {customer} -> {provider}")

        logger.info('Read %s nodes and %s edges from %s', graph.node_count, graph.edge_count, self.path)

        return EdgeListFile(graph, self.header, params, self.path)


class RegionTable:
    """Class object holding named region weights, normalized to sum to 1."""

    def __init__(self, names, weights):
        """The constructor for RegionTable class.

            Args:
                names (list[str]):
                    Region names in file order.
                weights (list[float]):
                    Non-negative weights with a positive sum, in any unit.
        """
        total = float(sum(weights))
        self.names = list(names)
        self.weights = [weight / total for weight in weights]

    def __len__(self):
        return len(self.names)

    def as_percentages(self):
        """Returns (name, percent) pairs."""
        return [(name, 100.0 * weight) for name, weight in zip(self.names, self.weights)]


def read_region_file(path=DEFAULT_REGION_FILE):
    """Reads a region distribution file of `<region_name>,<weight_percent>` lines.

    Weights need not sum to 100; they are normalized. Blank lines and `#` comments are ignored.

        Args:
            path (str):
                File to read. Default is the bundled table of the default ensemble.

        Returns:
            RegionTable
    """
    names = []
    weights = []
    try:
        with open(path, 'r', encoding='utf8', newline='') as region_file:
            for line_number, row in enumerate(csv.reader(region_file), start=1):
                if not row or not ''.join(row).strip() or row[0].lstrip().startswith('#'):
                    continue
                if len(row) != 2:
                    raise RegionFileException(f"{path}, line {line_number}: expected '<name>,<weight_percent>'")

                name = row[0].strip()
                try:
                    weight = float(row[1])
                except ValueError as ex:
                    raise RegionFileException(f"{path}, line {line_number}: weight {row[1]!r} is not a number") \
                        from ex
                if weight < 0:
                    raise RegionFileException(f"{path}, line {line_number}: negative weight {weight}")
                if name in names:
                    raise RegionFileException(f"{path}, line {line_number}: duplicate region {name!r}")

                names.append(name)
                weights.append(weight)
    except OSError as ex:
        raise RegionFileException(f"Cannot read {path}: {ex.strerror}") from ex
    except UnicodeDecodeError as ex:
        raise RegionFileException(f"{path}: not UTF-8 text (byte {ex.start})") from ex

    if sum(weights) <= 0:
        raise RegionFileException(f"{path}: at least one region needs a positive weight")

    return RegionTable(names, weights)
