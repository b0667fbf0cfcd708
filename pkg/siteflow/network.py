"""
SuperSource -> sites -> loads -> SuperLoad networks of the fine model.

Every MW and million-USD quantity is an integer count of 0.01 units
(centi-MW, 10k-USD): max flows are integral and budget checks exact.

Node numbering: SS = 0, SL = 1, site i = 2 + i, load j = 2 + n + j.
Arc order: SS -> S_i (n arcs), S_i -> L_j row major (n * m arcs),
L_j -> SL (m arcs).  Zero capacity arcs are kept.
"""
import logging

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Optional, Sequence, Tuple

from . exceptions import InvalidDecision, InvalidInstance


logger = logging.getLogger(__name__)

SUPER_SOURCE = 0
SUPER_LOAD = 1


@dataclass(frozen=True)
class FineSite:
    id: int
    build_cost: int
    capacity_by_period: Tuple[int, ...]
    max_capacity: Optional[int] = None

    @property
    def maximum(self):
        """ SCap_i, maximum generation capacity of the site """
        if self.max_capacity is not None:
            return self.max_capacity
        return max(self.capacity_by_period, default=0)


@dataclass(frozen=True)
class Load:
    id: int
    demand_by_period: Tuple[int, ...]


@dataclass(frozen=True)
class Line:
    build_cost: int
    capacity: int


@dataclass(frozen=True)
class FineInstance:
    sites: Tuple[FineSite, ...]
    loads: Tuple[Load, ...]
    lines: Tuple[Tuple[Line, ...], ...]
    budget: int
    num_periods: int
    description: str = field(default='', compare=False)

    def __post_init__(self):
        if self.num_periods < 1:
            raise InvalidInstance('at least one period is needed')
        if self.budget < 0:
            raise InvalidInstance('budget must be nonnegative')
        if [s.id for s in self.sites] != list(range(len(self.sites))):
            raise InvalidInstance('site ids must be unique and contiguous from 0')
        if [ld.id for ld in self.loads] != list(range(len(self.loads))):
            raise InvalidInstance('load ids must be unique and contiguous from 0')
        for site in self.sites:
            if len(site.capacity_by_period) != self.num_periods:
                raise InvalidInstance('site {} has {} capacities, expected {}'.format(
                    site.id, len(site.capacity_by_period), self.num_periods))
            values = (site.build_cost,) + tuple(site.capacity_by_period)
            if site.max_capacity is not None:
                values += (site.max_capacity,)
                if site.max_capacity < max(site.capacity_by_period):
                    raise InvalidInstance('site {} generates above its maximum '
                                          'capacity'.format(site.id))
            if min(values) < 0:
                raise InvalidInstance('site {} has negative values'.format(site.id))
        for load in self.loads:
            if len(load.demand_by_period) != self.num_periods:
                raise InvalidInstance('load {} has {} demands, expected {}'.format(
                    load.id, len(load.demand_by_period), self.num_periods))
            if min(load.demand_by_period) < 0:
                raise InvalidInstance('load {} has negative demand'.format(load.id))
        if len(self.lines) != len(self.sites) or \
           any(len(row) != len(self.loads) for row in self.lines):
            raise InvalidInstance('lines must be a {} x {} matrix'.format(
                len(self.sites), len(self.loads)))
        for i, row in enumerate(self.lines):
            for j, line in enumerate(row):
                if line.build_cost < 0 or line.capacity < 0:
                    raise InvalidInstance('line {}->{} has negative values'.format(i, j))

    @property
    def num_sites(self):
        return len(self.sites)

    @property
    def num_loads(self):
        return len(self.loads)

    @cached_property
    def total_cost(self):
        """ cost of building every site and every line """
        return sum(s.build_cost for s in self.sites) + \
            sum(line.build_cost for row in self.lines for line in row)

    @cached_property
    def total_demand(self):
        """ demand summed over loads and periods """
        return sum(sum(ld.demand_by_period) for ld in self.loads)


@dataclass(frozen=True)
class BuildDecision:
    x: Tuple[bool, ...]
    y: Tuple[Tuple[bool, ...], ...]

    @classmethod
    def nothing(cls, n, m):
        return cls((False,) * n, ((False,) * m,) * n)

    @classmethod
    def everything(cls, n, m):
        return cls((True,) * n, ((True,) * m,) * n)

    def is_coupled(self):
        """ y_ij <= x_i """
        return all(built or not any(row) for built, row in zip(self.x, self.y))

    def check(self, instance: FineInstance):
        n, m = instance.num_sites, instance.num_loads
        if len(self.x) != n or len(self.y) != n or any(len(row) != m for row in self.y):
            raise InvalidDecision('invalid decision: expected {} sites and {} x {} '
                                  'lines'.format(n, n, m))
        if not self.is_coupled():
            raise InvalidDecision('invalid decision: a line is built from an unbuilt site')

    def cost(self, instance: FineInstance):
        return sum(site.build_cost for site, built in zip(instance.sites, self.x) if built) + \
            sum(line.build_cost
                for line_row, built_row in zip(instance.lines, self.y)
                for line, built in zip(line_row, built_row) if built)

    @property
    def built_sites(self):
        return [i for i, built in enumerate(self.x) if built]

    @property
    def built_lines(self):
        return [(i, j) for i, row in enumerate(self.y) for j, built in enumerate(row) if built]


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int


@dataclass(frozen=True)
class FlowNetwork:
    num_sites: int
    num_loads: int
    arcs: Tuple[Arc, ...]

    @property
    def num_nodes(self):
        return self.num_sites + self.num_loads + 2

    def site_node(self, i):
        return 2 + i

    def load_node(self, j):
        return 2 + self.num_sites + j

    @property
    def source_arcs(self):
        return range(0, self.num_sites)

    @property
    def line_arcs(self):
        return range(self.num_sites, self.num_sites + self.num_sites * self.num_loads)

    @property
    def sink_arcs(self):
        start = self.num_sites + self.num_sites * self.num_loads
        return range(start, start + self.num_loads)

    def line_arc(self, i, j):
        return self.num_sites + i * self.num_loads + j


@dataclass(frozen=True)
class FlowResult:
    total_flow: int
    arc_flows: Tuple[int, ...]
    source_side: FrozenSet[int]


def network_from_capacities(source_caps: Sequence[int],
                            line_caps: Sequence[Sequence[int]],
                            sink_caps: Sequence[int]) -> FlowNetwork:
    n, m = len(source_caps), len(sink_caps)
    arcs = [Arc(SUPER_SOURCE, 2 + i, int(cap)) for i, cap in enumerate(source_caps)]
    arcs += [Arc(2 + i, 2 + n + j, int(line_caps[i][j]))
             for i in range(n) for j in range(m)]
    arcs += [Arc(2 + n + j, SUPER_LOAD, int(cap)) for j, cap in enumerate(sink_caps)]
    for arc in arcs:
        if arc.capacity < 0:
            raise InvalidInstance('negative capacity on arc {}'.format(arc))
    return FlowNetwork(n, m, tuple(arcs))


def build_network(instance: FineInstance, decision: BuildDecision, period: int) -> FlowNetwork:
    """ Cap(SS -> S_i) = SCap_i * x_i, Cap(S_i -> L_j) = LCap_ij * y_ij,
        Cap(L_j -> SL) = D_Lj, all for the given period
    """
    if not 0 <= period < instance.num_periods:
        raise InvalidInstance('period {} out of range [0, {})'.format(period, instance.num_periods))
    decision.check(instance)
    source_caps = [site.capacity_by_period[period] if built else 0
                   for site, built in zip(instance.sites, decision.x)]
    line_caps = [[line.capacity if built else 0 for line, built in zip(line_row, built_row)]
                 for line_row, built_row in zip(instance.lines, decision.y)]
    sink_caps = [load.demand_by_period[period] for load in instance.loads]
    return network_from_capacities(source_caps, line_caps, sink_caps)


class ResidualGraph:
    """ Dinic's blocking flow algorithm on an arc-list residual graph.
        Edge 2k is arc k of the network, edge 2k + 1 its reverse.
    """

    def __init__(self, num_nodes, arcs):
        self.num_nodes = num_nodes
        self.heads = []
        self.residual = []
        self.adjacency = [[] for _ in range(num_nodes)]
        for tail, head, capacity in arcs:
            self.adjacency[tail].append(len(self.heads))
            self.heads.append(head)
            self.residual.append(capacity)
            self.adjacency[head].append(len(self.heads))
            self.heads.append(tail)
            self.residual.append(0)

    def levels(self, source):
        levels = [-1] * self.num_nodes
        levels[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for edge in self.adjacency[u]:
                v = self.heads[edge]
                if self.residual[edge] > 0 and levels[v] < 0:
                    levels[v] = levels[u] + 1
                    queue.append(v)
        return levels

    def augment(self, u, sink, pushed, levels, cursor):
        if u == sink:
            return pushed
        edges = self.adjacency[u]
        while cursor[u] < len(edges):
            edge = edges[cursor[u]]
            v = self.heads[edge]
            if self.residual[edge] > 0 and levels[v] == levels[u] + 1:
                sent = self.augment(v, sink, min(pushed, self.residual[edge]), levels, cursor)
                if sent > 0:
                    self.residual[edge] -= sent
                    self.residual[edge ^ 1] += sent
                    return sent
            cursor[u] += 1
        return 0

    def max_flow(self, source, sink):
        total = 0
        while True:
            levels = self.levels(source)
            if levels[sink] < 0:
                return total, levels
            cursor = [0] * self.num_nodes
            limit = sum(self.residual[e] for e in self.adjacency[source])
            while True:
                sent = self.augment(source, sink, limit, levels, cursor)
                if not sent:
                    break
                total += sent


def max_flow(network: FlowNetwork) -> FlowResult:
    """ exact integral maximum SS -> SL flow """
    graph = ResidualGraph(network.num_nodes,
                          ((arc.tail, arc.head, arc.capacity) for arc in network.arcs))
    total, levels = graph.max_flow(SUPER_SOURCE, SUPER_LOAD)
    arc_flows = tuple(graph.residual[2 * k + 1] for k in range(len(network.arcs)))
    source_side = frozenset(node for node, level in enumerate(levels) if level >= 0)
    return FlowResult(total, arc_flows, source_side)


def max_flow_value(source_caps: Sequence[int],
                   line_caps: Sequence[Sequence[int]],
                   sink_caps: Sequence[int]) -> int:
    """ max flow value only, zero capacity arcs are not materialized """
    n, m = len(source_caps), len(sink_caps)
    arcs = [(SUPER_SOURCE, 2 + i, cap) for i, cap in enumerate(source_caps) if cap]
    arcs += [(2 + i, 2 + n + j, line_caps[i][j])
             for i in range(n) if source_caps[i] for j in range(m) if line_caps[i][j]]
    arcs += [(2 + n + j, SUPER_LOAD, cap) for j, cap in enumerate(sink_caps) if cap]
    if not arcs:
        return 0
    total, _ = ResidualGraph(n + m + 2, arcs).max_flow(SUPER_SOURCE, SUPER_LOAD)
    return total


def cut_capacity(network: FlowNetwork, source_side) -> int:
    return sum(arc.capacity for arc in network.arcs
               if arc.tail in source_side and arc.head not in source_side)
