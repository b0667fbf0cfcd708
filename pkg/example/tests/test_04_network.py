import networkx as nx

from siteflow.exceptions import InvalidDecision, InvalidInstance
from siteflow.network import (BuildDecision,
                              FineInstance,
                              FineSite,
                              Line,
                              Load,
                              SUPER_LOAD,
                              SUPER_SOURCE,
                              build_network,
                              cut_capacity,
                              max_flow,
                              max_flow_value,
                              network_from_capacities)
from siteflow.utils import to_centi

from . base import (BaseSiteflowTest,
                    brute_force_min_cut,
                    load_fixture,
                    random_network)


def _single(site_cap='100', demand='250.50', line_cap='1000'):
    return FineInstance((FineSite(0, to_centi('10'), (to_centi(site_cap),)),),
                        (Load(0, (to_centi(demand),)),),
                        ((Line(to_centi('5'), to_centi(line_cap)),),),
                        budget=to_centi('15'), num_periods=1)


def _networkx_value(network):
    graph = nx.DiGraph()
    graph.add_nodes_from(range(network.num_nodes))
    for arc in network.arcs:
        graph.add_edge(arc.tail, arc.head, capacity=arc.capacity)
    return nx.maximum_flow_value(graph, SUPER_SOURCE, SUPER_LOAD)


class BuildNetworkTest(BaseSiteflowTest):
    def setUp(self):
        super().setUp()
        self.instance = load_fixture('fine_six_by_four')

    def test_counts(self):
        decision = BuildDecision.everything(6, 4)
        network = build_network(self.instance, decision, 0)
        assert network.num_nodes == 12
        assert len(network.arcs) == 6 + 4 + 6 * 4

    def test_nothing_built(self):
        network = build_network(self.instance, BuildDecision.nothing(6, 4), 1)
        assert len(network.arcs) == 34
        for k in list(network.source_arcs) + list(network.line_arcs):
            assert network.arcs[k].capacity == 0
        assert [network.arcs[k].capacity for k in network.sink_arcs] == \
            [28050, 21000, 35000, 12000]
        assert max_flow(network).total_flow == 0

    def test_centi_units(self):
        instance = _single()
        network = build_network(instance, BuildDecision.everything(1, 1), 0)
        assert [arc.capacity for arc in network.arcs] == [10000, 100000, 25050]
        assert network.line_arc(0, 0) == 1

    def test_coupling(self):
        decision = BuildDecision((False,), ((True,),))
        assert not decision.is_coupled()
        with self.assertRaises(InvalidDecision) as ctx:
            build_network(_single(), decision, 0)
        assert 'invalid decision' in str(ctx.exception)

    def test_shape_and_period(self):
        with self.assertRaises(InvalidDecision):
            build_network(self.instance, BuildDecision.everything(5, 4), 0)
        with self.assertRaises(InvalidInstance):
            build_network(self.instance, BuildDecision.everything(6, 4), 2)


class MaxFlowTest(BaseSiteflowTest):
    def test_zero(self):
        network = network_from_capacities([0, 0], [[0, 0], [0, 0]], [0, 0])
        result = max_flow(network)
        assert result.total_flow == 0
        assert result.arc_flows == (0,) * 8

    def test_demand_limited(self):
        result = max_flow(network_from_capacities([10], [[100]], [4]))
        assert result.total_flow == 4

    def test_two_by_two(self):
        network = network_from_capacities([5, 5], [[3, 3], [3, 3]], [8, 8])
        result = max_flow(network)
        assert result.total_flow == brute_force_min_cut(network) == 10

    def test_conservation_and_capacity(self):
        for _ in range(50):
            n, m = int(self.rng.integers(1, 6)), int(self.rng.integers(1, 6))
            network = random_network(self.rng, n, m)
            result = max_flow(network)
            for arc, flow in zip(network.arcs, result.arc_flows):
                assert 0 <= flow <= arc.capacity
            for node in range(2, network.num_nodes):
                inflow = sum(f for a, f in zip(network.arcs, result.arc_flows) if a.head == node)
                outflow = sum(f for a, f in zip(network.arcs, result.arc_flows) if a.tail == node)
                assert inflow == outflow
            assert result.total_flow == sum(result.arc_flows[k] for k in network.source_arcs)

    def test_saturated_cut(self):
        for _ in range(50):
            network = random_network(self.rng, 4, 3)
            result = max_flow(network)
            assert SUPER_SOURCE in result.source_side
            assert SUPER_LOAD not in result.source_side
            assert cut_capacity(network, result.source_side) == result.total_flow

    def test_against_min_cut_enumeration(self):
        for _ in range(100):
            n = int(self.rng.integers(1, 9))
            m = int(self.rng.integers(1, 11 - n))
            network = random_network(self.rng, n, m)
            assert max_flow(network).total_flow == brute_force_min_cut(network)

    def test_against_networkx(self):
        for _ in range(50):
            network = random_network(self.rng, 7, 6, high=1000)
            assert max_flow(network).total_flow == _networkx_value(network)

    def test_monotone(self):
        for _ in range(30):
            network = random_network(self.rng, 3, 3)
            value = max_flow(network).total_flow
            source = [network.arcs[k].capacity for k in network.source_arcs]
            lines = [[network.arcs[network.line_arc(i, j)].capacity for j in range(3)]
                     for i in range(3)]
            sink = [network.arcs[k].capacity for k in network.sink_arcs]
            lines[1][2] += 7
            source[0] += 3
            assert max_flow(network_from_capacities(source, lines, sink)).total_flow >= value
            assert max_flow_value(source, lines, sink) >= value

    def test_fast_path_agrees(self):
        for _ in range(50):
            network = random_network(self.rng, 4, 4)
            source = [network.arcs[k].capacity for k in network.source_arcs]
            lines = [[network.arcs[network.line_arc(i, j)].capacity for j in range(4)]
                     for i in range(4)]
            sink = [network.arcs[k].capacity for k in network.sink_arcs]
            assert max_flow_value(source, lines, sink) == max_flow(network).total_flow

    def test_negative_capacity(self):
        with self.assertRaises(InvalidInstance):
            network_from_capacities([-1], [[1]], [1])
