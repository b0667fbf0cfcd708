import logging

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .. network import (BuildDecision,
                        FineInstance,
                        FlowResult,
                        build_network,
                        max_flow)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchStats:
    nodes_explored: int = 0
    nodes_pruned: int = 0
    warm_start_objective: Optional[int] = None
    root_bound: Optional[int] = None


@dataclass(frozen=True)
class FineSolution:
    decision: BuildDecision
    flow_results: Tuple[FlowResult, ...]
    total_cost: int
    demand_met: Fraction
    search_stats: SearchStats
    method: str

    @property
    def flow_by_period(self):
        return tuple(result.total_flow for result in self.flow_results)

    @property
    def objective(self):
        """ F summed over the periods, centi-MW """
        return sum(self.flow_by_period)

    @property
    def demand_met_percent(self):
        return float(self.demand_met * 100)


def evaluate_decision(instance: FineInstance, decision: BuildDecision):
    """ max flow of every period under a fixed decision """
    return tuple(max_flow(build_network(instance, decision, period))
                 for period in range(instance.num_periods))


def make_solution(instance: FineInstance, decision: BuildDecision,
                  stats: SearchStats, method: str) -> FineSolution:
    flow_results = evaluate_decision(instance, decision)
    objective = sum(result.total_flow for result in flow_results)
    # no demand at all, nothing to meet
    demand_met = Fraction(objective, instance.total_demand) if instance.total_demand else Fraction(0)
    solution = FineSolution(decision, flow_results, decision.cost(instance),
                            demand_met, stats, method)
    logger.info('{}: objective {} cost {} demand met {:.2f}% '
                '(explored {}, pruned {})'.format(method, objective, solution.total_cost,
                                                  solution.demand_met_percent,
                                                  stats.nodes_explored, stats.nodes_pruned))
    return solution
