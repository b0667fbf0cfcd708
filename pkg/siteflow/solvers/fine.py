"""
Budgeted site and line selection: maximize the total flow delivered over
every period, build costs charged once, y_ij <= x_i.

The exact solver is a depth first branch and bound over the build
variables (sites before lines, each group by decreasing capacity/cost,
true branch first).  A node is pruned when a bound is not better than
the incumbent, and closed when a completion reaching its bound is found,
so only strictly better decisions replace the incumbent.
"""
import logging
import math

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .. exceptions import InstanceTooLarge, InvalidDecision
from .. network import (BuildDecision,
                        FineInstance,
                        ResidualGraph,
                        SUPER_LOAD,
                        SUPER_SOURCE,
                        max_flow_value)
from .. utils import get_setting
from . base import FineSolution, SearchStats, make_solution


logger = logging.getLogger(__name__)

BRANCH_AND_BOUND = 'branch-and-bound'
BRUTE_FORCE = 'brute-force'


@dataclass
class PartialDecision:
    """ x_i and y_ij in {True, False, None}, None is undecided """
    x: List[Optional[bool]]
    y: List[List[Optional[bool]]]

    @classmethod
    def undecided(cls, n, m):
        return cls([None] * n, [[None] * m for _ in range(n)])

    @classmethod
    def from_decision(cls, decision: BuildDecision):
        return cls(list(decision.x), [list(row) for row in decision.y])

    def relaxed(self) -> BuildDecision:
        """ every undecided variable built, lines of unbuilt sites excluded """
        for site, row in zip(self.x, self.y):
            if site is False and any(row):
                raise InvalidDecision('invalid decision: a line is built from an unbuilt site')
        x = tuple(site is not False for site in self.x)
        y = tuple(tuple(built and line is not False for line in row)
                  for built, row in zip(x, self.y))
        return BuildDecision(x, y)

    def committed_cost(self, instance: FineInstance):
        return sum(site.build_cost for site, built in zip(instance.sites, self.x) if built) + \
            sum(line.build_cost
                for line_row, built_row in zip(instance.lines, self.y)
                for line, built in zip(line_row, built_row) if built)


def _period_capacities(instance: FineInstance):
    return [([site.capacity_by_period[p] for site in instance.sites],
             [load.demand_by_period[p] for load in instance.loads])
            for p in range(instance.num_periods)]


def _decision_flow(instance, decision: BuildDecision, periods=None):
    periods = periods or _period_capacities(instance)
    line_caps = [[line.capacity if built else 0 for line, built in zip(line_row, built_row)]
                 for line_row, built_row in zip(instance.lines, decision.y)]
    total = 0
    for supply, demand in periods:
        source_caps = [cap if built else 0 for cap, built in zip(supply, decision.x)]
        total += max_flow_value(source_caps, line_caps, demand)
    return total


def _flow_support(instance, decision: BuildDecision, periods):
    """ total flow over the periods and the lines carrying some of it """
    n, m = instance.num_sites, instance.num_loads
    lines = [(i, j) for i in range(n) if decision.x[i] for j in range(m)
             if decision.y[i][j] and instance.lines[i][j].capacity]
    total, used = 0, set()
    for supply, demand in periods:
        arcs = [(SUPER_SOURCE, 2 + i, supply[i] if decision.x[i] else 0) for i in range(n)]
        arcs += [(2 + i, 2 + n + j, instance.lines[i][j].capacity) for i, j in lines]
        arcs += [(2 + n + j, SUPER_LOAD, demand[j]) for j in range(m)]
        graph = ResidualGraph(n + m + 2, arcs)
        flow, _ = graph.max_flow(SUPER_SOURCE, SUPER_LOAD)
        total += flow
        # reverse edge of line arc k holds its flow
        used.update(ij for k, ij in enumerate(lines) if graph.residual[2 * (n + k) + 1])
    return total, frozenset(used)


def relaxation_bound(instance: FineInstance, partial: PartialDecision,
                     committed_cost: Optional[int] = None) -> int:
    """ Total flow with every undecided variable treated as built.

        Flow is monotone in the capacities, so no completion of the
        partial decision delivers more.  A partial decision already over
        budget has no completion at all and is bounded by 0.
    """
    if committed_cost is None:
        committed_cost = partial.committed_cost(instance)
    if committed_cost > instance.budget:
        logger.debug('partial decision over budget: {} > {}'.format(committed_cost,
                                                                    instance.budget))
        return 0
    return _decision_flow(instance, partial.relaxed())


def _ratio_key(capacity, cost):
    # descending capacity / cost, free builds first
    if cost == 0:
        return (0, Fraction(0))
    return (1, -Fraction(capacity, cost))


def branch_order(instance: FineInstance):
    """ [('site', i), ..., ('line', i, j), ...] """
    sites = sorted(range(instance.num_sites),
                   key=lambda i: (_ratio_key(instance.sites[i].maximum,
                                             instance.sites[i].build_cost), i))
    lines = sorted(((i, j) for i in range(instance.num_sites) for j in range(instance.num_loads)),
                   key=lambda ij: (_ratio_key(instance.lines[ij[0]][ij[1]].capacity,
                                              instance.lines[ij[0]][ij[1]].build_cost), ij))
    return [('site', i) for i in sites] + [('line', i, j) for i, j in lines]


class Option(NamedTuple):
    """ one choice for a site: built or not, and its lines as a bit mask """
    cost: int
    value: int
    built: bool
    lines: int


def convolve(table, options, length):
    """ Best value for every budget 0..length-1 once a site is added.

        table[b] is the best value with cost <= b, options are sorted by
        cost and the first one is free.
    """
    base = table[:length]
    result = base + options[0].value
    for option in options[1:]:
        if option.cost >= length:
            break
        np.maximum(result[option.cost:], base[:length - option.cost] + option.value,
                   out=result[option.cost:])
    return result


def _pick(table, previous, options, budget):
    """ first option explaining table[budget] from the previous table """
    return next(option for option in options
                if option.cost <= budget and
                previous[budget - option.cost] + option.value == table[budget])


class Prefix:
    """ knapsack tables after adding the given sites one at a time """

    def __init__(self, table, sites=(), options=(), tables=()):
        self.sites = sites
        self.options = options
        self.tables = tables or (table,)

    def extend(self, site, options, length):
        table = convolve(self.tables[-1], options, length)
        return Prefix(None, self.sites + (site,), self.options + (options,),
                      self.tables + (table,))

    def backtrack(self, budget):
        picks = {}
        for k in reversed(range(len(self.sites))):
            option = _pick(self.tables[k + 1], self.tables[k], self.options[k], budget)
            picks[self.sites[k]] = option
            budget -= option.cost
        return picks


class SeparableBound:
    """ Every site on its own lines.

        Site i with lines S delivers at most
        sum_p min(cap_ip, sum_{j in S} min(q_ij, D_jp)) whatever the other
        sites do.  The best sum of these values within the budget is a
        multiple choice knapsack with one class per site, solved by
        dynamic programming over the budget.  Costs are floored to a step
        of the budget, which keeps every affordable decision affordable.
    """

    def __init__(self, instance: FineInstance, site_order):
        self.instance = instance
        self.site_order = list(site_order)
        self.m = instance.num_loads
        steps = get_setting('SITEFLOW_SEPARABLE_BUDGET_STEPS')
        budget = min(instance.budget, instance.total_cost)
        self.step = max(1, -(-budget // steps))
        self.span = budget // self.step
        self.site_costs = [site.build_cost // self.step for site in instance.sites]
        self.masks = np.arange(1 << self.m, dtype=np.int64)
        bits = (self.masks[:, np.newaxis] >> np.arange(self.m, dtype=np.int64)) & 1
        self.line_costs, self.values = [], []
        for i, site in enumerate(instance.sites):
            costs = np.array([line.build_cost // self.step for line in instance.lines[i]],
                             dtype=np.int64)
            reach = np.array([[min(line.capacity, demand) for demand in load.demand_by_period]
                              for line, load in zip(instance.lines[i], instance.loads)],
                             dtype=np.int64).reshape(self.m, instance.num_periods)
            supply = np.array(site.capacity_by_period, dtype=np.int64)
            self.line_costs.append(bits @ costs)
            self.values.append(np.minimum(bits @ reach, supply).sum(axis=1))
        self.cache = {}
        self.suffix = None
        self.suffix_options = None

    def options(self, i, undecided=False, required=0, excluded=0) -> Tuple[Option, ...]:
        """ Pareto front of the choices left to site i, cheapest first.
            Costs count what is not committed yet in steps, values the
            whole site.
        """
        key = (i, undecided, required, excluded)
        if key not in self.cache:
            masks = self.masks
            allowed = ((masks & required) == required) & ((masks & excluded) == 0)
            costs = self.line_costs[i][allowed] - self.line_costs[i][required]
            values = self.values[i][allowed]
            lines = masks[allowed]
            built = np.ones(len(lines), dtype=bool)
            if undecided:
                costs = np.concatenate(([0], costs + self.site_costs[i]))
                values = np.concatenate(([0], values))
                lines = np.concatenate(([0], lines))
                built = np.concatenate(([False], built))
            order = np.lexsort((-values, costs))
            costs, values, lines, built = costs[order], values[order], lines[order], built[order]
            keep = np.ones(len(values), dtype=bool)
            keep[1:] = values[1:] > np.maximum.accumulate(values)[:-1]
            self.cache[key] = tuple(Option(int(c), int(v), bool(b), int(mask))
                                    for c, v, b, mask in zip(costs[keep], values[keep],
                                                             built[keep], lines[keep]))
        return self.cache[key]

    def prepare(self):
        """ suffix tables over the site order, returns the root bound """
        length = self.span + 1
        count = len(self.site_order)
        self.suffix_options = [self.options(i, undecided=True) for i in self.site_order]
        self.suffix = [None] * count + [np.zeros(length, dtype=np.int64)]
        for pos in reversed(range(count)):
            self.suffix[pos] = convolve(self.suffix[pos + 1], self.suffix_options[pos], length)
        return int(self.suffix[0][-1])

    def root(self):
        return Prefix(np.zeros(self.span + 1, dtype=np.int64))

    def steps(self, remaining):
        return min(remaining // self.step, self.span)

    def site_phase(self, pos, prefix: Prefix, remaining):
        """ sites before position pos are decided, built ones are in prefix """
        r = self.steps(remaining)
        totals = prefix.tables[-1][:r + 1] + self.suffix[pos][r::-1]
        split = int(np.argmax(totals))
        picks = prefix.backtrack(split)
        budget = r - split
        for p in range(pos, len(self.site_order)):
            option = _pick(self.suffix[p], self.suffix[p + 1], self.suffix_options[p], budget)
            picks[self.site_order[p]] = option
            budget -= option.cost
        return int(totals[split]), picks

    def line_phase(self, partial: PartialDecision, remaining):
        """ every site is decided """
        r = self.steps(remaining)
        prefix = Prefix(np.zeros(r + 1, dtype=np.int64))
        for i, built in enumerate(partial.x):
            if not built:
                continue
            required = sum(1 << j for j, line in enumerate(partial.y[i]) if line is True)
            excluded = sum(1 << j for j, line in enumerate(partial.y[i]) if line is False)
            prefix = prefix.extend(i, self.options(i, False, required, excluded), r + 1)
        return int(prefix.tables[-1][r]), prefix.backtrack(r)

    def decision(self, partial: PartialDecision, picks) -> BuildDecision:
        x = [site is True for site in partial.x]
        y = [[line is True for line in row] for row in partial.y]
        for i, option in picks.items():
            x[i] = option.built
            y[i] = [option.built and bool(option.lines >> j & 1) for j in range(self.m)]
        return BuildDecision(tuple(x), tuple(tuple(row) for row in y))


class BranchAndBound:
    """ Depth first search over a PartialDecision.

        Bounds, a node is pruned as soon as one of them fails to beat the
        incumbent:
        - a fractional knapsack over (site, line) supply products, a unit
          of flow through line ij costs SCost_i / supply_i + LCost_ij / q_ij
          where q_ij is what the line can carry from the site;
        - SeparableBound, sites on their own lines within the budget;
        - relaxation_bound, max flow with undecided builds in place.
        The SeparableBound optimum and the lines carrying the relaxed flow
        are tried as completions; one reaching its bound closes the node.
    """

    def __init__(self, instance: FineInstance):
        self.instance = instance
        self.n, self.m = instance.num_sites, instance.num_loads
        self.order = branch_order(instance)
        self.site_order = [var[1] for var in self.order if var[0] == 'site']
        self.position = {i: pos for pos, i in enumerate(self.site_order)}
        self.periods = _period_capacities(instance)
        self.supply = [sum(site.capacity_by_period) for site in instance.sites]
        self.line_supply = [[sum(min(cap, line.capacity) for cap in site.capacity_by_period)
                             for line in instance.lines[i]]
                            for i, site in enumerate(instance.sites)]
        self.separable = None
        if self.m <= get_setting('SITEFLOW_SEPARABLE_MAX_LOADS'):
            self.separable = SeparableBound(instance, self.site_order)
        self.partial = PartialDecision.undecided(self.n, self.m)
        self.flow_cache = {}
        self.support_cache = {}
        self.incumbent = None
        self.incumbent_value = -1
        self.nodes_explored = 0
        self.nodes_pruned = 0

    def cost(self, var):
        if var[0] == 'site':
            return self.instance.sites[var[1]].build_cost
        return self.instance.lines[var[1]][var[2]].build_cost

    def value(self, var):
        if var[0] == 'site':
            return self.partial.x[var[1]]
        return self.partial.y[var[1]][var[2]]

    def assign(self, var, value):
        if var[0] == 'site':
            self.partial.x[var[1]] = value
        else:
            self.partial.y[var[1]][var[2]] = value

    def flow(self, decision: BuildDecision):
        key = (decision.x, decision.y)
        if key not in self.flow_cache:
            self.flow_cache[key] = _decision_flow(self.instance, decision, self.periods)
        return self.flow_cache[key]

    def support(self, decision: BuildDecision):
        """ (flow, lines carrying it) """
        key = (decision.x, decision.y)
        if key not in self.support_cache:
            total, used = _flow_support(self.instance, decision, self.periods)
            self.flow_cache[key] = total
            self.support_cache[key] = used
        return self.flow_cache[key], self.support_cache[key]

    def offer(self, decision: BuildDecision, value):
        if value > self.incumbent_value:
            logger.debug('new incumbent {} (was {}) after {} nodes'.format(
                value, self.incumbent_value, self.nodes_explored))
            self.incumbent, self.incumbent_value = decision, value

    def offer_support(self, used):
        """ committed builds plus the given lines, when affordable """
        x = [site is True for site in self.partial.x]
        y = [[line is True for line in row] for row in self.partial.y]
        for i, j in used:
            x[i] = y[i][j] = True
        decision = BuildDecision(tuple(x), tuple(tuple(row) for row in y))
        if decision.cost(self.instance) > self.instance.budget:
            return None
        value = self.flow(decision)
        self.offer(decision, value)
        return value

    def warm_start(self):
        """ builds in branch order while the budget allows """
        x, y = [False] * self.n, [[False] * self.m for _ in range(self.n)]
        remaining = self.instance.budget
        for var in self.order:
            cost = self.cost(var)
            if cost > remaining:
                continue
            if var[0] == 'site':
                x[var[1]] = True
            elif x[var[1]]:
                y[var[1]][var[2]] = True
            else:
                continue
            remaining -= cost
        decision = BuildDecision(tuple(x), tuple(tuple(row) for row in y))
        self.offer(decision, self.flow(decision))
        return self.incumbent_value

    def knapsack_bound(self, remaining):
        products = []
        for i in range(self.n):
            site = self.partial.x[i]
            if site is False or not self.supply[i]:
                continue
            unit_site = 0.0 if site else self.instance.sites[i].build_cost / self.supply[i]
            for j in range(self.m):
                line = self.partial.y[i][j]
                quantity = self.line_supply[i][j]
                if line is False or not quantity:
                    continue
                unit_line = 0.0 if line else self.instance.lines[i][j].build_cost / quantity
                products.append((unit_site + unit_line, i, quantity))
        products.sort()
        left = list(self.supply)
        budget_left = float(remaining)
        value = 0.0
        for unit, i, quantity in products:
            take = min(quantity, left[i])
            if unit > 0:
                if budget_left <= 0:
                    break
                take = min(take, budget_left / unit)
                budget_left -= take * unit
            left[i] -= take
            value += take
        value = min(value, self.instance.total_demand)
        # float slack, an upper bound must never undershoot
        return math.floor(value * (1 + 1e-9) + 1e-6)

    def propagate(self, remaining):
        """ fixes to False what can't be built anymore, returns the undo list """
        forced = []
        for var in self.order:
            if self.value(var) is not None:
                continue
            # sites come first, their lines see them already fixed
            if (var[0] == 'line' and self.partial.x[var[1]] is False) or \
               self.cost(var) > remaining:
                self.assign(var, False)
                forced.append(var)
        return forced

    def undecided_cost(self):
        return sum(self.cost(var) for var in self.order if self.value(var) is None)

    def separable_step(self, var, prefix, remaining):
        """ True when the node is done: pruned or closed """
        if var[0] == 'site':
            bound, picks = self.separable.site_phase(self.position[var[1]], prefix, remaining)
        else:
            bound, picks = self.separable.line_phase(self.partial, remaining)
        if bound <= self.incumbent_value:
            self.nodes_pruned += 1
            return True
        candidate = self.separable.decision(self.partial, picks)
        # floored costs may overrun the real budget
        if candidate.cost(self.instance) > self.instance.budget:
            return False
        value = self.flow(candidate)
        self.offer(candidate, value)
        return value == bound

    def relaxation_step(self, relaxed):
        """ True when the node is done: pruned or closed """
        bound, used = self.support(relaxed)
        if bound <= self.incumbent_value:
            self.nodes_pruned += 1
            return True
        return self.offer_support(used) == bound

    def visit(self, committed, prefix=None):
        self.nodes_explored += 1
        remaining = self.instance.budget - committed
        if remaining < 0:
            self.nodes_pruned += 1
            return
        forced = self.propagate(remaining)
        try:
            if self.knapsack_bound(remaining) <= self.incumbent_value:
                self.nodes_pruned += 1
                return
            relaxed = self.partial.relaxed()
            if self.undecided_cost() <= remaining:
                # the all built completion is affordable: best of the subtree
                self.offer(relaxed, self.flow(relaxed))
                return
            var = next(var for var in self.order if self.value(var) is None)
            if self.separable is not None and self.separable_step(var, prefix, remaining):
                return
            # with undecided sites the relaxed network ignores the budget
            if (var[0] == 'line' or self.separable is None) and self.relaxation_step(relaxed):
                return
            self.branch(var, committed, prefix)
        finally:
            for var in forced:
                self.assign(var, None)

    def branch(self, var, committed, prefix):
        cost = self.cost(var)
        self.assign(var, True)
        child = prefix
        if var[0] == 'site' and self.separable is not None:
            length = self.separable.steps(self.instance.budget - committed - cost) + 1
            child = prefix.extend(var[1], self.separable.options(var[1]), length)
        self.visit(committed + cost, child)
        self.assign(var, False)
        lines = []
        if var[0] == 'site':
            lines = [('line', var[1], j) for j in range(self.m)
                     if self.partial.y[var[1]][j] is None]
            for line in lines:
                self.assign(line, False)
        self.visit(committed, prefix)
        for line in lines:
            self.assign(line, None)
        self.assign(var, None)

    def run(self):
        warm = self.warm_start()
        everything = self.partial.relaxed()
        root_flow, used = self.support(everything)
        root_bound = min(self.knapsack_bound(self.instance.budget), root_flow)
        self.offer_support(used)
        prefix = None
        if self.separable is not None:
            if root_bound > self.incumbent_value:
                root_bound = min(root_bound, self.separable.prepare())
                prefix = self.separable.root()
            else:
                self.separable = None
        logger.debug('warm start {}, incumbent {}, root bound {}'.format(
            warm, self.incumbent_value, root_bound))
        self.visit(0, prefix)
        stats = SearchStats(self.nodes_explored, self.nodes_pruned, warm, root_bound)
        return self.incumbent, stats


def solve(instance: FineInstance) -> FineSolution:
    """ exact optimum of the budgeted site and line selection """
    decision, stats = BranchAndBound(instance).run()
    return make_solution(instance, decision, stats, BRANCH_AND_BOUND)


def brute_force_solve(instance: FineInstance) -> FineSolution:
    """ Enumerates every affordable decision, testing oracle for solve() """
    n, m = instance.num_sites, instance.num_loads
    max_sites = get_setting('SITEFLOW_BRUTE_FORCE_MAX_SITES')
    max_loads = get_setting('SITEFLOW_BRUTE_FORCE_MAX_LOADS')
    if n > max_sites or m > max_loads:
        raise InstanceTooLarge('brute force is limited to {} sites and {} loads, '
                               'got {} x {}'.format(max_sites, max_loads, n, m))
    periods = _period_capacities(instance)
    budget = instance.budget
    best, best_value, explored = None, -1, 0

    for x_mask in range(1 << n):
        x = tuple(bool(x_mask >> i & 1) for i in range(n))
        site_cost = sum(site.build_cost for site, built in zip(instance.sites, x) if built)
        if site_cost > budget:
            continue
        candidates = [(i, j) for i in range(n) if x[i] for j in range(m)]
        for y_mask in range(1 << len(candidates)):
            chosen = [ij for k, ij in enumerate(candidates) if y_mask >> k & 1]
            cost = site_cost + sum(instance.lines[i][j].build_cost for i, j in chosen)
            if cost > budget:
                continue
            y = [[False] * m for _ in range(n)]
            for i, j in chosen:
                y[i][j] = True
            decision = BuildDecision(x, tuple(tuple(row) for row in y))
            explored += 1
            value = _decision_flow(instance, decision, periods)
            if value > best_value:
                best, best_value = decision, value
    stats = SearchStats(nodes_explored=explored)
    return make_solution(instance, best, stats, BRUTE_FORCE)
