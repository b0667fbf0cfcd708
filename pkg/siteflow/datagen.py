"""
Seeded synthetic instances, calibrated on operating solar farms:
14 sites of 15-403 MW costing 13.63-402.14 million USD, 9 loads of
0-4057.48 MW, lines of 250-1000 MW costing 1.27-117.30 million USD.

Noise is uniform in [-sigma, +sigma] per parameter family, then clamped
to the family range and rounded to 0.01.  The six sigmas are, in order:
site cost, site maximum capacity headroom, per-period generation, line
capacity, line cost, per-period demand.
"""
import dataclasses
import enum
import logging

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from . coverage import CandidateSite, CoarseInstance, DemandPoint, Point2D
from . exceptions import InvalidInstance
from . network import FineInstance, FineSite, Line, Load
from . solvers.fine import solve
from . utils import centi_from_float, scale_centi


logger = logging.getLogger(__name__)

GENERATOR_NAME = 'numpy.random.PCG64'
NUM_VARIANCES = 6


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    n_sites: int = 14
    m_loads: int = 9
    num_periods: int = 12
    site_capacity_range: Tuple[float, float] = (15.0, 403.0)
    site_cost_range: Tuple[float, float] = (13.63, 402.14)
    line_cost_range: Tuple[float, float] = (1.27, 117.30)
    line_capacity_choices: Tuple[float, ...] = (250.0, 500.0, 750.0, 1000.0)
    demand_range: Tuple[float, float] = (0.0, 4057.48)
    # None: 10% of each family range width
    variance_vector: Optional[Tuple[float, ...]] = None
    budget_fraction: float = 0.3

    def __post_init__(self):
        if self.n_sites < 0 or self.m_loads < 0:
            raise InvalidInstance('site and load counts must be nonnegative')
        if self.num_periods < 1:
            raise InvalidInstance('at least one period is needed')
        for name in ('site_capacity_range', 'site_cost_range',
                     'line_cost_range', 'demand_range'):
            low, high = getattr(self, name)
            if not 0 <= low <= high:
                raise InvalidInstance('{} is not a valid range: {}'.format(
                    name, getattr(self, name)))
        if not self.line_capacity_choices or min(self.line_capacity_choices) < 0:
            raise InvalidInstance('line capacity choices must be nonnegative')
        if self.variance_vector is not None and \
           (len(self.variance_vector) != NUM_VARIANCES or min(self.variance_vector) < 0):
            raise InvalidInstance('variance vector needs {} nonnegative values'.format(
                NUM_VARIANCES))
        if self.budget_fraction < 0:
            raise InvalidInstance('budget fraction must be nonnegative')

    @property
    def variances(self):
        if self.variance_vector is not None:
            return tuple(float(s) for s in self.variance_vector)
        widths = (self.site_cost_range[1] - self.site_cost_range[0],
                  self.site_capacity_range[1] - self.site_capacity_range[0],
                  self.site_capacity_range[1] - self.site_capacity_range[0],
                  max(self.line_capacity_choices) - min(self.line_capacity_choices),
                  self.line_cost_range[1] - self.line_cost_range[0],
                  self.demand_range[1] - self.demand_range[0])
        return tuple(round(0.1 * width, 4) for width in widths)

    def as_dict(self):
        params = dataclasses.asdict(self)
        params['variance_vector'] = list(self.variances)
        return {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}


@dataclass(frozen=True)
class CoarseGenParams:
    seed: int = 0
    side: float = 100.0
    radius: float = 25.0
    budget: int = 3
    # MW, None: mean per-period demand of the fine instance
    threshold: Optional[float] = None


def _centi(values):
    return [int(v) for v in np.rint(np.asarray(values, dtype=float) * 100)]


def _noise(rng, sigma, size):
    return rng.uniform(-sigma, sigma, size) if sigma else np.zeros(size)


def generate_instance(params: GenParams) -> FineInstance:
    """ pure function of params: same seed and params, same instance """
    s_cost, s_headroom, s_generation, s_line_cap, s_line_cost, s_demand = params.variances
    n, m, periods = params.n_sites, params.m_loads, params.num_periods
    # independent streams, adding loads doesn't move the sites
    site_rng, line_rng, load_rng = [np.random.Generator(np.random.PCG64(child))
                                    for child in np.random.SeedSequence(params.seed).spawn(3)]

    low, high = params.site_cost_range
    site_costs = np.clip(site_rng.uniform(low, high, n) + _noise(site_rng, s_cost, n), low, high)
    low, high = params.site_capacity_range
    base_capacity = site_rng.uniform(low, high, n)
    headroom = site_rng.uniform(0, s_headroom, n) if s_headroom else np.zeros(n)
    max_capacity = np.clip(base_capacity + headroom, low, high)
    generation = np.clip(base_capacity[:, np.newaxis] + _noise(site_rng, s_generation, (n, periods)),
                         low, max_capacity[:, np.newaxis])

    low, high = params.line_cost_range
    line_costs = np.clip(line_rng.uniform(low, high, (n, m)) + _noise(line_rng, s_line_cost, (n, m)),
                         low, high)
    choices = np.asarray(params.line_capacity_choices, dtype=float)
    line_caps = np.clip(line_rng.choice(choices, (n, m)) + _noise(line_rng, s_line_cap, (n, m)),
                        choices.min(), choices.max())

    low, high = params.demand_range
    base_demand = load_rng.uniform(low, high, m)
    demand = np.clip(base_demand[:, np.newaxis] + _noise(load_rng, s_demand, (m, periods)), low, high)

    site_costs, max_capacity = _centi(site_costs), _centi(max_capacity)
    sites = tuple(FineSite(i, site_costs[i], tuple(_centi(generation[i])), max_capacity[i])
                  for i in range(n))
    loads = tuple(Load(j, tuple(_centi(demand[j]))) for j in range(m))
    lines = tuple(tuple(Line(cost, cap) for cost, cap in zip(_centi(line_costs[i]),
                                                             _centi(line_caps[i])))
                  for i in range(n))
    total_cost = sum(site_costs) + sum(line.build_cost for row in lines for line in row)
    budget = int(round(total_cost * params.budget_fraction))
    instance = FineInstance(sites, loads, lines, budget, periods,
                            description='synthetic, seed {}'.format(params.seed))
    logger.debug('generated {} sites, {} loads, {} periods from seed {}'.format(
        n, m, periods, params.seed))
    return instance


def generator_metadata(params: GenParams):
    return {'name': GENERATOR_NAME, 'seed': params.seed, 'params': params.as_dict()}


def coarse_from_fine(instance: FineInstance, params: CoarseGenParams) -> CoarseInstance:
    """ Loads become unit demand points, demand is 1 in the periods where
        the load reaches the threshold.  Sites and points are scattered
        uniformly in a side x side square.
    """
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(params.seed)))
    site_xy = np.round(rng.uniform(0, params.side, (instance.num_sites, 2)), 2)
    point_xy = np.round(rng.uniform(0, params.side, (instance.num_loads, 2)), 2)
    if params.threshold is None:
        demands = [d for load in instance.loads for d in load.demand_by_period]
        threshold = sum(demands) / len(demands) if demands else 0
    else:
        threshold = centi_from_float(params.threshold)
    sites = tuple(CandidateSite(i, Point2D(float(x), float(y)))
                  for i, (x, y) in enumerate(site_xy))
    points = tuple(DemandPoint(j, Point2D(float(x), float(y)),
                               tuple(int(d >= threshold) for d in load.demand_by_period))
                   for j, ((x, y), load) in enumerate(zip(point_xy, instance.loads)))
    return CoarseInstance(sites, points, float(params.radius), instance.num_periods,
                          min(params.budget, instance.num_sites),
                          description='derived from {}'.format(instance.description or 'a fine instance'))


class SweepAxis(str, enum.Enum):
    BUDGET = 'budget'
    SUPPLY = 'supply_scale'
    DEMAND = 'demand_scale'


def with_budget(instance: FineInstance, budget) -> FineInstance:
    """ budget in million USD """
    return dataclasses.replace(instance, budget=centi_from_float(budget))


def scale_supply(instance: FineInstance, factor) -> FineInstance:
    """ generation scaled, limited by the site maximum capacity """
    sites = tuple(dataclasses.replace(
        site,
        capacity_by_period=tuple(min(scale_centi(cap, factor), site.maximum)
                                 for cap in site.capacity_by_period),
        max_capacity=site.maximum)
        for site in instance.sites)
    return dataclasses.replace(instance, sites=sites)


def supply_saturated(instance: FineInstance, factor) -> bool:
    """ every site already generates at its maximum capacity """
    return all(scale_centi(cap, factor) >= site.maximum
               for site in instance.sites for cap in site.capacity_by_period)


def scale_demand(instance: FineInstance, factor) -> FineInstance:
    loads = tuple(dataclasses.replace(load, demand_by_period=tuple(
        scale_centi(d, factor) for d in load.demand_by_period))
        for load in instance.loads)
    return dataclasses.replace(instance, loads=loads)


SCALERS = {SweepAxis.BUDGET: with_budget,
           SweepAxis.SUPPLY: scale_supply,
           SweepAxis.DEMAND: scale_demand}


def sweep(instance: FineInstance, axis, grid: Sequence[float], solver=solve):
    """ [(value, FineSolution), ...] in grid order.

        Budget values are in million USD, supply and demand values are
        scale factors.  A supply curve ends at the first value where every
        site is clamped at its maximum capacity.
    """
    axis = SweepAxis(axis)
    if not grid:
        raise ValueError('sweep grid is empty')
    if min(grid) < 0:
        raise ValueError('sweep values must be nonnegative: {}'.format(list(grid)))
    scaler = SCALERS[axis]
    results = []
    for value in grid:
        solution = solver(scaler(instance, value))
        logger.info('{} = {}: demand met {:.2f}%'.format(axis.value, value,
                                                        solution.demand_met_percent))
        results.append((value, solution))
        if axis == SweepAxis.SUPPLY and supply_saturated(instance, value):
            logger.info('supply saturated at {}, curve ends'.format(value))
            break
    return results
