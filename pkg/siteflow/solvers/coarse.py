import heapq
import logging
import math

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Optional

from .. coverage import CoarseInstance
from .. exceptions import (EnumerationCapExceeded,
                           InstanceTooLarge,
                           NoApproximationGuarantee,
                           UndefinedRatio)
from .. metrics import METRICS, MetricKind, MetricValue
from .. utils import get_enum_cap, get_setting


logger = logging.getLogger(__name__)

GREEDY = 'greedy'
EXHAUSTIVE = 'exhaustive'


@dataclass(frozen=True)
class CoarseSolution:
    selected_sites: FrozenSet[int]
    objective: MetricValue
    method: str

    @property
    def sorted_sites(self):
        return sorted(self.selected_sites)


@dataclass(frozen=True)
class SubmodularityWitness:
    set_a: FrozenSet[int]
    set_b: FrozenSet[int]
    element_z: int
    gain_a: Fraction
    gain_b: Fraction


def _greedy_rounds(instance, func):
    selected = frozenset()
    current = func(selected, instance).value
    for round_ in range(instance.budget):
        best_site, best_gain = None, Fraction(0)
        for site_id in range(instance.num_sites):
            if site_id in selected:
                continue
            gain = func(selected | {site_id}, instance).value - current
            # strict: ties stay with the lowest id
            if gain > best_gain:
                best_site, best_gain = site_id, gain
        if best_site is None:
            logger.debug('greedy round {}: no positive marginal gain left'.format(round_))
            break
        selected = selected | {best_site}
        current += best_gain
        logger.debug('greedy round {}: site {} gain {}'.format(round_, best_site, best_gain))
    return selected


def _lazy_greedy_rounds(instance, func):
    selected = frozenset()
    current = func(selected, instance).value
    # stale gains are upper bounds of the current ones for submodular metrics
    heap = [(-(func({site_id}, instance).value - current), site_id)
            for site_id in range(instance.num_sites)]
    heapq.heapify(heap)
    for round_ in range(instance.budget):
        while heap:
            _, site_id = heapq.heappop(heap)
            gain = func(selected | {site_id}, instance).value - current
            if not heap or (-gain, site_id) <= heap[0]:
                break
            heapq.heappush(heap, (-gain, site_id))
        else:
            break
        if gain <= 0:
            logger.debug('lazy greedy round {}: no positive marginal gain left'.format(round_))
            break
        selected = selected | {site_id}
        current += gain
        logger.debug('lazy greedy round {}: site {} gain {}'.format(round_, site_id, gain))
    return selected


def greedy_select(instance: CoarseInstance, metric=MetricKind.CSIU,
                  lazy=False) -> CoarseSolution:
    """ Budgeted greedy, (1 - 1/e) of the optimum for IU and CSIU.

        Every round adds the site with the largest marginal gain, lowest
        id on ties, and stops early when nothing improves the metric.
    """
    metric = MetricKind(metric)
    if metric == MetricKind.MSIU:
        raise NoApproximationGuarantee('no approximation guarantee for msiu; '
                                       'use exhaustive')
    func = METRICS[metric]
    if lazy:
        selected = _lazy_greedy_rounds(instance, func)
    else:
        selected = _greedy_rounds(instance, func)
    objective = func(selected, instance)
    logger.info('greedy {}: selected {} objective {}'.format(
        metric.value, sorted(selected), objective.value))
    return CoarseSolution(selected, objective, GREEDY)


def exhaustive_select(instance: CoarseInstance, metric=MetricKind.CSIU,
                      cap: Optional[int] = None) -> CoarseSolution:
    """ Enumerates every selection of at most `budget` sites.
        Ties go to the lexicographically smallest sorted id tuple.
    """
    metric = MetricKind(metric)
    func = METRICS[metric]
    cap = get_enum_cap() if cap is None else cap
    m, budget = instance.num_sites, instance.budget
    count = sum(math.comb(m, k) for k in range(budget + 1))
    if count > cap:
        raise EnumerationCapExceeded('{} selections exceed the enumeration cap {}, '
                                     'use greedy instead'.format(count, cap))

    best, best_value = None, None
    for size in range(budget + 1):
        for combo in combinations(range(m), size):
            value = func(combo, instance).value
            if best is None or value > best_value or \
               (value == best_value and combo < best):
                best, best_value = combo, value
    objective = MetricValue(best_value, metric)
    logger.info('exhaustive {}: {} selections, best {} objective {}'.format(
        metric.value, count, list(best), best_value))
    return CoarseSolution(frozenset(best), objective, EXHAUSTIVE)


def find_submodularity_violation(instance: CoarseInstance, metric=MetricKind.CSIU,
                                 max_sites: Optional[int] = None
                                 ) -> Optional[SubmodularityWitness]:
    """ Searches A ⊆ B, z ∉ B with f(A ∪ {z}) - f(A) < f(B ∪ {z}) - f(B).

        Order: A by decreasing size then lexicographically, z ascending
        among the sites outside A, B as A plus extra sites (extras by size
        then lexicographically).  Returns the first violation, or None when
        there is none or the metric is undefined (an instance without
        demand).
    """
    metric = MetricKind(metric)
    func = METRICS[metric]
    m = instance.num_sites
    max_sites = get_setting('SITEFLOW_SUBMODULARITY_MAX_SITES') if max_sites is None else max_sites
    if m > max_sites:
        raise InstanceTooLarge('{} sites, submodularity check is limited to {}'.format(
            m, max_sites))

    try:
        values = [func([i for i in range(m) if mask >> i & 1], instance).value
                  for mask in range(1 << m)]
    except UndefinedRatio as e:
        logger.info('{} is undefined here, nothing to check: {}'.format(metric.value, e))
        return None
    # integer numerators on a common denominator, comparisons stay exact
    scale = math.lcm(*(v.denominator for v in values)) if values else 1
    scaled = [v.numerator * (scale // v.denominator) for v in values]

    for size_a in range(m, -1, -1):
        for a in combinations(range(m), size_a):
            mask_a = sum(1 << i for i in a)
            for z in range(m):
                if mask_a >> z & 1:
                    continue
                bit_z = 1 << z
                gain_a = scaled[mask_a | bit_z] - scaled[mask_a]
                rest = [i for i in range(m) if not (mask_a | bit_z) >> i & 1]
                for extra_size in range(1, len(rest) + 1):
                    for extra in combinations(rest, extra_size):
                        mask_b = mask_a | sum(1 << i for i in extra)
                        gain_b = scaled[mask_b | bit_z] - scaled[mask_b]
                        if gain_a < gain_b:
                            witness = SubmodularityWitness(
                                frozenset(a),
                                frozenset(a) | frozenset(extra),
                                z,
                                values[mask_a | bit_z] - values[mask_a],
                                values[mask_b | bit_z] - values[mask_b])
                            logger.info('{} is not submodular here: {}'.format(
                                metric.value, witness))
                            return witness
    return None
