"""
Benefit metrics of a site selection in the coarse model.

IU    covered demand units over all the sub-intervals, divided by the
      total demand units.
CSIU  sum of the per sub-interval coverage ratios.
MSIU  worst per sub-interval coverage ratio.

Sub-intervals without demand neither reward nor punish a selection: they
are left out of the CSIU sum and of the MSIU minimum.
"""
import enum
import logging

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional

from . coverage import CoarseInstance
from . exceptions import UndefinedRatio


logger = logging.getLogger(__name__)


class MetricKind(str, enum.Enum):
    IU = 'iu'
    CSIU = 'csiu'
    MSIU = 'msiu'


@dataclass(frozen=True, order=True)
class MetricValue:
    value: Fraction
    kind: MetricKind

    def __float__(self):
        return float(self.value)

    def rounded(self, digits=2):
        return round(float(self.value), digits)


def covered_demand(selection: Iterable[int], instance: CoarseInstance):
    """ |I(SA(L'), T_k)| for every sub-interval """
    mask = instance.selection_mask(selection)
    return tuple(int(v) for v in instance.demand_matrix[mask].sum(axis=0))


def subinterval_ratios(selection: Iterable[int],
                       instance: CoarseInstance) -> List[Optional[Fraction]]:
    """ per sub-interval coverage, None where the sub-interval has no demand """
    covered = covered_demand(selection, instance)
    return [Fraction(met, total) if total else None
            for met, total in zip(covered, instance.total_demand)]


def interval_utility(selection: Iterable[int], instance: CoarseInstance) -> MetricValue:
    total = sum(instance.total_demand)
    if not total:
        raise UndefinedRatio('undefined ratio: no demand over the whole interval')
    met = sum(covered_demand(selection, instance))
    return MetricValue(Fraction(met, total), MetricKind.IU)


def cumulative_subinterval_utility(selection: Iterable[int],
                                   instance: CoarseInstance) -> MetricValue:
    ratios = [r for r in subinterval_ratios(selection, instance) if r is not None]
    return MetricValue(sum(ratios, Fraction(0)), MetricKind.CSIU)


def minimum_subinterval_utility(selection: Iterable[int],
                                instance: CoarseInstance) -> MetricValue:
    ratios = [r for r in subinterval_ratios(selection, instance) if r is not None]
    if not ratios:
        raise UndefinedRatio('undefined ratio: every sub-interval is without demand')
    return MetricValue(min(ratios), MetricKind.MSIU)


METRICS = {MetricKind.IU: interval_utility,
           MetricKind.CSIU: cumulative_subinterval_utility,
           MetricKind.MSIU: minimum_subinterval_utility}


def evaluate(kind, selection: Iterable[int], instance: CoarseInstance) -> MetricValue:
    func = METRICS.get(MetricKind(kind))
    return func(selection, instance)
