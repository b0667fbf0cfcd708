"""
Geometric instances of the coarse site selection problem.

A candidate site serves every demand point within radius R of it, the
boundary included.  Distances are planar euclidean, in kilometers.
"""
import logging
import math

from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, Tuple

import numpy as np

from . exceptions import InvalidInstance, MalformedSelection


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidInstance('coordinates must be finite: ({}, {})'.format(self.x, self.y))


@dataclass(frozen=True)
class DemandPoint:
    id: int
    location: Point2D
    demand_by_subinterval: Tuple[int, ...]

    def __post_init__(self):
        for unit in self.demand_by_subinterval:
            if unit not in (0, 1):
                raise InvalidInstance('demand point {} has a non unit demand: {}'.format(
                    self.id, self.demand_by_subinterval))


@dataclass(frozen=True)
class CandidateSite:
    id: int
    location: Point2D


@dataclass(frozen=True)
class CoarseInstance:
    sites: Tuple[CandidateSite, ...]
    demand_points: Tuple[DemandPoint, ...]
    radius: float
    num_subintervals: int
    budget: int
    description: str = field(default='', compare=False)

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidInstance('radius must be positive, got {}'.format(self.radius))
        if self.num_subintervals < 1:
            raise InvalidInstance('at least one sub-interval is needed')
        if not 0 <= self.budget <= len(self.sites):
            raise InvalidInstance('budget must be in [0, {}], got {}'.format(
                len(self.sites), self.budget))
        if [s.id for s in self.sites] != list(range(len(self.sites))):
            raise InvalidInstance('site ids must be unique and contiguous from 0')
        if [p.id for p in self.demand_points] != list(range(len(self.demand_points))):
            raise InvalidInstance('demand point ids must be unique and contiguous from 0')
        for point in self.demand_points:
            if len(point.demand_by_subinterval) != self.num_subintervals:
                raise InvalidInstance('demand point {} has {} sub-intervals, expected {}'.format(
                    point.id, len(point.demand_by_subinterval), self.num_subintervals))

    @property
    def num_sites(self):
        return len(self.sites)

    @cached_property
    def demand_matrix(self):
        """ n x r array of unit demands """
        if not self.demand_points:
            return np.zeros((0, self.num_subintervals), dtype=np.int64)
        return np.array([p.demand_by_subinterval for p in self.demand_points],
                        dtype=np.int64)

    @cached_property
    def total_demand(self):
        """ |I(A, T_k)| for every sub-interval """
        return tuple(int(v) for v in self.demand_matrix.sum(axis=0))

    @cached_property
    def coverage_masks(self):
        """ m x n boolean array, True where the site serves the point """
        if not self.sites or not self.demand_points:
            return np.zeros((len(self.sites), len(self.demand_points)), dtype=bool)
        sites = np.array([(s.location.x, s.location.y) for s in self.sites], dtype=float)
        points = np.array([(p.location.x, p.location.y) for p in self.demand_points],
                          dtype=float)
        delta = sites[:, np.newaxis, :] - points[np.newaxis, :, :]
        # squared distances keep integer layouts exact on the boundary
        return (delta ** 2).sum(axis=2) <= self.radius ** 2

    @cached_property
    def coverage_sets(self):
        return tuple(frozenset(int(i) for i in np.flatnonzero(row))
                     for row in self.coverage_masks)

    def check_selection(self, selection: Iterable[int]) -> FrozenSet[int]:
        selection = frozenset(selection)
        unknown = sorted(i for i in selection
                         if not isinstance(i, (int, np.integer)) or not 0 <= i < self.num_sites)
        if unknown:
            raise MalformedSelection('unknown site ids {} (instance has {} sites)'.format(
                unknown, self.num_sites))
        return frozenset(int(i) for i in selection)

    def selection_mask(self, selection: Iterable[int]):
        """ boolean mask over demand points served by the selection """
        selection = self.check_selection(selection)
        if not selection:
            return np.zeros(len(self.demand_points), dtype=bool)
        return self.coverage_masks[sorted(selection)].any(axis=0)


def coverage_set(site: CandidateSite, instance: CoarseInstance) -> FrozenSet[int]:
    """ SA(L_i): ids of the demand points within distance R of the site """
    if not 0 <= site.id < instance.num_sites or instance.sites[site.id] != site:
        raise MalformedSelection('site {} does not belong to the instance'.format(site))
    return instance.coverage_sets[site.id]


def service_area_union(selection: Iterable[int], instance: CoarseInstance) -> FrozenSet[int]:
    """ SA(L'): union of the service areas of the selected sites """
    selection = instance.check_selection(selection)
    covered = set()
    for site_id in sorted(selection):
        covered |= instance.coverage_sets[site_id]
    return frozenset(covered)
