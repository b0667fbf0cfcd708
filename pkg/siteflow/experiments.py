"""
Budget, supply and demand sweeps over seeded instances, one CSV per seed.

Expected shapes of the curves, checked after every sweep:
  budget  demand met is nondecreasing and the last budget (the total
          build cost) reaches the best value of the curve;
  supply  delivered flow is nondecreasing, the curve may end early when
          every site runs at its maximum capacity;
  demand  demand met is nonincreasing.
"""
import dataclasses
import logging
import os
import time

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from . datagen import GenParams, SweepAxis, generate_instance, sweep
from . exceptions import InstanceTooLarge, InvalidInstance
from . network import FineInstance
from . solvers.fine import solve
from . utils import get_setting


logger = logging.getLogger(__name__)

AXES = {'budget': SweepAxis.BUDGET,
        'supply': SweepAxis.SUPPLY,
        'demand': SweepAxis.DEMAND}

COLUMNS = ['objective_F', 'demand_met_percent', 'total_cost', 'solve_time_ms']


@dataclass
class SeedReport:
    seed: int
    path: str
    frame: pd.DataFrame
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures


def axis_from_name(name) -> SweepAxis:
    if name in AXES:
        return AXES[name]
    return SweepAxis(name)


def budget_grid(instance: FineInstance, points: Optional[int] = None):
    """ evenly spaced budgets in million USD, from 0 to the total build cost """
    points = points or get_setting('SITEFLOW_BUDGET_GRID_POINTS')
    if points < 2:
        raise ValueError('a budget grid needs at least 2 points')
    centi = np.rint(np.linspace(0, instance.total_cost, points))
    return [float(v) / 100 for v in centi]


def default_grid(axis, instance: FineInstance):
    axis = axis_from_name(axis)
    if axis == SweepAxis.BUDGET:
        return budget_grid(instance)
    if axis == SweepAxis.SUPPLY:
        return list(get_setting('SITEFLOW_SUPPLY_GRID'))
    return list(get_setting('SITEFLOW_DEMAND_GRID'))


class TimedSolver:
    """ solve() recording wall time per call, in milliseconds """

    def __init__(self, solver=solve):
        self.solver = solver
        self.times = []

    def __call__(self, instance):
        start = time.perf_counter()
        solution = self.solver(instance)
        self.times.append((time.perf_counter() - start) * 1000)
        return solution


def sweep_frame(axis, results, times: Sequence[float]) -> pd.DataFrame:
    axis = axis_from_name(axis)
    rows = [{axis.value: value,
             'objective_F': solution.objective / 100,
             'demand_met_percent': solution.demand_met_percent,
             'total_cost': solution.total_cost / 100,
             'solve_time_ms': elapsed}
            for (value, solution), elapsed in zip(results, times)]
    return pd.DataFrame(rows, columns=[axis.value] + COLUMNS)


def check_properties(axis, frame: pd.DataFrame, tolerance: Optional[float] = None):
    """ messages describing every broken curve property, empty when all hold """
    axis = axis_from_name(axis)
    tolerance = get_setting('SITEFLOW_PERCENT_TOLERANCE') if tolerance is None else tolerance
    failures = []
    percent = frame['demand_met_percent'].to_numpy()
    if len(percent) and (percent.min() < 0 or percent.max() > 100 + tolerance):
        failures.append('demand met outside [0, 100]')
    steps = np.diff(percent)
    if axis == SweepAxis.BUDGET:
        if (steps < -tolerance).any():
            failures.append('demand met decreases with a larger budget')
        if len(percent) and percent[-1] < percent.max() - tolerance:
            failures.append('the total build cost does not reach the best demand met')
    elif axis == SweepAxis.SUPPLY:
        # exact optimum of monotonically scaled capacities
        if (np.diff(frame['objective_F'].to_numpy()) < 0).any():
            failures.append('delivered flow decreases with more supply')
    else:
        if (steps > tolerance).any():
            failures.append('demand met increases with more demand')
        if (np.diff(frame['objective_F'].to_numpy()) < 0).any():
            failures.append('delivered flow decreases with more demand')
    return failures


def run_seed(axis, seed, out_dir, grid=None, params: Optional[GenParams] = None,
             solver=solve) -> SeedReport:
    axis = axis_from_name(axis)
    params = dataclasses.replace(params or GenParams(), seed=seed)
    instance = generate_instance(params)
    grid = list(grid) if grid else default_grid(axis, instance)
    timed = TimedSolver(solver)
    frame = sweep_frame(axis, sweep(instance, axis, grid, solver=timed), timed.times)
    path = os.path.join(out_dir, '{}_seed{}.csv'.format(axis.value, seed))
    frame.to_csv(path, index=False, float_format='%.2f')
    failures = check_properties(axis, frame)
    for failure in failures:
        logger.error('{} sweep, seed {}: {}'.format(axis.value, seed, failure))
    logger.info('{} sweep, seed {}: {} rows written to {}'.format(
        axis.value, seed, len(frame), path))
    return SeedReport(seed, path, frame, failures)


def run_experiment(axis, seeds=None, out_dir='.', grid=None,
                   params: Optional[GenParams] = None, solver=solve) -> List[SeedReport]:
    axis = axis_from_name(axis)
    seeds = list(get_setting('SITEFLOW_DEFAULT_SEEDS') if seeds is None else seeds)
    if not seeds:
        raise ValueError('at least one seed is needed')
    os.makedirs(out_dir, exist_ok=True)
    reports = []
    for seed in seeds:
        try:
            reports.append(run_seed(axis, seed, out_dir, grid, params, solver))
        except (InvalidInstance, InstanceTooLarge, ValueError) as e:
            raise e.__class__('{} sweep, seed {}: {}'.format(
                axis.value, seed, e)) from e
    return reports
