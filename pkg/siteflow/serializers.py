"""
JSON instance files and solution reports.

    {"format_version": 1,
     "kind": "coarse" | "fine",
     "description": "...",
     "generator_metadata": null | {"name": ..., "seed": ..., "params": {...}},
     "payload": {...}}

MW and million-USD values are strings with exactly two decimals
("250.50"), coordinates and radius are plain JSON numbers.  The canonical
form is json.dumps(indent=2, sort_keys=True) plus a trailing newline.
"""
import json
import logging

from dataclasses import dataclass
from typing import Optional, Union

from . coverage import CandidateSite, CoarseInstance, DemandPoint, Point2D
from . exceptions import InvalidInstance
from . metrics import MetricKind, subinterval_ratios
from . network import FineInstance, FineSite, Line, Load
from . utils import format_centi, to_centi


logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
COARSE = 'coarse'
FINE = 'fine'


@dataclass(frozen=True)
class InstanceFile:
    kind: str
    instance: Union[CoarseInstance, FineInstance]
    generator_metadata: Optional[dict] = None
    format_version: int = FORMAT_VERSION


def to_json(data):
    return json.dumps(data, indent=2, sort_keys=True) + '\n'


def _number(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInstance('{} is not a number: {!r}'.format(field, value))
    return float(value)


def _integer(value, field):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInstance('{} is not an integer: {!r}'.format(field, value))
    return value


def _coarse_payload(instance: CoarseInstance):
    return {'radius': instance.radius,
            'num_subintervals': instance.num_subintervals,
            'budget': instance.budget,
            'sites': [{'id': s.id, 'x': s.location.x, 'y': s.location.y}
                      for s in instance.sites],
            'demand_points': [{'id': p.id, 'x': p.location.x, 'y': p.location.y,
                               'demand': list(p.demand_by_subinterval)}
                              for p in instance.demand_points]}


def _fine_payload(instance: FineInstance):
    sites = []
    for site in instance.sites:
        entry = {'id': site.id,
                 'build_cost': format_centi(site.build_cost),
                 'capacity_by_period': [format_centi(c) for c in site.capacity_by_period]}
        if site.max_capacity is not None:
            entry['max_capacity'] = format_centi(site.max_capacity)
        sites.append(entry)
    return {'num_periods': instance.num_periods,
            'budget': format_centi(instance.budget),
            'sites': sites,
            'loads': [{'id': load.id,
                       'demand_by_period': [format_centi(d) for d in load.demand_by_period]}
                      for load in instance.loads],
            'lines': [[{'build_cost': format_centi(line.build_cost),
                        'capacity': format_centi(line.capacity)} for line in row]
                      for row in instance.lines]}


def instance_as_dict(instance, generator_metadata=None):
    if isinstance(instance, CoarseInstance):
        kind, payload = COARSE, _coarse_payload(instance)
    elif isinstance(instance, FineInstance):
        kind, payload = FINE, _fine_payload(instance)
    else:
        raise InvalidInstance('not an instance: {!r}'.format(instance))
    return {'format_version': FORMAT_VERSION,
            'kind': kind,
            'description': instance.description,
            'generator_metadata': generator_metadata,
            'payload': payload}


def dumps_instance(instance, generator_metadata=None):
    return to_json(instance_as_dict(instance, generator_metadata))


def _coarse_from_payload(payload, description):
    sites = tuple(CandidateSite(_integer(s['id'], 'site id'),
                                Point2D(_number(s['x'], 'site x'), _number(s['y'], 'site y')))
                  for s in payload['sites'])
    points = tuple(DemandPoint(_integer(p['id'], 'demand point id'),
                               Point2D(_number(p['x'], 'demand point x'),
                                       _number(p['y'], 'demand point y')),
                               tuple(_integer(d, 'demand') for d in p['demand']))
                   for p in payload['demand_points'])
    return CoarseInstance(sites, points,
                          _number(payload['radius'], 'radius'),
                          _integer(payload['num_subintervals'], 'num_subintervals'),
                          _integer(payload['budget'], 'budget'),
                          description=description)


def _fine_from_payload(payload, description):
    sites = []
    for s in payload['sites']:
        max_capacity = s.get('max_capacity')
        sites.append(FineSite(
            _integer(s['id'], 'site id'),
            to_centi(s['build_cost'], 'site build_cost'),
            tuple(to_centi(c, 'site capacity') for c in s['capacity_by_period']),
            None if max_capacity is None else to_centi(max_capacity, 'site max_capacity')))
    loads = tuple(Load(_integer(ld['id'], 'load id'),
                       tuple(to_centi(d, 'load demand') for d in ld['demand_by_period']))
                  for ld in payload['loads'])
    lines = tuple(tuple(Line(to_centi(line['build_cost'], 'line build_cost'),
                             to_centi(line['capacity'], 'line capacity'))
                        for line in row)
                  for row in payload['lines'])
    return FineInstance(tuple(sites), loads, lines,
                        to_centi(payload['budget'], 'budget'),
                        _integer(payload['num_periods'], 'num_periods'),
                        description=description)


LOADERS = {COARSE: _coarse_from_payload,
           FINE: _fine_from_payload}


def instance_from_dict(data, kind=None) -> InstanceFile:
    if not isinstance(data, dict):
        raise InvalidInstance('an instance file is a JSON object')
    version = data.get('format_version')
    if version != FORMAT_VERSION:
        raise InvalidInstance('unsupported format_version {!r}, expected {}'.format(
            version, FORMAT_VERSION))
    found = data.get('kind')
    if found not in LOADERS:
        raise InvalidInstance('unknown instance kind {!r}'.format(found))
    if kind and found != kind:
        raise InvalidInstance('expected a {} instance, found {}'.format(kind, found))
    description = data.get('description') or ''
    try:
        instance = LOADERS[found](data['payload'], description)
    except KeyError as e:
        raise InvalidInstance('missing field {}'.format(e))
    except (TypeError, AttributeError) as e:
        raise InvalidInstance('malformed {} instance: {}'.format(found, e))
    return InstanceFile(found, instance, data.get('generator_metadata'), version)


def loads_instance(text, kind=None) -> InstanceFile:
    try:
        data = json.loads(text)
    except ValueError as e:
        raise InvalidInstance('not a valid JSON document: {}'.format(e))
    return instance_from_dict(data, kind)


def load_instance(path, kind=None) -> InstanceFile:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise InvalidInstance('cannot read {}: {}'.format(path, e))
    instance_file = loads_instance(text, kind)
    logger.debug('loaded {} instance from {}'.format(instance_file.kind, path))
    return instance_file


def _ratio(value):
    if value is None:
        return None
    return {'exact': str(value), 'rounded': '{:.2f}'.format(float(value))}


def coarse_solution_as_dict(solution, instance: CoarseInstance):
    selection = solution.sorted_sites
    return {'kind': COARSE,
            'metric': MetricKind(solution.objective.kind).value,
            'method': solution.method,
            'budget': instance.budget,
            'selected_sites': selection,
            'objective': _ratio(solution.objective.value),
            'subinterval_ratios': [_ratio(r) for r in subinterval_ratios(selection, instance)]}


def _optional_centi(value):
    return None if value is None else format_centi(value)


def fine_solution_as_dict(solution, instance: FineInstance):
    decision = solution.decision
    line_flows = []
    for period, result in enumerate(solution.flow_results):
        for i, j in decision.built_lines:
            arc = instance.num_sites + i * instance.num_loads + j
            line_flows.append({'period': period, 'site': i, 'load': j,
                               'flow': format_centi(result.arc_flows[arc])})
    stats = solution.search_stats
    return {'kind': FINE,
            'method': solution.method,
            'budget': format_centi(instance.budget),
            'total_cost': format_centi(solution.total_cost),
            'built_sites': decision.built_sites,
            'built_lines': [list(ij) for ij in decision.built_lines],
            'flow_by_period': [format_centi(f) for f in solution.flow_by_period],
            'objective_F': format_centi(solution.objective),
            'total_demand': format_centi(instance.total_demand),
            'demand_met_percent': '{:.2f}'.format(solution.demand_met_percent),
            'line_flows': line_flows,
            'search_stats': {'nodes_explored': stats.nodes_explored,
                             'nodes_pruned': stats.nodes_pruned,
                             'warm_start_objective': _optional_centi(stats.warm_start_objective),
                             'root_bound': _optional_centi(stats.root_bound)}}
