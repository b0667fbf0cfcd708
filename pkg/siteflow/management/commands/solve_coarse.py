import dataclasses

from ... metrics import MetricKind
from ... serializers import COARSE, coarse_solution_as_dict, load_instance
from ... solvers.coarse import (EXHAUSTIVE,
                                GREEDY,
                                exhaustive_select,
                                find_submodularity_violation,
                                greedy_select)
from .. base import SiteflowCommand


class Command(SiteflowCommand):
    help = 'Selects candidate sites of a coarse instance'

    def add_arguments(self, parser):
        parser.epilog = ('Example: ./manage.py solve_coarse fixtures/coarse_three_locations.json '
                         '--metric csiu --method greedy')
        parser.add_argument('instance', help="coarse instance JSON file")
        parser.add_argument('--metric', default=MetricKind.CSIU.value,
                            choices=[k.value for k in MetricKind],
                            help="benefit metric")
        parser.add_argument('--method', default=GREEDY, choices=[GREEDY, EXHAUSTIVE],
                            help="greedy (not for msiu) or exhaustive enumeration")
        parser.add_argument('--budget', type=int, required=False,
                            help="number of sites to select, overrides the instance")
        parser.add_argument('--lazy', required=False, action="store_true",
                            help="lazy greedy, same selection with fewer evaluations")
        parser.add_argument('--submodularity', required=False, action="store_true",
                            help="also search a submodularity violation of the metric")

    def handle(self, *args, **options):
        instance = self.run_guarded(load_instance, options['instance'], COARSE).instance
        if options['budget'] is not None:
            instance = self.run_guarded(dataclasses.replace, instance, budget=options['budget'])
        metric = MetricKind(options['metric'])
        if options['method'] == GREEDY:
            solution = self.run_guarded(greedy_select, instance, metric, lazy=options['lazy'])
        else:
            solution = self.run_guarded(exhaustive_select, instance, metric)
        report = self.run_guarded(coarse_solution_as_dict, solution, instance)
        if options['submodularity']:
            witness = self.run_guarded(find_submodularity_violation, instance, metric)
            report['submodularity_violation'] = witness and {
                'set_a': sorted(witness.set_a),
                'set_b': sorted(witness.set_b),
                'element_z': witness.element_z,
                'gain_a': str(witness.gain_a),
                'gain_b': str(witness.gain_b)}
        self.write_json(report)
