import dataclasses

from ... serializers import FINE, fine_solution_as_dict, load_instance
from ... solvers.fine import brute_force_solve, solve
from ... utils import to_centi
from .. base import SiteflowCommand


METHODS = {'bnb': solve,
           'brute-force': brute_force_solve}


class Command(SiteflowCommand):
    help = 'Chooses sites and lines of a fine instance maximizing delivered power'

    def add_arguments(self, parser):
        parser.epilog = ('Example: ./manage.py solve_fine fixtures/fine_six_by_four.json '
                         '--budget 120.00')
        parser.add_argument('instance', help="fine instance JSON file")
        parser.add_argument('--method', default='bnb', choices=sorted(METHODS),
                            help="branch and bound, or brute force on tiny instances")
        parser.add_argument('--budget', required=False,
                            help="million USD, two decimals, overrides the instance")

    def handle(self, *args, **options):
        instance = self.run_guarded(load_instance, options['instance'], FINE).instance
        if options['budget'] is not None:
            budget = self.run_guarded(to_centi, options['budget'], 'budget')
            instance = dataclasses.replace(instance, budget=budget)
        solution = self.run_guarded(METHODS[options['method']], instance)
        self.write_json(fine_solution_as_dict(solution, instance))
