from ... datagen import (CoarseGenParams,
                         GenParams,
                         coarse_from_fine,
                         generate_instance,
                         generator_metadata)
from ... serializers import dumps_instance
from .. base import SiteflowCommand


class Command(SiteflowCommand):
    help = 'Generates a seeded synthetic instance'

    def add_arguments(self, parser):
        parser.epilog = 'Example: ./manage.py generate --seed 3 --sites 6 --loads 4 --out instance.json'
        parser.add_argument('--kind', default='fine', choices=['fine', 'coarse'])
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--sites', type=int, required=False)
        parser.add_argument('--loads', type=int, required=False)
        parser.add_argument('--periods', type=int, required=False)
        parser.add_argument('--variance', type=float, nargs=6, required=False,
                            metavar='SIGMA',
                            help="site cost, site headroom, generation, line capacity, "
                                 "line cost, demand")
        parser.add_argument('--budget-fraction', type=float, required=False,
                            help="budget as a fraction of the total build cost")
        parser.add_argument('--radius', type=float, required=False,
                            help="coarse only, service radius")
        parser.add_argument('--points-budget', type=int, required=False,
                            help="coarse only, number of sites to select")
        parser.add_argument('--out', required=False,
                            help="output file, standard output when missing")

    def handle(self, *args, **options):
        overrides = {'n_sites': options['sites'],
                     'm_loads': options['loads'],
                     'num_periods': options['periods'],
                     'variance_vector': tuple(options['variance']) if options['variance'] else None,
                     'budget_fraction': options['budget_fraction']}
        overrides = {k: v for k, v in overrides.items() if v is not None}
        params = self.run_guarded(GenParams, seed=options['seed'], **overrides)
        instance = self.run_guarded(generate_instance, params)
        metadata = generator_metadata(params)
        if options['kind'] == 'coarse':
            coarse = {'radius': options['radius'], 'budget': options['points_budget']}
            coarse_params = CoarseGenParams(seed=options['seed'],
                                            **{k: v for k, v in coarse.items() if v is not None})
            instance = self.run_guarded(coarse_from_fine, instance, coarse_params)
            metadata['coarse_params'] = {'radius': coarse_params.radius,
                                         'budget': coarse_params.budget,
                                         'side': coarse_params.side,
                                         'threshold': coarse_params.threshold}
        text = dumps_instance(instance, metadata)
        if options['out']:
            with open(options['out'], 'w') as f:
                f.write(text)
        else:
            self.stdout.write(text, ending='')
