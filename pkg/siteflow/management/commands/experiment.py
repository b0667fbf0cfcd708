from ... datagen import GenParams
from ... experiments import AXES, run_experiment
from ... utils import get_setting
from .. base import SiteflowCommand


class Command(SiteflowCommand):
    help = 'Budget, supply or demand sweep over seeded instances, one CSV per seed'

    def add_arguments(self, parser):
        parser.epilog = 'Example: ./manage.py experiment --axis budget --seeds 0 1 2 --out results/'
        parser.add_argument('--axis', required=True, choices=sorted(AXES))
        parser.add_argument('--seeds', type=int, nargs='+', required=False,
                            help="defaults to SITEFLOW_DEFAULT_SEEDS")
        parser.add_argument('--grid', type=float, nargs='+', required=False,
                            help="budgets in million USD or scale factors")
        parser.add_argument('--out', required=False,
                            help="output directory, defaults to SITEFLOW_RESULTS_DIR")
        parser.add_argument('--sites', type=int, required=False)
        parser.add_argument('--loads', type=int, required=False)
        parser.add_argument('--periods', type=int, required=False)

    def handle(self, *args, **options):
        overrides = {'n_sites': options['sites'],
                     'm_loads': options['loads'],
                     'num_periods': options['periods']}
        params = self.run_guarded(GenParams, **{k: v for k, v in overrides.items()
                                                if v is not None})
        reports = self.run_guarded(run_experiment, options['axis'], options['seeds'],
                                   options['out'] or get_setting('SITEFLOW_RESULTS_DIR'),
                                   options['grid'], params)
        failed = []
        for report in reports:
            self.stdout.write('{} {}'.format(report.path, 'ok' if report.ok else 'FAILED'))
            if not report.ok:
                failed.append('seed {}: {}'.format(report.seed, '; '.join(report.failures)))
        if failed:
            self.fail('{} sweep property checks failed: {}'.format(options['axis'],
                                                                   ' | '.join(failed)))
