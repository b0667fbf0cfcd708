"""
`siteflow` console script, Django management commands without a project:

    siteflow solve-coarse fixtures/coarse_three_locations.json --metric iu
    siteflow experiment --axis demand --seeds 0 1
"""
import os
import sys

COMMANDS = ('solve-coarse', 'solve-fine', 'generate', 'experiment')


def main(argv=None):
    argv = list(sys.argv if argv is None else argv)
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'siteflow.settings')
    if len(argv) > 1 and argv[1] in COMMANDS:
        argv[1] = argv[1].replace('-', '_')
    from django.core.management import execute_from_command_line
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
