"""
Example project running the siteflow commands.

    ./manage.py solve_coarse ../fixtures/coarse_three_locations.json --metric msiu --method exhaustive
    ./manage.py experiment --axis budget --out results/
"""
import os

from siteflow.settings import *
from .settingslocal import *

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

INSTALLED_APPS = ['siteflow']

# sweep results of ./manage.py experiment when --out is not given
SITEFLOW_RESULTS_DIR = os.path.join(BASE_DIR, 'results')
