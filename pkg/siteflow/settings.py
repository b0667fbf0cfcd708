"""
Default siteflow settings.

A project imports them and overrides what it needs:

    from siteflow.settings import *

This module is also a complete settings module on its own, it is the
default DJANGO_SETTINGS_MODULE of the `siteflow` console script.
"""
import os

SECRET_KEY = os.environ.get('SITEFLOW_SECRET_KEY', 'siteflow-not-a-secret')
DEBUG = False

INSTALLED_APPS = ['siteflow']

# exhaustive coarse search, number of subsets
SITEFLOW_ENUM_CAP = int(os.environ.get('SITEFLOW_ENUM_CAP', 10 ** 6))

# find_submodularity_violation enumerates every (A, B, z) triple
SITEFLOW_SUBMODULARITY_MAX_SITES = 10

# brute force fine solver, testing oracle only
SITEFLOW_BRUTE_FORCE_MAX_SITES = 5
SITEFLOW_BRUTE_FORCE_MAX_LOADS = 4

# fine branch and bound: per site line subsets are enumerated up to this
# many loads, the budget dynamic program has at most this many steps
SITEFLOW_SEPARABLE_MAX_LOADS = 12
SITEFLOW_SEPARABLE_BUDGET_STEPS = 4096

# experiment command
SITEFLOW_DEFAULT_SEEDS = list(range(10))
SITEFLOW_BUDGET_GRID_POINTS = 11
SITEFLOW_SUPPLY_GRID = [1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0]
SITEFLOW_DEMAND_GRID = [1.0, 1.25, 1.5, 2.0, 2.5, 3.0]
# percentage points, scaled data is rounded to 0.01 MW
SITEFLOW_PERCENT_TOLERANCE = 0.01
# experiment output directory when --out is not given
SITEFLOW_RESULTS_DIR = 'results'

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_TZ = True

# LOGGING
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'default': {
            'format': '%(asctime)s %(name)-12s %(levelname)-8s %(message)s',
        },
        'detailed': {
            'format': '[%(asctime)s] %(message)s [(%(levelname)s)]'
        },
    },
    'handlers': {
        'console': {
            'formatter': 'detailed',
            'level': 'INFO',
            'class': 'logging.StreamHandler',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'ERROR',
            'propagate': False,
        },
        'siteflow': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
    }
}
