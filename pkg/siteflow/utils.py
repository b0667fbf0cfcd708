import logging
import os

from decimal import Decimal, InvalidOperation

from django.conf import settings

from . import settings as siteflow_defaults
from . exceptions import InvalidInstance


logger = logging.getLogger(__name__)

CENTI = Decimal('0.01')


def get_setting(name):
    """ Returns a SITEFLOW_* setting from the Django project, falling back
        to siteflow.settings when the project doesn't define it or Django
        is not configured at all (plain library usage)
    """
    default = getattr(siteflow_defaults, name)
    if not settings.configured:
        return default
    return getattr(settings, name, default)


def get_enum_cap():
    env_cap = os.environ.get('SITEFLOW_ENUM_CAP')
    if env_cap:
        try:
            return int(env_cap)
        except ValueError:
            logger.error('SITEFLOW_ENUM_CAP is not an integer: {}'.format(env_cap))
    return int(get_setting('SITEFLOW_ENUM_CAP'))


def to_centi(value, field='value'):
    """ MW or million-USD quantity -> integer count of 0.01 units.
        Accepts numbers and decimal strings with at most two decimals.
    """
    if isinstance(value, bool):
        raise InvalidInstance('{} is not a number: {}'.format(field, value))
    try:
        amount = Decimal(str(value))
    except (InvalidOperation, ValueError):
        raise InvalidInstance('{} is not a number: {}'.format(field, value))
    if not amount.is_finite():
        raise InvalidInstance('{} is not finite: {}'.format(field, value))
    if amount != amount.quantize(CENTI):
        raise InvalidInstance('{} has more than two decimals: {}'.format(field, value))
    if amount < 0:
        raise InvalidInstance('{} must be nonnegative: {}'.format(field, value))
    return int(amount * 100)


def format_centi(centi):
    """ integer count of 0.01 units -> '1234.56' """
    return str((Decimal(int(centi)) * CENTI).quantize(CENTI))


def centi_from_float(value):
    """ rounds a float quantity to the nearest 0.01 unit """
    return int((Decimal(repr(float(value))) * 100).to_integral_value())


def scale_centi(centi, factor):
    """ factor * quantity, rounded half even to the nearest 0.01 unit """
    scaled = Decimal(int(centi)) * Decimal(repr(float(factor)))
    return int(scaled.to_integral_value())
