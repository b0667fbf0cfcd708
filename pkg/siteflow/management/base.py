import logging

from django.core.management.base import BaseCommand, CommandError

from .. exceptions import (EnumerationCapExceeded,
                           InstanceTooLarge,
                           InvalidDecision,
                           InvalidInstance,
                           MalformedSelection,
                           NoApproximationGuarantee,
                           UndefinedRatio)
from .. serializers import to_json


logger = logging.getLogger(__name__)

SITEFLOW_ERRORS = (EnumerationCapExceeded,
                   InstanceTooLarge,
                   InvalidDecision,
                   InvalidInstance,
                   MalformedSelection,
                   NoApproximationGuarantee,
                   UndefinedRatio,
                   ValueError)


class SiteflowCommand(BaseCommand):
    """ siteflow errors are logged and turned into CommandError (exit 1) """

    def fail(self, message):
        logger.error(message)
        raise CommandError(message)

    def write_json(self, data):
        self.stdout.write(to_json(data), ending='')

    def run_guarded(self, func, *args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SITEFLOW_ERRORS as e:
            self.fail('{}: {}'.format(e.__class__.__name__, e))
