class InvalidInstance(Exception):
    pass


class MalformedSelection(Exception):
    pass


class UndefinedRatio(Exception):
    pass


class EnumerationCapExceeded(Exception):
    pass


class NoApproximationGuarantee(Exception):
    pass


class InvalidDecision(Exception):
    pass


class InstanceTooLarge(Exception):
    pass
