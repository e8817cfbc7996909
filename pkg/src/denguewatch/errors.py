"""Exception types shared across the service."""


class SurveillanceError(Exception):
    """Base class for all service-level errors."""


class ParseError(SurveillanceError):
    """A structured config document could not be parsed."""

    def __init__(self, message, line_no=None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class DuplicateName(SurveillanceError):
    def __init__(self, name, level):
        self.name = name
        self.level = level
        super().__init__(f"duplicate {level} name: {name!r}")


class EmptyLevel(SurveillanceError):
    def __init__(self, level):
        self.level = level
        super().__init__(f"no {level} entries defined")


class UnknownDivision(SurveillanceError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown GN division: {name!r}")


class AmbiguousDivision(SurveillanceError):
    def __init__(self, name, districts):
        self.name = name
        self.districts = tuple(districts)
        super().__init__(
            f"GN division {name!r} exists in districts {', '.join(self.districts)}; "
            "a district hint is required"
        )


class ValidationError(SurveillanceError):
    """A case or travel form failed validation; nothing was persisted."""

    def __init__(self, field, reason):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class UnknownVocabulary(SurveillanceError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown suggestion source: {name!r}")


class NotFound(SurveillanceError):
    def __init__(self, what, key):
        self.what = what
        self.key = key
        super().__init__(f"{what} not found: {key!r}")


class IllegalTransition(SurveillanceError):
    def __init__(self, case_id, current, attempted):
        self.case_id = case_id
        self.current = current
        self.attempted = attempted
        super().__init__(
            f"case {case_id}: cannot move from {current} to {attempted}"
        )


class ScopeViolation(SurveillanceError):
    pass


class WrongOfficer(SurveillanceError):
    def __init__(self, order_id, expected, actual):
        self.order_id = order_id
        super().__init__(
            f"work order {order_id} is assigned to {expected}, not {actual}"
        )


class TooManyDays(SurveillanceError):
    def __init__(self, count):
        self.count = count
        super().__init__(f"travel history has {count} entries; at most 14 allowed")


class DuplicateDayIndex(SurveillanceError):
    def __init__(self, day_index):
        self.day_index = day_index
        super().__init__(f"duplicate travel-history day index: {day_index}")


class FutureWeek(SurveillanceError):
    def __init__(self, week):
        self.week = week
        super().__init__(f"week {week[0]}-W{week[1]:02d} is in the future")


class CorruptLog(SurveillanceError):
    """The append-only event log failed integrity checks on load."""

    def __init__(self, message, line_no, byte_offset):
        self.line_no = line_no
        self.byte_offset = byte_offset
        super().__init__(
            f"event log corrupt at line {line_no} (byte {byte_offset}): {message}"
        )


class ConfigError(SurveillanceError):
    pass


class TransportError(SurveillanceError):
    """A notification transport failed to deliver a message."""
