""" Error hierarchy. Every error carries the category code the CLI exits with. """


class ByzsimError(ValueError):
    """ Parent class of all library errors. """
    category = "runtime"
    exit_code = 5


class ConfigurationError(ByzsimError):
    category = "configuration"
    exit_code = 2


class AttackerMajorityError(ConfigurationError):
    """ The corrupted workers already form a majority, so no budget applies. """


class FormatError(ByzsimError):
    category = "format"
    exit_code = 3

    def __init__(self, message, path=None, offset=None):
        self.path = path
        self.offset = offset
        if offset is not None:
            message = "%s (byte offset %d)" % (message, offset)
        if path is not None:
            message = "%s: %s" % (path, message)
        super().__init__(message)


class InsufficientDataError(ByzsimError):
    category = "data"
    exit_code = 4


class ShapeError(ByzsimError):
    category = "data"
    exit_code = 4


class DomainError(ByzsimError):
    category = "data"
    exit_code = 4


class RoundError(ByzsimError):
    """ Wraps an error raised inside a simulation round. """

    def __init__(self, round_index, error):
        self.round = round_index
        self.error = error
        self.category = getattr(error, "category", "runtime")
        self.exit_code = getattr(error, "exit_code", 5)
        super().__init__("Round %d: %s: %s" % (round_index, error.__class__.__name__, error))
