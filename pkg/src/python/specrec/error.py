class SpecRecError(Exception):
    """Base class for SpecRecErrors."""
    pass

class ConfigError(SpecRecError):
    """Unable to find or parse the config file."""
    pass

class InputError(SpecRecError):
    """Malformed caller data: unknown vertex, overlapping ambients, etc."""
    pass

class ParseError(InputError):
    """Input document failed schema validation."""
    pass

class PreconditionError(SpecRecError):
    """Well-formed data that violates an operation's contract."""
    pass
