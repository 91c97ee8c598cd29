class LensringError(Exception):
    pass


class CapExceeded(LensringError):
    """A configurable size cap would be exceeded."""


class ConfigurationDefect(LensringError):
    """An internal consistency check failed; this is a bug, not bad input."""
