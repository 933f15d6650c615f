"""Exception hierarchy shared across the package."""


class CatalanAutomatonError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CatalanAutomatonError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UsageError(CatalanAutomatonError, ValueError):
    """Malformed input: bad digits, mismatched moduli, unparsable strings."""


class UnsupportedModulusError(CatalanAutomatonError, ValueError):
    """The requested closed form only exists for primes p >= 5."""


class ResourceError(CatalanAutomatonError):
    """A size guard would be exceeded."""


class ConsistencyError(CatalanAutomatonError):
    """An internal invariant broke. Always indicates a bug."""
