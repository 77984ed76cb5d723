"""Exception types shared across the package."""


class SpmError(Exception):
    """Base class for all package-specific errors."""


class InvalidInput(SpmError):
    """A constructor argument or instance description is rejected."""


class ImproperSubmoduleError(SpmError):
    """A primality predicate was asked about N = M or about the zero module;
    the definitions only apply to proper submodules."""
