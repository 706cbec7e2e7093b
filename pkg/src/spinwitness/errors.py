"""Exception hierarchy shared by the library and the command-line driver."""


class SpinWitnessError(Exception):
    """Base class for all errors raised by this package."""


class LatticeError(SpinWitnessError, ValueError):
    """Invalid spin length, site index, coupling list or operator dimension."""


class ResourceCapError(SpinWitnessError):
    """The Hilbert space dimension exceeds the configured cap."""


class NumericalHealthError(SpinWitnessError, ArithmeticError):
    """A numerical invariant (Hermiticity, positivity, real expectation) failed."""


class NoCrossingError(SpinWitnessError, ValueError):
    """A bisection bracket does not contain a sign change."""


class ConfigError(SpinWitnessError, ValueError):
    """A run configuration could not be parsed or validated."""
