"""Exception hierarchy for JCEntangle."""


class JCEntangleError(Exception):
    """Base class for every error raised by the toolkit."""


# Linear algebra

class DimensionError(JCEntangleError, ValueError):
    """Matrix shapes do not fit the requested operation."""


class NonHermitianError(JCEntangleError, ValueError):
    """A Hermitian routine received a matrix outside the Hermiticity tolerance."""


class NegativeEigenvalueError(JCEntangleError, ValueError):
    """A supposedly PSD matrix has an eigenvalue below the clamp tolerance."""


class ConvergenceError(JCEntangleError, RuntimeError):
    """The Jacobi eigensolver hit its sweep cap."""


# Field models and entropy

class DomainError(JCEntangleError, ValueError):
    """An argument lies outside the mathematical domain of a function."""


# Two-atom states

class InvalidDensityError(JCEntangleError, ValueError):
    """A matrix fails the density-matrix checks (Hermitian, trace 1, PSD)."""


class SparsityError(JCEntangleError, ValueError):
    """A density matrix has entries outside the model's sparsity pattern."""


class EmptyDistributionError(JCEntangleError, ValueError):
    """A photon distribution carries no weight."""


# Oracle

class TruncationError(JCEntangleError, ValueError):
    """The truncated Fock space is too small for the requested photon numbers."""


class OracleMismatchError(JCEntangleError):
    """Analytic and brute-force densities disagree beyond tolerance."""


# Command line

class SweepConfigError(JCEntangleError, ValueError):
    """A sweep configuration violates its invariants."""


class ConfigFileError(JCEntangleError, ValueError):
    """The key-value configuration file is unreadable or malformed."""
