"""Exception hierarchy shared by every module."""


class LatticeError(Exception):
    """Base class for all errors raised by cilattice."""


class NotASublattice(LatticeError):
    pass


class InfiniteIndex(LatticeError):
    pass


class NotPositive(LatticeError):
    """The lattice meets the positive orthant outside the origin.

    ``witness`` holds a nonzero element of L in N^m when one was computed.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotStronglyConvex(LatticeError):
    pass


class NotAdmissible(LatticeError):
    pass


class BadPartition(LatticeError):
    pass


class PreconditionViolated(LatticeError):
    pass


class ZeroGluingVector(LatticeError):
    pass


class ZeroVector(LatticeError):
    pass


class MalformedCertificate(LatticeError):
    pass


class InvalidCertificate(LatticeError):
    pass


class InputError(LatticeError):
    """Unparseable or inconsistent instance, matrix or certificate file."""
