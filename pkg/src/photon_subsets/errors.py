"""Exception hierarchy for photon_subsets."""


class PhotonSubsetError(Exception):
    """Base class for every error raised by this package."""


class InvalidOccupation(PhotonSubsetError, ValueError):
    pass


class TooManyPhotons(PhotonSubsetError, ValueError):
    pass


class ModeMismatch(PhotonSubsetError, ValueError):
    pass


class ModeOutOfRange(PhotonSubsetError, IndexError):
    pass


class NonHermitianState(PhotonSubsetError, ValueError):
    pass


class ZeroTrace(PhotonSubsetError, ZeroDivisionError):
    pass


class NotFixedN(PhotonSubsetError, ValueError):
    pass


class EmptyState(PhotonSubsetError, ValueError):
    pass


class BadSubsetSize(PhotonSubsetError, ValueError):
    pass


class UnbalancedIndex(PhotonSubsetError, ValueError):
    pass


class ZeroIntensity(PhotonSubsetError, ZeroDivisionError):
    pass


class DegenerateNormalization(PhotonSubsetError, ValueError):
    pass


class BadEta(PhotonSubsetError, ValueError):
    pass


class TooLarge(PhotonSubsetError, ValueError):
    pass


class NonUnitary(PhotonSubsetError, ValueError):
    pass


class DimensionCap(PhotonSubsetError, ValueError):
    pass


class NotSymmetric(PhotonSubsetError, ValueError):
    pass


class EmptyTensor(PhotonSubsetError, ValueError):
    pass


class NotPure(PhotonSubsetError, ValueError):
    pass


class WrongModeCount(PhotonSubsetError, ValueError):
    pass


class ConsistencyError(PhotonSubsetError, AssertionError):
    """Two independent routes to the same quantity disagreed."""
