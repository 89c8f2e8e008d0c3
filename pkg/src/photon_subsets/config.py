"""Package-wide numerical settings.

``PHOTON_SUBSET_TOL`` overrides the Hermiticity tolerance used when loading
and decomposing states. ``PHOTON_SUBSET_DEBUG=1`` turns on the dual-route
self checks in the photon removal kernel.
"""

import os

PRUNE_EPS = 1e-14
MAX_PHOTONS = 64
DEFAULT_HERMITIAN_TOL = 1e-12


def hermitian_tolerance() -> float:
    value = os.environ.get("PHOTON_SUBSET_TOL")
    if value is None or value == "":
        return DEFAULT_HERMITIAN_TOL
    return float(value)


def debug_checks() -> bool:
    return os.environ.get("PHOTON_SUBSET_DEBUG", "").lower() in {"1", "true", "yes", "on"}
