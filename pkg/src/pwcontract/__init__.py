"""Piecewise increasing contractions of the interval: exact maps, certified
cycles, rotation numbers of contracted rotations and singular connections."""

from .errors import *  # noqa: F401,F403
from .mapcore import (
    Branch,
    MapSpec,
    PwMap,
    SingularSet,
    branch_index,
    build_map,
    count_itineraries,
    evaluate,
    is_Z_independent,
    itinerary_of,
    offset_polynomial,
    singular_points,
)
from .orbits import (
    BoundReport,
    Budget,
    CertifiedCycle,
    Classification,
    OrbitRecord,
    Verdict,
    bound_report,
    certify_cycle,
    classify_map,
    find_periodic_orbits,
    iterate_orbit,
    maximal_itinerary_interval,
)
from .rotation import (
    ContractedRotationSpec,
    RotationResult,
    S_coefficient,
    Tongue,
    contracted_rotation,
    rotation_number,
    tongue_atlas,
    tongue_interval,
)
from .scalar import Mode, parse_scalar
from .singular import (
    Connection,
    ConnectionPolynomial,
    RootBracket,
    connection_polynomial,
    detect_connection,
    isolate_roots,
    v_set,
)

__version__ = "0.1.0"
