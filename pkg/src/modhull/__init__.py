"""modhull: exact geometry of modular hyperbolas.

Builds the point sets H_a(m) = {(x, y) : xy = a (mod m), 1 <= x, y <= m-1},
their convex closures and vertex counts, a divisor-pruned hull search that
avoids full enumeration for large moduli, conic detection by integer
linear algebra, exact quadratic-curve point counting, and batch sweep
tooling with a reproducible CSV contract.
"""

from ._version import __version__
from .conics import (
    CONIC_MONOMIALS,
    AllZeroMod,
    ConicClass,
    ConicForm,
    InfiniteFamily,
    classify_conic,
    count_conic_points_in_box,
    find_vanishing_form,
    minors_singular_mod,
    poly_roots_mod,
)
from .experiments import (
    APolicy,
    SweepRecord,
    compute_record,
    exponent_summary,
    lower_bound_census,
    records_to_csv,
    run_sweep,
    write_csv,
)
from .geometry import (
    ConvexPolygon,
    DegenerateInput,
    TooFewVertices,
    UnimodularMap,
    consecutive_block_min_area,
    contains_point,
    convex_hull,
    normalize_to_box,
    transform_polygon,
    twice_area,
)
from .hullfast import (
    PruneConfig,
    VerificationReport,
    candidate_cutoff,
    candidate_points,
    fast_hull,
    lower_left_candidates,
    verify_against_naive,
)
from .hyperbola import (
    MODULUS_CEILING,
    NEGATE,
    REFLECT_Y,
    SWAP,
    HyperbolaSpec,
    apply_symmetry,
    count_in_box,
    enumerate_points,
    format_points,
    parse_points,
    predicted_count,
    read_points_file,
    write_points_file,
)
from .ntheory import (
    FACTOR_CEILING,
    ArithmeticProfile,
    Factorization,
    NotInvertible,
    arithmetic_profile,
    batch_mod_inv,
    divisors,
    ext_gcd,
    factorize,
    is_prime,
    mod_inv,
)
