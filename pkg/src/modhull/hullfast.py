"""Hull of H_a(m) from divisor-pruned candidates, sublinear in m for large
moduli: a hull vertex near the lower-left corner has a small product
x*y = a + m*l, so walking l and splitting a + m*l into divisor pairs
yields every potential vertex there.  The other three corners reduce to
the same walk through the negation and y-reflection symmetries.

The cutoff defaults to 4 * m^(3/2) * (1 + ln m)^2.  Whenever that exceeds
(m-1)^2 every point qualifies and the walk degenerates into plain
enumeration, which is then taken directly; genuine pruning kicks in only
for very large moduli.  Candidates are always genuine points of H_a(m),
so the fast hull region is contained in the true hull unconditionally;
equality is validated against the brute-force hull by the verification
harness and the acceptance sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import ConvexPolygon, convex_hull
from .hyperbola import (
    NEGATE,
    REFLECT_Y,
    HyperbolaSpec,
    Point,
    PointSet,
    apply_symmetry,
    enumerate_points,
)
from .ntheory import mod_inv, primes_up_to

__all__ = [
    "PruneConfig",
    "VerificationReport",
    "candidate_cutoff",
    "lower_left_candidates",
    "candidate_points",
    "fast_hull",
    "verify_against_naive",
]

METHODS = ("naive", "fast", "auto")


@dataclass(frozen=True)
class PruneConfig:
    """Tuning for the pruned hull search.

    cutoff_factor scales the product bound cutoff_factor * m^(3/2) * (1+ln m)^2;
    below naive_threshold the "auto" method just enumerates everything.
    """

    cutoff_factor: Fraction = Fraction(4)
    naive_threshold: int = 1000
    method: str = "auto"

    def __post_init__(self):
        if self.cutoff_factor <= 0:
            raise ValueError("cutoff_factor must be positive")
        if self.naive_threshold < 2:
            raise ValueError("naive_threshold must be >= 2")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")

    def resolve_method(self, m: int) -> str:
        if self.method == "auto":
            return "naive" if m < self.naive_threshold else "fast"
        return self.method


def candidate_cutoff(m: int, cutoff_factor: Fraction = Fraction(4)) -> int:
    """The product bound cutoff_factor * m^(3/2) * (1 + ln m)^2, floored."""
    return max(1, int(float(cutoff_factor) * math.isqrt(m**3) * (1.0 + math.log(m)) ** 2))


# sieve window for the progression walk; bounds memory at large l ranges
_CHUNK = 1 << 16


def _factored_progression(a: int, m: int, l_max: int):
    """Yield (l, factor list) for N_l = a + m*l, l = 0..l_max.

    For a prime p not dividing m, p | N_l exactly when l = -a/m (mod p), so
    each prime strikes an arithmetic progression of l; sieving runs over
    fixed-size windows of l.  After removing all primes up to sqrt(max N),
    any leftover cofactor is prime.
    """
    n_max = a + m * l_max
    starts = []
    for p in primes_up_to(math.isqrt(n_max)):
        if m % p == 0:
            continue  # p | m and gcd(a, m) = 1 keep p away from every N_l
        starts.append(((-a * mod_inv(m % p, p)) % p, p))
    for base in range(0, l_max + 1, _CHUNK):
        size = min(base + _CHUNK - 1, l_max) - base + 1
        residual = [a + m * (base + i) for i in range(size)]
        factors: list[list[tuple[int, int]]] = [[] for _ in range(size)]
        for r, p in starts:
            i = (r - base) % p
            while i < size:
                v = residual[i]
                e = 0
                while v % p == 0:
                    v //= p
                    e += 1
                residual[i] = v
                factors[i].append((p, e))
                i += p
        for i in range(size):
            if residual[i] > 1:
                factors[i].append((residual[i], 1))
            yield base + i, factors[i]


def _divisors_from(factors: list[tuple[int, int]]) -> list[int]:
    divs = [1]
    for p, e in factors:
        pk = 1
        step = []
        for _ in range(e):
            pk *= p
            step.extend(d * pk for d in divs)
        divs.extend(step)
    return divs


def lower_left_candidates(spec: HyperbolaSpec, cutoff: int) -> PointSet:
    """All points of H_a(m) with x*y <= cutoff, sorted.

    Walks N = a + m*l for 0 <= l <= (cutoff - a)/m, factoring the whole
    progression in one sieve, and emits the divisor pairs (d, N/d) that land
    inside [1, m-1]^2.  When the cutoff already admits every point (cutoff
    >= (m-1)^2) the walk would visit each point exactly once anyway, so the
    plain enumeration is returned directly.
    """
    m, a = spec.m, spec.a
    cutoff = max(1, cutoff)
    if cutoff >= (m - 1) * (m - 1):
        return enumerate_points(spec)
    if cutoff < a:
        return ()
    l_max = (cutoff - a) // m
    out: list[Point] = []
    for l, facs in _factored_progression(a, m, l_max):
        n = a + m * l
        lo = -(-n // (m - 1))  # smallest d with n/d <= m-1
        for d in _divisors_from(facs):
            if lo <= d <= m - 1:
                out.append((d, n // d))
    return tuple(sorted(out))


def _mirror_spec(spec: HyperbolaSpec) -> HyperbolaSpec:
    return HyperbolaSpec(spec.m, (spec.m - spec.a) % spec.m)


def candidate_points(spec: HyperbolaSpec, cfg: PruneConfig = PruneConfig()) -> PointSet:
    """Union of the four corner candidate sets, deduplicated and sorted.

    Lower-left candidates of H_a cover the lower-left corner directly and,
    negated, the upper-right corner; lower-left candidates of H_{m-a} cover
    the upper-left and lower-right corners after y-reflection.  Every
    candidate is a genuine point of H_a(m).  A cutoff below the minimal
    product a would leave nothing to hull, so in that case the set falls
    back to the guaranteed point (1, a) and its mirror images.
    """
    m = spec.m
    cutoff = candidate_cutoff(m, cfg.cutoff_factor)
    base = lower_left_candidates(spec, cutoff)
    mirror = lower_left_candidates(_mirror_spec(spec), cutoff)
    pts = set(base)
    pts.update(apply_symmetry(NEGATE, p, m) for p in base)
    pts.update(apply_symmetry(REFLECT_Y, p, m) for p in mirror)
    pts.update(apply_symmetry(NEGATE, apply_symmetry(REFLECT_Y, p, m), m) for p in mirror)
    if not pts:
        anchor = (1, spec.a)
        pts.add(anchor)
        pts.add(apply_symmetry(NEGATE, anchor, m))
    return tuple(sorted(pts))


def fast_hull(spec: HyperbolaSpec, cfg: PruneConfig = PruneConfig()) -> ConvexPolygon:
    """Hull of H_a(m) via the configured method ("auto" picks naive below the
    threshold, the pruned candidate search above)."""
    if cfg.resolve_method(spec.m) == "naive":
        return convex_hull(enumerate_points(spec))
    return convex_hull(candidate_points(spec, cfg))


@dataclass(frozen=True)
class VerificationReport:
    """Side-by-side result of the pruned and brute-force hulls."""

    m: int
    a: int
    equal: bool
    fast_vertices: tuple[Point, ...]
    naive_vertices: tuple[Point, ...]
    candidate_count: int
    point_count: int
    max_lower_left_product: int | None
    missing: tuple[Point, ...]  # true vertices the fast hull lost
    extra: tuple[Point, ...]  # fast vertices that are not true vertices


def verify_against_naive(spec: HyperbolaSpec, cfg: PruneConfig = PruneConfig()) -> VerificationReport:
    """Run the pruned search (forced, regardless of cfg.method) against full
    enumeration and report the comparison."""
    m = spec.m
    points = enumerate_points(spec)
    naive = convex_hull(points)
    candidates = candidate_points(spec, cfg)
    fast = convex_hull(candidates)
    fast_v = set(fast.vertices)
    naive_v = set(naive.vertices)
    ll = [x * y for x, y in naive.vertices if 2 * x <= m and 2 * y <= m]
    return VerificationReport(
        m=m,
        a=spec.a,
        equal=fast_v == naive_v,
        fast_vertices=fast.vertices,
        naive_vertices=naive.vertices,
        candidate_count=len(candidates),
        point_count=len(points),
        max_lower_left_product=max(ll) if ll else None,
        missing=tuple(sorted(naive_v - fast_v)),
        extra=tuple(sorted(fast_v - naive_v)),
    )
