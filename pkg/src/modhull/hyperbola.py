"""The point set H_a(m) = {(x, y) : xy = a (mod m), 1 <= x, y <= m-1},
its symmetries, exact box counts, and the equidistribution main term.

Points are plain (x, y) integer tuples; a PointSet is a sorted tuple of
them.  A shared one-point-per-line text format ("x y\\n") is provided for
interchange with the conic-fitting tools and the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .ntheory import arithmetic_profile, batch_mod_inv

__all__ = [
    "MODULUS_CEILING",
    "Point",
    "PointSet",
    "HyperbolaSpec",
    "SWAP",
    "NEGATE",
    "REFLECT_Y",
    "SYMMETRY_KINDS",
    "apply_symmetry",
    "enumerate_points",
    "count_in_box",
    "predicted_count",
    "format_points",
    "parse_points",
    "write_points_file",
    "read_points_file",
]

Point = tuple[int, int]
PointSet = tuple[Point, ...]

# Supported modulus range.  Geometry stays exact at any size (Python ints),
# but the pruned hull search factors numbers up to ~4*m^(3/2)*log^2(m), so
# the modulus is capped well inside the factoring ceiling.
MODULUS_CEILING = 2**31


@dataclass(frozen=True)
class HyperbolaSpec:
    """Modulus m and residue a, with a reduced into [1, m-1] and gcd(a, m) = 1."""

    m: int
    a: int

    def __post_init__(self):
        if not 2 <= self.m <= MODULUS_CEILING:
            raise ValueError(f"modulus must be in [2, 2**31], got {self.m}")
        a = self.a % self.m
        if math.gcd(a, self.m) != 1:
            raise ValueError(f"residue {self.a} is not coprime to {self.m}")
        object.__setattr__(self, "a", a)


# symmetry kinds
SWAP = "swap"  # (x, y) -> (y, x), maps H_a(m) to itself
NEGATE = "negate"  # (x, y) -> (m-x, m-y), maps H_a(m) to itself
REFLECT_Y = "reflect_y"  # (x, y) -> (x, m-y), maps H_a(m) to H_{m-a}(m)
SYMMETRY_KINDS = (SWAP, NEGATE, REFLECT_Y)


def apply_symmetry(kind: str, p: Point, m: int) -> Point:
    x, y = p
    if kind == SWAP:
        return (y, x)
    if kind == NEGATE:
        return (m - x, m - y)
    if kind == REFLECT_Y:
        return (x, m - y)
    raise ValueError(f"unknown symmetry kind {kind!r}")


@lru_cache(maxsize=4096)
def _phi(m: int) -> int:
    return arithmetic_profile(m).phi


def _units_and_inverses(m: int, upper: int) -> tuple[list[int], list[int]]:
    """Units x <= upper together with their inverses mod m (batched)."""
    xs = [x for x in range(1, upper + 1) if math.gcd(x, m) == 1]
    return xs, batch_mod_inv(xs, m)


@lru_cache(maxsize=4)
def _full_inverse_table(m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # sweeps visit several residues per modulus; share the inversion pass
    xs, invs = _units_and_inverses(m, m - 1)
    return tuple(xs), tuple(invs)


def enumerate_points(spec: HyperbolaSpec) -> PointSet:
    """All phi(m) points of H_a(m), sorted by x (one point per unit x)."""
    m, a = spec.m, spec.a
    xs, invs = _full_inverse_table(m)
    return tuple((x, a * inv % m) for x, inv in zip(xs, invs))


def count_in_box(spec: HyperbolaSpec, U: int, V: int) -> int:
    """Exact number of H_a(m) points in [1, U] x [1, V].  U, V clamp to [0, m-1]."""
    m, a = spec.m, spec.a
    U = max(0, min(U, m - 1))
    V = max(0, min(V, m - 1))
    if U == 0 or V == 0:
        return 0
    xs, invs = _units_and_inverses(m, U)
    return sum(1 for x, inv in zip(xs, invs) if a * inv % m <= V)


def predicted_count(spec: HyperbolaSpec, U: int, V: int) -> Fraction:
    """Main term U*V*phi(m)/m**2 of the box count, as an exact rational.

    Uses the same clamping as count_in_box so the two are directly comparable.
    """
    m = spec.m
    U = max(0, min(U, m - 1))
    V = max(0, min(V, m - 1))
    return Fraction(U * V * _phi(m), m * m)


# --- shared point-list text format: one "x y" pair per line ---


def format_points(points: PointSet) -> str:
    return "".join(f"{x} {y}\n" for x, y in points)


def parse_points(text: str) -> PointSet:
    points = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two integers, got {line!r}")
        points.append((int(parts[0]), int(parts[1])))
    return tuple(points)


def write_points_file(path, points: PointSet) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_points(points))


def read_points_file(path) -> PointSet:
    with open(path, "r", encoding="ascii") as fh:
        return parse_points(fh.read())
