"""Integer linear algebra on monomial evaluation matrices and exact
counting of integral points on quadratic curves.

find_vanishing_form recovers, when one exists, an integer combination of
prescribed monomials vanishing at every input point (e.g. the conic through
divisor pairs of a fixed product); minors_singular_mod asks the analogous
rank question modulo m via the gcd of all maximal minors.  The counting
side is deliberately brute force: it is the desk-scale oracle the rest of
the package checks sparse-solution claims against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hyperbola import Point

__all__ = [
    "InfiniteFamily",
    "AllZeroMod",
    "ConicForm",
    "ConicClass",
    "CONIC_MONOMIALS",
    "find_vanishing_form",
    "minors_singular_mod",
    "classify_conic",
    "count_conic_points_in_box",
    "poly_roots_mod",
]

Monomial = tuple[int, int]

# X^2, XY, Y^2, X, Y, 1 -- the standard quadratic basis
CONIC_MONOMIALS: tuple[Monomial, ...] = ((2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0))


class InfiniteFamily(ValueError):
    """The identically-zero form vanishes everywhere; counting is meaningless."""


class AllZeroMod(ValueError):
    """Every polynomial coefficient is divisible by the modulus."""


def _check_monomials(monos: Sequence[Monomial]) -> None:
    if not monos:
        raise ValueError("need at least one monomial")
    if len(set(monos)) != len(monos):
        raise ValueError("monomials must be pairwise distinct")
    for h, k in monos:
        if h < 0 or k < 0:
            raise ValueError(f"negative exponent in monomial {(h, k)}")


def _eval_matrix(points: Sequence[Point], monos: Sequence[Monomial]) -> list[list[int]]:
    return [[x**h * y**k for h, k in monos] for x, y in points]


def find_vanishing_form(
    points: Sequence[Point], monos: Sequence[Monomial]
) -> tuple[int, ...] | None:
    """Primitive integer vector A with sum(A_i * mono_i) = 0 at every point,
    or None when the evaluation matrix has full column rank.

    Exact rational elimination; the result is normalized so its first
    nonzero entry is positive, and the choice among a multidimensional
    kernel is deterministic (first free column set to 1).
    """
    _check_monomials(monos)
    s = len(monos)
    if s < 2:
        raise ValueError("need at least two monomials")
    if not points:
        raise ValueError("need at least one point")
    rows = [[Fraction(v) for v in row] for row in _eval_matrix(points, monos)]

    pivots: list[tuple[int, int]] = []  # (row, col) of reduced pivots
    r = 0
    for col in range(s):
        pis = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pis is None:
            continue
        rows[r], rows[pis] = rows[pis], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
        if r == s:
            return None
    if r == s:
        return None

    pivot_cols = {c for _, c in pivots}
    free = next(c for c in range(s) if c not in pivot_cols)
    sol = [Fraction(0)] * s
    sol[free] = Fraction(1)
    for prow, pcol in pivots:
        sol[pcol] = -rows[prow][free]

    denom = math.lcm(*(f.denominator for f in sol))
    vec = [int(f * denom) for f in sol]
    g = math.gcd(*vec)
    vec = [v // g for v in vec]
    lead = next(v for v in vec if v != 0)
    if lead < 0:
        vec = [-v for v in vec]
    return tuple(vec)


def minors_singular_mod(points: Sequence[Point], monos: Sequence[Monomial], m: int) -> bool:
    """True iff every s x s minor of the evaluation matrix is 0 mod m.

    The gcd of all maximal minors is invariant under integer row operations,
    so triangularizing with Euclidean steps reduces the question to a single
    determinant.
    """
    _check_monomials(monos)
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    s = len(monos)
    if len(points) < s:
        raise ValueError(f"need at least {s} points, got {len(points)}")
    mat = _eval_matrix(points, monos)
    return _det_gcd_of_maximal_minors(mat, s) % m == 0


def _det_gcd_of_maximal_minors(mat: list[list[int]], s: int) -> int:
    """gcd of all s x s minors of a K x s integer matrix (0 when rank < s)."""
    K = len(mat)
    row = 0
    for col in range(s):
        while True:
            nz = [i for i in range(row, K) if mat[i][col] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda i: abs(mat[i][col]))
            for i in nz:
                if i == piv:
                    continue
                q = mat[i][col] // mat[piv][col]
                if q:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[piv])]
        nz = [i for i in range(row, K) if mat[i][col] != 0]
        if nz:
            mat[row], mat[nz[0]] = mat[nz[0]], mat[row]
            row += 1
    if row < s:
        return 0
    det = 1
    for i in range(s):
        det *= mat[i][i]
    return abs(det)


@dataclass(frozen=True)
class ConicForm:
    """Primitive integer quadratic form A X^2 + B XY + C Y^2 + D X + E Y + F.

    Coefficients are divided by their gcd at construction; the all-zero
    form is rejected.
    """

    A: int
    B: int
    C: int
    D: int
    E: int
    F: int

    def __post_init__(self):
        coeffs = self.coeffs
        if not any(coeffs):
            raise ValueError("the zero form is not a conic")
        g = math.gcd(*coeffs)
        if g > 1:
            for name, v in zip("ABCDEF", coeffs):
                object.__setattr__(self, name, v // g)

    @property
    def coeffs(self) -> tuple[int, int, int, int, int, int]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def evaluate(self, x: int, y: int) -> int:
        return (
            self.A * x * x + self.B * x * y + self.C * y * y + self.D * x + self.E * y + self.F
        )


@dataclass(frozen=True)
class ConicClass:
    discriminant: int
    degenerate: bool
    parabola_like: bool


def classify_conic(g: ConicForm) -> ConicClass:
    """Discriminant B^2 - 4AC, degeneracy via the 3x3 form matrix, and the
    parabola flag (zero discriminant while nondegenerate)."""
    A, B, C, D, E, F = g.coeffs
    det3 = (
        2 * A * (2 * C * 2 * F - E * E)
        - B * (B * 2 * F - E * D)
        + D * (B * E - 2 * C * D)
    )
    disc = g.discriminant
    degenerate = det3 == 0
    return ConicClass(
        discriminant=disc,
        degenerate=degenerate,
        parabola_like=disc == 0 and not degenerate,
    )


def count_conic_points_in_box(
    g: ConicForm | Sequence[int], H: int
) -> tuple[int, list[Point]]:
    """Exact count (and list) of integral solutions of g = 0 in [0, H]^2.

    Scans x and solves the remaining quadratic (or linear) equation in y
    with exact integer square-root tests.
    """
    if not isinstance(g, ConicForm):
        coeffs = tuple(int(v) for v in g)
        if len(coeffs) != 6:
            raise ValueError("expected six coefficients A B C D E F")
        if not any(coeffs):
            raise InfiniteFamily("the zero form vanishes on the whole box")
        g = ConicForm(*coeffs)
    if H < 0:
        raise ValueError("box size H must be >= 0")
    A, B, C, D, E, F = g.coeffs
    sols: list[Point] = []
    for x in range(H + 1):
        qa = C
        qb = B * x + E
        qc = A * x * x + D * x + F
        if qa != 0:
            disc = qb * qb - 4 * qa * qc
            if disc < 0:
                continue
            root = math.isqrt(disc)
            if root * root != disc:
                continue
            for num in {-qb + root, -qb - root}:
                if num % (2 * qa) == 0:
                    y = num // (2 * qa)
                    if 0 <= y <= H:
                        sols.append((x, y))
        elif qb != 0:
            if qc % qb == 0:
                y = -qc // qb
                if 0 <= y <= H:
                    sols.append((x, y))
        elif qc == 0:
            sols.extend((x, y) for y in range(H + 1))
    sols.sort()
    return len(sols), sols


def poly_roots_mod(coeffs: Sequence[int], m: int) -> tuple[int, list[int]]:
    """Roots in [0, m-1] of the polynomial with the given coefficients
    (highest degree first), found by direct evaluation.

    Raises AllZeroMod when every coefficient vanishes mod m (every residue
    would be a root).
    """
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    cs = [c % m for c in coeffs]
    if not cs or not any(cs):
        raise AllZeroMod("all coefficients divisible by the modulus")
    roots = []
    for x in range(m):
        acc = 0
        for c in cs:
            acc = (acc * x + c) % m
        if acc == 0:
            roots.append(x)
    return len(roots), roots
