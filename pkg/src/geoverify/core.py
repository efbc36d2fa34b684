"""Shared exact and floating-point primitives.

Exact arithmetic runs on :class:`fractions.Fraction` (re-exported as
``Rational``); projective points and lines live in
:class:`HomogeneousTriple`, which handles both the real field and prime
fields with a fixed normalization per domain so equality is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

Rational = Fraction


class DegenerateInputError(ValueError):
    """Raised when an input configuration is degenerate (coincident,
    collinear, or otherwise outside an operation's domain)."""


class SingularSystemError(ValueError):
    """Raised for singular linear systems; carries the rank found."""

    def __init__(self, message: str, rank: int):
        super().__init__(f"{message} (rank {rank})")
        self.rank = rank


@dataclass(frozen=True)
class Tolerance:
    """Mixed absolute/relative comparison: |x-y| <= abs + rel*max(|x|,|y|)."""

    absolute: float = 1e-9
    relative: float = 1e-9

    def close(self, x: float, y: float) -> bool:
        return abs(x - y) <= self.absolute + self.relative * max(abs(x), abs(y))

    def is_zero(self, x: float, scale: float = 0.0) -> bool:
        return abs(x) <= self.absolute + self.relative * abs(scale)


DEFAULT_TOL = Tolerance()


def _normalize_real(coords) -> tuple[float, float, float]:
    v = np.asarray(coords, dtype=float)
    n = float(np.linalg.norm(v))
    if n == 0.0 or not np.isfinite(n):
        raise DegenerateInputError("zero or non-finite homogeneous triple")
    v = v / n
    for x in v:
        if abs(x) > 1e-14:
            if x < 0:
                v = -v
            break
    return (float(v[0]), float(v[1]), float(v[2]))


def _normalize_prime(coords, q: int) -> tuple[int, int, int]:
    v = [int(x) % q for x in coords]
    if all(x == 0 for x in v):
        raise DegenerateInputError("zero homogeneous triple")
    lead = next(x for x in v if x != 0)
    inv = pow(lead, -1, q)
    return tuple((x * inv) % q for x in v)  # type: ignore[return-value]


@dataclass(frozen=True)
class HomogeneousTriple:
    """Projective point or line as a nonzero coordinate triple.

    Equality is equality up to nonzero scaling, made deterministic by
    normalizing on construction: over the reals, unit Euclidean norm with
    the first nonzero coordinate positive; over a prime field (``modulus``
    set), first nonzero coordinate equal to 1.
    """

    coords: tuple
    modulus: int | None = None

    def __post_init__(self):
        if len(self.coords) != 3:
            raise DegenerateInputError("homogeneous triple needs 3 coordinates")
        if self.modulus is None:
            object.__setattr__(self, "coords", _normalize_real(self.coords))
        else:
            object.__setattr__(
                self, "coords", _normalize_prime(self.coords, self.modulus)
            )

    @property
    def vec(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)

    def isclose(self, other: "HomogeneousTriple", tol: Tolerance = DEFAULT_TOL) -> bool:
        """Scale-invariant comparison; exact over a prime field."""
        if self.modulus is not None or other.modulus is not None:
            return self == other
        cross = np.cross(self.vec, other.vec)
        return tol.is_zero(float(np.linalg.norm(cross)), scale=1.0)


def normalize_triple(v: np.ndarray) -> np.ndarray:
    """Real normalization rule as a plain array operation (unit norm, first
    nonzero coordinate positive); used by the matrix-heavy modules."""
    return np.asarray(_normalize_real(v), dtype=float)


@dataclass(frozen=True, eq=False)
class Conic:
    """Conic as a symmetric 3x3 coefficient matrix, defined up to scale.

    A point p lies on the conic iff p^T M p = 0.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise DegenerateInputError("conic matrix must be 3x3")
        m = 0.5 * (m + m.T)
        scale = float(np.linalg.norm(m))
        if scale == 0.0:
            raise DegenerateInputError("zero conic matrix")
        m = m / scale
        # fix overall sign so equality checks are stable
        idx = np.unravel_index(np.argmax(np.abs(m)), m.shape)
        if m[idx] < 0:
            m = -m
        object.__setattr__(self, "matrix", m)

    def evaluate(self, p) -> float:
        v = _as_vec3(p)
        return float(v @ self.matrix @ v)

    def contains(self, p, tol: Tolerance = DEFAULT_TOL) -> bool:
        v = _as_vec3(p)
        v = v / np.linalg.norm(v)
        return tol.is_zero(self.evaluate(v), scale=1.0)

    def polar_line(self, p) -> np.ndarray:
        return self.matrix @ _as_vec3(p)

    def determinant(self) -> float:
        return float(np.linalg.det(self.matrix))

    def adjugate(self) -> "Conic":
        """Dual conic; for nondegenerate M this is the inverse up to scale."""
        m = self.matrix
        adj = np.linalg.inv(m).T * np.linalg.det(m)
        return Conic(0.5 * (adj + adj.T))


def _as_vec3(p) -> np.ndarray:
    if isinstance(p, HomogeneousTriple):
        return p.vec
    v = np.asarray(p, dtype=float)
    if v.shape == (2,):
        v = np.array([v[0], v[1], 1.0])
    if v.shape != (3,):
        raise DegenerateInputError("expected a 2- or 3-vector")
    return v


def cross_ratio(a, b, c, d, tol: Tolerance = DEFAULT_TOL) -> float:
    """Cross-ratio ((a-c)(b-d)) / ((a-d)(b-c)) of four collinear points or
    four concurrent lines.

    Scalars are treated as affine coordinates on a line and evaluated
    directly (exactly, for ``Fraction`` inputs).  Triples are projected
    onto a basis of the pencil they span, where the same formula runs on
    2x2 determinants; the value is independent of the chart.
    """
    if all(np.isscalar(x) and not isinstance(x, (list, tuple)) for x in (a, b, c, d)):
        den = (a - d) * (b - c)
        if (a - c) == 0 or (b - d) == 0 or den == 0:
            raise DegenerateInputError("coincident elements in cross-ratio")
        return (a - c) * (b - d) / den

    rows = np.array([_as_vec3(x) for x in (a, b, c, d)], dtype=float)
    rows = rows / np.linalg.norm(rows, axis=1)[:, None]
    for i in range(4):
        for j in range(i + 1, 4):
            if np.linalg.norm(np.cross(rows[i], rows[j])) <= tol.absolute + tol.relative:
                raise DegenerateInputError("coincident elements in cross-ratio")
    _, s, vt = np.linalg.svd(rows)
    if s[2] > 1e-7 * s[0]:
        raise DegenerateInputError("elements are not collinear/concurrent")
    coords = rows @ vt[:2].T  # (alpha_i, beta_i) in the pencil basis

    def det(i: int, j: int) -> float:
        return coords[i, 0] * coords[j, 1] - coords[j, 0] * coords[i, 1]

    den = det(0, 3) * det(1, 2)
    if den == 0:
        raise DegenerateInputError("degenerate quadruple in cross-ratio")
    return det(0, 2) * det(1, 3) / den


def solve_linear_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a square rational system exactly by Gaussian elimination.

    Raises :class:`SingularSystemError` (carrying the rank of the
    coefficient matrix) when no unique solution exists.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("system must be square with a matching right-hand side")
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]

    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, n) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        prow = a[rank]
        for r in range(n):
            if r != rank and a[r][col] != 0:
                factor = a[r][col] / prow[col]
                a[r] = [x - factor * y for x, y in zip(a[r], prow)]
        rank += 1
    if rank < n:
        raise SingularSystemError("singular linear system", rank=rank)

    # reduced row-echelon with full pivoting order preserved: each row now has
    # a single leading nonzero among the first n columns
    x = [Fraction(0)] * n
    for row in a:
        col = next(i for i in range(n) if row[i] != 0)
        x[col] = row[n] / row[col]
    return x


def bracketed_roots(
    f: Callable[[float], float],
    interval: tuple[float, float],
    n_samples: int = 64,
    tol: float = 1e-12,
) -> list[float]:
    """Roots of a continuous scalar function: one per detected sign change,
    refined by bisection; sample-point zeros are kept as-is.  Sorted."""
    lo, hi = float(interval[0]), float(interval[1])
    xs = np.linspace(lo, hi, max(2, int(n_samples)))
    ys = np.array([f(x) for x in xs], dtype=float)

    roots: list[float] = []
    for x, y in zip(xs, ys):
        if y == 0.0:
            roots.append(float(x))
    for i in range(len(xs) - 1):
        y0, y1 = ys[i], ys[i + 1]
        if y0 == 0.0 or y1 == 0.0 or (y0 < 0) == (y1 < 0):
            continue
        a, b, fa = xs[i], xs[i + 1], y0
        while b - a > tol:
            m = 0.5 * (a + b)
            fm = f(m)
            if fm == 0.0:
                a = b = m
                break
            if (fm < 0) == (fa < 0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))

    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > max(tol, 1e-12) * 4:
            deduped.append(r)
    return deduped
