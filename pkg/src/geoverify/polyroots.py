"""Resultants, discriminants, the quartic double-root surface, and
homotopy continuation of polynomial roots.

Polynomials are coefficient lists in ascending order.  Exact inputs
(ints or Fractions) get exact resultants, discriminants, gcds and real
root isolation; the homotopy tracker works over complex floats, starting
from the roots of z^n - 1 and steering around the double-root locus with
a random phase on the start system.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class TrackingFailureError(RuntimeError):
    """Continuation failed after retries with fresh phases."""


# -- basic coefficient-list algebra -------------------------------------------


def trim(coeffs) -> list:
    out = list(coeffs)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def degree(coeffs) -> int:
    return len(trim(coeffs)) - 1


def is_exact(coeffs) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in coeffs)


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs) -> list:
    return [k * c for k, c in enumerate(coeffs)][1:] or [0 * coeffs[0]]


def poly_mul(p, q) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_monic(coeffs) -> list:
    c = trim(coeffs)
    lead = c[-1]
    if isinstance(lead, (int, Fraction)):
        return [Fraction(x) / Fraction(lead) for x in c]
    return [x / lead for x in c]


def poly_divmod(p, q):
    """Exact-arithmetic polynomial division over the rationals."""
    p = [Fraction(x) for x in trim(p)]
    q = [Fraction(x) for x in trim(q)]
    if q == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(1, len(p) - len(q) + 1)
    rem = p[:]
    while len(rem) >= len(q) and trim(rem) != [0]:
        shift = len(rem) - len(q)
        factor = rem[-1] / q[-1]
        quot[shift] = factor
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
        rem.pop()
    return trim(quot), trim(rem) or [Fraction(0)]


def poly_gcd_exact(p, q) -> list:
    """Monic gcd by the Euclidean algorithm, exact over the rationals."""
    a = [Fraction(x) for x in trim(p)]
    b = [Fraction(x) for x in trim(q)]
    while trim(b) != [0]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    a = trim(a)
    if a == [0]:
        return a
    return poly_monic(a)


# -- resultants and discriminants ----------------------------------------------


def sylvester_matrix(p, q) -> list[list]:
    """Classical (m+n) x (m+n) matrix of shifted coefficient rows."""
    p = trim(p)
    q = trim(q)
    m, n = len(p) - 1, len(q) - 1
    if m < 1 or n < 1:
        raise ValueError("both polynomials must have degree at least 1")
    size = m + n
    zero = 0 * p[0]
    rows = []
    pd = list(reversed(p))  # descending
    qd = list(reversed(q))
    for i in range(n):
        rows.append([zero] * i + pd + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + qd + [zero] * (size - n - 1 - i))
    return rows


def _det_exact(matrix) -> Fraction:
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def sylvester_resultant(p, q):
    """Resultant of p and q: exact Fraction for exact inputs, complex
    otherwise.  Zero iff the polynomials share a root."""
    rows = sylvester_matrix(p, q)
    if is_exact(p) and is_exact(q):
        return _det_exact(rows)
    return complex(np.linalg.det(np.array(rows, dtype=complex)))


def discriminant(p):
    """(-1)^(n(n-1)/2) Res(p, p') / lc(p); zero iff p has a double root."""
    p = trim(p)
    n = len(p) - 1
    if n < 2:
        raise ValueError("discriminant needs degree at least 2")
    res = sylvester_resultant(p, poly_derivative(p))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    if isinstance(res, Fraction):
        return sign * res / Fraction(p[-1])
    return sign * res / p[-1]


# -- exact real-root isolation (Sturm) ------------------------------------------


def _sturm_chain(p) -> list[list[Fraction]]:
    p0 = [Fraction(x) for x in trim(p)]
    chain = [p0, [Fraction(x) for x in poly_derivative(p0)]]
    while degree(chain[-1]) > 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        r = trim(r)
        if r == [0]:
            break
        chain.append([-x for x in r])
    return chain


def _sign_variations(chain, x: Fraction) -> int:
    signs = []
    for poly in chain:
        v = poly_eval(poly, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_roots_exact(coeffs, refine_bits: int = 60) -> list[float]:
    """All real roots of an exact polynomial, each isolated by a Sturm
    bisection and refined to float precision.  Multiple roots are reported
    once (the square-free part is isolated)."""
    p = [Fraction(x) for x in trim(coeffs)]
    if degree(p) == 0:
        return []
    g = poly_gcd_exact(p, poly_derivative(p))
    if degree(g) > 0:
        p, _ = poly_divmod(p, g)
    chain = _sturm_chain(p)
    bound = Fraction(1) + max(abs(c) for c in p[:-1]) / abs(p[-1]) if len(p) > 1 else Fraction(1)

    def count(a: Fraction, b: Fraction) -> int:
        return _sign_variations(chain, a) - _sign_variations(chain, b)

    intervals = [(-bound, bound)]
    isolated: list[tuple[Fraction, Fraction]] = []
    while intervals:
        a, b = intervals.pop()
        k = count(a, b)
        if k == 0:
            continue
        if k == 1:
            isolated.append((a, b))
            continue
        mid = (a + b) / 2
        # split points must not be roots (Sturm counts are taken there);
        # nudge by dyadic offsets until the value is nonzero
        offset = (b - a) / 1024
        while poly_eval(p, mid) == 0:
            mid += offset
            offset /= 2
        intervals.append((a, mid))
        intervals.append((mid, b))

    roots = []
    for a, b in sorted(isolated):
        if a == b:
            roots.append(float(a))
            continue
        fa = poly_eval(p, a)
        for _ in range(refine_bits):
            mid = (a + b) / 2
            fm = poly_eval(p, mid)
            if fm == 0:
                a = b = mid
                break
            if (fm > 0) == (fa > 0):
                a, fa = mid, fm
            else:
                b = mid
        roots.append(float((a + b) / 2))
    return roots


# -- quartic double-root surface -------------------------------------------------


def quartic_discriminant_in_offset(u, v) -> list[Fraction]:
    """Coefficients (ascending, cubic) of w -> disc(z^4 + u z^2 + v z + w),
    recovered exactly by interpolation at four offsets."""
    u = Fraction(u)
    v = Fraction(v)
    nodes = [Fraction(k) for k in range(4)]
    values = [discriminant([w0, v, u, Fraction(0), Fraction(1)]) for w0 in nodes]
    coeffs = [Fraction(0)] * 4
    for i, (xi, yi) in enumerate(zip(nodes, values)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            basis = poly_mul(basis, [-xj, Fraction(1)])
            denom *= xi - xj
        for k, c in enumerate(basis):
            coeffs[k] += yi * c / denom
    return trim(coeffs)


@dataclass(frozen=True)
class SwallowtailSample:
    points: tuple[tuple[float, float, float], ...]  # (u, v, w) with a real double root
    sheet_counts: dict  # (u, v) -> number of real-double-root sheets
    discriminant_roots: dict  # (u, v) -> all real w with vanishing discriminant


def swallowtail_sample(u_grid, v_grid) -> SwallowtailSample:
    """Sample the surface of quartics z^4 + u z^2 + v z + w with a real
    double root.

    A double root is a real zero z* of the exact cubic 4 z^3 + 2 u z + v
    (isolated by Sturm bisection), and then w = -(z*^4 + u z*^2 + v z*);
    the count of such z* is the sheet count (3 in the cusp region u < 0,
    1 outside).  The real w-roots of the exact discriminant cubic are kept
    alongside; they additionally contain the complex-double-root points.
    """
    points = []
    counts = {}
    disc_roots = {}
    for u in u_grid:
        for v in v_grid:
            ue, ve = Fraction(u), Fraction(v)
            key = (float(u), float(v))
            cubic = quartic_discriminant_in_offset(ue, ve)
            disc_roots[key] = tuple(real_roots_exact(cubic))
            crit = real_roots_exact([ve, 2 * ue, Fraction(0), Fraction(4)])
            counts[key] = len(crit)
            for z in crit:
                w = -(z**4 + float(ue) * z**2 + float(ve) * z)
                points.append((float(u), float(v), w))
    return SwallowtailSample(points=tuple(points), sheet_counts=counts, discriminant_roots=disc_roots)


# -- independent root oracle -----------------------------------------------------


def durand_kerner(coeffs, max_iter: int = 500, tol: float = 1e-13) -> list[complex]:
    """Simultaneous-iteration root finder, independent of the tracker."""
    c = [complex(x) for x in trim(coeffs)]
    n = len(c) - 1
    if n < 1:
        return []
    monic = [x / c[-1] for x in c]
    roots = [(0.4 + 0.9j) ** k for k in range(1, n + 1)]
    for _ in range(max_iter):
        shift = 0.0
        new = []
        for i, z in enumerate(roots):
            denom = 1.0 + 0.0j
            for j, w in enumerate(roots):
                if j != i:
                    denom *= z - w
            dz = poly_eval(monic, z) / denom
            new.append(z - dz)
            shift = max(shift, abs(dz))
        roots = new
        if shift < tol:
            break
    return roots


# -- homotopy continuation --------------------------------------------------------


@dataclass(frozen=True)
class TrackingCertificate:
    gamma: complex
    retries: int
    steps: int
    max_residual: float  # worst scaled_residual over the returned roots
    min_separation: float
    min_disc_magnitude: float
    disc_threshold: float


@dataclass(frozen=True)
class HomotopyResult:
    roots: tuple[complex, ...]
    multiplicities: tuple[int, ...]
    on_double_root_locus: bool
    certificate: TrackingCertificate


def _complex_disc_magnitude(coeffs) -> float:
    d = discriminant([complex(c) for c in coeffs])
    return abs(d)


def scaled_residual(coeffs, z: complex) -> float:
    """|P(z)| relative to the evaluation magnitude sum |c_i| |z|^i.

    An absolute residual target is meaningless for roots of large modulus,
    where double precision cannot evaluate P below its own noise floor;
    this backward-stable measure is scale-free.
    """
    az = abs(z)
    mag = 0.0
    power = 1.0
    for c in coeffs:
        mag += abs(c) * power
        power *= az
    return abs(poly_eval(coeffs, z)) / max(mag, 1e-300)


def _newton_polish(coeffs, dcoeffs, z: complex, max_iter: int = 50) -> complex:
    """Newton iteration run to its floating-point floor: stop when |P|
    stops decreasing (an absolute cutoff would stall for roots near 0,
    where |P| is tiny without being converged)."""
    fz = abs(poly_eval(coeffs, z))
    for _ in range(max_iter):
        if fz == 0.0:
            break
        d = poly_eval(dcoeffs, z)
        if d == 0:
            break
        z_new = z - poly_eval(coeffs, z) / d
        f_new = abs(poly_eval(coeffs, z_new))
        if f_new >= fz:
            break
        z, fz = z_new, f_new
    return z


def homotopy_roots(target, seed: int = 0, n_steps: int = 256, max_retries: int = 8) -> HomotopyResult:
    """Track the roots of z^n - 1 to the target along a straight segment.

    The start system is rotated by a random phase so the segment misses
    the double-root locus with probability one; the discriminant magnitude
    is monitored along the way, and a dip below threshold restarts the
    tracking with a fresh phase.  Exactly-degenerate targets are detected
    up front and reported by clustering the tracked endpoints.
    """
    exact_target = is_exact(target)
    t = poly_monic(target)
    n = len(t) - 1
    if n < 1:
        raise ValueError("target must have degree at least 1")
    if n == 1:
        root = -complex(t[0])
        cert = TrackingCertificate(
            1.0, 0, 0, scaled_residual([complex(c) for c in t], root), math.inf, math.inf, 0.0
        )
        return HomotopyResult((root,), (1,), False, cert)

    on_locus = False
    if exact_target:
        on_locus = discriminant(t) == 0
    else:
        scale = max(1.0, max(abs(complex(c)) for c in t))
        on_locus = _complex_disc_magnitude(t) < 1e-14 * scale ** (2 * n - 2)

    tc = [complex(c) for c in t]
    tc_d = poly_derivative(tc)
    scale = max(1.0, max(abs(c) for c in tc))
    threshold = 1e-12 * scale ** (2 * n - 2)

    rng = np.random.default_rng(seed)
    last_error: str | None = None
    for retry in range(max_retries):
        gamma = cmath.exp(2j * math.pi * rng.random())
        start = [-gamma] + [0.0] * (n - 1) + [gamma]  # gamma (z^n - 1)
        roots = [cmath.exp(2j * math.pi * k / n) for k in range(n)]
        steps = n_steps
        try:
            min_disc = math.inf
            for j in range(steps):
                s0 = j / steps
                s1 = (j + 1) / steps
                coeffs_s1 = [(1 - s1) * a + s1 * b for a, b in zip(start, tc)]
                if not on_locus or s1 < 1.0:
                    d = _complex_disc_magnitude(coeffs_s1)
                    min_disc = min(min_disc, d)
                    if d < threshold and not on_locus:
                        raise _RestartTracking(f"discriminant dipped to {d:.3e}")
                dcoeffs_s1 = poly_derivative(coeffs_s1)
                ds = s1 - s0
                new_roots = []
                for z in roots:
                    coeffs_s0 = [(1 - s0) * a + s0 * b for a, b in zip(start, tc)]
                    # Euler prediction: dz/ds = -(dP/ds) / (dP/dz)
                    dp_ds = poly_eval([b - a for a, b in zip(start, tc)], z)
                    dp_dz = poly_eval(poly_derivative(coeffs_s0), z)
                    if dp_dz == 0:
                        raise _RestartTracking("derivative vanished on the path")
                    z_pred = z + ds * (-dp_ds / dp_dz)
                    z_corr = _newton_polish(coeffs_s1, dcoeffs_s1, z_pred, max_iter=30)
                    if scaled_residual(coeffs_s1, z_corr) > 1e-8:
                        raise _RestartTracking("Newton correction failed")
                    new_roots.append(z_corr)
                roots = new_roots
            polished = [_newton_polish(tc, tc_d, z) for z in roots]
            residual = max(scaled_residual(tc, z) for z in polished)
            if on_locus:
                clustered, mults = _cluster_roots(polished)
                sep = _min_separation(clustered)
                cert = TrackingCertificate(gamma, retry, steps, residual, sep, min_disc, threshold)
                return HomotopyResult(tuple(clustered), tuple(mults), True, cert)
            sep = _min_separation(polished)
            if residual > 1e-10 or sep < 1e-8:
                raise _RestartTracking(
                    f"endpoint check failed (residual {residual:.2e}, separation {sep:.2e})"
                )
            cert = TrackingCertificate(gamma, retry, steps, residual, sep, min_disc, threshold)
            return HomotopyResult(tuple(polished), tuple([1] * n), False, cert)
        except _RestartTracking as exc:
            last_error = str(exc)
            n_steps = min(2 * n_steps, 4096)
            continue
    raise TrackingFailureError(f"tracking failed after {max_retries} retries: {last_error}")


class _RestartTracking(Exception):
    pass


def _cluster_roots(roots, radius: float = 1e-6):
    clusters: list[list[complex]] = []
    for z in roots:
        for c in clusters:
            if abs(z - c[0]) < radius:
                c.append(z)
                break
        else:
            clusters.append([z])
    centers = [sum(c) / len(c) for c in clusters]
    return centers, [len(c) for c in clusters]


def _min_separation(roots) -> float:
    if len(roots) < 2:
        return math.inf
    return min(abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1 :])
