import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from geoverify.core import (
    Conic,
    DegenerateInputError,
    HomogeneousTriple,
    SingularSystemError,
    Tolerance,
    bracketed_roots,
    cross_ratio,
    solve_linear_exact,
)

rationals = st.fractions(
    min_value=Fraction(-100), max_value=Fraction(100), max_denominator=50
)


class TestCrossRatio:
    def test_affine_points_0123(self):
        assert cross_ratio(Fraction(0), Fraction(1), Fraction(2), Fraction(3)) == Fraction(4, 3)
        assert cross_ratio(0.0, 1.0, 2.0, 3.0) == pytest.approx(4.0 / 3.0, abs=1e-15)

    def test_coincident_elements_rejected(self):
        with pytest.raises(DegenerateInputError):
            cross_ratio(1.0, 2.0, 1.0, 3.0)
        a = HomogeneousTriple((1.0, 2.0, 1.0))
        b = HomogeneousTriple((1.0, 3.0, 1.0))
        d = HomogeneousTriple((1.0, 5.0, 1.0))
        with pytest.raises(DegenerateInputError):
            cross_ratio(a, b, a, d)

    def test_matches_affine_formula_on_a_line(self):
        # points (t, 2t + 1) embedded projectively must reproduce the affine value
        ts = [0.0, 1.0, 2.0, 3.0]
        pts = [HomogeneousTriple((t, 2 * t + 1, 1.0)) for t in ts]
        assert cross_ratio(*pts) == pytest.approx(4.0 / 3.0, abs=1e-12)

    def test_projective_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            base = rng.normal(size=3)
            direction = rng.normal(size=3)
            ts = rng.normal(size=4) * 3
            while len(set(np.round(ts, 6))) < 4:
                ts = rng.normal(size=4) * 3
            quad = [base + t * direction for t in ts]
            m = rng.normal(size=(3, 3))
            while abs(np.linalg.det(m)) < 0.1:
                m = rng.normal(size=(3, 3))
            before = cross_ratio(*quad)
            after = cross_ratio(*(m @ p for p in quad))
            assert after == pytest.approx(before, abs=1e-12 * max(1, abs(before)))

    def test_not_collinear_rejected(self):
        pts = [(1.0, 0.0, 1.0), (0.0, 1.0, 1.0), (1.0, 1.0, 1.0), (2.0, 3.0, 1.0)]
        with pytest.raises(DegenerateInputError):
            cross_ratio(*pts)


class TestSolveLinearExact:
    def test_identity(self):
        r = [Fraction(3, 7), Fraction(-2, 5)]
        assert solve_linear_exact([[1, 0], [0, 1]], r) == r

    def test_hand_eliminated_2x2(self):
        x = solve_linear_exact([[1, 1], [1, -1]], [1, 0])
        assert x == [Fraction(1, 2), Fraction(1, 2)]

    def test_zero_matrix_reports_rank(self):
        with pytest.raises(SingularSystemError) as err:
            solve_linear_exact([[0, 0], [0, 0]], [1, 0])
        assert err.value.rank == 0

    def test_rank_deficient(self):
        with pytest.raises(SingularSystemError) as err:
            solve_linear_exact([[1, 2], [2, 4]], [1, 2])
        assert err.value.rank == 1

    def test_random_exact_roundtrip(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(1, 6))
            a = [[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for _ in range(n)] for _ in range(n)]
            x = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))) for _ in range(n)]
            rhs = [sum(a[i][j] * x[j] for j in range(n)) for i in range(n)]
            try:
                got = solve_linear_exact(a, rhs)
            except SingularSystemError:
                continue
            assert got == x


class TestBracketedRoots:
    def test_sqrt2(self):
        roots = bracketed_roots(lambda x: x * x - 2.0, (0.0, 2.0), 64)
        assert len(roots) == 1
        assert roots[0] == pytest.approx(math.sqrt(2), abs=1e-10)

    def test_sin_roots(self):
        roots = bracketed_roots(math.sin, (1.0, 7.0), 128)
        assert len(roots) == 2
        assert roots[0] == pytest.approx(math.pi, abs=1e-10)
        assert roots[1] == pytest.approx(2 * math.pi, abs=1e-10)

    def test_no_sign_change(self):
        assert bracketed_roots(lambda x: 1.0, (0.0, 1.0), 16) == []


class TestHomogeneousTriple:
    def test_real_normalization_deterministic(self):
        p = HomogeneousTriple((-2.0, 4.0, -6.0))
        assert p.coords[0] > 0
        assert np.linalg.norm(p.vec) == pytest.approx(1.0, abs=1e-15)

    @given(
        st.tuples(rationals, rationals, rationals).filter(lambda t: any(t)),
        rationals.filter(lambda s: s != 0),
    )
    def test_scale_invariance(self, coords, s):
        p = HomogeneousTriple(tuple(float(c) for c in coords))
        q = HomogeneousTriple(tuple(float(c * s) for c in coords))
        assert p.isclose(q, Tolerance(1e-9, 1e-9))

    def test_prime_field_normalization(self):
        p = HomogeneousTriple((2, 4, 6), modulus=7)
        assert p.coords[0] == 1
        assert p == HomogeneousTriple((1, 2, 3), modulus=7)

    def test_zero_rejected(self):
        with pytest.raises(DegenerateInputError):
            HomogeneousTriple((0.0, 0.0, 0.0))
        with pytest.raises(DegenerateInputError):
            HomogeneousTriple((7, 0, 14), modulus=7)


class TestRationalFieldAxioms:
    @given(rationals, rationals, rationals)
    def test_associativity_and_distributivity(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(rationals)
    def test_inverses(self, a):
        assert a + (-a) == 0
        if a != 0:
            assert a * (1 / a) == 1

    @given(rationals)
    def test_lowest_terms(self, a):
        assert math.gcd(a.numerator, a.denominator) == 1
        assert a.denominator > 0


class TestConic:
    def test_unit_circle_contains(self):
        circle = Conic(np.diag([1.0, 1.0, -1.0]))
        assert circle.contains((1.0, 0.0, 1.0))
        assert circle.contains((math.sqrt(0.5), math.sqrt(0.5), 1.0))
        assert not circle.contains((2.0, 0.0, 1.0))

    def test_adjugate_of_circle(self):
        circle = Conic(np.diag([1.0, 1.0, -1.0]))
        dual = circle.adjugate()
        # tangent line x = 1 has coordinates (1, 0, -1)
        line = np.array([1.0, 0.0, -1.0])
        assert abs(line @ dual.matrix @ line) < 1e-12
