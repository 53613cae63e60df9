import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pairbound.errors import DegenerateDirectionError
from pairbound.vec2kernels import (
    Mat2,
    Vec2,
    right_singular_direction,
    sigma2_of_pair,
    sigma2_sq_polygon,
    sqrt_principal,
    square,
    svd2,
)

coord = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
vec = st.tuples(coord, coord)


def circ_dist(a, b, period=math.pi):
    d = (a - b) % period
    return min(d, period - d)


class TestSquare:
    @pytest.mark.parametrize(
        "v, expected",
        [((1.0, 0.0), (1.0, 0.0)), ((0.0, 1.0), (-1.0, 0.0)), ((3.0, 4.0), (-7.0, 24.0))],
    )
    def test_examples(self, v, expected):
        assert square(v) == Vec2(*expected)

    def test_magnitude_is_norm_squared(self):
        assert math.hypot(*square((3.0, 4.0))) == 25.0

    @given(vec)
    def test_matches_complex_square(self, v):
        w = square(v)
        c = complex(*v) ** 2
        assert w.x == pytest.approx(c.real, abs=1e-12)
        assert w.y == pytest.approx(c.imag, abs=1e-12)

    @given(vec)
    def test_norm_property(self, v):
        r2 = v[0] ** 2 + v[1] ** 2
        assert math.hypot(*square(v)) == pytest.approx(r2, rel=1e-14, abs=1e-300)


class TestSqrtPrincipal:
    def test_examples(self):
        assert sqrt_principal((1.0, 0.0)) == Vec2(1.0, 0.0)
        assert sqrt_principal((-1.0, 0.0)) == Vec2(0.0, 1.0)
        assert sqrt_principal((0.0, 0.0)) == Vec2(0.0, 0.0)

    def test_derived_example(self):
        v = sqrt_principal((0.0, 4.0))
        assert v.x == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert v.y == pytest.approx(math.sqrt(2.0), rel=1e-15)
        # oracle: square back
        w = square(v)
        assert w.x == pytest.approx(0.0, abs=1e-15)
        assert w.y == pytest.approx(4.0, rel=1e-15)

    @given(vec)
    def test_inverts_square(self, w):
        v = sqrt_principal(w)
        back = square(v)
        scale = max(math.hypot(*w), 1e-300)
        assert math.hypot(back.x - w[0], back.y - w[1]) <= 1e-14 * scale * 4
        # angle in [0, pi): upper half-plane or the nonnegative x-axis
        assert v.y > 0.0 or (v.y == 0.0 and v.x >= 0.0)

    @given(vec)
    def test_sqrt_of_square_is_up_to_sign(self, v):
        r = sqrt_principal(square(v))
        tol = 1e-12 * max(1.0, math.hypot(*v))
        plus = math.hypot(r.x - v[0], r.y - v[1])
        minus = math.hypot(r.x + v[0], r.y + v[1])
        assert min(plus, minus) <= tol


class TestSvd2:
    def test_identity(self):
        s = svd2(((1.0, 0.0), (0.0, 1.0)))
        assert (s.sigma1, s.sigma2) == pytest.approx((1.0, 1.0), abs=1e-15)

    def test_diag(self):
        s = svd2(((2.0, 0.0), (0.0, 1.0)))
        assert (s.sigma1, s.sigma2) == pytest.approx((2.0, 1.0), abs=1e-15)
        assert circ_dist(s.beta, 0.0) <= 1e-15

    def test_orthogonal(self):
        r = 1.0 / math.sqrt(2.0)
        s = svd2(((r, r), (r, -r)))
        assert (s.sigma1, s.sigma2) == pytest.approx((1.0, 1.0), abs=1e-15)
        assert s.left_sign == -1

    def test_zero_matrix(self):
        assert svd2(((0.0, 0.0), (0.0, 0.0))) == (0.0, 0.0, 0.0, 0.0, 1)

    def test_beta_double_angle_rule(self):
        (a, b), (c, d) = (1.0, 2.0), (-0.5, 3.0)
        s = svd2(((a, b), (c, d)))
        expected = 0.5 * math.atan2(2 * a * b + 2 * c * d, a * a - b * b + c * c - d * d)
        assert s.beta == pytest.approx(expected, abs=1e-15)

    @given(vec, vec)
    def test_reconstruction_and_values(self, r1, r2):
        m = Mat2.from_rows(r1, r2)
        s = svd2(m)
        rec = np.array(s.reconstruct())
        fro = m.frobenius()
        assert np.max(np.abs(rec - np.array(m))) <= 1e-12 * max(1.0, fro)
        assert s.sigma1 >= s.sigma2 >= 0.0
        # independent oracle: eigenvalues of m^T m
        mm = np.array(m)
        ev = np.sort(np.linalg.eigvalsh(mm.T @ mm))[::-1]
        assert s.sigma1**2 == pytest.approx(ev[0], abs=1e-12 * max(1.0, fro**2))
        assert s.sigma2**2 == pytest.approx(max(ev[1], 0.0), abs=1e-12 * max(1.0, fro**2))


class TestSigma2OfPair:
    def test_examples(self):
        assert sigma2_of_pair((1.0, 0.0), (0.0, 1.0)) == pytest.approx(1.0, abs=1e-15)
        assert sigma2_of_pair((1.0, 0.0), (1.0, 0.0)) == 0.0

    def test_extremal_pair(self, extremal3):
        A, _ = extremal3
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            assert sigma2_of_pair(A.rows[i], A.rows[j]) == pytest.approx(
                1.0 / math.sqrt(3.0), abs=1e-15
            )
            assert sigma2_sq_polygon(A.rows[i], A.rows[j]) == pytest.approx(1 / 3, abs=1e-15)

    @given(vec, vec)
    def test_two_routes_agree(self, a, b):
        scale = max(1.0, a[0] ** 2 + a[1] ** 2 + b[0] ** 2 + b[1] ** 2)
        s = sigma2_of_pair(a, b)
        assert s**2 == pytest.approx(sigma2_sq_polygon(a, b), abs=1e-12 * scale)

    @given(vec, vec)
    def test_two_routes_agree_unsquared_when_well_separated(self, a, b):
        # the polygon route loses about eps * scale / sigma2 to cancellation
        scale = max(1.0, a[0] ** 2 + a[1] ** 2 + b[0] ** 2 + b[1] ** 2)
        s = sigma2_of_pair(a, b)
        assume(s >= 1e-2 * scale)
        assert s == pytest.approx(math.sqrt(sigma2_sq_polygon(a, b)), abs=1e-12 * scale)


class TestRightSingularDirection:
    def test_examples(self):
        assert right_singular_direction(((2.0, 0.0), (1.0, 0.0))) == 0.0
        assert right_singular_direction(((0.0, 2.0), (0.0, 1.0))) == pytest.approx(math.pi / 2)

    def test_derived_against_numpy_svd(self):
        m = np.array([[1.0, 0.0], [1.0, 1.0]])
        ang = right_singular_direction(m)
        assert ang == pytest.approx(0.5 * math.atan2(2.0, 1.0), abs=1e-15)
        assert ang == pytest.approx(0.5535743588970452, abs=1e-15)
        # the smallest right-singular vector is orthogonal to the leading direction
        _, _, vt = np.linalg.svd(m)
        v_small = vt[1]
        assert abs(v_small @ np.array([math.cos(ang), math.sin(ang)])) <= 1e-14

    def test_degenerate(self):
        with pytest.raises(DegenerateDirectionError):
            right_singular_direction(((1.0, 0.0), (0.0, 1.0)))

    @given(vec, vec)
    def test_matches_svd_beta(self, r1, r2):
        w1, w2 = square(r1), square(r2)
        assume(math.hypot(w1.x + w2.x, w1.y + w2.y) > 1e-6)
        s = svd2((r1, r2))
        assert circ_dist(right_singular_direction((r1, r2)), s.beta) <= 1e-9

    @settings(max_examples=300)
    @given(vec, vec, vec)
    def test_three_rows_give_two_distinct_directions(self, v1, v2, v3):
        ws = [square(v) for v in (v1, v2, v3)]
        mags = [math.hypot(*w) for w in ws]
        assume(min(mags) > 1e-6)
        for a in range(3):
            for b in range(a + 1, 3):
                # sine of the angle between squares, not the raw cross product
                cross = ws[a].x * ws[b].y - ws[a].y * ws[b].x
                assume(abs(cross) / (mags[a] * mags[b]) >= 1e-6)
        dirs = [
            right_singular_direction((v1, v2)),
            right_singular_direction((v1, v3)),
            right_singular_direction((v2, v3)),
        ]
        spread = max(circ_dist(dirs[a], dirs[b]) for a in range(3) for b in range(a + 1, 3))
        assert spread > 1e-9
