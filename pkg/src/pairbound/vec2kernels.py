"""Exact kernels for 2-vectors and 2x2 matrices.

The vector square ``(x, y) -> (x^2 - y^2, 2xy)`` is complex squaring read in
real coordinates: it doubles angles and squares lengths.  Everything else in
the package is phrased in terms of it, in particular the smallest singular
value of a pair of rows and the direction of the leading right-singular
vector.

Angle conventions: ``atan2`` values live in ``(-pi, pi]``; half-angles are
reduced to ``[0, pi)``.
"""

import cmath
import math
from typing import NamedTuple

from .errors import DegenerateDirectionError

__all__ = [
    "Vec2",
    "Mat2",
    "Svd2",
    "square",
    "sqrt_principal",
    "svd2",
    "sigma2_of_pair",
    "sigma2_sq_polygon",
    "right_singular_direction",
    "rotation",
]

# sum of squares below this norm has no defined half-angle
DIRECTION_EPS = 1e-14


class Vec2(NamedTuple):
    x: float
    y: float

    @property
    def norm(self):
        return math.hypot(self.x, self.y)


class Mat2(NamedTuple):
    r1: Vec2
    r2: Vec2

    @classmethod
    def from_rows(cls, a, b):
        return cls(Vec2(float(a[0]), float(a[1])), Vec2(float(b[0]), float(b[1])))

    def det(self):
        return self.r1.x * self.r2.y - self.r1.y * self.r2.x

    def frobenius(self):
        return math.sqrt(self.r1.x**2 + self.r1.y**2 + self.r2.x**2 + self.r2.y**2)


class Svd2(NamedTuple):
    """Rotation-form SVD ``M = R(alpha) diag(1, left_sign) diag(s1, s2) R(beta)``.

    ``R(t) = ((cos t, sin t), (-sin t, cos t))``.  ``left_sign`` is ``-1``
    exactly when ``det M < 0``; it carries the reflection so that both
    singular values stay nonnegative.
    """

    alpha: float
    sigma1: float
    sigma2: float
    beta: float
    left_sign: int = 1

    def reconstruct(self):
        ca, sa = math.cos(self.alpha), math.sin(self.alpha)
        cb, sb = math.cos(self.beta), math.sin(self.beta)
        d1, d2 = self.sigma1, self.left_sign * self.sigma2
        # R(alpha) diag(d1, d2)
        u11, u12 = ca * d1, sa * d2
        u21, u22 = -sa * d1, ca * d2
        return Mat2(
            Vec2(u11 * cb - u12 * sb, u11 * sb + u12 * cb),
            Vec2(u21 * cb - u22 * sb, u21 * sb + u22 * cb),
        )


def rotation(theta):
    """The matrix ``((cos t, sin t), (-sin t, cos t))`` as a :class:`Mat2`."""
    c, s = math.cos(theta), math.sin(theta)
    return Mat2(Vec2(c, s), Vec2(-s, c))


def square(v):
    """Return the vector square ``(x^2 - y^2, 2xy)`` of ``v``."""
    x, y = float(v[0]), float(v[1])
    return Vec2(x * x - y * y, 2.0 * x * y)


def sqrt_principal(w):
    """Square root of ``w`` whose angle is ``angle(w) / 2`` reduced to ``[0, pi)``.

    >>> sqrt_principal((-1.0, 0.0))
    Vec2(x=0.0, y=1.0)
    """
    r = cmath.sqrt(complex(float(w[0]), float(w[1])))
    x, y = r.real, r.imag
    if y < 0.0 or (y == 0.0 and x < 0.0):
        x, y = -x, -y
    # drop negative zeros so results compare cleanly
    return Vec2(x + 0.0, y + 0.0)


def _half_angle(w):
    h = 0.5 * math.atan2(w[1], w[0])
    return h + math.pi if h < 0.0 else h


def svd2(m):
    """Closed-form SVD of a 2x2 matrix in rotation form.

    The right angle follows the double-angle rule
    ``2 beta = atan2(2 a b + 2 c d, a^2 - b^2 + c^2 - d^2)`` for rows
    ``(a, b)`` and ``(c, d)``, i.e. ``2 beta`` is the angle of
    ``square(r1) + square(r2)``.

    Parameters
    ----------
    m : Mat2 or nested sequence
        Matrix given by its two rows.

    Returns
    -------
    Svd2
    """
    if not isinstance(m, Mat2):
        m = Mat2.from_rows(m[0], m[1])
    (a, b), (c, d) = m
    sx = a * a - b * b + c * c - d * d
    sy = 2.0 * a * b + 2.0 * c * d
    beta = 0.5 * math.atan2(sy, sx)
    cb, sb = math.cos(beta), math.sin(beta)
    # M v1 = sigma1 (cos alpha, -sin alpha) with v1 = (cos beta, sin beta)
    u1 = a * cb + b * sb
    u2 = c * cb + d * sb
    sigma1 = math.hypot(u1, u2)
    if sigma1 == 0.0:
        return Svd2(0.0, 0.0, 0.0, 0.0, 1)
    alpha = math.atan2(-u2, u1)
    s2 = m.det() / sigma1
    sign = -1 if s2 < 0.0 else 1
    # det / sigma1 can exceed sigma1 by an ulp when the values coincide
    return Svd2(alpha, sigma1, min(abs(s2), sigma1), beta, sign)


def sigma2_of_pair(a, b):
    """Smallest singular value of the 2x2 matrix with rows ``a`` and ``b``."""
    return svd2(Mat2.from_rows(a, b)).sigma2


def sigma2_sq_polygon(a, b):
    """``sigma_2^2`` of rows ``a, b`` from the polygon defect of their squares.

    Evaluates ``(|w_a| + |w_b| - |w_a + w_b|) / 2`` with ``w = square(.)``.
    Independent of :func:`svd2`; the two routes agree in squared form.
    """
    wa, wb = square(a), square(b)
    defect = math.hypot(*wa) + math.hypot(*wb) - math.hypot(wa.x + wb.x, wa.y + wb.y)
    return max(0.0, 0.5 * defect)


def right_singular_direction(m):
    """Angle in ``[0, pi)`` of the leading right-singular vector of ``m``.

    It is half the angle of ``square(r1) + square(r2)``.

    Raises
    ------
    DegenerateDirectionError
        If the squares cancel, so all directions are singular.
    """
    if not isinstance(m, Mat2):
        m = Mat2.from_rows(m[0], m[1])
    w1, w2 = square(m.r1), square(m.r2)
    s = (w1.x + w2.x, w1.y + w2.y)
    if math.hypot(*s) <= DIRECTION_EPS:
        raise DegenerateDirectionError(
            "sum of row squares vanishes; right-singular direction is undefined"
        )
    return _half_angle(s)
