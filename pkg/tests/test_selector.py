import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pairbound import (
    ProofPath,
    brute_force_best,
    certify_pair,
    construct_extremal,
    gram_lambda2,
    pair_condition_lhs,
    rotate_right,
    row_squares,
    sample_haar,
    sigma2_of_pair,
    svd2,
    validate,
)
from pairbound.errors import InvariantViolation
from pairbound.selector import EPS_CERT

from .conftest import compositions


def brute_oracle(rows):
    # independent: numpy SVD of every 2x2 submatrix
    best, arg = -1.0, None
    for i, j in itertools.combinations(range(len(rows)), 2):
        s = np.linalg.svd(rows[[i, j]], compute_uv=False)[1]
        if s > best + 1e-14:
            best, arg = s, (i, j)
    return best, arg


class TestBruteForce:
    def test_extremal3_tie_break(self, extremal3):
        c = brute_force_best(extremal3[0])
        assert (c.i, c.j) == (0, 1)
        assert c.sigma2 == pytest.approx(1 / math.sqrt(3), abs=1e-15)
        assert c.path is ProofPath.BRUTE_BASE

    def test_embedded_identity(self, e123):
        c = brute_force_best(validate(e123))
        assert (c.i, c.j) == (0, 1)
        assert c.sigma2 == 1.0

    @pytest.mark.parametrize("n", [3, 4, 7, 15])
    def test_matches_numpy_oracle(self, n):
        for seed in range(10):
            A = sample_haar(n, seed)
            c = brute_force_best(A)
            best, arg = brute_oracle(A.rows)
            assert c.sigma2 == pytest.approx(best, abs=1e-13)
            assert (c.i, c.j) == arg

    def test_bound_on_many_samples(self):
        for k in range(1000):
            n = 3 + k % 30
            A = sample_haar(n, 1000 + k)
            assert brute_force_best(A).sigma2 >= 1 / math.sqrt(n) - 1e-12


class TestPairCondition:
    def test_extremal3_offdiagonal_zero(self, extremal3):
        w = row_squares(extremal3[0])
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            assert pair_condition_lhs(w, i, j) == pytest.approx(0.0, abs=1e-15)

    def test_embedded_identity(self, e123):
        w = row_squares(validate(e123))
        assert pair_condition_lhs(w, 0, 1) == pytest.approx(-8.0 / 9.0, abs=1e-15)
        # independent check of the target inequality: (a1, a2)^2 <= (|w1| - 1/3)(|w2| - 1/3)
        assert 0.0 <= (1 - 1 / 3) * (1 - 1 / 3)

    def test_index_errors(self, e123):
        w = row_squares(validate(e123))
        with pytest.raises(IndexError):
            pair_condition_lhs(w, 1, 1)
        with pytest.raises(IndexError):
            pair_condition_lhs(w, 0, 3)

    def test_diagonal_positive_for_long_rows(self):
        for seed in range(30):
            A = sample_haar(6, seed)
            w = row_squares(A)
            z = w.magnitudes - 2 / 6
            for i in range(6):
                if A.rows[i] @ A.rows[i] > 1 / 6:
                    assert w.magnitudes[i] ** 2 - z[i] ** 2 + 2 / 36 > 0

    @settings(max_examples=60)
    @given(st.integers(3, 20), st.integers(0, 2**32))
    def test_equivalent_to_target_inequality(self, n, seed):
        A = sample_haar(n, seed)
        w = row_squares(A)
        for i, j in itertools.combinations(range(n), 2):
            m = pair_condition_lhs(w, i, j)
            dot2 = float(A.rows[i] @ A.rows[j]) ** 2
            rhs = (w.magnitudes[i] - 1 / n) * (w.magnitudes[j] - 1 / n)
            # both sides equal 2 ((a_i,a_j)^2 - rhs) up to rounding
            assert m == pytest.approx(2 * (dot2 - rhs), abs=1e-14)
            if abs(m) > 1e-12:
                assert (m <= 0) == (dot2 <= rhs)


class TestGramLambda2:
    def test_identity_rows(self, e123):
        assert gram_lambda2(validate(e123), 0, 1) == 1.0

    def test_extremal_pair(self, extremal3):
        assert gram_lambda2(extremal3[0], 0, 2) == pytest.approx(1 / 3, abs=1e-15)

    @settings(max_examples=100)
    @given(st.integers(4, 12), st.integers(0, 2**32))
    def test_matches_svd2(self, n, seed):
        A = sample_haar(n, seed)
        for i, j in [(0, 1), (1, 3), (2, n - 1)]:
            s = svd2((A.rows[i], A.rows[j])).sigma2
            assert gram_lambda2(A, i, j) == pytest.approx(s * s, abs=1e-13)

    def test_index_error(self, e123):
        with pytest.raises(IndexError):
            gram_lambda2(validate(e123), 2, 2)


class TestCertifyPair:
    def test_base_case(self, extremal3):
        c = certify_pair(extremal3[0])
        assert c.path is ProofPath.BRUTE_BASE
        assert c.sigma2 == pytest.approx(1 / math.sqrt(3), abs=1e-15)

    def test_zero_row_is_dropped(self):
        A = validate([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]])
        c = certify_pair(A)
        assert c.path is ProofPath.CASE_A
        assert c.depth == 1
        assert (c.i, c.j) == (0, 1)
        assert c.sigma2 == 1.0

    def test_case_b_reached(self):
        # all rows of the regular 6-row frame have |a|^2 = 1/3 > 1/6
        ang = np.arange(6) * math.pi / 6
        rows = np.column_stack((np.cos(ang), np.sin(ang))) / math.sqrt(3)
        c = certify_pair(validate(rows))
        assert c.path is ProofPath.CASE_B
        assert c.case_b_value <= 0
        assert c.sigma2 >= 1 / math.sqrt(6)

    @pytest.mark.parametrize("seed", range(20))
    def test_n10_against_oracle(self, seed):
        A = sample_haar(10, seed)
        c = certify_pair(A)
        assert c.sigma2 >= 1 / math.sqrt(10) - 1e-10
        assert brute_force_best(A).sigma2 >= c.sigma2 - 1e-13
        assert c.sigma2 == pytest.approx(sigma2_of_pair(A.rows[c.i], A.rows[c.j]), abs=1e-13)
        assert c.i < c.j

    def test_extremal_family(self):
        for n in range(4, 10):
            for p, q, r in compositions(n):
                A, _ = construct_extremal(n, p, q, r, 0.3)
                c = certify_pair(A)
                assert c.sigma2 >= 1 / math.sqrt(n) - EPS_CERT

    def test_case_a_depth_counts_eliminations(self):
        # rows 3.. are tiny so they are removed one at a time
        rows = np.zeros((7, 2))
        rows[:3] = construct_extremal(3, 1, 1, 1)[0].rows
        c = certify_pair(validate(rows))
        assert c.path is ProofPath.CASE_A
        assert c.depth == 4
        assert c.terminal is ProofPath.BRUTE_BASE

    def test_rejects_broken_input(self):
        # rows that pass validation at a loose tolerance but are far from orthonormal
        rows = np.full((5, 2), 0.5)
        with pytest.raises(InvariantViolation):
            certify_pair(validate(rows, tol=10.0))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(3, 32), st.integers(0, 2**32), st.floats(0.0, 2 * math.pi))
    def test_rotation_invariance(self, n, seed, theta):
        A = sample_haar(n, seed)
        a = certify_pair(A).sigma2
        b = certify_pair(rotate_right(A, theta)).sigma2
        assert a == pytest.approx(b, abs=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(3, 40), st.integers(0, 2**32))
    def test_soundness_and_dominance(self, n, seed):
        A = sample_haar(n, seed)
        c = certify_pair(A)
        assert c.sigma2 >= 1 / math.sqrt(n) - 1e-10
        assert brute_force_best(A).sigma2 >= c.sigma2 - 1e-13

    def test_serialization_is_one_based(self, e123):
        d = certify_pair(validate(e123)).to_dict()
        assert (d["i"], d["j"]) == (1, 2)
        assert d["path"] == "brute_base"
