import json
import math

import numpy as np
import pytest

from qtmlab.errors import ValidationError
from qtmlab.exactnum import ExactAmplitude, INV_SQRT2, ONE, ZERO
from qtmlab.linalg import (
    DenseUnitary,
    matrix_from_json,
    matrix_to_json,
    operator_norm,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def gram_2x2_top_singular(m):
    """Oracle: top singular value of a 2x2 matrix via the characteristic
    polynomial of the Gram matrix (independent of LAPACK eigensolvers)."""
    g = m.conj().T @ m
    tr = (g[0, 0] + g[1, 1]).real
    det = (g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]).real
    lam = (tr + math.sqrt(max(tr * tr - 4 * det, 0.0))) / 2
    return math.sqrt(max(lam, 0.0))


def test_zero_matrix():
    assert operator_norm(np.zeros((2, 2))) == 0.0


def test_identity_minus_x():
    # eigenvalues of I - X are {0, 2}; the norm is exactly 2
    assert abs(operator_norm(np.eye(2) - X) - 2.0) <= 1e-10


def test_identity_minus_hadamard_vs_charpoly_oracle():
    m = np.eye(2) - H
    expected = gram_2x2_top_singular(m)
    assert abs(operator_norm(m) - expected) <= 1e-10


def test_norm_matches_svd_oracle_on_random_matrices():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.choice([2, 4, 8]))
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        assert abs(operator_norm(m) - np.linalg.svd(m, compute_uv=False)[0]) <= 1e-10


def test_norm_symmetry_and_triangle():
    rng = np.random.default_rng(11)
    for _ in range(100):
        u, v, w = (
            rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(3)
        )
        assert abs(operator_norm(u - v) - operator_norm(v - u)) <= 1e-9
        assert operator_norm(u - w) <= operator_norm(u - v) + operator_norm(v - w) + 1e-9


def test_non_square_rejected():
    with pytest.raises(ValidationError):
        operator_norm(np.zeros((2, 3)))


def test_dense_unitary_validation():
    DenseUnitary(np.eye(4))
    with pytest.raises(ValidationError):
        DenseUnitary(np.eye(2) * 1.001)
    with pytest.raises(ValidationError):
        DenseUnitary(np.full((2, 2), np.nan))
    with pytest.raises(ValidationError):
        DenseUnitary(np.eye(3))  # not a power of two


def test_matrix_json_roundtrip_float(tmp_path):
    u = DenseUnitary(H)
    obj = matrix_to_json(u)
    assert obj["mode"] == "float"
    v = matrix_from_json(json.loads(json.dumps(obj)))
    assert np.allclose(u.mat, v.mat)


def test_matrix_json_roundtrip_exact():
    grid = [[INV_SQRT2, INV_SQRT2], [INV_SQRT2, -INV_SQRT2]]
    u = DenseUnitary.from_exact(grid)
    obj = matrix_to_json(u)
    assert obj["mode"] == "exact"
    assert obj["entries"][0] == [0, 1, 0, 0, 1]
    v = matrix_from_json(obj)
    assert v.exact is not None
    assert v.exact[1][1] == -INV_SQRT2
    assert np.allclose(v.mat, H)


def test_exact_adjoint():
    grid = [[ZERO, ONE], [ExactAmplitude(0, 0, 1, 0), ZERO]]  # like Y up to phase
    u = DenseUnitary.from_exact(grid)
    adj = u.adjoint()
    assert adj.exact[1][0] == ONE
    assert adj.exact[0][1] == ExactAmplitude(0, 0, -1, 0)
    assert np.allclose(adj.mat, u.mat.conj().T)
