"""Dense unitaries, the operator norm, and the matrix file format.

Matrices are numpy complex128 arrays wrapped in a thin validating type.
The operator norm is computed from the largest eigenvalue of the
Hermitian Gram matrix M^dagger M (LAPACK symmetric eigensolver), which
resolves the top singular value to machine precision for the desk-scale
dimensions (<= 1024) this package handles.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import NumericFailure, ValidationError
from .exactnum import ExactAmplitude

UNITARITY_TOL = 1e-10
MAX_DIM = 1 << 10


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


class DenseUnitary:
    """Unitary matrix on a 2**d dimensional register, validated on construction."""

    __slots__ = ("mat", "dim", "exact")

    def __init__(self, mat, exact=None, _checked: bool = False):
        mat = np.asarray(mat, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValidationError("matrix must be square")
        n = mat.shape[0]
        if not _is_power_of_two(n):
            raise ValidationError(f"dimension {n} is not a power of two")
        if n > MAX_DIM:
            raise ValidationError(f"dimension {n} exceeds the {MAX_DIM} cap")
        if not np.all(np.isfinite(mat)):
            raise ValidationError("matrix entries must be finite")
        if not _checked:
            defect = np.max(np.abs(mat.conj().T @ mat - np.eye(n)))
            if defect > UNITARITY_TOL:
                raise ValidationError(
                    f"matrix is not unitary: max |M†M - I| = {defect:.3e}"
                )
        self.mat = mat
        self.dim = n
        self.exact = exact  # optional grid of ExactAmplitude

    def adjoint(self) -> "DenseUnitary":
        ex = None
        if self.exact is not None:
            ex = [
                [self.exact[j][i].conjugate() for j in range(self.dim)]
                for i in range(self.dim)
            ]
        return DenseUnitary(self.mat.conj().T, exact=ex, _checked=True)

    def __matmul__(self, other: "DenseUnitary") -> "DenseUnitary":
        return DenseUnitary(self.mat @ other.mat, _checked=True)

    def __repr__(self) -> str:
        return f"DenseUnitary(dim={self.dim})"

    @classmethod
    def from_exact(cls, grid) -> "DenseUnitary":
        n = len(grid)
        mat = np.array(
            [[grid[i][j].to_complex() for j in range(n)] for i in range(n)],
            dtype=np.complex128,
        )
        return cls(mat, exact=grid)


def operator_norm(m) -> float:
    """Largest singular value of a (difference of) square matrices.

    Computed via the symmetric eigenproblem on the Gram matrix rather
    than a full SVD; only the top value is of interest.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError("operator_norm expects a square matrix")
    if m.shape[0] > MAX_DIM:
        raise ValidationError(f"dimension {m.shape[0]} exceeds the {MAX_DIM} cap")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix entries must be finite")
    gram = m.conj().T @ m
    try:
        eigs = np.linalg.eigvalsh(gram)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericFailure(f"eigen-iteration did not converge: {exc}") from exc
    top = float(eigs[-1])
    return math_sqrt_nonneg(top)


def math_sqrt_nonneg(x: float) -> float:
    return float(np.sqrt(max(x, 0.0)))


# -- matrix file format ------------------------------------------------
#
# JSON object {"dim": n, "mode": "exact"|"float", "entries": [...]}
# exact entries are 5-integer arrays [a, b, c, d, k], float entries are
# [re, im] pairs; both row-major.


def matrix_to_json(u: DenseUnitary) -> dict:
    if u.exact is not None:
        entries = [list(amp.as_tuple()) for row in u.exact for amp in row]
        return {"dim": u.dim, "mode": "exact", "entries": entries}
    entries = [[float(z.real), float(z.imag)] for z in u.mat.reshape(-1)]
    return {"dim": u.dim, "mode": "float", "entries": entries}


def matrix_from_json(obj: dict) -> DenseUnitary:
    try:
        dim = int(obj["dim"])
        mode = obj["mode"]
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed matrix object: {exc}") from exc
    if len(entries) != dim * dim:
        raise ValidationError(
            f"expected {dim * dim} entries for dim {dim}, got {len(entries)}"
        )
    if mode == "exact":
        grid = [
            [ExactAmplitude.from_tuple(entries[i * dim + j]) for j in range(dim)]
            for i in range(dim)
        ]
        return DenseUnitary.from_exact(grid)
    if mode == "float":
        mat = np.array(
            [complex(re, im) for re, im in entries], dtype=np.complex128
        ).reshape(dim, dim)
        return DenseUnitary(mat)
    raise ValidationError(f"unknown matrix mode {mode!r}")


def save_matrix(u: DenseUnitary, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_json(u), fh)


def load_matrix(path) -> DenseUnitary:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))
