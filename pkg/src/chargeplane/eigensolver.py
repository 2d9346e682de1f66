"""Dense complex eigendecomposition and first-order eigenvalue derivatives.

The assembled matrices are complex symmetric (not Hermitian), so the full
non-symmetric LAPACK path (balance, Hessenberg, shifted QR) is used for the
decomposition; the symmetric structure is exploited only in the derivative
formula, where left eigenvectors are transposes of right ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateEigenvectorError, EigensolverError

RESIDUAL_BOUND = 1e-10


@dataclass(frozen=True)
class EigenSet:
    """Full spectrum with right eigenvectors and per-eigenpair residuals.

    values are sorted by (Re, Im) ascending; vectors[:, n] pairs with
    values[n], has unit Euclidean norm, and its largest-magnitude component
    is real positive.
    """

    values: np.ndarray = field(repr=False)
    vectors: np.ndarray = field(repr=False)
    residual_norms: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.values)


def eigen_decompose(mat: np.ndarray) -> EigenSet:
    """Eigenvalues and right eigenvectors of a dense complex matrix.

    Ordering and eigenvector phase are deterministic so downstream output is
    reproducible bit-for-bit. Raises EigensolverError on LAPACK
    non-convergence or when the residual contract is violated.
    """
    mat = np.asarray(mat, dtype=complex)
    n = mat.shape[0]
    if mat.shape != (n, n) or n < 1:
        raise EigensolverError(f"expected a square matrix of order >= 1, got {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise EigensolverError("matrix contains non-finite entries", order=n)
    try:
        values, vectors = np.linalg.eig(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"QR iteration failed at order {n}: {exc}", order=n) from exc

    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]

    vectors = vectors / np.linalg.norm(vectors, axis=0)
    lead = np.take_along_axis(
        vectors, np.abs(vectors).argmax(axis=0)[None, :], axis=0
    )[0]
    vectors = vectors * (np.abs(lead) / lead)

    residuals = np.linalg.norm(mat @ vectors - vectors * values, axis=0)
    scale = np.linalg.norm(mat, "fro")
    if np.any(residuals > RESIDUAL_BOUND * scale):
        worst = float(residuals.max() / scale)
        raise EigensolverError(
            f"residual contract violated at order {n}: max relative residual {worst:.3e}",
            order=n,
        )
    values.setflags(write=False)
    vectors.setflags(write=False)
    residuals.setflags(write=False)
    return EigenSet(values=values, vectors=vectors, residual_norms=residuals)


def eigenvalue_derivative(mat_prime: np.ndarray, x: np.ndarray) -> complex:
    """First-order derivative of an eigenvalue of a complex-symmetric family.

    For M(t) complex symmetric with right eigenvector x, dz/dt equals
    (x.T @ M'(t) @ x) / (x.T @ x) -- the bilinear, non-conjugated form.
    Raises DegenerateEigenvectorError when x.T @ x is quasi-null (near an
    eigenvalue degeneracy), in which case a finite-difference fallback is
    appropriate.
    """
    x = np.asarray(x, dtype=complex)
    norm_sq = np.vdot(x, x).real
    bilinear = x @ x
    if abs(bilinear) < 1e-8 * norm_sq:
        raise DegenerateEigenvectorError(
            f"|x.T x| = {abs(bilinear):.3e} below 1e-8 * |x|^2 = {1e-8 * norm_sq:.3e}"
        )
    return complex((x @ (mat_prime @ x)) / bilinear)
