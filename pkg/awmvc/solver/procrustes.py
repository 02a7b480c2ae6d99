"""
Trace-maximizing orthogonal Procrustes kernel shared by the M, W and Z updates.

Given A (r x c, c <= r), the row-orthonormal Q (c x r) maximizing
trace(Q A) is V U^T where A = U S V^T is the thin SVD, and the optimum
equals the nuclear norm of A.
"""
import logging
from typing import Tuple

import numpy as np
from scipy import linalg

from ..errors import NumericalError

logger = logging.getLogger(__name__)


def _thin_svd(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    try:
        return linalg.svd(A, full_matrices=False, check_finite=False, lapack_driver="gesdd")
    except linalg.LinAlgError:
        # gesdd occasionally fails to converge where gesvd does not
        logger.debug("[Procrustes] gesdd did not converge, retrying with gesvd")
        try:
            return linalg.svd(A, full_matrices=False, check_finite=False, lapack_driver="gesvd")
        except linalg.LinAlgError as e:
            raise NumericalError(f"SVD failed on a {A.shape[0]}x{A.shape[1]} matrix: {e}") from e


def procrustes_with_scale(A: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Return ``(Q, scale)`` where Q maximizes trace(Q @ A) over row-orthonormal
    Q and ``scale`` is the attained maximum (sum of singular values of A).

    Raises ValueError for non-2-D input or more columns than rows, and
    NumericalError for non-finite entries. Rank-deficient A is accepted;
    the solution is then not unique and the SVD-derived one is returned.
    """
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={A.ndim}")
    n_rows, n_cols = A.shape
    if n_cols > n_rows:
        raise ValueError(f"expected n_cols <= n_rows, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NumericalError("Procrustes input contains non-finite entries")

    U, s, Vt = _thin_svd(A)
    Q = Vt.T @ U.T
    return Q, float(s.sum())


def procrustes_max_trace_rows(A: np.ndarray) -> np.ndarray:
    """Row-orthonormal maximizer of trace(Q @ A); Q has shape (n_cols, n_rows)."""
    Q, _ = procrustes_with_scale(A)
    return Q


def nuclear_norm(A: np.ndarray) -> float:
    return float(linalg.svdvals(np.asarray(A, dtype=np.float64), check_finite=False).sum())
