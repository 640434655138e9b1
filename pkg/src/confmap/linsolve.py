"""Dense LU solve with a least-squares fallback, shared by every collocation system."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as la

PIVOT_FLOOR = 1e-300


class SolverError(RuntimeError):
    """The collocation system could not be solved to an acceptable residual."""


@dataclass(frozen=True)
class SolveReport:
    residual_inf: float
    cond_estimate: Optional[float] = None
    method: str = "lu"


def _cond_1(lu: np.ndarray, anorm: float) -> Optional[float]:
    gecon, = la.get_lapack_funcs(("gecon",), (lu,))
    rcond, info = gecon(lu, anorm, norm="1")
    if info != 0 or rcond == 0:
        return None
    return float(1.0 / rcond)


def solve(A, b, *, estimate_cond: bool = True) -> tuple[np.ndarray, SolveReport]:
    """Solve the square system ``A x = b``.

    LU with partial pivoting; a pivot below 1e-300 switches to least squares,
    which must then reach a residual of 1e-6 * max|b|.
    """
    A = np.asarray(A)
    b = np.asarray(b)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or b.shape != (A.shape[0],):
        raise ValueError(f"expected square system, got A{A.shape} b{b.shape}")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise SolverError("non-finite entries in the linear system")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", la.LinAlgWarning)
        lu, piv = la.lu_factor(A, check_finite=False)
    if np.abs(np.diag(lu)).min() >= PIVOT_FLOOR:
        x = la.lu_solve((lu, piv), b, check_finite=False)
        cond = _cond_1(lu, float(np.abs(A).sum(axis=0).max())) if estimate_cond else None
        method = "lu"
    else:
        x, *_ = la.lstsq(A, b)
        cond = None
        method = "lstsq"
    residual = float(np.abs(A @ x - b).max()) if b.size else 0.0
    if method == "lstsq" and residual > 1e-6 * float(np.abs(b).max(initial=0.0)):
        raise SolverError(f"singular system, least-squares residual {residual:.3e}")
    return x, SolveReport(residual, cond, method)
