"""Brute-force discrete oracle for the axis eigenproblem.

Inverting the axis operator with zero Cauchy data at t=0 and composing
with the reflection t -> 1-t turns the eigenproblem into a compact
symmetric integral operator with kernel

    m(t, s) = sinh(sqrt(mu) (t+s-1)) / sqrt(mu)   on t+s > 1,  0 elsewhere.

A midpoint Nystrom matrix of that kernel is diagonalized with a
hand-rolled cyclic Jacobi sweep (kept free of library eigensolvers so
the oracle stays independently auditable); matrix eigenvalues nu map to
axis eigenvalues lambda = 1/nu. Everything here is deliberately direct:
this module is the measuring stick the analytic route is tested against.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import JacobiConvergenceError, OracleRangeError, TruncatedResultWarning

ORACLE_MIN_N = 16
ORACLE_MAX_N = 4096
ORACLE_MAX_SQRT_MU = 40.0
NOISE_FLOOR = 1e-12  # relative cutoff below which matrix eigenvalues are discretization noise


@dataclass(frozen=True)
class KernelMatrix:
    """Midpoint Nystrom discretization of the composed kernel."""

    mu: float
    n: int
    h: float
    nodes: np.ndarray
    entries: np.ndarray


@dataclass(frozen=True)
class EigenDecomposition:
    """Jacobi output: eigenvalues sorted by decreasing magnitude, matching
    orthonormal eigenvector columns, and convergence diagnostics."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    offdiag_norm: float
    sweeps: int


class OracleEigenpair(NamedTuple):
    lam: float
    values: np.ndarray  # eigenfunction samples at the midpoint nodes, discrete L2-normalized


def composed_kernel(mu: float, t, s):
    """Kernel of the inverse axis operator composed with reflection.

    Vanishes on t + s <= 1; continuous across that line with a slope jump.
    """
    _check_mu(mu)
    t_arr = np.asarray(t, dtype=float)
    s_arr = np.asarray(s, dtype=float)
    if np.any((t_arr < 0) | (t_arr > 1)) or np.any((s_arr < 0) | (s_arr > 1)):
        raise ValueError("kernel arguments must lie in [0, 1]")
    root = math.sqrt(mu)
    u = t_arr + s_arr - 1.0
    out = np.where(u > 0.0, np.sinh(root * np.maximum(u, 0.0)) / root, 0.0)
    if np.isscalar(t) and np.isscalar(s):
        return float(out)
    return out


def kernel_trace(mu: float) -> float:
    """Closed form of the kernel diagonal integral, (cosh(sqrt(mu))-1)/(2 mu)."""
    _check_mu(mu)
    return (math.cosh(math.sqrt(mu)) - 1.0) / (2.0 * mu)


def kernel_hs_norm_sq(mu: float) -> float:
    """Closed form of the squared Hilbert-Schmidt norm,
    (cosh(2 sqrt(mu)) - 1 - 2 mu) / (8 mu^2)."""
    _check_mu(mu)
    return (math.cosh(2.0 * math.sqrt(mu)) - 1.0 - 2.0 * mu) / (8.0 * mu * mu)


def build_matrix(mu: float, n: int) -> KernelMatrix:
    """Nystrom matrix A[i,j] = h m(t_i, t_j) on midpoint nodes t_i = (i-1/2)h."""
    _check_mu(mu)
    if not ORACLE_MIN_N <= n <= ORACLE_MAX_N:
        raise OracleRangeError(f"grid size n={n} outside {ORACLE_MIN_N}..{ORACLE_MAX_N}")
    h = 1.0 / n
    nodes = (np.arange(1, n + 1) - 0.5) * h
    ts = np.add.outer(nodes, nodes)  # symmetric by construction, bit for bit
    root = math.sqrt(mu)
    entries = np.where(ts > 1.0, np.sinh(root * np.maximum(ts - 1.0, 0.0)) / root, 0.0)
    entries *= h
    return KernelMatrix(mu=mu, n=n, h=h, nodes=nodes, entries=entries)


def _check_mu(mu: float) -> None:
    if not (mu >= 1.0 and math.isfinite(mu)):
        raise OracleRangeError(f"mu={mu} must be finite and >= 1")
    if math.sqrt(mu) > ORACLE_MAX_SQRT_MU:
        raise OracleRangeError(
            f"sqrt(mu)={math.sqrt(mu):.3g} beyond oracle range {ORACLE_MAX_SQRT_MU}"
        )


@njit(cache=True)
def _offdiag_sq(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            acc += 2.0 * a[i, j] * a[i, j]
    return acc


@njit(cache=True)
def _jacobi_sweeps(a, v, tol, max_sweeps):
    """Cyclic-by-row Jacobi on a symmetric matrix, in place.

    Returns (sweeps_used, offdiag_norm, frobenius_norm). Stops once the
    off-diagonal Frobenius norm falls to tol times the full norm.
    """
    n = a.shape[0]
    norm_sq = 0.0
    for i in range(n):
        for j in range(n):
            norm_sq += a[i, j] * a[i, j]
    target_sq = tol * tol * norm_sq
    sweeps = 0
    off_sq = _offdiag_sq(a)
    while off_sq > target_sq and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * aiq
                        a[p, i] = a[i, p]
                        a[i, q] = s * aip + c * aiq
                        a[q, i] = a[i, q]
                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - s * viq
                    v[i, q] = s * vip + c * viq
        sweeps += 1
        off_sq = _offdiag_sq(a)
    return sweeps, math.sqrt(off_sq), math.sqrt(norm_sq)


def jacobi_eigen(matrix, tol: float = 1e-12, max_sweeps: int = 50) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi.

    ``matrix`` is a KernelMatrix or a plain symmetric ndarray; the input
    is never mutated. Eigenpairs come back sorted by decreasing |nu|.
    """
    a = matrix.entries if isinstance(matrix, KernelMatrix) else np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix must be exactly symmetric")
    if tol < 1e-14:
        raise ValueError("tol below 1e-14 is not reachable in double precision")
    if max_sweeps < 1:
        raise ValueError("max_sweeps must be >= 1")
    work = np.ascontiguousarray(a, dtype=float).copy()
    vecs = np.eye(a.shape[0])
    sweeps, off, norm = _jacobi_sweeps(work, vecs, tol, max_sweeps)
    if off > tol * norm:
        raise JacobiConvergenceError(
            f"off-diagonal norm {off:.3e} above target {tol * norm:.3e} "
            f"after {sweeps} sweeps",
            achieved=off,
        )
    diag = np.diag(work).copy()
    order = np.argsort(-np.abs(diag), kind="stable")
    return EigenDecomposition(
        eigenvalues=diag[order],
        eigenvectors=vecs[:, order],
        offdiag_norm=off,
        sweeps=sweeps,
    )


def oracle_lambdas(mu: float, n: int, count: int) -> list[OracleEigenpair]:
    """The ``count`` smallest-|lambda| axis eigenvalues at resolution n.

    Matrix eigenvalues below the relative noise floor are discarded;
    the rest invert to lambda = 1/nu. Eigenvectors are rescaled to unit
    discrete L2 norm and signed so the value nearest t = 1 is positive.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if count > n:
        raise ValueError(f"count={count} cannot exceed n={n}")
    km = build_matrix(mu, n)
    dec = jacobi_eigen(km)
    keep = np.abs(dec.eigenvalues) > NOISE_FLOOR * np.abs(dec.eigenvalues[0])
    pairs: list[OracleEigenpair] = []
    scale = 1.0 / math.sqrt(km.h)
    for idx in np.nonzero(keep)[0]:
        if len(pairs) == count:
            break
        vec = dec.eigenvectors[:, idx] * scale
        anchor = vec[-1] if vec[-1] != 0.0 else vec[np.argmax(np.abs(vec))]
        if anchor < 0.0:
            vec = -vec
        pairs.append(OracleEigenpair(lam=1.0 / float(dec.eigenvalues[idx]), values=vec))
    if len(pairs) < count:
        warnings.warn(
            f"only {len(pairs)} eigenvalues above noise floor (requested {count})",
            TruncatedResultWarning,
            stacklevel=2,
        )
    return pairs
