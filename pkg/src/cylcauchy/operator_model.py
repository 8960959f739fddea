"""Spatial operator spectra.

The axis eigenproblem only ever sees the spatial operator through its
eigenvalues mu_k (and, when solutions are synthesized on a grid, through
an evaluable eigenbasis). This module provides the built-in Dirichlet
Laplacian on (0, pi), tensor powers of it, and a loader for externally
supplied spectra. Every constructor enforces the Friedrichs bound
mu >= 1: the solvability theory is stated for operators bounded below
by the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    FriedrichsViolationError,
    SpectrumFormatError,
    SpectrumOrderingError,
)

BASIS_NORM_1D = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class SpectrumEntry:
    """One spatial eigenvalue: index k (1-based), value mu, optional
    multi-index label for tensor-product spectra."""

    k: int
    mu: float
    label: tuple[int, ...] | None = None


@dataclass(frozen=True)
class OperatorSpectrum:
    """Immutable, validated list of spatial eigenvalues.

    ``domain_descriptor`` identifies whether the eigenbasis can be
    evaluated: only ``"dirichlet-1d"`` ships with an evaluable basis.
    """

    entries: tuple[SpectrumEntry, ...]
    domain_descriptor: str = "external"

    def __post_init__(self):
        prev_mu = None
        for i, e in enumerate(self.entries):
            if e.k != i + 1:
                raise SpectrumFormatError(
                    f"spectrum indices must be consecutive from 1, got k={e.k} "
                    f"at position {i + 1}"
                )
            if not math.isfinite(e.mu) or e.mu < 1.0:
                raise FriedrichsViolationError(
                    f"mu_{e.k} = {e.mu}: spectrum must satisfy mu >= 1"
                )
            if prev_mu is not None and e.mu < prev_mu:
                raise SpectrumOrderingError(
                    f"mu_{e.k} = {e.mu} decreases below mu_{e.k - 1} = {prev_mu}"
                )
            prev_mu = e.mu

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def mu(self, k: int) -> float:
        """Eigenvalue for 1-based index k."""
        if not 1 <= k <= len(self.entries):
            raise ValueError(f"k={k} outside 1..{len(self.entries)}")
        return self.entries[k - 1].mu

    @property
    def evaluable(self) -> bool:
        return self.domain_descriptor == "dirichlet-1d"


def dirichlet_spectrum_1d(count: int) -> OperatorSpectrum:
    """First ``count`` eigenvalues mu_k = k^2 of -d^2/dx^2 on (0, pi)
    with Dirichlet ends; the basis is sqrt(2/pi) sin(kx)."""
    if count < 1:
        raise ValueError("count must be positive")
    entries = tuple(
        SpectrumEntry(k=k, mu=float(k * k), label=(k,)) for k in range(1, count + 1)
    )
    return OperatorSpectrum(entries=entries, domain_descriptor="dirichlet-1d")


def tensor_spectrum(dim: int, k_max_per_dim: int, count: int) -> OperatorSpectrum:
    """Spectrum of the Dirichlet Laplacian on (0, pi)^dim.

    Multi-indices from {1..k_max_per_dim}^dim are ranked by |k|^2 with
    lexicographic tie-break, then truncated to ``count`` entries. The
    caller is responsible for choosing k_max_per_dim large enough that
    the truncation is complete; count may not exceed the box size.
    """
    if dim < 1 or k_max_per_dim < 1:
        raise ValueError("dim and k_max_per_dim must be positive")
    if not 1 <= count <= k_max_per_dim**dim:
        raise ValueError(
            f"count={count} must lie in 1..k_max_per_dim**dim={k_max_per_dim**dim}"
        )
    if dim == 1:
        return dirichlet_spectrum_1d(count)
    grids = np.meshgrid(*([np.arange(1, k_max_per_dim + 1)] * dim), indexing="ij")
    multi = np.stack([g.ravel() for g in grids], axis=1)
    mus = (multi.astype(float) ** 2).sum(axis=1)
    order = np.lexsort(tuple(multi[:, d] for d in reversed(range(dim))) + (mus,))
    entries = []
    for rank, idx in enumerate(order[:count], start=1):
        entries.append(
            SpectrumEntry(k=rank, mu=float(mus[idx]), label=tuple(int(v) for v in multi[idx]))
        )
    return OperatorSpectrum(entries=tuple(entries), domain_descriptor=f"dirichlet-tensor-{dim}d")


def load_spectrum(path: str | Path) -> OperatorSpectrum:
    """Read a spectrum file: one ``k,mu[,label]`` entry per line, ``#``
    comments and blank lines allowed."""
    path = Path(path)
    entries = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (2, 3):
            raise SpectrumFormatError(f"{path}:{lineno}: expected 'k,mu[,label]', got {raw!r}")
        try:
            k = int(parts[0])
            mu = float(parts[1])
        except ValueError as exc:
            raise SpectrumFormatError(f"{path}:{lineno}: {exc}") from exc
        label = None
        if len(parts) == 3 and parts[2]:
            try:
                label = tuple(int(v) for v in parts[2].split())
            except ValueError:
                label = None  # free-form labels are kept out of the multi-index
        entries.append(SpectrumEntry(k=k, mu=mu, label=label))
    if not entries:
        raise SpectrumFormatError(f"{path}: no spectrum entries found")
    return OperatorSpectrum(entries=tuple(entries), domain_descriptor="external")


def eval_basis_1d(k: int, x):
    """Normalized Dirichlet sine basis sqrt(2/pi) sin(kx) on [0, pi].

    Accepts scalars or arrays; rejects points outside the interval.
    """
    if k < 1:
        raise ValueError("basis index k must be >= 1")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > math.pi):
        raise ValueError("basis argument outside [0, pi]")
    out = BASIS_NORM_1D * np.sin(k * arr)
    return float(out) if np.isscalar(x) or arr.ndim == 0 else out
