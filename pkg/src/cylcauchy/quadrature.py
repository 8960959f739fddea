"""Composite Simpson quadrature on uniform grids.

Self-contained so that projection code and test oracles share one
deterministic rule. For an even panel count this is plain composite
Simpson; for an odd count the last three panels use the 3/8 rule, which
keeps fourth-order accuracy for any grid with at least 4 points.
"""

from __future__ import annotations

import numpy as np


def simpson_weights(n_points: int, spacing: float) -> np.ndarray:
    """Quadrature weights for ``n_points`` equispaced samples.

    Parameters
    ----------
    n_points : number of samples, at least 4 (or any even-panel count >= 3).
    spacing : grid step.
    """
    if n_points < 3:
        raise ValueError("Simpson weights need at least 3 points")
    panels = n_points - 1
    w = np.zeros(n_points)
    if panels % 2 == 0:
        w[0] = w[-1] = 1.0
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        w *= spacing / 3.0
        return w
    if n_points < 4:
        raise ValueError("odd panel count needs at least 4 points")
    # Simpson 1/3 over the leading even stretch, 3/8 over the last 3 panels.
    lead = n_points - 3
    if lead >= 3:
        w[:lead] = simpson_weights(lead, spacing)
    w[lead - 1 :] += spacing * 3.0 / 8.0 * np.array([1.0, 3.0, 3.0, 1.0])
    return w


def integrate(values: np.ndarray, spacing: float, axis: int = -1) -> np.ndarray | float:
    """Integrate sampled values along ``axis`` with Simpson weights."""
    values = np.asarray(values, dtype=float)
    w = simpson_weights(values.shape[axis], spacing)
    return np.tensordot(values, w, axes=([axis], [0]))
