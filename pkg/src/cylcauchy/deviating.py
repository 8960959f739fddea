"""The reflection-coupled eigenproblem on the cylinder axis.

For each spatial eigenvalue mu the axis profile solves

    v''(t) - mu v(t) = lambda v(1-t),   v(0) = v'(0) = 0,

whose eigenvalues are the zeros of an entire characteristic function
``char_fn``. Everything in this module is branch-safe: the helpers
``cosh_like``/``sinh_like`` are the fundamental solutions of
w'' = alpha w written as entire functions of alpha, so no code path
cares whether mu +/- lambda changes sign.

Two numerical routes coexist on purpose. ``char_fn`` supports a uniform
sign-change scan (``eigenvalues``); ``varpi`` is the logarithmic form of
the same equation on 0 < lambda < mu, which stays perfectly conditioned
when the ground eigenvalue shrinks like exp(-sqrt(mu))
(``smallest_eigenvalue`` prefers it and falls back to the scan).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    RangeOverflowError,
    RootNotFoundError,
    ScanBudgetError,
    UnderflowRangeError,
)

CHAR_OVERFLOW_LIMIT = 700.0  # cap on (sqrt(mu+lam)+sqrt(mu-lam))/2 inside char_fn
SQRT_MU_CAP = 600.0  # beyond this, exp(-sqrt(mu)) quantities leave the supported range
SCAN_BUDGET = 1_000_000  # characteristic evaluations allowed per scan


@dataclass(frozen=True)
class DeviatingMode:
    """One axis eigenpair.

    The eigenfunction is v(t) = (c1 E(mu+lam, t-1/2) + c2 O(mu-lam, t-1/2)) / norm
    with E/O the even/odd fundamental solutions; c1, c2 carry the sign
    convention v(1) > 0 and norm makes the L2(0,1) norm one.
    """

    mu: float
    m: int
    lam: float
    c1: float
    c2: float
    norm: float


class AsymptoticLambda(NamedTuple):
    leading: float
    refined: float


def _split_scalar(x) -> bool:
    return np.isscalar(x) or (isinstance(x, np.ndarray) and x.ndim == 0)


def cosh_like(alpha, tau):
    """Even fundamental solution of w'' = alpha w at time tau:
    cosh(sqrt(alpha) tau) for alpha >= 0, cos(sqrt(-alpha) tau) below.
    Entire in alpha, so smooth across alpha = 0."""
    a, t = np.broadcast_arrays(
        np.atleast_1d(np.asarray(alpha, dtype=float)),
        np.atleast_1d(np.asarray(tau, dtype=float)),
    )
    out = np.empty(a.shape)
    pos = a >= 0.0
    out[pos] = np.cosh(np.sqrt(a[pos]) * t[pos])
    out[~pos] = np.cos(np.sqrt(-a[~pos]) * t[~pos])
    if _split_scalar(alpha) and _split_scalar(tau):
        return float(out[0] if out.ndim else out)
    return out.reshape(np.broadcast_shapes(np.shape(alpha), np.shape(tau)))


def sinh_like(alpha, tau):
    """Odd fundamental solution of w'' = alpha w at time tau:
    sinh(sqrt(alpha) tau)/sqrt(alpha), continued through alpha = 0 (value
    tau) and into sin(sqrt(-alpha) tau)/sqrt(-alpha) for alpha < 0."""
    a, t = np.broadcast_arrays(
        np.atleast_1d(np.asarray(alpha, dtype=float)),
        np.atleast_1d(np.asarray(tau, dtype=float)),
    )
    out = np.empty(a.shape)
    pos = a > 0.0
    neg = a < 0.0
    zero = ~(pos | neg)
    ra = np.sqrt(a[pos])
    out[pos] = np.sinh(ra * t[pos]) / ra
    rn = np.sqrt(-a[neg])
    out[neg] = np.sin(rn * t[neg]) / rn
    out[zero] = t[zero]
    if _split_scalar(alpha) and _split_scalar(tau):
        return float(out[0] if out.ndim else out)
    return out.reshape(np.broadcast_shapes(np.shape(alpha), np.shape(tau)))


def char_fn(mu: float, lam):
    """Entire characteristic function whose zeros are the axis eigenvalues.

    Normalized so char_fn(mu, 0) == 1 exactly. On the doubly-hyperbolic
    strip -mu <= lambda <= mu-1 the two exponentially large products are
    regrouped into (sigma cosh(delta) - delta cosh(sigma)) / b with
    sigma = (a+b)/2, delta = lambda/(a+b), a = sqrt(mu+lambda),
    b = sqrt(mu-lambda); that grouping subtracts only quantities of the
    size of the answer, so the tiny ground eigenvalue stays resolvable at
    full relative precision for sqrt(mu) into the hundreds. Elsewhere the
    plain even/odd-solution form is used (no large cancellation there).
    """
    if not (math.isfinite(mu) and mu >= 1.0):
        raise ValueError(f"mu={mu} must be finite and >= 1")
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=float))
    if not np.all(np.isfinite(lam_arr)):
        raise ValueError("lambda must be finite")
    splus = np.sqrt(np.maximum(mu + lam_arr, 0.0))
    sminus = np.sqrt(np.maximum(mu - lam_arr, 0.0))
    if np.any(0.5 * (splus + sminus) > CHAR_OVERFLOW_LIMIT):
        raise RangeOverflowError(
            "hyperbolic terms would overflow; use varpi for the ground branch"
        )
    out = np.empty(lam_arr.shape)
    hyp = (lam_arr >= -mu) & (lam_arr <= mu - 1.0)
    if np.any(hyp):
        a = splus[hyp]
        b = sminus[hyp]
        sig = 0.5 * (a + b)
        delta = lam_arr[hyp] / (a + b)
        out[hyp] = (sig * np.cosh(delta) - delta * np.cosh(sig)) / b
    rest = ~hyp
    if np.any(rest):
        al = mu + lam_arr[rest]
        be = mu - lam_arr[rest]
        out[rest] = cosh_like(al, 0.5) * cosh_like(be, 0.5) - al * sinh_like(
            al, 0.5
        ) * sinh_like(be, 0.5)
    if _split_scalar(lam):
        return float(out[0])
    return out.reshape(np.shape(lam))


def _check_cap(mu: float) -> None:
    if not (math.isfinite(mu) and mu >= 1.0):
        raise ValueError(f"mu={mu} must be finite and >= 1")
    if math.sqrt(mu) > SQRT_MU_CAP:
        raise UnderflowRangeError(
            f"sqrt(mu)={math.sqrt(mu):.4g} beyond supported cap {SQRT_MU_CAP}"
        )


def _log_coth(x: float) -> float:
    # ln coth(x) = ln1p(e^{-2x}) - ln1p(-e^{-2x}), exact for large x
    q = math.exp(-2.0 * x)
    return math.log1p(q) - math.log1p(-q)


def varpi(mu: float, lam: float) -> float:
    """Logarithmic characteristic function on the branch 0 < lambda < mu.

    Same zeros as char_fn there, but built from ln coth terms so its
    value near lambda = 0 is resolved additively: varpi(0+) equals
    2 ln coth(sqrt(mu)/2) and the slope at 0 is exactly -1/mu.
    """
    _check_cap(mu)
    if not (0.0 < lam < mu):
        raise ValueError(f"varpi needs 0 < lambda < mu, got lambda={lam}, mu={mu}")
    x1 = 0.5 * math.sqrt(mu + lam)
    x2 = 0.5 * math.sqrt(mu - lam)
    r = lam / mu
    return _log_coth(x1) + _log_coth(x2) - 0.5 * (math.log1p(r) - math.log1p(-r))


def _varpi_prime(mu: float, lam: float) -> float:
    """d varpi / d lambda, in closed form. Tends to -1/mu as lambda -> 0."""
    out = -0.5 * (1.0 / (mu + lam) + 1.0 / (mu - lam))
    sp = math.sqrt(mu + lam)
    sm = math.sqrt(mu - lam)
    if sp < 710.0:  # else the term is below double-precision underflow
        out -= 1.0 / (2.0 * sp * math.sinh(sp))
    if sm < 710.0:
        out += 1.0 / (2.0 * sm * math.sinh(sm))
    return out


def asymptotic_lambda1(mu: float) -> AsymptoticLambda:
    """Leading and refined closed-form approximations of the ground
    eigenvalue: 4 mu e^{-sqrt(mu)} and 2 mu ln coth(sqrt(mu)/2)."""
    _check_cap(mu)
    root = math.sqrt(mu)
    q = math.exp(-root)
    return AsymptoticLambda(
        leading=4.0 * mu * q,
        refined=2.0 * mu * (math.log1p(q) - math.log1p(-q)),
    )


def _int_even_sq(alpha: float) -> float:
    # integral over (0,1) of E(alpha, t-1/2)^2
    return 0.5 * (1.0 + sinh_like(alpha, 1.0))


def _int_odd_sq(beta: float) -> float:
    # integral over (0,1) of O(beta, t-1/2)^2 = (O(beta,1) - 1)/(2 beta),
    # series-continued through beta = 0
    if abs(beta) < 1e-2:
        return 1.0 / 12.0 + beta * (
            1.0 / 240.0 + beta * (1.0 / 10080.0 + beta / 725760.0)
        )
    return (sinh_like(beta, 1.0) - 1.0) / (2.0 * beta)


def _mode_from_root(mu: float, m: int, lam: float) -> DeviatingMode:
    """Assemble the normalized eigenfunction for a characteristic root.

    c1 = O(mu-lam, 1/2), c2 = E(mu+lam, 1/2) makes v(0) vanish
    identically and v'(0) equal char_fn, so boundary conditions hold by
    construction; only the root condition carries numerical error.
    """
    alpha = mu + lam
    beta = mu - lam
    c1 = sinh_like(beta, 0.5)
    c2 = cosh_like(alpha, 0.5)
    if 2.0 * c1 * c2 < 0.0:  # v(1) = 2 c1 c2; sign convention v(1) > 0
        c1, c2 = -c1, -c2
    scale = max(abs(c1), abs(c2), 1.0)  # keep norm_sq representable at large mu
    c1 /= scale
    c2 /= scale
    norm_sq = c1 * c1 * _int_even_sq(alpha) + c2 * c2 * _int_odd_sq(beta)
    return DeviatingMode(mu=mu, m=m, lam=lam, c1=c1, c2=c2, norm=math.sqrt(norm_sq))


def eigenfunction(mode: DeviatingMode, t):
    """Evaluate the normalized eigenfunction at t in [0, 1]."""
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr < 0.0) | (t_arr > 1.0)):
        raise ValueError("eigenfunction argument outside [0, 1]")
    s = t_arr - 0.5
    vals = (
        mode.c1 * cosh_like(mode.mu + mode.lam, s)
        + mode.c2 * sinh_like(mode.mu - mode.lam, s)
    ) / mode.norm
    if _split_scalar(t):
        return float(vals)
    return vals


def _bisect(fn, lo: float, hi: float, flo: float, rel_tol: float) -> float:
    """Standard bisection on a sign-changing bracket, to relative width rel_tol.

    The iteration cap covers the worst case of a bracket like [0, 1]
    closing onto a root near the underflow threshold, where relative
    convergence needs on the order of a thousand halvings.
    """
    for _ in range(1200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fmid = fn(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo <= rel_tol * max(abs(lo), abs(hi), 1e-300):
            break
    return 0.5 * (lo + hi)


def smallest_eigenvalue(mu: float, tol: float = 1e-12) -> DeviatingMode:
    """Ground mode (m = 1): the smallest-|lambda| axis eigenvalue.

    In the asymptotic regime the root of varpi is bracketed inside
    (refined/2, min(2 refined, mu/(4 mu + 1/2))), the second endpoint
    being the ceiling the ground branch obeys once the exponential
    regime is reached, then bisected and polished with Newton steps on
    varpi. Whenever that bracket is unavailable or does not change sign
    (moderate mu, where the ceiling does not apply yet), a sign-change
    scan of char_fn takes over; the grouped char_fn form keeps that
    route accurate too.
    """
    _check_cap(mu)
    if tol < 1e-14:
        raise ValueError("tol below 1e-14 is not achievable in double precision")
    approx = asymptotic_lambda1(mu)
    lam = None
    if approx.refined < mu / 5.0:
        lo = 0.5 * approx.refined
        hi = min(2.0 * approx.refined, mu / (4.0 * mu + 0.5))
        if lo < hi:
            flo = varpi(mu, lo)
            fhi = varpi(mu, hi)
            if flo > 0.0 > fhi:
                fn = lambda x: varpi(mu, x)
                lam = _bisect(fn, lo, hi, flo, 1e-6)
                for _ in range(60):  # Newton polish; varpi is smooth and monotone here
                    step = varpi(mu, lam) / _varpi_prime(mu, lam)
                    new = lam - step
                    if not lo < new < hi:
                        break
                    lam = new
                    if abs(step) <= tol * abs(lam):
                        break
    if lam is None:
        lam = _scan_smallest(mu, tol)
    return _mode_from_root(mu, 1, lam)


def _scan_smallest(mu: float, tol: float) -> float:
    lam_max = mu + 100.0
    for _ in range(4):
        found = _scan_roots(mu, lam_max, tol, stop_after=1)
        if found:
            return found[0]
        lam_max *= 2.0
    raise RootNotFoundError(f"no characteristic root found for mu={mu} up to {lam_max}")


def _scan_roots(mu: float, lam_max: float, tol: float, stop_after: int | None = None):
    """All characteristic roots in [-lam_max, lam_max], sorted by |lambda|.

    Uniform grid of step min(1, lam_max/2048), sign changes refined by
    bisection. Roots of even multiplicity (no sign change) are invisible
    to this scan by design.
    """
    if lam_max <= 0.0:
        raise ValueError("lambda_abs_max must be positive")
    step = min(1.0, lam_max / 2048.0)
    n_points = int(math.ceil(2.0 * lam_max / step)) + 1
    if n_points > SCAN_BUDGET:
        raise ScanBudgetError(
            f"scan would take {n_points} evaluations (budget {SCAN_BUDGET})"
        )
    grid = np.linspace(-lam_max, lam_max, n_points)
    vals = char_fn(mu, grid)
    roots: list[float] = []
    exact = np.nonzero(vals == 0.0)[0]
    roots.extend(float(grid[i]) for i in exact)
    sign_change = np.nonzero((vals[:-1] * vals[1:]) < 0.0)[0]
    fn = lambda x: char_fn(mu, x)
    for i in sign_change:
        roots.append(_bisect(fn, float(grid[i]), float(grid[i + 1]), float(vals[i]), tol))
    roots.sort(key=lambda r: (abs(r), r))
    if stop_after is not None:
        roots = roots[:stop_after]
    return roots


def eigenvalues(
    mu: float,
    lambda_abs_max: float,
    max_count: int | None = None,
    tol: float = 1e-12,
) -> list[DeviatingMode]:
    """Axis modes with |lambda| <= lambda_abs_max, ordered by |lambda|.

    The branch index m counts modes outward from zero (m = 1 is the
    ground mode). max_count truncates after ordering.
    """
    if tol < 1e-14:
        raise ValueError("tol below 1e-14 is not achievable in double precision")
    if max_count is not None and max_count < 1:
        raise ValueError("max_count must be >= 1")
    roots = _scan_roots(mu, lambda_abs_max, tol)
    if max_count is not None:
        roots = roots[:max_count]
    return [_mode_from_root(mu, m, lam) for m, lam in enumerate(roots, start=1)]


def modes_up_to(mu: float, count: int, tol: float = 1e-12) -> list[DeviatingMode]:
    """First ``count`` modes by |lambda|, choosing the scan radius
    automatically (trig branches space like (2 pi)^2 per mode)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    lam_max = mu + (2.0 * math.pi * (count + 1)) ** 2
    for _ in range(4):
        modes = eigenvalues(mu, lam_max, max_count=count, tol=tol)
        if len(modes) >= count:
            return modes
        lam_max *= 2.0
    raise RootNotFoundError(
        f"found only {len(modes)} of {count} requested modes for mu={mu}"
    )
