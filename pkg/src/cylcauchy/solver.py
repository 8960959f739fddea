"""Mode-space analysis and solution of the cylinder Cauchy problem.

Everything here works in the coefficient space of the product modes
u_km(x, t) = u_k(x) v_km(t): projection of data onto the modes, the
strong-solvability criterion (does sum |f_k1 / lambda_k1|^2 converge?),
the spectral solution a_km = f_km / lambda_km, the split into the stable
correctness subspace and its unstable complement, and the Hadamard-type
amplification table that exhibits the instability.

The forward operator acts diagonally on modes up to a reflection:
L u_km(x, t) = lambda_km u_km(x, 1-t). That identity makes the residual
of a computed solution exact in coefficient space, so verification never
needs a grid.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, NamedTuple, Sequence
import warnings

import numpy as np

from . import io as _io
from .deviating import DeviatingMode, eigenfunction, modes_up_to, smallest_eigenvalue
from .errors import (
    AmplificationOverflowError,
    IllPosedError,
    InsufficientDataWarning,
    ResolutionError,
    UnderflowRangeError,
    UnsupportedSpectrumError,
)
from .operator_model import OperatorSpectrum, eval_basis_1d
from .quadrature import simpson_weights

PROVENANCES = ("grid-projected", "file-loaded", "synthetic")
MIN_GRID_POINTS = 64
AMPLIFICATION_FLOOR = 1e-290  # |lambda| below this cannot be divided safely
ZERO_SUM_EPS = 1e-14  # rule (a): window terms negligible against the partial sum
DIVERGENT_FLOOR = 1e-12  # rule (b): flat-or-growing terms must also be non-negligible
DECAY_CONVERGENT = 1.1  # rule (c): power-law exponent above this summable with margin
DECAY_DIVERGENT = -0.1  # rule (c): exponent below this means growing terms


@dataclass(frozen=True)
class ModeCoefficients:
    """Reflected inner products f_km = (f(x, 1-t), u_km(x, t)) on the
    truncated index box k <= K, m <= M. Every slot is present; zeros are
    stored explicitly."""

    spectrum: OperatorSpectrum
    K: int
    M: int
    values: Mapping[tuple[int, int], float]
    provenance: str

    def __post_init__(self) -> None:
        if self.K < 1 or self.M < 1:
            raise ValueError("truncations K and M must be >= 1")
        if self.K > len(self.spectrum):
            raise ValueError(
                f"K={self.K} exceeds the {len(self.spectrum)}-entry spectrum"
            )
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        expected = {(k, m) for k in range(1, self.K + 1) for m in range(1, self.M + 1)}
        if set(self.values.keys()) != expected:
            raise ValueError("values must cover exactly the (k <= K, m <= M) box")
        for km, val in self.values.items():
            if not math.isfinite(val):
                raise ValueError(f"non-finite coefficient at {km}")

    @classmethod
    def from_dict(
        cls,
        spectrum: OperatorSpectrum,
        K: int,
        M: int,
        partial: Mapping[tuple[int, int], float],
        provenance: str = "synthetic",
    ) -> "ModeCoefficients":
        """Build with missing slots filled by explicit zeros."""
        for (k, m) in partial:
            if not (1 <= k <= K and 1 <= m <= M):
                raise ValueError(f"coefficient index ({k},{m}) outside the K x M box")
        values = {
            (k, m): float(partial.get((k, m), 0.0))
            for k in range(1, K + 1)
            for m in range(1, M + 1)
        }
        return cls(spectrum=spectrum, K=K, M=M, values=values, provenance=provenance)


@dataclass(frozen=True)
class SolvabilityReport:
    """Criterion bookkeeping: S_K = sum_{k<=K} |f_k1/lambda_k1|^2."""

    partial_sums: tuple[float, ...]
    amplifications: tuple[float, ...]
    verdict: str  # convergent | divergent | indeterminate
    tail_ratio: float


@dataclass(frozen=True)
class SolutionField:
    """Spectral solution a_km = f_km / lambda_km with its Parseval norm.

    The modes are kept alongside the coefficients so the field can be
    synthesized on a grid (built-in basis only) and its residual checked
    without recomputing the spectrum.
    """

    spectrum: OperatorSpectrum
    K: int
    M: int
    coefficients: Mapping[tuple[int, int], float]
    norm_sq: float
    modes: Mapping[int, tuple[DeviatingMode, ...]]


@dataclass(frozen=True)
class SubspaceSplit:
    """Partition of the coefficients: tilde_part carries the unstable
    ground components (k, 1) for k > p; hat_part carries everything else
    (the correctness subspace, where solving is stable)."""

    p: int
    tilde_part: ModeCoefficients
    hat_part: ModeCoefficients


class HadamardRow(NamedTuple):
    k: int
    mu: float
    lambda1: float
    amplification: float
    solution_norm: float
    representable: bool


def _thread_count() -> int:
    raw = os.environ.get("CYLCAUCHY_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"CYLCAUCHY_THREADS={raw!r} is not an integer") from None
    return max(1, n)


def compute_modes(
    spectrum: OperatorSpectrum, K: int, M: int, tol: float = 1e-12
) -> dict[int, tuple[DeviatingMode, ...]]:
    """Axis modes for every k <= K, m <= M, keyed by k.

    Per-k computations are independent; CYLCAUCHY_THREADS > 1 runs them
    on a thread pool.
    """
    if K < 1 or K > len(spectrum):
        raise ValueError(f"K must be in [1, {len(spectrum)}]")
    if M < 1:
        raise ValueError("M must be >= 1")
    ks = list(range(1, K + 1))
    workers = min(_thread_count(), K)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda k: modes_up_to(spectrum.mu(k), M, tol), ks))
    else:
        results = [modes_up_to(spectrum.mu(k), M, tol) for k in ks]
    return {k: tuple(mods) for k, mods in zip(ks, results)}


def _normalize_modes(
    modes, spectrum: OperatorSpectrum, K: int, M: int
) -> dict[int, tuple[DeviatingMode, ...]]:
    """Accept {k: mode sequence} or a flat k-major list and validate that
    every (k <= K, m <= M) slot is covered by a matching-mu mode."""
    if isinstance(modes, Mapping):
        grouped = {k: tuple(v) for k, v in modes.items()}
    else:
        flat = list(modes)
        if len(flat) < K * M:
            raise ValueError(f"need {K * M} modes for K={K}, M={M}, got {len(flat)}")
        grouped = {
            k: tuple(flat[(k - 1) * M : k * M]) for k in range(1, K + 1)
        }
    for k in range(1, K + 1):
        if k not in grouped or len(grouped[k]) < M:
            raise ValueError(f"modes missing for k={k} (need m=1..{M})")
        mu_k = spectrum.mu(k)
        for m in range(1, M + 1):
            mode = grouped[k][m - 1]
            if mode.m != m:
                raise ValueError(f"mode list for k={k} is not ordered m=1..{M}")
            if not math.isclose(mode.mu, mu_k, rel_tol=1e-12):
                raise ValueError(
                    f"mode mu={mode.mu} does not match spectrum mu_{k}={mu_k}"
                )
    return {k: grouped[k][:M] for k in range(1, K + 1)}


def _t_oscillations(mode: DeviatingMode) -> float:
    """Full oscillation count of v_km on [0, 1]: trig frequency of
    whichever fundamental-solution argument is negative."""
    freq_sq = max(-(mode.mu + mode.lam), -(mode.mu - mode.lam), 0.0)
    return math.sqrt(freq_sq) / (2.0 * math.pi)


def project_f(
    f,
    spectrum: OperatorSpectrum,
    K: int,
    M: int,
    modes,
) -> ModeCoefficients:
    """Mode coefficients f_km = integral of f(x, 1-t) u_k(x) v_km(t).

    ``f`` is either a path to a coefficient file (any spectrum) or a 2-D
    array sampling f on the uniform tensor grid x in [0, pi] (axis 0),
    t in [0, 1] (axis 1), endpoints included (built-in 1-D basis only).
    The reflection t -> 1-t is applied to the data, never to the modes;
    on a uniform grid it is an exact index reversal.
    """
    mode_map = _normalize_modes(modes, spectrum, K, M)
    if isinstance(f, (str, Path)):
        raw = _io.load_coefficients(f)
        for (k, m) in raw:
            if k > K or m > M:
                raise ValueError(
                    f"coefficient file entry ({k},{m}) outside K={K}, M={M}"
                )
        return ModeCoefficients.from_dict(
            spectrum, K, M, raw, provenance="file-loaded"
        )

    samples = np.asarray(f, dtype=float)
    if samples.ndim != 2:
        raise ValueError("grid samples must be a 2-D array over (x, t)")
    if not spectrum.evaluable:
        raise UnsupportedSpectrumError(
            "grid projection needs the built-in basis; supply a coefficient file"
        )
    nx, nt = samples.shape
    if nx < MIN_GRID_POINTS or nt < MIN_GRID_POINTS:
        raise ValueError(f"grid must have at least {MIN_GRID_POINTS} points per axis")
    # resolution guard: 8 quadrature points per full oscillation on each axis
    if nx - 1 < 4 * K:  # u_K has K/2 oscillations on [0, pi]
        raise ResolutionError(f"nx={nx} too coarse for K={K} (need nx >= {4 * K + 1})")
    max_osc_t = max(
        _t_oscillations(mode) for mods in mode_map.values() for mode in mods
    )
    need_t = int(math.ceil(8.0 * max_osc_t))
    if nt - 1 < need_t:
        raise ResolutionError(
            f"nt={nt} too coarse for the requested modes (need nt >= {need_t + 1})"
        )

    x = np.linspace(0.0, math.pi, nx)
    t = np.linspace(0.0, 1.0, nt)
    wx = simpson_weights(nx, x[1] - x[0])
    wt = simpson_weights(nt, t[1] - t[0])
    reflected = samples[:, ::-1]
    basis = np.stack([eval_basis_1d(k, x) for k in range(1, K + 1)])
    partial_x = (basis * wx) @ reflected  # shape (K, nt)
    values: dict[tuple[int, int], float] = {}
    for k in range(1, K + 1):
        for m in range(1, M + 1):
            v = eigenfunction(mode_map[k][m - 1], t)
            values[(k, m)] = float(partial_x[k - 1] @ (wt * v))
    return ModeCoefficients(
        spectrum=spectrum, K=K, M=M, values=values, provenance="grid-projected"
    )


def _lambda1_list(lambda1, K: int) -> list[float]:
    if isinstance(lambda1, Mapping):
        out = []
        for k in range(1, K + 1):
            if k not in lambda1:
                raise ValueError(f"lambda1 missing entry for k={k}")
            item = lambda1[k]
            if isinstance(item, DeviatingMode):
                item = item.lam
            elif isinstance(item, Sequence):
                item = item[0].lam
            out.append(float(item))
    else:
        seq = list(lambda1)
        if len(seq) < K:
            raise ValueError(f"lambda1 needs {K} entries, got {len(seq)}")
        out = [float(v.lam) if isinstance(v, DeviatingMode) else float(v) for v in seq[:K]]
    for k, lam in enumerate(out, start=1):
        if lam == 0.0 or not math.isfinite(lam):
            raise ValueError(f"lambda1[{k}] must be finite and nonzero")
    return out


def criterion(coeffs: ModeCoefficients, lambda1) -> SolvabilityReport:
    """Three-way solvability verdict from the ground-branch terms
    d_k = |f_k1 / lambda_k1|^2.

    Over the last window of W = max(5, K//4) terms: (a) if every window
    term is below 1e-14 of the running sum, the tail has died out ->
    convergent; (b) if the terms are nondecreasing and non-negligible ->
    divergent; (c) otherwise fit a power law d_k ~ k^(-rho) through the
    window in log-log coordinates: rho > 1.1 is summable with margin ->
    convergent, rho < -0.1 means growth -> divergent, anything between
    is honestly indeterminate. tail_ratio is the geometric step ratio
    across the window regardless of which rule fired.

    Fewer than 5 terms cannot support a verdict: the report carries
    verdict "indeterminate" and an InsufficientDataWarning is emitted,
    with the partial sums still filled in.
    """
    K = coeffs.K
    lams = _lambda1_list(lambda1, K)
    d = [abs(coeffs.values[(k, 1)] / lams[k - 1]) ** 2 for k in range(1, K + 1)]
    partial = []
    run = 0.0
    for term in d:
        run += term
        partial.append(run)
    amplifications = tuple(1.0 / lam for lam in lams)
    sums = tuple(partial)

    if K < 5:
        warnings.warn(
            f"criterion needs at least 5 terms for a verdict, got K={K}",
            InsufficientDataWarning,
            stacklevel=2,
        )
        return SolvabilityReport(sums, amplifications, "indeterminate", math.nan)

    W = max(5, K // 4)
    window = d[K - W :]
    total = partial[-1]

    if window[0] > 0.0 and window[-1] > 0.0:
        tail_ratio = (window[-1] / window[0]) ** (1.0 / (W - 1))
    elif window[-1] == 0.0:
        tail_ratio = 0.0
    else:
        tail_ratio = math.nan

    if total == 0.0:
        return SolvabilityReport(sums, amplifications, "convergent", 0.0)
    if max(window) < ZERO_SUM_EPS * total:
        return SolvabilityReport(sums, amplifications, "convergent", tail_ratio)
    # relative slack so that a flat tail with rounding jitter still counts
    nondecreasing = all(
        window[i + 1] >= window[i] * (1.0 - 1e-9) for i in range(W - 1)
    )
    if nondecreasing and window[-1] > DIVERGENT_FLOOR:
        return SolvabilityReport(sums, amplifications, "divergent", tail_ratio)

    ks = np.array([k for k in range(K - W + 1, K + 1) if d[k - 1] > 0.0], dtype=float)
    ds = np.array([d[k - 1] for k in range(K - W + 1, K + 1) if d[k - 1] > 0.0])
    verdict = "indeterminate"
    if len(ks) >= 2 and ks[0] != ks[-1]:
        rho = -np.polyfit(np.log(ks), np.log(ds), 1)[0]
        if rho > DECAY_CONVERGENT:
            verdict = "convergent"
        elif rho < DECAY_DIVERGENT:
            verdict = "divergent"
    return SolvabilityReport(sums, amplifications, verdict, tail_ratio)


def solve(
    coeffs: ModeCoefficients,
    modes,
    allow_ill_posed: bool = False,
) -> SolutionField:
    """Spectral solution a_km = f_km / lambda_km.

    A divergent criterion verdict is refused unless allow_ill_posed is
    set (the instability demos need the refused computation). norm_sq is
    the Parseval sum of squared coefficients.
    """
    mode_map = _normalize_modes(modes, coeffs.spectrum, coeffs.K, coeffs.M)
    if coeffs.K >= 5:
        report = criterion(coeffs, {k: mods[0].lam for k, mods in mode_map.items()})
        if report.verdict == "divergent" and not allow_ill_posed:
            raise IllPosedError(
                "criterion verdict is divergent; pass allow_ill_posed=True to force"
            )
    coefficients: dict[tuple[int, int], float] = {}
    for k in range(1, coeffs.K + 1):
        for m in range(1, coeffs.M + 1):
            lam = mode_map[k][m - 1].lam
            if abs(lam) < AMPLIFICATION_FLOOR:
                raise AmplificationOverflowError(
                    f"|lambda_{k}{m}|={abs(lam):.3e} below the safe division floor"
                )
            coefficients[(k, m)] = coeffs.values[(k, m)] / lam + 0.0  # -0.0 -> 0.0
    norm_sq = math.fsum(a * a for a in coefficients.values())
    return SolutionField(
        spectrum=coeffs.spectrum,
        K=coeffs.K,
        M=coeffs.M,
        coefficients=coefficients,
        norm_sq=norm_sq,
        modes=mode_map,
    )


def residual(u: SolutionField, coeffs: ModeCoefficients) -> float:
    """Relative l2 norm of lambda_km a_km - f_km; exact in coefficient
    space because the forward operator is diagonal on modes."""
    if u.K != coeffs.K or u.M != coeffs.M:
        raise ValueError(
            f"truncation mismatch: solution ({u.K},{u.M}) vs data ({coeffs.K},{coeffs.M})"
        )
    num = math.fsum(
        (u.modes[k][m - 1].lam * u.coefficients[(k, m)] - coeffs.values[(k, m)]) ** 2
        for k in range(1, u.K + 1)
        for m in range(1, u.M + 1)
    )
    den = math.fsum(v * v for v in coeffs.values.values())
    if den == 0.0:
        return 0.0 if num == 0.0 else math.inf
    return math.sqrt(num / den)


def split_subspace(coeffs: ModeCoefficients, p: int) -> SubspaceSplit:
    """Split off the unstable directions: tilde_part keeps the ground
    components (k, 1) with k > p, hat_part keeps (k, 1) for k <= p plus
    every m >= 2 component. The two parts sum to the original exactly."""
    if not 1 <= p <= coeffs.K:
        raise ValueError(f"cutoff p={p} must satisfy 1 <= p <= K={coeffs.K}")
    tilde = {}
    hat = {}
    for (k, m), val in coeffs.values.items():
        in_tilde = m == 1 and k > p
        tilde[(k, m)] = val if in_tilde else 0.0
        hat[(k, m)] = 0.0 if in_tilde else val
    make = lambda vals: ModeCoefficients(
        spectrum=coeffs.spectrum,
        K=coeffs.K,
        M=coeffs.M,
        values=vals,
        provenance="synthetic",
    )
    return SubspaceSplit(p=p, tilde_part=make(tilde), hat_part=make(hat))


def hadamard_amplification(
    spectrum: OperatorSpectrum, k_list: Sequence[int], epsilon: float
) -> list[HadamardRow]:
    """Instability table: data of norm epsilon concentrated on mode
    (k, 1) produces a solution of norm epsilon / lambda_k1. Rows whose
    ground eigenvalue underflows the supported range are marked
    unrepresentable instead of failing the whole table."""
    if not epsilon > 0.0:
        raise ValueError("epsilon must be positive")
    rows = []
    for k in k_list:
        mu = spectrum.mu(k)
        try:
            lam = smallest_eigenvalue(mu).lam
        except UnderflowRangeError:
            rows.append(HadamardRow(k, mu, math.nan, math.nan, math.nan, False))
            continue
        amp = 1.0 / lam
        rows.append(HadamardRow(k, mu, lam, amp, epsilon * abs(amp), True))
    return rows


def synthesize(
    field: SolutionField, nx: int, nt: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Evaluate u(x,t) = sum a_km u_k(x) v_km(t) on a uniform
    (nx, nt) grid over [0, pi] x [0, 1]. Built-in basis only."""
    if not field.spectrum.evaluable:
        raise UnsupportedSpectrumError(
            "synthesis needs the built-in basis; external spectra have no u_k"
        )
    if nx < 2 or nt < 2:
        raise ValueError("grid must have at least 2 points per axis")
    x = np.linspace(0.0, math.pi, nx)
    t = np.linspace(0.0, 1.0, nt)
    out = np.zeros((nx, nt))
    for k in range(1, field.K + 1):
        profile = np.zeros(nt)
        for m in range(1, field.M + 1):
            a = field.coefficients[(k, m)]
            if a != 0.0:
                profile += a * eigenfunction(field.modes[k][m - 1], t)
        out += np.outer(eval_basis_1d(k, x), profile)
    return x, t, out


def synthesize_data(
    modes_with_coeffs: Mapping[tuple[int, int], float],
    mode_map: Mapping[int, Sequence[DeviatingMode]],
    nx: int,
    nt: int,
) -> np.ndarray:
    """Forward-map a coefficient set through the operator identity
    L u_km(x,t) = lambda_km u_km(x, 1-t): returns grid samples of
    f = L(sum a_km u_km) for manufactured-solution tests."""
    x = np.linspace(0.0, math.pi, nx)
    t = np.linspace(0.0, 1.0, nt)
    out = np.zeros((nx, nt))
    for (k, m), a in modes_with_coeffs.items():
        if a == 0.0:
            continue
        mode = mode_map[k][m - 1]
        out += (a * mode.lam) * np.outer(eval_basis_1d(k, x), eigenfunction(mode, 1.0 - t))
    return out
