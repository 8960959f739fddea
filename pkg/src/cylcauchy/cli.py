"""Command-line front end.

Six subcommands over the built-in Dirichlet spectrum mu_k = k^2:
``spectrum`` (axis eigenvalues for one mu), ``oracle`` (cross-check
against the discretized integral operator), ``asymptotics`` (ground
eigenvalue versus its closed-form law), ``criterion`` (solvability
report for a coefficient file), ``solve`` (spectral solution, optionally
restricted to the stable subspace or synthesized on a grid), and
``hadamard`` (instability amplification table).

Artifacts are CSV or JSON, always embed the resolved configuration, are
written atomically, and carry floats at full double precision, so a
repeated invocation is byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass, fields

from . import io as _io
from . import __version__
from .deviating import (
    asymptotic_lambda1,
    char_fn,
    eigenvalues,
    modes_up_to,
    smallest_eigenvalue,
)
from .errors import CylcauchyError
from .operator_model import dirichlet_spectrum_1d
from .oracle import oracle_lambdas
from .solver import (
    ModeCoefficients,
    compute_modes,
    criterion,
    hadamard_amplification,
    project_f,
    residual,
    solve,
    split_subspace,
    synthesize,
)

DEFAULT_TOL = 1e-12
DEFAULT_PANELS = 2048
DEFAULT_M = 8


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved invocation, echoed into every artifact."""

    subcommand: str
    mu: float | None = None
    k_range: str | None = None
    count: int | None = None
    grid_size: int | None = None
    lambda_max: float | None = None
    K: int | None = None
    M: int | None = None
    input: str | None = None
    output: str | None = None
    format: str = "json"
    tol: float = DEFAULT_TOL
    epsilon: float | None = None
    cutoff_p: int | None = None
    allow_ill_posed: bool = False
    seed: int = 0
    panels: int = DEFAULT_PANELS
    version: str = __version__


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _config_comment(config: RunConfig) -> str:
    parts = [f"{f.name}={_fmt(getattr(config, f.name))}" for f in fields(config)
             if getattr(config, f.name) is not None]
    return "config: " + ",".join(parts)


def _parse_k_range(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise ValueError(f"expected inclusive range 'a..b', got {text!r}") from None
    if lo < 1 or hi < lo:
        raise ValueError(f"range {text!r} must satisfy 1 <= a <= b")
    return lo, hi


def _emit(config: RunConfig, header: list[str], rows: list[list], json_obj) -> None:
    """Write the artifact in the configured format to --output or stdout."""
    if config.format == "csv":
        lines = [f"# {_config_comment(config)}", ",".join(header)]
        lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = {"config": {k: v for k, v in asdict(config).items() if v is not None}}
        payload.update(json_obj)
        text = _io.dump_json(payload)
    if config.output:
        _io.atomic_write_text(config.output, text)
    else:
        sys.stdout.write(text)


def _cmd_spectrum(config: RunConfig) -> int:
    if config.lambda_max is not None:
        modes = eigenvalues(
            config.mu, config.lambda_max, max_count=config.count, tol=config.tol
        )
    else:
        modes = modes_up_to(config.mu, config.count, tol=config.tol)
    rows = [[md.m, md.lam, char_fn(config.mu, md.lam)] for md in modes]
    _emit(
        config,
        ["m", "lambda", "residual"],
        rows,
        {"rows": [{"m": r[0], "lambda": r[1], "residual": r[2]} for r in rows]},
    )
    return 0


def _cmd_oracle(config: RunConfig) -> int:
    pairs = oracle_lambdas(config.mu, config.grid_size, config.count)
    analytic = modes_up_to(config.mu, len(pairs), tol=config.tol)
    rows = []
    for md, (lam_oracle, _vec) in zip(analytic, pairs):
        rows.append(
            [md.m, lam_oracle, md.lam, abs(lam_oracle - md.lam) / abs(md.lam)]
        )
    _emit(
        config,
        ["m", "lambda_oracle", "lambda_analytic", "rel_diff"],
        rows,
        {
            "rows": [
                {
                    "m": r[0],
                    "lambda_oracle": r[1],
                    "lambda_analytic": r[2],
                    "rel_diff": r[3],
                }
                for r in rows
            ]
        },
    )
    return 0


def _cmd_asymptotics(config: RunConfig) -> int:
    lo, hi = _parse_k_range(config.k_range)
    rows = []
    for k in range(lo, hi + 1):
        mu = float(k * k)
        lam = smallest_eigenvalue(mu, tol=config.tol).lam
        approx = asymptotic_lambda1(mu)
        rows.append([k, lam, approx.leading, lam / approx.leading])
    _emit(
        config,
        ["k", "lambda1", "leading", "ratio"],
        rows,
        {
            "rows": [
                {"k": r[0], "lambda1": r[1], "leading": r[2], "ratio": r[3]}
                for r in rows
            ]
        },
    )
    return 0


def _load_coeffs(config: RunConfig) -> tuple[ModeCoefficients, dict]:
    raw = _io.load_coefficients(config.input)
    if not raw:
        raise CylcauchyError(f"coefficient file {config.input} holds no entries")
    K = config.K if config.K is not None else max(k for k, _ in raw)
    M = config.M if config.M is not None else DEFAULT_M
    spectrum = dirichlet_spectrum_1d(K)
    modes = compute_modes(spectrum, K, M, tol=config.tol)
    coeffs = project_f(config.input, spectrum, K, M, modes)
    return coeffs, modes


def _cmd_criterion(config: RunConfig) -> int:
    coeffs, modes = _load_coeffs(config)
    report = criterion(coeffs, {k: mods[0].lam for k, mods in modes.items()})
    rows = [
        [k, report.amplifications[k - 1], report.partial_sums[k - 1]]
        for k in range(1, coeffs.K + 1)
    ]
    if config.format == "csv":
        cfg = _config_comment(config)
        lines = [
            f"# {cfg}",
            f"# verdict={report.verdict}",
            f"# tail_ratio={_fmt(report.tail_ratio)}",
            "k,amplification,partial_sum",
        ]
        lines.extend(",".join(_fmt(c) for c in row) for row in rows)
        text = "\n".join(lines) + "\n"
        if config.output:
            _io.atomic_write_text(config.output, text)
        else:
            sys.stdout.write(text)
    else:
        _emit(
            config,
            [],
            [],
            {
                "partial_sums": list(report.partial_sums),
                "amplifications": list(report.amplifications),
                "verdict": report.verdict,
                "tail_ratio": report.tail_ratio,
            },
        )
    return 0


def _cmd_solve(config: RunConfig) -> int:
    coeffs, modes = _load_coeffs(config)
    tilde_norm_sq = None
    if config.cutoff_p is not None:
        split = split_subspace(coeffs, config.cutoff_p)
        tilde_norm_sq = sum(v * v for v in split.tilde_part.values.values())
        coeffs = split.hat_part
    field = solve(coeffs, modes, allow_ill_posed=config.allow_ill_posed)
    res = residual(field, coeffs)
    if config.grid_size is not None:
        if config.format != "csv":
            raise ValueError("--grid-size synthesis output requires --format csv")
        _x, _t, values = synthesize(field, config.grid_size, config.grid_size)
        text = _io.dump_grid_csv(values, comment=_config_comment(config))
        if config.output:
            _io.atomic_write_text(config.output, text)
        else:
            sys.stdout.write(text)
        return 0
    rows = [[k, m, field.coefficients[(k, m)]] for (k, m) in sorted(field.coefficients)]
    json_extra = {
        "coefficients": [{"k": k, "m": m, "a": a} for k, m, a in rows],
        "norm_sq": field.norm_sq,
        "residual": res,
    }
    if tilde_norm_sq is not None:
        json_extra["tilde_norm_sq"] = tilde_norm_sq
    _emit(config, ["k", "m", "a"], rows, json_extra)
    return 0


def _cmd_hadamard(config: RunConfig) -> int:
    lo, hi = _parse_k_range(config.k_range)
    spectrum = dirichlet_spectrum_1d(hi)
    table = hadamard_amplification(spectrum, list(range(lo, hi + 1)), config.epsilon)
    rows = [list(r) for r in table]
    _emit(
        config,
        ["k", "mu", "lambda1", "amplification", "solution_norm", "representable"],
        rows,
        {"rows": [r._asdict() for r in table]},
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cylcauchy",
        description="Spectral analysis and solution of the ill-posed "
        "Cauchy problem in a cylinder via the reflection-coupled eigenproblem.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--output", help="artifact path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="root tolerance (default 1e-12)")

    p = sub.add_parser("spectrum", help="axis eigenvalues for one mu")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--lambda-max", type=float, default=None,
                   help="scan radius (default: grown automatically)")
    common(p)

    p = sub.add_parser("oracle", help="cross-check against the discretized operator")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--grid-size", type=int, default=400)
    p.add_argument("--count", type=int, default=5)
    common(p)

    p = sub.add_parser("asymptotics", help="ground eigenvalue vs. 4 mu exp(-sqrt(mu))")
    p.add_argument("--k-range", default="5..15", help="inclusive range a..b")
    common(p)

    p = sub.add_parser("criterion", help="solvability report for a coefficient file")
    p.add_argument("--input", required=True)
    p.add_argument("--K", type=int, default=None, help="default: largest k in file")
    p.add_argument("--M", type=int, default=None, help=f"default: {DEFAULT_M}")
    common(p)

    p = sub.add_parser("solve", help="spectral solution from a coefficient file")
    p.add_argument("--input", required=True)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--M", type=int, default=None)
    p.add_argument("--cutoff-p", type=int, default=None,
                   help="restrict to the stable subspace with this cutoff")
    p.add_argument("--allow-ill-posed", action="store_true")
    p.add_argument("--grid-size", type=int, default=None,
                   help="synthesize u on this square grid (csv only)")
    common(p)

    p = sub.add_parser("hadamard", help="instability amplification table")
    p.add_argument("--k-range", default="2..12", help="inclusive range a..b")
    p.add_argument("--epsilon", type=float, default=1e-3)
    common(p)

    return parser


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "oracle": _cmd_oracle,
    "asymptotics": _cmd_asymptotics,
    "criterion": _cmd_criterion,
    "solve": _cmd_solve,
    "hadamard": _cmd_hadamard,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    keys = {f.name for f in fields(RunConfig)} - {"subcommand", "seed", "panels", "version"}
    resolved = {
        key: getattr(args, key) for key in keys if getattr(args, key, None) is not None
    }
    config = RunConfig(subcommand=args.subcommand, **resolved)
    try:
        return _COMMANDS[args.subcommand](config)
    except CylcauchyError as exc:
        print(f"cylcauchy {args.subcommand}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        # malformed argument values or unreadable inputs are usage errors
        print(f"cylcauchy {args.subcommand}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
