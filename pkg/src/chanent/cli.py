"""``chanent`` command-line interface.

Exit codes: 0 success, 1 bad input or configuration, 2 the channel failed
validation (report still written), 3 the command needs a classical channel,
4 the entropy inequality failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from chanent import choi as choi_mod
from chanent import io as jio
from chanent import matrix_kernel as mk
from chanent.channels import Channel, check_unital, classical_embed, random_stochastic
from chanent.decomposition import (
    GAP_TOL,
    MAX_SOLVER_DIM,
    channel_entropy_classical,
    minimize_F_closed_form,
    state_channel_entropy_upper,
    verify_inequality,
)
from chanent.entropy import choi_entropy, ohya_entropy
from chanent.errors import ChanentError

DEFAULT_SEED = 20240229
COMMANDS = ("choi", "entropy", "hent", "verify", "example", "random")

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_NOT_CLASSICAL, EXIT_FAILED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    output_path: str | None = None
    p: float | None = None
    q: float | None = None
    tol: float = mk.PSD_TOL
    seed: int = DEFAULT_SEED
    count: int = 1000
    n: int = 2
    start: float | None = None
    stop: float | None = None
    step: float = 0.1
    bits: bool = False
    normalized: bool = False

    @property
    def unit_scale(self) -> float:
        return float(np.log(2.0)) if self.bits else 1.0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chanent", description="Entropy of unital completely positive maps."
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", dest="input_path", help="channel specification (JSON)")
    parser.add_argument("--output", dest="output_path", help="write results here instead of stdout")
    parser.add_argument("--p", type=float, help="first row of [[p, 1-p], [q, 1-q]]")
    parser.add_argument("--q", type=float, help="second row; defaults to 1-p")
    parser.add_argument("--start", type=float, help="first p of the sweep (default: step)")
    parser.add_argument("--stop", type=float, help="last p of the sweep (default: 1-step)")
    parser.add_argument("--sweep-step", dest="step", type=float, default=0.1)
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--tol", type=float, default=mk.PSD_TOL, help="positivity slack")
    parser.add_argument("--bits", action="store_true", help="report entropies in bits")
    parser.add_argument(
        "--normalized", action="store_true", help="entropy of rho_T/n instead of rho_T"
    )
    return parser


def _read_channel(cfg: RunConfig) -> Channel:
    if cfg.input_path is not None:
        try:
            return jio.load_channel(cfg.input_path)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {cfg.input_path}: {exc}") from exc
    if cfg.p is not None:
        q = 1.0 - cfg.p if cfg.q is None else cfg.q
        return classical_embed([[cfg.p, 1.0 - cfg.p], [q, 1.0 - q]])
    raise UsageError("give a channel with --input, or --p/--q for a 2x2 classical channel")


def _emit(cfg: RunConfig, text: str, out) -> None:
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_choi(cfg: RunConfig, out) -> int:
    t = _read_channel(cfg)
    rho = choi_mod.representative_operator(t, cfg.tol)
    props = choi_mod.verify_properties(t, cfg.tol)
    extremal = choi_mod.is_extremal_choi(t) if rho.valid else None
    result = {
        "kind": "choi",
        "dim": t.dim,
        "data": jio.encode_matrix(rho.matrix),
        "spectrum": rho.spectrum.tolist(),
        "trace": rho.trace,
        "unital": check_unital(t),
        "positive": rho.positive,
        "properties": props.as_dict(),
        "extremal": extremal,
    }
    _emit(cfg, jio.dumps(result), out)
    return EXIT_OK if rho.valid and props.all() else EXIT_INVALID


def cmd_entropy(cfg: RunConfig, out) -> int:
    t = _read_channel(cfg)
    rho = choi_mod.representative_operator(t, cfg.tol)
    result = {"dim": t.dim, "unital": check_unital(t), "positive": rho.positive}
    if not rho.valid:
        _emit(cfg, jio.dumps(result), out)
        return EXIT_INVALID
    scale = cfg.unit_scale
    s = t.as_stochastic()
    result["d"] = choi_entropy(t, normalize=cfg.normalized) / scale
    result["extremal"] = choi_mod.is_extremal_choi(t)
    result["classical"] = s is not None
    if s is not None and s.shape[0] <= MAX_SOLVER_DIM:
        result["H"] = channel_entropy_classical(s).h_channel / scale
    if t.kind == "state":
        result["ohya"] = ohya_entropy(t.data) / scale
        result["H_upper"] = state_channel_entropy_upper(t.data) / scale
    result["unit"] = "bits" if cfg.bits else "nats"
    _emit(cfg, jio.dumps(result), out)
    return EXIT_OK


def _classical_or_exit(cfg: RunConfig, t: Channel, err) -> np.ndarray | None:
    s = t.as_stochastic()
    if s is None:
        err.write("chanent: channel is not classical; exact H(T) is only available for "
                  "stochastic channels. Use `chanent entropy` for the d(rho_T) bound.\n")
        return None
    if s.shape[0] > MAX_SOLVER_DIM:
        err.write(f"chanent: exact H(T) supports n <= {MAX_SOLVER_DIM}; "
                  "use `chanent entropy` for the d(rho_T) bound.\n")
        return None
    return s


def cmd_hent(cfg: RunConfig, out, err) -> int:
    t = _read_channel(cfg)
    s = _classical_or_exit(cfg, t, err)
    if s is None:
        return EXIT_NOT_CLASSICAL
    report = channel_entropy_classical(s)
    result = report.as_dict(cfg.unit_scale)
    result["unit"] = "bits" if cfg.bits else "nats"
    _emit(cfg, jio.dumps(result), out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out, err) -> int:
    t = _read_channel(cfg)
    rho = choi_mod.representative_operator(t, cfg.tol)
    props = choi_mod.verify_properties(t, cfg.tol)
    result = {
        "dim": t.dim,
        "unital": check_unital(t),
        "positive": rho.positive,
        "properties": props.as_dict(),
    }
    ok = rho.valid and props.all()
    if rho.normalized:
        back = choi_mod.reconstruct(rho)
        n = t.dim
        result["round_trip_error"] = max(
            float(np.max(np.abs(back.apply(mk.matrix_unit(n, i, j)) - t.apply(mk.matrix_unit(n, i, j)))))
            for i in range(n)
            for j in range(n)
        )
    if not ok:
        _emit(cfg, jio.dumps(result), out)
        return EXIT_INVALID
    s = _classical_or_exit(cfg, t, err)
    if s is None:
        result["d"] = choi_entropy(t) / cfg.unit_scale
        _emit(cfg, jio.dumps(result), out)
        return EXIT_NOT_CLASSICAL
    report = verify_inequality(s)
    result.update(report.as_dict(cfg.unit_scale))
    result["holds"] = report.holds
    _emit(cfg, jio.dumps(result), out)
    return EXIT_OK if report.holds else EXIT_FAILED


def example_rows(ps) -> list[tuple[float, float, float, float, float]]:
    rows = []
    for p in ps:
        q = 1.0 - p
        h_cf = minimize_F_closed_form(p, q)
        report = channel_entropy_classical([[p, 1.0 - p], [q, 1.0 - q]])
        rows.append((p, h_cf, report.h_channel, report.d_choi, report.gap))
    return rows


def _sweep_points(cfg: RunConfig) -> np.ndarray:
    if cfg.p is not None:
        return np.array([cfg.p])
    if not cfg.step > 0:
        raise UsageError("--sweep-step must be positive")
    start = cfg.step if cfg.start is None else cfg.start
    stop = 1.0 - cfg.step if cfg.stop is None else cfg.stop
    count = int(np.floor((stop - start) / cfg.step + 1e-9)) + 1
    ps = start + cfg.step * np.arange(max(count, 0))
    if len(ps) == 0 or ps.min() <= 0.0 or ps.max() >= 1.0:
        raise UsageError("sweep must stay inside the open interval (0, 1)")
    return ps


def cmd_example(cfg: RunConfig, out) -> int:
    ps = _sweep_points(cfg)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "H_closed_form", "H_vertex", "d_choi", "gap"])
    scale = cfg.unit_scale
    for p, *vals in example_rows(ps):
        writer.writerow([f"{p:.12g}"] + [f"{v / scale:.12g}" for v in vals])
    _emit(cfg, buf.getvalue(), out)
    return EXIT_OK


def random_summary(n: int, count: int, seed: int) -> dict:
    """Check the inequality on ``count`` Dirichlet(1, ..., 1) row-stochastic matrices.

    Samples come from ``numpy.random.default_rng(seed)`` (PCG64), one
    ``dirichlet`` draw of ``n`` rows per matrix.
    """
    rng = np.random.default_rng(seed)
    gaps = []
    failures = []
    for k in range(count):
        s = random_stochastic(n, rng)
        report = verify_inequality(s)
        gaps.append(report.gap)
        if not report.holds:
            failures.append({"index": k, "matrix": s.tolist(), "gap": report.gap})
    return {
        "n": n,
        "count": count,
        "seed": seed,
        "min_gap": min(gaps),
        "max_gap": max(gaps),
        "tolerance": GAP_TOL,
        "failures": len(failures),
        "failed_cases": failures,
    }


def cmd_random(cfg: RunConfig, out) -> int:
    if cfg.count < 1:
        raise UsageError("--count must be at least 1")
    if cfg.n not in (2, 3):
        raise UsageError("--n must be 2 or 3")
    if cfg.seed < 0:
        raise UsageError("--seed must be non-negative")
    summary = random_summary(cfg.n, cfg.count, cfg.seed)
    _emit(cfg, jio.dumps(summary), out)
    return EXIT_OK if summary["failures"] == 0 else EXIT_FAILED


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        if cfg.command == "choi":
            return cmd_choi(cfg, out)
        if cfg.command == "entropy":
            return cmd_entropy(cfg, out)
        if cfg.command == "hent":
            return cmd_hent(cfg, out, err)
        if cfg.command == "verify":
            return cmd_verify(cfg, out, err)
        if cfg.command == "example":
            return cmd_example(cfg, out)
        if cfg.command == "random":
            return cmd_random(cfg, out)
        raise UsageError(f"unknown command {cfg.command!r}")
    except (UsageError, ChanentError) as exc:
        err.write(f"chanent: {exc}\n")
        return EXIT_INPUT


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
