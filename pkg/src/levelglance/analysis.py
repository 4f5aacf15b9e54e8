"""Parameter sweeps, maximum search and record serialization."""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .approximations import (ZeroPoint, p_ddp, p_ddp_single_pair, p_magnus,
                             p_perturbative)
from .errors import (ConvergenceError, DegenerateSearchError, DomainError,
                     IntegratorError, UnsupportedModelError)
from .model import ModelSpec
from .propagator import PropagationConfig, PropagationResult, propagate_amplitudes

METHODS = ("numeric", "ddp", "ddp1", "pert", "magnus")
EVEN_ONLY = {"ddp1", "pert", "magnus"}

SWEEP_HEADER = ("n", "alpha", "p_numeric", "p_ddp", "p_ddp1", "p_pert", "p_magnus")
MAXIMA_HEADER = ("n", "p_max", "alpha_at_max")
ZEROS_HEADER = ("k", "re_tau", "im_tau", "re_D", "im_D", "gamma_k")
TRAJECTORY_HEADER = ("tau", "re_c1", "im_c1", "re_c2", "im_c2", "p")
FRESNEL_HEADER = ("n", "tau", "c", "s")

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class SweepRecord:
    n_power: int
    alpha: float
    p_numeric: float | None = None
    p_ddp: float | None = None
    p_ddp_single: float | None = None
    p_pert: float | None = None
    p_magnus: float | None = None
    error: str | None = None


@dataclass
class MaximumRecord:
    n_power: int
    p_max: float
    alpha_at_max: float


def _check_methods(n_power: int, methods: Iterable[str]) -> frozenset:
    methods = frozenset(methods)
    unknown = methods - set(METHODS)
    if unknown:
        raise DomainError(f"unknown methods: {', '.join(sorted(unknown))}")
    if n_power % 2 and methods & EVEN_ONLY:
        raise UnsupportedModelError(
            f"methods {', '.join(sorted(methods & EVEN_ONLY))} need even N (got N={n_power})")
    return methods


def evaluate_point(n_power: int, alpha: float, methods: frozenset,
                   config: PropagationConfig) -> SweepRecord:
    spec = ModelSpec(n_power, alpha)
    rec = SweepRecord(n_power, spec.alpha)
    if "numeric" in methods:
        try:
            rec.p_numeric = propagate_amplitudes(spec, config).final_probability
        except (ConvergenceError, IntegratorError) as exc:
            rec.error = str(exc)
    if "ddp" in methods:
        rec.p_ddp = p_ddp(spec)
    if "ddp1" in methods:
        rec.p_ddp_single = p_ddp_single_pair(spec)
    if "pert" in methods:
        rec.p_pert = p_perturbative(spec)
    if "magnus" in methods:
        rec.p_magnus = p_magnus(spec)
    return rec


def _evaluate_args(args):
    return evaluate_point(*args)


def sweep(n_power: int, alpha_grid: Sequence[float], methods: Iterable[str],
          config: PropagationConfig | None = None, workers: int = 1) -> list[SweepRecord]:
    """One record per grid point; failures are marked, not raised."""
    config = config or PropagationConfig()
    grid = [float(a) for a in alpha_grid]
    if not grid:
        raise DomainError("alpha grid is empty")
    if any(b <= a for a, b in zip(grid[:-1], grid[1:])):
        raise DomainError("alpha grid must be strictly increasing")
    if grid[0] < 0:
        raise DomainError("alpha grid must be non-negative")
    methods = _check_methods(n_power, methods)
    tasks = [(n_power, a, methods, config) for a in grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_evaluate_args, tasks, chunksize=8))
    return [_evaluate_args(t) for t in tasks]


def default_alpha_grid(alpha_min: float = 0.0, alpha_max: float = 6.0, steps: int = 600) -> np.ndarray:
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if steps == 1:
        return np.array([alpha_min])
    return np.linspace(alpha_min, alpha_max, steps)


def _golden_max(f, a: float, b: float, resolution: float):
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > resolution:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def find_maximum(n_power: int, alpha_interval: tuple[float, float] = (0.1, 2.0),
                 config: PropagationConfig | None = None, coarse_step: float = 0.01,
                 resolution: float = 1e-4) -> MaximumRecord:
    """Global maximum of the numeric P(alpha): coarse scan, then golden section."""
    config = config or PropagationConfig()
    low, high = alpha_interval
    if not 0 <= low < high:
        raise DomainError(f"need 0 <= low < high, got {alpha_interval}")
    if n_power % 2:
        raise UnsupportedModelError(f"find_maximum expects even N (got N={n_power})")

    def prob(a):
        return propagate_amplitudes(ModelSpec(n_power, a), config).final_probability

    count = int(math.floor((high - low) / coarse_step + 1e-9))
    grid = [low + k * coarse_step for k in range(count + 1)]
    if grid[-1] < high:
        grid.append(high)
    values = [prob(a) for a in grid]
    if max(values) - min(values) < 1e-9:
        raise DegenerateSearchError(f"P(alpha) is flat on {alpha_interval} for N={n_power}")
    i = int(np.argmax(values))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, len(grid) - 1)]
    best_a, best_p = _golden_max(prob, a, b, resolution)
    if values[i] > best_p:
        best_a, best_p = grid[i], values[i]
    return MaximumRecord(n_power, best_p, best_a)


def _maximum_args(args):
    return find_maximum(*args)


def maxima_table(n_list: Sequence[int], config: PropagationConfig | None = None,
                 alpha_interval: tuple[float, float] = (0.1, 2.0),
                 workers: int = 1) -> list[MaximumRecord]:
    config = config or PropagationConfig()
    for n in n_list:
        if n < 2 or n % 2:
            raise UnsupportedModelError(f"maxima_table needs even N >= 2 (got {n})")
    tasks = [(n, alpha_interval, config) for n in n_list]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_maximum_args, tasks))
    return [_maximum_args(t) for t in tasks]


# ---------------------------------------------------------------------------
# serialization

def fmt(x) -> str:
    """12 significant digits; empty for absent values."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.12g}"


def _round12(x):
    return None if x is None else float(f"{float(x):.12g}")


def sweep_rows(records: Sequence[SweepRecord]) -> list[list[str]]:
    rows = []
    for r in records:
        numeric = "nan" if r.error is not None else fmt(r.p_numeric)
        rows.append([fmt(r.n_power), fmt(r.alpha), numeric, fmt(r.p_ddp),
                     fmt(r.p_ddp_single), fmt(r.p_pert), fmt(r.p_magnus)])
    return rows


def maxima_rows(records: Sequence[MaximumRecord]) -> list[list[str]]:
    return [[fmt(r.n_power), fmt(r.p_max), fmt(r.alpha_at_max)] for r in records]


def zeros_rows(points: Sequence[ZeroPoint]) -> list[list[str]]:
    return [[fmt(z.index), fmt(z.location.real), fmt(z.location.imag),
             fmt(z.d_value.real), fmt(z.d_value.imag), fmt(z.gamma_factor)] for z in points]


def trajectory_rows(result: PropagationResult) -> list[list[str]]:
    rows = []
    for pt in result.trajectory:
        c1, c2 = pt.state.c1, pt.state.c2
        rows.append([fmt(pt.tau), fmt(c1.real), fmt(c1.imag), fmt(c2.real),
                     fmt(c2.imag), fmt(pt.probability)])
    return rows


def to_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def sweep_payload(records: Sequence[SweepRecord]) -> list[dict]:
    out = []
    for r in records:
        d = asdict(r)
        for key in ("alpha", "p_numeric", "p_ddp", "p_ddp_single", "p_pert", "p_magnus"):
            d[key] = _round12(d[key])
        out.append(d)
    return out


def maxima_payload(records: Sequence[MaximumRecord]) -> list[dict]:
    return [{"n_power": r.n_power, "p_max": _round12(r.p_max),
             "alpha_at_max": _round12(r.alpha_at_max)} for r in records]


def zeros_payload(points: Sequence[ZeroPoint]) -> list[dict]:
    return [{"k": z.index, "re_tau": _round12(z.location.real), "im_tau": _round12(z.location.imag),
             "re_D": _round12(z.d_value.real), "im_D": _round12(z.d_value.imag),
             "gamma_k": z.gamma_factor} for z in points]


def _parse(cell: str):
    return None if cell == "" else float(cell)


def read_sweep_csv(text: str) -> list[SweepRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != SWEEP_HEADER:
        raise ValueError(f"unexpected sweep header: {header}")
    records = []
    for row in reader:
        n, alpha, num, ddp, ddp1, pert, magnus = row
        rec = SweepRecord(int(n), float(alpha), _parse(num), _parse(ddp), _parse(ddp1),
                          _parse(pert), _parse(magnus))
        if rec.p_numeric is not None and math.isnan(rec.p_numeric):
            rec.p_numeric, rec.error = None, "numeric evaluation failed"
        records.append(rec)
    return records


def read_maxima_csv(text: str) -> list[MaximumRecord]:
    reader = csv.reader(io.StringIO(text))
    if tuple(next(reader)) != MAXIMA_HEADER:
        raise ValueError("unexpected maxima header")
    return [MaximumRecord(int(n), float(p), float(a)) for n, p, a in reader]


def table_report(records: Sequence[MaximumRecord]) -> str:
    """Three-decimal rendering of the maxima table."""
    lines = ["N    P_max  alpha_0"]
    for r in records:
        lines.append(f"{r.n_power:<4d} {r.p_max:.3f}  {r.alpha_at_max:.2f}")
    return "\n".join(lines) + "\n"
