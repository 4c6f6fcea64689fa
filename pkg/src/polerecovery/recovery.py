"""Pole position and residue recovery from the sample coefficients.

The data-driven coefficients are affine in ``k``; a least-squares line
``c_n(k) ~ m_n k + q_n`` over a few integer ``k`` gives, for every degree
``n``, a pole-position estimate ``z_p(n) = -q_n / m_n + 1/2`` and a residue
estimate ``R_p(n) = -m_n / [2 sqrt(pi) Gamma(1/2 - z_p) P_n(-i z_p)]``.
Both traces settle on a plateau for intermediate ``n`` before roundoff
takes over; the longest plateau inside a relative band gives the estimate.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .coefficients import _check_pole, frak_c_scaled
from .errors import NoPoleDetected
from .special import SQRT_PI, complex_log_gamma, pollaczek_scaled

POSITION = "position"
RESIDUE = "residue"


@dataclass(frozen=True)
class RecoveryConfig:
    """Tuning knobs of the recovery pipeline.

    ``w_p_percent = None`` selects 1e-3 % for noiseless samples and 1e-2 %
    for perturbed ones.
    """

    k_list: tuple = (0, 1, 2, 3, 4, 5)
    n_scan: int = 600
    w_p_percent: Optional[float] = None
    l_min: int = 10
    guard: float = 1e-250

    def __post_init__(self):
        object.__setattr__(self, "k_list", tuple(int(k) for k in self.k_list))
        if len(set(self.k_list)) < 2:
            raise ValueError("k_list needs at least two distinct values")
        if self.n_scan < 0 or self.l_min < 1:
            raise ValueError("n_scan must be >= 0 and l_min >= 1")
        if self.w_p_percent is not None and self.w_p_percent <= 0:
            raise ValueError("w_p_percent must be positive")

    def band(self, samples):
        if self.w_p_percent is not None:
            return float(self.w_p_percent)
        return 1e-2 if samples.noise_bound > 0 else 1e-3

    def as_dict(self):
        d = asdict(self)
        d["k_list"] = list(self.k_list)
        return d


@dataclass(frozen=True)
class RegressionLine:
    n: int
    m_n: complex
    q_n: complex
    residual: float


@dataclass(frozen=True, eq=False)
class Trace:
    """Per-degree estimates; ``values[n]`` is NaN where ``defined[n]`` is False."""

    values: np.ndarray
    defined: np.ndarray
    kind: str

    def __len__(self):
        return len(self.values)

    def to_csv(self, path=None):
        lines = ["n,re,im,defined"]
        for n, (v, d) in enumerate(zip(self.values, self.defined)):
            if d:
                lines.append(f"{n},{float(v.real)!r},{float(v.imag)!r},1")
            else:
                lines.append(f"{n},,,0")
        text = "\n".join(lines) + "\n"
        if path is None:
            return text
        Path(path).write_text(text, encoding="utf-8")
        return None


@dataclass(frozen=True)
class ConvergenceRange:
    """Longest run of consecutive ``n`` inside a relative band."""

    n_min: int
    n_max: int
    center: float
    half_width: float
    w_p_percent: float

    @property
    def length(self):
        return self.n_max - self.n_min + 1


@dataclass(frozen=True)
class PoleEstimate:
    """Recovered pole parameters with plateau statistics.

    ``ranges`` maps ``"z_re"``, ``"z_im"``, ``"r_re"``, ``"r_im"`` to the
    plateau behind each component (residue entries absent until the
    residue is estimated).
    """

    z_p: complex
    z_p_std: tuple
    r_p: Optional[complex] = None
    r_p_std: Optional[tuple] = None
    ranges: dict = field(default_factory=dict)
    valid: bool = True

    def to_dict(self, config=None):
        def cval(v):
            return None if v is None else [float(v.real), float(v.imag)]

        out = {
            "z_p": cval(self.z_p),
            "z_p_std": list(self.z_p_std),
            "r_p": cval(self.r_p),
            "r_p_std": None if self.r_p_std is None else list(self.r_p_std),
            "ranges": {k: {**asdict(r), "length": r.length}
                       for k, r in self.ranges.items()},
            "valid": self.valid,
        }
        out["config"] = {} if config is None else config
        return out

    def to_json(self, path=None, config=None):
        text = json.dumps(self.to_dict(config), indent=2)
        if path is None:
            return text
        Path(path).write_text(text + "\n", encoding="utf-8")
        return None


# ----------------------------------------------------------------------------
# Regression
# ----------------------------------------------------------------------------

def _fit_lines(coeffs, k_list):
    """Unweighted least-squares lines through the rows of ``coeffs``.

    Returns slopes, intercepts and RMS residuals, one per row.
    """
    k = np.asarray(k_list, dtype=float)
    if len(np.unique(k)) < 2:
        raise ValueError("regression needs at least two distinct k values")
    dk = k - k.mean()
    cbar = coeffs.mean(axis=1)
    slope = (coeffs - cbar[:, None]) @ dk / (dk @ dk)
    intercept = cbar - slope * k.mean()
    resid = coeffs - (slope[:, None] * k[None, :] + intercept[:, None])
    rms = np.sqrt(np.mean(np.abs(resid) ** 2, axis=1))
    return slope, intercept, rms


def regress_mq(table, n):
    """Affine fit ``c_n(k) ~ m_n k + q_n`` over the table's ``k`` values."""
    if len(set(table.k_list)) < 2:
        raise ValueError("regression needs at least two distinct k values")
    m, q, r = _fit_lines(table.entries[n:n + 1], table.k_list)
    return RegressionLine(int(n), complex(m[0]), complex(q[0]), float(r[0]))


def _scaled_lines(samples, cfg):
    mant, expo = frak_c_scaled(samples, cfg.n_scan, cfg.k_list)
    m, q, _ = _fit_lines(mant, cfg.k_list)
    return m, q, expo


def _guarded(m, expo, guard):
    with np.errstate(divide="ignore"):
        log2m = np.log2(np.abs(m)) + expo
    return np.isfinite(log2m) & (log2m > math.log2(guard))


def pole_trace(samples, cfg=RecoveryConfig()):
    """Trace ``z_p(n) = -q_n / m_n + 1/2`` for ``n = 0..cfg.n_scan``."""
    m, q, expo = _scaled_lines(samples, cfg)
    ok = _guarded(m, expo, cfg.guard)
    vals = np.full(len(m), np.nan + 1j * np.nan)
    vals[ok] = -q[ok] / m[ok] + 0.5
    ok &= np.isfinite(vals)
    vals[~ok] = np.nan + 1j * np.nan
    return Trace(vals, ok, POSITION)


def residue_trace(samples, z_p_est, cfg=RecoveryConfig()):
    """Trace ``R_p(n) = -m_n / [2 sqrt(pi) Gamma(1/2 - z_p) P_n(-i z_p)]``."""
    z_p = _check_pole(z_p_est)
    m, _, expo = _scaled_lines(samples, cfg)
    pm, pe = pollaczek_scaled(cfg.n_scan, np.array([-1j * z_p]))
    pm, pe = pm[:, 0], pe[:, 0]
    pre = 2.0 * SQRT_PI * np.exp(complex_log_gamma(0.5 - z_p))
    ok = _guarded(m, expo, cfg.guard) & (np.abs(pm) > 0)
    vals = np.full(len(m), np.nan + 1j * np.nan)
    shift = np.clip(expo - pe, -2000, 2000)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        ratio = -m / (pre * pm)
        vals[ok] = (np.ldexp(ratio.real, shift) + 1j * np.ldexp(ratio.imag, shift))[ok]
    ok &= np.isfinite(vals)
    vals[~ok] = np.nan + 1j * np.nan
    return Trace(vals, ok, RESIDUE)


# ----------------------------------------------------------------------------
# Plateau detection
# ----------------------------------------------------------------------------

def detect_range(series, w_p_percent, l_min=10):
    """Longest run of consecutive entries inside a relative band.

    A window qualifies when ``max - min <= (w_p/100) |(max + min)/2|``.
    NaN entries break runs.  Ties go to the smallest starting index.

    Parameters
    ----------
    series : array_like of float
        One real component of a trace.
    w_p_percent : float
        Band width in percent of the central value.
    l_min : int
        Shortest run accepted as a plateau.

    Returns
    -------
    ConvergenceRange or None
    """
    if w_p_percent <= 0:
        raise ValueError("w_p_percent must be positive")
    x = np.asarray(series, dtype=float)
    frac = w_p_percent / 100.0
    best = None
    lo = 0
    maxq, minq = deque(), deque()
    for hi, v in enumerate(x):
        if np.isnan(v):
            maxq.clear()
            minq.clear()
            lo = hi + 1
            continue
        while maxq and x[maxq[-1]] <= v:
            maxq.pop()
        maxq.append(hi)
        while minq and x[minq[-1]] >= v:
            minq.pop()
        minq.append(hi)
        while True:
            top, bot = x[maxq[0]], x[minq[0]]
            if top - bot <= frac * abs(0.5 * (top + bot)):
                break
            lo += 1
            if maxq[0] < lo:
                maxq.popleft()
            if minq[0] < lo:
                minq.popleft()
        if best is None or hi - lo > best[1] - best[0]:
            best = (lo, hi)
    if best is None or best[1] - best[0] + 1 < l_min:
        return None
    seg = x[best[0]:best[1] + 1]
    top, bot = seg.max(), seg.min()
    return ConvergenceRange(int(best[0]), int(best[1]), float(0.5 * (top + bot)),
                            float(0.5 * (top - bot)), float(w_p_percent))


def _component_stats(series, rng):
    seg = np.asarray(series[rng.n_min:rng.n_max + 1], dtype=float)
    std = float(seg.std(ddof=1)) if len(seg) > 1 else 0.0
    return float(seg.mean()), std


def _borrowed_range(series, rng):
    """Range ``rng`` re-centred on another component, with its achieved band."""
    seg = np.asarray(series[rng.n_min:rng.n_max + 1], dtype=float)
    top, bot = float(seg.max()), float(seg.min())
    center = 0.5 * (top + bot)
    spread = top - bot
    w_p = 100.0 * spread / abs(center) if center else (0.0 if spread == 0 else math.inf)
    return ConvergenceRange(rng.n_min, rng.n_max, center, 0.5 * spread, w_p)


def _estimate_from_trace(trace, w_p, l_min, prefix, what):
    # The real part drives detection.  An imaginary part small against the
    # real one may never fit a relative band once noise is present; it then
    # takes its statistics over the real part's range.
    r_re = detect_range(trace.values.real, w_p, l_min)
    if r_re is None:
        raise NoPoleDetected(f"no range of convergence in the real part of the {what} trace")
    r_im = detect_range(trace.values.imag, w_p, l_min)
    if r_im is None:
        r_im = _borrowed_range(trace.values.imag, r_re)
    mu_re, sd_re = _component_stats(trace.values.real, r_re)
    mu_im, sd_im = _component_stats(trace.values.imag, r_im)
    return complex(mu_re, mu_im), (sd_re, sd_im), {f"{prefix}_re": r_re, f"{prefix}_im": r_im}


def estimate_pole(samples, cfg=RecoveryConfig()):
    """Pole position from the plateau of the position trace.

    Raises
    ------
    NoPoleDetected
        When the real part has no plateau, or the plateau sits outside the
        sampled stretch ``0 < Re z <= n0 + 1/2``.
    """
    trace = pole_trace(samples, cfg)
    z, sd, ranges = _estimate_from_trace(trace, cfg.band(samples), cfg.l_min, "z", "position")
    if z.real <= 0:
        raise NoPoleDetected(f"position trace settles at {z:.6g}, outside the right half-plane")
    if z.real > samples.n0 + 0.5:
        # beyond the last node the data carry no information on the pole
        raise NoPoleDetected(f"position trace settles at {z:.6g}, beyond the last sampling node")
    return PoleEstimate(z, sd, None, None, ranges, True)


def estimate_residue(samples, z_p_est, cfg=RecoveryConfig()):
    """Residue from the plateau of the residue trace at the given position."""
    trace = residue_trace(samples, z_p_est, cfg)
    r, sd, ranges = _estimate_from_trace(trace, cfg.band(samples), cfg.l_min, "r", "residue")
    return PoleEstimate(complex(z_p_est), (0.0, 0.0), r, sd, ranges, True)


def recover(samples, cfg=RecoveryConfig()):
    """Position then residue; returns a complete :class:`PoleEstimate`."""
    pos = estimate_pole(samples, cfg)
    res = estimate_residue(samples, pos.z_p, cfg)
    return PoleEstimate(pos.z_p, pos.z_p_std, res.r_p, res.r_p_std,
                        {**pos.ranges, **res.ranges}, True)
