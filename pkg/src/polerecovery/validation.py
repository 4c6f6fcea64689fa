"""Self-validation: analyticity pre-test, sample reconstruction, truncation
choice, the relative RMS error and interpolation between the nodes.

Each sample ``f_k`` can be rebuilt from all the other samples, the pole
parameters and a truncated coefficient series::

    f_k = (-1)^(k+1) { sum_{N != k} (-1)^N f_N - pi R_p / cos(pi z_p)
                       + sum_{n <= m_t} chat_{n,k} Q_n[-i(k + 1/2)] }

with ``chat_{n,k} = c_n(k) - (z_p - 1/2 - k) tau_n``.  For functions
analytic in the right half-plane the pole term is dropped and
``chat_{n,k} = c_n(k)``.  The mismatch between input and rebuilt samples
measures how trustworthy the pole estimates are.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .coefficients import (frak_c_matrix, frak_c_scaled, hat_c_matrix, plain_coefficients,
                           tau_values)
from .errors import DomainError
from .recovery import PoleEstimate, detect_range
from .special import _sinpi, q_table, sinpi

ANALYTIC = "analytic"
MEROMORPHIC = "meromorphic"
LIKELY_ANALYTIC = "LikelyAnalytic"
LIKELY_NON_ANALYTIC = "LikelyNonAnalytic"

SKIP_FLOOR = 1e-300


@dataclass(frozen=True)
class AnalyticityVerdict:
    plateaus: dict
    verdict: str
    k_probed: tuple

    @property
    def likely_analytic(self):
        return self.verdict == LIKELY_ANALYTIC

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "k_probed": list(self.k_probed),
            "plateaus": {str(k): (None if r is None else
                                  {"n_min": r.n_min, "n_max": r.n_max, "center": r.center,
                                   "half_width": r.half_width, "length": r.length})
                         for k, r in self.plateaus.items()},
        }


@dataclass(frozen=True, eq=False)
class ReconstructionReport:
    reconstructed: np.ndarray
    truncation: int
    delta: float
    mode: str
    skipped: int = 0

    def to_dict(self, config=None):
        return {
            "mode": self.mode,
            "truncation": self.truncation,
            "delta": self.delta,
            "skipped": self.skipped,
            "reconstructed": [[float(v.real), float(v.imag)] for v in self.reconstructed],
            "config": {} if config is None else config,
        }

    def to_json(self, path=None, config=None):
        text = json.dumps(self.to_dict(config), indent=2)
        if path is None:
            return text
        Path(path).write_text(text + "\n", encoding="utf-8")
        return None


def _pole_pair(pole):
    if pole is None:
        return None
    if isinstance(pole, PoleEstimate):
        return complex(pole.z_p), complex(pole.r_p)
    z, r = pole
    return complex(z), complex(r)


# ----------------------------------------------------------------------------
# Analyticity pre-test
# ----------------------------------------------------------------------------

def _finite_norm_curve(samples, k, m_max):
    """``sum_{n<=m} |c_n(k)|^2`` up to the last ``m`` representable in double."""
    mant, expo = frak_c_scaled(samples, m_max, [k])
    fits = np.flatnonzero(expo > 480)
    stop = m_max if fits.size == 0 else int(fits[0]) - 1
    vals = np.ldexp(np.abs(mant[: stop + 1, 0]) ** 2, 2 * expo[: stop + 1])
    return np.cumsum(vals)


def analyticity_test(samples, k_probe=(5, 10, 15, 20), n_scan=600, w_p_percent=None,
                     l_min=10):
    """Look for plateaux of ``m -> sum_{n<=m} |c_n(k)|^2`` at several ``k``.

    A plateau for a majority of the probed ``k`` means the samples are
    compatible with a function analytic (and square integrable along the
    imaginary axis after the ``(z - k - 1/2)`` factor) in ``Re z > 0``.

    Parameters
    ----------
    samples : SampleSet
    k_probe : sequence of int
    n_scan : int
        Largest ``m`` examined.
    w_p_percent : float, optional
        Band width; defaults to 1e-3 % (noiseless) or 1e-2 % (noisy).
    l_min : int
        Shortest plateau that counts.
    """
    if w_p_percent is None:
        w_p_percent = 1e-2 if samples.noise_bound > 0 else 1e-3
    plateaus = {}
    for k in k_probe:
        curve = _finite_norm_curve(samples, k, n_scan)
        plateaus[int(k)] = detect_range(curve, w_p_percent, l_min)
    hits = sum(r is not None for r in plateaus.values())
    verdict = LIKELY_ANALYTIC if 2 * hits > len(plateaus) else LIKELY_NON_ANALYTIC
    return AnalyticityVerdict(plateaus, verdict, tuple(int(k) for k in k_probe))


# ----------------------------------------------------------------------------
# Reconstruction
# ----------------------------------------------------------------------------

def _direct_sums(samples):
    """``sum_{N != k} (-1)^N f_N`` for every k."""
    sign = np.where(np.arange(samples.n0 + 1) % 2 == 0, 1.0, -1.0)
    terms = sign * samples.values
    return terms.sum() - terms


def _pole_constant(z_p, r_p):
    c = _sinpi(np.array([z_p + 0.5]))[0]  # cos(pi z_p)
    if c == 0:
        raise DomainError(f"cos(pi z_p) vanishes at z_p = {z_p}")
    return np.pi * r_p / c


def _series_terms(samples, m_max, pole):
    """``chat_{n,k} Q_n[-i(k+1/2)]`` for ``n <= m_max`` and all ``k``."""
    ks = np.arange(samples.n0 + 1)
    if pole is None:
        coeffs = frak_c_matrix(samples, m_max, ks)
    else:
        coeffs = hat_c_matrix(samples, m_max, ks, *pole)
    return coeffs * q_table(m_max, ks.astype(float))


def _assemble(samples, series, pole):
    base = _direct_sums(samples)
    if pole is not None:
        base = base - _pole_constant(*pole)
    sign = np.where(np.arange(samples.n0 + 1) % 2 == 0, -1.0, 1.0)  # (-1)^(k+1)
    return sign * (base + series)


def _check_truncation(m_t):
    if m_t < 0:
        raise DomainError("truncation must be non-negative")


def reconstruct_meromorphic(samples, z_p_est, r_p_est, m_t):
    """Rebuild every sample from the others using the pole estimates."""
    _check_truncation(m_t)
    pole = (complex(z_p_est), complex(r_p_est))
    terms = _series_terms(samples, m_t, pole)
    return _assemble(samples, terms.sum(axis=0), pole)


def reconstruct_analytic(samples, m_t):
    """Rebuild every sample from the others assuming no pole."""
    _check_truncation(m_t)
    terms = _series_terms(samples, m_t, None)
    return _assemble(samples, terms.sum(axis=0), None)


def _delta_with_count(original, reconstructed):
    f = np.asarray(original.values if hasattr(original, "values") else original, dtype=complex)
    g = np.asarray(reconstructed, dtype=complex)
    if f.shape != g.shape:
        raise ValueError("original and reconstructed lengths differ")
    use = np.abs(f) >= SKIP_FLOOR
    if not use.any():
        raise DomainError("every sample is below the relative-error floor")
    rel = np.abs(f[use] - g[use]) ** 2 / np.abs(f[use]) ** 2
    return float(np.sqrt(rel.sum() / f.size)), int((~use).sum())


def delta_error(original, reconstructed):
    """Relative RMS mismatch ``sqrt(mean |f_k - fhat_k|^2 / |f_k|^2)``.

    Samples with ``|f_k| < 1e-300`` contribute nothing to the sum; the
    mean still divides by the full sample count ``n0 + 1``.
    """
    return _delta_with_count(original, reconstructed)[0]


def truncation_scan(samples, pole=None, scan=(0, 300)):
    """``delta`` for every truncation in ``scan`` (inclusive bounds).

    Returns
    -------
    m_values : ndarray of int
    deltas : ndarray of float
    """
    lo, hi = int(scan[0]), int(scan[1])
    if hi < lo or lo < 0:
        raise DomainError("empty truncation scan range")
    pole = _pole_pair(pole)
    terms = _series_terms(samples, hi, pole)
    partial = np.cumsum(terms, axis=0)[lo:]
    rebuilt = _assemble(samples, partial, pole)
    f = samples.values
    use = np.abs(f) >= SKIP_FLOOR
    if not use.any():
        raise DomainError("every sample is below the relative-error floor")
    rel = np.abs(rebuilt[:, use] - f[use]) ** 2 / np.abs(f[use]) ** 2
    with np.errstate(invalid="ignore"):
        deltas = np.sqrt(rel.sum(axis=1) / f.size)
    deltas = np.where(np.isfinite(deltas), deltas, np.inf)
    return np.arange(lo, hi + 1), deltas


def choose_truncation(samples, pole=None, scan=(0, 300)):
    """Truncation in ``scan`` minimising ``delta``; ties go to the smallest."""
    m_values, deltas = truncation_scan(samples, pole, scan)
    return int(m_values[int(np.argmin(deltas))])


def reconstruct(samples, pole=None, m_t=None, scan=(0, 300)):
    """Reconstruction report; ``m_t`` is chosen by :func:`choose_truncation` when absent."""
    pole = _pole_pair(pole)
    if m_t is None:
        m_t = choose_truncation(samples, pole, scan)
    if pole is None:
        rebuilt, mode = reconstruct_analytic(samples, m_t), ANALYTIC
    else:
        rebuilt, mode = reconstruct_meromorphic(samples, *pole, m_t), MEROMORPHIC
    delta, skipped = _delta_with_count(samples, rebuilt)
    return ReconstructionReport(rebuilt, int(m_t), delta, mode, skipped)


# ----------------------------------------------------------------------------
# Interpolation
# ----------------------------------------------------------------------------

def _sinc(d):
    """sin(pi d) / (pi d) with exact values at the integers."""
    d = np.asarray(d, dtype=float)
    out = np.ones_like(d)
    nz = d != 0
    out[nz] = sinpi(d[nz]) / (np.pi * d[nz])
    return out


def interpolate(samples, x, m_t, pole=None):
    """Evaluate the reconstructed function at ``z = x + 1/2``.

    Parameters
    ----------
    samples : SampleSet
    x : float or array_like
        Abscissae, ``x > -1/2``.  At integer ``x = N <= n0`` the input
        sample is returned exactly.
    m_t : int
        Number of series terms kept (degrees ``0..m_t``).
    pole : PoleEstimate or (z_p, R_p), optional
        Pole parameters; omit for functions analytic in ``Re z > 0``.
    """
    _check_truncation(m_t)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= -0.5):
        raise DomainError("interpolation needs x > -1/2")
    pole = _pole_pair(pole)
    nodes = np.arange(samples.n0 + 1)
    out = _sinc(xs[:, None] - nodes[None, :]) @ samples.values
    s = sinpi(xs)
    coeffs = plain_coefficients(samples, m_t)
    if pole is not None:
        z_p, r_p = pole
        coeffs = coeffs - tau_values(m_t, z_p, r_p)
        out = out - _pole_constant(z_p, r_p) / np.pi * s / (xs + 0.5 - z_p)
    off = s != 0
    if off.any():
        q = q_table(m_t, xs[off])
        out[off] = out[off] - s[off] / np.pi * (coeffs @ q)
    return out[0] if np.ndim(x) == 0 else out


def interpolation_csv(x, values, path=None):
    """Write ``x,re,im`` rows for an interpolated curve."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "re", "im"])
    for xi, v in zip(np.atleast_1d(x), np.atleast_1d(values)):
        w.writerow([repr(float(xi)), repr(float(np.real(v))), repr(float(np.imag(v)))])
    text = buf.getvalue()
    if path is None:
        return text
    Path(path).write_text(text, encoding="utf-8")
    return None
