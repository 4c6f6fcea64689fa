"""Expansion coefficients computed from the samples.

For a sample set ``{f_N}``, ``N = 0..n0``, the data-driven coefficients are::

    c_n(k) = 2 sqrt(pi) sum_N (-1)^N / N! (N - k) f_N P_n[-i(N + 1/2)]

and, given pole parameters ``(z_p, R_p)``, the pole-corrected coefficients
are ``c_n(k) - (z_p - 1/2 - k) tau_n`` with
``tau_n = 2 sqrt(pi) R_p Gamma(1/2 - z_p) P_n(-i z_p)``.

The node values ``P_n[-i(N + 1/2)]`` are ``(-i)^n`` times integers, so the
sums over ``N`` are carried out exactly in integer arithmetic and rounded
once at the end; results are returned in scaled (mantissa, exponent) form
so that large degrees cannot overflow.
"""

from __future__ import annotations

import csv
import io
import math
import weakref
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CoefficientOverflow, DomainError
from .special import (SQRT_PI, ScaledComplex, complex_log_gamma, normalize_scaled,
                      pollaczek_scaled, scaled_to_complex)

_PHASE = np.array([1, -1j, -1, 1j])  # (-i)^n


def _scaled_ratio_row(nums, den):
    """Round ``nums[j] / den`` (Python ints) to a shared binary exponent.

    Returns float mantissas of magnitude below 2 and the common exponent.
    """
    top = max((abs(v).bit_length() for v in nums), default=0)
    if top == 0:
        return [0.0] * len(nums), 0
    e = top - den.bit_length()
    if e >= 0:
        d = den << e
        return [v / d for v in nums], e
    return [(v << -e) / den for v in nums], e


class _Engine:
    """Exact sums over the samples for one sample set.

    Every double is a dyadic rational and ``p_n(N + 1/2)`` is the Delannoy
    number ``D(N, n)``, so with ``f_N = A_N / 2^E``::

        S0_n = sum_N (-1)^N (n0!/N!) D(N, n) A_N
        S1_n = sum_N (-1)^N (n0!/N!) N D(N, n) A_N

    are integers and ``sum_N (-1)^N/N! (N - k) f_N p_n(N + 1/2)`` equals
    ``(S1_n - k S0_n) / (n0! 2^E)`` exactly.  Real and imaginary parts are
    kept separately.  The only rounding happens when a result is converted
    back to floating point.
    """

    def __init__(self, samples):
        n0 = samples.n0
        ratios = [float(x).as_integer_ratio()
                  for v in samples.values for x in (v.real, v.imag)]
        big_e = max(d.bit_length() - 1 for _, d in ratios)
        ints = [a << (big_e - (d.bit_length() - 1)) for a, d in ratios]
        fact = [1] * (n0 + 1)
        for N in range(1, n0 + 1):
            fact[N] = fact[N - 1] * N
        w = [(-1) ** N * (fact[n0] // fact[N]) for N in range(n0 + 1)]
        self.re = [w[N] * ints[2 * N] for N in range(n0 + 1)]
        self.im = [w[N] * ints[2 * N + 1] for N in range(n0 + 1)]
        self.den = fact[n0] << big_e
        self.n0 = n0
        self.row = [1] * (n0 + 1)  # D(N, 0)
        self.sums = []  # (S0_re, S0_im, S1_re, S1_im) per degree
        self._append_row()

    def _append_row(self):
        s0r = s0i = s1r = s1i = 0
        for N, d in enumerate(self.row):
            a, b = d * self.re[N], d * self.im[N]
            s0r += a
            s0i += b
            s1r += N * a
            s1i += N * b
        self.sums.append((s0r, s0i, s1r, s1i))

    def ensure(self, n_max):
        while len(self.sums) <= n_max:
            prev = self.row
            cur = [prev[0]] + [0] * self.n0
            for N in range(1, self.n0 + 1):
                cur[N] = cur[N - 1] + prev[N] + prev[N - 1]
            self.row = cur
            self._append_row()

    def scaled(self, n_max, k_values):
        """Rows ``sum_N (-1)^N/N! (N - k) f_N p_n(N + 1/2)`` in scaled form.

        ``k = None`` selects the plain sum without the ``(N - k)`` factor.
        """
        self.ensure(n_max)
        fracs = [(0, 1) if k is None else float(k).as_integer_ratio() for k in k_values]
        mant = np.empty((n_max + 1, len(k_values)), dtype=complex)
        expo = np.empty(n_max + 1, dtype=np.int64)
        for n in range(n_max + 1):
            s0r, s0i, s1r, s1i = self.sums[n]
            nums, dens = [], []
            for j, (p, q) in enumerate(fracs):
                if k_values[j] is None:
                    nums += [s0r, s0i]
                    dens.append(1)
                else:
                    nums += [q * s1r - p * s0r, q * s1i - p * s0i]
                    dens.append(q)
            if all(d == 1 for d in dens):
                vals, e = _scaled_ratio_row(nums, self.den)
            else:
                # bring every entry over the common denominator den * lcm(q)
                lcm = math.lcm(*dens)
                nums = [v * (lcm // dens[i // 2]) for i, v in enumerate(nums)]
                vals, e = _scaled_ratio_row(nums, self.den * lcm)
            mant[n] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
            expo[n] = e
        return mant, expo


_ENGINES = weakref.WeakKeyDictionary()


def _engine(samples):
    eng = _ENGINES.get(samples)
    if eng is None:
        eng = _ENGINES[samples] = _Engine(samples)
    return eng


def frak_c_scaled(samples, n_max, k_values):
    """Coefficients ``c_n(k)`` for ``n = 0..n_max`` and each ``k``, scaled.

    Returns ``(mant, expo)`` with ``c_n(k) = mant[n, j] * 2**expo[n]``.
    """
    k_values = [float(k) for k in np.atleast_1d(k_values)]
    mant, expo = _engine(samples).scaled(n_max, k_values)
    phase = _PHASE[np.arange(n_max + 1) % 4]
    return 2.0 * SQRT_PI * phase[:, None] * mant, expo


def plain_coefficients(samples, n_max):
    """``2 sqrt(pi) sum_N (-1)^N / N! f_N P_n[-i(N+1/2)]`` for ``n = 0..n_max``.

    These are the expansion coefficients of ``f(iy)`` itself (no ``(N - k)``
    factor), as used by the interpolation formula.
    """
    mant, expo = _engine(samples).scaled(n_max, [None])
    phase = _PHASE[np.arange(n_max + 1) % 4]
    out = scaled_to_complex(2.0 * SQRT_PI * phase * mant[:, 0], expo)
    _check_finite(out, expo, "interpolation coefficient")
    return out


def frak_c_matrix(samples, n_max, k_values):
    """Plain complex matrix of ``c_n(k)``, shape ``(n_max + 1, len(k_values))``."""
    mant, expo = frak_c_scaled(samples, n_max, k_values)
    out = scaled_to_complex(mant, expo[:, None])
    _check_finite(out, np.broadcast_to(expo[:, None], out.shape), "coefficient")
    return out


def _check_finite(values, expo, what):
    bad = ~np.isfinite(values)
    if bad.any():
        e = int(np.asarray(expo)[bad].max())
        raise CoefficientOverflow(f"{what} overflows double precision", e)


def frak_c(samples, n, k):
    """Single data-driven coefficient ``c_n(k)`` (``k`` may be real)."""
    if n < 0:
        raise DomainError("n must be non-negative")
    mant, expo = frak_c_scaled(samples, n, [k])
    return ScaledComplex.from_parts(mant[n, 0], int(expo[n])).to_complex()


def _check_pole(z_p):
    z_p = complex(z_p)
    if z_p.real <= 0:
        raise DomainError(f"pole estimate {z_p} is not in the right half-plane")
    t = 0.5 - z_p
    if t.imag == 0 and t.real <= 0 and t.real == math.floor(t.real):
        raise DomainError(f"pole estimate {z_p} lies on the sampling node")
    return z_p


def tau_scaled(n_max, z_p, r_p):
    """``tau_n`` for ``n = 0..n_max`` as scaled arrays ``(mant, expo)``."""
    z_p = _check_pole(z_p)
    r_p = complex(r_p)
    mant, expo = pollaczek_scaled(n_max, np.array([-1j * z_p]))
    pre = 2.0 * SQRT_PI * r_p * np.exp(complex_log_gamma(0.5 - z_p))
    return normalize_scaled(pre * mant[:, 0], expo[:, 0])


def tau_values(n_max, z_p, r_p):
    mant, expo = tau_scaled(n_max, z_p, r_p)
    out = scaled_to_complex(mant, expo)
    _check_finite(out, expo, "pole term")
    return out


def tau_n(n, z_p, r_p):
    """Pole term ``2 sqrt(pi) R_p Gamma(1/2 - z_p) P_n(-i z_p)``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return complex(tau_values(n, z_p, r_p)[n])


def hat_c_matrix(samples, n_max, k_values, z_p_est, r_p_est):
    """Pole-corrected coefficients for ``n = 0..n_max`` and each ``k``."""
    k_values = np.atleast_1d(np.asarray(k_values, dtype=float))
    frak = frak_c_matrix(samples, n_max, k_values)
    tau = tau_values(n_max, z_p_est, r_p_est)
    factor = complex(z_p_est) - 0.5 - k_values
    return frak - tau[:, None] * factor[None, :]


def hat_c_pole(samples, n, k, z_p_est, r_p_est):
    """``c_n(k) - (z_p - 1/2 - k) tau_n`` with the supplied pole estimates."""
    return complex(hat_c_matrix(samples, n, [k], z_p_est, r_p_est)[n, 0])


def _cumulative_norm(coeffs, what):
    with np.errstate(over="ignore"):
        sq = np.abs(coeffs) ** 2
        out = np.cumsum(sq, axis=0)
    if not np.all(np.isfinite(out)):
        first = int(np.argmax(~np.isfinite(out).all(axis=tuple(range(1, out.ndim)))))
        raise CoefficientOverflow(f"{what} overflows at m = {first}", 1024)
    return out


def sum_m_frak_curve(samples, k, m_max):
    """``sum_{n<=m} |c_n(k)|^2`` for every ``m = 0..m_max``."""
    return _cumulative_norm(frak_c_matrix(samples, m_max, [k])[:, 0], "cumulative norm")


def sum_m_frak(samples, k, m):
    """Cumulative norm ``sum_{n=0}^{m} |c_n(k)|^2``."""
    if m < 0:
        raise DomainError("m must be non-negative")
    return float(sum_m_frak_curve(samples, k, m)[m])


def sum_m_hat_curve(samples, k, m_max, z_p_est, r_p_est):
    """``sum_{n<=m} |hat c_{n,k}|^2`` for every ``m = 0..m_max``."""
    coeffs = hat_c_matrix(samples, m_max, [k], z_p_est, r_p_est)[:, 0]
    return _cumulative_norm(coeffs, "cumulative norm")


def sum_m_hat(samples, k, m, z_p_est, r_p_est):
    """Cumulative norm ``sum_{n=0}^{m} |hat c_{n,k}|^2``."""
    if m < 0:
        raise DomainError("m must be non-negative")
    return float(sum_m_hat_curve(samples, k, m, z_p_est, r_p_est)[m])


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """``entries[n, j] = c_n(k_list[j])`` for ``n = 0..n_max``."""

    n_max: int
    k_list: tuple
    entries: np.ndarray
    provenance: object = None

    def column(self, k):
        return self.entries[:, self.k_list.index(k)]

    def to_csv(self, path=None):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "re", "im"])
        for n in range(self.n_max + 1):
            for j, k in enumerate(self.k_list):
                v = self.entries[n, j]
                w.writerow([n, k, repr(float(v.real)), repr(float(v.imag))])
        text = buf.getvalue()
        if path is None:
            return text
        Path(path).write_text(text, encoding="utf-8")
        return None


def coefficient_table(samples, n_max, k_list=range(6)):
    """Tabulate ``c_n(k)`` over ``n = 0..n_max`` and the given ``k`` values."""
    k_list = tuple(k_list)
    return CoefficientTable(n_max, k_list, frak_c_matrix(samples, n_max, k_list), samples)
