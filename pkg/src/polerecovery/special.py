"""Complex special functions: log-Gamma, Meixner-Pollaczek polynomials and the
kernel ``Q_n`` used by the reconstruction formulas.

The Pollaczek polynomials are the ``lambda = 1/2`` family, orthonormal on the
real line with weight ``1 / cosh(pi y)``::

    (n + 1) P_{n+1}(w) = 2 w P_n(w) - n P_{n-1}(w),   P_{-1} = 0,  P_0 = 1.

At the arguments ``w = -i z`` with ``Re z > 0`` the values grow like
``(2n)^(z - 1/2)``; they are carried as mantissa/exponent pairs
(:class:`ScaledComplex`) so that large degrees stay representable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .errors import CoefficientOverflow, DomainError, QuadratureError

SQRT_PI = math.sqrt(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])

# Renormalise recurrences once magnitudes leave [2^-RESCALE, 2^RESCALE].
_RESCALE = 256


@dataclass(frozen=True)
class ScaledComplex:
    """Complex number stored as ``mantissa * 2**exponent``.

    The mantissa modulus lies in ``[1, 2)``; zero is ``(0j, 0)``.
    """

    mantissa: complex
    exponent: int

    @classmethod
    def from_parts(cls, mantissa, exponent=0):
        mantissa = complex(mantissa)
        if mantissa == 0:
            return cls(0j, 0)
        if not cmath.isfinite(mantissa):
            raise CoefficientOverflow("non-finite mantissa", int(exponent))
        _, e = math.frexp(abs(mantissa))
        shift = e - 1
        return cls(_ldexp_complex(mantissa, -shift), int(exponent) + shift)

    @classmethod
    def from_complex(cls, value):
        return cls.from_parts(value, 0)

    def to_complex(self):
        """Return the plain complex value, raising if it overflows."""
        if self.exponent > 1100:
            raise CoefficientOverflow("value exceeds double range", self.exponent)
        value = _ldexp_complex(self.mantissa, self.exponent)
        if not cmath.isfinite(value):
            raise CoefficientOverflow("value exceeds double range", self.exponent)
        return value

    def log2_abs(self):
        if self.mantissa == 0:
            return -math.inf
        return self.exponent + math.log2(abs(self.mantissa))

    def __mul__(self, other):
        if isinstance(other, ScaledComplex):
            return ScaledComplex.from_parts(self.mantissa * other.mantissa,
                                            self.exponent + other.exponent)
        return ScaledComplex.from_parts(self.mantissa * complex(other), self.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ScaledComplex):
            return ScaledComplex.from_parts(self.mantissa / other.mantissa,
                                            self.exponent - other.exponent)
        return ScaledComplex.from_parts(self.mantissa / complex(other), self.exponent)

    def __complex__(self):
        return self.to_complex()


def _ldexp_complex(z, e):
    return complex(math.ldexp(z.real, e), math.ldexp(z.imag, e))


def normalize_scaled(mant, expo):
    """Renormalise arrays ``mant * 2**expo`` so that ``|mant|`` is in ``[1, 2)``."""
    mant = np.asarray(mant)
    expo = np.asarray(expo, dtype=np.int64)
    mag = np.abs(mant)
    _, e = np.frexp(mag)
    shift = np.where(mag > 0, e - 1, 0).astype(np.int64)
    scale = np.ldexp(1.0, -shift)
    return mant * scale, np.where(mag > 0, expo + shift, 0)


def scaled_to_complex(mant, expo):
    """Vectorised ``mant * 2**expo``; entries that overflow become ``inf``/``nan``."""
    mant = np.asarray(mant, dtype=complex)
    expo = np.clip(np.asarray(expo, dtype=np.int64), -2000, 2000)
    with np.errstate(over="ignore", invalid="ignore"):
        return np.ldexp(mant.real, expo) + 1j * np.ldexp(mant.imag, expo)


# ----------------------------------------------------------------------------
# Gamma function
# ----------------------------------------------------------------------------

def _sinpi(z):
    """sin(pi z) with exact zeros at integer real arguments."""
    z = np.asarray(z, dtype=complex)
    x = np.fmod(z.real, 2.0)
    y = z.imag
    r = np.round(2.0 * x) / 2.0
    exact = r == x
    s = np.sin(np.pi * x)
    c = np.cos(np.pi * x)
    s = np.where(exact & (np.fmod(r, 1.0) == 0), 0.0, s)
    c = np.where(exact & (np.fmod(r, 1.0) != 0), 0.0, c)
    return s * np.cosh(np.pi * y) + 1j * c * np.sinh(np.pi * y)


def sinpi(x):
    """sin(pi x) for real ``x`` with exact zeros at the integers."""
    x = np.asarray(x, dtype=float)
    r = np.fmod(x, 2.0)
    out = np.sin(np.pi * r)
    return np.where(r == np.round(r), 0.0, out)


def _lanczos_log_gamma(z):
    # valid for Re z >= 1/2
    zm = z - 1.0
    acc = np.full_like(zm, _LANCZOS_COEF[0])
    for i in range(1, len(_LANCZOS_COEF)):
        acc = acc + _LANCZOS_COEF[i] / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    return HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(acc)


def log_gamma(z):
    """Principal branch of ``log Gamma(z)`` for complex arrays.

    Non-positive integers map to ``inf``; use :func:`complex_log_gamma` for
    checked scalar evaluation.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)

    right = z.real >= 0.5
    out[right] = _lanczos_log_gamma(z[right])
    left = ~right
    if left.any():
        # logGamma(z) = logGamma(z + m) - sum_j log(z + j) keeps the principal
        # branch, unlike the reflection formula.
        zz = z[left]
        shift = np.ceil(0.5 - zz.real).astype(np.int64)
        acc = np.zeros_like(zz)
        with np.errstate(divide="ignore"):
            for j in range(int(shift.max())):
                active = j < shift
                acc[active] += np.log(zz[active] + j)
        out[left] = _lanczos_log_gamma(zz + shift) - acc
    return out[0] if scalar else out


def complex_log_gamma(z):
    """Principal ``log Gamma(z)`` for a single complex argument.

    Raises
    ------
    DomainError
        If ``z`` is a pole of Gamma (a non-positive integer).
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise DomainError(f"Gamma has a pole at z = {int(z.real)}")
    return complex(log_gamma(z))


def gamma(z):
    """Complex Gamma function via :func:`complex_log_gamma`."""
    return cmath.exp(complex_log_gamma(z))


# ----------------------------------------------------------------------------
# Pollaczek polynomials
# ----------------------------------------------------------------------------

def pollaczek_scaled(n_max, w):
    """All ``P_0(w) .. P_{n_max}(w)`` by forward recurrence, in scaled form.

    Parameters
    ----------
    n_max : int
        Highest degree.
    w : array_like
        Complex (or real) arguments, shape ``(m,)``.

    Returns
    -------
    mant, expo : ndarray
        Arrays of shape ``(n_max + 1, m)`` with ``P_n(w_j) = mant * 2**expo``.
    """
    w = np.atleast_1d(np.asarray(w))
    dtype = complex if np.iscomplexobj(w) else float
    w = w.astype(dtype)
    mant = np.zeros((n_max + 1, w.size), dtype=dtype)
    expo = np.zeros((n_max + 1, w.size), dtype=np.int64)
    col_exp = np.zeros(w.size, dtype=np.int64)
    prev = np.zeros(w.size, dtype=dtype)
    cur = np.ones(w.size, dtype=dtype)
    mant[0] = cur
    for n in range(n_max):
        nxt = (2.0 * w * cur - n * prev) / (n + 1)
        prev, cur = cur, nxt
        big = np.maximum(np.abs(cur), np.abs(prev))
        _, e = np.frexp(big)
        redo = (np.abs(e) > _RESCALE) & (big > 0)
        if redo.any():
            s = np.where(redo, e, 0)
            cur = np.ldexp(cur.real, -s) + (1j * np.ldexp(cur.imag, -s) if dtype is complex else 0)
            prev = np.ldexp(prev.real, -s) + (1j * np.ldexp(prev.imag, -s) if dtype is complex else 0)
            col_exp = col_exp + s
        mant[n + 1] = cur
        expo[n + 1] = col_exp
    return mant, expo


def pollaczek_p(n, w):
    """``P_n(w)`` by the three-term recurrence, as a :class:`ScaledComplex`."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    mant, expo = pollaczek_scaled(n, np.array([complex(w)]))
    return ScaledComplex.from_parts(mant[n, 0], int(expo[n, 0]))


def pollaczek_p_hypergeometric(n, w):
    """``P_n(w) = i^n 2F1(-n, 1/2 + i w; 1; 2)`` from the terminating series.

    Independent oracle for :func:`pollaczek_p`; summed in multiprecision.
    """
    if n < 0 or n > 60:
        raise DomainError("hypergeometric oracle supports 0 <= n <= 60")
    w = complex(w)
    with mpmath.workdps(60):
        b = mpmath.mpf(0.5) + 1j * mpmath.mpc(w)
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        for j in range(n):
            term = term * (-n + j) * (b + j) * 2 / ((j + 1) ** 2)
            total += term
        total *= mpmath.mpc(0, 1) ** n
        if total == 0:
            return ScaledComplex(0j, 0)
        e = int(mpmath.floor(mpmath.log(abs(total), 2)))
        return ScaledComplex.from_parts(complex(total / mpmath.mpf(2) ** e), e)


def pollaczek_p_asymptotic(n, z):
    """Leading large-``n`` form of ``P_n(-i z)``: ``(-i)^n (2n)^(z-1/2) / Gamma(1/2+z)``."""
    if n < 1:
        raise DomainError("asymptotic form needs n >= 1")
    z = complex(z)
    if z.real <= 0:
        raise DomainError("asymptotic form needs Re z > 0")
    log_val = (z - 0.5) * math.log(2.0 * n) - complex_log_gamma(0.5 + z)
    e2 = log_val.real / math.log(2.0)
    e = math.floor(e2)
    phase = (-1j) ** (n % 4)
    mant = phase * cmath.exp(complex(log_val.real - e * math.log(2.0), log_val.imag))
    return ScaledComplex.from_parts(mant, e)


def psi_n(n, y):
    """Orthonormal basis function ``pi^(-1/2) Gamma(1/2 + i y) P_n(y)``."""
    y = np.asarray(y, dtype=float)
    mant, expo = pollaczek_scaled(n, np.atleast_1d(y))
    p = np.ldexp(mant[n], expo[n])
    out = np.exp(log_gamma(0.5 + 1j * np.atleast_1d(y))) * p / SQRT_PI
    return out[0] if y.ndim == 0 else out


# ----------------------------------------------------------------------------
# Q_n kernel
# ----------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _q_integrand(y, n_max, x):
    """Integrand of Q_n at points y, all degrees 0..n_max and all x.

    Returns an array of shape (n_max + 1, len(y), len(x)).
    """
    mant, expo = pollaczek_scaled(n_max, y)
    with np.errstate(over="ignore", under="ignore"):
        log_w = log_gamma(0.5 + 1j * y) - (np.pi * np.abs(y) + np.log1p(np.exp(-2 * np.pi * np.abs(y))) - math.log(2.0))
        # P_n(y) * Gamma(1/2 + i y) / cosh(pi y), scale folded into the exponent
        log_scale = log_w[None, :].real + expo * math.log(2.0)
        weight = mant * np.exp(log_scale) * np.exp(1j * log_w.imag)[None, :]
    kern = 1j / (2.0 * SQRT_PI) / (1j * (x[None, :] + 0.5) + y[:, None])
    return weight[:, :, None] * kern[None, :, :]


def _panel_rule(a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    return mid[:, None] + half[:, None] * _GL_NODES[None, :], half[:, None] * _GL_WEIGHTS[None, :]


def _integrate_panels(a, b, n_max, x):
    pts, wts = _panel_rule(a, b)
    vals = _q_integrand(pts.ravel(), n_max, x)
    vals = vals.reshape(n_max + 1, len(a), 16, len(x))
    return np.einsum("npjx,pj->npx", vals, wts)


def q_table(n_max, x, tol=1e-12, max_depth=24):
    """``Q_n[-i(x + 1/2)]`` for ``n = 0..n_max`` and every ``x`` in ``x``.

    The integral over the real line is truncated to ``[-Y, Y]`` with
    ``Y = 12 + n_max / 4`` and evaluated by adaptive composite 16-point
    Gauss-Legendre panels with bisection.  Each panel is accepted once the
    one-panel and two-half-panel estimates agree to within its share of
    ``tol`` for every degree and abscissa.

    Returns
    -------
    ndarray
        Complex array of shape ``(n_max + 1, len(x))``.

    Raises
    ------
    QuadratureError
        If a panel is still unresolved after ``max_depth`` bisections.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x <= -0.5):
        raise DomainError("Q_n needs x > -1/2")
    return _q_table_cached(int(n_max), tuple(x.tolist()), float(tol), int(max_depth)).copy()


@lru_cache(maxsize=32)
def _q_table_cached(n_max, x, tol, max_depth):
    x = np.array(x)
    half_width = 12.0 + n_max / 4.0
    edges = np.linspace(-half_width, half_width, int(2 * half_width) + 1)
    a, b = edges[:-1], edges[1:]
    total = np.zeros((n_max + 1, len(x)), dtype=complex)
    coarse = _integrate_panels(a, b, n_max, x)
    for depth in range(max_depth + 1):
        mid = 0.5 * (a + b)
        left = _integrate_panels(a, mid, n_max, x)
        right = _integrate_panels(mid, b, n_max, x)
        fine = left + right
        err = np.max(np.abs(fine - coarse), axis=(0, 2))
        allowed = tol * (b - a) / (2.0 * half_width)
        ok = err <= allowed
        total += fine[:, ok, :].sum(axis=1)
        if ok.all():
            return total
        if depth == max_depth:
            raise QuadratureError("Q_n quadrature did not converge", float(err[~ok].max()))
        bad = ~ok
        a = np.concatenate([a[bad], mid[bad]])
        b = np.concatenate([mid[bad], b[bad]])
        coarse = np.concatenate([left[:, bad, :], right[:, bad, :]], axis=1)
    return total


def q_n(n, x):
    """Single value ``Q_n[-i(x + 1/2)]``."""
    return complex(q_table(n, [x])[n, 0])
