"""Samples on the half-integer grid, the multiplicative noise model and the
catalog of test functions with known poles.

Samples are ``f_N = f(N + 1/2)`` for ``N = 0..n0``.  Noisy samples follow
``f_N^eps = (1 + nu_N) f_N`` with ``nu_N`` real and uniform on ``[-eps, eps]``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Complex samples ``values[N] = f(N + 1/2)``, ``N = 0..n0``.

    Instances are immutable; ``values`` is a read-only array.
    """

    n0: int
    values: np.ndarray
    noise_bound: float = 0.0
    seed: int = 0

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        if vals.ndim != 1 or len(vals) != self.n0 + 1:
            raise ValueError(f"expected {self.n0 + 1} values, got shape {vals.shape}")
        if self.noise_bound < 0:
            raise ValueError("noise_bound must be non-negative")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_values(cls, values, noise_bound=0.0, seed=0):
        values = np.asarray(values, dtype=complex)
        return cls(len(values) - 1, values, noise_bound, seed)

    @property
    def nodes(self):
        return np.arange(self.n0 + 1) + 0.5

    def __len__(self):
        return self.n0 + 1

    def scaled(self, factor):
        """Copy with every sample multiplied by ``factor``."""
        return SampleSet(self.n0, self.values * factor, self.noise_bound, self.seed)

    def replaced(self, index, value):
        """Copy with one sample replaced."""
        vals = self.values.copy()
        vals[index] = value
        return SampleSet(self.n0, vals, self.noise_bound, self.seed)


@dataclass(frozen=True)
class NoiseSpec:
    epsilon: float
    seed: int = 0

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")


@dataclass(frozen=True)
class TestFunction:
    """A function to sample, with the exact pole when one is known.

    ``evaluator`` maps complex arrays to complex arrays.  ``pole`` is the
    pair ``(z_p, R_p)`` or ``None`` for functions analytic in ``Re z > 0``.
    """

    __test__ = False  # keep pytest from collecting this class

    id: str
    evaluator: Callable = field(repr=False)
    pole: Optional[tuple] = None
    params: dict = field(default_factory=dict)

    def __call__(self, z):
        return self.evaluator(np.asarray(z, dtype=complex))

    @property
    def z_p(self):
        return None if self.pole is None else self.pole[0]

    @property
    def r_p(self):
        return None if self.pole is None else self.pole[1]


def _sinh_minus_identity(w):
    """sinh(w) - w without cancellation near w = 0."""
    w = np.asarray(w, dtype=complex)
    out = np.sinh(w) - w
    small = np.abs(w) < 1.0
    if small.any():
        ws = w[small]
        w2 = ws * ws
        term = ws * w2 / 6.0
        acc = term.copy()
        for j in range(2, 14):
            term = term * w2 / ((2 * j) * (2 * j + 1))
            acc = acc + term
        out[small] = acc
    return out


def catalog(id, **params):
    """Build one of the catalog test functions.

    Parameters
    ----------
    id : str
        ``"f1"`` (``C/(z+5)^q``, analytic), ``"f2"`` (``C/((z+5)^3 (z-z_p))``),
        ``"f3"`` (``[cosh(w)-1] / {(z+5)^2 [sinh(w)-w]}``, ``w = z - z_p``),
        ``"f4"`` (``(z+10)^-3 + eta/(z-5)``) or ``"f5"``
        (``(z+5)^-5 (z-z_p)^-1``).
    **params
        ``q`` and ``C`` for f1 (defaults 5 and 1e3); ``C`` and ``z_p`` for
        f2 (1e4, 6.2+0.15j); ``z_p`` for f3 (9.45+0.37j); ``eta`` for f4
        (1e-4); ``z_p`` for f5 (5.2+0.2j).
    """
    key = str(id).lower()
    if key in ("f1", "f1q"):
        q = int(params.get("q", 5))
        c = float(params.get("C", 1e3))
        return TestFunction("f1", lambda z: c / (z + 5.0) ** q, None, {"q": q, "C": c})
    if key == "f2":
        c = float(params.get("C", 1e4))
        zp = complex(params.get("z_p", 6.2 + 0.15j))
        return TestFunction("f2", lambda z: c / ((z + 5.0) ** 3 * (z - zp)),
                            (zp, c / (zp + 5.0) ** 3), {"C": c, "z_p": zp})
    if key == "f3":
        zp = complex(params.get("z_p", 9.45 + 0.37j))

        def f3(z):
            w = z - zp
            num = 2.0 * np.sinh(0.5 * w) ** 2
            return num / ((z + 5.0) ** 2 * _sinh_minus_identity(w))

        return TestFunction("f3", f3, (zp, 3.0 / (zp + 5.0) ** 2), {"z_p": zp})
    if key == "f4":
        eta = float(params.get("eta", 1e-4))
        return TestFunction("f4", lambda z: (z + 10.0) ** -3 + eta / (z - 5.0),
                            (5.0 + 0j, complex(eta)), {"eta": eta})
    if key == "f5":
        zp = complex(params.get("z_p", 5.2 + 0.2j))
        return TestFunction("f5", lambda z: 1.0 / ((z + 5.0) ** 5 * (z - zp)),
                            (zp, 1.0 / (zp + 5.0) ** 5), {"z_p": zp})
    raise DomainError(f"unknown test function id {id!r}")


def custom(evaluator, pole=None, name="custom"):
    """Wrap an arbitrary callable as a :class:`TestFunction`."""
    return TestFunction(name, lambda z: np.asarray(evaluator(z), dtype=complex), pole)


def sample(f, n0):
    """Evaluate ``f`` at the nodes ``N + 1/2``, ``N = 0..n0``."""
    if n0 < 0:
        raise ValueError("n0 must be non-negative")
    nodes = np.arange(n0 + 1) + 0.5
    if f.pole is not None:
        zp = complex(f.pole[0])
        hit = np.isclose(nodes, zp.real, rtol=0, atol=1e-14) & (abs(zp.imag) < 1e-14)
        if hit.any():
            raise DomainError(f"pole {zp} lies on the sampling node {nodes[hit][0]}")
    vals = np.asarray(f(nodes.astype(complex)), dtype=complex)
    if not np.all(np.isfinite(vals)):
        bad = nodes[~np.isfinite(vals)][0]
        raise DomainError(f"function is not finite at node {bad}")
    return SampleSet(n0, vals)


def perturb(s, spec):
    """Apply real multiplicative noise ``(1 + nu_N)``, ``|nu_N| <= eps``.

    The draw is reproducible from ``spec.seed``.
    """
    if s.noise_bound != 0:
        raise ValueError("samples are already perturbed")
    rng = np.random.default_rng(spec.seed)
    nu = rng.uniform(-spec.epsilon, spec.epsilon, size=s.n0 + 1)
    return SampleSet(s.n0, (1.0 + nu) * s.values, float(spec.epsilon), int(spec.seed))


# ----------------------------------------------------------------------------
# Serialization
# ----------------------------------------------------------------------------

def to_csv(s, path=None):
    """Write ``N,re,im`` rows (LF newlines).  Returns the text when ``path`` is None."""
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["N", "re", "im"])
    for n, v in enumerate(s.values):
        writer.writerow([n, repr(float(v.real)), repr(float(v.imag))])
    text = buf.getvalue()
    if path is None:
        return text
    Path(path).write_text(text, encoding="utf-8", newline="")
    return None


def from_csv(source, noise_bound=0.0, seed=0):
    """Read a sample CSV (path or text with a ``N,re,im`` header)."""
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["N", "re", "im"]:
        raise ValueError(f"malformed sample CSV: expected header N,re,im, got {header}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ValueError(f"malformed sample CSV at line {lineno}: {row}")
        try:
            rows.append((int(row[0]), complex(float(row[1]), float(row[2]))))
        except ValueError as exc:
            raise ValueError(f"malformed sample CSV at line {lineno}: {exc}") from None
    rows.sort()
    if [r[0] for r in rows] != list(range(len(rows))) or not rows:
        raise ValueError("sample CSV must list N = 0..n0 without gaps")
    return SampleSet.from_values([r[1] for r in rows], noise_bound, seed)


def to_json(s, path=None, config=None):
    payload = {
        "n0": s.n0,
        "epsilon": s.noise_bound,
        "seed": s.seed,
        "values": [[float(v.real), float(v.imag)] for v in s.values],
    }
    if config is not None:
        payload["config"] = config
    text = json.dumps(payload, indent=1)
    if path is None:
        return text
    Path(path).write_text(text + "\n", encoding="utf-8")
    return None


def from_json(source):
    payload = json.loads(_read_text(source))
    try:
        vals = [complex(re, im) for re, im in payload["values"]]
        s = SampleSet(int(payload["n0"]), np.array(vals),
                      float(payload.get("epsilon", 0.0)), int(payload.get("seed", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed sample JSON: {exc}") from None
    return s


def load(path):
    """Read samples from a ``.csv`` or ``.json`` file."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        return from_json(path)
    return from_csv(path)


def _read_text(source):
    if isinstance(source, Path) or (isinstance(source, str) and source
                                    and "\n" not in source and Path(source).is_file()):
        return Path(source).read_text(encoding="utf-8")
    return str(source)
