"""Command-line driver.

Subcommands
-----------
sample     write samples of a catalog function (optionally perturbed)
analyze    analyticity test, pole recovery and reconstruction for one data set
reproduce  regenerate the data series behind a reference figure or table

Exit status: 0 on success, 2 when no pole is detected (the analyticity
verdict is still written), 1 on any error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import samples as smp
from .coefficients import frak_c_matrix, hat_c_matrix
from .errors import CoefficientOverflow, DomainError, NoPoleDetected, QuadratureError
from .recovery import RecoveryConfig, detect_range, pole_trace, recover, residue_trace
from .validation import analyticity_test, interpolate, reconstruct, truncation_scan

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_POLE = 2

TARGETS = ("fig2", "fig3", "fig4", "fig5", "fig5d", "fig6", "fig7", "fig8", "table1")
DEFAULT_K_PROBE = (5, 10, 15, 20)


# ----------------------------------------------------------------------------
# Output helpers
# ----------------------------------------------------------------------------

def _cval(z):
    return None if z is None else [float(np.real(z)), float(np.imag(z))]


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                        for v in row])


def _write_json(path, payload):
    Path(path).write_text(json.dumps(payload, indent=2, default=_json_default) + "\n",
                          encoding="utf-8")


def _json_default(obj):
    if isinstance(obj, complex):
        return _cval(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _rel(computed, reference):
    numeric = (int, float, complex, np.number)
    if not (isinstance(computed, numeric) and isinstance(reference, numeric)):
        return None
    ref = abs(complex(reference))
    return float(abs(complex(computed) - complex(reference)) / ref) if ref else None


def _compare(name, computed, reference):
    """One summary row: computed value next to the reference one."""
    cv = computed if not isinstance(computed, complex) else _cval(computed)
    rv = reference if not isinstance(reference, complex) else _cval(reference)
    return {"quantity": name, "computed": cv, "reference": rv, "rel_diff": _rel(computed, reference)}


def _norm_curve(coeffs):
    """Cumulative ``sum |c|^2`` with overflowing entries reported as ``inf``."""
    with np.errstate(over="ignore", invalid="ignore"):
        return np.cumsum(np.abs(coeffs) ** 2, axis=0)


def _norm_rows(m_max, k_list, curve_of):
    rows = []
    for k in k_list:
        curve = curve_of(k)
        rows.extend((m, k, float(curve[m])) for m in range(m_max + 1))
    return rows


def _frak_norms(s, k_list, m_max):
    return _norm_rows(m_max, k_list, lambda k: _norm_curve(frak_c_matrix(s, m_max, [k])[:, 0]))


def _hat_norms(s, k_list, m_max, z_p, r_p):
    return _norm_rows(m_max, k_list,
                      lambda k: _norm_curve(hat_c_matrix(s, m_max, [k], z_p, r_p)[:, 0]))


def _trace_rows(trace):
    return [(n, float(v.real), float(v.imag), 1) if d else (n, "", "", 0)
            for n, (v, d) in enumerate(zip(trace.values, trace.defined))]


def _reconstruction_rows(s, report):
    return [[j, j + 0.5, float(fj.real), float(fj.imag), float(gj.real), float(gj.imag)]
            for j, (fj, gj) in enumerate(zip(s.values, report.reconstructed))]


RECON_HEADER = ["k", "x", "f_re", "f_im", "rebuilt_re", "rebuilt_im"]
TRACE_HEADER = ["n", "re", "im", "defined"]
NORM_HEADER = ["m", "k", "value"]


# ----------------------------------------------------------------------------
# Configuration
# ----------------------------------------------------------------------------

def _function_params(args):
    params = {}
    if args.function in ("f1", "f1q"):
        params["q"] = args.q
    if args.function == "f4":
        params["eta"] = args.eta
    return params


def _build_samples(args):
    if args.input is not None:
        s = smp.load(args.input)
        if args.epsilon:
            s = smp.SampleSet(s.n0, s.values, float(args.epsilon), int(args.seed))
        return s, None
    f = smp.catalog(args.function, **_function_params(args))
    s = smp.sample(f, args.n0)
    if args.epsilon > 0:
        s = smp.perturb(s, smp.NoiseSpec(args.epsilon, args.seed))
    return s, f


def _recovery_config(args):
    return RecoveryConfig(k_list=tuple(range(args.k_max + 1)), n_scan=args.n_scan,
                          w_p_percent=args.wp, l_min=args.lmin)


def _config_echo(args, **extra):
    keys = ("command", "function", "input", "q", "eta", "n0", "epsilon", "seed", "k_max",
            "k_probe", "n_scan", "wp", "lmin", "out", "format", "target")
    echo = {k: getattr(args, k) for k in keys if hasattr(args, k)}
    if isinstance(echo.get("k_probe"), tuple):
        echo["k_probe"] = list(echo["k_probe"])
    if echo.get("input") is not None:
        echo["input"] = str(echo["input"])
    echo.update(extra)
    return echo


def _scan_range(n_scan):
    return (0, min(300, n_scan))


# ----------------------------------------------------------------------------
# sample
# ----------------------------------------------------------------------------

def cmd_sample(args):
    s, _ = _build_samples(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        path = out / "samples.json"
        smp.to_json(s, path, config=_config_echo(args))
    else:
        path = out / "samples.csv"
        smp.to_csv(s, path)
    print(f"wrote {path}")
    return EXIT_OK


# ----------------------------------------------------------------------------
# analyze
# ----------------------------------------------------------------------------

def _write_table(out, stem, fmt, header, rows):
    if fmt == "json":
        _write_json(out / f"{stem}.json", {"columns": header, "rows": [list(r) for r in rows]})
    else:
        _write_csv(out / f"{stem}.csv", header, rows)


def cmd_analyze(args):
    s, _ = _build_samples(args)
    cfg = _recovery_config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    echo = _config_echo(args, recovery=cfg.as_dict(), w_p_effective=cfg.band(s))

    verdict = analyticity_test(s, args.k_probe, args.n_scan, args.wp, args.lmin)
    trace = pole_trace(s, cfg)
    _write_table(out, "pole_trace", args.format, TRACE_HEADER, _trace_rows(trace))
    m_hat = min(args.n_scan, 300)
    scan = _scan_range(args.n_scan)
    try:
        est = recover(s, cfg)
    except NoPoleDetected as exc:
        payload = {"valid": False, "reason": str(exc), "hint": exc.hint,
                   "analyticity": verdict.to_dict(), "config": echo}
        _write_json(out / "estimate.json", payload)
        _write_table(out, "mhat_sums", args.format, NORM_HEADER,
                     _frak_norms(s, args.k_probe, m_hat))
        report = reconstruct(s, None, scan=scan)
        report.to_json(out / "reconstruction.json", echo)
        print(f"no pole detected ({exc}); analyticity verdict: {verdict.verdict}")
        return EXIT_NO_POLE

    payload = est.to_dict(echo)
    payload["analyticity"] = verdict.to_dict()
    _write_json(out / "estimate.json", payload)
    rtrace = residue_trace(s, est.z_p, cfg)
    _write_table(out, "residue_trace", args.format, TRACE_HEADER, _trace_rows(rtrace))
    _write_table(out, "mhat_sums", args.format, NORM_HEADER,
                 _hat_norms(s, args.k_probe, m_hat, est.z_p, est.r_p))
    report = reconstruct(s, est, scan=scan)
    report.to_json(out / "reconstruction.json", echo)
    print(f"z_p = {est.z_p:.10g} +/- ({est.z_p_std[0]:.2g}, {est.z_p_std[1]:.2g})")
    print(f"R_p = {est.r_p:.10g} +/- ({est.r_p_std[0]:.2g}, {est.r_p_std[1]:.2g})")
    print(f"reconstruction: m_t = {report.truncation}, delta = {report.delta:.3g}")
    return EXIT_OK


# ----------------------------------------------------------------------------
# reproduce
# ----------------------------------------------------------------------------

class _Repro:
    """Collects per-panel tables and summary rows for one target."""

    def __init__(self, out, target):
        self.out = Path(out)
        self.target = target
        self.rows = []
        self.notes = []
        self.out.mkdir(parents=True, exist_ok=True)

    def panel(self, name, header, rows):
        _write_csv(self.out / f"{self.target}_{name}.csv", header, rows)

    def compare(self, name, computed, reference=None):
        self.rows.append(_compare(name, computed, reference))

    def note(self, text):
        self.notes.append(text)

    def finish(self, echo):
        _write_json(self.out / f"{self.target}_summary.json",
                    {"target": self.target, "comparisons": self.rows, "notes": self.notes,
                     "config": echo})


def _try_recover(s, cfg):
    try:
        return recover(s, cfg)
    except NoPoleDetected:
        return None


def _estimate_rows(rep, prefix, est, ref_z, ref_r, lengths):
    if est is None:
        rep.compare(f"{prefix}z_p", None, ref_z)
        rep.note(f"{prefix}no range of convergence detected")
        return
    rep.compare(f"{prefix}z_p", est.z_p, ref_z)
    rep.compare(f"{prefix}r_p", est.r_p, ref_r)
    for key, ref in lengths.items():
        rep.compare(f"{prefix}length_{key}", est.ranges[key].length, ref)


def _repro_fig2(args, rep):
    s = smp.sample(smp.catalog("f1", q=5), args.n0)
    rep.panel("a_norms", NORM_HEADER, _frak_norms(s, DEFAULT_K_PROBE, args.n_scan))
    report = reconstruct(s, None, scan=_scan_range(args.n_scan))
    rep.panel("b_reconstruction", RECON_HEADER, _reconstruction_rows(s, report)[:20])
    rep.compare("verdict", analyticity_test(s, n_scan=args.n_scan).verdict, "LikelyAnalytic")
    rep.compare("m_t", report.truncation, 122)
    rep.compare("delta", report.delta, 2.74e-5)


def _repro_fig3(args, rep):
    s5 = smp.sample(smp.catalog("f1", q=5), args.n0)
    m, d = truncation_scan(s5, None, _scan_range(args.n_scan))
    rep.panel("a_delta", ["m_t", "delta"], list(zip(m, d)))
    rows = []
    for n0 in (10, 20, 30, 40, 50, 60):
        s = smp.sample(smp.catalog("f1", q=5), n0)
        rows.extend((n0, m_, v) for m_, _, v in _frak_norms(s, [10], args.n_scan))
    rep.panel("b_norms_by_n0", ["n0", "m", "value"], rows)
    rows = []
    for q in range(1, 11):
        s = smp.sample(smp.catalog("f1", q=q), args.n0)
        rows.extend((q, m_, v) for m_, _, v in _frak_norms(s, [10], args.n_scan))
    rep.panel("c_norms_by_q", ["q", "m", "value"], rows)
    refs = {1: (41, 2.08e-2), 2: (72, 1.38e-2), 3: (29, 1.08e-3), 4: (138, 4.87e-4),
            5: (122, 2.74e-5)}
    rows = []
    for q, (m_ref, d_ref) in refs.items():
        s = smp.sample(smp.catalog("f1", q=q), args.n0)
        report = reconstruct(s, None, scan=_scan_range(args.n_scan))
        rows.extend([q] + r for r in _reconstruction_rows(s, report))
        rep.compare(f"q{q}_m_t", report.truncation, m_ref)
        rep.compare(f"q{q}_delta", report.delta, d_ref)
    rep.panel("d_reconstruction", ["q"] + RECON_HEADER, rows)


F2_REF_Z = 6.20000005 + 0.14999996j
F2_REF_R = 7.1101458 - 0.28581197j


def _repro_fig4(args, rep):
    s = smp.sample(smp.catalog("f2"), args.n0)
    cfg = RecoveryConfig(n_scan=args.n_scan, w_p_percent=args.wp or 1e-3, l_min=args.lmin)
    rep.panel("a_norms", NORM_HEADER, _frak_norms(s, DEFAULT_K_PROBE, args.n_scan))
    rep.panel("b_pole_trace", TRACE_HEADER, _trace_rows(pole_trace(s, cfg)))
    est = _try_recover(s, cfg)
    _estimate_rows(rep, "", est, F2_REF_Z, F2_REF_R,
                   {"z_re": 416, "z_im": 418, "r_re": 509, "r_im": 454})
    if est is None:
        return
    rep.panel("c_residue_trace", TRACE_HEADER, _trace_rows(residue_trace(s, est.z_p, cfg)))
    rep.panel("d_hat_norms", NORM_HEADER,
              _hat_norms(s, DEFAULT_K_PROBE, args.n_scan, est.z_p, est.r_p))


def _repro_fig5(args, rep):
    f = smp.catalog("f2")
    s = smp.sample(f, args.n0)
    cfg = RecoveryConfig(n_scan=args.n_scan, w_p_percent=args.wp, l_min=args.lmin)
    est = _try_recover(s, cfg)
    if est is None:
        rep.note("no range of convergence detected")
        return
    report = reconstruct(s, est, scan=_scan_range(args.n_scan))
    rep.panel("ab_reconstruction", RECON_HEADER, _reconstruction_rows(s, report))
    rep.compare("m_t", report.truncation, 40)
    rep.compare("delta", report.delta, 1.19e-3)
    # h_10(z) = (z - 21/2) f_2(z): same pole, residue scaled by (z_p - 21/2)
    h = smp.custom(lambda z: (z - 10.5) * f(z), (f.z_p, (f.z_p - 10.5) * f.r_p), "h10")
    sh = smp.sample(h, args.n0)
    pole = (est.z_p, (est.z_p - 10.5) * est.r_p)
    m_t = reconstruct(sh, pole, scan=_scan_range(args.n_scan)).truncation
    x = np.round(np.arange(0.0, args.n0 + 1e-9, 0.2), 10)
    vals = interpolate(sh, x, m_t, pole)
    exact = h(x + 0.5)
    rep.panel("c_interpolation", ["x", "re", "im", "exact_re", "exact_im"],
              [(xi, float(v.real), float(v.imag), float(e.real), float(e.imag))
               for xi, v, e in zip(x, vals, exact)])
    rep.compare("h10_m_t", m_t)
    probe = 9.7
    rep.compare("h10_at_z_10.2", complex(interpolate(sh, probe, m_t, pole)),
                complex(h(probe + 0.5)))


def _repro_fig5d(args, rep):
    f = smp.catalog("f2")
    rows = []
    for n0 in range(10, args.n0 + 1, 10):
        s = smp.sample(f, n0)
        est = _try_recover(s, RecoveryConfig(n_scan=args.n_scan, w_p_percent=args.wp,
                                             l_min=args.lmin))
        ez = None if est is None else _rel(est.z_p, f.z_p)
        er = None if est is None else _rel(est.r_p, f.r_p)
        rows.append((n0, "" if ez is None else ez, "" if er is None else er))
        rep.compare(f"n0_{n0}_rel_err_z_p", ez)
        rep.compare(f"n0_{n0}_rel_err_r_p", er)
    rep.panel("rel_error", ["n0", "rel_err_z_p", "rel_err_r_p"], rows)


def _repro_fig6(args, rep):
    s = smp.sample(smp.catalog("f3"), args.n0)
    cfg = RecoveryConfig(n_scan=args.n_scan, w_p_percent=args.wp or 1e-3, l_min=args.lmin)
    rep.panel("a_pole_trace", TRACE_HEADER, _trace_rows(pole_trace(s, cfg)))
    est = _try_recover(s, cfg)
    _estimate_rows(rep, "", est, 9.4500018 + 0.3700014j, 1.4339431e-2 - 7.34952e-4j,
                   {"z_re": 552, "z_im": 489, "r_re": 553, "r_im": 524})
    if est is None:
        return
    rep.panel("b_residue_trace", TRACE_HEADER, _trace_rows(residue_trace(s, est.z_p, cfg)))
    report = reconstruct(s, est, scan=_scan_range(args.n_scan))
    rep.panel("cd_reconstruction", RECON_HEADER, _reconstruction_rows(s, report))
    rep.compare("m_t", report.truncation, 36)
    rep.compare("delta", report.delta, 1.17e-2)


def _repro_fig7(args, rep):
    s = smp.sample(smp.catalog("f4", eta=1e-4), args.n0)
    cfg = RecoveryConfig(n_scan=args.n_scan, w_p_percent=args.wp or 1e-2, l_min=args.lmin)
    rep.panel("a_pole_trace", TRACE_HEADER, _trace_rows(pole_trace(s, cfg)))
    est = _try_recover(s, cfg)
    _estimate_rows(rep, "", est, 5.000003 + 0j, 9.999946e-5 + 0j, {"z_re": 318, "r_re": 295})
    if est is None:
        return
    rep.panel("a_residue_trace", TRACE_HEADER, _trace_rows(residue_trace(s, est.z_p, cfg)))
    report = reconstruct(s, est, scan=_scan_range(args.n_scan))
    rep.panel("b_reconstruction", RECON_HEADER, _reconstruction_rows(s, report))
    rep.compare("m_t", report.truncation, 82)
    rep.compare("delta", report.delta, 9.91e-3)


F8_REFS = {0.0: (399, 5.199999), 1e-4: (70, 5.20006), 1e-3: (41, 5.19984),
           5e-3: (27, 5.20168), 1e-2: (24, 5.19519), 5e-2: (15, 5.1951)}


def _repro_fig8(args, rep):
    f = smp.catalog("f5")
    clean = smp.sample(f, args.n0)
    w_p = args.wp or 1e-2
    cfg = RecoveryConfig(n_scan=args.n_scan, w_p_percent=w_p, l_min=args.lmin)
    traces, norms, errors = [], [], []
    for eps, (l_ref, re_ref) in F8_REFS.items():
        s = smp.perturb(clean, smp.NoiseSpec(eps, args.seed)) if eps else clean
        tr = pole_trace(s, cfg)
        traces.extend((eps, n, float(v.real)) for n, v in enumerate(tr.values))
        rng = detect_range(tr.values.real, w_p, args.lmin)
        rep.compare(f"eps_{eps:g}_length_re", None if rng is None else rng.length, l_ref)
        est = _try_recover(s, cfg)
        if est is None:
            rep.compare(f"eps_{eps:g}_re_z_p", None, re_ref)
            rep.note(f"eps = {eps:g}: no range of convergence of length >= {args.lmin}")
            continue
        rep.compare(f"eps_{eps:g}_re_z_p", est.z_p.real, re_ref)
        errors.append((eps, _rel(est.z_p, f.z_p), _rel(est.r_p, f.r_p)))
        norms.extend((eps, m, v) for m, _, v in _hat_norms(s, [13], args.n_scan,
                                                            est.z_p, est.r_p))
    rep.panel("a_re_pole_trace", ["epsilon", "n", "re"], traces)
    rep.panel("b_hat_norms_k13", ["epsilon", "m", "value"], norms)
    rep.panel("c_rel_error", ["epsilon", "rel_err_z_p", "rel_err_r_p"], errors)

    s = smp.perturb(clean, smp.NoiseSpec(0.1, args.seed))
    est, band = None, w_p
    for band in (w_p, 10 * w_p, 100 * w_p):
        est = _try_recover(s, RecoveryConfig(n_scan=args.n_scan, w_p_percent=band,
                                             l_min=args.lmin))
        if est is not None:
            break
    if est is None:
        rep.note("eps = 0.1: no range of convergence even at a 100x wider band")
        return
    if band != w_p:
        rep.note(f"eps = 0.1: estimate taken at a widened band of {band:g} %")
    report = reconstruct(s, est, scan=_scan_range(args.n_scan))
    rep.panel("d_reconstruction", RECON_HEADER, _reconstruction_rows(s, report))
    rep.compare("eps_0.1_m_t", report.truncation, 11)
    rep.compare("eps_0.1_delta", report.delta, 1.105)


TABLE1_REFS = {1e-4: (4.68343, (23, 364), 342), 1e-5: (4.96637, (36, 327), 292),
               1e-6: (4.99662, (55, 296), 242), 1e-7: (4.99966, (93, 257), 165)}


def f4_zero(eta):
    """Real zero of ``(z+10)^-3 + eta/(z-5)`` in ``(0, 5)``."""
    # (z - 5) + eta (z + 10)^3 = 0, a cubic with one root in (0, 5)
    roots = np.roots([eta, 30 * eta, 300 * eta + 1, 1000 * eta - 5])
    real = roots[(np.abs(roots.imag) < 1e-9) & (roots.real > 0) & (roots.real < 5)]
    return float(real.real[0])


def _band_run(series, lo, hi):
    """Longest run of consecutive indices with ``lo <= series <= hi``."""
    inside = (series >= lo) & (series <= hi)  # NaN compares False
    best, run_start = None, None
    for n, ok in enumerate(np.append(inside, False)):
        if ok and run_start is None:
            run_start = n
        elif not ok and run_start is not None:
            if best is None or n - run_start > best[1] - best[0] + 1:
                best = (run_start, n - 1)
            run_start = None
    return best


def _repro_table1(args, rep):
    w_p = args.wp or 1e-2
    rows = []
    for eta, (zero_ref, range_ref, l_ref) in TABLE1_REFS.items():
        s = smp.sample(smp.catalog("f4", eta=eta), args.n0)
        tr = pole_trace(s, RecoveryConfig(n_scan=args.n_scan, w_p_percent=w_p))
        half = 5.0 * w_p / 100
        run = _band_run(tr.values.real, 5.0 - half, 5.0 + half)
        rng = detect_range(tr.values.real, w_p, args.lmin)
        zero = f4_zero(eta)
        rows.append((eta, zero, 5.0 - zero, "" if run is None else run[0],
                     "" if run is None else run[1], "" if rng is None else rng.length))
        rep.compare(f"eta_{eta:g}_zero", zero, zero_ref)
        rep.compare(f"eta_{eta:g}_band_n_min", None if run is None else run[0], range_ref[0])
        rep.compare(f"eta_{eta:g}_band_n_max", None if run is None else run[1], range_ref[1])
        rep.compare(f"eta_{eta:g}_plateau_length", None if rng is None else rng.length, l_ref)
    rep.panel("rows", ["eta", "zero", "zero_pole_distance", "band_n_min", "band_n_max",
                       "plateau_length"], rows)


REPRODUCERS = {"fig2": _repro_fig2, "fig3": _repro_fig3, "fig4": _repro_fig4,
               "fig5": _repro_fig5, "fig5d": _repro_fig5d, "fig6": _repro_fig6,
               "fig7": _repro_fig7, "fig8": _repro_fig8, "table1": _repro_table1}


def cmd_reproduce(args):
    targets = TARGETS if args.target == "all" else (args.target,)
    for target in targets:
        t0 = time.perf_counter()
        rep = _Repro(args.out, target)
        REPRODUCERS[target](args, rep)
        rep.finish(_config_echo(args, target=target))
        print(f"{target}: {len(rep.rows)} comparisons in {time.perf_counter() - t0:.1f} s")
    return EXIT_OK


# ----------------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------------

def _k_probe(text):
    try:
        vals = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k list {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty k list")
    return vals


def _add_source(p, required=True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--function", choices=("f1", "f1q", "f2", "f3", "f4", "f5"),
                     help="catalog test function")
    src.add_argument("--input", type=Path, help="sample file (.csv with N,re,im or .json)")
    p.add_argument("--q", type=int, default=5, help="decay exponent of f1 (default 5)")
    p.add_argument("--eta", type=float, default=1e-4, help="residue of f4 (default 1e-4)")
    p.add_argument("--epsilon", type=float, default=0.0, help="noise bound (default 0)")
    p.add_argument("--seed", type=int, default=0, help="noise seed (default 0)")


def _add_common(p):
    p.add_argument("--n0", type=int, default=60, help="largest sample index (default 60)")
    p.add_argument("--n-scan", dest="n_scan", type=int, default=600,
                   help="largest degree scanned (default 600)")
    p.add_argument("--wp", type=float, default=None,
                   help="plateau band in percent (default 1e-3 noiseless, 1e-2 noisy)")
    p.add_argument("--lmin", type=int, default=10, help="shortest plateau (default 10)")
    p.add_argument("--out", default=".", help="output directory (default .)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polerecovery",
        description="Recover a first-order pole from samples at the half-integers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="write samples of a catalog function")
    _add_source(p)
    _add_common(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("analyze", help="recover the pole and validate the estimate")
    _add_source(p)
    _add_common(p)
    p.add_argument("--k-max", dest="k_max", type=int, default=5,
                   help="regression uses k = 0..k_max (default 5)")
    p.add_argument("--k-probe", dest="k_probe", type=_k_probe, default=DEFAULT_K_PROBE,
                   help="comma list of k for the analyticity test (default 5,10,15,20)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="format of the trace and norm tables")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("reproduce", help="regenerate figure or table data")
    p.add_argument("target", choices=TARGETS + ("all",))
    _add_common(p)
    p.add_argument("--seed", type=int, default=0, help="noise seed (default 0)")
    p.set_defaults(handler=cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sample" and args.function is None:
        parser.error("sample needs --function")
    try:
        return args.handler(args)
    except (OSError, ValueError, DomainError, CoefficientOverflow, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
