"""Tell an analytic function from a meromorphic one and interpolate it.

f(z) = 1e3 (z + 5)^-5 is analytic in Re z > 0: the cumulative coefficient
norms level off, no pole is reported, and the samples determine the
function between the nodes.

    python3 demos/analytic_check.py
"""

import numpy as np

from polerecovery import NoPoleDetected, analyticity_test, catalog, recover, sample
from polerecovery.validation import choose_truncation, interpolate


def main():
    for q in (1, 3, 5):
        s = sample(catalog("f1", q=q), 60)
        verdict = analyticity_test(s)
        found = {k: (None if r is None else r.length) for k, r in verdict.plateaus.items()}
        print(f"q = {q}: {verdict.verdict:17s} plateau lengths by k {found}")

    f = catalog("f1", q=5)
    s = sample(f, 60)
    try:
        recover(s)
    except NoPoleDetected as exc:
        print(f"recovery declines: {exc}")

    m_t = choose_truncation(s)
    x = np.array([0.25, 0.75, 3.3, 7.9])
    approx = interpolate(s, x, m_t)
    exact = f(x + 0.5 + 0j)
    for xi, a, e in zip(x, approx, exact):
        print(f"f({xi + 0.5:.2f}) ~ {a.real:.10f}   relative error {abs(a / e - 1):.1e}")


if __name__ == "__main__":
    main()
