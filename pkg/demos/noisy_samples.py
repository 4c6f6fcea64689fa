"""Pole recovery from perturbed samples of f(z) = (z + 5)^-5 / (z - 5.2 - 0.2i).

Each sample is multiplied by (1 + u), u uniform in [-eps, eps].  Noise
shortens the plateau of the position trace while its level stays put.

    python3 demos/noisy_samples.py
"""

from polerecovery import (NoiseSpec, NoPoleDetected, RecoveryConfig, catalog, perturb, recover,
                          sample)


def main():
    f = catalog("f5")
    clean = sample(f, 60)
    print(f"true pole {f.z_p}")
    for eps in (0.0, 1e-4, 1e-3, 1e-2, 5e-2):
        s = perturb(clean, NoiseSpec(eps, seed=0)) if eps else clean
        try:
            est = recover(s, RecoveryConfig(w_p_percent=1e-2))
        except NoPoleDetected as exc:
            print(f"eps = {eps:<6g} no plateau ({exc})")
            continue
        rng = est.ranges["z_re"]
        print(f"eps = {eps:<6g} z_p = {est.z_p:.6f}  plateau [{rng.n_min}, {rng.n_max}] "
              f"length {rng.length}")


if __name__ == "__main__":
    main()
