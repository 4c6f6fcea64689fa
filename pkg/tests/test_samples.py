import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polerecovery import samples as smp
from polerecovery.errors import DomainError
from polerecovery.samples import NoiseSpec, SampleSet, catalog, custom, perturb, sample


def test_f1q5_first_sample():
    s = sample(catalog("f1", q=5), 60)
    assert abs(s.values[0] - 1000 / 5.5 ** 5) < 1e-15
    assert abs(s.values[0] - 0.1986948) < 1e-7


def test_sample_count():
    assert len(sample(catalog("f2"), 60).values) == 61


def test_f2_node_six():
    s = sample(catalog("f2"), 60)
    expected = 1e4 / (11.5 ** 3 * (0.3 - 0.15j))
    assert abs(s.values[6] - expected) <= 1e-14 * abs(expected)


def test_f2_oracle_residue():
    f = catalog("f2")
    assert abs(f.r_p - 1e4 / (11.2 + 0.15j) ** 3) < 1e-14
    assert abs(f.r_p - (7.110146 - 0.2858122j)) < 1e-6


def test_f3_oracle_residue():
    f = catalog("f3")
    assert abs(f.r_p - (1.433941e-2 - 7.348186e-4j)) < 1e-8


def test_f4_zero_near_pole():
    f = catalog("f4", eta=1e-4)
    # real zero between the samples; bisection on the real axis
    lo, hi = 4.5, 4.9
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if f(lo).real * f(mid).real <= 0:
            hi = mid
        else:
            lo = mid
    assert abs(lo - 4.68343) < 1e-5
    assert f.pole == (5.0, 1e-4)


def test_f5_oracle():
    f = catalog("f5")
    assert abs(f.r_p - (9.005168e-6 - 8.855849e-7j)) < 1e-12


@pytest.mark.parametrize("fid", ["f2", "f3", "f4", "f5"])
def test_numerical_residue_probe(fid):
    f = catalog(fid)
    for theta in (0, math.pi / 2, math.pi, 3 * math.pi / 2):
        z = f.z_p + 1e-6 * cmath.exp(1j * theta)
        val = (z - f.z_p) * complex(f(np.array([z]))[0])
        assert abs(val - f.r_p) <= 1e-4 * abs(f.r_p)


@pytest.mark.parametrize("q", [1, 3, 5])
def test_f1_decay_rate(q):
    f = catalog("f1", q=q)
    x = 1e4
    ratio = abs(f(np.array([2 * x + 0j]))[0] / f(np.array([x + 0j]))[0])
    assert abs(ratio / 2.0 ** -q - 1) < 0.02


def test_f3_is_stable_near_pole_axis():
    f = catalog("f3")
    z = f.z_p + np.array([1e-4, 1e-8, 1e-12])
    vals = (z - f.z_p) * f(z)
    assert np.all(np.abs(vals / f.r_p - 1) < 1e-3)


def test_unknown_catalog_id():
    with pytest.raises(DomainError):
        catalog("f9")


def test_node_on_pole_is_rejected():
    with pytest.raises(DomainError):
        sample(custom(lambda z: 1 / (z - 3.5), (3.5, 1.0)), 10)


def test_sample_set_is_immutable():
    s = sample(catalog("f2"), 5)
    with pytest.raises(ValueError):
        s.values[0] = 0
    with pytest.raises(ValueError):
        SampleSet(3, np.zeros(2))


def test_perturb_zero_noise_is_identity():
    s = sample(catalog("f5"), 60)
    out = perturb(s, NoiseSpec(0.0, 3))
    assert np.array_equal(out.values, s.values)


@settings(max_examples=30, deadline=None)
@given(st.floats(0, 0.5), st.integers(0, 2 ** 31))
def test_perturb_bounds_and_determinism(eps, seed):
    s = sample(catalog("f5"), 60)
    a = perturb(s, NoiseSpec(eps, seed))
    b = perturb(s, NoiseSpec(eps, seed))
    assert np.array_equal(a.values, b.values)
    assert a.n0 == s.n0 and len(a.values) == len(s.values)
    assert np.all(np.abs(a.values - s.values) <= eps * np.abs(s.values) * (1 + 1e-12))
    # the multiplier is real
    ratio = a.values / s.values
    assert np.all(np.abs(ratio.imag) <= 1e-12)
    assert a.noise_bound == eps and a.seed == seed


def test_perturb_twice_rejected():
    s = perturb(sample(catalog("f5"), 5), NoiseSpec(1e-2, 0))
    with pytest.raises(ValueError):
        perturb(s, NoiseSpec(1e-2, 0))


def test_negative_noise_rejected():
    with pytest.raises(ValueError):
        NoiseSpec(-1e-3)


@settings(max_examples=30)
@given(st.lists(st.builds(complex, st.floats(-1e300, 1e300), st.floats(-1e300, 1e300)),
                min_size=1, max_size=30))
def test_csv_round_trip_is_bit_identical(vals):
    s = SampleSet.from_values(vals)
    back = smp.from_csv(smp.to_csv(s))
    assert np.array_equal(back.values, s.values)


@settings(max_examples=30)
@given(st.lists(st.builds(complex, st.floats(-1e10, 1e10), st.floats(-1e10, 1e10)),
                min_size=1, max_size=30), st.floats(0, 1), st.integers(0, 100))
def test_json_round_trip(vals, eps, seed):
    s = SampleSet.from_values(vals, eps, seed)
    back = smp.from_json(smp.to_json(s))
    assert np.array_equal(back.values, s.values)
    assert back.noise_bound == eps and back.seed == seed


def test_csv_format(tmp_path):
    s = sample(catalog("f2"), 3)
    path = tmp_path / "s.csv"
    smp.to_csv(s, path)
    raw = path.read_bytes()
    assert raw.startswith(b"N,re,im\n") and b"\r" not in raw
    assert smp.load(path).values.tolist() == s.values.tolist()


@pytest.mark.parametrize("text", ["N,x,y\n0,1,2\n", "N,re,im\n0,1\n", "N,re,im\n1,1,2\n",
                                  "N,re,im\n0,a,2\n", ""])
def test_malformed_csv(text):
    with pytest.raises(ValueError):
        smp.from_csv(text)


def test_malformed_json():
    with pytest.raises(ValueError):
        smp.from_json('{"n0": 2, "values": [[1, 2]]}')
