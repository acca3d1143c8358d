import numpy as np
import pytest

from hardy_extremal.circle import make_grid
from hardy_extremal.inner import (
    InnerFunctionSpec,
    InnerSpecError,
    eval_inner,
    mobius_disk_automorphism,
    sample_inner,
)


def test_eval_examples():
    assert eval_inner(InnerFunctionSpec(), 0.3 + 0.1j) == 1
    assert eval_inner(InnerFunctionSpec(power=3), 1j) == pytest.approx(-1j, abs=1e-15)
    assert eval_inner(InnerFunctionSpec(zeros=(0.5,)), 1) == pytest.approx(1, abs=1e-15)


def test_eval_rejects_outside_closed_disk():
    with pytest.raises(InnerSpecError):
        eval_inner(InnerFunctionSpec(power=1), 1.01)
    eval_inner(InnerFunctionSpec(power=1), 1 + 1e-13)


@pytest.mark.parametrize(
    "kwargs",
    [dict(power=-1), dict(power=1.5), dict(zeros=(1.0,)), dict(zeros=(0.5,) * 33), dict(phase=np.inf)],
)
def test_spec_validation(kwargs):
    with pytest.raises(InnerSpecError):
        InnerFunctionSpec(**kwargs)


def test_sample_inner_examples():
    g = make_grid(16)
    assert np.allclose(sample_inner(InnerFunctionSpec(power=1), g).values, g.points, atol=0)
    assert np.allclose(sample_inner(InnerFunctionSpec(phase=np.pi), g).values, -1, atol=1e-15)
    big = make_grid(4096)
    mod = np.abs(sample_inner(InnerFunctionSpec(zeros=(0.4, -0.3j)), big).values)
    assert np.all(np.abs(mod - 1) <= 1e-12)


def test_mobius_examples():
    b0 = mobius_disk_automorphism(0)
    w = np.array([0.2 + 0.3j, -0.7, 1j])
    assert np.allclose(eval_inner(b0, w), w, atol=1e-16)
    b = mobius_disk_automorphism(0.5)
    assert eval_inner(b, 0.5) == 0
    assert eval_inner(b, 1) == pytest.approx(1, abs=1e-15)
    g = make_grid(256)
    assert np.all(np.abs(np.abs(sample_inner(b, g).values) - 1) <= 1e-12)
    with pytest.raises(InnerSpecError):
        mobius_disk_automorphism(1.0)


def _random_spec(rng):
    n = int(rng.integers(0, 6))
    r = 0.95 * np.sqrt(rng.uniform(size=n))
    zeros = tuple(r * np.exp(2j * np.pi * rng.uniform(size=n)))
    return InnerFunctionSpec(float(rng.uniform(0, 6.3)), int(rng.integers(0, 4)), zeros)


def test_unimodular_on_circle(rng):
    g = make_grid(1024)
    for _ in range(20):
        vals = sample_inner(_random_spec(rng), g).values
        assert np.max(np.abs(np.abs(vals) - 1)) <= 1e-12


def test_maximum_modulus(rng):
    w = 0.999 * np.sqrt(rng.uniform(size=1000)) * np.exp(2j * np.pi * rng.uniform(size=1000))
    for _ in range(10):
        assert np.all(np.abs(eval_inner(_random_spec(rng), w)) <= 1 + 1e-12)


def test_multiplicativity(rng):
    w = 0.9 * np.sqrt(rng.uniform(size=200)) * np.exp(2j * np.pi * rng.uniform(size=200))
    for _ in range(10):
        a, b = _random_spec(rng), _random_spec(rng)
        prod = eval_inner(a * b, w)
        sep = eval_inner(a, w) * eval_inner(b, w)
        assert np.all(np.abs(prod - sep) <= 1e-13 * np.maximum(np.abs(sep), 1e-300) + 1e-300)


def test_dict_round_trip():
    spec = InnerFunctionSpec(0.25, 2, (0.4, -0.3j))
    data = spec.to_dict()
    assert data == {"phase": 0.25, "power": 2, "zeros": [[0.4, 0.0], [0.0, -0.3]]}
    assert InnerFunctionSpec.from_dict(data) == spec
    with pytest.raises(InnerSpecError):
        InnerFunctionSpec.from_dict({"zeros": [[0.1]]})
