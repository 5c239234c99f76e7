import math

import numpy as np
import pytest

import qdarwin

ZUREK = {
    "model": "zurek",
    "k": 1,
    "n": 4,
    "phi": math.pi / 2,
    "input": {
        "s_amplitudes": [[math.sqrt(0.5), 0.0], [math.sqrt(0.5), 0.0]],
        "environment": {"kind": "registry", "index": 0},
    },
}


def test_zurek_plateau():
    out = qdarwin.run(ZUREK, with_state=True)
    ratios = [r["ratio"] for r in out["pip"]]
    assert ratios[:3] == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)
    assert ratios[3] == pytest.approx(2.0, abs=1e-12)
    assert out["summary"]["R"] == 4.0
    rho = out["state"]
    assert rho.shape == (32, 32)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.allclose(rho, rho.conj().T)


def test_hash_matches_canonical_echo():
    assert qdarwin.config_hash(ZUREK) == qdarwin.config_hash(qdarwin.canonical_config(ZUREK))
    assert qdarwin.run(ZUREK)["summary"]["config_hash"] == qdarwin.config_hash(ZUREK)


def test_validation_error():
    with pytest.raises(qdarwin.ValidationError):
        qdarwin.run(dict(ZUREK, phi=4.0))
    with pytest.raises(ValueError):
        qdarwin.run(dict(ZUREK, seed=1))


def test_dims():
    assert qdarwin.dimension_formula(1, 2, "max") == (28, 12)
    report = qdarwin.dims(1, 2)
    assert report["match"] and report["numeric"] == (28, 12)
    assert qdarwin.dims(1, 5, "min")["numeric"] is None


def test_asymptotic_closed_form():
    cfg = dict(ZUREK, model="random_unitary_asymptotic", digraph="koenig", parity="even")
    out = qdarwin.run(cfg)
    assert out["summary"]["method"] == "closed_form"
    assert all(r["I"] >= -1e-12 for r in out["pip"])
