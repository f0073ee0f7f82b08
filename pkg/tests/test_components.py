import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import REGISTERS, angles, gains
from qsagnac.components import (
    Circuit,
    ComponentError,
    GainPair,
    PropagationPhases,
    PumpPhase,
    beam_splitter,
    dpa,
    npa,
    phase_shift,
)
from qsagnac.gaussian import BogoliubovTransform, apply, coherent_state, compose, vacuum

DEG = REGISTERS["deg"]
NON = REGISTERS["nondeg"]
HALF = GainPair(5 / 4, 3 / 4)


def test_gain_pair_validation():
    assert GainPair.from_G(5 / 4).g == pytest.approx(3 / 4)
    assert GainPair.from_squeezing(0.0) == GainPair.off()
    with pytest.raises(ComponentError):
        GainPair(2.0, 1.0)
    with pytest.raises(ComponentError):
        GainPair.from_G(0.5)
    # large gain still accepted despite sqrt roundoff
    GainPair.from_G(1e4)


def test_dark_fringe_pump():
    p = PumpPhase.dark_fringe(0.2)
    assert (p.phi1, p.phi1_prime) == (0.0, 0.0)
    assert p.phi2 == pytest.approx(math.pi + 0.1)
    assert p.phi2_prime == pytest.approx(math.pi - 0.1)
    assert p.delta_phi2_prime == pytest.approx(-p.delta_phi2)


def test_counter_propagating_split():
    p = PropagationPhases.counter_propagating(0.4, 0.2, 0.6)
    assert (p.delta1, p.delta2) == (0.2, -0.2)
    assert (p.delta_a1, p.delta_b4) == (0.1, -0.1)
    assert (p.delta_a4, p.delta_b1) == (0.3, -0.3)


def test_beam_splitter_means():
    bs = beam_splitter(DEG, "a", "b")
    out = apply(bs, coherent_state(DEG, [1.0, 0.0]))
    r = 1 / math.sqrt(2)
    assert np.allclose(out.mean, [r, -r])
    out = apply(bs, coherent_state(DEG, [1.0, 1.0]))
    assert np.allclose(out.mean, [math.sqrt(2), 0.0])


def test_beam_splitter_then_swapped_is_identity():
    t = compose(beam_splitter(DEG, "a", "b"), beam_splitter(DEG, "b", "a"))
    assert t.allclose(BogoliubovTransform.identity(DEG))


def test_beam_splitter_rejects_same_port_and_unknown_mode():
    with pytest.raises(ComponentError):
        beam_splitter(DEG, "a", "a")
    with pytest.raises(ComponentError):
        beam_splitter(DEG, "a", "b.s")


def test_phase_shift_examples():
    assert phase_shift(DEG, "a", 0.0).allclose(BogoliubovTransform.identity(DEG))
    out = apply(phase_shift(DEG, "a", math.pi), coherent_state(DEG, [0.7, 0.0]))
    assert out.mean[0] == pytest.approx(-0.7)
    t = compose(phase_shift(DEG, "a", 0.3), phase_shift(DEG, "a", -0.3))
    assert t.allclose(BogoliubovTransform.identity(DEG))


def test_dpa_examples():
    assert dpa(DEG, "a", GainPair.off(), 1.0).allclose(BogoliubovTransform.identity(DEG))
    assert apply(dpa(DEG, "a", HALF, 0.0), coherent_state(DEG, [1, 0])).mean[0] == pytest.approx(2.0)
    assert apply(dpa(DEG, "a", HALF, math.pi), coherent_state(DEG, [1, 0])).mean[0] == pytest.approx(0.5)


def test_dpa_rejects_band_mode():
    with pytest.raises(ComponentError):
        dpa(NON, "a.s", HALF, 0.0)


@settings(max_examples=50, deadline=None)
@given(gains, angles, st.sampled_from(["a", "b"]))
def test_dpa_inverse_pump(gain, phi, mode):
    t = compose(dpa(DEG, mode, gain, phi), dpa(DEG, mode, gain, phi + math.pi))
    assert t.allclose(BogoliubovTransform.identity(DEG), atol=1e-9)


@settings(max_examples=50, deadline=None)
@given(gains, angles, st.sampled_from(["a", "b"]))
def test_npa_inverse_pump(gain, phi, path):
    s, i = f"{path}.s", f"{path}.i"
    t = compose(npa(NON, s, i, gain, phi), npa(NON, s, i, gain, phi + math.pi))
    assert t.allclose(BogoliubovTransform.identity(NON), atol=1e-9)


def test_npa_examples():
    assert npa(NON, "a.s", "a.i", GainPair.off(), 0.3).allclose(BogoliubovTransform.identity(NON))
    out = apply(npa(NON, "a.s", "a.i", HALF, 0.0), vacuum(NON))
    assert np.allclose(out.mean, 0.0)
    # two-mode squeezed vacuum: each quadrature has variance G^2 + g^2
    for k in (0, 1):
        assert out.cov[k, k] == pytest.approx(17 / 8)
        assert out.cov[4 + k, 4 + k] == pytest.approx(17 / 8)
    alpha = 0.6 + 0.8j
    out = apply(npa(NON, "a.s", "a.i", HALF, 0.0), coherent_state(NON, {"a.s": alpha}))
    assert out.mean[0] == pytest.approx(1.25 * alpha)
    assert out.mean[1] == pytest.approx(0.75 * np.conj(alpha))


def test_npa_needs_signal_and_idler():
    with pytest.raises(ComponentError):
        npa(NON, "a.s", "b.s", HALF, 0.0)
    with pytest.raises(ComponentError):
        npa(DEG, "a", "b", HALF, 0.0)


def test_circuit_composes_in_order():
    c = (Circuit(DEG)
         .then("bs", beam_splitter(DEG, "a", "b"))
         .then("dpa", dpa(DEG, "a", HALF, 0.4)))
    assert c.labels() == ["bs", "dpa"]
    assert len(c) == 2
    want = compose(beam_splitter(DEG, "a", "b"), dpa(DEG, "a", HALF, 0.4))
    assert c.transform().allclose(want)
    s = coherent_state(DEG, [1.0, 0.3j])
    assert np.allclose(c.run(s).mean, apply(want, s).mean)
