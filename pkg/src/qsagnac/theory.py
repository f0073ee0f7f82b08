"""Closed-form small-phase predictions for the nested Sagnac interferometers.

Everything here is first order in the rotation phases and assumes the pumps
sit at the dark fringe. These are the predictions that
:mod:`qsagnac.measurement` checks against exact Gaussian propagation.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .components import GainPair, PropagationPhases, PumpPhase
from .scenarios import SPEED_OF_LIGHT, Nonlinearity, SchemeKind, sensing_photons


@dataclass(frozen=True)
class CompositeGains:
    """Gains of the two SU(1,1) interferometers, one per direction."""

    G_T_a: complex
    G_T_b: complex
    g_T_a: complex
    g_T_b: complex

    def unitarity_residuals(self):
        return (abs(abs(self.G_T_a) ** 2 - abs(self.g_T_a) ** 2 - 1.0),
                abs(abs(self.G_T_b) ** 2 - abs(self.g_T_b) ** 2 - 1.0))


@dataclass(frozen=True)
class LambdaCoeffs:
    """Output coefficients: ``b_out = (l1 a_in + l2 b_in + l3 a_in^dag + l4 b_in^dag)/2``."""

    lambda1: complex
    lambda2: complex
    lambda3: complex
    lambda4: complex

    def as_tuple(self):
        return (self.lambda1, self.lambda2, self.lambda3, self.lambda4)


@dataclass(frozen=True)
class SnrPrediction:
    """Linearised homodyne prediction.

    ``forms`` holds the alternative algebraic forms of the same SNR (raw
    phases, loop phases, collapsed near-degenerate form, ...), keyed by name.
    """

    signal_mean: float
    noise_power: float
    photon_budget: float
    baseline_snr: float
    forms: dict = field(default_factory=dict, compare=False)

    @property
    def signal_power(self):
        return self.signal_mean ** 2

    @property
    def snr(self):
        return self.signal_power / self.noise_power

    @property
    def enhancement(self):
        if self.baseline_snr == 0:
            return float("nan")
        return self.snr / self.baseline_snr


def _e(x):
    return cmath.exp(1j * x)


def composite_gains_exact(gain: GainPair, phases: PropagationPhases, pump: PumpPhase):
    """Exact gains of amplifier-phase-amplifier for each direction."""
    G, g = gain.G, gain.g
    d1, d2 = phases.delta1, phases.delta2
    return CompositeGains(
        G_T_a=_e(d1) * G * G + _e(pump.phi2 - pump.phi1 - d1) * g * g,
        G_T_b=_e(d2) * G * G + _e(pump.phi2_prime - pump.phi1_prime - d2) * g * g,
        g_T_a=_e(d1 + pump.phi1) * G * g + _e(pump.phi2 - d1) * G * g,
        g_T_b=_e(d2 + pump.phi1_prime) * G * g + _e(pump.phi2_prime - d2) * G * g,
    )


def composite_gains_linear(gain: GainPair, phases: PropagationPhases, pump: PumpPhase):
    """First-order expansion of :func:`composite_gains_exact` at the dark fringe."""
    G, g = gain.G, gain.g
    s = G * G + g * g
    dp, dpp = pump.delta_phi2, pump.delta_phi2_prime
    return CompositeGains(
        G_T_a=1 + 1j * phases.delta1 * s - 1j * dp * g * g,
        G_T_b=1 + 1j * phases.delta2 * s - 1j * dpp * g * g,
        g_T_a=1j * G * g * (2 * phases.delta1 - dp),
        g_T_b=1j * G * g * (2 * phases.delta2 - dpp),
    )


def lambda_coeffs_exact(gain, budget):
    """Output coefficients built from the exact composite gains."""
    p = budget.propagation("signal")
    cg = composite_gains_exact(gain, p, budget.pump())
    ea = _e(p.delta_a1 + p.delta_a4)
    eb = _e(p.delta_b1 + p.delta_b4)
    fa = _e(p.delta_a4 - p.delta_a1)
    fb = _e(p.delta_b4 - p.delta_b1)
    return LambdaCoeffs(cg.G_T_a * ea - cg.G_T_b * eb,
                        cg.G_T_a * ea + cg.G_T_b * eb,
                        cg.g_T_a * fa - cg.g_T_b * fb,
                        cg.g_T_a * fa + cg.g_T_b * fb)


def lambda_coeffs(gain, budget):
    """First-order output coefficients of the degenerate interferometer."""
    G, g = gain.G, gain.g
    b = budget
    return LambdaCoeffs(
        1j * (b.Delta1 + b.Delta2 + b.delta * (G * G + g * g) - b.Delta_phi2 * g * g),
        2.0,
        1j * G * g * (2 * b.delta - b.Delta_phi2),
        0.0,
    )


def _shot_noise(n_photons, phase):
    return n_photons * phase ** 2


def snr_degenerate(gain, budget, alpha):
    """Dark-port Y-quadrature SNR of the degenerate nested interferometer."""
    G, g = gain.G, gain.g
    amp = abs(alpha)
    b = budget
    dp = b.Delta_phi2 / 2
    brackets = {
        "raw": b.Delta1 + b.Delta2 + (G + g) ** 2 * b.delta - b.Delta_phi2 * g * (G + g),
        "pump_path": b.Delta1 + b.Delta2 + (G + g) ** 2 * (b.delta - dp) + (G + g) * (G - g) * dp,
        "regrouped": (b.Delta1 + b.Delta2 + dp) + (G + g) ** 2 * (b.delta - dp),
        "loop": b.loop_classical + b.loop_quantum * (G + g) ** 2,
    }
    forms = {k: (amp * v) ** 2 for k, v in brackets.items()}
    n_ps = sensing_photons(gain, SchemeKind.DEGENERATE_SINGLE, alpha)
    if b.loop_classical == 0:
        forms["quantum_loop"] = b.loop_quantum ** 2 * (G + g) ** 2 * n_ps
    return SnrPrediction(amp * brackets["raw"], 1.0, n_ps,
                         _shot_noise(n_ps, b.loop_total), forms)


def snr_nondegenerate_single(gain, budget, alpha):
    """Signal-band dark-port SNR with coherent signal and vacuum idler input."""
    G, g = gain.G, gain.g
    amp = abs(alpha)
    s, i = budget.signal, budget.idler
    raw = s.Delta1 + s.Delta2 + s.delta * G * G + i.delta * g * g - budget.Delta_phi2 * g * g
    loop = s.loop_classical + s.loop_quantum * G * G + i.loop_quantum * g * g
    n_ps = sensing_photons(gain, SchemeKind.NONDEGENERATE_SINGLE, alpha)
    forms = {"raw": (amp * raw) ** 2, "loop": (amp * loop) ** 2}
    if budget.near_degenerate:
        forms["collapsed"] = s.loop_quantum ** 2 * (G * G + g * g) * n_ps
    return SnrPrediction(amp * raw, 1.0, n_ps, _shot_noise(n_ps, s.loop_total), forms)


def dual_band_brackets(gain, budget):
    """Per-band first-order signal brackets with equal signal/idler injection."""
    G, g = gain.G, gain.g
    out = {}
    for name, me, other in (("s", budget.signal, budget.idler), ("i", budget.idler, budget.signal)):
        out[name] = (me.Delta1 + me.Delta2 + (G + g) * (me.delta * G + other.delta * g)
                     - budget.Delta_phi2 * g * (G + g))
        out[name + "_loop"] = (me.loop_classical + me.loop_quantum * (G + g) ** 2
                               + (other.loop_quantum - me.loop_quantum) * g * (G + g))
    return out


def snr_nondegenerate_dual(gain, budget, alpha):
    """SNR of the summed signal+idler Y quadratures with equal injections."""
    G, g = gain.G, gain.g
    amp = abs(alpha)
    br = dual_band_brackets(gain, budget)
    forms = {
        "band_s": (amp * br["s"]) ** 2,
        "band_i": (amp * br["i"]) ** 2,
        "band_s_loop": (amp * br["s_loop"]) ** 2,
        "band_i_loop": (amp * br["i_loop"]) ** 2,
    }
    s, i = budget.signal, budget.idler
    combined = (s.loop_classical + i.loop_classical
                + (s.loop_quantum + i.loop_quantum) * (G + g) ** 2)
    forms["combined"] = combined ** 2 * amp ** 2 / 2
    forms["mean_loop"] = (2 * amp ** 2
                          * (budget.mean_loop_classical + budget.mean_loop_quantum * (G + g) ** 2) ** 2)
    if budget.near_degenerate:
        forms["band_s_dropped"] = (amp * (s.loop_classical + s.loop_quantum * (G + g) ** 2)) ** 2
        forms["band_i_dropped"] = (amp * (i.loop_classical + i.loop_quantum * (G + g) ** 2)) ** 2
    n_ps = sensing_photons(gain, SchemeKind.NONDEGENERATE_DUAL, alpha)
    mean = amp * (br["s"] + br["i"])
    base = _shot_noise(n_ps, budget.mean_loop_classical + budget.mean_loop_quantum)
    return SnrPrediction(mean, 2.0, n_ps, base, forms)


def mean_loop_phase(omega, area, lambda_p, nonlinearity=Nonlinearity.CHI2, c=SPEED_OF_LIGHT):
    """Signal/idler-averaged Sagnac phase expressed through the pump wavelength.

    Energy conservation fixes ``1/lambda_s + 1/lambda_i`` to ``1/lambda_p``
    (chi2) or ``2/lambda_p`` (chi3), so the band average depends on the pump
    wavelength only.
    """
    k = Nonlinearity(nonlinearity).pump_photons
    return 8.0 * math.pi * omega * area * k / (2.0 * lambda_p * c)


def sui_fringe(visibility, phi_s, phi_i):
    """Relative output intensity ``1 + V cos(phi_s + phi_i)``."""
    if not 0.0 <= visibility <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {visibility!r}")
    return 1.0 + visibility * math.cos(phi_s + phi_i)


def naive_sui_prediction(gain, budget, alpha):
    """First-order idler-port signal of the split-by-amplifier Sagnac.

    The homodyne mean is ``2 G g |alpha| (phi_s + phi_i)`` and rotation gives
    ``phi_i = -phi_s``, so the prediction is identically zero.
    """
    G, g = gain.G, gain.g
    n_ps = (G * G + g * g) * abs(alpha) ** 2
    phi_s = 0.5 * budget.loop_total
    phi_i = -phi_s
    mean = 2 * G * g * abs(alpha) * (phi_s + phi_i)
    return SnrPrediction(mean, 1.0, n_ps, _shot_noise(n_ps, budget.loop_total),
                         {"fringe": sui_fringe(1.0, phi_s, phi_i)})


def snr_classical(budget, alpha):
    """Shot-noise-limited Sagnac: ``SNR = |alpha|^2 * phase^2``."""
    amp = abs(alpha)
    n = amp * amp
    return SnrPrediction(amp * budget.loop_total, 1.0, n, _shot_noise(n, budget.loop_total), {})
