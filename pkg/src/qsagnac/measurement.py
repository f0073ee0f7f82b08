"""Homodyne statistics and exact SNR extraction from propagated states."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import minimize_scalar

from .gaussian import GaussianState, ModeLabel, _as_label


class MeasurementError(ValueError):
    pass


class Combine(str, Enum):
    SINGLE = "single"
    SUM_OF_TWO = "sum_of_two"


@dataclass(frozen=True)
class HomodyneSetting:
    """Which quadrature is measured.

    The measured operator is ``cos(t) Y + sin(t) X`` with ``t = lo_angle``:
    ``t = 0`` is the phase quadrature ``Y = i(a^dag - a)``, ``t = pi/2`` the
    amplitude quadrature ``X``. With ``combine=SUM_OF_TWO`` the same
    quadrature of two modes is added with unit weights.
    """

    modes: tuple
    lo_angle: float = 0.0
    combine: Combine = Combine.SINGLE

    def __post_init__(self):
        modes = self.modes
        if isinstance(modes, (str, ModeLabel)):
            modes = (modes,)
        modes = tuple(_as_label(m) for m in modes)
        combine = Combine(self.combine)
        expected = 1 if combine is Combine.SINGLE else 2
        if len(modes) != expected:
            raise MeasurementError(f"combine={combine.value} needs {expected} mode(s), got {len(modes)}")
        if combine is Combine.SUM_OF_TWO and modes[0].key == modes[1].key:
            raise MeasurementError("sum_of_two needs two distinct modes")
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "combine", combine)
        object.__setattr__(self, "lo_angle", math.remainder(float(self.lo_angle), 2 * math.pi))

    @classmethod
    def single(cls, mode, lo_angle=0.0):
        return cls((mode,), lo_angle, Combine.SINGLE)

    @classmethod
    def summed(cls, mode1, mode2, lo_angle=0.0):
        return cls((mode1, mode2), lo_angle, Combine.SUM_OF_TWO)

    def with_angle(self, lo_angle):
        return HomodyneSetting(self.modes, lo_angle, self.combine)


def _projector(state, setting):
    reg = state.register
    n = reg.size
    v = np.zeros(2 * n)
    c, s = math.cos(setting.lo_angle), math.sin(setting.lo_angle)
    for mode in setting.modes:
        try:
            k = reg.index(mode)
        except KeyError as exc:
            raise MeasurementError(str(exc)) from None
        v[k] += s
        v[n + k] += c
    return v


def homodyne(state: GaussianState, setting: HomodyneSetting):
    """Mean and variance of the measured quadrature (or quadrature sum)."""
    v = _projector(state, setting)
    mean = float(v @ state.quadrature_mean)
    var = float(v @ state.cov @ v)
    return mean, var


@dataclass(frozen=True)
class SnrReport:
    mean: float
    variance: float
    baseline_snr: float = float("nan")

    @property
    def signal_power(self):
        return self.mean ** 2

    @property
    def snr(self):
        return self.mean ** 2 / self.variance

    @property
    def enhancement(self):
        if not self.baseline_snr or math.isnan(self.baseline_snr):
            return float("nan")
        return self.snr / self.baseline_snr


def snr_exact(circuit, input_state, setting, baseline=None):
    """Exact homodyne SNR of ``circuit`` acting on ``input_state``.

    ``baseline`` is an optional ``(circuit, state, setting)`` triple, normally
    the shot-noise-limited Sagnac at matched sensing photon number; its SNR
    fills ``baseline_snr`` and hence ``enhancement``.
    """
    if circuit.register != input_state.register:
        raise MeasurementError("circuit and input state use different registers")
    out = circuit.run(input_state)
    mean, var = homodyne(out, setting)
    if not var > 0.0:
        raise MeasurementError(f"non-positive homodyne variance {var!r}")
    base = float("nan")
    if baseline is not None:
        b_circuit, b_state, b_setting = baseline
        b_mean, b_var = homodyne(b_circuit.run(b_state), b_setting)
        base = b_mean ** 2 / b_var
    return SnrReport(mean, var, base)


def slope_check(circuit_family, setting, h, at=0.0):
    """Central-difference derivative of the homodyne mean.

    ``circuit_family`` maps a scalar parameter (usually the angular velocity)
    to a ``(circuit, input_state)`` pair.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    def mean_at(x):
        circuit, state = circuit_family(x)
        return homodyne(circuit.run(state), setting)[0]
    return (mean_at(at + h) - mean_at(at - h)) / (2.0 * h)


def optimal_angle(state, setting, grid=721):
    """LO angle maximising ``mean**2 / variance`` and the SNR reached there."""
    def neg_snr(t):
        m, v = homodyne(state, setting.with_angle(t))
        return -(m * m) / v
    ts = np.linspace(-math.pi / 2, math.pi / 2, grid)
    vals = [neg_snr(t) for t in ts]
    k = int(np.argmin(vals))
    step = ts[1] - ts[0]
    res = minimize_scalar(neg_snr, bounds=(ts[k] - step, ts[k] + step), method="bounded",
                          options={"xatol": 1e-12})
    best_t, best = (res.x, -res.fun) if -res.fun >= -vals[k] else (ts[k], -vals[k])
    return float(best_t), float(best)
