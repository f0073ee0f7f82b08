"""Optical elements as Bogoliubov-transform factories, plus the Circuit container."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gaussian import (
    Band,
    BogoliubovTransform,
    GaussianState,
    ModeRegister,
    apply,
    compose_all,
)

GAIN_TOL = 1e-12


class ComponentError(ValueError):
    """An element was requested on modes or a register it cannot act on."""


@dataclass(frozen=True)
class GainPair:
    """Parametric amplifier gains with ``G**2 - g**2 == 1``."""

    G: float
    g: float

    def __post_init__(self):
        if self.G < 1.0 or self.g < 0.0:
            raise ComponentError(f"gain pair needs G >= 1 and g >= 0, got ({self.G}, {self.g})")
        if abs(self.G ** 2 - self.g ** 2 - 1.0) > GAIN_TOL * max(1.0, self.G ** 2):
            raise ComponentError(f"G^2 - g^2 = {self.G ** 2 - self.g ** 2!r}, expected 1")

    @classmethod
    def from_G(cls, G):
        G = float(G)
        return cls(G, math.sqrt(max(G * G - 1.0, 0.0)))

    @classmethod
    def from_squeezing(cls, r):
        return cls(math.cosh(r), math.sinh(abs(r)))

    @classmethod
    def off(cls):
        return cls(1.0, 0.0)


@dataclass(frozen=True)
class PumpPhase:
    """Pump phases of the four amplifier passes (radians)."""

    phi1: float = 0.0
    phi1_prime: float = 0.0
    phi2: float = math.pi
    phi2_prime: float = math.pi
    delta_phi2: float = 0.0

    @classmethod
    def dark_fringe(cls, Delta_phi2=0.0):
        """Operating point ``phi1 = phi1' = 0``, ``phi2 = pi + d``, ``phi2' = pi - d``.

        ``d = Delta_phi2 / 2`` is the rotation-induced pump shift of each
        direction.
        """
        d = 0.5 * Delta_phi2
        return cls(0.0, 0.0, math.pi + d, math.pi - d, d)

    @property
    def delta_phi2_prime(self):
        return -self.delta_phi2


@dataclass(frozen=True)
class PropagationPhases:
    """Propagation phases of one frequency band (radians)."""

    delta1: float = 0.0
    delta2: float = 0.0
    delta_a1: float = 0.0
    delta_b1: float = 0.0
    delta_a4: float = 0.0
    delta_b4: float = 0.0

    @classmethod
    def counter_propagating(cls, delta, Delta1, Delta2):
        """Antisymmetric split produced by a rotating counter-propagating loop."""
        return cls(0.5 * delta, -0.5 * delta,
                   0.5 * Delta1, -0.5 * Delta2,
                   0.5 * Delta2, -0.5 * Delta1)


def _check_modes(register, *modes):
    idx = []
    for m in modes:
        try:
            idx.append(register.index(m))
        except (KeyError, ValueError) as exc:
            raise ComponentError(str(exc)) from None
    return idx


def beam_splitter(register, port_a, port_b):
    """50:50 splitter: ``a -> (a + b)/sqrt2``, ``b -> (b - a)/sqrt2``.

    Swapping the port arguments gives the recombining orientation
    ``a -> (a - b)/sqrt2``, ``b -> (b + a)/sqrt2``.
    """
    i, j = _check_modes(register, port_a, port_b)
    if i == j:
        raise ComponentError("beam splitter needs two distinct ports")
    n = register.size
    a = np.eye(n, dtype=complex)
    r = 1.0 / math.sqrt(2.0)
    a[i, i] = r
    a[i, j] = r
    a[j, i] = -r
    a[j, j] = r
    return BogoliubovTransform(register, a, np.zeros((n, n)))


def phase_shift(register, mode, theta):
    """``a -> a exp(i theta)`` on one mode."""
    (i,) = _check_modes(register, mode)
    n = register.size
    a = np.eye(n, dtype=complex)
    a[i, i] = complex(math.cos(theta), math.sin(theta))
    return BogoliubovTransform(register, a, np.zeros((n, n)))


def dpa(register, mode, gain, pump_phase):
    """Degenerate parametric amplifier ``a -> G a + exp(i phi) g a^dagger``."""
    if not register.degenerate:
        raise ComponentError("dpa needs a degenerate-band register; use npa for signal/idler")
    (i,) = _check_modes(register, mode)
    n = register.size
    a = np.eye(n, dtype=complex)
    b = np.zeros((n, n), dtype=complex)
    a[i, i] = gain.G
    b[i, i] = gain.g * complex(math.cos(pump_phase), math.sin(pump_phase))
    return BogoliubovTransform(register, a, b)


def npa(register, signal_mode, idler_mode, gain, pump_phase):
    """Non-degenerate amplifier coupling a signal mode to an idler mode.

    ``a_s -> G a_s + exp(i phi) g a_i^dagger`` and
    ``a_i -> G a_i + exp(i phi) g a_s^dagger``.
    """
    s, i = _check_modes(register, signal_mode, idler_mode)
    if s == i:
        raise ComponentError("npa needs two distinct modes")
    if register.modes[s].band is not Band.SIGNAL or register.modes[i].band is not Band.IDLER:
        raise ComponentError("npa couples a signal-band mode to an idler-band mode")
    n = register.size
    a = np.eye(n, dtype=complex)
    b = np.zeros((n, n), dtype=complex)
    e = complex(math.cos(pump_phase), math.sin(pump_phase))
    a[s, s] = gain.G
    a[i, i] = gain.G
    b[s, i] = e * gain.g
    b[i, s] = e * gain.g
    return BogoliubovTransform(register, a, b)


@dataclass(frozen=True)
class Element:
    """A named step of a circuit."""

    label: str
    transform: BogoliubovTransform


@dataclass(frozen=True)
class Circuit:
    """Ordered sequence of elements acting on one register."""

    register: ModeRegister
    elements: tuple = ()

    def then(self, label, transform):
        return Circuit(self.register, self.elements + (Element(label, transform),))

    def transform(self):
        """Total Bogoliubov transform of the circuit."""
        return compose_all(self.register, (e.transform for e in self.elements))

    def run(self, state: GaussianState) -> GaussianState:
        return apply(self.transform(), state)

    def __len__(self):
        return len(self.elements)

    def labels(self):
        return [e.label for e in self.elements]
