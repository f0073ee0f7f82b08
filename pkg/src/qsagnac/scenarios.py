"""Rotation geometry, phase bookkeeping, and the interferometer builders.

Sign conventions for a counter-propagating loop rotating at ``omega``:
path ``a`` picks up ``+x/2`` and path ``b`` picks up ``-x/2`` for every loop
phase ``x``; the pre-amplifier phase ``Delta1`` sits before the first
amplifier on ``a`` and after the second amplifier on ``b``, and ``Delta2``
the other way round.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .components import (
    Circuit,
    PropagationPhases,
    PumpPhase,
    beam_splitter,
    dpa,
    npa,
    phase_shift,
)
from .gaussian import ModeRegister, coherent_state
from .measurement import HomodyneSetting

SPEED_OF_LIGHT = 299_792_458.0
ENERGY_TOL = 1e-9
NEAR_DEGENERATE_TOL = 1e-3

DEGENERATE_REGISTER = ModeRegister.of("a", "b")
NONDEGENERATE_REGISTER = ModeRegister.of("a.s", "a.i", "b.s", "b.i")
NAIVE_REGISTER = ModeRegister.of("a.s", "b.i")


class ScenarioError(ValueError):
    pass


class Nonlinearity(str, Enum):
    CHI2 = "chi2"
    CHI3 = "chi3"

    @property
    def pump_photons(self):
        """Pump photons consumed per signal/idler pair."""
        return 1 if self is Nonlinearity.CHI2 else 2


def sagnac_phase(omega, area, wavelength, c=SPEED_OF_LIGHT):
    """Sagnac phase ``8 pi omega A / (lambda c)`` between counter-propagating beams."""
    if not wavelength > 0:
        raise ScenarioError(f"wavelength must be positive, got {wavelength!r}")
    if area < 0:
        raise ScenarioError(f"area must be nonnegative, got {area!r}")
    return 8.0 * math.pi * omega * area / (wavelength * c)


@dataclass(frozen=True)
class RotationScenario:
    """Rotation rate, loop areas and wavelengths (SI units).

    ``segment_split`` distributes the classical-loop phase over the
    pre-amplifier segment before DPA1 (``Delta1``), the pump path
    (``delta_p``) and the segment after DPA2 (``Delta2``).
    ``lambda_i`` defaults to ``lambda_s``; ``lambda_p`` defaults to the value
    fixed by energy conservation.
    """

    omega: float = 0.0
    area_lp1c: float = 0.0
    area_lp2q: float = 1.0
    segment_split: tuple = (1 / 3, 1 / 3, 1 / 3)
    lambda_s: float = 1.55e-6
    lambda_i: float | None = None
    lambda_p: float | None = None
    c: float = SPEED_OF_LIGHT
    nonlinearity: Nonlinearity = Nonlinearity.CHI2

    def __post_init__(self):
        nl = Nonlinearity(self.nonlinearity)
        object.__setattr__(self, "nonlinearity", nl)
        split = tuple(float(f) for f in self.segment_split)
        if len(split) != 3 or any(f < 0 for f in split):
            raise ScenarioError("segment_split needs three nonnegative fractions")
        if abs(sum(split) - 1.0) > 1e-12:
            raise ScenarioError(f"segment_split fractions sum to {sum(split)!r}, not 1")
        object.__setattr__(self, "segment_split", split)
        if self.area_lp1c < 0 or self.area_lp2q < 0:
            raise ScenarioError("loop areas must be nonnegative")
        if not self.lambda_s > 0 or not self.c > 0:
            raise ScenarioError("wavelengths and c must be positive")
        if self.lambda_i is None:
            object.__setattr__(self, "lambda_i", self.lambda_s)
        if not self.lambda_i > 0:
            raise ScenarioError("wavelengths and c must be positive")
        pump_inv = (1.0 / self.lambda_s + 1.0 / self.lambda_i) / nl.pump_photons
        if self.lambda_p is None:
            object.__setattr__(self, "lambda_p", 1.0 / pump_inv)
        elif not self.lambda_p > 0:
            raise ScenarioError("wavelengths and c must be positive")
        elif abs(self.lambda_p * pump_inv - 1.0) > ENERGY_TOL:
            raise ScenarioError(
                f"energy conservation violated for {nl.value}: "
                f"1/lambda_s + 1/lambda_i != {nl.pump_photons}/lambda_p")

    @property
    def degenerate(self):
        return self.lambda_s == self.lambda_i

    def with_(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class BandPhases:
    """Rotation phases seen by one frequency band (radians)."""

    Delta1: float = 0.0
    Delta2: float = 0.0
    delta_p: float = 0.0
    delta: float = 0.0

    @property
    def loop_classical(self):
        return self.Delta1 + self.delta_p + self.Delta2

    @property
    def loop_quantum(self):
        return self.delta - self.delta_p

    @property
    def loop_total(self):
        return self.loop_classical + self.loop_quantum

    def scaled(self, k):
        return BandPhases(k * self.Delta1, k * self.Delta2, k * self.delta_p, k * self.delta)


@dataclass(frozen=True)
class PhaseBudget:
    """Every rotation-induced phase of the interferometer.

    ``Delta_phi2`` is the total pump-phase shift, equal to the sum of the
    two bands' pump-path equivalents.
    """

    signal: BandPhases
    idler: BandPhases
    lambda_s: float | None = None
    lambda_i: float | None = None

    @classmethod
    def degenerate(cls, Delta1=0.0, Delta2=0.0, delta=0.0, delta_p=0.0):
        band = BandPhases(Delta1, Delta2, delta_p, delta)
        return cls(band, band)

    @classmethod
    def from_loops(cls, loop_classical, loop_quantum, split=(1 / 3, 1 / 3, 1 / 3),
                   idler_ratio=1.0):
        """Budget from loop phases; ``idler_ratio = lambda_s / lambda_i``."""
        def band(k):
            c = k * loop_classical
            d1, dp, d2 = (f * c for f in split)
            return BandPhases(d1, d2, dp, k * loop_quantum + dp)
        return cls(band(1.0), band(idler_ratio), 1.0, 1.0 / idler_ratio)

    @property
    def Delta_phi2(self):
        return self.signal.delta_p + self.idler.delta_p

    # degenerate-case shorthands read the signal band
    @property
    def delta(self):
        return self.signal.delta

    @property
    def delta_p(self):
        return self.signal.delta_p

    @property
    def Delta1(self):
        return self.signal.Delta1

    @property
    def Delta2(self):
        return self.signal.Delta2

    @property
    def loop_classical(self):
        return self.signal.loop_classical

    @property
    def loop_quantum(self):
        return self.signal.loop_quantum

    @property
    def loop_total(self):
        return self.signal.loop_total

    @property
    def mean_loop_classical(self):
        return 0.5 * (self.signal.loop_classical + self.idler.loop_classical)

    @property
    def mean_loop_quantum(self):
        return 0.5 * (self.signal.loop_quantum + self.idler.loop_quantum)

    @property
    def near_degenerate(self):
        if self.lambda_s is not None and self.lambda_i is not None:
            return abs(self.lambda_s - self.lambda_i) / self.lambda_s <= NEAR_DEGENERATE_TOL
        s, i = self.signal.loop_total, self.idler.loop_total
        return abs(s - i) <= NEAR_DEGENERATE_TOL * max(abs(s), abs(i))

    def band(self, name):
        return self.idler if name in ("i", "idler") else self.signal

    def propagation(self, band="signal"):
        b = self.band(band)
        return PropagationPhases.counter_propagating(b.delta, b.Delta1, b.Delta2)

    def pump(self):
        return PumpPhase.dark_fringe(self.Delta_phi2)

    def scaled(self, k):
        return replace(self, signal=self.signal.scaled(k), idler=self.idler.scaled(k))

    def symbols(self):
        """Named phases referenced by circuit documents."""
        table = {"pi": math.pi}
        pump = self.pump()
        table.update(phi1=pump.phi1, phi1p=pump.phi1_prime,
                     phi2=pump.phi2, phi2p=pump.phi2_prime)
        for suffix, band in (("", "signal"), ("_s", "signal"), ("_i", "idler")):
            p = self.propagation(band)
            for name in ("delta1", "delta2", "delta_a1", "delta_b1", "delta_a4", "delta_b4"):
                table[name + suffix] = getattr(p, name)
            table["loop_half" + suffix] = 0.5 * self.band(band).loop_total
        return table


def phase_budget(scen: RotationScenario) -> PhaseBudget:
    f1, fp, f2 = scen.segment_split

    def band(wavelength):
        classical = sagnac_phase(scen.omega, scen.area_lp1c, wavelength, scen.c)
        quantum = sagnac_phase(scen.omega, scen.area_lp2q, wavelength, scen.c)
        dp = fp * classical
        return BandPhases(f1 * classical, f2 * classical, dp, quantum + dp)

    return PhaseBudget(band(scen.lambda_s), band(scen.lambda_i), scen.lambda_s, scen.lambda_i)


class SchemeKind(str, Enum):
    DEGENERATE_SINGLE = "degenerate_single"
    NONDEGENERATE_SINGLE = "nondegenerate_single"
    NONDEGENERATE_DUAL = "nondegenerate_dual"


@dataclass(frozen=True)
class InjectionScheme:
    kind: SchemeKind
    alpha: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", SchemeKind(self.kind))
        object.__setattr__(self, "alpha", complex(self.alpha))

    @property
    def register(self):
        if self.kind is SchemeKind.DEGENERATE_SINGLE:
            return DEGENERATE_REGISTER
        return NONDEGENERATE_REGISTER

    def input_state(self, register=None):
        reg = register or self.register
        if self.kind is SchemeKind.DEGENERATE_SINGLE:
            amps = {"a": self.alpha}
        elif self.kind is SchemeKind.NONDEGENERATE_SINGLE:
            amps = {"a.s": self.alpha}
        else:
            amps = {"a.s": self.alpha, "a.i": self.alpha}
        return coherent_state(reg, amps)

    def dark_port(self):
        if self.kind is SchemeKind.DEGENERATE_SINGLE:
            return HomodyneSetting.single("b")
        if self.kind is SchemeKind.NONDEGENERATE_SINGLE:
            return HomodyneSetting.single("b.s")
        return HomodyneSetting.summed("b.s", "b.i")


def sensing_photons(gain, kind, alpha):
    """Photon number traversing the sensing loop."""
    n = abs(alpha) ** 2
    kind = SchemeKind(kind)
    if kind is SchemeKind.DEGENERATE_SINGLE:
        return (gain.G + gain.g) ** 2 * n
    if kind is SchemeKind.NONDEGENERATE_SINGLE:
        return (gain.G ** 2 + gain.g ** 2) * n
    return 2.0 * (gain.G + gain.g) ** 2 * n


def classical_sagnac_circuit(total_phase):
    """Balanced Sagnac: split, counter-propagate with +-phase/2, recombine."""
    reg = DEGENERATE_REGISTER
    return (Circuit(reg)
            .then("bs", beam_splitter(reg, "a", "b"))
            .then("phase a", phase_shift(reg, "a", 0.5 * total_phase))
            .then("phase b", phase_shift(reg, "b", -0.5 * total_phase))
            .then("bs out", beam_splitter(reg, "b", "a")))


def build_classical_sagnac(budget, alpha):
    circuit = classical_sagnac_circuit(budget.loop_total)
    return circuit, coherent_state(circuit.register, {"a": alpha})


def build_naive_sui_sagnac(budget, gain, alpha, common_mode=False):
    """Sagnac loop with the splitter replaced by one parametric amplifier.

    The signal travels one way round (phase ``+phi``) and the idler the other
    way (``-phi``), with ``phi`` half the total Sagnac phase. The second pass
    is pumped at ``pi`` so the idler port is dark. ``common_mode=True`` gives
    both beams ``+phi`` instead, for contrast.
    """
    reg = NAIVE_REGISTER
    phi = 0.5 * budget.loop_total
    circuit = (Circuit(reg)
               .then("pa", npa(reg, "a.s", "b.i", gain, 0.0))
               .then("phase a.s", phase_shift(reg, "a.s", phi))
               .then("phase b.i", phase_shift(reg, "b.i", phi if common_mode else -phi))
               .then("pa return", npa(reg, "a.s", "b.i", gain, math.pi)))
    return circuit, coherent_state(reg, {"a.s": alpha})


NAIVE_DARK_PORT = HomodyneSetting.single("b.i")


def build_nested_sagnac_sui(budget, gain, scheme):
    """Sagnac interferometer with an SU(1,1) interferometer in each direction.

    Element order: BS, pre-amplifier phases, first amplifiers, sensing-loop
    phases, second amplifiers, post-amplifier phases, recombining BS. Pumps
    sit at the dark fringe, so with all phases zero the circuit is the
    identity.
    """
    reg = scheme.register
    if scheme.kind is SchemeKind.DEGENERATE_SINGLE and not budget.near_degenerate:
        raise ScenarioError("degenerate injection needs equal signal and idler wavelengths")
    pump = budget.pump()
    c = Circuit(reg)
    if reg.degenerate:
        p = budget.propagation("signal")
        c = (c.then("bs", beam_splitter(reg, "a", "b"))
             .then("phase a delta_a1", phase_shift(reg, "a", p.delta_a1))
             .then("phase b delta_b1", phase_shift(reg, "b", p.delta_b1))
             .then("dpa1", dpa(reg, "a", gain, pump.phi1))
             .then("dpa1'", dpa(reg, "b", gain, pump.phi1_prime))
             .then("phase a delta1", phase_shift(reg, "a", p.delta1))
             .then("phase b delta2", phase_shift(reg, "b", p.delta2))
             .then("dpa2", dpa(reg, "a", gain, pump.phi2))
             .then("dpa2'", dpa(reg, "b", gain, pump.phi2_prime))
             .then("phase a delta_a4", phase_shift(reg, "a", p.delta_a4))
             .then("phase b delta_b4", phase_shift(reg, "b", p.delta_b4))
             .then("bs out", beam_splitter(reg, "b", "a")))
        return c, scheme.input_state(reg)

    ps, pi = budget.propagation("signal"), budget.propagation("idler")

    def phases(c, field_a, field_b):
        for band, p in (("s", ps), ("i", pi)):
            c = c.then(f"phase a.{band} {field_a}", phase_shift(reg, f"a.{band}", getattr(p, field_a)))
            c = c.then(f"phase b.{band} {field_b}", phase_shift(reg, f"b.{band}", getattr(p, field_b)))
        return c

    c = (c.then("bs s", beam_splitter(reg, "a.s", "b.s"))
         .then("bs i", beam_splitter(reg, "a.i", "b.i")))
    c = phases(c, "delta_a1", "delta_b1")
    c = (c.then("npa1", npa(reg, "a.s", "a.i", gain, pump.phi1))
         .then("npa1'", npa(reg, "b.s", "b.i", gain, pump.phi1_prime)))
    c = phases(c, "delta1", "delta2")
    c = (c.then("npa2", npa(reg, "a.s", "a.i", gain, pump.phi2))
         .then("npa2'", npa(reg, "b.s", "b.i", gain, pump.phi2_prime)))
    c = phases(c, "delta_a4", "delta_b4")
    c = (c.then("bs out s", beam_splitter(reg, "b.s", "a.s"))
         .then("bs out i", beam_splitter(reg, "b.i", "a.i")))
    return c, scheme.input_state(reg)


def baseline_phase(budget, kind):
    """Total Sagnac phase used by the shot-noise reference for a scheme."""
    if SchemeKind(kind) is SchemeKind.NONDEGENERATE_DUAL:
        return budget.mean_loop_classical + budget.mean_loop_quantum
    return budget.loop_total


def matched_baseline(budget, gain, scheme):
    """Classical Sagnac carrying the scheme's sensing photon number.

    Returns the ``(circuit, state, setting)`` triple expected by
    :func:`qsagnac.measurement.snr_exact`.
    """
    n_ps = sensing_photons(gain, scheme.kind, scheme.alpha)
    circuit = classical_sagnac_circuit(baseline_phase(budget, scheme.kind))
    state = coherent_state(circuit.register, {"a": math.sqrt(n_ps)})
    return circuit, state, HomodyneSetting.single("b")
