"""Evaluate circuit documents and sweep them over one parameter."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import theory
from .components import Circuit, ComponentError, GainPair, beam_splitter, dpa, npa, phase_shift
from .measurement import HomodyneSetting, snr_exact
from .scenarios import (
    InjectionScheme,
    RotationScenario,
    SchemeKind,
    baseline_phase,
    classical_sagnac_circuit,
    phase_budget,
    sensing_photons,
)
from .gaussian import coherent_state

SWEEP_PARAMS = ("omega", "G", "area_lp2q", "area_lp1c", "alpha")
OUTPUTS = ("exact_snr", "linearized_snr", "enhancement")
_SCENARIO_FIELDS = {
    "omega": "omega", "area_lp1c": "area_lp1c", "area_lp2q": "area_lp2q",
    "lambda_s": "lambda_s", "lambda_i": "lambda_i", "lambda_p": "lambda_p",
    "c": "c", "nonlinearity": "nonlinearity", "split": "segment_split",
}


class SweepError(ValueError):
    pass


@dataclass(frozen=True)
class Instance:
    """A circuit document evaluated at concrete parameter values."""

    circuit: Circuit
    state: object
    setting: HomodyneSetting
    scenario: RotationScenario
    budget: object
    gain: GainPair
    scheme: InjectionScheme
    model: str


def _has_amplifiers(doc):
    return any(el.kind in ("dpa", "npa") for el in doc.elements)


def infer_model(doc, scheme_kind):
    """Name of the closed-form model that describes a document's layout."""
    reg = doc.register
    if len(reg) == 2 and "a" in reg:
        return "degenerate" if _has_amplifiers(doc) else "classical"
    if len(reg) == 2:
        return "naive"
    m = doc.measure
    if scheme_kind is SchemeKind.NONDEGENERATE_DUAL:
        return "nondegenerate_dual" if m.combine == "sum_of_two" else "nondegenerate_dual_band"
    if scheme_kind is SchemeKind.NONDEGENERATE_SINGLE:
        if m.combine == "sum_of_two":
            return "nondegenerate_single_combined"
        return "nondegenerate_single" if m.modes == ("b.s",) else "nondegenerate_single_other"
    return "unknown"


def _default_scheme(register):
    return "degenerate_single" if "a" in register else "nondegenerate_single"


def instantiate(doc, **overrides):
    """Build the circuit, input state and measurement of ``doc``.

    ``overrides`` replaces any of omega, G, area_lp1c, area_lp2q, alpha.
    """
    unknown = set(overrides) - set(SWEEP_PARAMS)
    if unknown:
        raise SweepError(f"cannot override {sorted(unknown)}")
    sc = doc.scenario_dict
    kwargs = {_SCENARIO_FIELDS[k]: v for k, v in sc.items() if k in _SCENARIO_FIELDS}
    for k in ("omega", "area_lp1c", "area_lp2q"):
        if k in overrides:
            kwargs[k] = overrides[k]
    scenario = RotationScenario(**kwargs)
    budget = phase_budget(scenario)
    gain = GainPair.from_G(overrides.get("G", sc.get("G", 1.0)))
    table = budget.symbols()
    reg = doc.mode_register()

    circuit = Circuit(reg)
    for el in doc.elements:
        g = el.param("G")
        el_gain = GainPair.from_G(g.number) if g is not None else gain
        label = " ".join([el.kind, *el.modes])
        if el.kind == "bs":
            t = beam_splitter(reg, *el.modes)
        elif el.kind == "phase":
            t = phase_shift(reg, el.modes[0], el.param("theta").resolve(table))
        elif el.kind == "dpa":
            t = dpa(reg, el.modes[0], el_gain, el.param("phi").resolve(table))
        else:
            t = npa(reg, el.modes[0], el.modes[1], el_gain, el.param("phi").resolve(table))
        circuit = circuit.then(label, t)

    inj = doc.inject_dict
    scheme = InjectionScheme(inj.get("scheme", _default_scheme(doc.register)),
                             overrides.get("alpha", inj.get("alpha", 1.0)))
    try:
        state = scheme.input_state(reg)
    except KeyError as exc:
        raise ComponentError(f"injection {scheme.kind.value} does not fit register "
                             f"[{' '.join(doc.register)}]: {exc}") from None
    m = doc.measure
    setting = HomodyneSetting(m.modes, m.angle, m.combine)
    return Instance(circuit, state, setting, scenario, budget, gain, scheme,
                    infer_model(doc, scheme.kind))


def linearized(inst):
    """Closed-form prediction for an instance, or None if no formula applies."""
    if inst.setting.lo_angle != 0.0:
        return None
    alpha = inst.scheme.alpha
    model = inst.model
    if model == "classical":
        return theory.snr_classical(inst.budget, alpha)
    if model == "degenerate":
        return theory.snr_degenerate(inst.gain, inst.budget, alpha)
    if model == "naive":
        return theory.naive_sui_prediction(inst.gain, inst.budget, alpha)
    if model == "nondegenerate_single":
        return theory.snr_nondegenerate_single(inst.gain, inst.budget, alpha)
    if model == "nondegenerate_dual":
        return theory.snr_nondegenerate_dual(inst.gain, inst.budget, alpha)
    return None


def reference(inst):
    """Shot-noise Sagnac at the instance's sensing photon number.

    Returned as the ``(circuit, state, setting)`` triple used by
    :func:`qsagnac.measurement.snr_exact`.
    """
    alpha = inst.scheme.alpha
    kind = inst.scheme.kind
    if inst.model == "classical":
        n_ps = abs(alpha) ** 2
    elif inst.model == "naive":
        n_ps = (inst.gain.G ** 2 + inst.gain.g ** 2) * abs(alpha) ** 2
    else:
        n_ps = sensing_photons(inst.gain, kind, alpha)
    circuit = classical_sagnac_circuit(baseline_phase(inst.budget, kind))
    state = coherent_state(circuit.register, {"a": math.sqrt(n_ps)})
    return circuit, state, HomodyneSetting.single("b")


def evaluate(doc, **overrides):
    """One sweep row: exact and linearised SNR, enhancement, mean, variance."""
    inst = instantiate(doc, **overrides)
    report = snr_exact(inst.circuit, inst.state, inst.setting, reference(inst))
    pred = linearized(inst)
    return {
        "exact_snr": report.snr,
        "linearized_snr": pred.snr if pred is not None else None,
        "enhancement": report.enhancement,
        "signal_mean": report.mean,
        "noise_variance": report.variance,
    }


@dataclass(frozen=True)
class SweepConfig:
    param: str
    start: float
    stop: float
    count: int
    log: bool = False
    outputs: tuple = OUTPUTS

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise SweepError(f"unknown sweep parameter {self.param!r}; choose from {', '.join(SWEEP_PARAMS)}")
        if int(self.count) != self.count or self.count < 2:
            raise SweepError("sweep count must be an integer >= 2")
        if not self.start < self.stop:
            raise SweepError("sweep needs start < stop")
        if self.log and not self.start > 0:
            raise SweepError("log sweep needs a positive start")
        bad = set(self.outputs) - set(OUTPUTS)
        if bad:
            raise SweepError(f"unknown outputs {sorted(bad)}")

    @classmethod
    def parse(cls, text):
        """Parse ``param=start:stop:count[:log]``."""
        param, sep, rng = text.partition("=")
        parts = rng.split(":")
        if not sep or len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
            raise SweepError(f"bad sweep spec {text!r}; expected param=start:stop:count[:log]")
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError:
            raise SweepError(f"bad number in sweep spec {text!r}") from None
        return cls(param.strip(), start, stop, count, len(parts) == 4)

    def values(self):
        if self.log:
            return [float(x) for x in np.geomspace(self.start, self.stop, self.count)]
        return [float(x) for x in np.linspace(self.start, self.stop, self.count)]


@dataclass(frozen=True)
class SweepTable:
    columns: tuple
    rows: tuple

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow(_fmt_cell(x) for x in row)
        return buf.getvalue()


def _fmt_cell(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return repr(float(x))


def _columns(param, outputs):
    return (param,) + tuple(o for o in OUTPUTS if o in outputs) + ("signal_mean", "noise_variance")


def _check_applicable(doc, param):
    if param == "G" and not _has_amplifiers(doc):
        raise SweepError("sweep parameter G is inapplicable: the circuit has no amplifiers")


def run_sweep(doc, cfg, workers=1):
    """Evaluate ``doc`` at every sweep point; rows keep sweep order."""
    _check_applicable(doc, cfg.param)
    columns = _columns(cfg.param, cfg.outputs)
    values = cfg.values()

    def point(v):
        row = evaluate(doc, **{cfg.param: v})
        return (v,) + tuple(row[c] for c in columns[1:])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(point, values))
    else:
        rows = tuple(point(v) for v in values)
    return SweepTable(columns, rows)


def single_point(doc):
    """Table with one row evaluated at the document's own scenario."""
    omega = doc.scenario_dict.get("omega", 0.0)
    row = evaluate(doc)
    columns = _columns("omega", OUTPUTS)
    return SweepTable(columns, ((omega,) + tuple(row[c] for c in columns[1:]),))
