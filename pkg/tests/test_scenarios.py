import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsagnac.components import GainPair
from qsagnac.gaussian import BogoliubovTransform
from qsagnac.measurement import HomodyneSetting, homodyne, snr_exact
from qsagnac.scenarios import (
    NAIVE_DARK_PORT,
    InjectionScheme,
    PhaseBudget,
    RotationScenario,
    ScenarioError,
    build_classical_sagnac,
    build_naive_sui_sagnac,
    build_nested_sagnac_sui,
    matched_baseline,
    phase_budget,
    sagnac_phase,
    sensing_photons,
)

EARTH = 7.292e-5
HALF = GainPair(5 / 4, 3 / 4)
SCHEMES = ("degenerate_single", "nondegenerate_single", "nondegenerate_dual")


def test_sagnac_phase_examples():
    assert sagnac_phase(0.0, 1.0, 1.55e-6) == 0.0
    # 8 pi * 7.292e-5 / (1.55e-6 * 299792458), evaluated by hand
    assert sagnac_phase(EARTH, 1.0, 1.55e-6) == pytest.approx(3.9439747e-6, rel=1e-7)
    assert sagnac_phase(EARTH, 2.0, 1.55e-6) == pytest.approx(2 * sagnac_phase(EARTH, 1.0, 1.55e-6))
    with pytest.raises(ScenarioError):
        sagnac_phase(EARTH, 1.0, 0.0)


def test_scenario_validation():
    with pytest.raises(ScenarioError):
        RotationScenario(segment_split=(0.5, 0.5, 0.5))
    with pytest.raises(ScenarioError):
        RotationScenario(area_lp1c=-1.0)
    with pytest.raises(ScenarioError):
        RotationScenario(lambda_s=1.5e-6, lambda_i=1.6e-6, lambda_p=1.0e-6)
    s = RotationScenario(lambda_s=1.5e-6, lambda_i=1.6e-6)
    assert 1 / s.lambda_p == pytest.approx(1 / 1.5e-6 + 1 / 1.6e-6)
    s3 = RotationScenario(lambda_s=1.5e-6, lambda_i=1.6e-6, nonlinearity="chi3")
    assert s3.lambda_p == pytest.approx(2 * s.lambda_p)


def test_budget_examples():
    b = phase_budget(RotationScenario(omega=0.0, area_lp1c=1.0))
    assert (b.Delta1, b.Delta2, b.delta_p, b.delta, b.Delta_phi2) == (0, 0, 0, 0, 0)
    b = phase_budget(RotationScenario(omega=EARTH, area_lp1c=0.0, area_lp2q=1.0))
    assert (b.Delta1, b.Delta2, b.delta_p) == (0, 0, 0)
    assert b.delta == sagnac_phase(EARTH, 1.0, 1.55e-6)
    b = PhaseBudget.from_loops(3e-6, 0.0)
    assert b.Delta1 == pytest.approx(1e-6)
    assert b.delta_p == pytest.approx(1e-6)
    assert b.Delta2 == pytest.approx(1e-6)
    assert b.Delta_phi2 == pytest.approx(2e-6)


def test_budget_loop_totals_and_idler_band():
    scen = RotationScenario(omega=1e-3, area_lp1c=0.4, area_lp2q=1.3, lambda_s=1.5e-6, lambda_i=1.6e-6)
    b = phase_budget(scen)
    assert b.loop_classical == pytest.approx(sagnac_phase(1e-3, 0.4, 1.5e-6))
    assert b.loop_total == pytest.approx(sagnac_phase(1e-3, 1.7, 1.5e-6))
    assert b.idler.loop_total == pytest.approx(sagnac_phase(1e-3, 1.7, 1.6e-6))
    assert not b.near_degenerate
    assert b.Delta_phi2 == pytest.approx(b.signal.delta_p + b.idler.delta_p)


def test_sensing_photons():
    assert sensing_photons(HALF, "degenerate_single", 10) == pytest.approx(400)
    assert sensing_photons(HALF, "nondegenerate_single", 10) == pytest.approx(212.5)
    assert sensing_photons(HALF, "nondegenerate_dual", 10) == pytest.approx(800)


def test_classical_sagnac_examples():
    c, s = build_classical_sagnac(PhaseBudget.degenerate(), 30.0)
    assert homodyne(c.run(s), HomodyneSetting.single("b"))[0] == 0.0
    for d in (1e-4, 1e-5):
        b = PhaseBudget.degenerate(delta=d)
        c, s = build_classical_sagnac(b, 1000.0)
        r = snr_exact(c, s, HomodyneSetting.single("b"))
        assert r.snr == pytest.approx(d ** 2 * 1e6, rel=1e-6)
        c2, s2 = build_classical_sagnac(PhaseBudget.degenerate(delta=-d), 1000.0)
        r2 = snr_exact(c2, s2, HomodyneSetting.single("b"))
        assert r2.mean == pytest.approx(-r.mean, rel=1e-12)
        assert r2.snr == pytest.approx(r.snr, rel=1e-12)


@pytest.mark.parametrize("G", [1.0, 1.25, 2.0])
def test_naive_scheme_is_blind(G):
    gain = GainPair.from_G(G)
    for loop in (0.0, 1e-6, 1e-3, 0.3):
        c, s = build_naive_sui_sagnac(PhaseBudget.degenerate(delta=loop), gain, 1.0)
        assert abs(homodyne(c.run(s), NAIVE_DARK_PORT)[0]) < 1e-12


def test_naive_common_mode_phase_is_visible():
    gain = GainPair(5 / 4, 3 / 4)
    c, s = build_naive_sui_sagnac(PhaseBudget.degenerate(delta=1e-4), gain, 1.0, common_mode=True)
    mean = homodyne(c.run(s), NAIVE_DARK_PORT)[0]
    # first order: 2 G g * (common phase) with common phase = loop/2 per beam
    assert mean == pytest.approx(2 * 1.25 * 0.75 * 1e-4, rel=1e-6)


@pytest.mark.parametrize("kind", SCHEMES)
def test_nested_identity_at_rest(kind):
    b = phase_budget(RotationScenario(omega=0.0, area_lp1c=0.5))
    c, s = build_nested_sagnac_sui(b, HALF, InjectionScheme(kind, 100.0))
    t = c.transform()
    assert t.allclose(BogoliubovTransform.identity(c.register), atol=1e-10)
    out = c.run(s)
    scheme = InjectionScheme(kind, 100.0)
    m, v = homodyne(out, scheme.dark_port())
    assert m == pytest.approx(0.0, abs=1e-12)
    assert v == pytest.approx(len(scheme.dark_port().modes), abs=1e-12)
    a_out = out.mean[c.register.index("a" if kind == "degenerate_single" else "a.s")]
    assert abs(a_out) == pytest.approx(100.0)


@pytest.mark.parametrize("omega", [-2e-3, 5e-4, 1e-3])
def test_nested_without_gain_is_classical(omega):
    b = phase_budget(RotationScenario(omega=omega, area_lp1c=0.5))
    c, s = build_nested_sagnac_sui(b, GainPair.off(), InjectionScheme("degenerate_single", 50.0))
    cc, cs = build_classical_sagnac(b, 50.0)
    m, v = homodyne(c.run(s), HomodyneSetting.single("b"))
    mc, vc = homodyne(cc.run(cs), HomodyneSetting.single("b"))
    assert m == pytest.approx(mc, rel=1e-9)
    assert v == pytest.approx(vc, rel=1e-12)


def test_degenerate_injection_needs_near_degenerate_budget():
    b = phase_budget(RotationScenario(omega=1e-3, lambda_s=1.5e-6, lambda_i=1.6e-6))
    with pytest.raises(ScenarioError):
        build_nested_sagnac_sui(b, HALF, InjectionScheme("degenerate_single", 1.0))


@settings(max_examples=25, deadline=None)
@given(st.floats(1e-6, 1e-2), st.floats(1.0, 3.0), st.sampled_from(SCHEMES))
def test_rotation_reversal_symmetry(omega, G, kind):
    gain = GainPair.from_G(G)
    scheme = InjectionScheme(kind, 10.0)
    out = []
    for w in (omega, -omega):
        b = phase_budget(RotationScenario(omega=w, area_lp1c=0.3))
        c, s = build_nested_sagnac_sui(b, gain, scheme)
        out.append(snr_exact(c, s, scheme.dark_port(), matched_baseline(b, gain, scheme)))
    assert out[1].mean == pytest.approx(-out[0].mean, rel=1e-7, abs=1e-14)
    assert out[1].snr == pytest.approx(out[0].snr, rel=1e-7, abs=1e-24)
