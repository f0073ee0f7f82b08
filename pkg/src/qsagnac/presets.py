"""Built-in circuit documents for the five interferometer configurations."""
from .dsl import parse_circuit

_SCENARIO = "scenario omega=7.292e-05 area_lp1c=0.0 area_lp2q=1.0 lambda_s=1.55e-06 G=1.25"

CLASSICAL_SAGNAC = f"""\
# Shot-noise-limited Sagnac interferometer
register a b
{_SCENARIO}
inject scheme=degenerate_single alpha=1000.0
bs a b
phase a theta=loop_half
phase b theta=-loop_half
bs b a
measure mode=b angle=0.0 combine=single
"""

NAIVE_SUI = f"""\
# Sagnac loop split by one parametric amplifier; blind to rotation
register a.s b.i
{_SCENARIO}
inject scheme=nondegenerate_single alpha=1000.0
npa a.s b.i phi=0.0
phase a.s theta=loop_half
phase b.i theta=-loop_half
npa a.s b.i phi=pi
measure mode=b.i angle=0.0 combine=single
"""

NESTED_DEGENERATE = f"""\
# Sagnac interferometer with degenerate SU(1,1) interferometers nested inside
register a b
{_SCENARIO}
inject scheme=degenerate_single alpha=1000.0
bs a b
phase a theta=delta_a1
phase b theta=delta_b1
dpa a phi=phi1
dpa b phi=phi1p
phase a theta=delta1
phase b theta=delta2
dpa a phi=phi2
dpa b phi=phi2p
phase a theta=delta_a4
phase b theta=delta_b4
bs b a
measure mode=b angle=0.0 combine=single
"""


def _nondegenerate(scheme, measure, title):
    return f"""\
# {title}
register a.s a.i b.s b.i
{_SCENARIO}
inject scheme={scheme} alpha=1000.0
bs a.s b.s
bs a.i b.i
phase a.s theta=delta_a1_s
phase b.s theta=delta_b1_s
phase a.i theta=delta_a1_i
phase b.i theta=delta_b1_i
npa a.s a.i phi=phi1
npa b.s b.i phi=phi1p
phase a.s theta=delta1_s
phase b.s theta=delta2_s
phase a.i theta=delta1_i
phase b.i theta=delta2_i
npa a.s a.i phi=phi2
npa b.s b.i phi=phi2p
phase a.s theta=delta_a4_s
phase b.s theta=delta_b4_s
phase a.i theta=delta_a4_i
phase b.i theta=delta_b4_i
bs b.s a.s
bs b.i a.i
{measure}
"""


NESTED_NONDEGENERATE_SINGLE = _nondegenerate(
    "nondegenerate_single", "measure mode=b.s angle=0.0 combine=single",
    "Nested non-degenerate amplifiers, coherent signal and vacuum idler")

NESTED_NONDEGENERATE_DUAL = _nondegenerate(
    "nondegenerate_dual", "measure mode=b.s,b.i angle=0.0 combine=sum_of_two",
    "Nested non-degenerate amplifiers, equal coherent signal and idler")

PRESETS = {
    "classical-sagnac": CLASSICAL_SAGNAC,
    "naive-sui": NAIVE_SUI,
    "nested-degenerate": NESTED_DEGENERATE,
    "nested-nondegenerate-single": NESTED_NONDEGENERATE_SINGLE,
    "nested-nondegenerate-dual": NESTED_NONDEGENERATE_DUAL,
}


def builtin_presets():
    """Parsed documents for every preset, keyed by name."""
    return {name: parse_circuit(text) for name, text in PRESETS.items()}


def preset(name):
    try:
        return parse_circuit(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
