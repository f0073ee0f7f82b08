import math

import numpy as np
import pytest
from hypothesis import strategies as st

from qsagnac import _kernels_py
from qsagnac.components import GainPair, beam_splitter, dpa, npa, phase_shift
from qsagnac.gaussian import ModeRegister

try:
    from qsagnac import _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

KERNELS = [pytest.param(_kernels_py, id="python"),
           pytest.param(_kernels_c, id="cython",
                        marks=pytest.mark.skipif(_kernels_c is None, reason="extension not built"))]

REGISTERS = {
    "deg": ModeRegister.of("a", "b"),
    "nondeg": ModeRegister.of("a.s", "a.i", "b.s", "b.i"),
}

gains = st.floats(1.0, 4.0).map(GainPair.from_G)
angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)


@st.composite
def random_elements(draw, register):
    """One random component transform on ``register``."""
    names = [m.name for m in register]
    kind = draw(st.sampled_from(["bs", "phase", "amp"]))
    if kind == "bs":
        i, j = draw(st.permutations(names))[:2]
        return beam_splitter(register, i, j)
    if kind == "phase":
        return phase_shift(register, draw(st.sampled_from(names)), draw(angles))
    if register.degenerate:
        return dpa(register, draw(st.sampled_from(names)), draw(gains), draw(angles))
    path = draw(st.sampled_from(["a", "b"]))
    return npa(register, f"{path}.s", f"{path}.i", draw(gains), draw(angles))


def random_circuit_transforms(rng, register, length, gain_max=3.0):
    """Random component sequence driven by a numpy Generator (no hypothesis).

    Amplifier gains are uniform in ``[1, gain_max]``.
    """
    names = [m.name for m in register]
    out = []
    for _ in range(length):
        kind = rng.integers(3)
        if kind == 0:
            i, j = rng.choice(len(names), 2, replace=False)
            out.append(beam_splitter(register, names[i], names[j]))
        elif kind == 1:
            out.append(phase_shift(register, names[rng.integers(len(names))], rng.uniform(-7, 7)))
        elif register.degenerate:
            out.append(dpa(register, names[rng.integers(2)], GainPair.from_G(rng.uniform(1, gain_max)),
                           rng.uniform(-7, 7)))
        else:
            path = "ab"[rng.integers(2)]
            out.append(npa(register, f"{path}.s", f"{path}.i", GainPair.from_G(rng.uniform(1, gain_max)),
                           rng.uniform(-7, 7)))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
