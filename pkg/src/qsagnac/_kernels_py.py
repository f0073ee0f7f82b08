"""Pure numpy implementation of the linear-algebra kernels.

Used whenever the compiled ``_kernels_c`` extension is unavailable or when
``QSAGNAC_PURE_PYTHON`` is set. Both modules expose exactly the same
functions with the same argument conventions.
"""
import numpy as np


def compose(a1, b1, a2, b2):
    """Apply (a1, b1) first, then (a2, b2)."""
    return a2 @ a1 + b2 @ b1.conj(), a2 @ b1 + b2 @ a1.conj()


def compose_chain(a_stack, b_stack):
    """Compose a stack of transforms, element 0 acting first."""
    n = a_stack.shape[1]
    a = np.eye(n, dtype=complex)
    b = np.zeros((n, n), dtype=complex)
    for k in range(a_stack.shape[0]):
        a, b = compose(a, b, a_stack[k], b_stack[k])
    return a, b


def to_symplectic(a, b):
    # ordering (x_1..x_N, y_1..y_N) with a = (x + i y) / 2
    p = a + b
    m = a - b
    return np.block([[p.real, -m.imag], [p.imag, m.real]])


def congruence(s, v):
    """``S V S^T`` for symmetric ``V``."""
    return s @ v @ s.T


def transform_mean(a, b, alpha):
    return a @ alpha + b @ alpha.conj()


def bogoliubov_residuals(a, b):
    n = a.shape[0]
    r1 = a @ a.conj().T - b @ b.conj().T - np.eye(n)
    r2 = a @ b.T - b @ a.T
    return float(np.max(np.abs(r1))), float(np.max(np.abs(r2)))
