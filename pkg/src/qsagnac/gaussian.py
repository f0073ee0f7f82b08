"""Multimode Gaussian states and Bogoliubov transforms.

Conventions
-----------
Quadratures are ``X = a + a^dagger`` and ``Y = i(a^dagger - a)``, so the vacuum
has unit variance in every quadrature. Real phase-space vectors are ordered
``(X_1, ..., X_N, Y_1, ..., Y_N)`` and the covariance matrix is the
symmetrised second moment ``V_jk = <{dq_j, dq_k}>/2``.

A Bogoliubov transform maps ``a -> A a + B a^dagger``. The complex pair
``(A, B)`` is the source of truth; the real symplectic matrix is derived from
it on demand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._backend import kernels

#: construction-time tolerance for the Bogoliubov identities
CONSTRUCT_TOL = 1e-10
#: tolerance after composition / propagation
PROPAGATE_TOL = 1e-9


class InvariantError(ValueError):
    """A matrix or state violates one of its defining identities."""


class RegisterError(ValueError):
    """Malformed mode label or register."""


class RegisterMismatchError(ValueError):
    """Objects defined over different mode registers were combined."""


class Path(str, Enum):
    A = "a"
    B = "b"


class Band(str, Enum):
    SIGNAL = "signal"
    IDLER = "idler"
    DEGENERATE = "degenerate"


_BAND_SUFFIX = {Band.SIGNAL: "s", Band.IDLER: "i"}


@dataclass(frozen=True)
class ModeLabel:
    """One optical mode: interferometer path, frequency band, and a free tag."""

    path: Path
    band: Band = Band.DEGENERATE
    stage: str = ""

    def __post_init__(self):
        object.__setattr__(self, "path", Path(self.path))
        object.__setattr__(self, "band", Band(self.band))

    @property
    def key(self):
        return (self.path, self.band)

    @property
    def name(self):
        """Short name used by the circuit DSL: ``a``, ``b``, ``a.s``, ``b.i``..."""
        if self.band is Band.DEGENERATE:
            return self.path.value
        return f"{self.path.value}.{_BAND_SUFFIX[self.band]}"

    @classmethod
    def parse(cls, text):
        text = text.strip()
        path, _, band = text.partition(".")
        if path not in ("a", "b"):
            raise RegisterError(f"unknown path in mode name {text!r}")
        if not band:
            return cls(Path(path))
        bands = {"s": Band.SIGNAL, "i": Band.IDLER}
        if band not in bands:
            raise RegisterError(f"unknown band in mode name {text!r}")
        return cls(Path(path), bands[band])

    def __str__(self):
        return self.name


def _as_label(mode):
    if isinstance(mode, ModeLabel):
        return mode
    return ModeLabel.parse(mode)


@dataclass(frozen=True)
class ModeRegister:
    """Fixed, ordered collection of 2 or 4 modes."""

    modes: tuple

    def __post_init__(self):
        modes = tuple(_as_label(m) for m in self.modes)
        object.__setattr__(self, "modes", modes)
        if len(modes) not in (2, 4):
            raise RegisterError(f"register must hold 2 or 4 modes, got {len(modes)}")
        keys = [m.key for m in modes]
        if len(set(keys)) != len(keys):
            raise RegisterError("duplicate (path, band) pair in register")
        bands = {m.band for m in modes}
        if Band.DEGENERATE in bands and len(bands) > 1:
            raise RegisterError("degenerate band cannot be mixed with signal/idler bands")

    @classmethod
    def of(cls, *names):
        return cls(tuple(names))

    @property
    def size(self):
        return len(self.modes)

    @property
    def degenerate(self):
        return self.modes[0].band is Band.DEGENERATE

    def index(self, mode):
        """Position of ``mode`` (a label or a DSL name) in the register."""
        key = _as_label(mode).key
        for i, m in enumerate(self.modes):
            if m.key == key:
                return i
        raise KeyError(f"mode {_as_label(mode).name!r} not in register "
                       f"[{' '.join(m.name for m in self.modes)}]")

    def __contains__(self, mode):
        try:
            self.index(mode)
        except (KeyError, ValueError):
            return False
        return True

    def __iter__(self):
        return iter(self.modes)

    def __len__(self):
        return len(self.modes)

    def __str__(self):
        return " ".join(m.name for m in self.modes)


def symplectic_form(n):
    """Standard form ``[[0, I], [-I, 0]]`` for ``n`` modes in xxyy ordering."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _frozen(arr, dtype):
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class BogoliubovTransform:
    """Linear canonical map ``a_out = A a + B a^dagger`` on a mode register.

    The two identities ``A A^dag - B B^dag = I`` and ``A B^T = B A^T`` are
    checked at construction to ``tol``; pass ``tol=None`` to skip the check.
    """

    register: ModeRegister
    A: np.ndarray
    B: np.ndarray
    tol: float | None = field(default=CONSTRUCT_TOL, repr=False)

    def __post_init__(self):
        n = self.register.size
        a = _frozen(self.A, complex)
        b = _frozen(self.B, complex)
        if a.shape != (n, n) or b.shape != (n, n):
            raise RegisterMismatchError(
                f"matrices of shape {a.shape}/{b.shape} do not fit a {n}-mode register")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        if self.tol is not None:
            self.check(self.tol)

    def residuals(self):
        """Max-norm residuals of the commutator and symmetry identities."""
        return kernels.bogoliubov_residuals(self.A, self.B)

    def check(self, tol=CONSTRUCT_TOL):
        r1, r2 = self.residuals()
        if not r1 < tol:
            raise InvariantError(f"A A^dag - B B^dag = I violated (residual {r1:.3e} >= {tol:.1e})")
        if not r2 < tol:
            raise InvariantError(f"A B^T = B A^T violated (residual {r2:.3e} >= {tol:.1e})")

    @classmethod
    def identity(cls, register):
        n = register.size
        return cls(register, np.eye(n), np.zeros((n, n)))

    def allclose(self, other, atol=1e-10):
        return (self.register == other.register
                and np.allclose(self.A, other.A, rtol=0, atol=atol)
                and np.allclose(self.B, other.B, rtol=0, atol=atol))


def to_symplectic(t):
    """Real 2N x 2N quadrature matrix of a Bogoliubov transform.

    Mean quadratures transform as ``q -> S q`` and covariances as
    ``V -> S V S^T``.
    """
    t.check(PROPAGATE_TOL)
    return kernels.to_symplectic(t.A, t.B)


def compose(first, second):
    """Transform equivalent to applying ``first`` and then ``second``."""
    if first.register != second.register:
        raise RegisterMismatchError("cannot compose transforms over different registers")
    a, b = kernels.compose(first.A, first.B, second.A, second.B)
    return BogoliubovTransform(first.register, a, b, tol=PROPAGATE_TOL)


def compose_all(register, transforms):
    """Compose a sequence of transforms in order (first element acts first)."""
    transforms = list(transforms)
    for t in transforms:
        if t.register != register:
            raise RegisterMismatchError("transform register differs from circuit register")
    if not transforms:
        return BogoliubovTransform.identity(register)
    a_stack = np.stack([t.A for t in transforms])
    b_stack = np.stack([t.B for t in transforms])
    a, b = kernels.compose_chain(a_stack, b_stack)
    return BogoliubovTransform(register, a, b, tol=PROPAGATE_TOL)


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Gaussian state: complex mean amplitudes plus real quadrature covariance."""

    register: ModeRegister
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        n = self.register.size
        mean = _frozen(self.mean, complex)
        cov = _frozen(self.cov, float)
        if mean.shape != (n,) or cov.shape != (2 * n, 2 * n):
            raise RegisterMismatchError(
                f"mean {mean.shape} / cov {cov.shape} do not fit a {n}-mode register")
        if not np.allclose(cov, cov.T, rtol=0, atol=PROPAGATE_TOL * max(1.0, np.abs(cov).max())):
            raise InvariantError("covariance matrix is not symmetric")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def quadrature_mean(self):
        """Mean phase-space vector ``(<X_1>..<X_N>, <Y_1>..<Y_N>)``."""
        return np.concatenate([2.0 * self.mean.real, 2.0 * self.mean.imag])

    def min_uncertainty_eigenvalue(self):
        """Smallest eigenvalue of ``V + i Omega``; nonnegative for physical states."""
        herm = self.cov + 1j * symplectic_form(self.register.size)
        return float(np.linalg.eigvalsh(herm).min())

    def check_physical(self, tol=PROPAGATE_TOL):
        lam = self.min_uncertainty_eigenvalue()
        if lam < -tol:
            raise InvariantError(f"uncertainty relation violated (min eigenvalue {lam:.3e})")

    def purity_det(self):
        """``det V``; equals 1 exactly for pure states."""
        return float(np.linalg.det(self.cov))


def vacuum(register):
    n = register.size
    return GaussianState(register, np.zeros(n), np.eye(2 * n))


def coherent_state(register, amplitudes):
    """Coherent state with the given complex amplitude per mode.

    ``amplitudes`` is either a sequence ordered like the register or a mapping
    from mode (label or DSL name) to amplitude; unlisted modes are vacuum.
    """
    n = register.size
    if isinstance(amplitudes, dict):
        mean = np.zeros(n, dtype=complex)
        for mode, value in amplitudes.items():
            mean[register.index(mode)] = value
    else:
        mean = np.asarray(amplitudes, dtype=complex)
        if mean.shape != (n,):
            raise RegisterMismatchError(f"need {n} amplitudes, got {mean.shape}")
    return GaussianState(register, mean, np.eye(2 * n))


def apply(t, state):
    """Propagate a Gaussian state through a Bogoliubov transform."""
    if t.register != state.register:
        raise RegisterMismatchError("transform and state live on different registers")
    s = to_symplectic(t)
    mean = kernels.transform_mean(t.A, t.B, state.mean)
    cov = kernels.congruence(s, state.cov)
    return GaussianState(state.register, mean, cov)
