"""Two-qubit states: construction, validation, subsystem swap, Bloch form.

States are numpy arrays: pure states are length-4 complex vectors, density
matrices are 4x4 (or 2x2 for marginals). Validation is an explicit step so
long trajectories can re-check at intervals instead of at every step.
"""

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import DimensionError, InvalidStateError
from .matcore import (
    I2,
    PAULIS,
    SWAP,
    as_matrix,
    eig_hermitian,
    hermiticity_residual,
    kron,
)


def check_pure(psi) -> np.ndarray:
    """Return ``psi`` as a complex vector, raising if it is not normalized."""
    v = np.asarray(psi, dtype=complex)
    if v.ndim != 1:
        raise DimensionError(f"pure state must be a vector, got shape {v.shape}")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol.NORM:
        raise InvalidStateError(f"state vector has norm {norm:.12g}")
    return v


def check_density_matrix(rho) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return the array.

    Raises
    ------
    InvalidStateError
        Naming the first failed condition.
    """
    m = as_matrix(rho)
    res = hermiticity_residual(m)
    if res > tol.HERMITIAN:
        raise InvalidStateError(f"density matrix not Hermitian (residual {res:.3g})")
    tr = np.trace(m).real
    if abs(tr - 1.0) > tol.TRACE:
        raise InvalidStateError(f"density matrix trace is {tr:.12g}")
    lam_min = eig_hermitian(m).eigenvalues[-1]
    if lam_min < tol.NEGATIVE_EIGENVALUE:
        raise InvalidStateError(f"density matrix has eigenvalue {lam_min:.3g}")
    return m


def is_density_matrix(rho) -> bool:
    try:
        check_density_matrix(rho)
    except (InvalidStateError, DimensionError):
        return False
    return True


def pure_to_density(psi) -> np.ndarray:
    v = check_pure(psi)
    return np.outer(v, v.conj())


def basis_state(index: int, dim: int = 4) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


BELL_STATES = {
    "phi+": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
    "psi+": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
}


def bell_state(name: str = "phi+") -> np.ndarray:
    """Density matrix of a Bell state (|00>+|11>)/sqrt2 by default."""
    return pure_to_density(BELL_STATES[name])


def maximally_mixed(dim: int = 4) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def _check_open_unit(name, value, strict):
    ok = 0.0 < value < 1.0 if strict else 0.0 <= value <= 1.0
    if not ok:
        interval = "(0, 1)" if strict else "[0, 1]"
        raise ValueError(f"{name} must lie in {interval}, got {value}")


def make_rho1(q: float, a_sq: float, strict: bool = True) -> np.ndarray:
    """Mixture q|Psi1><Psi1| + (1-q)|Psi2><Psi2| with
    Psi1 = a|00> + b|11> and Psi2 = a|10> + b|01>, a = sqrt(a_sq), b = sqrt(1-a_sq).

    ``strict=False`` admits the closed interval, for degenerate-limit checks.
    """
    _check_open_unit("q", q, strict)
    _check_open_unit("a_sq", a_sq, strict)
    a = np.sqrt(a_sq)
    b = np.sqrt(1.0 - a_sq)
    ab = a * b
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = q * a_sq
    rho[3, 3] = q * (1.0 - a_sq)
    rho[0, 3] = rho[3, 0] = q * ab
    rho[1, 1] = (1.0 - q) * (1.0 - a_sq)
    rho[2, 2] = (1.0 - q) * a_sq
    rho[1, 2] = rho[2, 1] = (1.0 - q) * ab
    return rho


def swap_sides(rho) -> np.ndarray:
    """Exchange the two subsystems (conjugation by SWAP)."""
    m = as_matrix(rho)
    if m.shape != (4, 4):
        raise DimensionError(f"swap_sides needs a 4x4 matrix, got {m.shape}")
    return SWAP @ m @ SWAP


def make_rho2(q: float, a_sq: float, strict: bool = True) -> np.ndarray:
    """``make_rho1`` with the subsystems exchanged."""
    return swap_sides(make_rho1(q, a_sq, strict))


@dataclass(frozen=True)
class BlochDecomposition:
    """rho = 1/4 (I + a.sigma x I + I x b.sigma + sum T_ij sigma_i x sigma_j)."""

    a: np.ndarray
    b: np.ndarray
    T: np.ndarray

    def reassemble(self) -> np.ndarray:
        rho = np.eye(4, dtype=complex)
        for i, s in enumerate(PAULIS):
            rho += self.a[i] * kron(s, I2) + self.b[i] * kron(I2, s)
            for j, t in enumerate(PAULIS):
                rho += self.T[i, j] * kron(s, t)
        return rho / 4.0


def _real_expectation(rho, op):
    z = np.trace(rho @ op)
    if abs(z.imag) > tol.IMAGINARY:
        raise InvalidStateError(f"Pauli expectation has imaginary part {z.imag:.3g}")
    return z.real


def bloch_decompose(rho) -> BlochDecomposition:
    m = as_matrix(rho)
    if m.shape != (4, 4):
        raise DimensionError(f"bloch_decompose needs a 4x4 matrix, got {m.shape}")
    a = np.array([_real_expectation(m, kron(s, I2)) for s in PAULIS])
    b = np.array([_real_expectation(m, kron(I2, s)) for s in PAULIS])
    T = np.array(
        [[_real_expectation(m, kron(s, t)) for t in PAULIS] for s in PAULIS]
    )
    return BlochDecomposition(a, b, T)


def format_matrix(m) -> str:
    """One line per row, entries ``re+imj`` with 12 significant digits."""

    def entry(z):
        re = z.real + 0.0
        im = z.imag + 0.0
        return f"{re:.12g}{im:+.12g}j"

    return "\n".join(" ".join(entry(z) for z in row) for row in as_matrix(m))
