"""Dense complex linear algebra for 2x2 and 4x4 operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Two-qubit
operators use subsystem A as the left tensor factor and the computational
basis order |00>, |01>, |10>, |11>.

The Hermitian eigensolver is a cyclic complex Jacobi iteration compiled with
numba; every matrix function here (unitary exponential, PSD square root) is
built on it.
"""

from typing import NamedTuple

import numba
import numpy as np

from . import tolerances as tol
from .errors import ConvergenceError, DimensionError, NotHermitianError

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# permutation |ab> -> |ba>
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

SIDES = ("A", "B")


class Spectrum(NamedTuple):
    """Eigenvalues sorted descending, eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def approx_equal(a, b, atol: float = 1e-10) -> bool:
    """Max absolute entrywise difference below ``atol``."""
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.max(np.abs(a - b), initial=0.0) < atol)


def hermiticity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - dagger(m)), initial=0.0))


def is_hermitian(m, atol: float | None = None) -> bool:
    atol = tol.HERMITIAN if atol is None else atol
    return hermiticity_residual(as_matrix(m)) <= atol


def unitarity_residual(u: np.ndarray) -> float:
    return float(np.max(np.abs(u @ dagger(u) - np.eye(u.shape[0])), initial=0.0))


def kron(a, b) -> np.ndarray:
    """Tensor product; ``a`` acts on the left factor (subsystem A)."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, side: str) -> np.ndarray:
    """Trace out subsystem ``side`` of a 4x4 operator.

    ``side`` names the subsystem that is removed: ``partial_trace(rho, "B")``
    returns the reduced operator of A.
    """
    m = as_matrix(m)
    if m.shape != (4, 4):
        raise DimensionError(f"partial_trace needs a 4x4 operator, got {m.shape}")
    t = m.reshape(2, 2, 2, 2)  # indices (a, b, a', b')
    if side == "B":
        return np.einsum("ijkj->ik", t)
    if side == "A":
        return np.einsum("jijk->ik", t)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


@numba.njit(cache=True, nogil=True)
def _jacobi(a, threshold, max_sweeps):
    # Cyclic Jacobi on a Hermitian matrix. Works in place on ``a``;
    # returns (diagonal, accumulated rotations, sweeps used).
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    negligible = 1e-16 * threshold
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real ** 2 + a[i, j].imag ** 2
        if np.sqrt(off) < threshold:
            return np.array([a[i, i].real for i in range(n)]), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= negligible:
                    # far below the convergence threshold; rotating by the
                    # phase of a subnormal entry would not even be unitary
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                phase = apq / r
                phase = phase / abs(phase)
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # R = diag(1, conj(phase)) @ [[c, s], [-s, c]] on (p, q)
                r00 = c + 0j
                r01 = s + 0j
                r10 = -s * np.conj(phase)
                r11 = c * np.conj(phase)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * r00 + akq * r10
                    a[k, q] = akp * r01 + akq * r11
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(r00) * apk + np.conj(r10) * aqk
                    a[q, k] = np.conj(r01) * apk + np.conj(r11) * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = vkp * r00 + vkq * r10
                    v[k, q] = vkp * r01 + vkq * r11
    return np.array([a[i, i].real for i in range(n)]), v, -1


@numba.njit(cache=True, nogil=True)
def _eigh_kernel(m, herm_tol, offdiag_tol, max_sweeps):
    # status: 0 ok, 1 not Hermitian, 2 no convergence
    n = m.shape[0]
    residual = 0.0
    frob = 0.0
    work = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            d = abs(m[i, j] - np.conj(m[j, i]))
            if d > residual:
                residual = d
            work[i, j] = 0.5 * (m[i, j] + np.conj(m[j, i]))
            frob += work[i, j].real ** 2 + work[i, j].imag ** 2
    if residual > herm_tol:
        return np.zeros(n), work, 1, residual
    threshold = offdiag_tol * max(1.0, np.sqrt(frob))
    w, v, sweeps = _jacobi(work, threshold, max_sweeps)
    if sweeps < 0:
        return w, v, 2, residual
    order = np.argsort(-w, kind="mergesort")
    return w[order], v[:, order], 0, residual


def eig_hermitian(m) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Eigenvalues come back sorted in descending order, eigenvectors as the
    matching orthonormal columns.

    Raises
    ------
    NotHermitianError
        If ``m`` deviates from its adjoint by more than ``tolerances.HERMITIAN``.
    ConvergenceError
        If the off-diagonal norm does not drop below
        ``tolerances.JACOBI_OFFDIAG * max(1, ||m||_F)`` within
        ``tolerances.JACOBI_MAX_SWEEPS`` sweeps.
    """
    m = np.ascontiguousarray(as_matrix(m))
    w, v, status, residual = _eigh_kernel(
        m, tol.HERMITIAN, tol.JACOBI_OFFDIAG, tol.JACOBI_MAX_SWEEPS
    )
    if status == 1:
        raise NotHermitianError(f"matrix is not Hermitian (residual {residual:.3g})")
    if status == 2:
        raise ConvergenceError(
            f"Jacobi did not converge in {tol.JACOBI_MAX_SWEEPS} sweeps"
        )
    return Spectrum(w, v)


def _reconstruct(vecs: np.ndarray, values: np.ndarray) -> np.ndarray:
    return (vecs * values) @ dagger(vecs)


def unitary_exp(h, alpha: float, sign: int = 1) -> np.ndarray:
    """exp(i * sign * alpha * h) for Hermitian ``h``.

    ``sign=-1`` gives the time-reversed propagator (the adjoint).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    sp = eig_hermitian(h)
    phases = np.exp(1j * sign * alpha * sp.eigenvalues)
    return _reconstruct(sp.eigenvectors, phases)


def psd_sqrt(m, spectrum: Spectrum | None = None) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in ``[tolerances.NEGATIVE_EIGENVALUE, 0)`` are treated as
    rounding noise and clamped to zero. A precomputed ``spectrum`` of ``m``
    may be passed to skip the eigendecomposition.
    """
    sp = eig_hermitian(m) if spectrum is None else spectrum
    lam = sp.eigenvalues
    if lam[-1] < tol.NEGATIVE_EIGENVALUE:
        raise ValueError(
            f"matrix is not positive semidefinite (eigenvalue {lam[-1]:.3g})"
        )
    return _reconstruct(sp.eigenvectors, np.sqrt(np.clip(lam, 0.0, None)))
