"""Entropies, concurrence and entanglement of formation (all in nats)."""

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import DimensionError, InvalidStateError, NotHermitianError
from .matcore import (
    SIGMA_Y,
    Spectrum,
    as_matrix,
    dagger,
    eig_hermitian,
    kron,
    partial_trace,
    psd_sqrt,
)

LN2 = float(np.log(2.0))
SIGMA_YY = kron(SIGMA_Y, SIGMA_Y)


def binary_entropy(x: float) -> float:
    """s(x) = -x ln x - (1-x) ln(1-x), with 0 ln 0 = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy needs x in [0, 1], got {x}")
    return max(0.0, -sum(t * math.log(t) for t in (x, 1.0 - x) if t > 0.0))


def _checked_spectrum(rho) -> Spectrum:
    # validation shares the eigendecomposition with the caller
    m = as_matrix(rho)
    tr = m.trace().real
    if abs(tr - 1.0) > tol.TRACE:
        raise InvalidStateError(f"density matrix trace is {tr:.12g}")
    try:
        spectrum = eig_hermitian(m)
    except NotHermitianError as exc:
        raise InvalidStateError(f"density matrix {exc}") from exc
    if spectrum.eigenvalues[-1] < tol.NEGATIVE_EIGENVALUE:
        raise InvalidStateError(
            f"density matrix has eigenvalue {spectrum.eigenvalues[-1]:.3g}"
        )
    return spectrum


def entropy_of_spectrum(eigenvalues) -> float:
    # eigenvalues a rounding error above 1 would otherwise give -0 or -1e-16
    cut = tol.ENTROPY_CUTOFF
    return max(0.0, -sum(x * math.log(x) for x in np.asarray(eigenvalues, dtype=float).tolist() if x > cut))


def von_neumann_entropy(rho) -> float:
    """S(rho) = -Tr rho ln rho."""
    return entropy_of_spectrum(_checked_spectrum(rho).eigenvalues)


@dataclass(frozen=True)
class EntropyReport:
    s_total: float
    s_a: float
    s_b: float

    @property
    def violates_A(self) -> bool:
        """S(AB) < S(A): subsystem A behaves 'quantum'."""
        return self.s_total < self.s_a - tol.VIOLATION_DEADBAND

    @property
    def violates_B(self) -> bool:
        return self.s_total < self.s_b - tol.VIOLATION_DEADBAND


def entropy_report(rho) -> EntropyReport:
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"entropy_report needs a 4x4 state, got {rho.shape}")
    return EntropyReport(
        s_total=von_neumann_entropy(rho),
        s_a=von_neumann_entropy(partial_trace(rho, "B")),
        s_b=von_neumann_entropy(partial_trace(rho, "A")),
    )


def _concurrence_from_sqrt(sqrt_rho: np.ndarray) -> float:
    # sqrt(mu_i), mu_i the eigenvalues of rho * rho_tilde, are the singular
    # values of M = sqrt(rho) (sy x sy) conj(sqrt(rho)); M M^H = sqrt(rho) rho_tilde sqrt(rho).
    # They are read off the Hermitian dilation [[0, M], [M^H, 0]], whose
    # spectrum is {+-sigma_i}: this keeps absolute accuracy on small sigma_i,
    # which eigenvalues of M M^H followed by a square root would not.
    m = sqrt_rho @ SIGMA_YY @ sqrt_rho.conj()
    dilation = np.zeros((8, 8), dtype=complex)
    dilation[:4, 4:] = m
    dilation[4:, :4] = dagger(m)
    sigma = np.clip(eig_hermitian(dilation).eigenvalues[:4], 0.0, None)
    return float(min(1.0, max(0.0, sigma[0] - sigma[1] - sigma[2] - sigma[3])))


def concurrence(rho) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4) of a two-qubit state."""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"concurrence needs a 4x4 state, got {rho.shape}")
    spectrum = _checked_spectrum(rho)
    return _concurrence_from_sqrt(psd_sqrt(rho, spectrum))


def eof_from_concurrence(c: float) -> float:
    """E = s((1 + sqrt(1 - C^2)) / 2) in nats."""
    c = min(1.0, max(0.0, c))
    return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - c * c)))


@dataclass(frozen=True)
class EntanglementValue:
    concurrence: float
    eof_nats: float

    @property
    def eof_rescaled(self) -> float:
        """E / ln 2, in [0, 1]."""
        return self.eof_nats / LN2


def entanglement_of_formation(rho) -> EntanglementValue:
    c = concurrence(rho)
    return EntanglementValue(c, eof_from_concurrence(c))


def entropy_increase_bound(rho_in, m: int = 2, untouched: str = "A") -> float:
    """Upper bound on S(out) - S(in) when a channel acts on the subsystem
    of dimension ``m`` and leaves subsystem ``untouched`` alone:

        S(rho_untouched) - S(rho) + ln m.
    """
    traced = "B" if untouched == "A" else "A"
    if untouched not in ("A", "B"):
        raise ValueError(f"untouched must be 'A' or 'B', got {untouched!r}")
    s_keep = von_neumann_entropy(partial_trace(rho_in, traced))
    return s_keep - von_neumann_entropy(rho_in) + float(np.log(m))


@dataclass(frozen=True)
class Observables:
    """Everything recorded per time step."""

    eof_nats: float
    s_total: float
    s_a: float
    s_b: float
    concurrence: float

    @property
    def eof_rescaled(self) -> float:
        return self.eof_nats / LN2


def observe(rho) -> Observables:
    """Entropies and entanglement of a 4x4 state, sharing one spectrum."""
    spectrum = _checked_spectrum(rho)
    c = _concurrence_from_sqrt(psd_sqrt(rho, spectrum))
    return Observables(
        eof_nats=eof_from_concurrence(c),
        s_total=entropy_of_spectrum(spectrum.eigenvalues),
        s_a=von_neumann_entropy(partial_trace(rho, "B")),
        s_b=von_neumann_entropy(partial_trace(rho, "A")),
        concurrence=c,
    )
