"""Kraus-form channels on one qubit and their local action on a pair.

Random external fields (mixtures of unitary conjugations) and the amplitude
damping channel are built here. A :class:`LocalChannel` lifts a one-qubit
channel to act on subsystem A or B of a two-qubit state.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import tolerances as tol
from .errors import DimensionError, InvalidChannelError
from .matcore import I2, PAULIS, SIDES, as_matrix, dagger, kron, unitarity_residual


def _kraus_residual(ops, adjoint_first: bool) -> float:
    d = ops[0].shape[0]
    total = np.zeros((d, d), dtype=complex)
    for v in ops:
        total += dagger(v) @ v if adjoint_first else v @ dagger(v)
    return float(np.max(np.abs(total - np.eye(d))))


@dataclass(frozen=True)
class KrausChannel:
    """Trace-preserving map rho -> sum_i V_i rho V_i^H."""

    operators: tuple
    label: str = ""

    def __post_init__(self):
        ops = tuple(as_matrix(v) for v in self.operators)
        if not ops:
            raise InvalidChannelError("a channel needs at least one Kraus operator")
        if len({v.shape for v in ops}) != 1:
            raise DimensionError("Kraus operators differ in dimension")
        object.__setattr__(self, "operators", ops)
        res = _kraus_residual(ops, adjoint_first=True)
        if res >= tol.KRAUS:
            raise InvalidChannelError(
                f"Kraus set {self.label!r} is not trace preserving (residual {res:.3g})"
            )

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __call__(self, rho):
        return apply_kraus(self.operators, rho)


def _ops(c):
    if isinstance(c, KrausChannel):
        return c.operators
    return tuple(as_matrix(v) for v in c)


def is_trace_preserving(c) -> tuple[bool, float]:
    """Check sum V^H V = I. Accepts a channel or a bare operator list.

    Returns the verdict and the max-entry residual.
    """
    res = _kraus_residual(_ops(c), adjoint_first=True)
    return res < tol.KRAUS, res


def is_bistochastic(c) -> tuple[bool, float]:
    """Check sum V V^H = I (the channel is unital)."""
    res = _kraus_residual(_ops(c), adjoint_first=False)
    return res < tol.KRAUS, res


def apply_kraus(operators, rho) -> np.ndarray:
    rho = as_matrix(rho)
    out = np.zeros_like(rho)
    for v in operators:
        if v.shape[1] != rho.shape[0]:
            raise DimensionError(
                f"Kraus operator {v.shape} does not fit state {rho.shape}"
            )
        out += v @ rho @ dagger(v)
    return out


def make_random_external_field(
    probs: Sequence[float], unitaries: Sequence, label: str = "random external field"
) -> KrausChannel:
    """Mixture of unitary conjugations, V_i = sqrt(p_i) A_i.

    Terms with zero probability are dropped.
    """
    probs = np.asarray(probs, dtype=float)
    if len(probs) != len(unitaries):
        raise InvalidChannelError("need one unitary per probability")
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > tol.PROBABILITY_SUM:
        raise InvalidChannelError(f"not a probability vector: {probs.tolist()}")
    ops = []
    for p, u in zip(probs, unitaries):
        u = as_matrix(u)
        if unitarity_residual(u) > tol.UNITARY:
            raise InvalidChannelError("random external field generator is not unitary")
        if p > 0:
            ops.append(np.sqrt(p) * u)
    return KrausChannel(tuple(ops), label)


PAULI_GENERATORS = (I2,) + PAULIS


def field_probabilities(kind: int, epsilon: float) -> list[float]:
    """Weights on (I, sigma_x, sigma_y, sigma_z) for the three Pauli fields.

    kind 1 dephases (sigma_z only), kind 2 splits between sigma_y and
    sigma_z, kind 3 is the depolarizing channel.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise InvalidChannelError(f"epsilon must lie in [0, 1], got {epsilon}")
    e = epsilon
    table = {
        1: [1 - e, 0.0, 0.0, e],
        2: [1 - e, 0.0, e / 2, e / 2],
        3: [1 - e, e / 3, e / 3, e / 3],
    }
    if kind not in table:
        raise InvalidChannelError(f"unknown field preset {kind}")
    return table[kind]


def pauli_field(kind: int, epsilon: float) -> KrausChannel:
    return make_random_external_field(
        field_probabilities(kind, epsilon), PAULI_GENERATORS, label=f"ref{kind}({epsilon:g})"
    )


def depolarizing(epsilon: float) -> KrausChannel:
    return pauli_field(3, epsilon)


def make_amplitude_damping(p: float) -> KrausChannel:
    """Decay toward |0> with retention probability ``p`` for |1>.

    M1 = diag(1, sqrt p), M2 = sqrt(1-p) |0><1|, applied as
    M1 rho M1^H + M2 rho M2^H.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidChannelError(f"damping parameter must lie in [0, 1], got {p}")
    m1 = np.array([[1.0, 0.0], [0.0, np.sqrt(p)]], dtype=complex)
    m2 = np.array([[0.0, np.sqrt(1.0 - p)], [0.0, 0.0]], dtype=complex)
    return KrausChannel((m1, m2), label=f"damping({p:g})")


def identity_channel(dim: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(dim, dtype=complex),), label="identity")


def compose(first: KrausChannel, second: KrausChannel) -> KrausChannel:
    """Channel applying ``first`` then ``second``; Kraus set {B_j A_i}."""
    ops = tuple(b @ a for a in first.operators for b in second.operators)
    return KrausChannel(ops, label=f"{second.label}*{first.label}")


@dataclass(frozen=True)
class LocalChannel:
    """A one-qubit channel acting on subsystem ``side`` of a qubit pair."""

    channel: KrausChannel
    side: str = "B"

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValueError(f"side must be 'A' or 'B', got {self.side!r}")
        if self.channel.dim != 2:
            raise DimensionError("local channels act on a single qubit")

    @cached_property
    def lifted(self) -> tuple:
        if self.side == "B":
            return tuple(kron(I2, v) for v in self.channel.operators)
        return tuple(kron(v, I2) for v in self.channel.operators)

    def __call__(self, rho):
        return apply(self, rho)


def apply(lc: LocalChannel, rho) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"local channels act on 4x4 states, got {rho.shape}")
    return apply_kraus(lc.lifted, rho)
