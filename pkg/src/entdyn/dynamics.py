"""Iterated channel-then-unitary dynamics of a qubit pair.

One time step maps rho_n to rho_{n+1} = U (Lambda x I or I x Lambda)(rho_n) U^H:
the local channel acts first, then the global unitary U = exp(i alpha H).
Observables are recorded on rho_n, with the untouched initial state as step 0.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Iterator, NamedTuple

import numpy as np

from . import tolerances as tol
from .channels import LocalChannel, make_amplitude_damping, pauli_field
from .errors import ConfigError, EntdynError, NumericalError
from .matcore import (
    I4,
    SIDES,
    SIGMA_X,
    SIGMA_Y,
    as_matrix,
    dagger,
    is_hermitian,
    kron,
    unitarity_residual,
    unitary_exp,
)
from .measures import observe
from .sampling import (
    RandomSource,
    sample_max_entangled,
    sample_pure,
    sample_separable,
    sample_unit_vector,
    spin_along,
)
from .states import (
    bell_state,
    check_density_matrix,
    make_rho1,
    make_rho2,
    pure_to_density,
)

H = kron(SIGMA_X, SIGMA_Y)
H_PRIME = kron(SIGMA_Y, SIGMA_X)

INITIAL_KINDS = (
    "pure_random",
    "separable_random",
    "max_entangled_random",
    "rho1",
    "rho2",
    "bell",
    "explicit",
)
CHANNEL_KINDS = ("ref1", "ref2", "ref3", "damping")
HAMILTONIAN_KINDS = ("H", "Hprime", "none", "random_product", "explicit")
OBSERVABLES = ("eof_nats", "eof_rescaled", "s_total", "s_a", "s_b")


@dataclass(frozen=True)
class DynamicsConfig:
    """Complete description of an experiment.

    ``epsilon`` parametrizes the Pauli fields ref1..ref3, ``p`` the damping
    channel. A negative ``alpha`` runs the unitary part backwards in time.
    """

    initial: str = "bell"
    q: float = 0.6
    a_sq: float = 0.75
    channel: str = "ref3"
    epsilon: float = 0.01
    p: float = 0.05
    side: str = "B"
    hamiltonian: str = "H"
    alpha: float = 0.0
    steps: int = 500
    seed: int = 42
    ensemble_size: int = 1
    record_every: int = 1
    initial_matrix: np.ndarray | None = field(default=None, compare=False, repr=False)
    hamiltonian_matrix: np.ndarray | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        if self.initial not in INITIAL_KINDS:
            raise ConfigError(f"unknown initial state {self.initial!r}", "initial")
        if self.channel not in CHANNEL_KINDS:
            raise ConfigError(f"unknown channel {self.channel!r}", "channel")
        if self.hamiltonian not in HAMILTONIAN_KINDS:
            raise ConfigError(f"unknown hamiltonian {self.hamiltonian!r}", "hamiltonian")
        if self.side not in SIDES:
            raise ConfigError(f"side must be A or B, got {self.side!r}", "side")
        for name in ("steps", "ensemble_size", "record_every"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ConfigError(f"{name} must be a positive integer", name)
        if self.initial == "explicit" and self.initial_matrix is None:
            raise ConfigError("explicit initial state needs initial_matrix", "initial")
        if self.hamiltonian == "explicit" and self.hamiltonian_matrix is None:
            raise ConfigError("explicit hamiltonian needs hamiltonian_matrix", "hamiltonian")

    def replace(self, **changes) -> "DynamicsConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return DynamicsConfig(**values)

    @property
    def frozen_unitary(self) -> bool:
        """True when U is exactly the identity."""
        return self.alpha == 0 or self.hamiltonian == "none"


def make_hamiltonian(kind: str, rng: RandomSource | None = None, matrix=None):
    """Coupling Hamiltonian; ``random_product`` draws (n1.sigma) x (n2.sigma)."""
    if kind == "H":
        return H
    if kind == "Hprime":
        return H_PRIME
    if kind == "none":
        return np.zeros((4, 4), dtype=complex)
    if kind == "random_product":
        if rng is None:
            raise ValueError("random_product hamiltonian needs a random source")
        n1 = sample_unit_vector(rng)
        n2 = sample_unit_vector(rng)
        return kron(spin_along(n1), spin_along(n2))
    if kind == "explicit":
        h = as_matrix(matrix)
        if h.shape != (4, 4) or not is_hermitian(h):
            raise ValueError("explicit hamiltonian must be a 4x4 Hermitian matrix")
        return h
    raise ValueError(f"unknown hamiltonian {kind!r}")


def make_local_channel(cfg: DynamicsConfig) -> LocalChannel:
    if cfg.channel == "damping":
        ch = make_amplitude_damping(cfg.p)
    else:
        ch = pauli_field(int(cfg.channel[-1]), cfg.epsilon)
    return LocalChannel(ch, cfg.side)


def make_initial_state(cfg: DynamicsConfig, rng: RandomSource | None = None):
    kind = cfg.initial
    if kind == "pure_random":
        return pure_to_density(sample_pure(rng))
    if kind == "separable_random":
        return pure_to_density(sample_separable(rng))
    if kind == "max_entangled_random":
        return pure_to_density(sample_max_entangled(rng))
    if kind == "rho1":
        return make_rho1(cfg.q, cfg.a_sq)
    if kind == "rho2":
        return make_rho2(cfg.q, cfg.a_sq)
    if kind == "bell":
        return bell_state()
    return check_density_matrix(cfg.initial_matrix)


def _unitary(h, alpha):
    sign = 1 if alpha >= 0 else -1
    return unitary_exp(h, abs(alpha), sign)


def step(rho, lc: LocalChannel, u=None) -> np.ndarray:
    """One period: local channel, then conjugation by ``u`` (skipped if None)."""
    out = lc(rho)
    if u is not None:
        if unitarity_residual(u) > tol.UNITARY:
            raise ValueError("step needs a unitary")
        out = u @ out @ dagger(u)
    return out


class ObservableRecord(NamedTuple):
    step: int
    eof_nats: float
    eof_rescaled: float
    s_total: float
    s_a: float
    s_b: float


@dataclass
class TrajectorySeries:
    """Observables of a single trajectory; one array entry per recorded step."""

    steps: np.ndarray
    eof_nats: np.ndarray
    s_total: np.ndarray
    s_a: np.ndarray
    s_b: np.ndarray
    final_state: np.ndarray | None = None

    @property
    def eof_rescaled(self) -> np.ndarray:
        return self.eof_nats / np.log(2.0)

    def __len__(self):
        return len(self.steps)

    def records(self) -> Iterator[ObservableRecord]:
        for i, n in enumerate(self.steps):
            yield ObservableRecord(
                int(n),
                float(self.eof_nats[i]),
                float(self.eof_rescaled[i]),
                float(self.s_total[i]),
                float(self.s_a[i]),
                float(self.s_b[i]),
            )


@dataclass
class EnsembleSeries:
    """Per-step mean and sample standard deviation (N-1) over trajectories.

    ``mean`` and ``std`` map observable names in ``OBSERVABLES`` to arrays.
    With a single trajectory the standard deviation is reported as zero.
    """

    steps: np.ndarray
    mean: dict
    std: dict
    ensemble_size: int


def run_trajectory(
    rho0, cfg: DynamicsConfig, rng: RandomSource | None = None
) -> TrajectorySeries:
    """Iterate ``cfg.steps`` periods from ``rho0``.

    ``rng`` is only consumed by the ``random_product`` Hamiltonian, which is
    redrawn every step.

    Raises
    ------
    NumericalError
        If the state fails validation (checked every
        ``tolerances.VALIDATE_EVERY`` steps) or the spectrum breaks down.
    """
    rho = as_matrix(rho0).copy()
    lc = make_local_channel(cfg)
    redraw = cfg.hamiltonian == "random_product" and not cfg.frozen_unitary
    if redraw and rng is None:
        raise ValueError("random_product hamiltonian needs a random source")
    u = u_dag = None
    if not cfg.frozen_unitary and not redraw:
        h = make_hamiltonian(cfg.hamiltonian, matrix=cfg.hamiltonian_matrix)
        u = _unitary(h, cfg.alpha)
        u_dag = dagger(u)

    recorded = [n for n in range(cfg.steps + 1) if n % cfg.record_every == 0]
    out = np.empty((len(recorded), 4))
    row = 0
    for n in range(cfg.steps + 1):
        if n > 0:
            if redraw:
                u = _unitary(make_hamiltonian("random_product", rng), cfg.alpha)
                u_dag = dagger(u)
            rho = lc(rho)
            if u is not None:
                rho = u @ rho @ u_dag
        try:
            if n > 0 and n % tol.VALIDATE_EVERY == 0:
                check_density_matrix(rho)
            if n % cfg.record_every == 0:
                obs = observe(rho)
                out[row] = (obs.eof_nats, obs.s_total, obs.s_a, obs.s_b)
                row += 1
        except EntdynError as exc:
            raise NumericalError(f"step {n}: {exc}", step=n) from exc
    return TrajectorySeries(
        np.array(recorded), out[:, 0], out[:, 1], out[:, 2], out[:, 3], final_state=rho
    )


def _member(cfg: DynamicsConfig, index: int) -> TrajectorySeries:
    rng = RandomSource(cfg.seed).derive(index)
    try:
        return run_trajectory(make_initial_state(cfg, rng), cfg, rng)
    except NumericalError as exc:
        exc.trajectory = index
        raise NumericalError(f"trajectory {index}, {exc}", exc.step, index) from exc


def run_ensemble(cfg: DynamicsConfig, workers: int = 1) -> EnsembleSeries:
    """Average ``cfg.ensemble_size`` trajectories.

    Trajectory ``i`` uses ``RandomSource(cfg.seed).derive(i)`` for its initial
    state and any random Hamiltonians, so results do not depend on
    ``workers``; reduction runs in trajectory order after all complete.
    """
    indices = range(cfg.ensemble_size)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            series = list(pool.map(lambda i: _member(cfg, i), indices))
    else:
        series = [_member(cfg, i) for i in indices]

    mean, std = {}, {}
    for name in OBSERVABLES:
        stack = np.stack([getattr(s, name) for s in series])
        mean[name] = stack.mean(axis=0)
        std[name] = (
            stack.std(axis=0, ddof=1) if len(series) > 1 else np.zeros(stack.shape[1])
        )
    return EnsembleSeries(series[0].steps, mean, std, len(series))
