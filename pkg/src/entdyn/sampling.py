"""Seeded sampling of random two-qubit pure states.

Three ensembles: all pure states (unitarily invariant measure via the
Hurwitz angles), separable pure states U1 x U2 |00>, and maximally entangled
states (I x U)|Phi> with U in SU(2).
"""

import numpy as np

from .matcore import SIGMA_X, SIGMA_Y, SIGMA_Z


class RandomSource:
    """Reproducible stream of uniforms.

    Backed by numpy's PCG64 seeded through ``SeedSequence(seed, spawn_key)``.
    ``derive(i)`` appends ``i`` to the spawn key, giving the i-th independent
    sub-stream; the result depends only on ``(seed, path)``, never on how many
    values other streams consumed. Not safe to share between threads: give
    each worker its own derived source.
    """

    def __init__(self, seed: int = 42, path: tuple = ()):
        if not 0 <= int(seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        self.seed = int(seed)
        self.path = tuple(int(i) for i in path)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.path)
        self._gen = np.random.Generator(np.random.PCG64(seq))

    def derive(self, index: int) -> "RandomSource":
        return RandomSource(self.seed, self.path + (index,))

    def uniform(self, size=None):
        """Uniform draws on [0, 1)."""
        return self._gen.random(size)

    def angle(self, size=None):
        """Uniform draws on [0, 2 pi)."""
        return 2.0 * np.pi * self._gen.random(size)

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, path={self.path})"


def hurwitz_polar(xi, k):
    """Polar angle with density k sin(2t) sin(t)^(2k-2) on [0, pi/2] by
    inverse CDF: t = arcsin(xi^(1/2k))."""
    return np.arcsin(np.power(xi, 1.0 / (2 * k)))


def sample_pure(rng: RandomSource) -> np.ndarray:
    """Uniform (unitarily invariant) random pure state of two qubits.

    Draw order: xi_1, xi_2, xi_3, then phi_1, phi_2, phi_3.
    """
    xi = rng.uniform(3)
    phi = rng.angle(3)
    t1, t2, t3 = (hurwitz_polar(xi[k - 1], k) for k in (1, 2, 3))
    s3, s2 = np.sin(t3), np.sin(t2)
    return np.array(
        [
            np.cos(t3),
            s3 * np.cos(t2) * np.exp(1j * phi[2]),
            s3 * s2 * np.cos(t1) * np.exp(1j * phi[1]),
            s3 * s2 * np.sin(t1) * np.exp(1j * phi[0]),
        ]
    )


def sample_su2(rng: RandomSource) -> np.ndarray:
    """Haar-random SU(2) matrix [[a, -b*], [b, a*]].

    First column (cos t e^{i phi1}, sin t e^{i phi2}) with P(t) = sin 2t.
    Draw order: xi, phi_1, phi_2.
    """
    t = hurwitz_polar(rng.uniform(), 1)
    phi1, phi2 = rng.angle(2)
    a = np.cos(t) * np.exp(1j * phi1)
    b = np.sin(t) * np.exp(1j * phi2)
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])


def sample_separable(rng: RandomSource) -> np.ndarray:
    """(U1 x U2)|00> for independent Haar U1, U2."""
    u1 = sample_su2(rng)
    u2 = sample_su2(rng)
    return np.kron(u1[:, 0], u2[:, 0])


def sample_max_entangled(rng: RandomSource) -> np.ndarray:
    """(cos t e^{i phi1}, sin t e^{i phi2}, -sin t e^{-i phi2}, cos t e^{-i phi1}) / sqrt 2
    with phi uniform and P(t) = sin 2t. Draw order: xi, phi_1, phi_2."""
    t = hurwitz_polar(rng.uniform(), 1)
    phi1, phi2 = rng.angle(2)
    c, s = np.cos(t), np.sin(t)
    return np.array(
        [
            c * np.exp(1j * phi1),
            s * np.exp(1j * phi2),
            -s * np.exp(-1j * phi2),
            c * np.exp(-1j * phi1),
        ]
    ) / np.sqrt(2.0)


def sample_unit_vector(rng: RandomSource) -> np.ndarray:
    """Uniform point on the unit sphere in R^3."""
    z = 2.0 * rng.uniform() - 1.0
    phi = rng.angle()
    rho = np.sqrt(max(0.0, 1.0 - z * z))
    return np.array([rho * np.cos(phi), rho * np.sin(phi), z])


def spin_along(n) -> np.ndarray:
    """n . sigma for a unit 3-vector n."""
    return n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z


ENSEMBLES = {
    "pure": sample_pure,
    "separable": sample_separable,
    "max-entangled": sample_max_entangled,
}
