import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entdyn.channels import LocalChannel, pauli_field
from entdyn.errors import DimensionError, InvalidStateError
from entdyn.matcore import dagger, kron, partial_trace
from entdyn.measures import (
    LN2,
    binary_entropy,
    concurrence,
    entanglement_of_formation,
    entropy_increase_bound,
    entropy_report,
    eof_from_concurrence,
    observe,
    von_neumann_entropy,
)
from entdyn.sampling import RandomSource, sample_max_entangled, sample_pure, sample_su2
from entdyn.states import BELL_STATES, basis_state, bell_state, make_rho1, pure_to_density

import oracles
from oracles import (
    bell_diagonal_concurrence,
    entropy_lapack,
    random_density,
    random_product_density,
    random_separable_mixture,
    random_unitary,
    wootters_nonhermitian,
    x_state_concurrence,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_binary_entropy_values():
    assert binary_entropy(0.0) == 0.0 and binary_entropy(1.0) == 0.0
    assert abs(binary_entropy(0.5) - math.log(2)) < 1e-15
    # frozen with mpmath at 30 digits
    assert abs(binary_entropy(0.4) - 0.673011667009256) < 1e-14
    assert abs(binary_entropy(0.25) - 0.562335144618808) < 1e-14
    assert abs(binary_entropy(0.45) - 0.688138813713588) < 1e-14
    # rounded values quoted in the source text
    assert round(binary_entropy(0.4), 3) == 0.673
    assert round(binary_entropy(0.25), 3) == 0.562
    assert round(binary_entropy(0.45), 3) == 0.688


@given(st.floats(0, 1))
def test_binary_entropy_symmetric_and_bounded(x):
    assert abs(binary_entropy(x) - binary_entropy(1 - x)) < 1e-12
    assert -1e-15 <= binary_entropy(x) <= math.log(2) + 1e-15


def test_binary_entropy_domain():
    with pytest.raises(ValueError):
        binary_entropy(1.1)


def test_von_neumann_examples():
    assert von_neumann_entropy(pure_to_density(basis_state(2))) < 1e-9
    assert abs(von_neumann_entropy(np.eye(4) / 4) - math.log(4)) < 1e-12
    assert abs(von_neumann_entropy(make_rho1(0.6, 0.2)) - binary_entropy(0.4)) < 1e-9


def test_von_neumann_matches_lapack(rng):
    for _ in range(200):
        rho = random_density(rng, 4, rng.integers(1, 5))
        assert abs(von_neumann_entropy(rho) - entropy_lapack(rho)) < 1e-10


def test_von_neumann_rejects_invalid():
    with pytest.raises(InvalidStateError):
        von_neumann_entropy(np.eye(4) / 2)
    with pytest.raises(InvalidStateError):
        von_neumann_entropy(np.diag([0.6, 0.6, -0.2, 0.0]))


def test_entropy_report_examples():
    rep = entropy_report(pure_to_density(basis_state(0)))
    assert (rep.s_total, rep.s_a, rep.s_b) == (0.0, 0.0, 0.0)
    assert not rep.violates_A and not rep.violates_B
    rep = entropy_report(bell_state())
    assert rep.s_total < 1e-12
    assert abs(rep.s_a - LN2) < 1e-12 and abs(rep.s_b - LN2) < 1e-12
    assert rep.violates_A and rep.violates_B
    rep = entropy_report(make_rho1(3 / 5, 3 / 4))
    assert rep.violates_A and not rep.violates_B
    with pytest.raises(DimensionError):
        entropy_report(np.eye(2) / 2)


def test_separable_mixtures_never_violate(rng):
    for _ in range(1000):
        rep = entropy_report(random_separable_mixture(rng, rng.integers(1, 6)))
        assert not rep.violates_A and not rep.violates_B


def test_concurrence_examples():
    assert concurrence(pure_to_density(basis_state(0))) == 0.0
    for name in BELL_STATES:
        assert abs(concurrence(bell_state(name)) - 1) < 1e-12
    rng = RandomSource(11)
    for _ in range(50):
        assert abs(concurrence(pure_to_density(sample_max_entangled(rng))) - 1) < 1e-12


def test_rho1_concurrence_and_eof():
    rho = make_rho1(3 / 5, 3 / 4)
    ent = entanglement_of_formation(rho)
    # sqrt(3)/10 and its EoF, frozen with mpmath
    assert abs(ent.concurrence - 0.173205080756888) < 1e-12
    assert abs(ent.concurrence - x_state_concurrence(rho)) < 1e-12
    assert abs(ent.eof_nats - 0.0444469782459514) < 1e-12
    assert abs(ent.eof_rescaled - 0.0641234350979337) < 1e-12


@pytest.mark.parametrize("q", [0.1, 0.3, 0.55, 0.6, 0.8, 0.99])
@pytest.mark.parametrize("a_sq", [0.2, 0.5, 0.75])
def test_rho1_family_matches_x_state_oracle(q, a_sq):
    rho = make_rho1(q, a_sq)
    c = concurrence(rho)
    assert abs(c - x_state_concurrence(rho)) < 1e-10
    assert abs(c - 2 * abs(2 * q - 1) * math.sqrt(a_sq * (1 - a_sq))) < 1e-10


def test_rho1_concurrence_increasing_in_q():
    qs = np.linspace(0.51, 0.99, 25)
    cs = [concurrence(make_rho1(q, 0.75)) for q in qs]
    assert all(b > a for a, b in zip(cs, cs[1:]))


@pytest.mark.parametrize("eps", [0.01, 0.05, 0.3, 0.6])
def test_bell_diagonal_concurrence(eps):
    rho = LocalChannel(pauli_field(3, eps), "B")(bell_state())
    expected = bell_diagonal_concurrence([1 - eps, eps / 3, eps / 3, eps / 3])
    assert abs(concurrence(rho) - expected) < 1e-9
    assert abs(expected - max(0.0, 1 - 2 * eps)) < 1e-15


def test_concurrence_matches_textbook_route(rng):
    for _ in range(300):
        rho = random_density(rng, 4, rng.integers(2, 5))
        assert abs(concurrence(rho) - wootters_nonhermitian(rho)) < 1e-7


def test_eof_examples():
    assert entanglement_of_formation(pure_to_density(basis_state(3))).eof_nats == 0.0
    assert abs(entanglement_of_formation(bell_state()).eof_nats - LN2) < 1e-12
    assert abs(entanglement_of_formation(bell_state()).eof_rescaled - 1) < 1e-12
    # E(C = 0.98) frozen with mpmath
    assert abs(eof_from_concurrence(0.98) - 0.673214385563690) < 1e-13


@given(st.floats(0, 1))
def test_eof_matches_oracle(c):
    assert abs(eof_from_concurrence(c) - oracles.eof_of_concurrence(c)) < 1e-14


def test_pure_state_eof_equals_marginal_entropy():
    rng = RandomSource(5)
    for _ in range(300):
        rho = pure_to_density(sample_pure(rng))
        e = entanglement_of_formation(rho).eof_nats
        assert abs(e - von_neumann_entropy(partial_trace(rho, "B"))) < 1e-8
        assert abs(e - von_neumann_entropy(partial_trace(rho, "A"))) < 1e-8


def _local_unitary(rng):
    return kron(sample_su2(rng), sample_su2(rng))


@given(seeds)
@settings(max_examples=60, deadline=None)
def test_local_unitary_invariance(seed):
    rng = RandomSource(seed)
    rho = random_density(np.random.default_rng(seed), 4, 2)
    u = _local_unitary(rng)
    moved = u @ rho @ dagger(u)
    assert abs(concurrence(moved) - concurrence(rho)) < 1e-9
    assert (
        abs(entanglement_of_formation(moved).eof_nats - entanglement_of_formation(rho).eof_nats)
        < 1e-9
    )


@given(seeds)
@settings(max_examples=60, deadline=None)
def test_global_unitary_entropy_invariance(seed):
    g = np.random.default_rng(seed)
    rho, u = random_density(g), random_unitary(g, 4)
    assert abs(von_neumann_entropy(u @ rho @ dagger(u)) - von_neumann_entropy(rho)) < 1e-9


def test_bound_examples():
    assert abs(entropy_increase_bound(pure_to_density(basis_state(0))) - LN2) < 1e-12
    assert abs(entropy_increase_bound(bell_state()) - 2 * LN2) < 1e-12
    with pytest.raises(ValueError):
        entropy_increase_bound(bell_state(), untouched="C")


def test_bound_holds_for_random_pairs(rng):
    for i in range(200):
        rho = random_density(rng, 4, rng.integers(1, 5))
        lc = LocalChannel(pauli_field(1 + i % 3, rng.uniform()), "B")
        gain = von_neumann_entropy(lc(rho)) - von_neumann_entropy(rho)
        assert gain <= entropy_increase_bound(rho, 2, "A") + 1e-9


def test_bound_separable_at_most_ln2(rng):
    for _ in range(100):
        rho = random_product_density(rng)
        assert entropy_increase_bound(rho) <= LN2 + 1e-9


def test_observe_agrees_with_separate_calls(rng):
    for _ in range(50):
        rho = random_density(rng, 4, rng.integers(1, 5))
        obs = observe(rho)
        rep = entropy_report(rho)
        assert obs.s_total == rep.s_total and obs.s_a == rep.s_a and obs.s_b == rep.s_b
        assert obs.eof_nats == entanglement_of_formation(rho).eof_nats
        assert obs.eof_rescaled == obs.eof_nats / LN2
