"""Numerical tolerances shared by every module.

Values are read at call time, so assigning e.g.
``entdyn.tolerances.HERMITIAN = 1e-9`` changes behaviour globally.
"""

#: max |m - m^H| entry accepted as Hermitian
HERMITIAN = 1e-10
#: |Tr(rho) - 1| accepted for a density matrix
TRACE = 1e-10
#: smallest eigenvalue accepted as positive semidefinite
NEGATIVE_EIGENVALUE = -1e-8
#: |<psi|psi> - 1| accepted for a pure state
NORM = 1e-10
#: unitarity check on channel generators and dynamics unitaries
UNITARY = 1e-10
#: Kraus completeness residuals (trace preservation, bistochasticity)
KRAUS = 1e-10
#: probability vectors must sum to one within this
PROBABILITY_SUM = 1e-12
#: eigenvalues below this contribute nothing to the von Neumann entropy
ENTROPY_CUTOFF = 1e-12
#: imaginary residue allowed on Pauli expectation values
IMAGINARY = 1e-8
#: dead band on the entropy-inequality flags
VIOLATION_DEADBAND = 1e-9

#: Jacobi stopping rule: off-diagonal Frobenius norm (relative to max(1, ||m||_F))
JACOBI_OFFDIAG = 1e-13
JACOBI_MAX_SWEEPS = 50

#: trajectories re-validate the state at this step interval
VALIDATE_EVERY = 50
