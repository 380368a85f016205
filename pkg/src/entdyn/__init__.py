"""Discrete-time entanglement dynamics of two qubits under local channels."""

__version__ = "0.1.0"
