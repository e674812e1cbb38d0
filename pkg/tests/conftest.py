import pytest

from rainbow_dkp import ModelParams, QuantumNumbers


@pytest.fixture
def example_state():
    """M=0.8, omega=1, alpha=0.5, m=1, n=1 with epsilon set per test."""

    def make(epsilon, omega=1.0, alpha=0.5):
        return ModelParams(0.8, omega, epsilon, alpha), QuantumNumbers(1, 1)

    return make
