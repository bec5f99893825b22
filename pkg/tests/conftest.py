"""Shared test fixtures."""

import pytest

from reference_oracle import BitMatrixOracle


@pytest.fixture
def bit_matrix_oracle_cls():
    return BitMatrixOracle
