import pytest

from fermap import pauli
from fermap.mapping import FermionQubitMapping


@pytest.fixture
def product_breaking_two_mode() -> FermionQubitMapping:
    """The two-mode mapping ((X0, -Z0Y1), (Z0X1, Y0)) with entangled vacuum."""
    return FermionQubitMapping(
        2,
        (
            (pauli.parse_pauli("+1 X0", 2), pauli.parse_pauli("-1 Z0 Y1", 2)),
            (pauli.parse_pauli("+1 Z0 X1", 2), pauli.parse_pauli("+1 Y0", 2)),
        ),
    )
