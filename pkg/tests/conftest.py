import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from thspec import MoleculeParams, builtin_molecules


@pytest.fixture(scope="session")
def molecules() -> dict[str, MoleculeParams]:
    return {m.name: m for m in builtin_molecules()}


@pytest.fixture(scope="session")
def pole_molecule() -> MoleculeParams:
    """Synthetic molecule whose potential pole sits at positive radius
    (the six tabulated molecules all have it at r < 0)."""
    return MoleculeParams(
        name="POLE",
        c_h=0.9,
        mu=5.0e9,
        b_h=0.5,
        r_e=3.0,
        beta=5.0,
        d_e=4.0,
        mu_1e23_g=1.0,
        d_e_cm=32262.0,
    )
