"""Bound-state vibrational spectra of diatomic molecules in the Tietz-Hua
potential: closed-form eigenvalues and wavefunctions from a parametric
quantization engine, cross-checked by an independent Numerov grid solver.
"""

from .constants import (
    BUILTIN_TABLE,
    DEFAULT_CONSTANTS,
    MoleculeParams,
    PhysicalConstants,
    builtin_molecule,
    builtin_molecules,
    convert_mass_grams_to_ev,
    convert_wavenumber_to_ev,
    load_molecules,
    serialize_molecules,
)
from .errors import (
    ConvergenceError,
    DomainError,
    GridError,
    NoBoundBranchError,
    SingularityError,
    TableParseError,
    ThSpecError,
    UnboundLevelError,
    ValidationError,
)
from .nu import (
    NUBase,
    NUCoefficients,
    WavefunctionForm,
    derive_coefficients,
    energy_residual,
    energy_residual_second_branch,
    evaluate_form,
    tau_prime,
    wavefunction_form,
)
from .numerov import (
    OracleEigenvalue,
    RadialGrid,
    default_grid,
    find_eigenvalue,
    integrate_at_energy,
)
from .special import jacobi_poly, laguerre_poly
from .tietz_hua import (
    DimensionlessProblem,
    EnergyLevel,
    RadialWavefunction,
    dimensionless,
    printed_energy_equation_residual,
    morse_energy,
    morse_variant,
    n_max,
    nu_base_for_th,
    pole_radius,
    radial_wavefunction,
    th_energy,
    th_energy_closed,
    th_potential,
    validity_domain,
)

__version__ = "0.1.0"
