"""Physical constants, unit conversions, and molecule parameter handling.

The unit system is fixed throughout the package: lengths in Angstrom,
energies in eV, and reduced masses carried as rest energies (mu*c^2, eV)
so that 2*mu/hbar^2 == 2*(mu*c^2)/(hbar*c)^2 in 1/(eV*A^2). Conversion
factors are pinned to specific literature values rather than current
CODATA so that published reference spectra reproduce bit-stably.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, TableParseError, ValidationError

__all__ = [
    "PhysicalConstants",
    "DEFAULT_CONSTANTS",
    "MoleculeParams",
    "convert_wavenumber_to_ev",
    "convert_mass_grams_to_ev",
    "load_molecules",
    "serialize_molecules",
    "builtin_molecules",
    "builtin_molecule",
    "BUILTIN_TABLE",
]


@dataclass(frozen=True)
class PhysicalConstants:
    """Pinned constants and conversion factors.

    hbar_c           eV*A
    ev_per_inverse_cm  eV per cm^-1 (photon energy of a 1 cm^-1 quantum)
    ev_per_amu_c2    eV per amu of rest energy
    grams_per_amu    g per amu
    """

    hbar_c: float = 1973.29
    ev_per_inverse_cm: float = 1.239841875e-4
    ev_per_amu_c2: float = 931.494028e6
    grams_per_amu: float = 1.660538782e-24

    def wavenumber_to_ev(self, v: float) -> float:
        """Convert a wavenumber in cm^-1 to an energy in eV."""
        return v * self.ev_per_inverse_cm

    def mass_1e23_g_to_ev(self, m: float) -> float:
        """Convert a mass given in units of 1e-23 g to a rest energy in eV.

        Raises DomainError for non-positive mass.
        """
        if not m > 0.0:
            raise DomainError(f"mass must be positive, got {m!r}")
        return m * 1e-23 / self.grams_per_amu * self.ev_per_amu_c2


DEFAULT_CONSTANTS = PhysicalConstants()


def convert_wavenumber_to_ev(v: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Energy in eV of a level quoted as a wavenumber in cm^-1."""
    return constants.wavenumber_to_ev(v)


def convert_mass_grams_to_ev(m: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Rest energy mu*c^2 in eV of a reduced mass given in 1e-23 g."""
    return constants.mass_1e23_g_to_ev(m)


# Relative slack on b_h == beta*(1 - c_h); source tables round the three
# parameters independently, so exact consistency cannot be demanded.
_BH_BETA_RTOL = 1e-2


@dataclass(frozen=True)
class MoleculeParams:
    """Model parameters of one diatomic molecule.

    c_h is the dimensionless shape constant of the potential, b_h the
    range parameter in 1/A, r_e the equilibrium bond length in A, beta
    the Morse constant in 1/A and d_e the well depth in eV. mu is the
    reduced mass carried as mu*c^2 in eV. The raw table columns
    (mu in 1e-23 g, well depth in cm^-1) are kept for serialization.
    """

    name: str
    c_h: float
    mu: float            # mu*c^2, eV
    b_h: float           # 1/A
    r_e: float           # A
    beta: float | None   # 1/A, None when not supplied
    d_e: float           # eV
    mu_1e23_g: float = field(repr=False, default=0.0)
    d_e_cm: float = field(repr=False, default=0.0)

    def __post_init__(self):
        for fname in ("d_e", "b_h", "r_e", "mu"):
            if not getattr(self, fname) > 0.0:
                raise ValidationError(f"{self.name}: {fname} must be positive", field=fname)
        if not self.c_h < 1.0:
            raise ValidationError(f"{self.name}: c_h must be < 1, got {self.c_h!r}", field="c_h")
        if self.beta is not None:
            if not self.beta > 0.0:
                raise ValidationError(f"{self.name}: beta must be positive", field="beta")
            expected = self.beta * (1.0 - self.c_h)
            if abs(self.b_h - expected) / self.b_h > _BH_BETA_RTOL:
                raise ValidationError(
                    f"{self.name}: b_h = {self.b_h!r} inconsistent with "
                    f"beta*(1 - c_h) = {expected!r}",
                    field="b_h",
                )

    @classmethod
    def from_table_row(
        cls,
        name: str,
        c_h: float,
        mu_1e23_g: float,
        b_h: float,
        r_e: float,
        beta: float | None,
        d_cm: float,
        constants: PhysicalConstants = DEFAULT_CONSTANTS,
    ) -> "MoleculeParams":
        """Build from raw table columns, applying all unit conversions."""
        return cls(
            name=name,
            c_h=c_h,
            mu=constants.mass_1e23_g_to_ev(mu_1e23_g),
            b_h=b_h,
            r_e=r_e,
            beta=beta,
            d_e=constants.wavenumber_to_ev(d_cm),
            mu_1e23_g=mu_1e23_g,
            d_e_cm=d_cm,
        )


# Built-in registry, one molecule per line:
# name  c_h  mu/1e-23g  b_h/A^-1  r_e/A  beta/A^-1  D/cm^-1
BUILTIN_TABLE = """\
# name c_h mu_1e-23g b_h_invA r_e_A beta_invA D_cm-1
HF 0.127772 0.160 1.94207 0.917 2.2266 49382
N2 -0.032325 1.171 2.78585 1.097 2.6986 79885
I2 -0.139013 10.612 2.12343 2.666 1.8643 12547
H2 0.170066 0.084 1.61890 0.741 1.9506 38318
O2 0.027262 1.377 2.59103 1.207 2.6636 42041
O2+ -0.019445 1.377 2.86987 1.116 2.8151 54688
"""


def load_molecules(source: str, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> list[MoleculeParams]:
    """Parse a molecule parameter table.

    One molecule per line, whitespace-delimited columns
    ``name c_h mu_1e-23g b_h_invA r_e_A beta_invA D_cm-1``; empty lines
    and ``#`` comments are skipped. Raises TableParseError with the line
    number on malformed rows and ValidationError on invariant violations.
    """
    out: list[MoleculeParams] = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 7:
            raise TableParseError(
                f"expected 7 columns, got {len(parts)}: {line!r}", line_number=lineno
            )
        name = parts[0]
        try:
            c_h, mu_g, b_h, r_e, beta, d_cm = (float(p) for p in parts[1:])
        except ValueError as exc:
            raise TableParseError(f"non-numeric column in {line!r}: {exc}", line_number=lineno) from None
        out.append(
            MoleculeParams.from_table_row(name, c_h, mu_g, b_h, r_e, beta, d_cm, constants)
        )
    return out


def serialize_molecules(molecules: list[MoleculeParams], header: bool = True) -> str:
    """Write molecules back in the table format (column formats match the
    built-in registry digit for digit)."""
    lines = []
    if header:
        lines.append("# name c_h mu_1e-23g b_h_invA r_e_A beta_invA D_cm-1")
    for m in molecules:
        if m.beta is None:
            raise ValidationError(f"{m.name}: cannot serialize without beta", field="beta")
        lines.append(
            f"{m.name} {m.c_h:.6f} {m.mu_1e23_g:.3f} {m.b_h:.5f} "
            f"{m.r_e:.3f} {m.beta:.4f} {m.d_e_cm:.0f}"
        )
    return "\n".join(lines) + "\n"


def builtin_molecules(constants: PhysicalConstants = DEFAULT_CONSTANTS) -> list[MoleculeParams]:
    """The six built-in molecules (HF, N2, I2, H2, O2, O2+)."""
    return load_molecules(BUILTIN_TABLE, constants)


def builtin_molecule(name: str, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> MoleculeParams:
    """Look up one built-in molecule by name (case-sensitive)."""
    for m in builtin_molecules(constants):
        if m.name == name:
            return m
    known = ", ".join(m.name for m in builtin_molecules(constants))
    raise KeyError(f"unknown molecule {name!r}; built-in: {known}")
