"""Command-line front end.

Three subcommands: `spectrum` tabulates E_n0 - D per solution route,
`verify` cross-checks the closed form against the independent grid
oracle and emits a machine-readable report, `wavefunction` samples
normalized radial wavefunctions for external plotting.

Output is deterministic byte for byte for a fixed configuration: no
timestamps, fixed column orders, energies printed at 9 decimals in eV
(JSON can carry full precision via --full-precision). Exit codes:
0 success, 1 tolerance failure or partial result, 2 usage error.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field

import click

from .constants import (
    DEFAULT_CONSTANTS,
    MoleculeParams,
    PhysicalConstants,
    builtin_molecules,
    load_molecules,
)
from .errors import ConvergenceError, ThSpecError, UnboundLevelError
from .numerov import RadialGrid, default_grid, find_eigenvalue, integrate_at_energy
from .nu import derive_coefficients, energy_residual, tau_prime
from .tietz_hua import (
    morse_energy,
    morse_variant,
    nu_base_for_th,
    radial_wavefunction,
    th_energy,
)

ENV_MOLECULE_FILE = "THSPEC_MOLECULES"

CSV_HEADER = (
    "molecule,n,c_h,E_th_minus_D_eV,E_morse_minus_D_eV,E_oracle_minus_D_eV,delta_th_oracle_eV"
)

TOL_TH_ORACLE_EV = 1e-4
TOL_MORSE_ORACLE_EV = 1e-5
TOL_REFINE_EV = 1e-6


@dataclass
class RunConfig:
    molecules: list[MoleculeParams]
    levels: list[int]
    mode: str = "th"
    output_format: str = "pretty"
    full_precision: bool = False
    grid_points: int | None = None
    grid_r_lo: float | None = None
    grid_r_hi: float | None = None
    constants: PhysicalConstants = field(default_factory=lambda: DEFAULT_CONSTANTS)

    def grid_for(self, m: MoleculeParams) -> RadialGrid:
        g = default_grid(m, self.grid_points) if self.grid_points else default_grid(m)
        r_lo = self.grid_r_lo if self.grid_r_lo is not None else g.r_lo
        r_hi = self.grid_r_hi if self.grid_r_hi is not None else g.r_hi
        return RadialGrid(r_lo, r_hi, g.n_points)


def _registry(molecule_file: str | None, constants: PhysicalConstants) -> list[MoleculeParams]:
    """Custom-file molecules (flag, then environment) take precedence over
    the built-in registry; built-ins remain resolvable by name."""
    path = molecule_file or os.environ.get(ENV_MOLECULE_FILE)
    table: list[MoleculeParams] = []
    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                table = load_molecules(fh.read(), constants)
        except OSError as exc:
            raise click.UsageError(f"cannot read molecule file {path!r}: {exc}")
        except ThSpecError as exc:
            raise click.UsageError(f"bad molecule file {path!r}: {exc}")
    names = {m.name for m in table}
    table.extend(m for m in builtin_molecules(constants) if m.name not in names)
    return table


def _resolve_config(
    molecules: str,
    levels: str,
    mode: str,
    output_format: str,
    full_precision: bool,
    molecule_file: str | None,
    grid_points: int | None,
    grid_r_lo: float | None,
    grid_r_hi: float | None,
    hbar_c: float | None,
    ev_per_inverse_cm: float | None,
    ev_per_amu_c2: float | None,
    grams_per_amu: float | None,
) -> RunConfig:
    overrides = {
        k: v
        for k, v in {
            "hbar_c": hbar_c,
            "ev_per_inverse_cm": ev_per_inverse_cm,
            "ev_per_amu_c2": ev_per_amu_c2,
            "grams_per_amu": grams_per_amu,
        }.items()
        if v is not None
    }
    constants = PhysicalConstants(**overrides) if overrides else DEFAULT_CONSTANTS

    names = [p.strip() for p in molecules.split(",") if p.strip()]
    if not names:
        raise click.BadParameter("at least one molecule is required", param_hint="--molecules")
    registry = {m.name: m for m in _registry(molecule_file, constants)}
    selected = []
    for name in names:
        if name not in registry:
            known = ", ".join(sorted(registry))
            raise click.BadParameter(f"unknown molecule {name!r} (known: {known})")
        selected.append(registry[name])

    try:
        ns = sorted({int(p) for p in levels.split(",") if p.strip()})
    except ValueError:
        raise click.BadParameter(f"levels must be integers, got {levels!r}", param_hint="--levels")
    if not ns:
        raise click.BadParameter("at least one level is required", param_hint="--levels")
    if ns[0] < 0:
        raise click.BadParameter("levels must be non-negative", param_hint="--levels")

    return RunConfig(
        molecules=selected,
        levels=ns,
        mode=mode,
        output_format=output_format,
        full_precision=full_precision,
        grid_points=grid_points,
        grid_r_lo=grid_r_lo,
        grid_r_hi=grid_r_hi,
        constants=constants,
    )


def _common_options(fn):
    fn = click.option("--molecules", required=True, help="Comma-separated molecule names.")(fn)
    fn = click.option("--levels", required=True, help="Comma-separated vibrational levels n.")(fn)
    fn = click.option(
        "--molecule-file",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help=f"Parameter table file (also read from ${ENV_MOLECULE_FILE}).",
    )(fn)
    fn = click.option("--grid-points", type=int, default=None, help="Oracle grid size override.")(fn)
    fn = click.option("--grid-r-lo", type=float, default=None, help="Oracle grid inner edge (A).")(fn)
    fn = click.option("--grid-r-hi", type=float, default=None, help="Oracle grid outer edge (A).")(fn)
    fn = click.option("--hbar-c", type=float, default=None, help="Override hbar*c (eV*A).")(fn)
    fn = click.option("--ev-per-inverse-cm", type=float, default=None, help="Override eV per cm^-1.")(fn)
    fn = click.option("--ev-per-amu-c2", type=float, default=None, help="Override eV per amu.")(fn)
    fn = click.option("--grams-per-amu", type=float, default=None, help="Override g per amu.")(fn)
    fn = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to file instead of stdout.")(fn)
    return fn


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fmt9(x: float | None) -> str:
    return "" if x is None else f"{x:.9f}"


def _num9(x: float | None, full: bool) -> float | None:
    if x is None:
        return None
    return x if full else float(f"{x:.9f}")


@click.group()
def main() -> None:
    """Vibrational spectra of diatomic molecules in the Tietz-Hua potential."""


@main.command("spectrum")
@_common_options
@click.option(
    "--mode",
    type=click.Choice(["th", "morse", "oracle", "all"]),
    default="th",
    show_default=True,
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["csv", "json", "pretty"]),
    default="pretty",
    show_default=True,
)
@click.option("--full-precision", is_flag=True, help="Full float precision in JSON output.")
def cmd_spectrum(mode, output_format, full_precision, out, **opts) -> None:
    """Tabulate E_n0 - D (eV) per molecule and level.

    Levels beyond the well capacity are annotated "unbound" and make the
    exit code 1 (partial success).
    """
    config = _resolve_config(
        opts["molecules"], opts["levels"], mode, output_format, full_precision,
        opts["molecule_file"], opts["grid_points"], opts["grid_r_lo"], opts["grid_r_hi"],
        opts["hbar_c"], opts["ev_per_inverse_cm"], opts["ev_per_amu_c2"], opts["grams_per_amu"],
    )
    rows, partial = _spectrum_rows(config)
    text = _render_spectrum(rows, config)
    _emit(text, out)
    if partial:
        sys.exit(1)


def _spectrum_rows(config: RunConfig):
    want_th = config.mode in ("th", "all")
    want_morse = config.mode in ("morse", "all")
    want_oracle = config.mode in ("oracle", "all")
    rows = []
    partial = False
    for m in config.molecules:
        grid = config.grid_for(m) if want_oracle else None
        for n in config.levels:
            row: dict[str, object] = {"molecule": m.name, "n": n, "c_h": m.c_h}
            e_th = e_morse = e_oracle = None
            unbound = []
            if want_th:
                try:
                    e_th = th_energy(n, m, config.constants).energy_minus_d
                except UnboundLevelError:
                    unbound.append("th")
            if want_morse:
                try:
                    e_morse = morse_energy(n, m, config.constants).energy_minus_d
                except UnboundLevelError:
                    unbound.append("morse")
            if want_oracle:
                try:
                    e_oracle = (
                        find_eigenvalue(n, m, grid, config.constants).energy - m.d_e
                    )
                except (UnboundLevelError, ConvergenceError):
                    unbound.append("oracle")
                except ThSpecError as exc:
                    # configuration-level failures should not look like
                    # missing levels
                    raise click.ClickException(f"{m.name} n={n}: {exc}")
            row["E_th_minus_D_eV"] = e_th if want_th else None
            row["E_morse_minus_D_eV"] = e_morse if want_morse else None
            row["E_oracle_minus_D_eV"] = e_oracle if want_oracle else None
            row["delta_th_oracle_eV"] = (
                e_th - e_oracle if (e_th is not None and e_oracle is not None) else None
            )
            row["unbound"] = unbound
            if unbound:
                partial = True
            rows.append(row)
    return rows, partial


_SPECTRUM_COLUMNS = (
    "E_th_minus_D_eV",
    "E_morse_minus_D_eV",
    "E_oracle_minus_D_eV",
    "delta_th_oracle_eV",
)


def _spectrum_cell(row, col, want) -> str:
    if not want:
        return ""
    value = row[col]
    if value is None:
        # the delta column is derived, only energy columns say "unbound"
        if col != "delta_th_oracle_eV" and row["unbound"]:
            return "unbound"
        return ""
    return _fmt9(value)


def _render_spectrum(rows, config: RunConfig) -> str:
    want = {
        "E_th_minus_D_eV": config.mode in ("th", "all"),
        "E_morse_minus_D_eV": config.mode in ("morse", "all"),
        "E_oracle_minus_D_eV": config.mode in ("oracle", "all"),
        "delta_th_oracle_eV": config.mode == "all",
    }
    if config.output_format == "csv":
        lines = [CSV_HEADER]
        for row in rows:
            cells = [str(row["molecule"]), str(row["n"]), f"{row['c_h']:.6f}"]
            cells += [_spectrum_cell(row, col, want[col]) for col in _SPECTRUM_COLUMNS]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"
    if config.output_format == "json":
        payload = []
        for row in rows:
            obj: dict[str, object] = {
                "molecule": row["molecule"],
                "n": row["n"],
                "c_h": row["c_h"],
            }
            for col in _SPECTRUM_COLUMNS:
                if not want[col]:
                    obj[col] = None
                elif row[col] is None:
                    unbound = col != "delta_th_oracle_eV" and bool(row["unbound"])
                    obj[col] = "unbound" if unbound else None
                else:
                    obj[col] = _num9(row[col], config.full_precision)
            payload.append(obj)
        return json.dumps(payload, indent=2) + "\n"

    header = f"{'molecule':<10}{'n':>4}  {'c_h':>11}"
    for col, label in zip(
        _SPECTRUM_COLUMNS, ("E_th - D", "E_morse - D", "E_oracle - D", "d(th,oracle)")
    ):
        if want[col]:
            header += f"  {label:>16}"
    lines = [header, "-" * len(header)]
    for row in rows:
        line = f"{row['molecule']:<10}{row['n']:>4}  {row['c_h']:>11.6f}"
        for col in _SPECTRUM_COLUMNS:
            if want[col]:
                line += f"  {_spectrum_cell(row, col, True):>16}"
        lines.append(line)
    return "\n".join(lines) + "\n"


@main.command("verify")
@_common_options
@click.option(
    "--mode",
    type=click.Choice(["th", "morse", "all"]),
    default="th",
    show_default=True,
    help="Which closed form to check against the oracle.",
)
@click.option("--refine/--no-refine", default=True, show_default=True,
              help="Also re-solve at half the grid step and check the shift.")
def cmd_verify(mode, refine, out, **opts) -> None:
    """Cross-check closed-form eigenvalues against the grid oracle.

    Emits a JSON report; exits 1 if any per-row check exceeds tolerance,
    0 when everything passes.
    """
    config = _resolve_config(
        opts["molecules"], opts["levels"], mode, "json", True,
        opts["molecule_file"], opts["grid_points"], opts["grid_r_lo"], opts["grid_r_hi"],
        opts["hbar_c"], opts["ev_per_inverse_cm"], opts["ev_per_amu_c2"], opts["grams_per_amu"],
    )
    report = _verify_report(config, refine)
    _emit(json.dumps(report, indent=2) + "\n", out)
    if not report["all_pass"]:
        sys.exit(1)


def _verify_row(kind: str, m: MoleculeParams, n: int, config: RunConfig, refine: bool):
    constants = config.constants
    row: dict[str, object] = {"molecule": m.name, "n": n, "kind": kind}
    try:
        if kind == "th":
            target, tol = m, TOL_TH_ORACLE_EV
            closed = th_energy(n, m, constants)
        else:
            target, tol = morse_variant(m), TOL_MORSE_ORACLE_EV
            closed = morse_energy(n, m, constants)
        grid = config.grid_for(target)
        oracle = find_eigenvalue(n, target, grid, constants, refine_check=refine)
    except ThSpecError as exc:
        row.update({"error": str(exc), "pass": False})
        return row
    delta = float(closed.energy - oracle.energy)
    coeffs = derive_coefficients(nu_base_for_th(target, closed.energy, constants))
    nodes, defect = integrate_at_energy(closed.energy, target, grid, constants)
    checks = {"delta_within_tolerance": bool(abs(delta) <= tol)}
    if refine:
        checks["refinement_within_tolerance"] = bool(
            abs(oracle.refinement_delta) <= TOL_REFINE_EV
        )
    row.update(
        {
            "e_closed_minus_d": float(closed.energy_minus_d),
            "e_oracle_minus_d": float(oracle.energy - m.d_e),
            "delta_ev": delta,
            "tolerance_ev": tol,
            "node_count": int(nodes),
            "match_defect": float(defect),
            "residual_at_root": float(energy_residual(n, coeffs)),
            "tau_prime": float(tau_prime(coeffs)),
            "refinement_delta_ev": oracle.refinement_delta,
            "checks": checks,
            "pass": all(checks.values()),
        }
    )
    return row


def _verify_report(config: RunConfig, refine: bool):
    kinds = ("th", "morse") if config.mode == "all" else (config.mode,)
    rows = []
    for m in config.molecules:
        for n in config.levels:
            for kind in kinds:
                rows.append(_verify_row(kind, m, n, config, refine))
    return {
        "grid_points": config.grid_points or default_grid(config.molecules[0]).n_points,
        "refine": refine,
        "tolerances_ev": {
            "th_vs_oracle": TOL_TH_ORACLE_EV,
            "morse_vs_oracle": TOL_MORSE_ORACLE_EV,
            "refinement": TOL_REFINE_EV,
        },
        "rows": rows,
        "all_pass": all(r["pass"] for r in rows),
    }


@main.command("wavefunction")
@_common_options
@click.option("--samples", type=int, default=1000, show_default=True)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
)
@click.option("--full-precision", is_flag=True, help="Full float precision in JSON output.")
def cmd_wavefunction(samples, output_format, full_precision, out, **opts) -> None:
    """Sample normalized radial wavefunctions R_n0(r) on the validity domain."""
    config = _resolve_config(
        opts["molecules"], opts["levels"], "th", output_format, full_precision,
        opts["molecule_file"], opts["grid_points"], opts["grid_r_lo"], opts["grid_r_hi"],
        opts["hbar_c"], opts["ev_per_inverse_cm"], opts["ev_per_amu_c2"], opts["grams_per_amu"],
    )
    if samples < 2:
        raise click.BadParameter("need at least 2 samples", param_hint="--samples")

    partial = False
    blocks = []
    for m in config.molecules:
        for n in config.levels:
            try:
                wf = radial_wavefunction(n, m, config.constants)
            except UnboundLevelError:
                blocks.append((m, n, None, None))
                partial = True
                continue
            r, values = wf.sample(samples)
            blocks.append((m, n, r, values))

    if output_format == "csv":
        lines = ["molecule,n,r_A,R"]
        for m, n, r, values in blocks:
            if r is None:
                lines.append(f"{m.name},{n},unbound,unbound")
                continue
            for ri, vi in zip(r, values):
                lines.append(f"{m.name},{n},{ri:.9f},{vi:.9e}")
        text = "\n".join(lines) + "\n"
    else:
        payload = []
        for m, n, r, values in blocks:
            if r is None:
                payload.append({"molecule": m.name, "n": n, "samples": "unbound"})
                continue
            pairs = [
                [
                    _num9(float(ri), config.full_precision),
                    float(vi) if config.full_precision else float(f"{vi:.9e}"),
                ]
                for ri, vi in zip(r, values)
            ]
            payload.append({"molecule": m.name, "n": n, "samples": pairs})
        text = json.dumps(payload, indent=2) + "\n"

    _emit(text, out)
    if partial:
        sys.exit(1)


if __name__ == "__main__":
    main()
