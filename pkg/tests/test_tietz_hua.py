import math

import numpy as np
import pytest

from golden_data import GOLDEN_MORSE, GOLDEN_NS, GOLDEN_TH, GOLDEN_TOL_EV
from thspec import (
    DomainError,
    SingularityError,
    UnboundLevelError,
    derive_coefficients,
    dimensionless,
    energy_residual,
    printed_energy_equation_residual,
    morse_energy,
    morse_variant,
    n_max,
    nu_base_for_th,
    pole_radius,
    th_energy,
    th_energy_closed,
    th_potential,
    validity_domain,
)

HBAR_C = 1973.29


class TestPotential:
    def test_zero_at_equilibrium(self, molecules):
        for m in molecules.values():
            assert th_potential(m.r_e, m) == 0.0

    def test_dissociation_asymptote(self, molecules):
        for m in molecules.values():
            v = th_potential(m.r_e + 20.0 / m.b_h, m)
            assert abs(v - m.d_e) < 1e-6 * m.d_e

    def test_hf_at_1p2_angstrom(self, molecules):
        # oracle: direct arithmetic from the defining expression
        hf = molecules["HF"]
        u = math.exp(-1.94207 * (1.2 - 0.917))
        want = hf.d_e * ((1.0 - u) / (1.0 - 0.127772 * u)) ** 2
        assert want == pytest.approx(1.2758288989729047, rel=1e-14)
        assert th_potential(1.2, hf) == pytest.approx(want, rel=1e-14)
        assert 0.0 < want < hf.d_e

    def test_array_matches_scalar(self, molecules):
        hf = molecules["HF"]
        r = np.array([0.5, 0.917, 1.2, 3.0])
        vec = th_potential(r, hf)
        for ri, vi in zip(r, vec):
            assert vi == th_potential(float(ri), hf)

    def test_pole_raises_with_location(self, pole_molecule):
        r_s = pole_radius(pole_molecule)
        assert r_s == pytest.approx(3.0 + math.log(0.9) / 0.5, rel=1e-12)
        with pytest.raises(SingularityError) as exc:
            th_potential(r_s, pole_molecule)
        assert exc.value.r_s == pytest.approx(r_s, rel=1e-12)

    def test_non_positive_radius_rejected(self, molecules):
        with pytest.raises(DomainError):
            th_potential(0.0, molecules["HF"])

    def test_no_pole_for_negative_c_h(self, molecules):
        assert pole_radius(molecules["I2"]) is None


class TestValidityDomain:
    def test_hf(self, molecules):
        r_lo, r_hi = validity_domain(molecules["HF"])
        assert r_lo == 1e-6
        assert r_hi == pytest.approx(0.917 + 25.0 / 1.94207, rel=1e-14)
        assert r_hi == pytest.approx(13.789862461188319, rel=1e-14)

    def test_pole_wall(self, pole_molecule):
        r_lo, _ = validity_domain(pole_molecule)
        assert r_lo == pytest.approx(pole_radius(pole_molecule) + 1e-6, rel=1e-12)

    def test_h2_pole_is_below_zero_so_floor_applies(self, molecules):
        # r_s = r_e + ln(c_h)/b_h = -0.353 A for H2: the 1e-6 A floor wins
        h2 = molecules["H2"]
        assert pole_radius(h2) == pytest.approx(-0.35330396070268655, rel=1e-12)
        assert validity_domain(h2)[0] == 1e-6


class TestDimensionless:
    def test_mapping_values(self, molecules):
        hf = molecules["HF"]
        e = 0.5 * hf.d_e
        prob = dimensionless(hf, e)
        assert prob.d == pytest.approx(2.0 * hf.mu * hf.d_e / HBAR_C**2, rel=1e-14)
        assert prob.eps == pytest.approx(2.0 * hf.mu * e / HBAR_C**2, rel=1e-14)
        assert prob.alpha == pytest.approx(hf.b_h * hf.r_e, rel=1e-14)
        assert prob.eps < prob.d

    def test_s_at_equilibrium_is_one_and_decreasing(self, molecules):
        prob = dimensionless(molecules["HF"], 1.0)
        assert prob.s(molecules["HF"].r_e) == pytest.approx(1.0, rel=1e-14)
        r = np.linspace(0.5, 5.0, 50)
        s = prob.s(r)
        assert np.all(np.diff(s) < 0.0)

    @pytest.mark.parametrize("bad_fraction", [-0.5, 0.0, 1.0, 1.5])
    def test_energy_domain(self, molecules, bad_fraction):
        hf = molecules["HF"]
        with pytest.raises(DomainError):
            dimensionless(hf, bad_fraction * hf.d_e)


class TestNUBaseForTH:
    def test_xi3_vanishes_at_dissociation(self, molecules):
        hf = molecules["HF"]
        base = nu_base_for_th(hf, hf.d_e * (1.0 - 1e-12))
        prob = dimensionless(hf, 0.5 * hf.d_e)
        assert 0.0 <= base.xi3 < 1e-9 * prob.d / hf.b_h**2

    def test_morse_mapping_at_c_h_zero(self, molecules):
        m = morse_variant(molecules["HF"])
        e = 0.3 * m.d_e
        base = nu_base_for_th(m, e)
        prob = dimensionless(m, e)
        inv_b2 = 1.0 / m.b_h**2
        assert base.alpha2 == 0.0 and base.alpha3 == 0.0
        assert base.xi1 == prob.d * inv_b2
        assert base.xi2 == 2.0 * prob.d * inv_b2
        assert base.xi3 == pytest.approx((prob.d - prob.eps) * inv_b2, rel=1e-14)

    def test_direct_substitution_cross_check(self, molecules):
        hf = molecules["HF"]
        e = 0.5 * hf.d_e
        base = nu_base_for_th(hf, e)
        # independent evaluation of the tabulated coefficient expressions
        d = 2.0 * hf.mu * hf.d_e / HBAR_C**2
        eps = 2.0 * hf.mu * e / HBAR_C**2
        re2_over_alpha2 = hf.r_e**2 / (hf.b_h * hf.r_e) ** 2
        assert base.alpha1 == 1.0
        assert base.alpha2 == hf.c_h
        assert base.alpha3 == hf.c_h
        assert base.xi1 == pytest.approx(re2_over_alpha2 * (d - eps * hf.c_h**2), rel=1e-13)
        assert base.xi2 == pytest.approx(2.0 * re2_over_alpha2 * (d - eps * hf.c_h), rel=1e-13)
        assert base.xi3 == pytest.approx(re2_over_alpha2 * (d - eps), rel=1e-13)

    def test_energy_domain_enforced(self, molecules):
        hf = molecules["HF"]
        with pytest.raises(DomainError):
            nu_base_for_th(hf, -1.0)
        with pytest.raises(DomainError):
            nu_base_for_th(hf, hf.d_e)


class TestTHEnergy:
    @pytest.mark.parametrize(
        "name,n",
        [("HF", 0), ("I2", 7), ("O2", 5)],
    )
    def test_reference_rows(self, molecules, name, n):
        level = th_energy(n, molecules[name])
        assert level.energy_minus_d == pytest.approx(GOLDEN_TH[name][n], abs=GOLDEN_TOL_EV)

    def test_matches_closed_path(self, molecules):
        for name in ("HF", "I2", "O2+"):
            for n in GOLDEN_NS:
                a = th_energy(n, molecules[name])
                b = th_energy_closed(n, molecules[name])
                assert abs(a.energy - b.energy) <= 1e-9

    def test_residual_at_root(self, molecules):
        for name, n in [("HF", 0), ("N2", 5), ("I2", 7)]:
            m = molecules[name]
            level = th_energy(n, m)
            c = derive_coefficients(nu_base_for_th(m, level.energy))
            assert abs(energy_residual(n, c)) <= 1e-8

    def test_level_fields(self, molecules):
        hf = molecules["HF"]
        level = th_energy(3, hf)
        assert level.n == 3
        assert 0.0 < level.energy < hf.d_e
        assert level.energy_minus_d == level.energy - hf.d_e
        assert level.t > 0.0

    def test_strictly_increasing_in_n(self, molecules):
        for m in molecules.values():
            energies = [th_energy(n, m).energy for n in range(8)]
            assert all(b > a for a, b in zip(energies, energies[1:]))
            assert all(0.0 < e < m.d_e for e in energies)

    def test_unbound_level(self, molecules):
        with pytest.raises(UnboundLevelError):
            th_energy(999, molecules["HF"])

    def test_negative_n_rejected(self, molecules):
        with pytest.raises(DomainError):
            th_energy(-1, molecules["HF"])


class TestTHEnergyClosed:
    def test_hf_ground_state(self, molecules):
        level = th_energy_closed(0, molecules["HF"])
        assert level.energy_minus_d == pytest.approx(GOLDEN_TH["HF"][0], abs=GOLDEN_TOL_EV)

    def test_reduces_to_morse_at_c_h_zero(self, molecules):
        for name in ("HF", "I2"):
            m = molecules[name]
            mv = morse_variant(m)
            for n in (0, 3, 7):
                assert th_energy_closed(n, mv).energy == pytest.approx(
                    morse_energy(n, m).energy, rel=1e-12
                )

    def test_unbound_level(self, molecules):
        with pytest.raises(UnboundLevelError):
            th_energy_closed(999, molecules["HF"])


class TestMorseEnergy:
    def test_hf_ground_state(self, molecules):
        level = morse_energy(0, molecules["HF"])
        assert level.energy_minus_d == pytest.approx(GOLDEN_MORSE["HF"][0], abs=GOLDEN_TOL_EV)

    def test_h2_n7(self, molecules):
        level = morse_energy(7, molecules["H2"])
        assert level.energy_minus_d == pytest.approx(GOLDEN_MORSE["H2"][7], abs=GOLDEN_TOL_EV)

    def test_uses_beta_not_bh(self, molecules):
        # with the tabulated b_h instead of beta the HF ground state would
        # land ~0.03 eV away from the reference value
        hf = molecules["HF"]
        sigma_bh = math.sqrt(2.0 * hf.mu * hf.d_e) / (hf.b_h * HBAR_C)
        wrong = hf.d_e * (1.0 - (1.0 - 2.0 * sigma_bh) ** 2 / (4.0 * sigma_bh**2)) - hf.d_e
        assert abs(wrong - GOLDEN_MORSE["HF"][0]) > 1e-2

    def test_vertex_formula_value(self):
        # at 2n+1 = 2*sigma the squared term of the spectrum formula
        # vanishes and the expression equals D exactly
        d_e, n = 3.7, 4
        sigma = (2 * n + 1) / 2.0
        assert d_e * (1.0 - (2 * n + 1 - 2.0 * sigma) ** 2 / (4.0 * sigma**2)) == d_e

    def test_vertex_level_is_not_bound(self, molecules):
        # ... but as a level it sits on the dissociation threshold, which
        # the bound-state contract rejects
        hf = molecules["HF"]
        sigma = math.sqrt(2.0 * hf.mu * hf.d_e) / (hf.beta * HBAR_C)
        n_vertex = int(math.ceil(sigma - 0.5))
        with pytest.raises(UnboundLevelError):
            morse_energy(n_vertex, hf)

    def test_capacity(self, molecules):
        with pytest.raises(UnboundLevelError):
            morse_energy(999, molecules["I2"])

    def test_requires_beta(self, molecules):
        import dataclasses

        hf = molecules["HF"]
        no_beta = dataclasses.replace(hf, beta=None)
        with pytest.raises(DomainError):
            morse_energy(0, no_beta)


class TestMorseLimitContinuity:
    @pytest.mark.parametrize("name", ["HF", "I2"])
    def test_small_c_h_approaches_morse(self, molecules, name):
        import dataclasses

        m = molecules[name]
        tiny = dataclasses.replace(m, c_h=1e-8, b_h=m.beta * (1.0 - 1e-8))
        for n in GOLDEN_NS:
            delta = th_energy(n, tiny).energy - morse_energy(n, m).energy
            assert abs(delta) <= 1e-6


class TestPrintedEquationDiagnostic:
    def test_printed_equation_inconsistent_at_reference_energies(self, molecules):
        # the as-printed closed-form energy equation misses its own
        # reference eigenvalues by orders of magnitude under either
        # n-polynomial; the engine-route residual at the same energies is
        # bounded by the table's mass rounding (<= 0.13)
        for name, m in molecules.items():
            for n in GOLDEN_NS:
                e = GOLDEN_TH[name][n] + m.d_e
                printed = printed_energy_equation_residual(n, e, m, n_poly="printed")
                derived = printed_energy_equation_residual(n, e, m, n_poly="derived")
                assert abs(printed) > 1e3
                assert abs(derived) > 1e3
                engine = energy_residual(n, derive_coefficients(nu_base_for_th(m, e)))
                assert abs(engine) < 0.5

    def test_unknown_variant_rejected(self, molecules):
        with pytest.raises(ValueError):
            printed_energy_equation_residual(0, 1.0, molecules["HF"], n_poly="other")


class TestNMax:
    def test_hf(self, molecules):
        cap = n_max(molecules["HF"])
        assert cap == 25
        assert th_energy_closed(cap, molecules["HF"]).energy < molecules["HF"].d_e
        with pytest.raises(UnboundLevelError):
            th_energy_closed(cap + 1, molecules["HF"])


class TestMorseVariant:
    def test_fields(self, molecules):
        m = molecules["O2"]
        mv = morse_variant(m)
        assert mv.c_h == 0.0
        assert mv.b_h == m.beta
        assert mv.beta == m.beta
        assert mv.d_e == m.d_e and mv.mu == m.mu
