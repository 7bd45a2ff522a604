import numpy as np
import pytest
from scipy import integrate

from thspec import (
    DomainError,
    derive_coefficients,
    morse_variant,
    nu_base_for_th,
    radial_wavefunction,
    tau_prime,
    th_energy,
)


def independent_norm(wf, limit=400):
    """Adaptive-quadrature check of the normalization, independent of the
    fixed-panel rule used to compute it."""
    r_lo, r_hi = wf.domain
    m = wf.molecule
    hints = [x for x in (m.r_e - 0.3, m.r_e, m.r_e + 0.5, m.r_e + 2.0) if r_lo < x < r_hi]
    value, abserr = integrate.quad(
        lambda r: wf.evaluate(r) ** 2,
        r_lo,
        r_hi,
        points=hints,
        limit=limit,
        epsabs=1e-11,
        epsrel=1e-11,
    )
    return value, abserr


class TestGroundState:
    def test_nodeless_and_non_negative(self, molecules):
        wf = radial_wavefunction(0, molecules["HF"])
        assert wf.count_nodes() == 0
        _, values = wf.sample(2000)
        assert np.all(values >= 0.0)
        assert values.max() > 0.0

    def test_polynomial_factor_is_constant(self, molecules):
        wf = radial_wavefunction(0, molecules["HF"])
        _, poly = wf._log_factor_and_poly(np.array([0.8, 1.0, 1.5]))
        assert np.all(poly == 1.0)


class TestNodeCounts:
    def test_hf_n2_has_two_interior_zeros(self, molecules):
        wf = radial_wavefunction(2, molecules["HF"])
        assert wf.count_nodes() == 2

    @pytest.mark.parametrize("name,n", [("I2", 7), ("O2+", 5), ("H2", 4)])
    def test_negative_and_positive_shape_constants(self, molecules, name, n):
        wf = radial_wavefunction(n, molecules[name])
        assert wf.count_nodes() == n

    def test_morse_branch(self, molecules):
        wf = radial_wavefunction(3, morse_variant(molecules["H2"]))
        assert wf.form.laguerre_limit
        assert wf.count_nodes() == 3


class TestNormalization:
    @pytest.mark.parametrize("name,n", [("HF", 0), ("HF", 5), ("I2", 7), ("O2", 3)])
    def test_unit_norm_against_adaptive_quadrature(self, molecules, name, n):
        wf = radial_wavefunction(n, molecules[name])
        value, abserr = independent_norm(wf)
        assert abserr < 1e-8
        assert value == pytest.approx(1.0, abs=1e-8)

    def test_norm_positive(self, molecules):
        wf = radial_wavefunction(1, molecules["N2"])
        assert wf.norm > 0.0
        assert np.isfinite(wf.log_norm)

    def test_level_consistent_with_spectrum(self, molecules):
        hf = molecules["HF"]
        wf = radial_wavefunction(2, hf)
        assert wf.level.energy == th_energy(2, hf).energy
        assert wf.n == 2


class TestApplicabilityCondition:
    def test_tau_prime_negative_at_accepted_levels(self, molecules):
        for name in ("HF", "I2"):
            m = molecules[name]
            for n in (0, 4, 7):
                level = th_energy(n, m)
                c = derive_coefficients(nu_base_for_th(m, level.energy))
                assert tau_prime(c) < 0.0


class TestEvaluateDomain:
    def test_non_positive_radius_rejected(self, molecules):
        wf = radial_wavefunction(0, molecules["HF"])
        with pytest.raises(DomainError):
            wf.evaluate(-1.0)

    def test_wrong_side_of_pole_rejected(self, pole_molecule):
        wf = radial_wavefunction(0, pole_molecule)
        r_lo, _ = wf.domain
        with pytest.raises(DomainError):
            wf.evaluate(0.5 * r_lo)

    def test_sample_covers_domain(self, molecules):
        wf = radial_wavefunction(0, molecules["O2"])
        r, values = wf.sample(100)
        assert r[0] == wf.domain[0] and r[-1] == wf.domain[1]
        assert values.shape == r.shape
