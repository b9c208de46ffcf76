import math

import numpy as np
import pytest
from scipy.integrate import quad

from mwphoton.cavity import Resonator, correlator, correlator_value
from mwphoton.chains import BeamSplitterStage, attenuate
from mwphoton.defaults import SAMPLE_QUBIT
from mwphoton.qubit import (
    DispersiveSystem,
    EnvelopeForm,
    QubitParams,
    ac_stark_shift,
    accumulated_phase,
    critical_photons,
    dephasing_rate,
    dispersive_shift,
    flux_tuned_frequency,
    photons_from_stark_shift,
    purcell_rate,
    ramsey_envelope,
    simulate_ramsey,
)
from mwphoton.states import StateKind

TWO_PI = 2.0 * math.pi


class TestDispersiveShift:
    def test_reference_sample(self):
        chi = dispersive_shift(67e6, 850e6, -315e6)
        assert chi == pytest.approx(-3.11e6, rel=0.01)

    def test_two_level_limit(self):
        chi = dispersive_shift(67e6, 850e6, -1e18)
        assert chi == pytest.approx(67e6 ** 2 / 850e6, rel=1e-6)

    def test_negative_detuning_arithmetic(self):
        # direct evaluation: (g^2/delta) * alpha/(delta + alpha)
        g, delta, alpha = 67e6, -850e6, -315e6
        expected = (g * g / delta) * (alpha / (delta + alpha))
        assert expected == pytest.approx(-1.42797e6, rel=1e-4)
        assert dispersive_shift(g, delta, alpha) == pytest.approx(expected, rel=1e-12)

    def test_zero_detuning_rejected(self):
        with pytest.raises(ZeroDivisionError):
            dispersive_shift(67e6, 0.0, -315e6)

    def test_straddling_point_named(self):
        with pytest.raises(ZeroDivisionError, match="straddling"):
            dispersive_shift(67e6, 315e6, -315e6)


class TestAccumulatedPhase:
    def test_zero_pull(self):
        assert accumulated_phase(0.0, 8.5e6) == 0.0

    def test_reference_sample(self):
        theta0 = accumulated_phase(-3.11e6, 8.5e6)
        assert theta0 == pytest.approx(-0.632, abs=0.001)
        assert 8.5e6 * theta0 ** 2 == pytest.approx(3.4e6, rel=0.02)

    def test_quarter_turn(self):
        assert accumulated_phase(4.25e6, 8.5e6) == pytest.approx(math.pi / 4.0)

    def test_odd_in_chi(self):
        assert accumulated_phase(-2e6, 8.5e6) == -accumulated_phase(2e6, 8.5e6)


class TestFluxTuning:
    def test_sweet_spot(self):
        assert flux_tuned_frequency(SAMPLE_QUBIT, 0.0) == pytest.approx(6.92e9)

    def test_node_at_half_quantum(self):
        phi0 = SAMPLE_QUBIT.flux_quantum
        # cos(pi/2) rounds to ~6e-17, so the node sits at sqrt of that times 6.92 GHz
        assert flux_tuned_frequency(SAMPLE_QUBIT, phi0 / 2.0) == pytest.approx(0.0, abs=100.0)

    def test_quarter_quantum(self):
        phi0 = SAMPLE_QUBIT.flux_quantum
        expected = math.sqrt(math.cos(math.pi / 4.0))  # = 0.8409
        assert flux_tuned_frequency(SAMPLE_QUBIT, phi0 / 4.0) == pytest.approx(
            expected * 6.92e9, rel=1e-9
        )

    def test_periodicity(self):
        phi0 = SAMPLE_QUBIT.flux_quantum
        assert flux_tuned_frequency(SAMPLE_QUBIT, 0.3 * phi0) == pytest.approx(
            flux_tuned_frequency(SAMPLE_QUBIT, 1.3 * phi0), rel=1e-9
        )


class TestCriticalPhotons:
    def test_reference_sample(self):
        assert critical_photons(850e6, 67e6) == pytest.approx(40.0, rel=0.02)

    def test_unit_value_at_double_coupling(self):
        assert critical_photons(2.0 * 67e6, 67e6) == 1.0

    def test_half_detuning(self):
        assert critical_photons(425e6, 67e6) == pytest.approx(10.06, rel=0.001)


class TestPurcellRate:
    def test_reference_sample(self):
        rate = purcell_rate(8.55e6, 67e6, 850e6)
        assert rate == pytest.approx(53e3, rel=0.03)

    def test_zero_coupling(self):
        assert purcell_rate(8.55e6, 0.0, 850e6) == 0.0

    def test_inverse_square_detuning(self):
        assert purcell_rate(8.55e6, 67e6, 2 * 850e6) == pytest.approx(
            purcell_rate(8.55e6, 67e6, 850e6) / 4.0
        )


class TestStarkShift:
    def test_zero_photons(self):
        assert ac_stark_shift(-3.11e6, 0.0) == 0.0

    def test_single_photon_shift(self):
        assert ac_stark_shift(-3.11e6, 1.0) == pytest.approx(-6.22e6)

    def test_calibration_round_trip(self):
        shift = ac_stark_shift(-3.11e6, 0.73)
        assert photons_from_stark_shift(-3.11e6, shift) == pytest.approx(0.73, rel=1e-12)


class TestDispersiveSystem:
    def test_derived_parameters(self, system):
        assert system.detuning == pytest.approx(850e6)
        assert system.chi == pytest.approx(-3.11e6, rel=0.01)
        assert system.theta0 == math.atan(2.0 * system.chi / system.resonator.external_rate)

    def test_relaxation_rate_by_kind(self, system):
        q = system.qubit
        assert q.relaxation_rate(StateKind.THERMAL, 1.0) == pytest.approx(4.7e6)
        assert q.relaxation_rate(StateKind.COHERENT, 1.0) == pytest.approx(3.87e6)

    def test_anharmonicity_sign_enforced(self):
        with pytest.raises(ValueError):
            QubitParams(6.92e9, 67e6, +315e6, 3.9e6, {}, 0.05e6)


class TestDephasingRate:
    def test_thermal_small_n_slope(self, system):
        scale = system.resonator.external_rate * system.theta0 ** 2
        eps = 1e-7
        slope = dephasing_rate(StateKind.THERMAL, eps, system) / eps
        assert slope == pytest.approx(scale, rel=1e-5)
        assert scale == pytest.approx(3.4e6, rel=0.02)

    @pytest.mark.parametrize("n_r", [0.05, 0.4, 1.0, 1.5])
    def test_coherent_exactly_twice_shot(self, n_r, system):
        coherent = dephasing_rate(StateKind.COHERENT, n_r, system)
        shot = dephasing_rate(StateKind.SHOT_NOISE, n_r, system)
        assert coherent == 2.0 * shot

    @pytest.mark.parametrize("kind", list(StateKind))
    def test_zero_photons_zero_rate(self, kind, system):
        assert dephasing_rate(kind, 0.0, system) == 0.0

    @pytest.mark.parametrize("n_r", [0.1, 0.7, 1.5])
    def test_super_poissonian_excess(self, n_r, system):
        excess = dephasing_rate(StateKind.THERMAL, n_r, system) - dephasing_rate(
            StateKind.SHOT_NOISE, n_r, system
        )
        scale = system.resonator.external_rate * system.theta0 ** 2
        assert excess == pytest.approx(scale * n_r * n_r, rel=1e-12)

    def test_factor_two_holds_for_random_parameter_sets(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            qubit = QubitParams(
                max_frequency=rng.uniform(5e9, 8e9),
                coupling=rng.uniform(30e6, 120e6),
                anharmonicity=-rng.uniform(150e6, 400e6),
                intrinsic_relaxation=rng.uniform(0.5e6, 5e6),
                relaxation_per_photon={},
                intrinsic_dephasing=rng.uniform(0.0, 1e6),
            )
            resonator = Resonator(rng.uniform(4e9, 7e9), rng.uniform(2e6, 20e6))
            system = DispersiveSystem.derive(qubit, resonator)
            n_r = rng.uniform(0.01, 2.0)
            assert dephasing_rate(StateKind.COHERENT, n_r, system) == pytest.approx(
                2.0 * dephasing_rate(StateKind.SHOT_NOISE, n_r, system), rel=1e-12
            )

    def test_background_mixing_enhances_slope(self, system):
        stage = BeamSplitterStage(transmissivity=0.9, background_photons=0.15)
        n_b = 0.3
        plain = dephasing_rate(StateKind.THERMAL, n_b, system)
        mixed = dephasing_rate(StateKind.THERMAL, n_b, system, background=stage)
        scale = system.resonator.external_rate * system.theta0 ** 2
        _, variance = attenuate(StateKind.THERMAL, n_b, stage)
        assert mixed == pytest.approx(scale * variance, rel=1e-12)
        assert mixed > 0
        transparent = BeamSplitterStage(1.0, 0.15)
        assert dephasing_rate(
            StateKind.THERMAL, n_b, system, background=transparent
        ) == pytest.approx(plain, rel=1e-12)


class TestRamseyEnvelope:
    def test_unity_at_zero_delay(self, system):
        for form in EnvelopeForm:
            assert ramsey_envelope(system, StateKind.THERMAL, 0.8, 0.0, form=form) == 1.0

    @pytest.mark.parametrize(
        "kind,n_r", [(StateKind.THERMAL, 0.3), (StateKind.COHERENT, 0.5), (StateKind.SHOT_NOISE, 0.4)]
    )
    def test_gaussian_integral_asymptotic_log_slope(self, kind, n_r, system):
        c = correlator(kind, n_r, system.resonator)
        k_ang = TWO_PI * c.decay_rate
        t1, t2 = 8.0 / k_ang, 12.0 / k_ang
        e1 = ramsey_envelope(system, kind, n_r, t1, form=EnvelopeForm.GAUSSIAN_INTEGRAL)
        e2 = ramsey_envelope(system, kind, n_r, t2, form=EnvelopeForm.GAUSSIAN_INTEGRAL)
        slope = (math.log(e1) - math.log(e2)) / (t2 - t1)
        gamma1 = system.qubit.relaxation_rate(kind, n_r)
        expected = TWO_PI * (
            gamma1 / 2.0
            + system.qubit.intrinsic_dephasing
            + dephasing_rate(kind, n_r, system)
        )
        assert slope == pytest.approx(expected, rel=0.01)

    def test_phase_variance_matches_direct_quadrature(self, system):
        # independent oracle: numerically integrate 2 K^2 (tau - s) C(s)
        kind, n_r, tau = StateKind.THERMAL, 0.7, 60e-9
        c = correlator(kind, n_r, system.resonator)
        kick = TWO_PI * system.resonator.external_rate * system.theta0

        def integrand(s):
            return 2.0 * kick * kick * (tau - s) * correlator_value(c, s)

        oracle, _ = quad(integrand, 0.0, tau, limit=200)
        asym = ramsey_envelope(system, kind, n_r, tau, form=EnvelopeForm.ASYMPTOTIC_RATE)
        gauss = ramsey_envelope(system, kind, n_r, tau, form=EnvelopeForm.GAUSSIAN_INTEGRAL)
        gamma1 = system.qubit.relaxation_rate(kind, n_r)
        base = TWO_PI * (gamma1 / 2.0 + system.qubit.intrinsic_dephasing) * tau
        assert gauss == pytest.approx(math.exp(-base - oracle / 2.0), rel=1e-8)
        assert asym == pytest.approx(
            math.exp(-base - TWO_PI * dephasing_rate(kind, n_r, system) * tau), rel=1e-12
        )

    def test_exponent_additivity(self, system):
        # the envelope factorizes into relaxation, intrinsic, and photon parts
        kind, n_r, tau = StateKind.THERMAL, 0.5, 80e-9
        full = ramsey_envelope(system, kind, n_r, tau)
        gamma1 = system.qubit.relaxation_rate(kind, n_r)
        relax = math.exp(-TWO_PI * (gamma1 / 2.0 + system.qubit.intrinsic_dephasing) * tau)
        photon = math.exp(-TWO_PI * dephasing_rate(kind, n_r, system) * tau)
        assert full == pytest.approx(relax * photon, rel=1e-12)

    @pytest.mark.parametrize("kind", [StateKind.THERMAL, StateKind.COHERENT, StateKind.SHOT_NOISE])
    def test_finite_time_deficit(self, kind, system):
        # finite correlator memory only ever slows the decay down
        n_r = 0.9
        taus = np.geomspace(1e-10, 3e-6, 40)
        gauss = np.array(
            [ramsey_envelope(system, kind, n_r, t, form=EnvelopeForm.GAUSSIAN_INTEGRAL) for t in taus]
        )
        asym = np.array(
            [ramsey_envelope(system, kind, n_r, t, form=EnvelopeForm.ASYMPTOTIC_RATE) for t in taus]
        )
        assert np.all(gauss >= asym)
        c = correlator(kind, n_r, system.resonator)
        late = 20.0 / (TWO_PI * c.decay_rate)
        ratio_slope = (
            math.log(
                ramsey_envelope(system, kind, n_r, late, form=EnvelopeForm.GAUSSIAN_INTEGRAL)
                / ramsey_envelope(system, kind, n_r, 1.5 * late, form=EnvelopeForm.GAUSSIAN_INTEGRAL)
            )
            / math.log(
                ramsey_envelope(system, kind, n_r, late, form=EnvelopeForm.ASYMPTOTIC_RATE)
                / ramsey_envelope(system, kind, n_r, 1.5 * late, form=EnvelopeForm.ASYMPTOTIC_RATE)
            )
        )
        assert ratio_slope == pytest.approx(1.0, rel=1e-6)

    def test_single_time_integral_saturates(self, system):
        # the saturating variant loses contrast but stops dephasing at long times
        kind, n_r = StateKind.THERMAL, 1.0
        c = correlator(kind, n_r, system.resonator)
        kick = TWO_PI * system.resonator.external_rate * system.theta0
        # <dphi^2>/2 saturates at kick^2 Var / k
        ceiling = kick * kick * c.variance / (TWO_PI * c.decay_rate)
        zero_rate_system = DispersiveSystem(
            QubitParams(6.92e9, 67e6, -315e6, 0.0, {}, 0.0),
            system.resonator,
            system.detuning,
            system.chi,
        )
        late = ramsey_envelope(
            zero_rate_system, kind, n_r, 1e-3,
            form=EnvelopeForm.GAUSSIAN_INTEGRAL, single_time_integral=True,
        )
        later = ramsey_envelope(
            zero_rate_system, kind, n_r, 2e-3,
            form=EnvelopeForm.GAUSSIAN_INTEGRAL, single_time_integral=True,
        )
        assert late == pytest.approx(later, rel=1e-9)  # saturated
        assert late == pytest.approx(math.exp(-ceiling), rel=1e-6)

    def test_negative_delay_rejected(self, system):
        with pytest.raises(ValueError):
            ramsey_envelope(system, StateKind.THERMAL, 0.5, -1e-9)


class TestSimulateRamsey:
    def test_pure_cosine_without_decay(self, system):
        quiet = DispersiveSystem(
            QubitParams(6.92e9, 67e6, -315e6, 0.0, {}, 0.0),
            system.resonator,
            system.detuning,
            system.chi,
        )
        taus = np.linspace(1e-9, 200e-9, 40)
        trace = simulate_ramsey(quiet, StateKind.VACUUM, 0.0, taus, fringe_detuning=25e6,
                                shots=100_000, seed=3)
        expected = 0.5 * (1.0 + np.cos(TWO_PI * 25e6 * taus))
        sigma = np.sqrt(np.clip(expected * (1 - expected), 1e-12, None) / 100_000) + 1e-4
        assert np.all(np.abs(trace[:, 1] - expected) < 5 * sigma)

    def test_hot_emitter_decays_faster(self, system):
        from mwphoton.states import ModeSpec, bose_einstein

        mode = ModeSpec(system.resonator.resonance_frequency)
        n_cold = bose_einstein(mode, 0.05)
        n_hot = bose_einstein(mode, 1.0)
        tau = 60e-9
        cold = ramsey_envelope(system, StateKind.THERMAL, n_cold, tau)
        hot = ramsey_envelope(system, StateKind.THERMAL, n_hot, tau)
        assert hot < 0.5 * cold

    def test_deterministic_given_seed(self, system):
        taus = np.linspace(1e-9, 150e-9, 30)
        a = simulate_ramsey(system, StateKind.THERMAL, 0.4, taus, shots=2000, seed=11)
        b = simulate_ramsey(system, StateKind.THERMAL, 0.4, taus, shots=2000, seed=11)
        np.testing.assert_array_equal(a, b)

    def test_fit_recovers_injected_decay(self, system):
        from mwphoton.analysis import fit_ramsey
        from mwphoton.qubit import dephasing_rate as rate

        n_r = 0.6
        gamma2 = (
            system.qubit.relaxation_rate(StateKind.THERMAL, n_r) / 2.0
            + system.qubit.intrinsic_dephasing
            + rate(StateKind.THERMAL, n_r, system)
        )
        tau_max = 3.0 / (TWO_PI * gamma2)
        taus = np.linspace(tau_max / 120, tau_max, 120)
        trace = simulate_ramsey(system, StateKind.THERMAL, n_r, taus, shots=10_000, seed=21)
        fit = fit_ramsey(trace)
        assert fit.converged
        assert abs(fit.parameters["gamma2"] - gamma2) < 3.0 * fit.std_error("gamma2")

    def test_empty_grid_rejected(self, system):
        with pytest.raises(ValueError):
            simulate_ramsey(system, StateKind.THERMAL, 0.4, [], shots=100, seed=0)
