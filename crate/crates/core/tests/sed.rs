use dispersive_core::absorbing::e_field_spectrum;
use dispersive_core::dispersion::DispersionModel;
use dispersive_core::sed::{
    commutator_envelope, commutator_envelope_quadrature, energy_from_spectrum, langevin_force_spectrum,
    oscillator_energy_analytic, reconstruct_field_spectrum, sample_noise_polarization, simulate_oscillator,
    simulate_trajectory, zero_point_energy_closed_form, ForceSpectrum, NoiseGrid, OscillatorParams, RadialGrid,
    SimulationConfig,
};
use dispersive_core::thermal::ThermalState;
use proptest::prelude::*;

fn params(gamma: f64) -> OscillatorParams {
    OscillatorParams::new(1.0, 1.0, gamma, 50.0).unwrap()
}

// 30-digit mpmath quadratures of the stationary energy for m = ω₀ = 1,
// γ = 0.1, ω_c = 50.
const REF_ZERO_POINT: f64 = 1.637_173_950_098_389_4;
const REF_THERMAL_AT_T1: f64 = 1.729_954_842_754_17;
// Same with γ = 1e-3, T = 1, both parts.
const REF_WEAK_COUPLING_T1: f64 = 3.247_153_569_940_852_8;

#[test]
fn force_spectrum_examples() {
    let p = params(0.1);
    let s = langevin_force_spectrum(&p, 0.0, 1.0).unwrap();
    assert!((s - 0.1 / std::f64::consts::PI).abs() < 1e-15);
    assert_eq!(langevin_force_spectrum(&p, 0.0, 60.0).unwrap(), 0.0);
    let hot = langevin_force_spectrum(&p, 1.0, 1.0).unwrap();
    assert!((hot / s - 1.0 / (0.5f64).tanh()).abs() < 1e-12);
}

#[test]
fn oscillator_energy_matches_reference_quadrature() {
    let p = params(0.1);
    let e0 = oscillator_energy_analytic(&p, &ThermalState::zero()).unwrap();
    assert!((e0.zero_point - REF_ZERO_POINT).abs() < 1e-10 * REF_ZERO_POINT);
    assert_eq!(e0.thermal, 0.0);
    let e1 = oscillator_energy_analytic(&p, &ThermalState::new(1.0).unwrap()).unwrap();
    assert!((e1.thermal - REF_THERMAL_AT_T1).abs() < 1e-10 * REF_THERMAL_AT_T1);
}

#[test]
fn weak_coupling_recovers_free_oscillator() {
    let p = params(1e-3);
    let e = oscillator_energy_analytic(&p, &ThermalState::new(1.0).unwrap()).unwrap();
    assert!((e.total() - REF_WEAK_COUPLING_T1).abs() < 1e-8 * REF_WEAK_COUPLING_T1);
    let free = 1.5 + 3.0 / (1f64.exp() - 1.0);
    assert!((e.total() / free - 1.0).abs() < 5e-3);
    let cold = oscillator_energy_analytic(&p, &ThermalState::zero()).unwrap();
    assert!((cold.total() / 1.5 - 1.0).abs() < 5e-3);
}

#[test]
fn zero_point_closed_form_tracks_quadrature() {
    for gamma in [0.01, 0.1, 0.5] {
        let p = OscillatorParams::new(1.0, 1.0, gamma, 1000.0).unwrap();
        let quad = oscillator_energy_analytic(&p, &ThermalState::zero()).unwrap().zero_point;
        // Closed form drops O(γ ω₀²/ω_c²) terms.
        assert!((quad / zero_point_energy_closed_form(&p) - 1.0).abs() < 1e-5, "γ={gamma}");
    }
}

#[test]
fn spectrum_energy_agrees_with_energy_formula() {
    let p = params(0.2);
    for state in [ThermalState::zero(), ThermalState::new(0.7).unwrap()] {
        let direct = oscillator_energy_analytic(&p, &state).unwrap().total();
        let via = energy_from_spectrum(&p, &ForceSpectrum::Quantum(state)).unwrap().total();
        assert!((direct / via - 1.0).abs() < 1e-10);
    }
}

#[test]
fn classical_equipartition() {
    // White noise 2mγT/π gives ½T per quadratic degree of freedom once the
    // cutoff is far above ω₀.
    let p = OscillatorParams::new(1.0, 1.0, 0.1, 1e4).unwrap();
    let e = energy_from_spectrum(&p, &ForceSpectrum::classical(2.0).unwrap()).unwrap();
    assert!((e.kinetic / 3.0 - 1.0).abs() < 1e-4, "{}", e.kinetic);
    assert!((e.potential / 3.0 - 1.0).abs() < 1e-4, "{}", e.potential);
}

#[test]
fn commutator_quadrature_matches_closed_form() {
    for gamma in [0.05, 0.2] {
        let p = params(gamma);
        for tau in [0.0, 1.0, 5.0, 20.0] {
            let exact = commutator_envelope(&p, tau).unwrap();
            let quad = commutator_envelope_quadrature(&p, tau).unwrap();
            assert!((exact - quad).abs() < 1e-6, "γ={gamma} τ={tau}: {exact} vs {quad}");
        }
        assert!((commutator_envelope_quadrature(&p, 0.0).unwrap() - 1.0).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_is_even_and_bounded(gamma in 0.01f64..1.5, tau in 0.0f64..30.0) {
        let p = params(gamma);
        let a = commutator_envelope(&p, tau).unwrap();
        let b = commutator_envelope(&p, -tau).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn force_spectrum_positive_and_monotone_in_temperature(w in 0.01f64..49.0, t in 0.0f64..10.0) {
        let p = params(0.1);
        let cold = langevin_force_spectrum(&p, t, w).unwrap();
        let hot = langevin_force_spectrum(&p, t + 0.5, w).unwrap();
        prop_assert!(cold > 0.0 && hot >= cold);
    }
}

#[test]
fn trajectories_are_reproducible_by_index() {
    let p = params(0.2);
    let cfg = SimulationConfig::new(0.005, 12000, 11);
    let spec = ForceSpectrum::quantum(0.0).unwrap();
    let a = simulate_trajectory(&p, &spec, &cfg, 3).unwrap();
    let b = simulate_trajectory(&p, &spec, &cfg, 3).unwrap();
    let c = simulate_trajectory(&p, &spec, &cfg, 4).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.position, c.position);
    assert_eq!(a.position.len(), 12001);
}

#[test]
fn silent_oscillator_stays_at_rest() {
    let p = params(0.0);
    let cfg = SimulationConfig::new(0.005, 100, 1).with_burn_in(0.0);
    let ens = simulate_oscillator(&p, &ForceSpectrum::Silent, &cfg, 2).unwrap();
    assert_eq!(ens.energy().value, 0.0);
}

#[test]
fn simulation_rejects_bad_configs() {
    let p = params(0.1);
    let spec = ForceSpectrum::quantum(0.0).unwrap();
    // dt·ω_c too large for the noise band.
    assert!(simulate_oscillator(&p, &spec, &SimulationConfig::new(0.02, 20000, 1), 1).is_err());
    // Shorter than the 10/γ burn-in.
    assert!(simulate_oscillator(&p, &spec, &SimulationConfig::new(0.005, 1000, 1), 1).is_err());
    // Noise without damping.
    let undamped = params(0.0);
    assert!(simulate_oscillator(&undamped, &spec, &SimulationConfig::new(0.005, 1000, 1).with_burn_in(1.0), 1).is_err());
}

#[test]
fn monte_carlo_energy_and_power_balance() {
    let p = OscillatorParams::new(1.0, 1.0, 0.4, 20.0).unwrap();
    let cfg = SimulationConfig::new(0.01, 8191, 2024).with_lag_steps(100);
    for temperature in [0.0, 1.0] {
        let spec = ForceSpectrum::quantum(temperature).unwrap();
        let ens = simulate_oscillator(&p, &spec, &cfg, 400).unwrap();
        let target = energy_from_spectrum(&p, &spec).unwrap().total();
        let e = ens.energy();
        assert!(e.sigmas_from(target) < 3.5, "T={temperature}: {} ± {} vs {target}", e.value, e.std_error);
        let balance = ens.power_balance();
        assert!(balance.sigmas_from(0.0) < 3.5, "{balance:?}");
        let stationary = ens.stationarity();
        assert!(stationary.sigmas_from(0.0) < 3.5, "{stationary:?}");
    }
}

fn broad_lorentz() -> DispersionModel {
    DispersionModel::lorentz(0.5, 1.0, 0.5).unwrap()
}

#[test]
fn noise_amplitude_variance_matches_rytov_target() {
    let model = broad_lorentz();
    let grid = NoiseGrid::new(vec![1.0], 0.02, vec![RadialGrid::uniform(8, 4.0).unwrap()]).unwrap();
    let n = 4000;
    let ens = sample_noise_polarization(&model, &grid, &ThermalState::zero(), n, 5).unwrap();
    let mut sums = [0.0; 8];
    let mut cross = [dispersive_core::Complex64::new(0.0, 0.0); 8];
    for i in 0..n as u64 {
        let r = ens.realization(i);
        for (c, cell) in r.cells[0].iter().enumerate() {
            sums[c] += cell.amplitude[0].norm_sqr() + cell.amplitude[1].norm_sqr();
            cross[c] += cell.amplitude[0].conj() * cell.amplitude[1];
        }
    }
    for c in 0..8 {
        let target = ens.target_variance(0, c);
        let mean = sums[c] / (2.0 * n as f64);
        assert!((mean / target - 1.0).abs() < 5.0 / (n as f64).sqrt(), "cell {c}");
        // Independent polarizations: |⟨K₁*K₂⟩| ~ target/√n.
        assert!(cross[c].norm() / n as f64 / target < 3.0 / (n as f64).sqrt() * 1.5);
    }
}

#[test]
fn noise_variance_scales_with_coth() {
    let model = broad_lorentz();
    let grid = NoiseGrid::adaptive(&model, vec![0.5, 1.5], 0.02).unwrap();
    let cold = sample_noise_polarization(&model, &grid, &ThermalState::zero(), 1, 0).unwrap();
    let warm = sample_noise_polarization(&model, &grid, &ThermalState::new(0.8).unwrap(), 1, 0).unwrap();
    for (band, w) in [0.5f64, 1.5].into_iter().enumerate() {
        let ratio = warm.target_variance(band, 3) / cold.target_variance(band, 3);
        assert!((ratio - 1.0 / (w / 1.6).tanh()).abs() < 1e-12);
    }
}

#[test]
fn noise_rejects_lossless_media_and_degenerate_grids() {
    let lossless = DispersionModel::lorentz(0.5, 1.0, 0.0).unwrap();
    let grid = NoiseGrid::new(vec![0.5], 0.02, vec![RadialGrid::uniform(10, 5.0).unwrap()]).unwrap();
    assert!(sample_noise_polarization(&lossless, &grid, &ThermalState::zero(), 10, 1).is_err());
    let r = RadialGrid::uniform(10, 5.0).unwrap();
    assert!(NoiseGrid::new(vec![1.0, 1.0], 0.02, vec![r.clone(), r]).is_err());
}

#[test]
fn silent_sources_give_zero_spectrum() {
    let model = broad_lorentz();
    let grid = NoiseGrid::adaptive(&model, vec![1.0], 0.02).unwrap();
    let ens = sample_noise_polarization(&model, &grid, &ThermalState::zero(), 3, 1).unwrap();
    let silent = ens.silent_realization();
    let est = ens.estimate_from((0..3).map(|_| ens.field_of(&silent))).unwrap();
    assert_eq!(est[0].value, 0.0);
}

#[test]
fn reconstructed_spectrum_matches_closed_form() {
    let model = broad_lorentz();
    let omegas = vec![0.5, 1.0, 1.5];
    let grid = NoiseGrid::adaptive(&model, omegas.clone(), 0.02).unwrap();
    let ens = sample_noise_polarization(&model, &grid, &ThermalState::zero(), 1500, 77).unwrap();
    let est = reconstruct_field_spectrum(&ens).unwrap();
    for (e, w) in est.iter().zip(omegas) {
        let target = e_field_spectrum(&model, w).unwrap();
        assert!(!e.resolution_warning, "{e:?}");
        assert!((e.expected / target - 1.0).abs() < 2e-3, "{e:?} vs {target}");
        assert!((e.value - target).abs() < 4.0 * e.std_error, "{e:?} vs {target}");
        assert!(e.std_error / target < 0.05);
    }
}

#[test]
fn coarse_radial_grid_triggers_warning() {
    let model = broad_lorentz();
    let grid = NoiseGrid::new(vec![1.0], 0.02, vec![RadialGrid::uniform(6, 30.0).unwrap()]).unwrap();
    let ens = sample_noise_polarization(&model, &grid, &ThermalState::zero(), 2, 1).unwrap();
    let est = reconstruct_field_spectrum(&ens).unwrap();
    assert!(est[0].resolution_warning);
}

#[test]
fn classical_ensemble_reaches_equipartition() {
    // ½T per component in each store, up to the share of the white spectrum
    // cut off above ω_c.
    let p = OscillatorParams::new(1.0, 1.0, 0.4, 20.0).unwrap();
    let cfg = SimulationConfig::new(0.01, 8191, 99).with_lag_steps(100);
    let t = 0.7;
    let spec = ForceSpectrum::classical(t).unwrap();
    let ens = simulate_oscillator(&p, &spec, &cfg, 400).unwrap();
    let target = energy_from_spectrum(&p, &spec).unwrap();
    assert!((target.potential / (1.5 * t) - 1.0).abs() < 1e-3);
    assert!((target.kinetic / (1.5 * t) - 1.0).abs() < 0.02);
    let (k, v) = (ens.kinetic(), ens.potential());
    assert!(k.sigmas_from(target.kinetic) < 3.0, "{k:?}");
    assert!(v.sigmas_from(1.5 * t) < 3.0, "{v:?}");
}

#[test]
fn estimators_are_bit_reproducible() {
    let p = params(0.4);
    let cfg = SimulationConfig::new(0.005, 8191, 5).with_lag_steps(100);
    let spec = ForceSpectrum::quantum(0.5).unwrap();
    let a = simulate_oscillator(&p, &spec, &cfg, 8).unwrap();
    let b = simulate_oscillator(&p, &spec, &cfg, 8).unwrap();
    assert_eq!(a.energy(), b.energy());
    assert_eq!(a.power_balance(), b.power_balance());

    let model = broad_lorentz();
    let grid = NoiseGrid::adaptive(&model, vec![1.0], 0.02).unwrap();
    let first = sample_noise_polarization(&model, &grid, &ThermalState::zero(), 20, 3).unwrap();
    let second = sample_noise_polarization(&model, &grid, &ThermalState::zero(), 20, 3).unwrap();
    assert_eq!(reconstruct_field_spectrum(&first).unwrap(), reconstruct_field_spectrum(&second).unwrap());
}

#[test]
fn standard_error_falls_as_inverse_root_n() {
    let model = broad_lorentz();
    let grid = NoiseGrid::new(vec![1.0], 0.02, vec![RadialGrid::uniform(40, 10.0).unwrap()]).unwrap();
    let ens = sample_noise_polarization(&model, &grid, &ThermalState::zero(), 10_000, 8).unwrap();
    let scaled: Vec<f64> = [100u64, 1000, 10_000]
        .iter()
        .map(|&n| {
            let e = ens.estimate_from((0..n).map(|i| ens.field_sample(i))).unwrap();
            e[0].std_error * (n as f64).sqrt() / e[0].expected
        })
        .collect();
    for s in &scaled[..2] {
        assert!((s / scaled[2] - 1.0).abs() < 0.2, "{scaled:?}");
    }
}

#[test]
fn noise_bands_are_mutually_independent() {
    let model = broad_lorentz();
    let r = RadialGrid::uniform(4, 3.0).unwrap();
    let grid = NoiseGrid::new(vec![0.8, 1.2], 0.02, vec![r.clone(), r]).unwrap();
    let n = 4000;
    let ens = sample_noise_polarization(&model, &grid, &ThermalState::zero(), n, 12).unwrap();
    for cell in 0..4 {
        let mut cross = dispersive_core::Complex64::new(0.0, 0.0);
        for i in 0..n as u64 {
            let r = ens.realization(i);
            cross += r.cells[0][cell].amplitude[0].conj() * r.cells[1][cell].amplitude[0];
        }
        // Each term has mean 0 and variance v₀v₁; the real and imaginary
        // parts each carry half of it.
        let sigma = (ens.target_variance(0, cell) * ens.target_variance(1, cell) / (2.0 * n as f64)).sqrt();
        let mean = cross / n as f64;
        assert!(mean.re.abs() < 3.0 * sigma && mean.im.abs() < 3.0 * sigma, "cell {cell}: {mean}");
    }
}

#[test]
fn strong_absorption_needs_only_a_coarse_grid() {
    // ε(1) = 1 + 2.5i: the resonant shell is wide.
    let model = DispersionModel::lorentz(0.5, 1.0, 0.1).unwrap();
    assert!((model.epsilon(1.0).unwrap().im - 2.5).abs() < 1e-12);
    let grid = NoiseGrid::new(vec![1.0], 0.02, vec![RadialGrid::uniform(400, 200.0).unwrap()]).unwrap();
    let ens = sample_noise_polarization(&model, &grid, &ThermalState::zero(), 4000, 21).unwrap();
    let e = &reconstruct_field_spectrum(&ens).unwrap()[0];
    let target = e_field_spectrum(&model, 1.0).unwrap();
    assert!((e.expected / target - 1.0).abs() < 0.02, "{e:?} vs {target}");
    assert!((e.value - target).abs() < 4.0 * e.std_error, "{e:?} vs {target}");
}
