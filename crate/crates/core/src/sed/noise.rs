//! Noise-polarization sources and the electric field they radiate.
//!
//! The source density `K(k, ω)` of an absorbing medium is sampled as
//! independent circular complex Gaussians on cells of `(ω, |k|, λ)` with the
//! Rytov variance `⟨|K|²⟩ = ħ ε_I (N + ½) / (2π³ Δω Δ³k)`. Each field
//! amplitude follows from the scalar transfer function
//! `(ω²/c²) / (k² - ε ω²/c²)`. Radial cells are labelled by `s = kc/ω`, so
//! the transfer is `1/(s² - ε)` and the resonant shell sits at `s ≈ n_R`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::stream_rng;
use crate::dispersion::DispersionModel;
use crate::math::RunningStats;
use crate::thermal::ThermalState;
use crate::units::{C, HBAR, PI};
use crate::{Error, Result};

/// Default outer edge of the radial grid in units of `ω/c`.
pub const DEFAULT_S_MAX: f64 = 1000.0;
/// Relative change between coarse and fine cell sums that triggers a
/// resolution warning.
pub const RESOLUTION_TOLERANCE: f64 = 1e-2;

/// Radial cell edges in `s = kc/ω`, strictly increasing from `s ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    edges: Vec<f64>,
}

impl RadialGrid {
    pub fn from_edges(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::invalid("k_grid", "need at least one cell"));
        }
        if !(edges[0] >= 0.0) || edges.iter().any(|s| !s.is_finite()) {
            return Err(Error::invalid("k_grid", "edges must be finite and non-negative"));
        }
        if edges.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("k_grid", "edges must be strictly increasing"));
        }
        Ok(Self { edges })
    }

    /// `cells` equal cells on `[0, s_max]`.
    pub fn uniform(cells: usize, s_max: f64) -> Result<Self> {
        if cells == 0 || !(s_max > 0.0) {
            return Err(Error::invalid("k_grid", "need cells > 0 and s_max > 0"));
        }
        Self::from_edges((0..=cells).map(|i| s_max * i as f64 / cells as f64).collect())
    }

    /// Fine uniform cells across the shell at `s = n_R`, width
    /// `min(0.05, n_I/10)` out to `2 max(n_R, 1) + 10 n_I`, then cells
    /// growing by 2% up to `s_max`.
    pub fn adaptive(index: Complex64, s_max: f64) -> Result<Self> {
        if !(index.im > 0.0) {
            return Err(Error::invalid("k_grid", "adaptive grid needs n_I > 0"));
        }
        let ds = (index.im / 10.0).min(0.05);
        let inner = 2.0 * index.re.max(1.0) + 10.0 * index.im;
        if !(s_max > inner) {
            return Err(Error::invalid("k_grid", "s_max must exceed the resonant shell"));
        }
        let cells = (inner / ds).ceil() as usize;
        let mut edges: Vec<f64> = (0..=cells).map(|i| inner * i as f64 / cells as f64).collect();
        let mut s = inner;
        while s < s_max {
            s = (s * 1.02).min(s_max);
            edges.push(s);
        }
        Self::from_edges(edges)
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn cells(&self) -> usize {
        self.edges.len() - 1
    }

    /// Grid with every other interior edge removed (keeps the last edge).
    fn coarsened(&self) -> Self {
        let mut edges: Vec<f64> = self.edges.iter().step_by(2).copied().collect();
        let last = *self.edges.last().expect("non-empty");
        if *edges.last().expect("non-empty") != last {
            edges.push(last);
        }
        Self { edges }
    }
}

/// Frequency cells and the radial grid used at each frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseGrid {
    pub omegas: Vec<f64>,
    pub d_omega: f64,
    pub radial: Vec<RadialGrid>,
}

impl NoiseGrid {
    pub fn new(omegas: Vec<f64>, d_omega: f64, radial: Vec<RadialGrid>) -> Result<Self> {
        if omegas.is_empty() || omegas.len() != radial.len() {
            return Err(Error::invalid("omega_grid", "need one radial grid per frequency"));
        }
        if !(d_omega > 0.0 && d_omega.is_finite()) {
            return Err(Error::invalid("d_omega", "must be positive"));
        }
        if omegas.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::invalid("omega_grid", "frequencies must be positive"));
        }
        let mut sorted = omegas.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[1] - w[0] < d_omega) {
            return Err(Error::invalid("omega_grid", "frequency cells overlap"));
        }
        Ok(Self {
            omegas,
            d_omega,
            radial,
        })
    }

    /// Adaptive radial grid at each frequency, built from the local index.
    pub fn adaptive(model: &DispersionModel, omegas: Vec<f64>, d_omega: f64) -> Result<Self> {
        let radial = omegas
            .iter()
            .map(|&w| RadialGrid::adaptive(model.index(w)?.complex(), DEFAULT_S_MAX))
            .collect::<Result<Vec<_>>>()?;
        Self::new(omegas, d_omega, radial)
    }
}

/// Per-cell data fixed by the model and grid.
#[derive(Debug, Clone, PartialEq)]
struct Band {
    omega: f64,
    epsilon: Complex64,
    /// `Δ³k` of each radial cell.
    volume: Vec<f64>,
    /// Transfer `1/(s² - ε)` at each cell midpoint.
    transfer: Vec<Complex64>,
    /// `⟨|K|²⟩` of each cell.
    variance: Vec<f64>,
}

impl Band {
    fn new(model: &DispersionModel, omega: f64, d_omega: f64, grid: &RadialGrid, state: &ThermalState) -> Result<Self> {
        let epsilon = model.epsilon(omega)?;
        if !(epsilon.im > 0.0) {
            return Err(Error::invalid("model", "noise polarization needs ε_I > 0"));
        }
        Ok(Self::build(omega, epsilon, d_omega, grid, state))
    }

    fn build(omega: f64, epsilon: Complex64, d_omega: f64, grid: &RadialGrid, state: &ThermalState) -> Self {
        let k_scale = (omega / C).powi(3);
        let strength = HBAR * epsilon.im * state.half_plus_occupation(omega) / (2.0 * PI.powi(3) * d_omega);
        let mut band = Self {
            omega,
            epsilon,
            volume: Vec::with_capacity(grid.cells()),
            transfer: Vec::with_capacity(grid.cells()),
            variance: Vec::with_capacity(grid.cells()),
        };
        for w in grid.edges().windows(2) {
            let dk3 = 4.0 * PI / 3.0 * k_scale * (w[1].powi(3) - w[0].powi(3));
            let s = 0.5 * (w[0] + w[1]);
            band.volume.push(dk3);
            band.transfer.push(Complex64::new(1.0, 0.0) / (Complex64::new(s * s, 0.0) - epsilon));
            band.variance.push(strength / dk3);
        }
        band
    }

    /// Expected `2Δω⟨|E|²⟩` from the cell sum, both polarizations.
    fn expected_spectrum(&self, d_omega: f64) -> f64 {
        let sum: f64 = (0..self.volume.len())
            .map(|i| self.transfer[i].norm_sqr() * self.variance[i] * self.volume[i].powi(2))
            .sum();
        2.0 * d_omega * 2.0 * sum
    }
}

/// Amplitudes of one realization: for each frequency and radial cell, the
/// unit wave vector and the two transverse source amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseRealization {
    pub index: u64,
    pub cells: Vec<Vec<SourceCell>>,
}

/// One sampled `(k, ω)` cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceCell {
    pub direction: [f64; 3],
    pub polarization: [[f64; 3]; 2],
    pub amplitude: [Complex64; 2],
}

/// Seeded, lazily generated set of noise-polarization realizations.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseEnsemble {
    pub grid: NoiseGrid,
    pub state: ThermalState,
    pub n_real: usize,
    pub seed: u64,
    bands: Vec<Band>,
}

fn unit_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-12 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Two unit vectors completing `k` to a right-handed orthonormal triad.
fn transverse_basis(k: [f64; 3]) -> [[f64; 3]; 2] {
    let axis = if k[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross(k, axis);
    let norm = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    let e1 = [e1[0] / norm, e1[1] / norm, e1[2] / norm];
    [e1, cross(k, e1)]
}

fn circular_gaussian(rng: &mut ChaCha8Rng, variance: f64) -> Complex64 {
    let scale = (0.5 * variance).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(scale * re, scale * im)
}

impl NoiseEnsemble {
    pub fn len(&self) -> usize {
        self.n_real
    }

    pub fn is_empty(&self) -> bool {
        self.n_real == 0
    }

    /// Permittivity at frequency cell `band`.
    pub fn epsilon(&self, band: usize) -> Complex64 {
        self.bands[band].epsilon
    }

    /// Rytov variance `⟨|K|²⟩` of radial cell `cell` at frequency `band`.
    pub fn target_variance(&self, band: usize, cell: usize) -> f64 {
        self.bands[band].variance[cell]
    }

    /// Visit every sampled cell of realization `index` in generation order.
    fn generate<F: FnMut(usize, usize, SourceCell)>(&self, index: u64, mut visit: F) {
        let mut rng = stream_rng(self.seed, index);
        for (b, band) in self.bands.iter().enumerate() {
            for (i, &variance) in band.variance.iter().enumerate() {
                let direction = unit_vector(&mut rng);
                let polarization = transverse_basis(direction);
                let amplitude = [
                    circular_gaussian(&mut rng, variance),
                    circular_gaussian(&mut rng, variance),
                ];
                visit(
                    b,
                    i,
                    SourceCell {
                        direction,
                        polarization,
                        amplitude,
                    },
                );
            }
        }
    }

    /// Realization `index`, regenerated from `(seed, index)`.
    pub fn realization(&self, index: u64) -> NoiseRealization {
        let mut cells: Vec<Vec<SourceCell>> = self.bands.iter().map(|b| Vec::with_capacity(b.volume.len())).collect();
        self.generate(index, |b, _, cell| cells[b].push(cell));
        NoiseRealization { index, cells }
    }

    /// A realization with every amplitude zero, on this ensemble's grid.
    pub fn silent_realization(&self) -> NoiseRealization {
        let mut out = self.realization(0);
        for cell in out.cells.iter_mut().flatten() {
            cell.amplitude = [Complex64::new(0.0, 0.0); 2];
        }
        out
    }

    fn accumulate_field(&self, field: &mut [[Complex64; 3]], b: usize, i: usize, cell: &SourceCell) {
        let band = &self.bands[b];
        let weight = band.transfer[i] * band.volume[i];
        for (pol, amp) in cell.polarization.iter().zip(cell.amplitude) {
            let e = weight * amp;
            for c in 0..3 {
                field[b][c] += e * pol[c];
            }
        }
    }

    /// Electric field amplitude at the origin for each frequency cell.
    pub fn field_sample(&self, index: u64) -> Vec<[Complex64; 3]> {
        let mut field = vec![[Complex64::new(0.0, 0.0); 3]; self.bands.len()];
        self.generate(index, |b, i, cell| self.accumulate_field(&mut field, b, i, &cell));
        field
    }

    /// Field of a stored realization.
    pub fn field_of(&self, realization: &NoiseRealization) -> Vec<[Complex64; 3]> {
        let mut field = vec![[Complex64::new(0.0, 0.0); 3]; self.bands.len()];
        for (b, cells) in realization.cells.iter().enumerate() {
            for (i, cell) in cells.iter().enumerate() {
                self.accumulate_field(&mut field, b, i, cell);
            }
        }
        field
    }

    /// Spectrum estimates from the given fields, one per frequency cell.
    pub fn estimate_from<I: IntoIterator<Item = Vec<[Complex64; 3]>>>(
        &self,
        fields: I,
    ) -> Result<Vec<FieldSpectrumEstimate>> {
        let mut stats = vec![RunningStats::new(); self.bands.len()];
        for field in fields {
            for (s, e) in stats.iter_mut().zip(&field) {
                let power: f64 = e.iter().map(|z| z.norm_sqr()).sum();
                s.push(2.0 * self.grid.d_omega * power);
            }
        }
        if stats.first().map_or(0, |s| s.count()) == 0 {
            return Err(Error::invalid("realizations", "need at least one realization"));
        }
        Ok(self
            .bands
            .iter()
            .zip(&self.grid.radial)
            .zip(stats)
            .map(|((band, radial), s)| {
                let expected = band.expected_spectrum(self.grid.d_omega);
                let coarse = Band::build(band.omega, band.epsilon, self.grid.d_omega, &radial.coarsened(), &self.state)
                    .expected_spectrum(self.grid.d_omega);
                let resolution_error = (expected - coarse).abs() / 3.0;
                FieldSpectrumEstimate {
                    omega: band.omega,
                    value: s.mean(),
                    std_error: if s.count() < 2 { 0.0 } else { s.std_error() },
                    n: s.count(),
                    expected,
                    resolution_error,
                    resolution_warning: resolution_error > RESOLUTION_TOLERANCE * expected.abs(),
                }
            })
            .collect())
    }
}

/// Estimated one-sided electric spectrum `d⟨E²⟩/dω` at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpectrumEstimate {
    pub omega: f64,
    pub value: f64,
    pub std_error: f64,
    pub n: u64,
    /// Ensemble mean implied by the grid (the deterministic cell sum).
    pub expected: f64,
    /// `|fine - coarse|/3` for the radial cell sum.
    pub resolution_error: f64,
    pub resolution_warning: bool,
}

/// Build a lazily sampled ensemble of `n_real` realizations.
pub fn sample_noise_polarization(
    model: &DispersionModel,
    grid: &NoiseGrid,
    state: &ThermalState,
    n_real: usize,
    seed: u64,
) -> Result<NoiseEnsemble> {
    model.require_nonmagnetic()?;
    let bands = grid
        .omegas
        .iter()
        .zip(&grid.radial)
        .map(|(&w, radial)| Band::new(model, w, grid.d_omega, radial, state))
        .collect::<Result<Vec<_>>>()?;
    Ok(NoiseEnsemble {
        grid: grid.clone(),
        state: *state,
        n_real,
        seed,
        bands,
    })
}

/// Field spectrum at each frequency of the ensemble, from all of its
/// realizations.
pub fn reconstruct_field_spectrum(ensemble: &NoiseEnsemble) -> Result<Vec<FieldSpectrumEstimate>> {
    ensemble.estimate_from((0..ensemble.n_real as u64).map(|i| ensemble.field_sample(i)))
}
