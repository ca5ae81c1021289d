//! Synthetic dispersive wavefield generation.
//!
//! A Hann-windowed tone burst is propagated through traced dispersion
//! curves by a frequency-domain phase shift e^{-i k(f) x}, with optional
//! point reflectors adding scaled actuator→reflector→sensor contributions.
//! No geometric spreading or attenuation is applied, so the propagator is
//! exactly energy-preserving and invertible. Measurement noise is additive
//! white Gaussian at a configurable SNR with a seeded generator, one
//! deterministic stream per column.

use ndarray::Array2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::dispersion::DispersionCurve;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("sample rate {fs} Hz violates Nyquist for centre frequency {f0} Hz")]
    NyquistViolation { f0: f64, fs: f64 },
    #[error("invalid tone burst: {0}")]
    BadBurst(String),
    #[error("dispersion curve for mode {mode} covers {covered_lo:.3e}..{covered_hi:.3e} Hz but the burst occupies {need_lo:.3e}..{need_hi:.3e} Hz")]
    BandNotCovered {
        mode: String,
        covered_lo: f64,
        covered_hi: f64,
        need_lo: f64,
        need_hi: f64,
    },
    #[error("invalid scene: {0}")]
    BadScene(String),
    #[error("time window too short: need {need_s:.3e} s (slowest arrival plus burst and 20% margin), have {have_s:.3e} s")]
    WindowTooShort { need_s: f64, have_s: f64 },
}

/// A point in the plate plane, millimetres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// Hann-windowed sine burst, peak amplitude 1, zero-padded to the requested
/// length.
#[derive(Debug, Clone)]
pub struct ToneBurst {
    /// Centre frequency in Hz.
    pub centre_frequency: f64,
    /// Number of carrier cycles under the window.
    pub cycles: u32,
    /// Sample rate in Hz.
    pub sample_rate: f64,
    /// Amplitude series, length as requested at construction.
    pub samples: Vec<f64>,
}

impl ToneBurst {
    /// Burst duration cycles/f0 in seconds.
    pub fn duration(&self) -> f64 {
        self.cycles as f64 / self.centre_frequency
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.sample_rate
    }

    /// Band occupied by the burst, centre ± 3/T, clamped at zero.
    pub fn occupied_band(&self) -> (f64, f64) {
        let half = 3.0 / self.duration();
        ((self.centre_frequency - half).max(0.0), self.centre_frequency + half)
    }
}

/// Build a Hann-windowed tone burst: s(t) = ½(1−cos(2πt/T))·sin(2πf₀t)
/// for t ∈ [0, T], T = cycles/f₀, then zeros up to `length` samples.
pub fn make_toneburst(
    f0: f64,
    cycles: u32,
    sample_rate: f64,
    length: usize,
) -> Result<ToneBurst, SynthError> {
    if !(sample_rate > 2.0 * f0) {
        return Err(SynthError::NyquistViolation {
            f0,
            fs: sample_rate,
        });
    }
    if cycles == 0 || !(f0 > 0.0) {
        return Err(SynthError::BadBurst(format!(
            "need cycles >= 1 and f0 > 0, got cycles = {cycles}, f0 = {f0}"
        )));
    }
    let duration = cycles as f64 / f0;
    let dt = 1.0 / sample_rate;
    if (length as f64 - 1.0) * dt < duration {
        return Err(SynthError::BadBurst(format!(
            "length {length} samples is shorter than the {duration:.3e} s burst"
        )));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let samples = (0..length)
        .map(|i| {
            let t = i as f64 * dt;
            if t <= duration {
                0.5 * (1.0 - (two_pi * t / duration).cos()) * (two_pi * f0 * t).sin()
            } else {
                0.0
            }
        })
        .collect();
    Ok(ToneBurst {
        centre_frequency: f0,
        cycles,
        sample_rate,
        samples,
    })
}

// ---------------------------------------------------------------------------
// Frequency-domain propagation
// ---------------------------------------------------------------------------

fn fft(data: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let f = if inverse {
        planner.plan_fft_inverse(data.len())
    } else {
        planner.plan_fft_forward(data.len())
    };
    f.process(data);
}

/// Wavenumber lookup with linear interpolation inside the traced band and
/// end-slope extrapolation outside (clamped non-negative); odd in frequency.
fn wavenumber_rad_per_m(curve: &DispersionCurve, f_hz: f64) -> f64 {
    let sign = if f_hz < 0.0 { -1.0 } else { 1.0 };
    let f = f_hz.abs();
    if let Some(k) = curve.wavenumber_at_hz(f) {
        return sign * k;
    }
    let s = &curve.samples;
    let two_pi = 2.0 * std::f64::consts::PI;
    let (a, b) = if f < s[0].omega / two_pi {
        (&s[0], &s[1])
    } else {
        (&s[s.len() - 2], &s[s.len() - 1])
    };
    let (fa, fb) = (a.omega / two_pi, b.omega / two_pi);
    let (ka, kb) = (a.wavenumber * 1e3, b.wavenumber * 1e3);
    let k = ka + (f - fa) * (kb - ka) / (fb - fa);
    sign * k.max(0.0)
}

/// Propagate a time series over `distance_mm` through a dispersion curve:
/// FFT, multiply each bin by e^{-i k(f) x}, inverse FFT. The conjugate
/// symmetry of the odd k(f) keeps the output real; energy is preserved.
pub fn propagate(
    signal: &[f64],
    dt: f64,
    distance_mm: f64,
    curve: &DispersionCurve,
    band: (f64, f64),
) -> Result<Vec<f64>, SynthError> {
    let (lo, hi) = curve.band_hz();
    if band.0 < lo || band.1 > hi {
        return Err(SynthError::BandNotCovered {
            mode: curve.mode.to_string(),
            covered_lo: lo,
            covered_hi: hi,
            need_lo: band.0,
            need_hi: band.1,
        });
    }
    let n = signal.len();
    let mut spec: Vec<Complex64> = signal.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft(&mut spec, false);
    let x_m = distance_mm * 1e-3;
    for (j, bin) in spec.iter_mut().enumerate() {
        let f = if j <= n / 2 {
            j as f64 / (n as f64 * dt)
        } else {
            (j as f64 - n as f64) / (n as f64 * dt)
        };
        let k = wavenumber_rad_per_m(curve, f);
        *bin *= Complex64::from_polar(1.0, -k * x_m);
    }
    fft(&mut spec, true);
    Ok(spec.iter().map(|c| c.re / n as f64).collect())
}

/// Signal envelope |analytic signal| via the frequency-domain Hilbert mask.
pub fn envelope(signal: &[f64]) -> Vec<f64> {
    let n = signal.len();
    let mut spec: Vec<Complex64> = signal.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft(&mut spec, false);
    for (j, bin) in spec.iter_mut().enumerate() {
        if j == 0 || (n % 2 == 0 && j == n / 2) {
            // keep
        } else if j < n.div_ceil(2) {
            *bin *= 2.0;
        } else {
            *bin = Complex64::new(0.0, 0.0);
        }
    }
    fft(&mut spec, true);
    spec.iter().map(|c| (c / n as f64).norm()).collect()
}

// ---------------------------------------------------------------------------
// Scenes and fields
// ---------------------------------------------------------------------------

/// One mode present in a scene: its traced curve and source amplitude.
#[derive(Debug, Clone)]
pub struct SceneMode {
    pub curve: DispersionCurve,
    pub amplitude: f64,
}

/// A point reflector with one reflection coefficient per scene mode.
#[derive(Debug, Clone)]
pub struct Reflector {
    pub position: Point2,
    /// Reflection coefficient in [0, 1] per mode, aligned with `Scene::modes`.
    pub coefficients: Vec<f64>,
}

/// Synthesis scene: actuator, reflectors, modes, and the noise model.
#[derive(Debug, Clone)]
pub struct Scene {
    pub actuator: Point2,
    pub reflectors: Vec<Reflector>,
    pub modes: Vec<SceneMode>,
    /// Signal-to-noise ratio in dB relative to the clean field RMS;
    /// `None` disables noise.
    pub snr_db: Option<f64>,
    pub noise_seed: u64,
}

impl Scene {
    pub fn validate(&self, burst: &ToneBurst, max_direct_mm: f64) -> Result<(), SynthError> {
        if self.modes.is_empty() {
            return Err(SynthError::BadScene("mode set is empty".into()));
        }
        for r in &self.reflectors {
            if r.coefficients.len() != self.modes.len() {
                return Err(SynthError::BadScene(format!(
                    "reflector at ({}, {}) has {} coefficients for {} modes",
                    r.position.x,
                    r.position.y,
                    r.coefficients.len(),
                    self.modes.len()
                )));
            }
            if r.coefficients.iter().any(|&c| !(0.0..=1.0).contains(&c)) {
                return Err(SynthError::BadScene(
                    "reflection coefficients must lie in [0, 1]".into(),
                ));
            }
            if !r.position.x.is_finite() || !r.position.y.is_finite() {
                return Err(SynthError::BadScene("non-finite reflector position".into()));
            }
        }
        // wrap-around guard: slowest mode over the longest path must fit
        // with a 20% margin
        let longest = self.longest_path_mm(max_direct_mm);
        let slowest = self
            .modes
            .iter()
            .map(|m| m.curve.min_group_velocity())
            .fold(f64::INFINITY, f64::min);
        let need = 1.2 * (longest * 1e-3 / slowest + burst.duration());
        let have = burst.samples.len() as f64 * burst.dt();
        if have < need {
            return Err(SynthError::WindowTooShort {
                need_s: need,
                have_s: have,
            });
        }
        Ok(())
    }

    fn longest_path_mm(&self, max_direct_mm: f64) -> f64 {
        let mut longest = max_direct_mm;
        for r in &self.reflectors {
            if r.coefficients.iter().all(|&c| c == 0.0) {
                continue;
            }
            let to_reflector = self.actuator.distance(r.position);
            // the farthest sensor cannot be farther from the reflector than
            // its direct distance plus the actuator-reflector leg
            longest = longest.max(to_reflector + to_reflector + max_direct_mm);
        }
        longest
    }

    /// Clean (noise-free) displacement series at a point.
    pub fn synth_point(&self, burst: &ToneBurst, point: Point2) -> Result<Vec<f64>, SynthError> {
        let band = burst.occupied_band();
        let direct = self.actuator.distance(point);
        let mut out = vec![0.0; burst.samples.len()];
        for (g, mode) in self.modes.iter().enumerate() {
            let d = propagate(&burst.samples, burst.dt(), direct, &mode.curve, band)?;
            for (o, v) in out.iter_mut().zip(&d) {
                *o += mode.amplitude * v;
            }
            for r in &self.reflectors {
                if r.coefficients[g] == 0.0 {
                    continue;
                }
                let path = self.actuator.distance(r.position) + r.position.distance(point);
                let w = propagate(&burst.samples, burst.dt(), path, &mode.curve, band)?;
                for (o, v) in out.iter_mut().zip(&w) {
                    *o += r.coefficients[g] * mode.amplitude * v;
                }
            }
        }
        Ok(out)
    }
}

/// Time × distance surface-displacement matrix with sampling metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    /// Rows index time, columns index distance.
    pub data: Array2<f64>,
    /// Time step in seconds.
    pub dt: f64,
    /// Column spacing in millimetres.
    pub dx: f64,
    /// Time origin in seconds.
    pub t0: f64,
    /// Distance of the first column in millimetres.
    pub x0: f64,
    /// Per-column peak-to-peak ranges recorded by normalisation passes.
    pub ptp: Option<Vec<f64>>,
}

impl WaveField {
    pub fn n_time(&self) -> usize {
        self.data.nrows()
    }

    pub fn n_distance(&self) -> usize {
        self.data.ncols()
    }

    pub fn distance_of_column(&self, n: usize) -> f64 {
        self.x0 + n as f64 * self.dx
    }

    pub fn time_of_row(&self, m: usize) -> f64 {
        self.t0 + m as f64 * self.dt
    }
}

/// Deterministic per-column noise: stream c of the seeded generator.
fn noise_column(seed: u64, stream: u64, sigma: f64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let dist = Normal::new(0.0, sigma).expect("sigma must be finite");
    (0..n).map(|_| dist.sample(&mut rng)).collect()
}

/// Global RMS of a clean signal set, used as the SNR reference.
fn rms(columns: &[Vec<f64>]) -> f64 {
    let (sum, count) = columns.iter().fold((0.0, 0usize), |(s, c), col| {
        (s + col.iter().map(|v| v * v).sum::<f64>(), c + col.len())
    });
    (sum / count.max(1) as f64).sqrt()
}

/// Synthesise a wavefield along a line of sensor points ordered by distance
/// from the actuator. Columns are synthesised independently (in parallel)
/// and noise streams are keyed by column index, so the result does not
/// depend on scheduling.
pub fn synth_field(
    scene: &Scene,
    burst: &ToneBurst,
    path: &[Point2],
) -> Result<WaveField, SynthError> {
    if path.len() < 2 {
        return Err(SynthError::BadScene(
            "path needs at least two points".into(),
        ));
    }
    let d: Vec<f64> = path.iter().map(|p| scene.actuator.distance(*p)).collect();
    if d.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SynthError::BadScene(
            "path points must be ordered by distance from the actuator".into(),
        ));
    }
    let dx = d[1] - d[0];
    if d.windows(2).any(|w| ((w[1] - w[0]) - dx).abs() > 1e-9 * dx) {
        return Err(SynthError::BadScene(
            "path points must be equally spaced".into(),
        ));
    }
    scene.validate(burst, *d.last().unwrap())?;

    let columns: Vec<Vec<f64>> = path
        .par_iter()
        .map(|p| scene.synth_point(burst, *p))
        .collect::<Result<_, _>>()?;
    let sigma = scene
        .snr_db
        .map(|snr| rms(&columns) * 10f64.powf(-snr / 20.0));

    let n_t = burst.samples.len();
    let mut data = Array2::zeros((n_t, path.len()));
    for (c, col) in columns.iter().enumerate() {
        let noise = sigma.map(|s| noise_column(scene.noise_seed, c as u64, s, n_t));
        for (r, &v) in col.iter().enumerate() {
            data[[r, c]] = v + noise.as_ref().map_or(0.0, |n| n[r]);
        }
    }
    Ok(WaveField {
        data,
        dt: burst.dt(),
        dx,
        t0: 0.0,
        x0: d[0],
        ptp: None,
    })
}

/// Clean plus noisy displacement at a single sensor point; the noise stream
/// is keyed separately from field columns so sensors and dictionary fields
/// never share draws.
pub fn synth_sensor_signal(
    scene: &Scene,
    burst: &ToneBurst,
    point: Point2,
    stream: u64,
) -> Result<Vec<f64>, SynthError> {
    scene.validate(burst, scene.actuator.distance(point))?;
    let clean = scene.synth_point(burst, point)?;
    match scene.snr_db {
        None => Ok(clean),
        Some(snr) => {
            let sigma = rms(std::slice::from_ref(&clean)) * 10f64.powf(-snr / 20.0);
            let noise = noise_column(scene.noise_seed, stream, sigma, clean.len());
            Ok(clean.iter().zip(&noise).map(|(a, b)| a + b).collect())
        }
    }
}
