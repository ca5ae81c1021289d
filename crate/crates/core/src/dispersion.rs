//! Rayleigh-Lamb dispersion solver for isotropic plates.
//!
//! Solves the characteristic equations for symmetric and antisymmetric
//! Lamb modes by bracketing and bisection in phase velocity, tracing each
//! mode across a frequency-thickness grid with nearest-root continuation.
//! Group velocity is recovered from the traced curve as dω/dk.
//!
//! Conventions: the frequency-thickness product (FTP) is `f · d` in MHz·mm
//! where `d = 2h` is the full plate thickness; phase and group velocities
//! are in m/s; wavenumbers are stored in rad/mm.

use num_complex::Complex64;
use thiserror::Error;

/// Residual magnitude above which a bisection fixed point is rejected as a
/// pole hit, and below which a returned root is accepted as genuine.
pub const RESIDUAL_TOLERANCE: f64 = 1e-3;

/// Relative bisection tolerance on phase velocity.
pub const PHASE_VELOCITY_TOLERANCE: f64 = 1e-10;

const C_SCAN_MIN: f64 = 50.0;
const CONTINUATION_WIDTH: f64 = 0.10;
const CONTINUATION_WIDENINGS: usize = 4;

#[derive(Debug, Error)]
pub enum DispersionError {
    #[error("invalid material: {0}")]
    InvalidMaterial(String),
    #[error("characteristic residual not evaluable at c = {c} m/s (tan pole within machine epsilon)")]
    NonEvaluable { c: f64 },
    #[error("no root found for {mode} at the first grid point ftp = {ftp} MHz*mm (below cut-off?)")]
    BelowCutoff { mode: String, ftp: f64 },
    #[error("lost track of {mode}: no root in continuation bracket at ftp = {ftp} MHz*mm; last valid ftp = {last_valid_ftp} MHz*mm")]
    LostTrack {
        mode: String,
        ftp: f64,
        last_valid_ftp: f64,
    },
    #[error("ftp grid must be sorted ascending and non-empty")]
    BadGrid,
    #[error("group velocity needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("wavenumber not monotonic at sample {index} (ftp = {ftp} MHz*mm)")]
    NonMonotonicWavenumber { index: usize, ftp: f64 },
}

/// Plate material constants. `thickness` is the full plate thickness `2h`
/// in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialSpec {
    /// Density in kg/m^3.
    pub density: f64,
    /// Longitudinal (pressure) bulk wave speed in m/s.
    pub c_longitudinal: f64,
    /// Transverse (shear) bulk wave speed in m/s.
    pub c_transverse: f64,
    /// Full plate thickness 2h in metres.
    pub thickness: f64,
}

impl MaterialSpec {
    pub fn new(
        density: f64,
        c_longitudinal: f64,
        c_transverse: f64,
        thickness: f64,
    ) -> Result<Self, DispersionError> {
        if !(density > 0.0) {
            return Err(DispersionError::InvalidMaterial(format!(
                "density must be positive, got {density}"
            )));
        }
        if !(c_transverse > 0.0) || !(c_longitudinal > c_transverse) {
            return Err(DispersionError::InvalidMaterial(format!(
                "need c_longitudinal > c_transverse > 0, got {c_longitudinal} / {c_transverse}"
            )));
        }
        if !(thickness > 0.0) {
            return Err(DispersionError::InvalidMaterial(format!(
                "thickness must be positive, got {thickness}"
            )));
        }
        Ok(Self {
            density,
            c_longitudinal,
            c_transverse,
            thickness,
        })
    }

    /// The aluminium plate used throughout the bundled examples:
    /// 2710 kg/m^3, c_L = 6420 m/s, c_T = 3040 m/s, 1 mm thick.
    pub fn aluminium_1mm() -> Self {
        Self {
            density: 2710.0,
            c_longitudinal: 6420.0,
            c_transverse: 3040.0,
            thickness: 1.0e-3,
        }
    }

    /// Half thickness h in metres.
    pub fn half_thickness(&self) -> f64 {
        self.thickness / 2.0
    }

    /// Convert a frequency-thickness product in MHz·mm to frequency in Hz.
    pub fn ftp_to_hz(&self, ftp_mhz_mm: f64) -> f64 {
        // MHz*mm = 1e6 Hz * 1e-3 m = 1e3 Hz*m
        ftp_mhz_mm * 1e3 / self.thickness
    }

    /// Convert a frequency in Hz to the frequency-thickness product in MHz·mm.
    pub fn hz_to_ftp(&self, f_hz: f64) -> f64 {
        f_hz * self.thickness / 1e3
    }
}

/// Lamb mode family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeFamily {
    Symmetric,
    Antisymmetric,
}

impl std::fmt::Display for ModeFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModeFamily::Symmetric => write!(f, "S"),
            ModeFamily::Antisymmetric => write!(f, "A"),
        }
    }
}

/// A single Lamb mode: family plus non-negative order, e.g. A0, S0, A1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeId {
    pub family: ModeFamily,
    pub order: u32,
}

impl ModeId {
    pub const A0: ModeId = ModeId {
        family: ModeFamily::Antisymmetric,
        order: 0,
    };
    pub const S0: ModeId = ModeId {
        family: ModeFamily::Symmetric,
        order: 0,
    };

    /// Parse labels of the form "A0", "S2" (case-insensitive).
    pub fn parse(label: &str) -> Option<ModeId> {
        let label = label.trim();
        let mut chars = label.chars();
        let family = match chars.next()? {
            'a' | 'A' => ModeFamily::Antisymmetric,
            's' | 'S' => ModeFamily::Symmetric,
            _ => return None,
        };
        let order: u32 = chars.as_str().parse().ok()?;
        Some(ModeId { family, order })
    }
}

impl std::fmt::Display for ModeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.family, self.order)
    }
}

/// One traced point of a dispersion curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    /// Frequency-thickness product in MHz·mm.
    pub ftp: f64,
    /// Phase velocity in m/s.
    pub phase_velocity: f64,
    /// Wavenumber in rad/mm (2πf/c).
    pub wavenumber: f64,
    /// Group velocity dω/dk in m/s.
    pub group_velocity: f64,
    /// Angular frequency in rad/s.
    pub omega: f64,
}

/// A traced dispersion curve for one mode, samples strictly increasing in ftp.
#[derive(Debug, Clone)]
pub struct DispersionCurve {
    pub mode: ModeId,
    pub samples: Vec<CurveSample>,
}

impl DispersionCurve {
    /// Linear interpolation of the wavenumber (rad/m) at a frequency in Hz.
    /// Returns `None` outside the traced band.
    pub fn wavenumber_at_hz(&self, f_hz: f64) -> Option<f64> {
        let omega = 2.0 * std::f64::consts::PI * f_hz;
        let s = &self.samples;
        if s.len() < 2 || omega < s[0].omega || omega > s[s.len() - 1].omega {
            return None;
        }
        let idx = s.partition_point(|p| p.omega < omega).min(s.len() - 1).max(1);
        let (a, b) = (&s[idx - 1], &s[idx]);
        let t = if b.omega > a.omega {
            (omega - a.omega) / (b.omega - a.omega)
        } else {
            0.0
        };
        // stored wavenumber is rad/mm
        Some((a.wavenumber + t * (b.wavenumber - a.wavenumber)) * 1e3)
    }

    /// Linear interpolation of group velocity (m/s) at an ftp in MHz·mm.
    pub fn group_velocity_at(&self, ftp: f64) -> Option<f64> {
        let s = &self.samples;
        if s.len() < 2 || ftp < s[0].ftp || ftp > s[s.len() - 1].ftp {
            return None;
        }
        let idx = s.partition_point(|p| p.ftp < ftp).min(s.len() - 1).max(1);
        let (a, b) = (&s[idx - 1], &s[idx]);
        let t = if b.ftp > a.ftp {
            (ftp - a.ftp) / (b.ftp - a.ftp)
        } else {
            0.0
        };
        Some(a.group_velocity + t * (b.group_velocity - a.group_velocity))
    }

    /// Frequency band covered by the trace, in Hz.
    pub fn band_hz(&self) -> (f64, f64) {
        let two_pi = 2.0 * std::f64::consts::PI;
        (
            self.samples.first().map_or(0.0, |s| s.omega / two_pi),
            self.samples.last().map_or(0.0, |s| s.omega / two_pi),
        )
    }

    /// Minimum group velocity over the trace, m/s.
    pub fn min_group_velocity(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.group_velocity)
            .fold(f64::INFINITY, f64::min)
    }
}

// ---------------------------------------------------------------------------
// Characteristic residual
// ---------------------------------------------------------------------------

/// Signed residual of the Rayleigh-Lamb characteristic equation, rearranged
/// to `f(c) = LHS - RHS` with the through-thickness wavenumbers
/// `p² = ω²/c_L² − k²` and `q² = ω²/c_T² − k²`. When `c` is below a bulk
/// speed the corresponding wavenumber is imaginary and the tangent continues
/// analytically as tan(ix) = i·tanh(x); the residual is then purely real or
/// purely imaginary and the non-vanishing part is returned.
pub fn characteristic_residual(
    material: &MaterialSpec,
    ftp_mhz_mm: f64,
    c: f64,
    family: ModeFamily,
) -> Result<f64, DispersionError> {
    debug_assert!(c > 0.0 && ftp_mhz_mm > 0.0);
    let f = material.ftp_to_hz(ftp_mhz_mm);
    let w = 2.0 * std::f64::consts::PI * f;
    let h = material.half_thickness();
    let k = w / c;
    let cl = material.c_longitudinal;
    let ct = material.c_transverse;
    let p = Complex64::new(w * w / (cl * cl) - k * k, 0.0).sqrt();
    let q = Complex64::new(w * w / (ct * ct) - k * k, 0.0).sqrt();

    let tan_ph = (p * h).tan();
    let tan_qh = (q * h).tan();
    let (num, den) = match family {
        ModeFamily::Symmetric => (tan_qh, tan_ph),
        ModeFamily::Antisymmetric => (tan_ph, tan_qh),
    };
    let q2k2 = q * q - Complex64::new(k * k, 0.0);
    let lhs = num / den;
    let rhs = -4.0 * k * k * p * q / (q2k2 * q2k2);
    let r = lhs - rhs;
    if !r.re.is_finite() || !r.im.is_finite() {
        return Err(DispersionError::NonEvaluable { c });
    }
    // By the branch structure one part is structurally zero; keep the other.
    Ok(if r.re.abs() >= r.im.abs() { r.re } else { r.im })
}

/// Phase velocities at which the ratio residual is discontinuous for a given
/// ftp: the bulk-speed branch points, the q = k double pole, and every speed
/// where ph or qh hits a multiple of π/2 (tangent poles and zeros).
fn discontinuity_speeds(material: &MaterialSpec, ftp_mhz_mm: f64) -> Vec<f64> {
    let f = material.ftp_to_hz(ftp_mhz_mm);
    let w = 2.0 * std::f64::consts::PI * f;
    let h = material.half_thickness();
    let cl = material.c_longitudinal;
    let ct = material.c_transverse;
    let mut pts = vec![ct, cl, std::f64::consts::SQRT_2 * ct];
    // qh = m·π/2 (or ph): q* = m·π/(2h); real-k requires q* < ω/c_ref.
    for &cref in &[ct, cl] {
        let mut m = 1u32;
        loop {
            let val = m as f64 * std::f64::consts::FRAC_PI_2 / h;
            let k2 = (w / cref).powi(2) - val * val;
            if k2 <= 0.0 || m > 10_000 {
                break;
            }
            pts.push(w / k2.sqrt());
            m += 1;
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * b.abs());
    pts
}

/// All phase-velocity roots of the characteristic equation in `[lo, hi]`,
/// ascending. Scans each continuous segment between discontinuities and
/// bisects sign changes; bisection fixed points with large residual are
/// pole hits and get rejected.
pub fn find_roots(
    material: &MaterialSpec,
    ftp_mhz_mm: f64,
    family: ModeFamily,
    lo: f64,
    hi: f64,
    points_per_span: usize,
) -> Vec<f64> {
    let mut bounds: Vec<f64> = vec![lo];
    bounds.extend(
        discontinuity_speeds(material, ftp_mhz_mm)
            .into_iter()
            .filter(|&p| p > lo && p < hi),
    );
    bounds.push(hi);

    let eval = |c: f64| characteristic_residual(material, ftp_mhz_mm, c, family).ok();
    let mut roots = Vec::new();
    for pair in bounds.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let ea = a + (1e-9 * a.abs()).max(1e-12);
        let eb = b - (1e-9 * b.abs()).max(1e-12);
        if eb <= ea {
            continue;
        }
        // narrow pole-bounded segments can pinch a root against a pole, so
        // never scan a segment with fewer than 64 points
        let n = ((points_per_span as f64 * (b - a) / (hi - lo)) as usize).max(64);
        let step = (eb - ea) / n as f64;
        let mut prev_c = ea;
        let mut prev_f = eval(ea);
        for i in 1..=n {
            let c = ea + step * i as f64;
            let fc = eval(c);
            if let (Some(fa), Some(fb)) = (prev_f, fc) {
                if fa == 0.0 {
                    roots.push(prev_c);
                } else if fa * fb < 0.0 {
                    if let Some(root) = bisect(&eval, prev_c, c, fa) {
                        roots.push(root);
                    }
                }
            }
            prev_c = c;
            prev_f = fc;
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

fn bisect(eval: &dyn Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64, mut flo: f64) -> Option<f64> {
    // run past the nominal 1e-10 relative tolerance down to float exhaustion;
    // roots pinched against a pole leave a large residual otherwise
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match eval(mid) {
            Some(fm) => {
                if flo * fm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            None => return None,
        }
    }
    let root = 0.5 * (lo + hi);
    match eval(root) {
        Some(fr) if fr.abs() < RESIDUAL_TOLERANCE => Some(root),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Mode tracing
// ---------------------------------------------------------------------------

/// Trace one mode over an ascending ftp grid. The first grid point is solved
/// by a full scan (the mode's order selects the n-th root from below); later
/// points continue from the previous root with a ±10% bracket, widened ×2 up
/// to four times before the track is declared lost.
pub fn trace_mode(
    material: &MaterialSpec,
    mode: ModeId,
    ftp_grid: &[f64],
) -> Result<DispersionCurve, DispersionError> {
    if ftp_grid.is_empty() || ftp_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(DispersionError::BadGrid);
    }
    let c_max = (3.0 * material.c_longitudinal).max(25_000.0);
    let mut phase = Vec::with_capacity(ftp_grid.len());
    let mut prev: Option<f64> = None;
    let mut prev_ftp = f64::NAN;

    for &ftp in ftp_grid {
        let c = match prev {
            None => {
                let roots = find_roots(material, ftp, mode.family, C_SCAN_MIN, c_max, 4096);
                *roots
                    .get(mode.order as usize)
                    .ok_or(DispersionError::BelowCutoff {
                        mode: mode.to_string(),
                        ftp,
                    })?
            }
            Some(p) if ftp == prev_ftp => p,
            Some(p) => {
                let mut width = CONTINUATION_WIDTH;
                let mut found = None;
                for _ in 0..=CONTINUATION_WIDENINGS {
                    let lo = (p * (1.0 - width)).max(C_SCAN_MIN);
                    let hi = p * (1.0 + width);
                    let cands = find_roots(material, ftp, mode.family, lo, hi, 256);
                    if !cands.is_empty() {
                        found = cands
                            .into_iter()
                            .min_by(|a, b| (a - p).abs().partial_cmp(&(b - p).abs()).unwrap());
                        break;
                    }
                    width *= 2.0;
                }
                found.ok_or(DispersionError::LostTrack {
                    mode: mode.to_string(),
                    ftp,
                    last_valid_ftp: prev_ftp,
                })?
            }
        };
        phase.push(c);
        prev = Some(c);
        prev_ftp = ftp;
    }

    let mut samples: Vec<CurveSample> = ftp_grid
        .iter()
        .zip(&phase)
        .map(|(&ftp, &c)| {
            let f = material.ftp_to_hz(ftp);
            let omega = 2.0 * std::f64::consts::PI * f;
            CurveSample {
                ftp,
                phase_velocity: c,
                wavenumber: omega / c / 1e3, // rad/mm
                group_velocity: f64::NAN,
                omega,
            }
        })
        .collect();
    let cg = group_velocity(&samples)?;
    for (s, g) in samples.iter_mut().zip(cg) {
        s.group_velocity = g;
    }
    Ok(DispersionCurve { mode, samples })
}

/// Group velocity dω/dk by central finite differences, one-sided at the ends.
/// Duplicate consecutive grid points are carried through by copying the
/// neighbouring estimate.
pub fn group_velocity(samples: &[CurveSample]) -> Result<Vec<f64>, DispersionError> {
    let n = samples.len();
    if n < 3 {
        return Err(DispersionError::TooFewSamples(n));
    }
    // rad/mm -> rad/m so dω/dk comes out in m/s
    let k: Vec<f64> = samples.iter().map(|s| s.wavenumber * 1e3).collect();
    let w: Vec<f64> = samples.iter().map(|s| s.omega).collect();
    let mut out = vec![0.0; n];
    let mut deriv = |i_hi: usize, i_lo: usize, at: usize| -> Result<f64, DispersionError> {
        let dk = k[i_hi] - k[i_lo];
        if dk <= 0.0 {
            if w[i_hi] == w[i_lo] && dk == 0.0 {
                // duplicate grid point; resolved by the caller copying a neighbour
                return Ok(f64::NAN);
            }
            return Err(DispersionError::NonMonotonicWavenumber {
                index: at,
                ftp: samples[at].ftp,
            });
        }
        Ok((w[i_hi] - w[i_lo]) / dk)
    };
    out[0] = deriv(1, 0, 0)?;
    out[n - 1] = deriv(n - 1, n - 2, n - 1)?;
    for i in 1..n - 1 {
        out[i] = deriv(i + 1, i - 1, i)?;
    }
    // patch NaNs from duplicate samples with the nearest finite neighbour
    for i in 0..n {
        if out[i].is_nan() {
            let mut j = i;
            while j > 0 && out[j].is_nan() {
                j -= 1;
            }
            if out[j].is_nan() {
                j = i;
                while j < n - 1 && out[j].is_nan() {
                    j += 1;
                }
            }
            out[i] = out[j];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alu() -> MaterialSpec {
        MaterialSpec::aluminium_1mm()
    }

    #[test]
    fn residual_changes_sign_across_a0_root() {
        let m = alu();
        // the A0 root at 1 MHz*mm sits near 2297 m/s
        let f_lo = characteristic_residual(&m, 1.0, 2200.0, ModeFamily::Antisymmetric).unwrap();
        let f_hi = characteristic_residual(&m, 1.0, 2400.0, ModeFamily::Antisymmetric).unwrap();
        assert!(f_lo * f_hi < 0.0, "expected sign change, got {f_lo} / {f_hi}");
    }

    #[test]
    fn s0_low_frequency_limit_is_thin_plate_speed() {
        let m = alu();
        // analytic low-frequency limit 2·cT·sqrt(1 - cT²/cL²)
        let ct = m.c_transverse;
        let cl = m.c_longitudinal;
        let plate = 2.0 * ct * (1.0 - ct * ct / (cl * cl)).sqrt();
        let roots = find_roots(&m, 0.01, ModeFamily::Symmetric, 50.0, 20_000.0, 4096);
        let s0 = roots[0];
        assert!(
            (s0 - plate).abs() / plate < 0.01,
            "S0 low-f root {s0} vs thin-plate {plate}"
        );
    }

    #[test]
    fn a0_high_frequency_limit_is_rayleigh_speed() {
        let m = alu();
        // independent bisection of the Rayleigh function for the same material
        let ct = m.c_transverse;
        let cl = m.c_longitudinal;
        let rayleigh = |c: f64| {
            (2.0 - c * c / (ct * ct)).powi(2)
                - 4.0 * (1.0 - c * c / (cl * cl)).max(0.0).sqrt()
                    * (1.0 - c * c / (ct * ct)).max(0.0).sqrt()
        };
        let (mut lo, mut hi) = (0.5 * ct, 0.999 * ct);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if rayleigh(lo) * rayleigh(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let c_r = 0.5 * (lo + hi);
        let roots = find_roots(&m, 10.0, ModeFamily::Antisymmetric, 1000.0, 3000.0, 2048);
        let a0 = roots[0];
        assert!(
            (a0 - c_r).abs() / c_r < 0.01,
            "A0 at ftp=10 is {a0}, Rayleigh speed {c_r}"
        );
    }

    #[test]
    fn trace_a0_s0_match_figure_shape() {
        let m = alu();
        let grid: Vec<f64> = (0..496).map(|i| 0.05 + 0.01 * i as f64).collect();
        let a0 = trace_mode(&m, ModeId::A0, &grid).unwrap();
        let s0 = trace_mode(&m, ModeId::S0, &grid).unwrap();
        // S0 phase starts near 5.4 m/ms and falls
        assert!((s0.samples[0].phase_velocity - 5400.0).abs() < 100.0);
        assert!(s0.samples.last().unwrap().phase_velocity < s0.samples[0].phase_velocity);
        // A0 group velocity rises then plateaus
        let cg_first = a0.samples[0].group_velocity;
        let cg_mid = a0.group_velocity_at(1.0).unwrap();
        let cg_late = a0.group_velocity_at(4.0).unwrap();
        assert!(cg_first < cg_mid);
        assert!((cg_late - a0.group_velocity_at(4.5).unwrap()).abs() < 30.0);
        // every traced point satisfies the characteristic equation
        for (curve, fam) in [(&a0, ModeFamily::Antisymmetric), (&s0, ModeFamily::Symmetric)] {
            for s in curve.samples.iter().step_by(25) {
                let r = characteristic_residual(&m, s.ftp, s.phase_velocity, fam).unwrap();
                assert!(r.abs() < RESIDUAL_TOLERANCE, "residual {r} at ftp {}", s.ftp);
            }
        }
    }

    #[test]
    fn a0_group_velocity_at_1mhz_mm() {
        let m = alu();
        let grid: Vec<f64> = (0..400).map(|i| 0.05 + 0.005 * i as f64).collect();
        let a0 = trace_mode(&m, ModeId::A0, &grid).unwrap();
        let cg = a0.group_velocity_at(1.0).unwrap();
        assert!(
            (cg - 3071.0).abs() / 3071.0 < 0.01,
            "A0 group velocity at 1 MHz*mm = {cg}, expected 3071 ± 1%"
        );
    }

    #[test]
    fn duplicate_ftp_returns_identical_root() {
        let m = alu();
        let grid = vec![0.5, 0.6, 0.6, 0.7];
        let a0 = trace_mode(&m, ModeId::A0, &grid).unwrap();
        assert_eq!(
            a0.samples[1].phase_velocity,
            a0.samples[2].phase_velocity
        );
    }

    #[test]
    fn higher_order_mode_below_cutoff_errors() {
        let m = alu();
        let grid = vec![0.1, 0.2];
        let err = trace_mode(
            &m,
            ModeId {
                family: ModeFamily::Antisymmetric,
                order: 1,
            },
            &grid,
        )
        .unwrap_err();
        assert!(matches!(err, DispersionError::BelowCutoff { .. }));
    }

    #[test]
    fn fundamental_mode_ordering_and_k_monotonicity() {
        let m = alu();
        let grid: Vec<f64> = (0..140).map(|i| 0.05 + 0.01 * i as f64).collect();
        let a0 = trace_mode(&m, ModeId::A0, &grid).unwrap();
        let s0 = trace_mode(&m, ModeId::S0, &grid).unwrap();
        for (a, s) in a0.samples.iter().zip(&s0.samples) {
            assert!(
                s.phase_velocity >= a.phase_velocity,
                "S0 {} < A0 {} at ftp {}",
                s.phase_velocity,
                a.phase_velocity,
                a.ftp
            );
        }
        for c in [&a0, &s0] {
            for w in c.samples.windows(2) {
                assert!(w[1].wavenumber > w[0].wavenumber);
            }
        }
    }

    #[test]
    fn group_velocity_constant_for_nondispersive_curve() {
        let c = 3000.0;
        let samples: Vec<CurveSample> = (1..=20)
            .map(|i| {
                let omega = 1e6 * i as f64;
                CurveSample {
                    ftp: i as f64 * 0.1,
                    phase_velocity: c,
                    wavenumber: omega / c / 1e3,
                    group_velocity: f64::NAN,
                    omega,
                }
            })
            .collect();
        for g in group_velocity(&samples).unwrap() {
            assert!((g - c).abs() < 1e-6);
        }
    }

    #[test]
    fn group_velocity_quadratic_dispersion() {
        // ω = α k² ⇒ dω/dk = 2αk
        let alpha = 0.05;
        let samples: Vec<CurveSample> = (1..=50)
            .map(|i| {
                let k_m = 100.0 * i as f64; // rad/m
                let omega = alpha * k_m * k_m;
                CurveSample {
                    ftp: i as f64,
                    phase_velocity: omega / k_m,
                    wavenumber: k_m / 1e3,
                    group_velocity: f64::NAN,
                    omega,
                }
            })
            .collect();
        let cg = group_velocity(&samples).unwrap();
        for (i, g) in cg.iter().enumerate().skip(1).take(48) {
            let k_m = 100.0 * (i + 1) as f64;
            let expect = 2.0 * alpha * k_m;
            assert!(
                (g - expect).abs() / expect < 1e-6,
                "sample {i}: {g} vs {expect}"
            );
        }
    }

    #[test]
    fn group_velocity_rejects_nonmonotonic_k() {
        let mut samples: Vec<CurveSample> = (1..=5)
            .map(|i| {
                let omega = 1e6 * i as f64;
                CurveSample {
                    ftp: i as f64,
                    phase_velocity: 3000.0,
                    wavenumber: omega / 3000.0 / 1e3,
                    group_velocity: f64::NAN,
                    omega,
                }
            })
            .collect();
        samples[2].wavenumber = samples[0].wavenumber; // break monotonicity
        let err = group_velocity(&samples).unwrap_err();
        assert!(matches!(
            err,
            DispersionError::NonMonotonicWavenumber { .. }
        ));
    }
}
