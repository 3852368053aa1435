//! Discrete Fourier engine for uniformly sampled 2*pi-periodic functions and
//! the circle singular-integral operators built on it: the conjugate-function
//! (Hilbert) multiplier, interior/exterior Cauchy projections, and holomorphic
//! extension off the circle.

use crate::error::{Error, Result};
use crate::tolerances;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::TAU;

/// A 2*pi-periodic function sampled at theta_j = 2*pi*j/n.
///
/// `n` must be a power of two, at least 16. Values may be complex; `is_real`
/// asserts the imaginary parts vanish to tolerance.
#[derive(Debug, Clone)]
pub struct PeriodicFunction {
    values: Vec<Complex64>,
    is_real: bool,
}

fn check_len(n: usize) -> Result<()> {
    if n < 16 || !n.is_power_of_two() {
        return Err(Error::InvalidSampleCount(n));
    }
    Ok(())
}

impl PeriodicFunction {
    pub fn from_complex(values: Vec<Complex64>) -> Result<Self> {
        check_len(values.len())?;
        Ok(Self {
            values,
            is_real: false,
        })
    }

    pub fn from_real(values: Vec<f64>) -> Result<Self> {
        check_len(values.len())?;
        Ok(Self {
            values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            is_real: true,
        })
    }

    /// Samples a closed form at the grid nodes.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        check_len(n)?;
        let values = (0..n)
            .map(|j| Complex64::new(f(TAU * j as f64 / n as f64), 0.0))
            .collect();
        Ok(Self {
            values,
            is_real: true,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    /// Real parts, for functions known (or asserted) to be real.
    pub fn real_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    /// Checks the real flag against the actual imaginary mass.
    pub fn validate(&self) -> Result<()> {
        check_len(self.values.len())?;
        if self.is_real {
            let max_abs = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let max_im = self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
            if max_im > tolerances::REAL_FLAG * max_abs.max(1e-300) {
                return Err(Error::Invalid(format!(
                    "function flagged real has imaginary mass {max_im:.3e} (max |f| = {max_abs:.3e})"
                )));
            }
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Grid angle of sample j.
    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.n_samples() as f64
    }
}

/// Fourier-series coefficients of a sampled periodic function, stored in FFT
/// order (mode m at index m mod n), covering m = -n/2 .. n/2 - 1.
///
/// Normalization: a constant function has coefficient 1 at mode 0, i.e. the
/// coefficients are the trigonometric-series coefficients recoverable from
/// the samples, and the inverse transform reproduces the samples exactly.
#[derive(Debug, Clone)]
pub struct FourierCoefficients {
    coeffs: Vec<Complex64>,
}

impl FourierCoefficients {
    pub fn from_fft_order(coeffs: Vec<Complex64>) -> Result<Self> {
        check_len(coeffs.len())?;
        Ok(Self { coeffs })
    }

    pub fn n_samples(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of mode m (m in -n/2 .. n/2 - 1).
    pub fn coeff(&self, m: i64) -> Complex64 {
        let n = self.coeffs.len() as i64;
        debug_assert!(m >= -n / 2 && m < n / 2);
        self.coeffs[m.rem_euclid(n) as usize]
    }

    pub fn fft_order(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Smallest and largest mode with |c_m| above `rel` times the max modulus.
    pub fn mode_support(&self, rel: f64) -> (i64, i64) {
        let n = self.coeffs.len() as i64;
        let max = self.max_abs().max(1e-300);
        let mut lo = 0;
        let mut hi = 0;
        for m in -n / 2..n / 2 {
            if self.coeff(m).norm() > rel * max {
                lo = lo.min(m);
                hi = hi.max(m);
            }
        }
        (lo, hi)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Evaluates the trigonometric series at an arbitrary angle.
    pub fn eval_at(&self, t: f64) -> Complex64 {
        crate::util::eval_trig(&self.coeffs, t)
    }

    /// Coefficients of the derivative (multiplication by i*m).
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len() as i64;
        let mut out = self.coeffs.clone();
        for m in -n / 2..n / 2 {
            let idx = m.rem_euclid(n) as usize;
            out[idx] *= Complex64::new(0.0, m as f64);
        }
        Self { coeffs: out }
    }

    /// Coefficients of the mean-zero antiderivative (division by i*m; the
    /// mode-0 coefficient of the output is 0 and the input's mean is ignored).
    pub fn antiderivative(&self) -> Self {
        let n = self.coeffs.len() as i64;
        let mut out = self.coeffs.clone();
        out[0] = Complex64::new(0.0, 0.0);
        for m in -n / 2..n / 2 {
            if m == 0 {
                continue;
            }
            let idx = m.rem_euclid(n) as usize;
            out[idx] /= Complex64::new(0.0, m as f64);
        }
        Self { coeffs: out }
    }
}

/// Forward transform: samples to series coefficients.
pub fn dft(f: &PeriodicFunction) -> Result<FourierCoefficients> {
    f.validate()?;
    let n = f.n_samples();
    let mut buf = f.values().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    for v in &mut buf {
        *v *= scale;
    }
    Ok(FourierCoefficients { coeffs: buf })
}

/// Inverse transform: series coefficients to samples.
pub fn idft(c: &FourierCoefficients) -> Result<PeriodicFunction> {
    let n = c.n_samples();
    check_len(n)?;
    let mut buf = c.coeffs.clone();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    PeriodicFunction::from_complex(buf)
}

/// The conjugate-function operator realized as the Fourier multiplier
/// m >= 0 -> +1, m < 0 -> -1.
///
/// This is the unique multiplier compatible with the involution H(H f) = f
/// and with the interior Cauchy projection satisfying E(S f) = (f + H f)/2
/// once the mode 0 is assigned to the interior factor.
pub fn hilbert_transform(f: &PeriodicFunction) -> Result<PeriodicFunction> {
    let c = dft(f)?;
    let n = c.n_samples() as i64;
    let mut out = c.coeffs.clone();
    for m in -n / 2..0 {
        let idx = m.rem_euclid(n) as usize;
        out[idx] = -out[idx];
    }
    idft(&FourierCoefficients { coeffs: out })
}

/// Interior Cauchy projection: keeps modes m >= 0 (mode 0 included).
pub fn szego_interior(f: &PeriodicFunction) -> Result<FourierCoefficients> {
    let c = dft(f)?;
    let n = c.n_samples() as i64;
    let mut out = c.coeffs.clone();
    for m in -n / 2..0 {
        out[m.rem_euclid(n) as usize] = Complex64::new(0.0, 0.0);
    }
    Ok(FourierCoefficients { coeffs: out })
}

/// Exterior Cauchy projection: keeps modes m < 0.
pub fn szego_exterior(f: &PeriodicFunction) -> Result<FourierCoefficients> {
    let c = dft(f)?;
    let n = c.n_samples() as i64;
    let mut out = c.coeffs.clone();
    for m in 0..n / 2 {
        out[m.rem_euclid(n) as usize] = Complex64::new(0.0, 0.0);
    }
    Ok(FourierCoefficients { coeffs: out })
}

/// Which side of the circle a one-sided coefficient set extends to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// Evaluates the holomorphic extension sum_m c_m r^m e^{im theta} on the
/// circle of the given radius.
///
/// Interior requires radius <= 1 and coefficient support m >= 0; exterior
/// requires radius >= 1 and support m < 0, so each sum decays.
pub fn extend_holomorphic(
    c: &FourierCoefficients,
    side: Side,
    radius: f64,
) -> Result<PeriodicFunction> {
    let n = c.n_samples() as i64;
    let max = c.max_abs().max(1e-300);
    let wrong_mass = match side {
        Side::Interior => (-n / 2..0)
            .map(|m| c.coeff(m).norm())
            .fold(0.0f64, f64::max),
        Side::Exterior => (0..n / 2).map(|m| c.coeff(m).norm()).fold(0.0f64, f64::max),
    };
    if wrong_mass > 1e-12 * max {
        return Err(Error::WrongSideSupport(wrong_mass));
    }
    match side {
        Side::Interior if radius > 1.0 => {
            return Err(Error::Domain(format!(
                "interior extension needs radius <= 1, got {radius}"
            )))
        }
        Side::Exterior if radius < 1.0 => {
            return Err(Error::Domain(format!(
                "exterior extension needs radius >= 1, got {radius}"
            )))
        }
        _ => {}
    }
    let mut out = c.coeffs.clone();
    for m in -n / 2..n / 2 {
        let idx = m.rem_euclid(n) as usize;
        out[idx] *= radius.powi(m as i32);
    }
    idft(&FourierCoefficients { coeffs: out })
}

/// Boundary trace of a coefficient set (radius-1 evaluation without the
/// one-sided support check).
pub fn trace(c: &FourierCoefficients) -> Result<PeriodicFunction> {
    idft(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(n: usize, v: f64) -> PeriodicFunction {
        PeriodicFunction::from_real(vec![v; n]).unwrap()
    }

    #[test]
    fn constant_has_single_mode() {
        let f = constant(16, 1.0);
        let c = dft(&f).unwrap();
        assert!((c.coeff(0) - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        for m in -8..8i64 {
            if m != 0 {
                assert!(c.coeff(m).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn cosine_modes() {
        let f = PeriodicFunction::from_fn(64, |t| t.cos()).unwrap();
        let c = dft(&f).unwrap();
        assert!((c.coeff(1) - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        assert!((c.coeff(-1) - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        assert!(c.coeff(2).norm() < 1e-13);
    }

    #[test]
    fn non_power_of_two_rejected() {
        assert!(PeriodicFunction::from_real(vec![0.0; 24]).is_err());
        assert!(PeriodicFunction::from_real(vec![0.0; 8]).is_err());
    }

    #[test]
    fn hilbert_on_basis_modes() {
        let n = 64;
        let f = PeriodicFunction::from_fn(n, |_| 1.0).unwrap();
        let hf = hilbert_transform(&f).unwrap();
        for v in hf.values() {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        }

        // e^{i theta} is fixed, e^{-i theta} is negated.
        let plus: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / n as f64))
            .collect();
        let f = PeriodicFunction::from_complex(plus.clone()).unwrap();
        let hf = hilbert_transform(&f).unwrap();
        for (a, b) in hf.values().iter().zip(&plus) {
            assert!((a - b).norm() < 1e-13);
        }
        let minus: Vec<Complex64> = plus.iter().map(|v| v.conj()).collect();
        let f = PeriodicFunction::from_complex(minus.clone()).unwrap();
        let hf = hilbert_transform(&f).unwrap();
        for (a, b) in hf.values().iter().zip(&minus) {
            assert!((a + b).norm() < 1e-13);
        }
    }

    #[test]
    fn hilbert_of_sine_is_minus_i_cos() {
        let n = 64;
        let f = PeriodicFunction::from_fn(n, |t| t.sin()).unwrap();
        let hf = hilbert_transform(&f).unwrap();
        for (j, v) in hf.values().iter().enumerate() {
            let t = TAU * j as f64 / n as f64;
            let want = Complex64::new(0.0, -t.cos());
            assert!((v - want).norm() < 1e-13, "j={j}");
        }
    }

    #[test]
    fn szego_splits_cosine() {
        let f = PeriodicFunction::from_fn(64, |t| t.cos()).unwrap();
        let int = szego_interior(&f).unwrap();
        let ext = szego_exterior(&f).unwrap();
        assert!((int.coeff(1) - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        assert!(int.coeff(-1).norm() < 1e-15);
        assert!((ext.coeff(-1) - Complex64::new(0.5, 0.0)).norm() < 1e-13);
        assert!(ext.coeff(1).norm() < 1e-15);
        // Constant goes to the interior factor.
        let g = constant(16, 3.0);
        assert!((szego_interior(&g).unwrap().coeff(0).re - 3.0).abs() < 1e-14);
        assert!(szego_exterior(&g).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn szego_parts_sum_to_identity_exactly() {
        let f = PeriodicFunction::from_fn(64, |t| (3.0 * t).cos() + 0.2 * (5.0 * t).sin()).unwrap();
        let c = dft(&f).unwrap();
        let int = szego_interior(&f).unwrap();
        let ext = szego_exterior(&f).unwrap();
        for m in -32..32i64 {
            let s = int.coeff(m) + ext.coeff(m);
            assert_eq!(s, c.coeff(m));
        }
    }

    #[test]
    fn extension_single_modes() {
        let n = 16;
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        c[1] = Complex64::new(1.0, 0.0);
        let c = FourierCoefficients::from_fft_order(c).unwrap();
        let f = extend_holomorphic(&c, Side::Interior, 0.5).unwrap();
        for (j, v) in f.values().iter().enumerate() {
            let t = TAU * j as f64 / n as f64;
            assert!((v - 0.5 * Complex64::from_polar(1.0, t)).norm() < 1e-14);
        }

        let mut c = vec![Complex64::new(0.0, 0.0); n];
        c[n - 2] = Complex64::new(1.0, 0.0); // mode -2
        let c = FourierCoefficients::from_fft_order(c).unwrap();
        let f = extend_holomorphic(&c, Side::Exterior, 2.0).unwrap();
        for (j, v) in f.values().iter().enumerate() {
            let t = TAU * j as f64 / n as f64;
            assert!((v - 0.25 * Complex64::from_polar(1.0, -2.0 * t)).norm() < 1e-14);
        }
    }

    #[test]
    fn extension_rejects_wrong_side_and_radius() {
        let f = PeriodicFunction::from_fn(32, |t| t.cos()).unwrap();
        let c = dft(&f).unwrap();
        // cos has mass on both sides
        assert!(matches!(
            extend_holomorphic(&c, Side::Interior, 0.5),
            Err(Error::WrongSideSupport(_))
        ));
        let int = szego_interior(&f).unwrap();
        assert!(matches!(
            extend_holomorphic(&int, Side::Interior, 1.5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn boundary_trace_matches_idft() {
        let f = PeriodicFunction::from_fn(64, |t| (2.0 * t).cos()).unwrap();
        let int = szego_interior(&f).unwrap();
        let e = extend_holomorphic(&int, Side::Interior, 1.0).unwrap();
        let d = idft(&int).unwrap();
        for (a, b) in e.values().iter().zip(d.values()) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}
