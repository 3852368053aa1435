//! Orientation-preserving circle diffeomorphisms with continuous log-derivative
//! calculus: construction from a log-derivative, composition and inversion via
//! the cocycle identities, the composition operator P_h and its affine variant
//! Q_h, randomized operator-norm estimation, and three-point normalization.
//!
//! A diffeomorphism is carried as a monotone lift h: R -> R with
//! h(x + 2*pi) = h(x) + 2*pi; the displacement h(x) - x is periodic and
//! sampled on the uniform grid. Off-grid lift values use monotone cubic
//! interpolation; off-grid derivatives use the trigonometric series of the
//! sampled data.

use crate::error::{Error, Result};
use crate::spaces::{holder_seminorm, SeminormValue};
use crate::spectral::{dft, FourierCoefficients, PeriodicFunction};
use crate::tolerances;
use crate::util::MonotoneLift;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// A circle diffeomorphism as a monotone degree-one lift.
#[derive(Debug, Clone)]
pub struct CircleDiffeo {
    /// h(theta_j) - theta_j, periodic.
    displacement: Vec<f64>,
    /// log h' at the nodes; the derivative samples are exp of these.
    log_deriv: Vec<f64>,
    normalized: bool,
    disp_coeffs: FourierCoefficients,
    logd_coeffs: FourierCoefficients,
    interp: MonotoneLift,
}

fn coeffs_of(values: &[f64]) -> Result<FourierCoefficients> {
    dft(&PeriodicFunction::from_real(values.to_vec())?)
}

impl CircleDiffeo {
    /// Builds a diffeomorphism from displacement and log-derivative samples.
    ///
    /// The log-derivative is shifted by a constant so the grid mean of h' is
    /// exactly 1 (degree-one map); monotonicity of the lift is checked.
    pub fn from_parts(displacement: Vec<f64>, log_deriv: Vec<f64>) -> Result<Self> {
        let n = displacement.len();
        if log_deriv.len() != n {
            return Err(Error::Invalid(
                "displacement and log-derivative lengths differ".into(),
            ));
        }
        let dx = TAU / n as f64;
        for j in 0..n {
            let next = if j + 1 == n {
                displacement[0]
            } else {
                displacement[j + 1]
            };
            if next - displacement[j] + dx <= 0.0 {
                return Err(Error::MonotonicityLost(j as f64 * dx));
            }
        }
        // Renormalize so the discrete mean of exp(log h') is 1.
        let mean: f64 = log_deriv.iter().map(|&v| v.exp()).sum::<f64>() / n as f64;
        if !(mean.is_finite() && mean > 0.0) {
            return Err(Error::Invalid("derivative samples are degenerate".into()));
        }
        let shift = mean.ln();
        let log_deriv: Vec<f64> = log_deriv.iter().map(|&v| v - shift).collect();

        let lift: Vec<f64> = displacement
            .iter()
            .enumerate()
            .map(|(j, &u)| j as f64 * dx + u)
            .collect();
        let interp = MonotoneLift::new(&lift);
        let disp_coeffs = coeffs_of(&displacement)?;
        let logd_coeffs = coeffs_of(&log_deriv)?;
        let mut d = Self {
            displacement,
            log_deriv,
            normalized: false,
            disp_coeffs,
            logd_coeffs,
            interp,
        };
        d.normalized = d.fixes_three_points(1e-13);
        Ok(d)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_parts(vec![0.0; n], vec![0.0; n])
    }

    /// Rigid rotation by c: lift x + c.
    pub fn rotation(n: usize, c: f64) -> Result<Self> {
        Self::from_parts(vec![c; n], vec![0.0; n])
    }

    /// Builds h with log h' = phi + c, the constant chosen so h has degree
    /// one; h(0) = 0. The lift is x plus the spectral antiderivative of
    /// h' - 1.
    pub fn from_log_derivative(phi: &PeriodicFunction) -> Result<Self> {
        phi.validate()?;
        if !phi.is_real() {
            return Err(Error::Invalid("log-derivative must be real".into()));
        }
        let n = phi.n_samples();
        let vals = phi.real_values();
        let mean: f64 = vals.iter().map(|&v| v.exp()).sum::<f64>() / n as f64;
        let c = -mean.ln();
        let log_deriv: Vec<f64> = vals.iter().map(|&v| v + c).collect();
        let deriv_minus_one: Vec<f64> = log_deriv.iter().map(|&v| v.exp() - 1.0).collect();
        let anti = coeffs_of(&deriv_minus_one)?.antiderivative();
        let u = crate::spectral::idft(&anti)?;
        let u0 = u.values()[0].re;
        let displacement: Vec<f64> = u.values().iter().map(|v| v.re - u0).collect();
        Self::from_parts(displacement, log_deriv)
    }

    pub fn n(&self) -> usize {
        self.displacement.len()
    }

    pub fn displacement(&self) -> &[f64] {
        &self.displacement
    }

    /// Lift values h(theta_j) over one period.
    pub fn lift_values(&self) -> Vec<f64> {
        let n = self.n();
        let dx = TAU / n as f64;
        (0..n).map(|j| j as f64 * dx + self.displacement[j]).collect()
    }

    pub fn log_deriv(&self) -> &[f64] {
        &self.log_deriv
    }

    pub fn log_deriv_function(&self) -> PeriodicFunction {
        PeriodicFunction::from_real(self.log_deriv.clone()).expect("validated at construction")
    }

    /// Derivative samples exp(log h').
    pub fn deriv(&self) -> Vec<f64> {
        self.log_deriv.iter().map(|&v| v.exp()).collect()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Monotone-cubic lift evaluation at an arbitrary point.
    pub fn eval(&self, x: f64) -> f64 {
        self.interp.eval(x)
    }

    /// Trigonometric-series evaluation of log h' at an arbitrary point.
    pub fn eval_log_deriv(&self, x: f64) -> f64 {
        self.logd_coeffs.eval_at(x).re
    }

    /// Spectral derivative of the lift at an arbitrary point: 1 + u'(x).
    pub fn eval_deriv_spectral(&self, x: f64) -> f64 {
        1.0 + self.disp_coeffs.derivative().eval_at(x).re
    }

    fn fixes_three_points(&self, tol: f64) -> bool {
        let n = self.n();
        let q = n / 4;
        self.displacement[0].abs() <= tol
            && self.displacement[q].abs() <= tol
            && self.displacement[3 * q].abs() <= tol
    }

    /// Checks the construction invariants at the given tolerances; used by
    /// tests and the verification harness.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mean: f64 = self.log_deriv.iter().map(|&v| v.exp()).sum::<f64>() / n as f64;
        if (mean - 1.0).abs() > tolerances::DIFFEO_MEAN_DERIV {
            return Err(Error::Invalid(format!(
                "grid mean of h' is {mean}, expected 1"
            )));
        }
        if self.deriv().iter().any(|&d| d <= 0.0) {
            return Err(Error::Invalid("derivative must be positive".into()));
        }
        Ok(())
    }
}

/// log (h1 o h2)' = log h1' o h2 + log h2'.
pub fn compose(h1: &CircleDiffeo, h2: &CircleDiffeo) -> Result<CircleDiffeo> {
    let n = h2.n();
    let dx = TAU / n as f64;
    let mut displacement = Vec::with_capacity(n);
    let mut log_deriv = Vec::with_capacity(n);
    for j in 0..n {
        let x = j as f64 * dx;
        let y = h2.eval(x);
        displacement.push(h1.eval(y) - x);
        log_deriv.push(h1.eval_log_deriv(y) + h2.log_deriv[j]);
    }
    CircleDiffeo::from_parts(displacement, log_deriv)
}

/// log (h^{-1})' = -log h' o h^{-1}.
pub fn invert(h: &CircleDiffeo) -> Result<CircleDiffeo> {
    let n = h.n();
    let dx = TAU / n as f64;
    let mut displacement = Vec::with_capacity(n);
    let mut log_deriv = Vec::with_capacity(n);
    for j in 0..n {
        let y = j as f64 * dx;
        let x = h.interp.invert(y);
        displacement.push(x - y);
        log_deriv.push(-h.eval_log_deriv(x));
    }
    CircleDiffeo::from_parts(displacement, log_deriv)
}

/// The composition operator P_h: f -> f o h, with f interpolated by its
/// trigonometric series at the lifted points.
pub fn composition_operator(h: &CircleDiffeo, f: &PeriodicFunction) -> Result<PeriodicFunction> {
    f.validate()?;
    let c = dft(f)?;
    let n = h.n();
    let dx = TAU / n as f64;
    let values: Vec<Complex64> = (0..n).map(|j| c.eval_at(h.eval(j as f64 * dx))).collect();
    if f.is_real() {
        Ok(PeriodicFunction::from_real(values.iter().map(|v| v.re).collect()).unwrap())
    } else {
        PeriodicFunction::from_complex(values)
    }
}

/// The affine translation Q_h: f -> P_h f + log h'.
pub fn affine_translation(h: &CircleDiffeo, f: &PeriodicFunction) -> Result<PeriodicFunction> {
    let p = composition_operator(h, f)?;
    let values: Vec<Complex64> = p
        .values()
        .iter()
        .zip(&h.log_deriv)
        .map(|(v, &l)| v + l)
        .collect();
    if f.is_real() {
        Ok(PeriodicFunction::from_real(values.iter().map(|v| v.re).collect()).unwrap())
    } else {
        PeriodicFunction::from_complex(values)
    }
}

/// Seminorm space for operator-norm trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrialSpace {
    Zygmund,
    Holder(f64),
}

/// Result of randomized operator-norm estimation for P_h.
#[derive(Debug, Clone)]
pub struct OperatorNormEstimate {
    /// Max over trials of seminorm(P_h f) / seminorm(f).
    pub estimate: f64,
    /// The comparison bound: the C^{1+alpha} norm of h (Zygmund space) or
    /// max(h')^alpha (Holder space).
    pub bound: f64,
    /// estimate / bound, the measured discretization factor.
    pub k_disc: f64,
    pub trials_used: usize,
    pub trials_skipped: usize,
}

/// Grid C^{1+alpha} norm of h: holder seminorm of h' plus max h'.
pub fn c_one_plus_alpha_norm(h: &CircleDiffeo, alpha: f64) -> Result<f64> {
    let deriv = PeriodicFunction::from_real(h.deriv())?;
    let seminorm = holder_seminorm(&deriv, alpha)?.value;
    let sup = h.deriv().iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(seminorm + sup)
}

fn trial_seminorm(f: &PeriodicFunction, space: TrialSpace) -> Result<SeminormValue> {
    match space {
        TrialSpace::Zygmund => crate::spaces::zygmund_seminorm(f),
        TrialSpace::Holder(alpha) => holder_seminorm(f, alpha),
    }
}

/// Estimates the operator norm of P_h on the given space by random
/// band-limited trials with a fixed seed.
pub fn estimate_operator_norm(
    h: &CircleDiffeo,
    space: TrialSpace,
    trials: usize,
    seed: u64,
) -> Result<OperatorNormEstimate> {
    let n = h.n();
    let modes = (n / 8).min(32).max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut estimate = 0.0f64;
    let mut used = 0;
    let mut skipped = 0;
    for _ in 0..trials {
        let mut coeffs = vec![(0.0, 0.0); modes + 1];
        for c in coeffs.iter_mut().skip(1) {
            *c = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let f = PeriodicFunction::from_fn(n, |t| {
            coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, &(a, b))| a * (m as f64 * t).cos() + b * (m as f64 * t).sin())
                .sum()
        })?;
        let denom = trial_seminorm(&f, space)?.value;
        if denom < 1e-12 {
            skipped += 1;
            continue;
        }
        let num = trial_seminorm(&composition_operator(h, &f)?, space)?.value;
        estimate = estimate.max(num / denom);
        used += 1;
    }
    let bound = match space {
        TrialSpace::Zygmund => c_one_plus_alpha_norm(h, 0.5)?,
        TrialSpace::Holder(alpha) => h
            .deriv()
            .iter()
            .fold(0.0f64, |a, &b| a.max(b))
            .powf(alpha),
    };
    Ok(OperatorNormEstimate {
        estimate,
        bound,
        k_disc: estimate / bound,
        trials_used: used,
        trials_skipped: skipped,
    })
}

/// Complex 2x2 matrix acting as a Mobius transformation.
#[derive(Debug, Clone, Copy)]
struct Mobius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl Mobius {
    /// The transformation sending (z1, z2, z3) to (0, 1, infinity).
    fn to_standard(z1: Complex64, z2: Complex64, z3: Complex64) -> Self {
        Mobius {
            a: z2 - z3,
            b: -z1 * (z2 - z3),
            c: z2 - z1,
            d: -z3 * (z2 - z1),
        }
    }

    fn inverse(self) -> Self {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    fn mul(self, o: Self) -> Self {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    fn apply(self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// d/dw arg M(e^{iw}) = Re(z M'(z)/M(z)) at z = e^{iw}; positive for a
    /// circle-preserving, orientation-preserving map.
    fn boundary_deriv(self, w: f64) -> f64 {
        let z = Complex64::from_polar(1.0, w);
        let det = self.a * self.d - self.b * self.c;
        let num = self.a * z + self.b;
        let den = self.c * z + self.d;
        // z M'(z)/M(z) with M' = det/(cz+d)^2
        (z * det / (num * den)).re
    }
}

/// Mobius map of the disk sending the circle points e^{i w1}, e^{i w2},
/// e^{i w3} to 1, i, -i.
fn three_point_mobius(w1: f64, w2: f64, w3: f64) -> Mobius {
    let src = Mobius::to_standard(
        Complex64::from_polar(1.0, w1),
        Complex64::from_polar(1.0, w2),
        Complex64::from_polar(1.0, w3),
    );
    let tgt = Mobius::to_standard(
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    );
    tgt.inverse().mul(src)
}

/// Post-composes with the Mobius circle map carrying (h(1), h(i), h(-i)) back
/// to (1, i, -i), so the result fixes the lifted points 0, pi/2, 3pi/2.
///
/// Already-normalized maps are returned unchanged, making normalization
/// exactly idempotent.
pub fn normalize(h: &CircleDiffeo) -> Result<CircleDiffeo> {
    if h.is_normalized() {
        return Ok(h.clone());
    }
    let n = h.n();
    let q = n / 4;
    let dx = TAU / n as f64;
    let lift = h.lift_values();
    let m = three_point_mobius(lift[0], lift[q], lift[3 * q]);

    // Continuous branch of arg M(e^{i h(x)}) along the grid, anchored so the
    // image of node 0 is exactly 0.
    let raw: Vec<f64> = (0..n)
        .map(|j| {
            let z = m.apply(Complex64::from_polar(1.0, lift[j]));
            z.im.atan2(z.re)
        })
        .collect();
    let unwrapped = crate::util::unwrap_phase(&raw);
    let anchor = unwrapped[0];
    let mut displacement = Vec::with_capacity(n);
    let mut log_deriv = Vec::with_capacity(n);
    for j in 0..n {
        let x = j as f64 * dx;
        displacement.push(unwrapped[j] - anchor - x);
        let dphi = m.boundary_deriv(lift[j]);
        if dphi <= 0.0 {
            return Err(Error::MonotonicityLost(x));
        }
        log_deriv.push(dphi.ln() + h.log_deriv[j]);
    }
    // Snap the three fixed nodes.
    displacement[0] = 0.0;
    displacement[q] = 0.0;
    displacement[3 * q] = 0.0;
    CircleDiffeo::from_parts(displacement, log_deriv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine_diffeo(n: usize, a: f64) -> CircleDiffeo {
        let phi = PeriodicFunction::from_fn(n, move |t| (1.0 + a * t.cos()).ln()).unwrap();
        CircleDiffeo::from_log_derivative(&phi).unwrap()
    }

    #[test]
    fn zero_log_derivative_gives_identity() {
        let h = CircleDiffeo::from_log_derivative(
            &PeriodicFunction::from_fn(64, |_| 0.0).unwrap(),
        )
        .unwrap();
        for &u in h.displacement() {
            assert!(u.abs() < 1e-14);
        }
    }

    #[test]
    fn log_derivative_closed_form() {
        // log h' = log(1 + 0.5 cos): the grid mean of 1 + 0.5 cos is exactly
        // 1, so h(x) = x + 0.5 sin x.
        let h = sine_diffeo(256, 0.5);
        for j in 0..256 {
            let x = TAU * j as f64 / 256.0;
            assert!((h.displacement()[j] - 0.5 * x.sin()).abs() < 1e-12, "j={j}");
        }
        h.validate().unwrap();
    }

    #[test]
    fn compose_with_identity_is_exact() {
        let n = 256;
        let h = sine_diffeo(n, 0.5);
        let id = CircleDiffeo::identity(n).unwrap();
        let c = compose(&id, &h).unwrap();
        for j in 0..n {
            assert!((c.displacement()[j] - h.displacement()[j]).abs() < 1e-13);
            assert!((c.log_deriv()[j] - h.log_deriv()[j]).abs() < 1e-13);
        }
    }

    #[test]
    fn compose_invert_roundtrip() {
        let n = 4096;
        let h = sine_diffeo(n, 0.5);
        let hinv = invert(&h).unwrap();
        let round = compose(&h, &hinv).unwrap();
        let max_err = round
            .displacement()
            .iter()
            .map(|u| u.abs())
            .fold(0.0, f64::max);
        assert!(max_err < 1e-8, "max lift error {max_err}");
    }

    #[test]
    fn log_derivative_cocycle() {
        let n = 1024;
        let h1 = sine_diffeo(n, 0.5);
        let h2 = sine_diffeo(n, 0.3);
        let c = compose(&h1, &h2).unwrap();
        let dx = TAU / n as f64;
        let mut max = 0.0f64;
        for j in 0..n {
            let x = j as f64 * dx;
            let want = h1.eval_log_deriv(h2.eval(x)) + h2.log_deriv()[j];
            max = max.max((c.log_deriv()[j] - want).abs());
        }
        assert!(max < 1e-6, "cocycle defect {max}");
    }

    #[test]
    fn rotation_acts_by_translation() {
        let n = 64;
        let c = 5.0 * TAU / n as f64; // grid-aligned rotation
        let rot = CircleDiffeo::rotation(n, c).unwrap();
        let f = PeriodicFunction::from_fn(n, |t| (3.0 * t).cos()).unwrap();
        let g = composition_operator(&rot, &f).unwrap();
        for (j, v) in g.values().iter().enumerate() {
            let t = TAU * j as f64 / n as f64 + c;
            assert!((v.re - (3.0 * t).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn p_h_is_linear() {
        let n = 256;
        let h = sine_diffeo(n, 0.4);
        let f = PeriodicFunction::from_fn(n, |t| t.cos()).unwrap();
        let g = PeriodicFunction::from_fn(n, |t| (2.0 * t).sin()).unwrap();
        let sum =
            PeriodicFunction::from_fn(n, |t| 2.0 * t.cos() - 0.7 * (2.0 * t).sin()).unwrap();
        let ps = composition_operator(&h, &sum).unwrap();
        let pf = composition_operator(&h, &f).unwrap();
        let pg = composition_operator(&h, &g).unwrap();
        for j in 0..n {
            let want = 2.0 * pf.values()[j] - 0.7 * pg.values()[j];
            assert!((ps.values()[j] - want).norm() < 1e-10);
        }
    }

    #[test]
    fn q_h_of_zero_is_log_deriv() {
        let n = 256;
        let h = sine_diffeo(n, 0.5);
        let zero = PeriodicFunction::from_fn(n, |_| 0.0).unwrap();
        let q = affine_translation(&h, &zero).unwrap();
        for (v, &l) in q.values().iter().zip(h.log_deriv()) {
            assert!((v.re - l).abs() < 1e-14);
        }
    }

    #[test]
    fn q_cocycle() {
        let n = 1024;
        let h1 = sine_diffeo(n, 0.5);
        let h2 = sine_diffeo(n, 0.3);
        let f = PeriodicFunction::from_fn(n, |t| (2.0 * t).cos()).unwrap();
        let lhs = affine_translation(&h2, &affine_translation(&h1, &f).unwrap()).unwrap();
        let rhs = affine_translation(&compose(&h1, &h2).unwrap(), &f).unwrap();
        let mut max = 0.0f64;
        for j in 0..n {
            max = max.max((lhs.values()[j] - rhs.values()[j]).norm());
        }
        assert!(max < 1e-6, "Q cocycle defect {max}");
    }

    #[test]
    fn opnorm_identity_and_rotation_are_one() {
        let n = 256;
        let id = CircleDiffeo::identity(n).unwrap();
        let est = estimate_operator_norm(&id, TrialSpace::Zygmund, 16, 7).unwrap();
        assert!((est.estimate - 1.0).abs() < 1e-9, "{}", est.estimate);
        let rot = CircleDiffeo::rotation(n, 16.0 * TAU / n as f64).unwrap();
        let est = estimate_operator_norm(&rot, TrialSpace::Zygmund, 16, 7).unwrap();
        assert!((est.estimate - 1.0).abs() < 1e-9, "{}", est.estimate);
    }

    #[test]
    fn normalization_fixes_three_points_and_is_idempotent() {
        let n = 1024;
        let h = compose(
            &sine_diffeo(n, 0.4),
            &CircleDiffeo::rotation(n, 0.9).unwrap(),
        )
        .unwrap();
        let g = normalize(&h).unwrap();
        let q = n / 4;
        assert_eq!(g.displacement()[0], 0.0);
        assert_eq!(g.displacement()[q], 0.0);
        assert_eq!(g.displacement()[3 * q], 0.0);
        assert!(g.is_normalized());
        let g2 = normalize(&g).unwrap();
        for j in 0..n {
            assert_eq!(g.displacement()[j], g2.displacement()[j]);
            assert_eq!(g.log_deriv()[j], g2.log_deriv()[j]);
        }
        g.validate().unwrap();
    }

    #[test]
    fn normalize_preserves_the_map_up_to_mobius() {
        // The normalized map is M o h with M a circle Mobius map, so it is
        // still a diffeomorphism; its inverse composed with it is near id.
        let n = 2048;
        let h = sine_diffeo(n, 0.5);
        let g = normalize(&h).unwrap();
        let ginv = invert(&g).unwrap();
        let round = compose(&g, &ginv).unwrap();
        let max: f64 = round
            .displacement()
            .iter()
            .map(|u| u.abs())
            .fold(0.0, f64::max);
        assert!(max < 1e-8, "{max}");
    }
}
