//! Periodic integral-average extension of circle data to the lower
//! half-plane, with d-bar and complex-dilatation fields and decay-order
//! diagnostics.
//!
//! The extension of periodic boundary data f at z = x + iy (y < 0) is
//!
//!   Phi = (alpha + beta)/2 - i (r/2) (alpha - beta),   r = 2,
//!
//! with alpha = int_0^1 f(x + t|y|) dt and beta = int_0^1 f(x - t|y|) dt.
//! The vertical parameter r = 2 makes the identity lift extend to the
//! identity. Both averages reduce to antiderivative differences
//! (A(x + |y|) - A(x))/|y|, which is how they are evaluated; the partial
//! derivatives of Phi then come out analytically as combinations of point
//! values of f and the averages themselves, never from grid differencing.

use crate::diffeo::CircleDiffeo;
use crate::error::{Error, Result};
use crate::spectral::{dft, FourierCoefficients, PeriodicFunction};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::sync::Arc;

/// What a half-plane field holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    Map,
    Dbar,
    Dilatation,
}

/// Values on a periodic strip grid in the lower half-plane: uniform x on
/// [0, 2*pi) with no duplicated seam column, depths y_k < 0 strictly
/// decreasing in |y| toward the boundary.
#[derive(Debug, Clone)]
pub struct HalfPlaneField {
    pub kind: FieldKind,
    pub x_nodes: usize,
    pub depths: Vec<f64>,
    /// One row per depth. For `kind = Map` of a diffeomorphism extension the
    /// stored value is Phi(z) - z (the periodic part); `has_linear_part`
    /// records that convention.
    pub values: Vec<Vec<Complex64>>,
    pub has_linear_part: bool,
}

impl HalfPlaneField {
    pub fn x(&self, i: usize) -> f64 {
        TAU * i as f64 / self.x_nodes as f64
    }

    /// Per-depth maxima of |value| * |y|^{-order}, ordered as `depths`
    /// (deepest level first).
    pub fn decay_profile(&self, order: f64) -> Vec<(f64, f64)> {
        self.depths
            .iter()
            .zip(&self.values)
            .map(|(&y, row)| {
                let m = row.iter().map(|v| v.norm()).fold(0.0, f64::max);
                (y, m * y.abs().powf(-order))
            })
            .collect()
    }

    pub fn sup_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|r| r.iter().map(|v| v.norm()))
            .fold(0.0, f64::max)
    }
}

/// Geometric depth ladder: |y| from y_max halving `levels` times, floored at
/// y_min (one sample spacing, below which the extension is unresolved).
pub fn dyadic_depths(y_max: f64, levels: usize, y_min: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(levels);
    let mut a = y_max;
    for _ in 0..levels {
        if a < y_min {
            break;
        }
        out.push(-a);
        a *= 0.5;
    }
    out
}

/// Access to the boundary data f and its antiderivative A. Closed forms give
/// exact values; sampled data uses its trigonometric series.
#[derive(Clone)]
pub enum BoundaryData {
    Analytic {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        /// Antiderivative of the periodic part (the x^2/2 of a lift is added
        /// internally when `linear_part` is set).
        antiderivative: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        linear_part: bool,
    },
    Spectral {
        coeffs: FourierCoefficients,
        anti: FourierCoefficients,
        anti0: Complex64,
        mean: f64,
        linear_part: bool,
    },
}

impl std::fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryData::Analytic { .. } => f.write_str("BoundaryData::Analytic"),
            BoundaryData::Spectral { .. } => f.write_str("BoundaryData::Spectral"),
        }
    }
}

impl BoundaryData {
    /// Periodic function from samples.
    pub fn from_function(f: &PeriodicFunction) -> Result<Self> {
        f.validate()?;
        if !f.is_real() {
            return Err(Error::Invalid("extension input must be real".into()));
        }
        let coeffs = dft(f)?;
        let mean = coeffs.coeff(0).re;
        let anti = coeffs.antiderivative();
        let anti0 = anti.eval_at(0.0);
        Ok(BoundaryData::Spectral {
            coeffs,
            anti,
            anti0,
            mean,
            linear_part: false,
        })
    }

    /// The monotone lift of a circle diffeomorphism; the linear part of both
    /// the lift and its antiderivative is handled exactly.
    pub fn from_diffeo(h: &CircleDiffeo) -> Result<Self> {
        let u = PeriodicFunction::from_real(h.displacement().to_vec())?;
        let coeffs = dft(&u)?;
        let mean = coeffs.coeff(0).re;
        let anti = coeffs.antiderivative();
        let anti0 = anti.eval_at(0.0);
        Ok(BoundaryData::Spectral {
            coeffs,
            anti,
            anti0,
            mean,
            linear_part: true,
        })
    }

    /// Closed-form data: `f` is the periodic part (plus x for a lift when
    /// `linear_part`), `antiderivative` integrates the periodic part only.
    pub fn analytic(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        antiderivative: impl Fn(f64) -> f64 + Send + Sync + 'static,
        linear_part: bool,
    ) -> Self {
        BoundaryData::Analytic {
            f: Arc::new(f),
            antiderivative: Arc::new(antiderivative),
            linear_part,
        }
    }

    pub fn has_linear_part(&self) -> bool {
        match self {
            BoundaryData::Analytic { linear_part, .. } => *linear_part,
            BoundaryData::Spectral { linear_part, .. } => *linear_part,
        }
    }

    /// f(x), including the linear part if any.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            BoundaryData::Analytic { f, linear_part, .. } => {
                f(x) + if *linear_part { x } else { 0.0 }
            }
            BoundaryData::Spectral {
                coeffs,
                linear_part,
                ..
            } => coeffs.eval_at(x).re + if *linear_part { x } else { 0.0 },
        }
    }

    /// Antiderivative A(x) with A' = f; the additive constant is fixed.
    pub fn antiderivative(&self, x: f64) -> f64 {
        match self {
            BoundaryData::Analytic {
                antiderivative,
                linear_part,
                ..
            } => antiderivative(x) + if *linear_part { 0.5 * x * x } else { 0.0 },
            BoundaryData::Spectral {
                anti,
                anti0,
                mean,
                linear_part,
                ..
            } => {
                (anti.eval_at(x) - anti0).re
                    + mean * x
                    + if *linear_part { 0.5 * x * x } else { 0.0 }
            }
        }
    }

    /// int_0^1 f(x + t s) dt for s != 0, as an antiderivative difference.
    /// The linear part of a lift contributes x + s/2 exactly, avoiding the
    /// cancellation of differencing x^2/2 terms at small |s|.
    fn average(&self, x: f64, s: f64) -> f64 {
        match self {
            BoundaryData::Analytic {
                antiderivative,
                linear_part,
                ..
            } => {
                (antiderivative(x + s) - antiderivative(x)) / s
                    + if *linear_part { x + 0.5 * s } else { 0.0 }
            }
            BoundaryData::Spectral {
                anti,
                mean,
                linear_part,
                ..
            } => {
                (anti.eval_at(x + s) - anti.eval_at(x)).re / s
                    + mean
                    + if *linear_part { x + 0.5 * s } else { 0.0 }
            }
        }
    }
}

/// The extension value and its Wirtinger derivatives at one point, all from
/// analytic formulas.
#[derive(Debug, Clone, Copy)]
pub struct ExtensionJet {
    pub phi: Complex64,
    pub d_z: Complex64,
    pub d_zbar: Complex64,
}

/// Evaluates the extension and its derivatives at x + iy, y < 0.
pub fn extension_jet(data: &BoundaryData, x: f64, y: f64) -> ExtensionJet {
    let ay = y.abs();
    let alpha = data.average(x, ay);
    // int_0^1 f(x - t ay) dt = (A(x) - A(x - ay))/ay.
    let beta = data.average(x, -ay);
    let f_plus = data.eval(x + ay);
    let f_minus = data.eval(x - ay);
    let f_here = data.eval(x);

    let phi = Complex64::new(0.5 * (alpha + beta), -(alpha - beta));

    // d/dx alpha = (f(x+ay) - f(x))/ay; d/d(ay) alpha = (f(x+ay) - alpha)/ay;
    // same pattern for beta with the sign of the sweep reversed.
    let dax = (f_plus - f_here) / ay;
    let dbx = (f_here - f_minus) / ay;
    let day = (f_plus - alpha) / ay;
    let dby = (f_minus - beta) / ay;

    let phi_x = Complex64::new(0.5 * (dax + dbx), -(dax - dbx));
    // y = -ay here, so d/dy = -d/d(ay).
    let phi_y = -Complex64::new(0.5 * (day + dby), -(day - dby));

    let i = Complex64::new(0.0, 1.0);
    ExtensionJet {
        phi,
        d_z: 0.5 * (phi_x - i * phi_y),
        d_zbar: 0.5 * (phi_x + i * phi_y),
    }
}

fn check_depths(depths: &[f64]) -> Result<()> {
    if depths.is_empty() || depths.iter().any(|&y| y >= 0.0) {
        return Err(Error::Invalid("depths must be negative".into()));
    }
    Ok(())
}

/// Extends periodic boundary data to a strip grid in the lower half-plane.
pub fn ba_extend(data: &BoundaryData, x_nodes: usize, depths: &[f64]) -> Result<HalfPlaneField> {
    check_depths(depths)?;
    let linear = data.has_linear_part();
    let values: Vec<Vec<Complex64>> = depths
        .iter()
        .map(|&y| {
            (0..x_nodes)
                .map(|i| {
                    let x = TAU * i as f64 / x_nodes as f64;
                    let jet = extension_jet(data, x, y);
                    if linear {
                        jet.phi - Complex64::new(x, y)
                    } else {
                        jet.phi
                    }
                })
                .collect()
        })
        .collect();
    Ok(HalfPlaneField {
        kind: FieldKind::Map,
        x_nodes,
        depths: depths.to_vec(),
        values,
        has_linear_part: linear,
    })
}

/// d-bar field of the extension: (d/dx + i d/dy)/2 applied to the map, from
/// the analytic derivative formulas.
pub fn dbar_field(data: &BoundaryData, x_nodes: usize, depths: &[f64]) -> Result<HalfPlaneField> {
    check_depths(depths)?;
    let values: Vec<Vec<Complex64>> = depths
        .iter()
        .map(|&y| {
            (0..x_nodes)
                .map(|i| extension_jet(data, TAU * i as f64 / x_nodes as f64, y).d_zbar)
                .collect()
        })
        .collect();
    Ok(HalfPlaneField {
        kind: FieldKind::Dbar,
        x_nodes,
        depths: depths.to_vec(),
        values,
        has_linear_part: false,
    })
}

/// Complex dilatation of the extension; fails if the Jacobian degenerates.
pub fn dilatation_field(
    data: &BoundaryData,
    x_nodes: usize,
    depths: &[f64],
) -> Result<HalfPlaneField> {
    check_depths(depths)?;
    let mut values = Vec::with_capacity(depths.len());
    for &y in depths {
        let mut row = Vec::with_capacity(x_nodes);
        for i in 0..x_nodes {
            let x = TAU * i as f64 / x_nodes as f64;
            let jet = extension_jet(data, x, y);
            let jac = jet.d_z.norm_sqr() - jet.d_zbar.norm_sqr();
            if jac <= 0.0 {
                return Err(Error::DegenerateJacobian { x, y });
            }
            row.push(jet.d_zbar / jet.d_z);
        }
        values.push(row);
    }
    Ok(HalfPlaneField {
        kind: FieldKind::Dilatation,
        x_nodes,
        depths: depths.to_vec(),
        values,
        has_linear_part: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_data(n: usize) -> BoundaryData {
        BoundaryData::from_diffeo(&CircleDiffeo::identity(n).unwrap()).unwrap()
    }

    #[test]
    fn identity_extends_to_identity() {
        let data = identity_data(64);
        for &(x, y) in &[(0.3, -0.5), (2.0, -0.01), (5.5, -2.0)] {
            let jet = extension_jet(&data, x, y);
            assert!((jet.phi - Complex64::new(x, y)).norm() < 1e-12);
            assert!(jet.d_zbar.norm() < 1e-12);
            assert!((jet.d_z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn constants_extend_to_constants() {
        let f = PeriodicFunction::from_fn(64, |_| 3.25).unwrap();
        let data = BoundaryData::from_function(&f).unwrap();
        let jet = extension_jet(&data, 1.0, -0.7);
        assert!((jet.phi - Complex64::new(3.25, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn identity_dilatation_vanishes() {
        let data = identity_data(64);
        let depths = dyadic_depths(0.5, 4, 1e-3);
        let mu = dilatation_field(&data, 64, &depths).unwrap();
        for row in &mu.values {
            for v in row {
                assert!(v.norm() < 1e-12);
            }
        }
    }

    #[test]
    fn cosine_extension_matches_gauss_quadrature() {
        // Independent check of the average-based evaluation against direct
        // 64-node Gauss quadrature of the defining integrals.
        let f = PeriodicFunction::from_fn(4096, |t| t.cos()).unwrap();
        let data = BoundaryData::from_function(&f).unwrap();
        let (x, y) = (0.0f64, -0.5f64);
        let (nodes, weights) = crate::util::gauss_legendre_unit(64);
        let ay: f64 = y.abs();
        let alpha: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&t, &w)| w * (x + t * ay).cos())
            .sum();
        let beta: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&t, &w)| w * (x - t * ay).cos())
            .sum();
        let want = Complex64::new(0.5 * (alpha + beta), -(alpha - beta));
        let jet = extension_jet(&data, x, y);
        assert!(
            (jet.phi - want).norm() < 1e-10,
            "{:?} vs {:?}",
            jet.phi,
            want
        );
    }

    #[test]
    fn dbar_matches_finite_differences() {
        let f = PeriodicFunction::from_fn(1024, |t| t.cos()).unwrap();
        let data = BoundaryData::from_function(&f).unwrap();
        let (x, y) = (1.1, -0.4);
        let jet = extension_jet(&data, x, y);
        let h = 1e-5;
        let px =
            (extension_jet(&data, x + h, y).phi - extension_jet(&data, x - h, y).phi) / (2.0 * h);
        let py =
            (extension_jet(&data, x, y + h).phi - extension_jet(&data, x, y - h).phi) / (2.0 * h);
        let dbar_fd = 0.5 * (px + Complex64::new(0.0, 1.0) * py);
        assert!(
            (jet.d_zbar - dbar_fd).norm() <= 0.05 * dbar_fd.norm().max(1e-6),
            "analytic {:?} fd {:?}",
            jet.d_zbar,
            dbar_fd
        );
    }

    #[test]
    fn extension_commutes_with_rotation() {
        let n = 1024;
        let c = 0.37; // not grid aligned
        let f = PeriodicFunction::from_fn(n, |t| (3.0 * t).cos() + 0.4 * t.sin()).unwrap();
        let g = PeriodicFunction::from_fn(n, move |t| (3.0 * (t + c)).cos() + 0.4 * (t + c).sin())
            .unwrap();
        let df = BoundaryData::from_function(&f).unwrap();
        let dg = BoundaryData::from_function(&g).unwrap();
        for &(x, y) in &[(0.5, -0.25), (3.0, -0.06)] {
            let a = extension_jet(&dg, x, y).phi;
            let b = extension_jet(&df, x + c, y).phi;
            assert!((a - b).norm() < 1e-10, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn envelope_profile_is_bounded_by_one() {
        // |value| = |y| under the order-1 weight.
        let depths = dyadic_depths(0.8, 5, 1e-3);
        let values = depths
            .iter()
            .map(|&y: &f64| vec![Complex64::new(y.abs().min(1.0), 0.0); 16])
            .collect();
        let field = HalfPlaneField {
            kind: FieldKind::Dbar,
            x_nodes: 16,
            depths: depths.clone(),
            values,
            has_linear_part: false,
        };
        for (_, m) in field.decay_profile(1.0) {
            assert!(m <= 1.0 + 1e-12);
        }
    }
}
