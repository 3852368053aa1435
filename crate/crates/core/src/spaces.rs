//! Discrete seminorms: Holder/Lipschitz first differences, Zygmund midpoint
//! second differences, Besov-style forward differences, weighted growth norms
//! for holomorphic functions on the disk, and decay-weighted sup norms for
//! Beltrami coefficients on annular or half-plane grids.
//!
//! All of these are grid seminorms: sups over sample pairs, monotone under
//! nested refinement, never claimed as continuum values.

use crate::error::{Error, Result};
use crate::spectral::{szego_exterior, szego_interior, FourierCoefficients, PeriodicFunction};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Which seminorm a value came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SeminormKind {
    Holder { alpha: f64 },
    Lipschitz,
    Zygmund,
    Besov { s: f64 },
    Bz,
    Az,
    BeltramiWeighted { alpha: f64 },
}

/// A computed seminorm with the resolution it was computed at.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeminormValue {
    pub value: f64,
    pub grid_n: usize,
    pub kind: SeminormKind,
    /// For weighted Beltrami norms: per-level maxima (radius or depth, max),
    /// ordered from the level farthest from the boundary toward it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<(f64, f64)>>,
}

fn require_real(f: &PeriodicFunction) -> Result<Vec<f64>> {
    f.validate()?;
    if !f.is_real() {
        return Err(Error::Invalid(
            "seminorm requires a real-valued function".into(),
        ));
    }
    Ok(f.real_values())
}

/// sup |f(x) - f(y)| / d(x,y)^alpha over grid pairs at circle distance <= pi.
///
/// alpha = 1 is the Lipschitz seminorm.
pub fn holder_seminorm(f: &PeriodicFunction, alpha: f64) -> Result<SeminormValue> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "holder exponent must be in (0, 1], got {alpha}"
        )));
    }
    let v = require_real(f)?;
    let n = v.len();
    let dx = TAU / n as f64;
    let value = (1..=n / 2)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 * dx;
            let mut m = 0.0f64;
            for i in 0..n {
                let d = (v[(i + k) % n] - v[i]).abs();
                if d > m {
                    m = d;
                }
            }
            m / t.powf(alpha)
        })
        .reduce(|| 0.0, f64::max);
    Ok(SeminormValue {
        value,
        grid_n: n,
        kind: if alpha == 1.0 {
            SeminormKind::Lipschitz
        } else {
            SeminormKind::Holder { alpha }
        },
        profile: None,
    })
}

/// sup |f(x) + f(y) - 2 f((x+y)/2)| / |x - y| over grid pairs at even index
/// distance (so the midpoint is itself a node), circle distance <= pi.
pub fn zygmund_seminorm(f: &PeriodicFunction) -> Result<SeminormValue> {
    let v = require_real(f)?;
    let complex: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    Ok(SeminormValue {
        value: zygmund_seminorm_complex(&complex),
        grid_n: v.len(),
        kind: SeminormKind::Zygmund,
        profile: None,
    })
}

/// Zygmund-type seminorm of complex samples (midpoint second difference,
/// modulus in C). Boundary-trace diagnostics use this variant directly.
pub fn zygmund_seminorm_complex(values: &[Complex64]) -> f64 {
    let n = values.len();
    let dx = TAU / n as f64;
    (1..=n / 4)
        .into_par_iter()
        .map(|k| {
            let t = 2.0 * k as f64 * dx;
            let mut m = 0.0f64;
            for i in 0..n {
                let d = (values[i] + values[(i + 2 * k) % n] - 2.0 * values[(i + k) % n]).norm();
                if d > m {
                    m = d;
                }
            }
            m / t
        })
        .reduce(|| 0.0, f64::max)
}

/// Besov-style seminorm sup_t t^{-s} max_x |Delta_t^{floor(s)+1} f(x)| with
/// forward differences, t a positive multiple of the spacing, t <= pi.
pub fn besov_seminorm(f: &PeriodicFunction, s: f64) -> Result<SeminormValue> {
    if !(s > 0.0 && s < 2.0) {
        return Err(Error::Domain(format!(
            "besov exponent must be in (0, 2), got {s}"
        )));
    }
    let v = require_real(f)?;
    let n = v.len();
    let dx = TAU / n as f64;
    let order = if s < 1.0 { 1 } else { 2 };
    let value = (1..=n / 2)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 * dx;
            let mut m = 0.0f64;
            for i in 0..n {
                let d = match order {
                    1 => (v[(i + k) % n] - v[i]).abs(),
                    _ => (v[(i + 2 * k) % n] - 2.0 * v[(i + k) % n] + v[i]).abs(),
                };
                if d > m {
                    m = d;
                }
            }
            m / t.powf(s)
        })
        .reduce(|| 0.0, f64::max);
    Ok(SeminormValue {
        value,
        grid_n: n,
        kind: SeminormKind::Besov { s },
        profile: None,
    })
}

/// Resolution of the disk growth norms: geometric radius levels toward the
/// boundary, a uniform radius sweep, and angular samples per circle.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GrowthNormParams {
    pub levels: usize,
    pub angular: usize,
    pub uniform_radii: usize,
}

impl Default for GrowthNormParams {
    fn default() -> Self {
        Self {
            levels: 14,
            angular: 2048,
            uniform_radii: 64,
        }
    }
}

/// The radius ladder: a uniform sweep plus geometric refinement toward 1.
/// Recorded in reports for reproducibility.
pub fn radius_ladder(p: &GrowthNormParams) -> Vec<f64> {
    let mut r = Vec::with_capacity(p.uniform_radii + p.levels + 1);
    r.push(0.0);
    for j in 1..=p.uniform_radii {
        r.push(j as f64 / (p.uniform_radii as f64 + 1.0));
    }
    for j in 1..=p.levels {
        r.push(1.0 - 0.5f64.powi(j as i32));
    }
    r.sort_by(|a, b| a.partial_cmp(b).unwrap());
    r.dedup();
    r
}

/// Max modulus of a Taylor polynomial sum a_m z^m on the circle of radius r,
/// sampled at `angular` angles.
fn max_on_circle(taylor: &[Complex64], r: f64, angular: usize) -> f64 {
    let mut buf = vec![Complex64::new(0.0, 0.0); angular];
    let mut rm = 1.0;
    for (m, &a) in taylor.iter().enumerate() {
        buf[m % angular] += a * rm;
        rm *= r;
    }
    rustfft::FftPlanner::new()
        .plan_fft_inverse(angular)
        .process(&mut buf);
    buf.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub(crate) fn taylor_derivative(taylor: &[Complex64]) -> Vec<Complex64> {
    if taylor.len() <= 1 {
        return vec![];
    }
    taylor
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, &a)| a * m as f64)
        .collect()
}

/// Bloch-type norm |P'(0)| + sup_r (1 - r^2) max_theta |P''(r e^{i theta})|
/// over the radius ladder, for a Taylor coefficient sequence.
pub fn bz_norm_taylor(taylor: &[Complex64], p: &GrowthNormParams) -> SeminormValue {
    let d1 = taylor_derivative(taylor);
    let d2 = taylor_derivative(&d1);
    let lead = if d1.is_empty() { 0.0 } else { d1[0].norm() };
    let mut sup = 0.0f64;
    for &r in &radius_ladder(p) {
        sup = sup.max((1.0 - r * r) * max_on_circle(&d2, r, p.angular));
    }
    SeminormValue {
        value: lead + sup,
        grid_n: p.angular,
        kind: SeminormKind::Bz,
        profile: None,
    }
}

/// Growth norm sup_r (1 - r^2) max_theta |P(r e^{i theta})| over the ladder.
pub fn az_norm_taylor(taylor: &[Complex64], p: &GrowthNormParams) -> SeminormValue {
    let mut sup = 0.0f64;
    for &r in &radius_ladder(p) {
        sup = sup.max((1.0 - r * r) * max_on_circle(taylor, r, p.angular));
    }
    SeminormValue {
        value: sup,
        grid_n: p.angular,
        kind: SeminormKind::Az,
        profile: None,
    }
}

fn check_one_sided(c: &FourierCoefficients, interior: bool) -> Result<()> {
    let n = c.n_samples() as i64;
    let max = c.max_abs().max(1e-300);
    let wrong: f64 = if interior {
        (-n / 2..0).map(|m| c.coeff(m).norm()).fold(0.0, f64::max)
    } else {
        (0..n / 2).map(|m| c.coeff(m).norm()).fold(0.0, f64::max)
    };
    if wrong > 1e-12 * max {
        return Err(Error::WrongSideSupport(wrong));
    }
    Ok(())
}

fn interior_taylor(c: &FourierCoefficients) -> Vec<Complex64> {
    let n = c.n_samples() as i64;
    (0..n / 2).map(|m| c.coeff(m)).collect()
}

/// Taylor coefficients of the reflected exterior part: the exterior function
/// Psi with modes c_{-m} reflects to Phi(w) = conj(Psi(1/conj(w))) with
/// Taylor coefficient conj(c_{-m}) at degree m, and equal weighted norms.
fn exterior_reflected_taylor(c: &FourierCoefficients) -> Vec<Complex64> {
    let n = c.n_samples() as i64;
    let mut taylor = vec![Complex64::new(0.0, 0.0); (n / 2 + 1) as usize];
    for m in 1..=n / 2 {
        let src = if m == n / 2 { -(n / 2) } else { -m };
        taylor[m as usize] = c.coeff(src).conj();
    }
    taylor
}

/// Bloch-type norm of a one-sided interior coefficient set.
pub fn bz_norm(c: &FourierCoefficients, p: &GrowthNormParams) -> Result<SeminormValue> {
    check_one_sided(c, true)?;
    Ok(bz_norm_taylor(&interior_taylor(c), p))
}

/// Growth norm of a one-sided interior coefficient set.
pub fn az_norm(c: &FourierCoefficients, p: &GrowthNormParams) -> Result<SeminormValue> {
    check_one_sided(c, true)?;
    Ok(az_norm_taylor(&interior_taylor(c), p))
}

/// Bloch-type norm of an exterior coefficient set, via reflection.
pub fn bz_norm_exterior(c: &FourierCoefficients, p: &GrowthNormParams) -> Result<SeminormValue> {
    check_one_sided(c, false)?;
    Ok(bz_norm_taylor(&exterior_reflected_taylor(c), p))
}

/// Splits a circle function into its interior/exterior projection pair.
///
/// The interior part keeps modes >= 0, the exterior modes < 0; the boundary
/// traces sum back to the function mode-by-mode.
pub fn decompose_cz(f: &PeriodicFunction) -> Result<(FourierCoefficients, FourierCoefficients)> {
    Ok((szego_interior(f)?, szego_exterior(f)?))
}

/// Geometry of a sampled Beltrami coefficient away from the unit circle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum BeltramiGeometry {
    /// Polar grid in the exterior disk: strictly increasing radii > 1,
    /// uniformly spaced angles.
    DiskExterior { radii: Vec<f64>, angles: usize },
    /// Periodic strip in the lower half-plane: uniform x on [0, 2*pi),
    /// depths y_k < 0 with |y| strictly decreasing toward the boundary.
    HalfPlanePeriodic { depths: Vec<f64>, x_nodes: usize },
}

/// Complex dilatation samples on an annular or half-plane grid, with
/// decay-weighted sup-norm queries.
#[derive(Debug, Clone)]
pub struct BeltramiField {
    pub geometry: BeltramiGeometry,
    /// Row-major: one row per radius/depth level.
    pub values: Vec<Vec<Complex64>>,
    sup_abs: f64,
}

impl BeltramiField {
    pub fn new(geometry: BeltramiGeometry, values: Vec<Vec<Complex64>>) -> Result<Self> {
        let levels = match &geometry {
            BeltramiGeometry::DiskExterior { radii, .. } => {
                if !radii.windows(2).all(|w| w[0] < w[1]) || radii.iter().any(|&r| r <= 1.0) {
                    return Err(Error::Invalid(
                        "exterior radii must be strictly increasing and > 1".into(),
                    ));
                }
                radii.len()
            }
            BeltramiGeometry::HalfPlanePeriodic { depths, .. } => {
                if !depths.iter().all(|&y| y < 0.0) {
                    return Err(Error::Invalid("depths must be negative".into()));
                }
                if !depths.windows(2).all(|w| w[0].abs() > w[1].abs()) {
                    return Err(Error::Invalid(
                        "depths must decrease strictly in |y| toward the boundary".into(),
                    ));
                }
                depths.len()
            }
        };
        if values.len() != levels {
            return Err(Error::Invalid("one value row per level required".into()));
        }
        let sup_abs = values
            .iter()
            .flat_map(|row| row.iter().map(|v| v.norm()))
            .fold(0.0, f64::max);
        if sup_abs >= 1.0 {
            return Err(Error::Invalid(format!(
                "dilatation must satisfy sup |mu| < 1, got {sup_abs}"
            )));
        }
        Ok(Self {
            geometry,
            values,
            sup_abs,
        })
    }

    /// Samples a closed form mu(r, theta) on a polar exterior grid.
    pub fn from_fn_exterior(
        radii: Vec<f64>,
        angles: usize,
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let values = radii
            .iter()
            .map(|&r| {
                (0..angles)
                    .map(|j| f(r, TAU * j as f64 / angles as f64))
                    .collect()
            })
            .collect();
        Self::new(BeltramiGeometry::DiskExterior { radii, angles }, values)
    }

    pub fn sup_abs(&self) -> f64 {
        self.sup_abs
    }

    fn weight(&self, level: usize, alpha: f64) -> f64 {
        match &self.geometry {
            BeltramiGeometry::DiskExterior { radii, .. } => {
                (radii[level] - 1.0).powf(-alpha).max(1.0)
            }
            BeltramiGeometry::HalfPlanePeriodic { depths, .. } => {
                depths[level].abs().powf(-alpha).max(1.0)
            }
        }
    }

    fn level_coordinate(&self, level: usize) -> f64 {
        match &self.geometry {
            BeltramiGeometry::DiskExterior { radii, .. } => radii[level],
            BeltramiGeometry::HalfPlanePeriodic { depths, .. } => depths[level],
        }
    }
}

/// Decay-weighted sup-norm of a Beltrami field: max over grid nodes of
/// weight * |mu|, with the per-level profile returned for decay diagnostics.
pub fn beltrami_weighted_norm(mu: &BeltramiField, alpha: f64) -> Result<SeminormValue> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "weight exponent must be in (0, 1], got {alpha}"
        )));
    }
    let mut profile = Vec::with_capacity(mu.values.len());
    let mut sup = 0.0f64;
    for (level, row) in mu.values.iter().enumerate() {
        let w = mu.weight(level, alpha);
        let m = row.iter().map(|v| v.norm()).fold(0.0, f64::max) * w;
        profile.push((mu.level_coordinate(level), m));
        sup = sup.max(m);
    }
    Ok(SeminormValue {
        value: sup,
        grid_n: mu.values.iter().map(|r| r.len()).sum(),
        kind: SeminormKind::BeltramiWeighted { alpha },
        profile: Some(profile),
    })
}
