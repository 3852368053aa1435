//! Deterministic fixture registry: closed-form periodic functions, circle
//! diffeomorphisms, and compactly supported Beltrami coefficients, plus the
//! JSON specs the CLI reads. Identical spec and seed always reproduce the
//! same values.

use crate::diffeo::CircleDiffeo;
use crate::error::{Error, Result};
use crate::extend::BoundaryData;
use crate::grid::{CoefficientSpec, PlanarGrid, SupportSide};
use crate::spectral::PeriodicFunction;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A sampled or closed-form periodic function.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FunctionSpec {
    /// cos(theta)
    Cosine { n: usize },
    /// sum_{k=0}^{terms-1} 2^{-alpha k} cos(2^k theta)
    Weierstrass { alpha: f64, terms: usize, n: usize },
    /// sum_{k=0}^{terms-1} 2^{-k} cos(2^k theta)
    ZygmundSeries { terms: usize, n: usize },
    /// Raw samples.
    Samples {
        n: usize,
        values_re: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values_im: Option<Vec<f64>>,
    },
}

impl FunctionSpec {
    pub fn n(&self) -> usize {
        match self {
            FunctionSpec::Cosine { n }
            | FunctionSpec::Weierstrass { n, .. }
            | FunctionSpec::ZygmundSeries { n, .. }
            | FunctionSpec::Samples { n, .. } => *n,
        }
    }

    /// Closed-form evaluation; `None` for raw samples.
    pub fn eval(&self, theta: f64) -> Option<f64> {
        match self {
            FunctionSpec::Cosine { .. } => Some(theta.cos()),
            FunctionSpec::Weierstrass { alpha, terms, .. } => Some(
                (0..*terms)
                    .map(|k| {
                        2f64.powf(-alpha * k as f64) * (2f64.powi(k as i32) * theta).cos()
                    })
                    .sum(),
            ),
            FunctionSpec::ZygmundSeries { terms, .. } => Some(
                (0..*terms)
                    .map(|k| 2f64.powi(-(k as i32)) * (2f64.powi(k as i32) * theta).cos())
                    .sum(),
            ),
            FunctionSpec::Samples { .. } => None,
        }
    }

    /// Closed-form antiderivative of the function; `None` for raw samples.
    pub fn antiderivative(&self, theta: f64) -> Option<f64> {
        match self {
            FunctionSpec::Cosine { .. } => Some(theta.sin()),
            FunctionSpec::Weierstrass { alpha, terms, .. } => Some(
                (0..*terms)
                    .map(|k| {
                        let f = 2f64.powi(k as i32);
                        2f64.powf(-alpha * k as f64) * (f * theta).sin() / f
                    })
                    .sum(),
            ),
            FunctionSpec::ZygmundSeries { terms, .. } => Some(
                (0..*terms)
                    .map(|k| {
                        let f = 2f64.powi(k as i32);
                        2f64.powi(-(k as i32)) * (f * theta).sin() / f
                    })
                    .sum(),
            ),
            FunctionSpec::Samples { .. } => None,
        }
    }

    pub fn build(&self) -> Result<PeriodicFunction> {
        match self {
            FunctionSpec::Samples {
                n,
                values_re,
                values_im,
            } => {
                if values_re.len() != *n {
                    return Err(Error::Invalid("values_re length must equal n".into()));
                }
                match values_im {
                    None => PeriodicFunction::from_real(values_re.clone()),
                    Some(im) => {
                        if im.len() != *n {
                            return Err(Error::Invalid("values_im length must equal n".into()));
                        }
                        PeriodicFunction::from_complex(
                            values_re
                                .iter()
                                .zip(im)
                                .map(|(&r, &i)| Complex64::new(r, i))
                                .collect(),
                        )
                    }
                }
            }
            _ => PeriodicFunction::from_fn(self.n(), |t| self.eval(t).unwrap()),
        }
    }

    /// Boundary data for the half-plane extension: analytic when a closed
    /// form exists, spectral otherwise.
    pub fn boundary_data(&self) -> Result<BoundaryData> {
        match self {
            FunctionSpec::Samples { .. } => BoundaryData::from_function(&self.build()?),
            _ => {
                let me = self.clone();
                let me2 = self.clone();
                Ok(BoundaryData::analytic(
                    move |x| me.eval(x).unwrap(),
                    move |x| me2.antiderivative(x).unwrap(),
                    false,
                ))
            }
        }
    }
}

/// A circle diffeomorphism fixture.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DiffeoSpec {
    Identity { n: usize },
    Rotation { n: usize, c: f64 },
    /// h(x) = x + a sin x (log h' = log(1 + a cos x)).
    SinePerturbation { n: usize, a: f64 },
    /// h built from a real log-derivative, scaled.
    FromLogDeriv {
        scale: f64,
        #[serde(flatten)]
        inner: Box<FunctionSpec>,
    },
}

impl DiffeoSpec {
    pub fn n(&self) -> usize {
        match self {
            DiffeoSpec::Identity { n }
            | DiffeoSpec::Rotation { n, .. }
            | DiffeoSpec::SinePerturbation { n, .. } => *n,
            DiffeoSpec::FromLogDeriv { inner, .. } => inner.n(),
        }
    }

    pub fn build(&self) -> Result<CircleDiffeo> {
        match self {
            DiffeoSpec::Identity { n } => CircleDiffeo::identity(*n),
            DiffeoSpec::Rotation { n, c } => CircleDiffeo::rotation(*n, *c),
            DiffeoSpec::SinePerturbation { n, a } => {
                if a.abs() >= 1.0 {
                    return Err(Error::Invalid(
                        "sine perturbation needs |a| < 1 for a diffeomorphism".into(),
                    ));
                }
                let a = *a;
                let phi = PeriodicFunction::from_fn(*n, move |t| (1.0 + a * t.cos()).ln())?;
                CircleDiffeo::from_log_derivative(&phi)
            }
            DiffeoSpec::FromLogDeriv { scale, inner } => {
                let base = inner.build()?;
                let scaled: Vec<f64> = base.real_values().iter().map(|v| v * scale).collect();
                CircleDiffeo::from_log_derivative(&PeriodicFunction::from_real(scaled)?)
            }
        }
    }

    /// Boundary data of the lift for the half-plane extension.
    pub fn boundary_data(&self) -> Result<BoundaryData> {
        match self {
            DiffeoSpec::Identity { .. } => {
                Ok(BoundaryData::analytic(|_| 0.0, |_| 0.0, true))
            }
            DiffeoSpec::Rotation { c, .. } => {
                let c = *c;
                Ok(BoundaryData::analytic(move |_| c, move |x| c * x, true))
            }
            DiffeoSpec::SinePerturbation { a, .. } => {
                let a = *a;
                Ok(BoundaryData::analytic(
                    move |x| a * x.sin(),
                    move |x| -a * x.cos(),
                    true,
                ))
            }
            DiffeoSpec::FromLogDeriv { .. } => BoundaryData::from_diffeo(&self.build()?),
        }
    }
}

/// Smooth bump on (-1, 1): exp(1 - 1/(1 - xi^2)), peak value 1.
pub fn bump(xi: f64) -> f64 {
    if xi.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - xi * xi)).exp()
    }
}

/// Derivative of `bump`.
pub fn bump_deriv(xi: f64) -> f64 {
    if xi.abs() >= 1.0 {
        0.0
    } else {
        let d = 1.0 - xi * xi;
        bump(xi) * (-2.0 * xi / (d * d))
    }
}

/// A compactly supported Beltrami coefficient fixture.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MuSpec {
    /// Dilatation of the radial map rho(r) e^{i theta} with
    /// rho(r) = r + amp * bump(xi(r)); identity outside [r0, r1].
    RadialStretch { r0: f64, r1: f64, amp: f64 },
    /// amp * bump(xi(r)) * e^{i mode theta} on the annulus [r0, r1].
    AnnulusMode {
        r0: f64,
        r1: f64,
        amp: f64,
        mode: i32,
    },
    /// Literal lattice values.
    Grid {
        spacing: f64,
        m: usize,
        values_re: Vec<f64>,
        values_im: Vec<f64>,
        r_inner: f64,
        r_outer: f64,
    },
}

fn radial_stretch_profiles(r0: f64, r1: f64, amp: f64, r: f64) -> (f64, f64) {
    let xi = (2.0 * r - r0 - r1) / (r1 - r0);
    let rho = r + amp * bump(xi);
    let drho = 1.0 + amp * bump_deriv(xi) * 2.0 / (r1 - r0);
    (rho, drho)
}

impl MuSpec {
    /// Radial dilatation modulus of the radial stretch at radius r.
    pub fn radial_stretch_mu(r0: f64, r1: f64, amp: f64, r: f64) -> f64 {
        let (rho, drho) = radial_stretch_profiles(r0, r1, amp, r);
        (r * drho - rho) / (r * drho + rho)
    }

    /// The exact radial-stretch map (the closed-form solution this
    /// coefficient came from): z -> rho(|z|) z/|z|.
    pub fn radial_stretch_map(r0: f64, r1: f64, amp: f64, z: Complex64) -> Complex64 {
        let r = z.norm();
        if r == 0.0 {
            return z;
        }
        let (rho, _) = radial_stretch_profiles(r0, r1, amp, r);
        z * (rho / r)
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            MuSpec::RadialStretch { r0, r1, .. } | MuSpec::AnnulusMode { r0, r1, .. } => {
                (*r0, *r1)
            }
            MuSpec::Grid {
                r_inner, r_outer, ..
            } => (*r_inner, *r_outer),
        }
    }

    /// The coefficient as a closed form on the chosen side of the circle.
    pub fn to_spec(&self, side: SupportSide) -> Result<CoefficientSpec> {
        match self {
            MuSpec::RadialStretch { r0, r1, amp } => {
                let (r0, r1, amp) = (*r0, *r1, *amp);
                if !(r0 > 1.0 && r0 < r1) {
                    return Err(Error::Invalid("radial stretch needs 1 < r0 < r1".into()));
                }
                // The profile must stay a homeomorphism: r rho' > 0.
                for k in 0..=2048 {
                    let r = r0 + (r1 - r0) * k as f64 / 2048.0;
                    let (_, drho) = radial_stretch_profiles(r0, r1, amp, r);
                    if drho <= 0.0 {
                        return Err(Error::Invalid(format!(
                            "radial stretch amp {amp} degenerates (rho' <= 0 at r = {r:.4})"
                        )));
                    }
                }
                Ok(CoefficientSpec {
                    side,
                    r_inner: r0,
                    r_outer: r1,
                    eval: Arc::new(move |z: Complex64| {
                        let r = z.norm();
                        let m = Self::radial_stretch_mu(r0, r1, amp, r);
                        let phase = z / r;
                        phase * phase * m
                    }),
                    envelope: Arc::new(move |r| Self::radial_stretch_mu(r0, r1, amp, r).abs()),
                })
            }
            MuSpec::AnnulusMode { r0, r1, amp, mode } => {
                let (r0, r1, amp, mode) = (*r0, *r1, *amp, *mode);
                if !(r0 > 1.0 && r0 < r1) {
                    return Err(Error::Invalid("annulus mode needs 1 < r0 < r1".into()));
                }
                if amp.abs() >= 1.0 {
                    return Err(Error::Invalid("annulus mode needs |amp| < 1".into()));
                }
                Ok(CoefficientSpec {
                    side,
                    r_inner: r0,
                    r_outer: r1,
                    eval: Arc::new(move |z: Complex64| {
                        let r = z.norm();
                        let xi = (2.0 * r - r0 - r1) / (r1 - r0);
                        let angle = z.im.atan2(z.re);
                        Complex64::from_polar(amp.abs() * bump(xi), mode as f64 * angle)
                            * amp.signum()
                    }),
                    envelope: Arc::new(move |r| {
                        let xi = (2.0 * r - r0 - r1) / (r1 - r0);
                        amp.abs() * bump(xi)
                    }),
                })
            }
            MuSpec::Grid { .. } => Err(Error::Invalid(
                "literal grids carry no closed form; build a PlanarGrid instead".into(),
            )),
        }
    }

    /// Samples onto a lattice grid (closed forms at any spacing; literal
    /// grids at their own).
    pub fn to_grid(&self, side: SupportSide, spacing: f64) -> Result<PlanarGrid> {
        match self {
            MuSpec::Grid {
                spacing: s,
                m,
                values_re,
                values_im,
                r_inner,
                r_outer,
            } => {
                if (spacing - s).abs() > 1e-12 {
                    return Err(Error::Invalid(
                        "literal grids can only be used at their own spacing".into(),
                    ));
                }
                if values_re.len() != m * m || values_im.len() != m * m {
                    return Err(Error::Invalid("grid literal needs m*m values".into()));
                }
                let values = values_re
                    .iter()
                    .zip(values_im)
                    .map(|(&r, &i)| Complex64::new(r, i))
                    .collect();
                PlanarGrid::from_values(*s, *m, values, side, *r_inner, *r_outer)
            }
            _ => PlanarGrid::sample(&self.to_spec(side)?, spacing),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weierstrass_antiderivative_consistent() {
        let spec = FunctionSpec::Weierstrass {
            alpha: 0.5,
            terms: 8,
            n: 64,
        };
        // Numerical derivative of the antiderivative matches the function.
        let h = 1e-6;
        for &x in &[0.3, 1.7, 4.4] {
            let d = (spec.antiderivative(x + h).unwrap() - spec.antiderivative(x - h).unwrap())
                / (2.0 * h);
            assert!((d - spec.eval(x).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn radial_stretch_bounds() {
        // amp 0.15 over [1.3, 2.2] stays a homeomorphism with moderate |mu|.
        let spec = MuSpec::RadialStretch {
            r0: 1.3,
            r1: 2.2,
            amp: 0.15,
        };
        let cs = spec.to_spec(SupportSide::Exterior).unwrap();
        let sup = cs.envelope_max_over(1.0, 3.0);
        assert!(sup < 0.7, "sup |mu| = {sup}");
        assert!(sup > 0.05, "fixture should not be trivial, sup = {sup}");
        // Degenerate amplitude rejected.
        let bad = MuSpec::RadialStretch {
            r0: 1.3,
            r1: 2.2,
            amp: 0.4,
        };
        assert!(bad.to_spec(SupportSide::Exterior).is_err());
    }

    #[test]
    fn radial_stretch_map_matches_mu() {
        // The closed-form map's dilatation equals the fixture's coefficient.
        let (r0, r1, amp) = (1.3, 2.2, 0.15);
        let spec = MuSpec::RadialStretch { r0, r1, amp };
        let cs = spec.to_spec(SupportSide::Exterior).unwrap();
        let h = 1e-6;
        for &(x, y) in &[(1.6, 0.3), (-1.2, 1.4), (0.2, -1.9)] {
            let z = Complex64::new(x, y);
            let f = |w: Complex64| MuSpec::radial_stretch_map(r0, r1, amp, w);
            let fx = (f(z + h) - f(z - h)) / (2.0 * h);
            let fy = (f(z + Complex64::new(0.0, h)) - f(z - Complex64::new(0.0, h))) / (2.0 * h);
            let i = Complex64::new(0.0, 1.0);
            let dz = 0.5 * (fx - i * fy);
            let dzbar = 0.5 * (fx + i * fy);
            let mu_fd = dzbar / dz;
            assert!((mu_fd - cs.value(z)).norm() < 1e-6, "z = {z}");
        }
    }

    #[test]
    fn function_spec_roundtrips_json() {
        let spec = FunctionSpec::Weierstrass {
            alpha: 0.5,
            terms: 12,
            n: 4096,
        };
        let s = serde_json::to_string(&spec).unwrap();
        let back: FunctionSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn sine_diffeo_spec_builds() {
        let d = DiffeoSpec::SinePerturbation { n: 256, a: 0.5 };
        let h = d.build().unwrap();
        for j in 0..256 {
            let x = std::f64::consts::TAU * j as f64 / 256.0;
            assert!((h.displacement()[j] - 0.5 * x.sin()).abs() < 1e-12);
        }
    }
}
