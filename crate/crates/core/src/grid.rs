//! Square cell-centered lattices carrying compactly supported Beltrami
//! coefficients for the planar solver.
//!
//! Coefficients live on an annulus separated from the unit circle: exterior
//! supports sit in `r_inner <= |z| <= r_outer` with `r_inner > 1`; disk-side
//! supports are quoted with the same radii and occupy the mirror annulus
//! `1/r_outer <= |z| <= 1/r_inner`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Side of the unit circle a coefficient lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportSide {
    Exterior,
    Disk,
}

/// A compactly supported coefficient as a closed form: evaluation plus
/// support radii (always in exterior terms) and a radial envelope for
/// continuum sup estimates.
#[derive(Clone)]
pub struct CoefficientSpec {
    pub side: SupportSide,
    /// Support annulus radii in exterior terms (1 < r_inner <= r_outer).
    pub r_inner: f64,
    pub r_outer: f64,
    pub eval: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    /// max over angles of |mu| on the circle of radius r (exterior model);
    /// used for continuum-faithful norm and annulus maxima.
    pub envelope: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for CoefficientSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CoefficientSpec({:?}, [{}, {}])",
            self.side, self.r_inner, self.r_outer
        )
    }
}

impl CoefficientSpec {
    /// Actual radial interval occupied in the plane.
    pub fn absolute_radii(&self) -> (f64, f64) {
        match self.side {
            SupportSide::Exterior => (self.r_inner, self.r_outer),
            SupportSide::Disk => (1.0 / self.r_outer, 1.0 / self.r_inner),
        }
    }

    /// Value at a point, zero outside the support annulus.
    pub fn value(&self, z: Complex64) -> Complex64 {
        let (lo, hi) = self.absolute_radii();
        let r = z.norm();
        if r < lo - 1e-12 || r > hi + 1e-12 {
            Complex64::new(0.0, 0.0)
        } else {
            (self.eval)(z)
        }
    }

    /// The mirror coefficient on the other side: the dilatation of the
    /// inversion-conjugated map, conj(mu(1/conj(z))) (z/conj(z))^2.
    pub fn reflected(&self) -> CoefficientSpec {
        let inner = self.clone();
        let side = match self.side {
            SupportSide::Exterior => SupportSide::Disk,
            SupportSide::Disk => SupportSide::Exterior,
        };
        CoefficientSpec {
            side,
            r_inner: self.r_inner,
            r_outer: self.r_outer,
            envelope: self.envelope.clone(),
            eval: Arc::new(move |z: Complex64| {
                let w = 1.0 / z.conj();
                let phase = z / z.conj();
                inner.value(w).conj() * phase * phase
            }),
        }
    }

    /// Continuum decay-weighted sup over the support, by dense radial
    /// sampling of the envelope. Weight in exterior terms:
    /// ((r - 1)^{-alpha} v 1); the mirror side uses ((1 - r)^{-alpha} v 1),
    /// which coincides under r -> 1/r up to the distortion of the mirror
    /// radius, so the exterior-model envelope is used for both.
    pub fn weighted_norm_envelope(&self, alpha: f64) -> f64 {
        let samples = 4096;
        let (lo, hi) = (self.r_inner, self.r_outer);
        let mut sup: f64 = 0.0;
        for k in 0..=samples {
            let r = lo + (hi - lo) * k as f64 / samples as f64;
            let w = (r - 1.0).powf(-alpha).max(1.0);
            sup = sup.max(w * (self.envelope)(r));
        }
        sup
    }

    /// Continuum sup of |mu| over an exterior-model radial interval.
    pub fn envelope_max_over(&self, lo: f64, hi: f64) -> f64 {
        let (slo, shi) = (self.r_inner, self.r_outer);
        let lo = lo.max(slo);
        let hi = hi.min(shi);
        if lo >= hi {
            return 0.0;
        }
        let samples = 2048;
        let mut sup: f64 = 0.0;
        for k in 0..=samples {
            let r = lo + (hi - lo) * k as f64 / samples as f64;
            sup = sup.max((self.envelope)(r));
        }
        sup
    }
}

/// A sampled coefficient on a square cell-centered lattice covering its
/// support annulus with margin.
#[derive(Debug, Clone)]
pub struct PlanarGrid {
    spacing: f64,
    /// Nodes per side; node i has coordinate (i + 0.5) * spacing - half.
    m: usize,
    half: f64,
    values: Vec<Complex64>,
    side: SupportSide,
    r_inner: f64,
    r_outer: f64,
    sup_abs: f64,
}

impl PlanarGrid {
    /// Samples a coefficient spec at the given spacing.
    ///
    /// Checks the support separation (r_inner > 1) and the resolution rule
    /// spacing <= (r_inner - 1)/8.
    pub fn sample(spec: &CoefficientSpec, spacing: f64) -> Result<Self> {
        if !(spec.r_inner > 1.0 && spec.r_inner <= spec.r_outer) {
            return Err(Error::Invalid(format!(
                "support annulus needs 1 < r_inner <= r_outer, got [{}, {}]",
                spec.r_inner, spec.r_outer
            )));
        }
        if spacing > (spec.r_inner - 1.0) / 8.0 {
            return Err(Error::Invalid(format!(
                "spacing {spacing} exceeds (r_inner - 1)/8 = {}",
                (spec.r_inner - 1.0) / 8.0
            )));
        }
        let (_, hi) = spec.absolute_radii();
        let need = hi + 4.0 * spacing;
        let half_m = (need / spacing).ceil() as usize + 1;
        let m = 2 * half_m;
        let half = m as f64 * spacing / 2.0;
        let mut values = vec![Complex64::new(0.0, 0.0); m * m];
        let mut sup: f64 = 0.0;
        for iy in 0..m {
            let y = (iy as f64 + 0.5) * spacing - half;
            for ix in 0..m {
                let x = (ix as f64 + 0.5) * spacing - half;
                let v = spec.value(Complex64::new(x, y));
                sup = sup.max(v.norm());
                values[iy * m + ix] = v;
            }
        }
        if sup >= 1.0 {
            return Err(Error::Invalid(format!(
                "coefficient has sup |mu| = {sup} >= 1"
            )));
        }
        Ok(Self {
            spacing,
            m,
            half,
            values,
            side: spec.side,
            r_inner: spec.r_inner,
            r_outer: spec.r_outer,
            sup_abs: sup,
        })
    }

    /// Wraps literal values on a lattice; support radii must still separate
    /// the coefficient from the unit circle.
    pub fn from_values(
        spacing: f64,
        m: usize,
        values: Vec<Complex64>,
        side: SupportSide,
        r_inner: f64,
        r_outer: f64,
    ) -> Result<Self> {
        if values.len() != m * m {
            return Err(Error::Invalid("value count must be m*m".into()));
        }
        if !(r_inner > 1.0 && r_inner <= r_outer) {
            return Err(Error::Invalid(
                "support annulus needs 1 < r_inner <= r_outer".into(),
            ));
        }
        if spacing > (r_inner - 1.0) / 8.0 {
            return Err(Error::Invalid(format!(
                "spacing {spacing} exceeds (r_inner - 1)/8"
            )));
        }
        let half = m as f64 * spacing / 2.0;
        let sup = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if sup >= 1.0 {
            return Err(Error::Invalid("sup |mu| >= 1".into()));
        }
        Ok(Self {
            spacing,
            m,
            half,
            values,
            side,
            r_inner,
            r_outer,
            sup_abs: sup,
        })
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn nodes_per_side(&self) -> usize {
        self.m
    }

    pub fn side(&self) -> SupportSide {
        self.side
    }

    pub fn support_radii(&self) -> (f64, f64) {
        (self.r_inner, self.r_outer)
    }

    pub fn sup_abs(&self) -> f64 {
        self.sup_abs
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn coord(&self, ix: usize, iy: usize) -> Complex64 {
        Complex64::new(
            (ix as f64 + 0.5) * self.spacing - self.half,
            (iy as f64 + 0.5) * self.spacing - self.half,
        )
    }

    /// Value at an arbitrary point by exact node lookup (zero off-lattice or
    /// between nodes beyond rounding tolerance).
    pub fn value_at(&self, z: Complex64) -> Complex64 {
        let fx = (z.re + self.half) / self.spacing - 0.5;
        let fy = (z.im + self.half) / self.spacing - 0.5;
        let ix = fx.round();
        let iy = fy.round();
        if (fx - ix).abs() > 1e-6 || (fy - iy).abs() > 1e-6 {
            return Complex64::new(0.0, 0.0);
        }
        if ix < 0.0 || iy < 0.0 || ix >= self.m as f64 || iy >= self.m as f64 {
            return Complex64::new(0.0, 0.0);
        }
        self.values[iy as usize * self.m + ix as usize]
    }

    /// Grid-side decay-weighted sup: max over nodes of the side-appropriate
    /// weight times |mu|.
    pub fn weighted_norm_grid(&self, alpha: f64) -> f64 {
        let mut sup: f64 = 0.0;
        for iy in 0..self.m {
            for ix in 0..self.m {
                let v = self.values[iy * self.m + ix];
                if v.norm() == 0.0 {
                    continue;
                }
                let r = self.coord(ix, iy).norm();
                let w = match self.side {
                    SupportSide::Exterior => (r - 1.0).powf(-alpha).max(1.0),
                    SupportSide::Disk => (1.0 - r).powf(-alpha).max(1.0),
                };
                sup = sup.max(w * v.norm());
            }
        }
        sup
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block_spec() -> CoefficientSpec {
        CoefficientSpec {
            side: SupportSide::Exterior,
            r_inner: 1.5,
            r_outer: 2.0,
            eval: Arc::new(|_| Complex64::new(0.3, 0.0)),
            envelope: Arc::new(|_| 0.3),
        }
    }

    #[test]
    fn sampling_respects_support_and_margin() {
        let g = PlanarGrid::sample(&block_spec(), 1.0 / 32.0).unwrap();
        for iy in 0..g.nodes_per_side() {
            for ix in 0..g.nodes_per_side() {
                let r = g.coord(ix, iy).norm();
                let v = g.values()[iy * g.nodes_per_side() + ix];
                if r < 1.5 - 1e-9 || r > 2.0 + 1e-9 {
                    assert_eq!(v, Complex64::new(0.0, 0.0));
                }
            }
        }
        assert!((g.sup_abs() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn spacing_rule_enforced() {
        let mut spec = block_spec();
        spec.r_inner = 1.1;
        assert!(PlanarGrid::sample(&spec, 1.0 / 32.0).is_err());
        assert!(PlanarGrid::sample(&spec, 1.0 / 128.0).is_ok());
    }

    #[test]
    fn reflection_is_unimodular_mirror() {
        let spec = CoefficientSpec {
            side: SupportSide::Exterior,
            r_inner: 1.5,
            r_outer: 2.0,
            eval: Arc::new(|z: Complex64| {
                Complex64::new(0.2, 0.1) * (z / z.norm()).powi(2)
            }),
            envelope: Arc::new(|_| (0.2f64 * 0.2 + 0.1 * 0.1).sqrt()),
        };
        let refl = spec.reflected();
        assert_eq!(refl.side, SupportSide::Disk);
        let z = Complex64::new(0.4, 0.35); // |z| in [1/2, 1/1.5]
        let w = 1.0 / z.conj();
        assert!((refl.value(z).norm() - spec.value(w).norm()).abs() < 1e-12);
        // Double reflection comes back to the original values.
        let back = refl.reflected();
        let ze = Complex64::new(1.2, 1.1);
        assert!((back.value(ze) - spec.value(ze)).norm() < 1e-12);
    }

    #[test]
    fn weighted_norm_matches_brute_force() {
        let g = PlanarGrid::sample(&block_spec(), 1.0 / 32.0).unwrap();
        // Brute force over all nodes.
        let mut want: f64 = 0.0;
        for iy in 0..g.nodes_per_side() {
            for ix in 0..g.nodes_per_side() {
                let v = g.values()[iy * g.nodes_per_side() + ix].norm();
                if v > 0.0 {
                    let r = g.coord(ix, iy).norm();
                    want = want.max(v * (r - 1.0).powf(-1.0).max(1.0));
                }
            }
        }
        assert_eq!(g.weighted_norm_grid(1.0), want);
        // The inner rim weight is 1/0.5 = 2, so the norm is close to 0.6.
        assert!((g.weighted_norm_grid(1.0) - 0.6).abs() < 0.02);
    }
}
