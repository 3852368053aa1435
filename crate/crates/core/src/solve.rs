//! Desk-scale planar Beltrami solver.
//!
//! Solves dbar F = mu dF for compactly supported mu by the Neumann iteration
//! g = mu + mu * (B g), where B is the planar singular integral of the
//! derivative kernel discretized by midpoint quadrature on a square
//! cell-centered lattice; the singular self-cell is dropped (its symmetric
//! principal value vanishes by the kernel's parity). The map is recovered as
//! F = z + (Cauchy transform of g) and post-normalized by an affine
//! correction.
//!
//! Both lattice transforms are discrete convolutions and are applied by FFT;
//! kernel entries for displacements within four cells are refined by 16x16
//! subdivision of the source cell (composite midpoint), which keeps the
//! near-singular quadrature accurate without changing the far-field rule.

use crate::error::{Error, Result};
use crate::grid::{CoefficientSpec, PlanarGrid};
use crate::jet::ConformalJet;
use crate::tolerances;
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::TAU;
use std::sync::Arc;

/// Normalization of the solved map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// F(0) = 0, F'(0) = 1, F(infinity) = infinity.
    DiskConformal,
    /// F fixes 0, 1, infinity.
    ThreePoint,
}

/// Square cell-centered lattice: node (ix, iy) sits at
/// ((ix + 0.5) s - L, (iy + 0.5) s - L) with L = m s / 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub m: usize,
    pub spacing: f64,
    pub half: f64,
}

impl Lattice {
    /// Lattice covering the disk of the given radius with margin.
    pub fn covering(spacing: f64, radius: f64) -> Self {
        let need = radius + 4.0 * spacing;
        let half_m = (need / spacing).ceil() as usize + 1;
        let m = 2 * half_m;
        Lattice {
            m,
            spacing,
            half: m as f64 * spacing / 2.0,
        }
    }

    pub fn coord(&self, ix: usize, iy: usize) -> Complex64 {
        Complex64::new(
            (ix as f64 + 0.5) * self.spacing - self.half,
            (iy as f64 + 0.5) * self.spacing - self.half,
        )
    }

    pub fn len(&self) -> usize {
        self.m * self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Fractional index of a point (for interpolation).
    fn frac_index(&self, z: Complex64) -> (f64, f64) {
        (
            (z.re + self.half) / self.spacing - 0.5,
            (z.im + self.half) / self.spacing - 0.5,
        )
    }

    /// Samples a function at every node.
    pub fn sample(&self, f: impl Fn(Complex64) -> Complex64 + Sync) -> Vec<Complex64> {
        (0..self.len())
            .into_par_iter()
            .map(|k| f(self.coord(k % self.m, k / self.m)))
            .collect()
    }
}

/// Smallest 5-smooth integer >= n (efficient FFT length).
fn next_fast_len(n: usize) -> usize {
    let mut k = n;
    loop {
        let mut v = k;
        for p in [2usize, 3, 5] {
            while v % p == 0 {
                v /= p;
            }
        }
        if v == 1 {
            return k;
        }
        k += 1;
    }
}

fn transpose(data: &mut [Complex64], p: usize) {
    for i in 0..p {
        for j in (i + 1)..p {
            data.swap(i * p + j, j * p + i);
        }
    }
}

struct ConvEngine {
    p: usize,
    m: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    kern_beurling: Vec<Complex64>, // frequency domain
    kern_cauchy: Vec<Complex64>,   // frequency domain
}

impl ConvEngine {
    fn fft2d(&self, data: &mut [Complex64], forward: bool) {
        let p = self.p;
        let plan = if forward { &self.fwd } else { &self.inv };
        data.par_chunks_mut(p).for_each(|row| {
            let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
            plan.process_with_scratch(row, &mut scratch);
        });
        transpose(data, p);
        data.par_chunks_mut(p).for_each(|row| {
            let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
            plan.process_with_scratch(row, &mut scratch);
        });
        transpose(data, p);
    }

    fn new(lattice: &Lattice) -> Self {
        let m = lattice.m;
        let s = lattice.spacing;
        let p = next_fast_len(2 * m);
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(p);
        let inv = planner.plan_fft_inverse(p);

        // Midpoint kernels over displacement d = target - source, refined by
        // source-cell subdivision near the singularity; self-cell dropped.
        let sub = 16usize;
        let near = 4i64;
        let build = |beurling: bool| -> Vec<Complex64> {
            let mut k = vec![Complex64::new(0.0, 0.0); p * p];
            for dy in -(m as i64 - 1)..(m as i64) {
                for dx in -(m as i64 - 1)..(m as i64) {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let delta = Complex64::new(dx as f64 * s, dy as f64 * s);
                    let val = if dx.abs() <= near && dy.abs() <= near {
                        let mut acc = Complex64::new(0.0, 0.0);
                        let w = s / sub as f64;
                        for q in 0..sub {
                            for r in 0..sub {
                                let o = Complex64::new(
                                    (q as f64 + 0.5) * w - 0.5 * s,
                                    (r as f64 + 0.5) * w - 0.5 * s,
                                );
                                let srcrel = o - delta; // (source point) - target
                                acc += if beurling {
                                    1.0 / (srcrel * srcrel)
                                } else {
                                    1.0 / srcrel
                                };
                            }
                        }
                        -acc * (w * w / std::f64::consts::PI)
                    } else if beurling {
                        -Complex64::new(s * s / std::f64::consts::PI, 0.0) / (delta * delta)
                    } else {
                        Complex64::new(s * s / std::f64::consts::PI, 0.0) / delta
                    };
                    let iy = (dy.rem_euclid(p as i64)) as usize;
                    let ix = (dx.rem_euclid(p as i64)) as usize;
                    k[iy * p + ix] = val;
                }
            }
            k
        };
        let mut kern_beurling = build(true);
        let mut kern_cauchy = build(false);
        let engine_stub = ConvEngine {
            p,
            m,
            fwd: fwd.clone(),
            inv: inv.clone(),
            kern_beurling: vec![],
            kern_cauchy: vec![],
        };
        engine_stub.fft2d(&mut kern_beurling, true);
        engine_stub.fft2d(&mut kern_cauchy, true);
        ConvEngine {
            p,
            m,
            fwd,
            inv,
            kern_beurling,
            kern_cauchy,
        }
    }

    /// Applies one of the kernels to a lattice field.
    fn apply(&self, field: &[Complex64], beurling: bool) -> Vec<Complex64> {
        let p = self.p;
        let m = self.m;
        let mut buf = vec![Complex64::new(0.0, 0.0); p * p];
        for iy in 0..m {
            buf[iy * p..iy * p + m].copy_from_slice(&field[iy * m..(iy + 1) * m]);
        }
        self.fft2d(&mut buf, true);
        let kern = if beurling {
            &self.kern_beurling
        } else {
            &self.kern_cauchy
        };
        buf.par_iter_mut().zip(kern.par_iter()).for_each(|(b, &k)| {
            *b *= k;
        });
        self.fft2d(&mut buf, false);
        let scale = 1.0 / (p * p) as f64;
        let mut out = vec![Complex64::new(0.0, 0.0); m * m];
        for iy in 0..m {
            for ix in 0..m {
                out[iy * m + ix] = buf[iy * p + ix] * scale;
            }
        }
        out
    }
}

/// A solved, normalized quasiconformal map on a lattice.
#[derive(Debug, Clone)]
pub struct QuasiconformalMap {
    pub lattice: Lattice,
    /// Normalized map values at the nodes.
    f: Vec<Complex64>,
    /// Raw dbar F at the nodes (before the affine correction).
    h: Vec<Complex64>,
    /// Raw dF = 1 + B h at the nodes.
    df: Vec<Complex64>,
    mu: Vec<Complex64>,
    support: Vec<usize>,
    /// F_normalized = affine_a * F_raw + affine_b.
    affine_a: Complex64,
    affine_b: Complex64,
    pub normalization: Normalization,
    pub residual: f64,
    pub iterations: usize,
    pub contraction: f64,
}

impl QuasiconformalMap {
    /// Direct Cauchy-sum evaluation of the normalized map; valid away from
    /// the coefficient support (no principal value needed).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let s2 = self.lattice.spacing * self.lattice.spacing / std::f64::consts::PI;
        let m = self.lattice.m;
        let sum: Complex64 = self
            .support
            .iter()
            .map(|&k| {
                let zj = self.lattice.coord(k % m, k / m);
                -self.h[k] / (zj - z)
            })
            .sum();
        self.affine_a * (z + sum * s2) + self.affine_b
    }

    /// Derivative of the normalized map away from the support.
    pub fn eval_deriv(&self, z: Complex64) -> Complex64 {
        let s2 = self.lattice.spacing * self.lattice.spacing / std::f64::consts::PI;
        let m = self.lattice.m;
        let sum: Complex64 = self
            .support
            .iter()
            .map(|&k| {
                let zj = self.lattice.coord(k % m, k / m);
                let d = zj - z;
                -self.h[k] / (d * d)
            })
            .sum();
        self.affine_a * (Complex64::new(1.0, 0.0) + sum * s2)
    }

    /// Batch evaluation on the unit circle at n angles.
    pub fn trace_circle(&self, n: usize) -> Vec<Complex64> {
        (0..n)
            .into_par_iter()
            .map(|j| self.eval(Complex64::from_polar(1.0, TAU * j as f64 / n as f64)))
            .collect()
    }

    pub fn grid_values(&self) -> &[Complex64] {
        &self.f
    }

    /// Normalized dF at a lattice node.
    pub fn deriv_grid(&self, k: usize) -> Complex64 {
        self.affine_a * self.df[k]
    }

    /// Normalized dbar F at a lattice node.
    pub fn dbar_grid(&self, k: usize) -> Complex64 {
        self.affine_a * self.h[k]
    }

    pub fn mu_values(&self) -> &[Complex64] {
        &self.mu
    }

    pub fn support_indices(&self) -> &[usize] {
        &self.support
    }

    fn bilinear(&self, arr: &[Complex64], z: Complex64) -> Result<Complex64> {
        let (fx, fy) = self.lattice.frac_index(z);
        let m = self.lattice.m;
        let ix = fx.floor();
        let iy = fy.floor();
        if ix < 0.0 || iy < 0.0 || ix + 1.0 >= m as f64 || iy + 1.0 >= m as f64 {
            return Err(Error::Extrapolation { x: z.re, y: z.im });
        }
        let (ix, iy) = (ix as usize, iy as usize);
        let tx = fx - ix as f64;
        let ty = fy - iy as f64;
        let a = arr[iy * m + ix];
        let b = arr[iy * m + ix + 1];
        let c = arr[(iy + 1) * m + ix];
        let d = arr[(iy + 1) * m + ix + 1];
        Ok(a * (1.0 - tx) * (1.0 - ty) + b * tx * (1.0 - ty) + c * (1.0 - tx) * ty + d * tx * ty)
    }

    /// Bilinear interpolation of the normalized map on the lattice (valid
    /// inside the support as well).
    pub fn interp_map(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.affine_a * self.bilinear(&self.f_raw(), z)? + self.affine_b)
    }

    fn f_raw(&self) -> Vec<Complex64> {
        // f stores normalized values; undo for interpolation of the raw map.
        let inv_a = 1.0 / self.affine_a;
        self.f
            .iter()
            .map(|&v| (v - self.affine_b) * inv_a)
            .collect()
    }

    /// Interpolated normalized dF and dbar F.
    pub fn interp_derivs(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        let df = self.bilinear(&self.df, z)?;
        let hh = self.bilinear(&self.h, z)?;
        Ok((self.affine_a * df, self.affine_a * hh))
    }

    /// Newton preimage of w under the normalized map, starting from z0.
    pub fn newton_preimage(&self, w: Complex64, z0: Complex64) -> Result<Complex64> {
        let mut z = z0;
        for _ in 0..60 {
            let fz = self.interp_map(z)?;
            let r = w - fz;
            if r.norm() < 1e-12 {
                return Ok(z);
            }
            let (df, dbar) = self.interp_derivs(z)?;
            let jac = df.norm_sqr() - dbar.norm_sqr();
            if jac <= 0.0 {
                return Err(Error::DegenerateJacobian { x: z.re, y: z.im });
            }
            // Solve df * delta + dbar * conj(delta) = r.
            let delta = (df.conj() * r - dbar * r.conj()) / jac;
            z += delta;
            if delta.norm() < 1e-13 {
                break;
            }
        }
        Ok(z)
    }

    /// Minimum discrete Jacobian |dF|^2 - |dbar F|^2 over the lattice.
    pub fn jacobian_min(&self) -> f64 {
        self.df
            .iter()
            .zip(&self.h)
            .map(|(d, h)| d.norm_sqr() - h.norm_sqr())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Solves the Beltrami equation for a coefficient sampled on a lattice.
pub fn solve_raw(
    lattice: Lattice,
    mu: Vec<Complex64>,
    normalization: Normalization,
) -> Result<QuasiconformalMap> {
    let sup = mu.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if sup > tolerances::SOLVER_MU_CAP {
        return Err(Error::Invalid(format!(
            "sup |mu| = {sup:.4} exceeds the solver cap {}",
            tolerances::SOLVER_MU_CAP
        )));
    }
    let engine = ConvEngine::new(&lattice);
    let support: Vec<usize> = (0..mu.len())
        .filter(|&k| mu[k].norm() > 0.0)
        .collect();

    let mut h: Vec<Complex64> = mu.clone();
    let mut prev_diff = f64::INFINITY;
    let mut contraction: f64 = 0.0;
    let mut iterations = 0;
    let mut converged = sup == 0.0;
    let target = 0.2 * tolerances::SOLVER_RESIDUAL;
    while !converged && iterations < tolerances::SOLVER_MAX_ITERATIONS {
        let th = engine.apply(&h, true);
        let mut diff = 0.0f64;
        let mut next = vec![Complex64::new(0.0, 0.0); h.len()];
        for &k in &support {
            let v = mu[k] * (Complex64::new(1.0, 0.0) + th[k]);
            let d = (v - h[k]).norm();
            if d > diff {
                diff = d;
            }
            next[k] = v;
        }
        h = next;
        iterations += 1;
        if prev_diff.is_finite() && prev_diff > 0.0 {
            contraction = diff / prev_diff;
        }
        if diff <= target {
            converged = true;
        } else if iterations >= 8 && contraction > 0.999 {
            return Err(Error::SolverStagnation {
                iterations,
                factor: contraction,
                residual: diff,
            });
        }
        prev_diff = diff;
    }
    // Equation residual with one more application.
    let th = engine.apply(&h, true);
    let mut residual = 0.0f64;
    for &k in &support {
        let r = (h[k] - mu[k] * (Complex64::new(1.0, 0.0) + th[k])).norm();
        if r > residual {
            residual = r;
        }
    }
    if residual > tolerances::SOLVER_RESIDUAL {
        return Err(Error::SolverStagnation {
            iterations,
            factor: contraction,
            residual,
        });
    }

    let cauchy = engine.apply(&h, false);
    let m = lattice.m;
    let f_raw: Vec<Complex64> = (0..lattice.len())
        .map(|k| lattice.coord(k % m, k / m) + cauchy[k])
        .collect();
    let mut df: Vec<Complex64> = th;
    for v in df.iter_mut() {
        *v += 1.0;
    }
    for (k, d) in df.iter().enumerate() {
        let jac = d.norm_sqr() - h[k].norm_sqr();
        if jac <= 0.0 {
            let z = lattice.coord(k % m, k / m);
            return Err(Error::DegenerateJacobian { x: z.re, y: z.im });
        }
    }

    // Affine normalization from direct evaluations at 0 and 1 (both off the
    // support by the separation assumption).
    let eval_raw = |z: Complex64| -> Complex64 {
        let s2 = lattice.spacing * lattice.spacing / std::f64::consts::PI;
        let sum: Complex64 = support
            .iter()
            .map(|&k| -h[k] / (lattice.coord(k % m, k / m) - z))
            .sum();
        z + sum * s2
    };
    let eval_raw_deriv = |z: Complex64| -> Complex64 {
        let s2 = lattice.spacing * lattice.spacing / std::f64::consts::PI;
        let sum: Complex64 = support
            .iter()
            .map(|&k| {
                let d = lattice.coord(k % m, k / m) - z;
                -h[k] / (d * d)
            })
            .sum();
        Complex64::new(1.0, 0.0) + sum * s2
    };
    let origin = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let (affine_a, affine_b) = match normalization {
        Normalization::DiskConformal => {
            let f0 = eval_raw(origin);
            let d0 = eval_raw_deriv(origin);
            (1.0 / d0, -f0 / d0)
        }
        Normalization::ThreePoint => {
            let f0 = eval_raw(origin);
            let f1 = eval_raw(one);
            let a = 1.0 / (f1 - f0);
            (a, -f0 * a)
        }
    };
    let f: Vec<Complex64> = f_raw.iter().map(|&v| affine_a * v + affine_b).collect();

    Ok(QuasiconformalMap {
        lattice,
        f,
        h,
        df,
        mu,
        support,
        affine_a,
        affine_b,
        normalization,
        residual,
        iterations,
        contraction,
    })
}

/// Solves for a coefficient held on a `PlanarGrid` (the grid's own lattice is
/// reused).
pub fn solve_grid(grid: &PlanarGrid, normalization: Normalization) -> Result<QuasiconformalMap> {
    let lattice = Lattice {
        m: grid.nodes_per_side(),
        spacing: grid.spacing(),
        half: grid.nodes_per_side() as f64 * grid.spacing() / 2.0,
    };
    solve_raw(lattice, grid.values().to_vec(), normalization)
}

/// Samples one or more coefficient specs (disjoint supports summed) on a
/// common lattice and solves.
pub fn solve_specs(
    specs: &[&CoefficientSpec],
    spacing: f64,
    normalization: Normalization,
) -> Result<QuasiconformalMap> {
    let mut radius: f64 = 1.0;
    for s in specs {
        let (_, hi) = s.absolute_radii();
        radius = radius.max(hi);
    }
    let lattice = Lattice::covering(spacing, radius);
    let mu = lattice.sample(|z| {
        specs
            .iter()
            .map(|s| s.value(z))
            .sum::<Complex64>()
    });
    solve_raw(lattice, mu, normalization)
}

/// Extracts the Taylor jet of a solved map on the circle |z| = rho_ex, where
/// the map is holomorphic (the coefficient vanishes in a neighborhood).
pub fn conformal_jet(map: &QuasiconformalMap, rho_ex: f64, n_circle: usize) -> Result<ConformalJet> {
    if !n_circle.is_power_of_two() || n_circle < 32 {
        return Err(Error::Invalid(
            "jet extraction needs a power-of-two circle sample count >= 32".into(),
        ));
    }
    let mut buf: Vec<Complex64> = (0..n_circle)
        .into_par_iter()
        .map(|j| map.eval(Complex64::from_polar(rho_ex, TAU * j as f64 / n_circle as f64)))
        .collect();
    FftPlanner::new()
        .plan_fft_forward(n_circle)
        .process(&mut buf);
    let scale = 1.0 / n_circle as f64;
    // Negative modes must be negligible for a holomorphic restriction.
    let pos_mass: f64 = (0..n_circle / 2)
        .map(|k| buf[k].norm() * scale)
        .fold(0.0, f64::max);
    let neg_mass: f64 = (n_circle / 2..n_circle)
        .map(|k| buf[k].norm() * scale)
        .fold(0.0, f64::max);
    if neg_mass > 1e-7 * pos_mass.max(1e-300) {
        return Err(Error::Invalid(format!(
            "map is not holomorphic at radius {rho_ex}: negative-mode mass {neg_mass:.3e}"
        )));
    }
    let m_coeffs = n_circle / 2;
    let coeffs: Vec<Complex64> = (0..m_coeffs)
        .map(|k| buf[k] * scale / rho_ex.powi(k as i32))
        .collect();
    let jet = ConformalJet::new(coeffs, rho_ex)?;
    if map.normalization == Normalization::DiskConformal {
        jet.check_unit_derivative()?;
    }
    Ok(jet)
}

/// Max difference of two solved maps over a probe set (used for
/// self-convergence scans).
pub fn probe_difference(
    a: &QuasiconformalMap,
    b: &QuasiconformalMap,
    probes: &[Complex64],
) -> f64 {
    probes
        .iter()
        .map(|&z| (a.eval(z) - b.eval(z)).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::SupportSide;

    #[test]
    fn zero_coefficient_gives_identity() {
        let lattice = Lattice::covering(1.0 / 16.0, 1.6);
        let mu = vec![Complex64::new(0.0, 0.0); lattice.len()];
        let map = solve_raw(lattice, mu, Normalization::DiskConformal).unwrap();
        assert_eq!(map.iterations, 0);
        for &z in &[
            Complex64::new(0.3, 0.1),
            Complex64::new(-1.2, 2.0),
            Complex64::new(0.0, -0.9),
        ] {
            assert!((map.eval(z) - z).norm() < 1e-12);
        }
        assert!(map.jacobian_min() > 0.99);
    }

    #[test]
    fn mu_cap_enforced() {
        let spec = CoefficientSpec {
            side: SupportSide::Exterior,
            r_inner: 1.5,
            r_outer: 2.0,
            eval: Arc::new(|_| Complex64::new(0.8, 0.0)),
            envelope: Arc::new(|_| 0.8),
        };
        let g = PlanarGrid::sample(&spec, 1.0 / 32.0).unwrap();
        assert!(solve_grid(&g, Normalization::DiskConformal).is_err());
    }

    #[test]
    fn next_fast_len_is_smooth() {
        assert_eq!(next_fast_len(640), 640);
        assert_eq!(next_fast_len(641), 648);
        for n in [100, 257, 1376] {
            let k = next_fast_len(n);
            let mut v = k;
            for p in [2, 3, 5] {
                while v % p == 0 {
                    v /= p;
                }
            }
            assert_eq!(v, 1);
            assert!(k >= n);
        }
    }

    #[test]
    fn convolution_matches_direct_sum() {
        // Small lattice: FFT path must reproduce the direct midpoint sums.
        let lattice = Lattice {
            m: 24,
            spacing: 0.1,
            half: 1.2,
        };
        let engine = ConvEngine::new(&lattice);
        let field: Vec<Complex64> = (0..lattice.len())
            .map(|k| {
                let z = lattice.coord(k % 24, k / 24);
                if z.norm() < 0.8 {
                    Complex64::new(z.re, 0.3 * z.im)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        let out = engine.apply(&field, true);
        // Direct sum with subdivided near field, at a few nodes.
        let sub = 16;
        for &target in &[25usize, 300, 413] {
            let zt = lattice.coord(target % 24, target / 24);
            let mut want = Complex64::new(0.0, 0.0);
            for k in 0..lattice.len() {
                if field[k].norm() == 0.0 || k == target {
                    continue;
                }
                let zs = lattice.coord(k % 24, k / 24);
                let (dx, dy) = (
                    ((zs.re - zt.re) / 0.1).round() as i64,
                    ((zs.im - zt.im) / 0.1).round() as i64,
                );
                if dx.abs() <= 4 && dy.abs() <= 4 {
                    let w = 0.1 / sub as f64;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for q in 0..sub {
                        for r in 0..sub {
                            let o = Complex64::new(
                                (q as f64 + 0.5) * w - 0.05,
                                (r as f64 + 0.5) * w - 0.05,
                            );
                            let d = zs + o - zt;
                            acc += 1.0 / (d * d);
                        }
                    }
                    want += -field[k] * acc * (w * w / std::f64::consts::PI);
                } else {
                    let d = zs - zt;
                    want += -field[k] * (0.01 / std::f64::consts::PI) / (d * d);
                }
            }
            assert!(
                (out[target] - want).norm() < 1e-10,
                "target {target}: {:?} vs {:?}",
                out[target],
                want
            );
        }
    }
}
