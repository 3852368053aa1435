//! Small numeric helpers shared across modules.

use num_complex::Complex64;
use std::f64::consts::TAU;

/// FNV-1a over a byte slice, hex-encoded. Used for deterministic input digests.
pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// Unwraps a sequence of phases (radians) into a continuous branch.
pub fn unwrap_phase(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    for (i, &p) in phases.iter().enumerate() {
        if i > 0 {
            let prev = out[i - 1] - offset;
            let mut d = p - prev;
            while d > std::f64::consts::PI {
                d -= TAU;
                offset -= TAU;
            }
            while d < -std::f64::consts::PI {
                d += TAU;
                offset += TAU;
            }
        }
        out.push(p + offset);
    }
    out
}

/// Evaluates a trigonometric polynomial with coefficients in FFT order
/// (mode m stored at index m mod n) at an arbitrary angle `t`.
///
/// Horner on w = e^{it} over modes -(n/2-1) .. n/2-1; the unpaired Nyquist
/// coefficient at mode -n/2 contributes as a cosine so that interpolants of
/// real samples stay real off the grid.
pub fn eval_trig(coeffs_fft_order: &[Complex64], t: f64) -> Complex64 {
    let n = coeffs_fft_order.len();
    let half = (n / 2) as i64;
    let w = Complex64::from_polar(1.0, t);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in (-(half - 1)..half).rev() {
        let idx = m.rem_euclid(n as i64) as usize;
        acc = acc * w + coeffs_fft_order[idx];
    }
    acc *= Complex64::from_polar(1.0, -((half - 1) as f64) * t);
    acc + coeffs_fft_order[half as usize] * (half as f64 * t).cos()
}

/// Local polynomial interpolation of a uniformly sampled 2*pi-periodic
/// function at an arbitrary point, using a 7-point centered stencil.
///
/// Exactness degree 6; for smooth data at n >= 1024 the error is far below
/// the solver tolerances it feeds.
pub fn interp_periodic(values: &[f64], x: f64) -> f64 {
    const HALF: i64 = 3; // 7-point stencil
    let n = values.len() as i64;
    let dx = TAU / n as f64;
    let u = x / dx;
    let j0 = u.floor() as i64;
    let frac = u - j0 as f64;
    // Barycentric weights for nodes -3..=3 around j0, offset by frac.
    let mut num = 0.0;
    let mut den = 0.0;
    // Weights of the uniform-grid barycentric formula: w_k = (-1)^k * C(6, k+3)
    const W: [f64; 7] = [1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0];
    for (k, &wk) in W.iter().enumerate() {
        let off = k as i64 - HALF;
        let d = frac - off as f64;
        let idx = (j0 + off).rem_euclid(n) as usize;
        if d.abs() < 1e-14 {
            return values[idx];
        }
        let w = wk / d;
        num += w * values[idx];
        den += w;
    }
    num / den
}

/// Gauss-Legendre nodes and weights on [0, 1].
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    // Newton on Legendre polynomials over [-1, 1], then affine map to [0, 1].
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    for i in 0..n {
        nodes[i] = 0.5 * (nodes[i] + 1.0);
        weights[i] *= 0.5;
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Monotone piecewise-cubic interpolant (Fritsch-Carlson limiter) for a
/// strictly increasing periodic lift h with h(x + 2*pi) = h(x) + 2*pi.
///
/// Knots are the uniform grid x_j = 2*pi*j/n with values h_j; evaluation at
/// any real x uses periodic extension of the displacement h(x) - x.
#[derive(Debug, Clone)]
pub struct MonotoneLift {
    values: Vec<f64>, // h at the grid nodes, one period
    slopes: Vec<f64>, // limited derivative at each node
    dx: f64,
}

impl MonotoneLift {
    pub fn new(lift_values: &[f64]) -> Self {
        let n = lift_values.len();
        let dx = TAU / n as f64;
        // Secant slopes on each interval, using periodic closure.
        let mut d = vec![0.0; n];
        for j in 0..n {
            let next = if j + 1 == n {
                lift_values[0] + TAU
            } else {
                lift_values[j + 1]
            };
            d[j] = (next - lift_values[j]) / dx;
        }
        let mut m = vec![0.0; n];
        for j in 0..n {
            let dm = d[(j + n - 1) % n];
            let dp = d[j];
            if dm * dp <= 0.0 {
                m[j] = 0.0;
            } else {
                // Harmonic mean keeps the interpolant monotone.
                m[j] = 2.0 * dm * dp / (dm + dp);
            }
        }
        // Fritsch-Carlson circle limiter.
        for j in 0..n {
            let dj = d[j];
            if dj == 0.0 {
                m[j] = 0.0;
                m[(j + 1) % n] = 0.0;
                continue;
            }
            let a = m[j] / dj;
            let b = m[(j + 1) % n] / dj;
            let s = a * a + b * b;
            if s > 9.0 {
                let t = 3.0 / s.sqrt();
                m[j] = t * a * dj;
                m[(j + 1) % n] = t * b * dj;
            }
        }
        Self {
            values: lift_values.to_vec(),
            slopes: m,
            dx,
        }
    }

    /// h(x) for arbitrary real x.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let period = x.div_euclid(TAU);
        let xr = x - period * TAU;
        let u = xr / self.dx;
        let j = (u.floor() as usize).min(n - 1);
        let t = u - j as f64;
        let h = self.dx;
        let y0 = self.values[j];
        let y1 = if j + 1 == n {
            self.values[0] + TAU
        } else {
            self.values[j + 1]
        };
        let m0 = self.slopes[j];
        let m1 = self.slopes[(j + 1) % n];
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1 + period * TAU
    }

    /// Derivative of the interpolant.
    pub fn eval_deriv(&self, x: f64) -> f64 {
        let n = self.values.len();
        let xr = x.rem_euclid(TAU);
        let u = xr / self.dx;
        let j = (u.floor() as usize).min(n - 1);
        let t = u - j as f64;
        let h = self.dx;
        let y0 = self.values[j];
        let y1 = if j + 1 == n {
            self.values[0] + TAU
        } else {
            self.values[j + 1]
        };
        let m0 = self.slopes[j];
        let m1 = self.slopes[(j + 1) % n];
        let t2 = t * t;
        let dh00 = (6.0 * t2 - 6.0 * t) / h;
        let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
        let dh01 = (-6.0 * t2 + 6.0 * t) / h;
        let dh11 = 3.0 * t2 - 2.0 * t;
        dh00 * y0 + dh10 * m0 + dh01 * y1 + dh11 * m1
    }

    /// Solves h(x) = y by bisection bracketing plus Newton refinement.
    pub fn invert(&self, y: f64) -> f64 {
        // h(x) - x is bounded, so x ~ y up to the displacement range.
        let period = ((y - self.values[0]) / TAU).floor();
        let y0 = y - period * TAU;
        // Bracket within one period around the knots.
        let n = self.values.len();
        let mut lo = 0.0f64;
        let mut hi = TAU;
        // Binary search over knots for a tight bracket.
        let mut a = 0usize;
        let mut b = n; // value at n is values[0] + TAU
        while b - a > 1 {
            let mid = (a + b) / 2;
            let v = if mid == n {
                self.values[0] + TAU
            } else {
                self.values[mid]
            };
            if v <= y0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        lo = lo.max(a as f64 * self.dx);
        hi = hi.min(b as f64 * self.dx);
        let mut x = 0.5 * (lo + hi);
        for _ in 0..100 {
            let f = self.eval(x) - y0;
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.eval_deriv(x);
            let mut step = if d > 0.0 { f / d } else { 0.0 };
            let mut xn = x - step;
            if !(lo..=hi).contains(&xn) {
                xn = 0.5 * (lo + hi);
                step = x - xn;
            }
            x = xn;
            if step.abs() < 1e-14 {
                break;
            }
        }
        x + period * TAU
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_eval_matches_closed_form() {
        let n = 16;
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        c[1] = Complex64::new(0.5, 0.0);
        c[n - 1] = Complex64::new(0.5, 0.0); // cos(theta)
        for &t in &[0.0, 0.3, 2.2, 5.9] {
            let v = eval_trig(&c, t);
            assert!((v.re - t.cos()).abs() < 1e-13, "t={t}");
            assert!(v.im.abs() < 1e-13);
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre_unit(8);
        // int_0^1 t^k dt = 1/(k+1), exact up to degree 15
        for k in 0..=15u32 {
            let s: f64 = x
                .iter()
                .zip(&w)
                .map(|(&xi, &wi)| wi * xi.powi(k as i32))
                .sum();
            assert!((s - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn monotone_lift_roundtrip() {
        let n = 256;
        let lift: Vec<f64> = (0..n)
            .map(|j| {
                let x = TAU * j as f64 / n as f64;
                x + 0.5 * x.sin()
            })
            .collect();
        let h = MonotoneLift::new(&lift);
        for &x in &[0.1, 1.7, 4.0, 6.1] {
            let y = h.eval(x);
            let back = h.invert(y);
            assert!((back - x).abs() < 1e-10, "x={x} back={back}");
        }
        // Periodic equivariance.
        assert!((h.eval(1.0 + TAU) - h.eval(1.0) - TAU).abs() < 1e-12);
    }

    #[test]
    fn interp_periodic_smooth() {
        let n = 1024;
        let vals: Vec<f64> = (0..n).map(|j| (TAU * j as f64 / n as f64).cos()).collect();
        for &x in &[0.013, 2.5, 6.27] {
            assert!((interp_periodic(&vals, x) - x.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn unwrap_is_continuous() {
        let raw: Vec<f64> = (0..100)
            .map(|j| (0.2 * j as f64).rem_euclid(TAU) - std::f64::consts::PI)
            .collect();
        let un = unwrap_phase(&raw);
        for w in un.windows(2) {
            assert!((w[1] - w[0]).abs() < 1.0);
        }
    }
}
