//! Truncated Taylor series of a conformal map on the disk where it is
//! holomorphic, with the derived jets: F', F'', F''', the logarithmic
//! derivative N = F''/F', and the Schwarzian S = N' - N^2/2.

use crate::error::{Error, Result};
use crate::tolerances;
use num_complex::Complex64;

/// Basic dense power-series helpers on Vec<Complex64> (coefficient k = z^k).
pub mod series {
    use num_complex::Complex64;

    pub fn derivative(a: &[Complex64]) -> Vec<Complex64> {
        if a.len() <= 1 {
            return vec![];
        }
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect()
    }

    /// Antiderivative with constant term c0.
    pub fn integral(a: &[Complex64], c0: Complex64) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(a.len() + 1);
        out.push(c0);
        for (k, &c) in a.iter().enumerate() {
            out.push(c / (k as f64 + 1.0));
        }
        out
    }

    pub fn mul(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (i, &ai) in a.iter().enumerate().take(len) {
            for (j, &bj) in b.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] += ai * bj;
            }
        }
        out
    }

    /// a / b with b[0] != 0, to `len` coefficients.
    pub fn div(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
        let b0 = b[0];
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for k in 0..len {
            let mut acc = if k < a.len() {
                a[k]
            } else {
                Complex64::new(0.0, 0.0)
            };
            for j in 1..=k.min(b.len() - 1) {
                acc -= b[j] * out[k - j];
            }
            out[k] = acc / b0;
        }
        out
    }

    pub fn eval(a: &[Complex64], z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in a.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Taylor coefficients of a (normalized) conformal map extracted on a circle
/// of radius `rho_ex`, with a certified truncation tail.
#[derive(Debug, Clone)]
pub struct ConformalJet {
    /// a_0, a_1, ..., a_{M-1}.
    pub coeffs: Vec<Complex64>,
    pub rho_ex: f64,
}

impl ConformalJet {
    /// Builds a jet from Taylor coefficients, certifying that the last
    /// coefficient is negligible at the extraction radius.
    pub fn new(coeffs: Vec<Complex64>, rho_ex: f64) -> Result<Self> {
        if coeffs.len() < 8 {
            return Err(Error::Invalid("jet needs at least 8 coefficients".into()));
        }
        let scale = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() * rho_ex.powi(k as i32))
            .fold(0.0, f64::max);
        let tail_len = 4.min(coeffs.len() / 8).max(1);
        let m = coeffs.len();
        let tail = (m - tail_len..m)
            .map(|k| coeffs[k].norm() * rho_ex.powi(k as i32))
            .fold(0.0, f64::max);
        if tail > tolerances::JET_TAIL * scale.max(1e-300) {
            return Err(Error::TailBound {
                tail,
                bound: tolerances::JET_TAIL * scale,
            });
        }
        Ok(Self { coeffs, rho_ex })
    }

    /// Checks a_1 = 1 for a disk-normalized map.
    pub fn check_unit_derivative(&self) -> Result<()> {
        let a1 = self.coeffs[1];
        if (a1 - Complex64::new(1.0, 0.0)).norm() > tolerances::JET_LEADING_COEFF {
            return Err(Error::Invalid(format!(
                "jet has a_1 = {a1}, expected 1 under disk normalization"
            )));
        }
        Ok(())
    }

    pub fn f(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn f1(&self) -> Vec<Complex64> {
        series::derivative(&self.coeffs)
    }

    pub fn f2(&self) -> Vec<Complex64> {
        series::derivative(&self.f1())
    }

    pub fn f3(&self) -> Vec<Complex64> {
        series::derivative(&self.f2())
    }

    /// N = F''/F' (the derivative of log F').
    pub fn pre_schwarzian(&self) -> Vec<Complex64> {
        let f1 = self.f1();
        let len = f1.len();
        series::div(&self.f2(), &f1, len)
    }

    /// S = N' - N^2/2.
    pub fn schwarzian(&self) -> Vec<Complex64> {
        let n = self.pre_schwarzian();
        let dn = series::derivative(&n);
        let n2 = series::mul(&n, &n, n.len());
        let len = n.len().saturating_sub(1).max(1);
        (0..len)
            .map(|k| {
                let d = if k < dn.len() {
                    dn[k]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                d - 0.5 * n2[k]
            })
            .collect()
    }

    /// S computed by the alternative route F'''/F' - (3/2)(F''/F')^2; used as
    /// an internal consistency check against `schwarzian`.
    pub fn schwarzian_alt(&self) -> Vec<Complex64> {
        let f1 = self.f1();
        let len = f1.len();
        let a = series::div(&self.f3(), &f1, len);
        let b = series::div(&self.f2(), &f1, len);
        let b2 = series::mul(&b, &b, len);
        (0..len).map(|k| a[k] - 1.5 * b2[k]).collect()
    }

    /// log F' as a series; the constant term is log a_1.
    pub fn log_fprime(&self) -> Vec<Complex64> {
        let n = self.pre_schwarzian();
        let c0 = self.coeffs[1].ln();
        series::integral(&n, c0)
    }

    /// The lifted boundary log-derivative in angle coordinates:
    /// log[e^{ix} F'(e^{ix}) / F(e^{ix})], sampled at n nodes and unwrapped.
    /// Valid because the map is holomorphic across the unit circle.
    pub fn boundary_log_deriv(&self, n: usize) -> Vec<Complex64> {
        let f1 = self.f1();
        let raw: Vec<Complex64> = (0..n)
            .map(|j| {
                let x = std::f64::consts::TAU * j as f64 / n as f64;
                let z = Complex64::from_polar(1.0, x);
                z * series::eval(&f1, z) / series::eval(&self.coeffs, z)
            })
            .collect();
        let phases: Vec<f64> = raw.iter().map(|v| v.im.atan2(v.re)).collect();
        let unwrapped = crate::util::unwrap_phase(&phases);
        raw.iter()
            .zip(unwrapped)
            .map(|(v, p)| Complex64::new(v.norm().ln(), p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_jet(coeffs: &[(f64, f64)]) -> ConformalJet {
        let mut c: Vec<Complex64> = coeffs.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
        c.resize(32, Complex64::new(0.0, 0.0));
        ConformalJet::new(c, 1.1).unwrap()
    }

    #[test]
    fn identity_jet_has_zero_schwarzian() {
        let jet = poly_jet(&[(0.0, 0.0), (1.0, 0.0)]);
        jet.check_unit_derivative().unwrap();
        for c in jet.schwarzian() {
            assert!(c.norm() < 1e-14);
        }
    }

    #[test]
    fn quadratic_jet_matches_symbolic_values() {
        // F = z + 0.1 z^2: N = 0.2/(1 + 0.2 z), N(0) = 0.2,
        // S(0) = N'(0) - N(0)^2/2 = -0.04 - 0.02 = -0.06.
        let jet = poly_jet(&[(0.0, 0.0), (1.0, 0.0), (0.1, 0.0)]);
        let n = jet.pre_schwarzian();
        assert!((n[0] - Complex64::new(0.2, 0.0)).norm() < 1e-12);
        let s = jet.schwarzian();
        assert!((s[0] - Complex64::new(-0.06, 0.0)).norm() < 1e-12, "{:?}", s[0]);
    }

    #[test]
    fn schwarzian_routes_agree() {
        let jet = poly_jet(&[(0.0, 0.0), (1.0, 0.0), (0.08, 0.02), (-0.01, 0.03)]);
        let a = jet.schwarzian();
        let b = jet.schwarzian_alt();
        for k in 0..a.len().min(b.len()).min(20) {
            assert!((a[k] - b[k]).norm() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn log_fprime_integrates_pre_schwarzian() {
        let jet = poly_jet(&[(0.0, 0.0), (1.0, 0.0), (0.05, 0.0), (0.0, 0.01)]);
        let lf = jet.log_fprime();
        // exp(series) check at a point inside the disk of convergence.
        let z = Complex64::new(0.3, 0.2);
        let f1 = series::eval(&jet.f1(), z);
        let lf_z = series::eval(&lf, z);
        assert!((lf_z.exp() - f1).norm() < 1e-10);
    }

    #[test]
    fn tail_violation_reported() {
        let mut c = vec![Complex64::new(0.0, 0.0); 16];
        c[1] = Complex64::new(1.0, 0.0);
        c[15] = Complex64::new(0.5, 0.0); // fat tail
        assert!(matches!(
            ConformalJet::new(c, 1.1),
            Err(Error::TailBound { .. })
        ));
    }
}
