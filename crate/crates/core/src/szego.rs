//! The Szegő bridge between `[-1, 1]` and the unit circle.
//!
//! For real Verblunsky coefficients `α_n ∈ (−1, 1)` the Geronimus relations
//!
//! ```text
//! d_{n+1} = ¼ (1 − α_{2n−1}) (1 − α_{2n}²) (1 + α_{2n+1})
//! b_{n+1} = ½ [α_{2n} (1 − α_{2n−1}) − α_{2n−2} (1 + α_{2n−1})]
//! ```
//!
//! hold with `α_{−1} = −1`. `α_{−2}` only ever appears multiplied by
//! `1 + α_{−1} = 0` and is taken to be 0.
//!
//! The auxiliary sequence `v_k = ½ (1 + α_k)(1 − α_{k−1})` carries the LU
//! factorization `J + I = L U` of the shifted monic Jacobi matrix.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::numeric::{guarded, in_support};
use crate::oprl::{oprl_eval, orthonormal_scale, RealRecurrence};
use crate::opuc::{kappa, opuc_eval, VerblunskySeq};
use crate::{Error, Result};

/// Real Verblunsky coefficient with the negative-index conventions applied.
#[inline]
pub(crate) fn alpha_ext(alpha: &[f64], j: isize) -> f64 {
    match j {
        -1 => -1.0,
        j if j < -1 => 0.0,
        j => alpha[j as usize],
    }
}

/// `α_{2m} = (2 b_{m+1} + (1 + α_{2m−1}) α_{2m−2}) / (1 − α_{2m−1})`.
#[inline]
pub(crate) fn even_from_b(b: f64, a_odd_prev: f64, a_even_prev: f64, index: usize) -> Result<f64> {
    let den = guarded(1.0 - a_odd_prev, index)?;
    in_support((2.0 * b + (1.0 + a_odd_prev) * a_even_prev) / den, index)
}

/// `α_{2m+1} = −1 + 4 d_{m+1} / ((1 − α_{2m−1})(1 − α_{2m}²))`.
#[inline]
pub(crate) fn odd_from_d(d: f64, a_odd_prev: f64, a_even: f64, index: usize) -> Result<f64> {
    let den = guarded((1.0 - a_odd_prev) * (1.0 - a_even * a_even), index)?;
    in_support(-1.0 + 4.0 * d / den, index)
}

#[inline]
pub(crate) fn d_from_alpha(alpha: &[f64], m: usize) -> f64 {
    let m = m as isize;
    0.25 * (1.0 - alpha_ext(alpha, 2 * m - 1))
        * (1.0 - alpha_ext(alpha, 2 * m).powi(2))
        * (1.0 + alpha_ext(alpha, 2 * m + 1))
}

#[inline]
pub(crate) fn b_from_alpha(alpha: &[f64], m: usize) -> f64 {
    let m = m as isize;
    let odd = alpha_ext(alpha, 2 * m - 1);
    0.5 * (alpha_ext(alpha, 2 * m) * (1.0 - odd) - alpha_ext(alpha, 2 * m - 2) * (1.0 + odd))
}

/// Geronimus relations on a real slice: `n` pairs from `α_0..α_{2n−1}`.
pub(crate) fn forward_real(alpha: &[f64], n: usize) -> Result<RealRecurrence> {
    if alpha.len() < 2 * n {
        return Err(Error::InsufficientCoefficients {
            needed: 2 * n,
            available: alpha.len(),
        });
    }
    let b = (0..n).map(|m| b_from_alpha(alpha, m)).collect();
    let d = (0..n).map(|m| d_from_alpha(alpha, m)).collect();
    RealRecurrence::new(b, d)
}

/// Inverse Geronimus recursion: `α_0..α_{2n−1}` from `n` pairs.
pub(crate) fn inverse_real(rc: &RealRecurrence, n: usize) -> Result<Vec<f64>> {
    rc.require(n, n)?;
    let mut alpha = Vec::with_capacity(2 * n);
    for m in 0..n {
        let odd_prev = alpha_ext(&alpha, 2 * m as isize - 1);
        let even_prev = alpha_ext(&alpha, 2 * m as isize - 2);
        let even = even_from_b(rc.b(m + 1), odd_prev, even_prev, 2 * m)?;
        alpha.push(even);
        let odd = odd_from_d(rc.d(m + 1), odd_prev, even, 2 * m + 1)?;
        alpha.push(odd);
    }
    Ok(alpha)
}

/// `(b_1..b_n, d_1..d_n)` from real `α_0..α_{2n−1}`.
pub fn geronimus_forward(vs: &VerblunskySeq, n: usize) -> Result<RealRecurrence> {
    vs.require(2 * n)?;
    let alpha = vs.truncate(2 * n)?.real_view()?;
    forward_real(&alpha, n)
}

/// `α_0..α_{2n−1}` from `(b_1..b_n, d_1..d_n)`.
///
/// Fails with [`Error::SupportViolation`] as soon as a coefficient leaves
/// (−1, 1), i.e. when the measure is not supported in `[-1, 1]`.
pub fn geronimus_inverse(rc: &RealRecurrence, n: usize) -> Result<VerblunskySeq> {
    let alpha = inverse_real(rc, n)?;
    VerblunskySeq::from_real(&alpha)
}

/// LU data `v_0, v_1, ...` of `J + I`; `v_{−1} = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VSeq {
    pub v: Vec<f64>,
}

impl VSeq {
    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    /// `v_j` with `v_{−1} = 0`.
    pub fn get(&self, j: isize) -> f64 {
        if j < 0 {
            0.0
        } else {
            self.v[j as usize]
        }
    }

    fn require(&self, n: usize) -> Result<()> {
        if self.v.len() < n {
            Err(Error::InsufficientCoefficients {
                needed: n,
                available: self.v.len(),
            })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn v_from_alpha_real(alpha: &[f64], n: usize) -> Result<VSeq> {
    if alpha.len() < n {
        return Err(Error::InsufficientCoefficients {
            needed: n,
            available: alpha.len(),
        });
    }
    let v = (0..n)
        .map(|k| 0.5 * (1.0 + alpha[k]) * (1.0 - alpha_ext(alpha, k as isize - 1)))
        .collect();
    Ok(VSeq { v })
}

/// `v_k = ½ (1 + α_k)(1 − α_{k−1})` for `k < n`.
pub fn v_from_alpha(vs: &VerblunskySeq, n: usize) -> Result<VSeq> {
    vs.require(n)?;
    let alpha = vs.truncate(n)?.real_view()?;
    v_from_alpha_real(&alpha, n)
}

/// `α_k = −1 + 2 v_k / (1 − α_{k−1})` for `k < n`.
pub fn alpha_from_v(v: &VSeq, n: usize) -> Result<VerblunskySeq> {
    v.require(n)?;
    let mut alpha: Vec<f64> = Vec::with_capacity(n);
    for k in 0..n {
        let den = guarded(1.0 - alpha_ext(&alpha, k as isize - 1), k)?;
        alpha.push(in_support(-1.0 + 2.0 * v.v[k] / den, k)?);
    }
    VerblunskySeq::from_real(&alpha)
}

/// `v_0..v_{n−1}` straight from the recurrence coefficients.
///
/// Evaluates the nested continued fractions front to back:
/// `v_{2k} = b_{k+1} + 1 − v_{2k−1}` and `v_{2k+1} = d_{k+1} / v_{2k}`.
/// A vanishing pivot `v_{2k}` means `J + I` has no LU factorization.
pub fn v_from_recurrence(rc: &RealRecurrence, n: usize) -> Result<VSeq> {
    rc.require(n.div_ceil(2), n / 2)?;
    let mut v: Vec<f64> = Vec::with_capacity(n);
    for j in 0..n {
        let k = j / 2;
        let value = if j % 2 == 0 {
            let prev = if j == 0 { 0.0 } else { v[j - 1] };
            rc.b(k + 1) + 1.0 - prev
        } else {
            rc.d(k + 1) / guarded(v[j - 1], j - 1)?
        };
        v.push(value);
    }
    if n % 2 == 1 {
        guarded(v[n - 1], n - 1)?;
    }
    Ok(VSeq { v })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LuMismatch {
    pub row: usize,
    pub col: usize,
    pub expected: f64,
    pub actual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LuReport {
    pub passed: bool,
    pub max_error: f64,
    /// Worst failing entry of `L U` against `J + I`, if any.
    pub mismatch: Option<LuMismatch>,
}

pub const LU_TOL: f64 = 1e-12;

/// Compares `(J + I)_N` entrywise with the product of the bidiagonal factors
///
/// ```text
/// L = [1; v_1 1; v_3 1; ...]      U = [v_0 1; v_2 1; v_4 1; ...]
/// ```
///
/// built from `v`, to `1e−12 (1 + |entry|)`.
pub fn lu_check(rc: &RealRecurrence, v: &VSeq, order: usize) -> Result<LuReport> {
    rc.require(order, order.saturating_sub(1))?;
    v.require((2 * order).saturating_sub(1))?;
    let mut l = vec![vec![0.0; order]; order];
    let mut u = vec![vec![0.0; order]; order];
    for i in 0..order {
        l[i][i] = 1.0;
        u[i][i] = v.v[2 * i];
        if i + 1 < order {
            l[i + 1][i] = v.v[2 * i + 1];
            u[i][i + 1] = 1.0;
        }
    }
    let mut report = LuReport {
        passed: true,
        max_error: 0.0,
        mismatch: None,
    };
    let mut worst = 0.0;
    for i in 0..order {
        for j in 0..order {
            let expected = if i == j {
                rc.b(i + 1) + 1.0
            } else if j == i + 1 {
                1.0
            } else if i == j + 1 {
                rc.d(j + 1)
            } else {
                0.0
            };
            let actual: f64 = (0..order).map(|s| l[i][s] * u[s][j]).sum();
            let err = (actual - expected).abs();
            report.max_error = report.max_error.max(err);
            let scaled = err / (LU_TOL * (1.0 + expected.abs()));
            if scaled > 1.0 && scaled > worst {
                worst = scaled;
                report.passed = false;
                report.mismatch = Some(LuMismatch {
                    row: i,
                    col: j,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(report)
}

/// `z = x − √(x² − 1)` on the branch with `|z| ≤ 1`.
///
/// The root of larger modulus is formed without cancellation and inverted.
/// On the cut `x ∈ (−1, 1)` both roots lie on the circle and the one with
/// nonnegative imaginary part is returned.
pub fn map_x_to_z(x: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let s = (x * x - one).sqrt();
    let (plus, minus) = (x + s, x - s);
    let (np, nm) = (plus.norm(), minus.norm());
    if (np - nm).abs() <= 1e-14 * np.max(nm) {
        let z = one / plus;
        return if z.im < 0.0 { z.conj() } else { z };
    }
    let big = if np > nm { plus } else { minus };
    one / big
}

/// `x = (z + 1/z) / 2`.
pub fn map_z_to_x(z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::ZeroArgument);
    }
    Ok(0.5 * (z + z.inv()))
}

/// `√(x² − 1)` on the branch that behaves like `x` at infinity; equals
/// `(1 − z²)/(2z)` with `z = map_x_to_z(x)`.
pub fn sqrt_x2_minus_1(x: Complex64) -> Complex64 {
    let z = map_x_to_z(x);
    0.5 * (z.inv() - z)
}

/// Absolute residual of
/// `p_n(cos θ) = κ_{2n} / √(2(1 − α_{2n−1})) · (z^{−n} Φ_{2n}(z) + zⁿ Φ_{2n}(1/z))`
/// at `z = e^{iθ}`, with `p_n = γ_n P_n`.
pub fn check_rel(rc: &RealRecurrence, vs: &VerblunskySeq, n: usize, theta: f64) -> Result<f64> {
    let alpha = vs.truncate(2 * n)?.real_view()?;
    let x = Complex64::new(theta.cos(), 0.0);
    let p = oprl_eval(rc, n, x)?[n] * orthonormal_scale(rc, n)?;

    let z = Complex64::from_polar(1.0, theta);
    let (phi_z, _) = opuc_eval(vs, 2 * n, z)?;
    let (phi_inv, _) = opuc_eval(vs, 2 * n, z.inv())?;
    let zn = z.powi(n as i32);
    let bracket = phi_z[2 * n] / zn + zn * phi_inv[2 * n];
    let scale = kappa(vs, 2 * n)? / (2.0 * (1.0 - alpha_ext(&alpha, 2 * n as isize - 1))).sqrt();
    Ok((p - scale * bracket).norm())
}

/// Evenly spaced angles in `(0, π)` used by the relation checks.
pub fn sample_angles(count: usize) -> Vec<f64> {
    (1..=count).map(|i| PI * i as f64 / (count + 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{c, max_deviation};

    fn u_alpha(len: usize) -> Vec<f64> {
        VerblunskySeq::chebyshev_u(len).real_view().unwrap()
    }

    #[test]
    fn forward_chebyshev() {
        let t = geronimus_forward(&VerblunskySeq::zeros(12), 6).unwrap();
        assert_eq!(t, RealRecurrence::chebyshev_t(6));
        let u = geronimus_forward(&VerblunskySeq::chebyshev_u(12), 6).unwrap();
        assert!(max_deviation(u.d_coeffs(), &[0.25; 6]) < 1e-15);
        assert!(u.b_coeffs().iter().all(|b| *b == 0.0));
    }

    #[test]
    fn forward_rejects_complex() {
        let vs = VerblunskySeq::new(vec![c(0.1), Complex64::new(0.0, 0.2)]).unwrap();
        assert!(matches!(
            geronimus_forward(&vs, 1),
            Err(Error::ComplexAlpha { index: 1, .. })
        ));
    }

    #[test]
    fn inverse_chebyshev() {
        let t = geronimus_inverse(&RealRecurrence::chebyshev_t(6), 6).unwrap();
        assert_eq!(t, VerblunskySeq::zeros(12));
        let u = geronimus_inverse(&RealRecurrence::chebyshev_u(3), 3)
            .unwrap()
            .real_view()
            .unwrap();
        let expected = [0.0, -0.5, 0.0, -1.0 / 3.0, 0.0, -0.25];
        assert!(max_deviation(&u, &expected) < 1e-15);
    }

    #[test]
    fn inverse_boundary_is_a_support_violation() {
        let rc = RealRecurrence::new(vec![0.0], vec![1.0]).unwrap();
        assert!(matches!(
            geronimus_inverse(&rc, 1),
            Err(Error::SupportViolation { index: 1, .. })
        ));
    }

    #[test]
    fn v_examples() {
        let t = v_from_alpha(&VerblunskySeq::zeros(4), 4).unwrap();
        assert_eq!(t.v, vec![1.0, 0.5, 0.5, 0.5]);
        let u = v_from_alpha(&VerblunskySeq::chebyshev_u(6), 6).unwrap();
        let expected = [1.0, 0.25, 0.75, 1.0 / 3.0, 2.0 / 3.0, 0.375];
        assert!(max_deviation(&u.v, &expected) < 1e-15);

        let back = alpha_from_v(&u, 4).unwrap().real_view().unwrap();
        assert!(max_deviation(&back, &u_alpha(4)) < 1e-15);
        let t_back = alpha_from_v(&VSeq { v: vec![1.0, 0.5, 0.5] }, 3).unwrap();
        assert_eq!(t_back, VerblunskySeq::zeros(3));
    }

    #[test]
    fn v_from_recurrence_examples() {
        let t = v_from_recurrence(&RealRecurrence::chebyshev_t(2), 3).unwrap();
        assert_eq!(t.v, vec![1.0, 0.5, 0.5]);
        let u = v_from_recurrence(&RealRecurrence::chebyshev_u(2), 4).unwrap();
        assert!(max_deviation(&u.v, &[1.0, 0.25, 0.75, 1.0 / 3.0]) < 1e-15);
    }

    #[test]
    fn v_from_recurrence_detects_missing_lu() {
        let rc = RealRecurrence::new(vec![-1.0, 0.0], vec![0.2, 0.2]).unwrap();
        assert!(matches!(
            v_from_recurrence(&rc, 3),
            Err(Error::DivisionDegenerate { index: 0 })
        ));
    }

    #[test]
    fn lu_chebyshev_and_corruption() {
        let t = RealRecurrence::chebyshev_t(4);
        let v = v_from_recurrence(&t, 8).unwrap();
        let ok = lu_check(&t, &v, 4).unwrap();
        assert!(ok.passed && ok.mismatch.is_none());

        let mut bad = v.clone();
        bad.v[3] += 1e-3;
        let report = lu_check(&t, &bad, 4).unwrap();
        assert!(!report.passed);
        let m = report.mismatch.unwrap();
        // v_3 sits in L[2][1]; it feeds (LU)[2][1] = v_3 v_2 and (LU)[2][2].
        assert_eq!(m.row, 2);
        assert!(m.col == 1 || m.col == 2);
    }

    #[test]
    fn conformal_maps() {
        let z = map_x_to_z(c(2.0));
        assert!((z - c(2.0 - 3f64.sqrt())).norm() < 1e-15);
        assert_eq!(map_x_to_z(c(1.0)), c(1.0));
        let z = map_x_to_z(c(-2.0));
        assert!((z - c(-2.0 + 3f64.sqrt())).norm() < 1e-15);
        let theta: f64 = 0.9;
        let x = map_z_to_x(Complex64::from_polar(1.0, theta)).unwrap();
        assert!((x - c(theta.cos())).norm() < 1e-15);
        let on_cut = map_x_to_z(c(theta.cos()));
        assert!((on_cut - Complex64::from_polar(1.0, theta)).norm() < 1e-15);
        assert_eq!(map_z_to_x(c(0.0)), Err(Error::ZeroArgument));
        for x in [Complex64::new(0.3, 0.7), Complex64::new(-4.0, 0.01), c(1.5)] {
            let z = map_x_to_z(x);
            assert!(z.norm() <= 1.0);
            assert!((map_z_to_x(z).unwrap() - x).norm() < 1e-14);
        }
        assert!((sqrt_x2_minus_1(c(2.0)) - c(3f64.sqrt())).norm() < 1e-15);
        assert!((sqrt_x2_minus_1(c(-2.0)) - c(-(3f64.sqrt()))).norm() < 1e-15);
    }

    #[test]
    fn rel_chebyshev() {
        let t = RealRecurrence::chebyshev_t(4);
        let vs = geronimus_inverse(&t, 4).unwrap();
        assert!(check_rel(&t, &vs, 1, PI / 3.0).unwrap() < 1e-15);
        assert!(check_rel(&t, &vs, 0, 0.4).unwrap() < 1e-15);
        let u = RealRecurrence::chebyshev_u(4);
        let vu = geronimus_inverse(&u, 4).unwrap();
        assert!(check_rel(&u, &vu, 2, 1.1).unwrap() < 1e-12);
    }
}
