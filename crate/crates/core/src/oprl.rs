//! Monic orthogonal polynomials on the real line.
//!
//! Coefficients follow the 1-based convention of the three-term recurrence
//!
//! ```text
//! P_{n+1}(x) = (x - b_{n+1}) P_n(x) - d_n P_{n-1}(x),   P_{-1} = 0, P_0 = 1,
//! ```
//!
//! so `b(1)` is the first diagonal entry of the monic Jacobi matrix and
//! `d(1)` the first subdiagonal entry. `d_0 = 1` is implicit and never stored.
//! Associated and anti-associated families are pure coefficient maps
//! ([`shift_coefficients`], [`prepend_coefficients`]); all polynomial values
//! flow through [`oprl_eval`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::polyhom::Poly;
use crate::{Error, Result};

/// Recurrence coefficients `b_1, b_2, ...` and `d_1, d_2, ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRecurrence")]
pub struct RealRecurrence {
    b: Vec<f64>,
    d: Vec<f64>,
}

#[derive(Deserialize)]
struct RawRecurrence {
    b: Vec<f64>,
    d: Vec<f64>,
}

impl TryFrom<RawRecurrence> for RealRecurrence {
    type Error = Error;
    fn try_from(raw: RawRecurrence) -> Result<Self> {
        RealRecurrence::new(raw.b, raw.d)
    }
}

impl RealRecurrence {
    /// Rejects zero or non-finite `d_n` and non-finite `b_n`.
    pub fn new(b: Vec<f64>, d: Vec<f64>) -> Result<Self> {
        if let Some(i) = d.iter().position(|v| *v == 0.0 || !v.is_finite()) {
            return Err(Error::NonPositiveD {
                index: i + 1,
                value: d[i],
            });
        }
        if let Some(i) = b.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSpec(format!("b_{} is not finite", i + 1)));
        }
        Ok(RealRecurrence { b, d })
    }

    /// Monic Chebyshev polynomials of the first kind: `b = 0`, `d_1 = 1/2`,
    /// `d_n = 1/4` afterwards.
    pub fn chebyshev_t(len: usize) -> Self {
        let d = (1..=len).map(|n| if n == 1 { 0.5 } else { 0.25 }).collect();
        RealRecurrence {
            b: vec![0.0; len],
            d,
        }
    }

    /// Monic Chebyshev polynomials of the second kind: `b = 0`, `d = 1/4`.
    pub fn chebyshev_u(len: usize) -> Self {
        RealRecurrence {
            b: vec![0.0; len],
            d: vec![0.25; len],
        }
    }

    /// `b_n`, 1-based. Panics outside the stored window.
    pub fn b(&self, n: usize) -> f64 {
        self.b[n - 1]
    }

    /// `d_n`, 1-based, with `d_0 = 1`. Panics outside the stored window.
    pub fn d(&self, n: usize) -> f64 {
        if n == 0 {
            1.0
        } else {
            self.d[n - 1]
        }
    }

    pub fn b_coeffs(&self) -> &[f64] {
        &self.b
    }

    pub fn d_coeffs(&self) -> &[f64] {
        &self.d
    }

    /// Number of complete `(b_n, d_n)` pairs.
    pub fn len(&self) -> usize {
        self.b.len().min(self.d.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// First `n` pairs.
    pub fn truncate(&self, n: usize) -> Result<RealRecurrence> {
        self.require(n, n)?;
        Ok(RealRecurrence {
            b: self.b[..n].to_vec(),
            d: self.d[..n].to_vec(),
        })
    }

    /// Fails unless `b_1..b_nb` and `d_1..d_nd` are stored.
    pub fn require(&self, nb: usize, nd: usize) -> Result<()> {
        if self.b.len() < nb {
            return Err(Error::InsufficientCoefficients {
                needed: nb,
                available: self.b.len(),
            });
        }
        if self.d.len() < nd {
            return Err(Error::InsufficientCoefficients {
                needed: nd,
                available: self.d.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn b_mut(&mut self) -> &mut Vec<f64> {
        &mut self.b
    }

    pub(crate) fn d_mut(&mut self) -> &mut Vec<f64> {
        &mut self.d
    }
}

/// `P_0(x), ..., P_n(x)`.
pub fn oprl_eval(rc: &RealRecurrence, n: usize, x: Complex64) -> Result<Vec<Complex64>> {
    rc.require(n, n.saturating_sub(1))?;
    let mut out = Vec::with_capacity(n + 1);
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    out.push(cur);
    for k in 0..n {
        let next = (x - rc.b(k + 1)) * cur - rc.d(k) * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    Ok(out)
}

/// `P_0, ..., P_n` in coefficient form.
pub fn oprl_polys(rc: &RealRecurrence, n: usize) -> Result<Vec<Poly>> {
    rc.require(n, n.saturating_sub(1))?;
    let mut out: Vec<Poly> = Vec::with_capacity(n + 1);
    out.push(Poly::one());
    for k in 0..n {
        let cur = &out[k];
        let mut next = &cur.shift_up() - &cur.scale(Complex64::new(rc.b(k + 1), 0.0));
        if k > 0 {
            next = &next - &out[k - 1].scale(Complex64::new(rc.d(k), 0.0));
        }
        out.push(next);
    }
    Ok(out)
}

/// Leading `N × N` section of the monic Jacobi matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix {
    /// `b_1, ..., b_N`
    pub diag: Vec<f64>,
    /// `d_1, ..., d_{N-1}`; the superdiagonal is identically 1.
    pub sub: Vec<f64>,
}

impl JacobiMatrix {
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.order();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.diag[i];
            if i + 1 < n {
                m[i][i + 1] = 1.0;
                m[i + 1][i] = self.sub[i];
            }
        }
        m
    }
}

pub fn jacobi_matrix(rc: &RealRecurrence, order: usize) -> Result<JacobiMatrix> {
    rc.require(order, order.saturating_sub(1))?;
    Ok(JacobiMatrix {
        diag: rc.b[..order].to_vec(),
        sub: rc.d[..order.saturating_sub(1)].to_vec(),
    })
}

/// Coefficients of the associated polynomials of order `k`:
/// `b̂_n = b_{n+k}`, `d̂_n = d_{n+k}`.
pub fn shift_coefficients(rc: &RealRecurrence, k: usize) -> Result<RealRecurrence> {
    rc.require(k, k)?;
    Ok(RealRecurrence {
        b: rc.b[k..].to_vec(),
        d: rc.d[k..].to_vec(),
    })
}

/// Coefficients of the anti-associated polynomials of order `pre_b.len()`:
/// the prepended values come first, the original sequence follows.
pub fn prepend_coefficients(
    rc: &RealRecurrence,
    pre_b: &[f64],
    pre_d: &[f64],
) -> Result<RealRecurrence> {
    if pre_b.len() != pre_d.len() {
        return Err(Error::InvalidPrepend {
            index: pre_b.len().min(pre_d.len()),
            reason: "b and d lists differ in length",
        });
    }
    if let Some(i) = pre_d.iter().position(|v| *v == 0.0 || !v.is_finite()) {
        return Err(Error::InvalidPrepend {
            index: i,
            reason: "d entry must be nonzero",
        });
    }
    if let Some(i) = pre_b.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidPrepend {
            index: i,
            reason: "b entry must be finite",
        });
    }
    let mut b = pre_b.to_vec();
    b.extend_from_slice(&rc.b);
    let mut d = pre_d.to_vec();
    d.extend_from_slice(&rc.d);
    Ok(RealRecurrence { b, d })
}

/// Leading coefficient `γ_n = (d_1 ⋯ d_n)^{-1/2}` of the orthonormal
/// polynomial `p_n = γ_n P_n` for a probability measure.
pub fn orthonormal_scale(rc: &RealRecurrence, n: usize) -> Result<f64> {
    rc.require(0, n)?;
    let mut prod = 1.0;
    for i in 1..=n {
        let d = rc.d(i);
        if d <= 0.0 {
            return Err(Error::NonPositiveD { index: i, value: d });
        }
        prod *= d;
    }
    Ok(prod.powf(-0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn chebyshev_t_values() {
        let t = RealRecurrence::chebyshev_t(4);
        let v = oprl_eval(&t, 2, c(2.0)).unwrap();
        assert_eq!(v, vec![c(1.0), c(2.0), c(3.5)]);
        assert_eq!(oprl_eval(&t, 0, c(9.0)).unwrap(), vec![c(1.0)]);
    }

    #[test]
    fn eval_needs_coefficients() {
        let t = RealRecurrence::chebyshev_t(2);
        assert!(matches!(
            oprl_eval(&t, 3, c(0.0)),
            Err(Error::InsufficientCoefficients { needed: 3, .. })
        ));
    }

    #[test]
    fn polys_match_values() {
        let rc = RealRecurrence::new(vec![0.1, -0.2, 0.3, 0.05], vec![0.4, 0.2, 0.3, 0.1]).unwrap();
        let polys = oprl_polys(&rc, 4).unwrap();
        let x = Complex64::new(0.7, -0.3);
        let vals = oprl_eval(&rc, 4, x).unwrap();
        for (p, v) in polys.iter().zip(&vals) {
            assert!((p.eval(x) - v).norm() < 1e-14);
        }
        for (k, p) in polys.iter().enumerate() {
            assert_eq!(p.degree(), Some(k));
            assert_eq!(p.leading(), c(1.0));
        }
    }

    #[test]
    fn symmetric_parity() {
        let rc = RealRecurrence::new(vec![0.0; 5], vec![0.3, 0.2, 0.25, 0.22, 0.27]).unwrap();
        let pos = oprl_eval(&rc, 5, c(0.3)).unwrap();
        let neg = oprl_eval(&rc, 5, c(-0.3)).unwrap();
        for k in 0..=5 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((neg[k] - pos[k] * sign).norm() < 1e-15);
        }
    }

    #[test]
    fn jacobi_layout() {
        let t = RealRecurrence::chebyshev_t(3);
        let j = jacobi_matrix(&t, 3).unwrap();
        assert_eq!(j.diag, vec![0.0; 3]);
        assert_eq!(j.sub, vec![0.5, 0.25]);
        let dense = j.to_dense();
        assert_eq!(dense[0][1], 1.0);
        assert_eq!(dense[1][2], 1.0);
        assert_eq!(dense[1][0], 0.5);
        assert_eq!(jacobi_matrix(&t, 1).unwrap().to_dense(), vec![vec![0.0]]);
    }

    #[test]
    fn shift_examples() {
        let t = RealRecurrence::chebyshev_t(6);
        assert_eq!(shift_coefficients(&t, 0).unwrap(), t);
        assert_eq!(shift_coefficients(&t, 1).unwrap(), RealRecurrence::chebyshev_u(5));
        assert_eq!(shift_coefficients(&t, 2).unwrap(), RealRecurrence::chebyshev_u(4));
        assert!(shift_coefficients(&t, 7).is_err());
    }

    #[test]
    fn prepend_examples() {
        let u = RealRecurrence::chebyshev_u(3);
        assert_eq!(prepend_coefficients(&u, &[], &[]).unwrap(), u);
        let p = prepend_coefficients(&u, &[0.1], &[0.2]).unwrap();
        assert_eq!(p.b(1), 0.1);
        assert_eq!(p.d(1), 0.2);
        assert_eq!(p.b(2), 0.0);
        assert_eq!(p.d(2), 0.25);
        assert!(matches!(
            prepend_coefficients(&u, &[0.0], &[0.0]),
            Err(Error::InvalidPrepend { index: 0, .. })
        ));
    }

    #[test]
    fn orthonormal_scale_examples() {
        let t = RealRecurrence::chebyshev_t(3);
        assert_eq!(orthonormal_scale(&t, 0).unwrap(), 1.0);
        assert!((orthonormal_scale(&t, 2).unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        let u = RealRecurrence::chebyshev_u(3);
        assert!((orthonormal_scale(&u, 3).unwrap() - 8.0).abs() < 1e-13);
        let bad = RealRecurrence::new(vec![0.0, 0.0], vec![0.5, -0.1]).unwrap();
        assert!(matches!(
            orthonormal_scale(&bad, 2),
            Err(Error::NonPositiveD { index: 2, .. })
        ));
    }

    #[test]
    fn zero_d_is_rejected() {
        assert!(RealRecurrence::new(vec![0.0], vec![0.0]).is_err());
    }
}
