//! Monic orthogonal polynomials on the unit circle via the Szegő recursion
//!
//! ```text
//! Φ_{n+1}(z)  = z Φ_n(z) − conj(α_n) Φ*_n(z)
//! Φ*_{n+1}(z) = Φ*_n(z) − α_n z Φ_n(z)
//! ```
//!
//! Indices here are always ≥ 0; the `α_{-1} = -1` convention lives in
//! [`crate::szego`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::polyhom::Poly;
use crate::{Error, Result};

/// Verblunsky coefficients `α_0, α_1, ...`, each strictly inside the unit disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVerblunsky")]
pub struct VerblunskySeq {
    alpha: Vec<Complex64>,
}

/// Input entries may be plain reals or `[re, im]` pairs.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawAlpha {
    Real(f64),
    Complex(Complex64),
}

#[derive(Deserialize)]
struct RawVerblunsky {
    alpha: Vec<RawAlpha>,
}

impl TryFrom<RawVerblunsky> for VerblunskySeq {
    type Error = Error;
    fn try_from(raw: RawVerblunsky) -> Result<Self> {
        let alpha = raw
            .alpha
            .into_iter()
            .map(|a| match a {
                RawAlpha::Real(re) => Complex64::new(re, 0.0),
                RawAlpha::Complex(z) => z,
            })
            .collect();
        VerblunskySeq::new(alpha)
    }
}

impl VerblunskySeq {
    pub fn new(alpha: Vec<Complex64>) -> Result<Self> {
        if let Some(i) = alpha.iter().position(|a| !(a.norm() < 1.0)) {
            return Err(Error::AlphaOutOfRange {
                index: i,
                value: alpha[i],
            });
        }
        Ok(VerblunskySeq { alpha })
    }

    pub fn from_real(alpha: &[f64]) -> Result<Self> {
        Self::new(alpha.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// `α ≡ 0` (Lebesgue measure on the circle).
    pub fn zeros(len: usize) -> Self {
        VerblunskySeq {
            alpha: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// Szegő image of the Chebyshev-U measure: `α_{2m} = 0`,
    /// `α_{2m+1} = −1/(m+2)`.
    pub fn chebyshev_u(len: usize) -> Self {
        let alpha = (0..len)
            .map(|n| {
                if n % 2 == 0 {
                    0.0
                } else {
                    -1.0 / ((n / 2) as f64 + 2.0)
                }
            })
            .map(|a| Complex64::new(a, 0.0))
            .collect();
        VerblunskySeq { alpha }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alpha(&self, n: usize) -> Complex64 {
        self.alpha[n]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.alpha
    }

    pub fn require(&self, n: usize) -> Result<()> {
        if self.alpha.len() < n {
            Err(Error::InsufficientCoefficients {
                needed: n,
                available: self.alpha.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn truncate(&self, n: usize) -> Result<VerblunskySeq> {
        self.require(n)?;
        Ok(VerblunskySeq {
            alpha: self.alpha[..n].to_vec(),
        })
    }

    /// Real parts, provided every coefficient is real and in (−1, 1).
    pub fn real_view(&self) -> Result<Vec<f64>> {
        self.alpha
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                if value.im != 0.0 {
                    Err(Error::ComplexAlpha { index, value })
                } else if !(value.re.abs() < 1.0) {
                    Err(Error::AlphaOutOfRange { index, value })
                } else {
                    Ok(value.re)
                }
            })
            .collect()
    }

    pub(crate) fn from_vec_unchecked(alpha: Vec<Complex64>) -> Self {
        VerblunskySeq { alpha }
    }
}

/// `(Φ_0(z), ..., Φ_n(z))` and `(Φ*_0(z), ..., Φ*_n(z))`.
pub fn opuc_eval(
    vs: &VerblunskySeq,
    n: usize,
    z: Complex64,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    vs.require(n)?;
    let mut phi = Vec::with_capacity(n + 1);
    let mut star = Vec::with_capacity(n + 1);
    let (mut p, mut s) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    phi.push(p);
    star.push(s);
    for &a in &vs.alpha[..n] {
        let np = z * p - a.conj() * s;
        let ns = s - a * z * p;
        p = np;
        s = ns;
        phi.push(p);
        star.push(s);
    }
    Ok((phi, star))
}

/// Coefficient forms of `Φ_0..Φ_n` and `Φ*_0..Φ*_n`.
pub fn opuc_polys(vs: &VerblunskySeq, n: usize) -> Result<(Vec<Poly>, Vec<Poly>)> {
    vs.require(n)?;
    let mut phi = vec![Poly::one()];
    let mut star = vec![Poly::one()];
    for (k, &a) in vs.alpha[..n].iter().enumerate() {
        let np = &phi[k].shift_up() - &star[k].scale(a.conj());
        let ns = &star[k] - &phi[k].shift_up().scale(a);
        phi.push(np);
        star.push(ns);
    }
    Ok((phi, star))
}

/// Checks `Φ*_n(z) = zⁿ conj(Φ_n(1/conj z))` to 1e−12 relative.
pub fn reversed_poly_check(vs: &VerblunskySeq, n: usize, z: Complex64) -> Result<bool> {
    if z.norm() == 0.0 {
        return Err(Error::ZeroArgument);
    }
    let (_, star) = opuc_eval(vs, n, z)?;
    let (phi_reflected, _) = opuc_eval(vs, n, Complex64::new(1.0, 0.0) / z.conj())?;
    let direct = star[n];
    let via_reflection = z.powu(n as u32) * phi_reflected[n].conj();
    Ok((direct - via_reflection).norm() <= 1e-12 * direct.norm().max(1.0))
}

/// Coefficients `−α_n` of the second-kind polynomials `Ω_n`.
pub fn second_kind(vs: &VerblunskySeq) -> VerblunskySeq {
    VerblunskySeq {
        alpha: vs.alpha.iter().map(|a| -a).collect(),
    }
}

/// Coefficients `α_{n+k}` of the associated polynomials of order `k`.
pub fn shift_verblunsky(vs: &VerblunskySeq, k: usize) -> Result<VerblunskySeq> {
    vs.require(k)?;
    Ok(VerblunskySeq {
        alpha: vs.alpha[k..].to_vec(),
    })
}

/// Coefficients `ξ_0, ..., ξ_{k−1}, α_0, α_1, ...` of the anti-associated
/// polynomials of order `k = xi.len()`.
pub fn prepend_verblunsky(vs: &VerblunskySeq, xi: &[Complex64]) -> Result<VerblunskySeq> {
    if let Some(i) = xi.iter().position(|x| !(x.norm() < 1.0)) {
        return Err(Error::InvalidXi {
            index: i,
            value: xi[i],
        });
    }
    let mut alpha = xi.to_vec();
    alpha.extend_from_slice(&vs.alpha);
    Ok(VerblunskySeq { alpha })
}

/// Leading coefficient `κ_n = ∏_{j<n} (1 − |α_j|²)^{−1/2}` of the orthonormal
/// polynomial `φ_n = κ_n Φ_n`.
pub fn kappa(vs: &VerblunskySeq, n: usize) -> Result<f64> {
    vs.require(n)?;
    Ok(vs.alpha[..n]
        .iter()
        .map(|a| 1.0 - a.norm_sqr())
        .product::<f64>()
        .powf(-0.5))
}
