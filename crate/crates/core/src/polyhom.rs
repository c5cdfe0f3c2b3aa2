//! Dense univariate polynomials and 2×2 polynomial matrices acting by
//! linear-fractional maps.
//!
//! A matrix `[[a, b], [c, d]]` acts on a function value `g` at the point `t`
//! through `(a(t) g + b(t)) / (c(t) g + d(t))`. Products of matrices act as
//! compositions of these maps.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::numeric::DEN_TOL;
use crate::{Error, Result};

/// Polynomial with complex coefficients stored in ascending degree.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(value: Complex64) -> Self {
        Self::new(vec![value])
    }

    /// The monomial `t`.
    pub fn x() -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    pub fn scale(&self, factor: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Multiplication by the monomial `t`.
    pub fn shift_up(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// Coefficients conjugated, degree kept.
    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    fn zip_with(&self, other: &Poly, f: impl Fn(Complex64, Complex64) -> Complex64) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Poly::new(
            (0..len)
                .map(|i| {
                    f(
                        self.coeffs.get(i).copied().unwrap_or(zero),
                        other.coeffs.get(i).copied().unwrap_or(zero),
                    )
                })
                .collect(),
        )
    }
}

pub fn poly_eval(p: &Poly, t: Complex64) -> Complex64 {
    p.eval(t)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Row-major 2×2 matrix of polynomials `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix2 {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl PolyMatrix2 {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly) -> Self {
        PolyMatrix2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(Poly::one(), Poly::zero(), Poly::zero(), Poly::one())
    }

    /// `[[0, 1], [1, 0]]`, i.e. `g -> 1/g`.
    pub fn reciprocal() -> Self {
        Self::new(Poly::zero(), Poly::one(), Poly::one(), Poly::zero())
    }

    pub fn from_real(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Self {
        Self::new(
            Poly::from_real(a),
            Poly::from_real(b),
            Poly::from_real(c),
            Poly::from_real(d),
        )
    }

    pub fn det(&self) -> Poly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn eval(&self, t: Complex64) -> [Complex64; 4] {
        [self.a.eval(t), self.b.eval(t), self.c.eval(t), self.d.eval(t)]
    }

    /// `(a(t) g + b(t)) / (c(t) g + d(t))`.
    pub fn apply(&self, g: Complex64, t: Complex64) -> Result<Complex64> {
        let [a, b, c, d] = self.eval(t);
        let num = a * g + b;
        let den = c * g + d;
        if den.norm() <= DEN_TOL * (1.0 + num.norm()) {
            return Err(Error::DenominatorVanishes { t });
        }
        Ok(num / den)
    }

    pub fn matmul(&self, rhs: &PolyMatrix2) -> PolyMatrix2 {
        PolyMatrix2 {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }

    pub fn scale(&self, factor: Complex64) -> PolyMatrix2 {
        PolyMatrix2 {
            a: self.a.scale(factor),
            b: self.b.scale(factor),
            c: self.c.scale(factor),
            d: self.d.scale(factor),
        }
    }

    pub fn max_degree(&self) -> Option<usize> {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .filter_map(|p| p.degree())
            .max()
    }
}

/// Homography of `m` applied to `g` at `t`.
pub fn homography_apply(m: &PolyMatrix2, g: Complex64, t: Complex64) -> Result<Complex64> {
    m.apply(g, t)
}

pub fn matmul2(m: &PolyMatrix2, n: &PolyMatrix2) -> PolyMatrix2 {
    m.matmul(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn eval_examples() {
        assert_eq!(Poly::from_real(&[1.0]).eval(c(5.0)), c(1.0));
        assert_eq!(Poly::from_real(&[-0.5, 0.0, 1.0]).eval(c(2.0)), c(3.5));
        let t = 2.0 - 3f64.sqrt();
        let v = Poly::from_real(&[1.0, 0.0, -1.0]).eval(c(t));
        // 1 - (7 - 4√3) = 4√3 - 6
        assert!((v.re - (4.0 * 3f64.sqrt() - 6.0)).abs() < 1e-14);
        assert!((v.re - 0.928_203_230_275_509).abs() < 1e-14);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Poly::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), Some(1));
        let z = Poly::from_real(&[0.0, 0.0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        let diff = &Poly::x() - &Poly::x();
        assert!(diff.is_zero());
    }

    #[test]
    fn arithmetic() {
        let p = Poly::from_real(&[1.0, 1.0]);
        let q = Poly::from_real(&[-1.0, 1.0]);
        assert_eq!(&p * &q, Poly::from_real(&[-1.0, 0.0, 1.0]));
        assert_eq!(&p + &q, Poly::from_real(&[0.0, 2.0]));
        assert_eq!(p.shift_up(), Poly::from_real(&[0.0, 1.0, 1.0]));
        assert_eq!(-&p, Poly::from_real(&[-1.0, -1.0]));
    }

    #[test]
    fn homography_examples() {
        let id = PolyMatrix2::identity();
        assert_eq!(id.apply(c(0.7), c(-3.0)).unwrap(), c(0.7));

        let recip = PolyMatrix2::reciprocal();
        assert_eq!(recip.apply(c(4.0), c(1.5)).unwrap(), c(0.25));

        let m = PolyMatrix2::from_real(&[0.0, 1.0], &[-1.0], &[1.0, 0.0, -1.0], &[0.0, 1.0]);
        let g = 1.0 / 3f64.sqrt();
        let v = m.apply(c(g), c(2.0)).unwrap();
        assert!((v.re - g).abs() < 1e-14 && v.im.abs() < 1e-15);
    }

    #[test]
    fn pole_is_reported() {
        let m = PolyMatrix2::from_real(&[1.0], &[0.0], &[1.0], &[-2.0]);
        assert!(matches!(
            m.apply(c(2.0), c(0.0)),
            Err(Error::DenominatorVanishes { .. })
        ));
    }

    #[test]
    fn matmul_identity_and_involution() {
        let n = PolyMatrix2::from_real(&[1.0, 2.0], &[3.0], &[0.5, -1.0], &[2.0, 0.0, 1.0]);
        assert_eq!(PolyMatrix2::identity().matmul(&n), n);
        let r = PolyMatrix2::reciprocal();
        assert_eq!(r.matmul(&r), PolyMatrix2::identity());
    }

    #[test]
    fn det_of_product_is_product_of_dets() {
        let m = PolyMatrix2::from_real(&[1.0, 2.0], &[3.0], &[0.5, -1.0], &[2.0, 0.0, 1.0]);
        let n = PolyMatrix2::from_real(&[0.0, 1.0], &[-1.0], &[1.0, 0.0, -1.0], &[0.0, 1.0]);
        let lhs = m.matmul(&n).det();
        let rhs = &m.det() * &n.det();
        for t in [-1.3, 0.2, 2.5] {
            assert!((lhs.eval(c(t)) - rhs.eval(c(t))).norm() < 1e-12);
        }
    }
}
